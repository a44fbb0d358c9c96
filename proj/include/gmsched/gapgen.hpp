#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "gmsched/config_lp.hpp"
#include "gmsched/instance.hpp"
#include "gmsched/setsys.hpp"

namespace gmsched {

struct GapParams {
  std::size_t machines = 0;      // m
  std::size_t classes = 0;       // h
  std::size_t cover_budget = 0;  // l
  double beta = 0.0;
  std::vector<std::size_t> class_sizes;  // n_1..n_h
  std::uint64_t seed = 0;

  friend bool operator==(const GapParams&, const GapParams&) = default;
};

/// Throws std::invalid_argument on the first broken invariant.
void validate_gap_params(const GapParams& p);

/// Size of class s (0-based): beta^s.
double class_job_size(double beta, std::size_t s);

/// The asymptotic parameter coupling, evaluated numerically. Sizes stay real
/// because they overflow any integer type long before n does.
struct AsymptoticCoupling {
  double n = 0.0;
  std::size_t machines = 0;
  std::size_t classes = 0;
  std::size_t cover_budget = 0;
  double beta = 0.0;
  std::vector<double> class_sizes;
  bool classes_clamped = false;
  bool budget_clamped = false;
  bool heavy_threshold_ok = false;  // beta^2 n_1 >= 1
  bool desk_verifiable = false;
  std::vector<std::string> notes;
};

/// n is a real so that e.g. 2^64 can be passed.
AsymptoticCoupling asymptotic_params(double n);

/// Desk parameters: class 1 has `first_class_size` elements and each later
/// class is sized so that the cross terms of the norm on every A_i(s) stay
/// within h*beta in total. Seeds seed, seed+1, ... are tried until every
/// class system passes exhaustive verification at (l, beta); throws
/// ConstructionRejected after `attempts` seeds.
GapParams desk_params(std::size_t m, std::size_t h, std::size_t l, double beta, std::size_t first_class_size,
                      std::uint64_t seed, std::size_t attempts = 64);

struct GapInstance {
  GapParams params;
  std::vector<SetSystem> systems;          // one per class, A_i(s) = systems[s].sets[i]
  SchedulingInstance instance;
  std::vector<std::size_t> class_offsets;  // jobs of class s: [offsets[s], offsets[s+1])
  std::vector<std::size_t> heavy_k;        // k_s

  std::size_t class_of(JobId j) const;
  JobId job_id(std::size_t s, std::size_t element) const {
    return static_cast<JobId>(class_offsets[s] + element);
  }
  /// Jobs of A_i(s), increasing.
  std::vector<JobId> set_jobs(MachineId i, std::size_t s) const;
};

/// Class s uses the system built from derive_seed(params.seed, s).
GapInstance build_gap_instance(const GapParams& params);

/// Builds on caller-supplied class systems (each must have m sets and n_s
/// elements). Throws ConstructionRejected naming (i, s) when some
/// psi_i(A_i(s)) falls outside [1, 1 + h*beta].
GapInstance build_gap_instance(const GapParams& params, std::vector<SetSystem> systems);

/// psi_i(A_i(s)) for every machine i (rows) and class s (columns).
std::vector<std::vector<double>> class_set_loads(const GapInstance& g);

/// x_{i, A_i(s)} = 2/m at threshold 2.
FractionalSolution fractional_certificate(const GapInstance& g);

struct HeavyProfile {
  std::size_t machines = 0;
  std::size_t classes = 0;
  std::vector<std::size_t> counts;  // [i * h + s]: jobs of A_i(s) assigned to i
  std::vector<bool> heavy;          // counts >= k_s
  std::vector<std::size_t> heavy_per_machine;
  std::vector<std::size_t> heavy_machines_per_class;
  std::size_t max_heavy = 0;

  bool is_heavy(MachineId i, std::size_t s) const { return heavy[i * classes + s]; }
  std::size_t count(MachineId i, std::size_t s) const { return counts[i * classes + s]; }
};

HeavyProfile heavy_profile(const GapInstance& g, const Assignment& a);

enum class AuditVerdict { Holds, Fails, NotApplicable };

struct AuditPreconditions {
  bool applicable = true;
  std::vector<std::string> broken;  // human-readable, empty when applicable
};

/// Covering property of every class system at (l, beta), plus m * beta < 1.
AuditPreconditions audit_preconditions(const GapInstance& g);

struct ClassShortfall {
  std::size_t cls = 0;
  std::size_t heavy_machines = 0;
  std::size_t heavy_union = 0;       // |union of A_i(s) over heavy i|
  std::size_t union_threshold = 0;   // n_s - ceil(beta n_s)
  std::size_t jobs_on_light = 0;     // class-s jobs on light machines
  std::size_t light_capacity = 0;    // (light machines) * (k_s - 1)
};

struct CoverageAudit {
  AuditVerdict verdict = AuditVerdict::Holds;
  std::vector<std::string> not_applicable;
  std::vector<std::size_t> heavy_machines_per_class;
  std::size_t required_per_class = 0;  // l
  std::size_t max_heavy = 0;
  std::size_t required_max_heavy = 0;  // ceil(h l / m)
  double makespan = 0.0;
  std::vector<ClassShortfall> shortfalls;
};

/// Every class must be heavy on at least l machines. Throws
/// std::invalid_argument for an invalid or incomplete assignment.
CoverageAudit class_coverage_audit(const GapInstance& g, const Assignment& a);
CoverageAudit class_coverage_audit(const GapInstance& g, const Assignment& a, const AuditPreconditions& pre);

const char* to_string(AuditVerdict v);

}  // namespace gmsched
