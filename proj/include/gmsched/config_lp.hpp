#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gmsched/instance.hpp"
#include "gmsched/lp.hpp"

namespace gmsched {

/// Relative slack on the validity constraint psi_i(C) <= T.
inline constexpr double kValidSlack = 1e-9;

struct Configuration {
  MachineId machine = 0;
  std::vector<JobId> jobs;  // increasing

  friend bool operator==(const Configuration&, const Configuration&) = default;
};

struct WeightedConfiguration {
  Configuration config;
  double weight = 0.0;
};

struct FractionalSolution {
  double threshold = 0.0;
  std::vector<WeightedConfiguration> entries;
};

inline bool is_valid_at(double config_load, double threshold) {
  return config_load <= threshold * (1.0 + kValidSlack);
}

/// All subsets of the machine's finite jobs with load <= T (with slack),
/// including the empty set, in depth-first lexicographic order. Throws
/// BudgetExceeded naming the machine when 2^(finite jobs) exceeds `cap`.
std::vector<Configuration> enumerate_valid_configs(const SchedulingInstance& inst, MachineId machine,
                                                   double threshold, std::uint64_t cap);

struct FeasibilityReport {
  bool feasible = true;
  double threshold = 0.0;
  double tol = 0.0;
  double max_machine_sum = 0.0;         // per-machine weight: should be <= 1
  double worst_coverage_error = 0.0;    // coverage: max_j |coverage_j - 1|
  double worst_validity_excess = 0.0;   // validity: max psi_i(C) - T(1 + slack), clipped at 0
  double min_weight = 0.0;
  std::vector<double> machine_sums;
  std::vector<double> job_coverage;
  std::vector<JobId> coverage_violations;
  std::vector<std::size_t> invalid_entries;  // forbidden job or load above T
  std::vector<MachineId> overfull_machines;
};

FeasibilityReport check_fractional_feasibility(const SchedulingInstance& inst,
                                               const FractionalSolution& sol, double tol);

/// Integral assignment as weight-1 configurations at threshold T.
FractionalSolution integral_solution(const SchedulingInstance& inst, const Assignment& a, double threshold);

struct FeasibilityOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::optional<FractionalSolution> solution;
  double residual = 0.0;
};

/// Configuration LP at threshold T over `pool` (configurations invalid at T
/// are dropped, i.e. fixed to zero).
FeasibilityOutcome solve_feasibility(const SchedulingInstance& inst, double threshold,
                                     const std::vector<Configuration>& pool,
                                     const LpOptions& options = {});

struct LpOptimum {
  double threshold = 0.0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  FractionalSolution solution;
  std::size_t probes = 0;
};

/// Multiplicative binary search for the smallest T with a feasible
/// configuration LP. The returned T is snapped down to the largest
/// configuration load not above the search result, which leaves the LP
/// unchanged.
LpOptimum lp_opt_T(const SchedulingInstance& inst, double tol_rel = 1e-3, std::uint64_t cap = 1U << 20);

}  // namespace gmsched
