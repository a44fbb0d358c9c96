#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "gmsched/common.hpp"
#include "gmsched/norms.hpp"

namespace gmsched {

struct ProcEntry {
  MachineId machine = 0;
  double size = 0.0;

  friend bool operator==(const ProcEntry&, const ProcEntry&) = default;
};

struct ProcTriplet {
  MachineId machine = 0;
  JobId job = 0;
  double size = 0.0;
};

/// Generalized-makespan instance on unrelated machines.
///
/// Processing times are sparse: a (machine, job) pair without an entry is
/// forbidden (infinite size). Entries are stored per job, sorted by machine.
/// Machines reference one of a small pool of norms so that instances whose
/// machines share a norm do not copy it per machine.
class SchedulingInstance {
 public:
  SchedulingInstance() = default;

  /// CSR constructor: entries of job j are entries[offsets[j] .. offsets[j+1]).
  SchedulingInstance(std::size_t machine_count, std::vector<std::size_t> job_offsets,
                     std::vector<ProcEntry> entries, std::vector<MixtureNorm> norms,
                     std::vector<std::uint32_t> norm_of_machine);

  static SchedulingInstance from_triplets(std::size_t machine_count, std::size_t job_count,
                                          std::vector<ProcTriplet> triplets,
                                          std::vector<MixtureNorm> norms,
                                          std::vector<std::uint32_t> norm_of_machine);

  /// Every machine uses `norm`.
  static SchedulingInstance from_triplets(std::size_t machine_count, std::size_t job_count,
                                          std::vector<ProcTriplet> triplets, const MixtureNorm& norm);

  std::size_t machine_count() const { return machine_count_; }
  std::size_t job_count() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::size_t entry_count() const { return entries_.size(); }

  std::span<const ProcEntry> entries(JobId job) const {
    return {entries_.data() + offsets_[job], entries_.data() + offsets_[job + 1]};
  }

  /// Processing time of `job` on `machine`, or nullopt when forbidden.
  std::optional<double> size(MachineId machine, JobId job) const;

  const MixtureNorm& norm(MachineId machine) const { return norms_[norm_of_machine_[machine]]; }
  const std::vector<MixtureNorm>& norm_pool() const { return norms_; }
  std::uint32_t norm_index(MachineId machine) const { return norm_of_machine_[machine]; }

  /// Jobs with a finite size on `machine`, increasing id.
  std::vector<JobId> finite_jobs(MachineId machine) const;

  /// Load of a job set on one machine; every job must be finite there.
  double config_load(MachineId machine, std::span<const JobId> jobs) const;

  /// Smallest finite size of a job over all machines.
  double min_size(JobId job) const;

  friend bool operator==(const SchedulingInstance&, const SchedulingInstance&) = default;

 private:
  void validate() const;

  std::size_t machine_count_ = 0;
  std::vector<std::size_t> offsets_{0};
  std::vector<ProcEntry> entries_;
  std::vector<MixtureNorm> norms_;
  std::vector<std::uint32_t> norm_of_machine_;
};

/// Total job -> machine map. kUnassigned marks a job that was left out, which
/// every evaluation rejects as an invalid assignment.
struct Assignment {
  std::vector<MachineId> machine_of;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Throws std::invalid_argument naming the first offending job.
void validate_assignment(const SchedulingInstance& inst, const Assignment& a);
bool is_valid_assignment(const SchedulingInstance& inst, const Assignment& a);

std::vector<double> loads(const SchedulingInstance& inst, const Assignment& a);
double load(const SchedulingInstance& inst, const Assignment& a, MachineId machine);
double makespan(const SchedulingInstance& inst, const Assignment& a);

struct OptResult {
  Assignment assignment;
  double makespan = 0.0;
  std::uint64_t nodes = 0;
};

/// Exact minimum-makespan assignment by depth-first branch and bound.
/// Throws BudgetExceeded after `node_budget` search nodes.
OptResult brute_force_opt(const SchedulingInstance& inst, std::uint64_t node_budget);

struct HeuristicOptions {
  /// Every `local_search_every`-th pool member (after the greedy one) is a
  /// local-search run from a random start; the rest are uniform random.
  std::size_t local_search_every = 2;
  /// Cap on accepted moves per local-search run.
  std::size_t max_moves = 100000;
};

Assignment greedy_assignment(const SchedulingInstance& inst);
Assignment random_assignment(const SchedulingInstance& inst, Rng& rng);
/// First-improvement single-job reassignment starting from `start`.
Assignment local_search(const SchedulingInstance& inst, Assignment start, std::size_t max_moves);

/// Pool of valid assignments: greedy first, then random and local-search
/// members interleaved. Deterministic given the seed.
std::vector<Assignment> heuristic_assignments(const SchedulingInstance& inst, std::size_t count,
                                              std::uint64_t seed, const HeuristicOptions& options = {});

/// The same pool, one member at a time, for instances too large to hold
/// `count` assignments in memory.
void for_each_heuristic_assignment(const SchedulingInstance& inst, std::size_t count, std::uint64_t seed,
                                   const std::function<void(const Assignment&)>& visit,
                                   const HeuristicOptions& options = {});

/// Order in which exact search and greedy place jobs: decreasing minimum
/// finite size, ties by job id.
std::vector<JobId> placement_order(const SchedulingInstance& inst);

}  // namespace gmsched
