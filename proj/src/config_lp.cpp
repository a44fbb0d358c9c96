#include "gmsched/config_lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace gmsched {

namespace {

void enumerate(const SchedulingInstance& inst, MachineId machine, double threshold,
               const std::vector<JobId>& finite, std::size_t start, std::vector<JobId>& current,
               std::vector<Configuration>& out) {
  out.push_back({machine, current});
  for (std::size_t k = start; k < finite.size(); ++k) {
    current.push_back(finite[k]);
    // Norms are monotone: an invalid set has no valid superset through this job.
    if (is_valid_at(inst.config_load(machine, current), threshold)) {
      enumerate(inst, machine, threshold, finite, k + 1, current, out);
    }
    current.pop_back();
  }
}

}  // namespace

std::vector<Configuration> enumerate_valid_configs(const SchedulingInstance& inst, MachineId machine,
                                                   double threshold, std::uint64_t cap) {
  if (machine >= inst.machine_count()) throw std::invalid_argument("machine out of range");
  const auto finite = inst.finite_jobs(machine);
  if (finite.size() >= 63 || (std::uint64_t{1} << finite.size()) > cap) {
    throw BudgetExceeded("machine " + std::to_string(machine) + " has " + std::to_string(finite.size()) +
                         " finite jobs; 2^" + std::to_string(finite.size()) +
                         " configurations exceed the cap of " + std::to_string(cap));
  }
  std::vector<Configuration> out;
  std::vector<JobId> current;
  enumerate(inst, machine, threshold, finite, 0, current, out);
  return out;
}

FeasibilityReport check_fractional_feasibility(const SchedulingInstance& inst,
                                               const FractionalSolution& sol, double tol) {
  FeasibilityReport report;
  report.threshold = sol.threshold;
  report.tol = tol;
  report.machine_sums.assign(inst.machine_count(), 0.0);
  report.job_coverage.assign(inst.job_count(), 0.0);
  report.min_weight = sol.entries.empty() ? 0.0 : std::numeric_limits<double>::infinity();

  for (std::size_t e = 0; e < sol.entries.size(); ++e) {
    const auto& [config, weight] = sol.entries[e];
    report.min_weight = std::min(report.min_weight, weight);
    if (config.machine >= inst.machine_count()) {
      report.invalid_entries.push_back(e);
      continue;
    }
    report.machine_sums[config.machine] += weight;
    bool forbidden = false;
    for (JobId j : config.jobs) {
      if (j >= inst.job_count() || !inst.size(config.machine, j)) {
        forbidden = true;
        break;
      }
      report.job_coverage[j] += weight;
    }
    if (forbidden) {
      report.invalid_entries.push_back(e);
      continue;
    }
    const double load = inst.config_load(config.machine, config.jobs);
    const double excess = load - sol.threshold * (1.0 + kValidSlack);
    if (excess > 0.0) {
      report.worst_validity_excess = std::max(report.worst_validity_excess, excess);
      report.invalid_entries.push_back(e);
    }
  }
  for (MachineId i = 0; i < inst.machine_count(); ++i) {
    report.max_machine_sum = std::max(report.max_machine_sum, report.machine_sums[i]);
    if (report.machine_sums[i] > 1.0 + tol) report.overfull_machines.push_back(i);
  }
  for (JobId j = 0; j < inst.job_count(); ++j) {
    const double err = std::abs(report.job_coverage[j] - 1.0);
    report.worst_coverage_error = std::max(report.worst_coverage_error, err);
    if (err > tol) report.coverage_violations.push_back(j);
  }
  report.feasible = report.invalid_entries.empty() && report.overfull_machines.empty() &&
                    report.coverage_violations.empty() && report.min_weight >= -tol;
  return report;
}

FractionalSolution integral_solution(const SchedulingInstance& inst, const Assignment& a, double threshold) {
  validate_assignment(inst, a);
  std::vector<std::vector<JobId>> jobs(inst.machine_count());
  for (JobId j = 0; j < a.machine_of.size(); ++j) jobs[a.machine_of[j]].push_back(j);
  FractionalSolution sol{threshold, {}};
  for (MachineId i = 0; i < inst.machine_count(); ++i) {
    if (!jobs[i].empty()) sol.entries.push_back({{i, std::move(jobs[i])}, 1.0});
  }
  return sol;
}

FeasibilityOutcome solve_feasibility(const SchedulingInstance& inst, double threshold,
                                     const std::vector<Configuration>& pool, const LpOptions& options) {
  std::vector<const Configuration*> columns;
  for (const auto& c : pool) {
    if (c.machine >= inst.machine_count()) throw std::invalid_argument("pool configuration machine out of range");
    if (is_valid_at(inst.config_load(c.machine, c.jobs), threshold)) columns.push_back(&c);
  }
  LinearSystem system;
  system.variable_count = columns.size();
  const std::size_t m = inst.machine_count();
  system.rows.resize(m + inst.job_count());
  for (std::size_t r = 0; r < m; ++r) system.rows[r] = {{}, RowSense::LessEqual, 1.0};
  for (std::size_t j = 0; j < inst.job_count(); ++j) system.rows[m + j] = {{}, RowSense::Equal, 1.0};
  for (std::size_t v = 0; v < columns.size(); ++v) {
    system.rows[columns[v]->machine].coeffs.push_back({v, 1.0});
    for (JobId j : columns[v]->jobs) system.rows[m + j].coeffs.push_back({v, 1.0});
  }
  // Machines without columns add empty rows 0 <= 1; drop them.
  std::erase_if(system.rows, [](const LinearRow& r) { return r.coeffs.empty() && r.rhs == 1.0 &&
                                                               r.sense == RowSense::LessEqual; });

  FeasibilityOutcome outcome;
  const LpResult lp = lp_feasible(system, options);
  outcome.status = lp.status;
  outcome.residual = lp.residual;
  if (lp.status != LpStatus::Feasible) return outcome;
  FractionalSolution sol{threshold, {}};
  for (std::size_t v = 0; v < columns.size(); ++v) {
    if (lp.point[v] > 1e-12) sol.entries.push_back({*columns[v], lp.point[v]});
  }
  outcome.solution = std::move(sol);
  return outcome;
}

LpOptimum lp_opt_T(const SchedulingInstance& inst, double tol_rel, std::uint64_t cap) {
  if (!(tol_rel > 0.0)) throw std::invalid_argument("tol_rel must be positive");
  LpOptimum result;
  for (JobId j = 0; j < inst.job_count(); ++j) {
    double cheapest = std::numeric_limits<double>::infinity();
    for (const auto& e : inst.entries(j)) {
      const JobId single[] = {j};
      cheapest = std::min(cheapest, inst.config_load(e.machine, single));
    }
    result.lower_bound = std::max(result.lower_bound, cheapest);
  }
  for (MachineId i = 0; i < inst.machine_count(); ++i) {
    const auto all = inst.finite_jobs(i);
    result.upper_bound = std::max(result.upper_bound, inst.config_load(i, all));
  }

  // Every subset is valid at the upper bound, so one enumeration serves all probes.
  std::vector<Configuration> pool;
  std::vector<double> pool_loads;
  for (MachineId i = 0; i < inst.machine_count(); ++i) {
    for (auto& c : enumerate_valid_configs(inst, i, result.upper_bound, cap)) {
      pool_loads.push_back(inst.config_load(i, c.jobs));
      pool.push_back(std::move(c));
    }
  }
  auto probe = [&](double threshold) {
    ++result.probes;
    return solve_feasibility(inst, threshold, pool);
  };
  auto snap = [&](double threshold) {
    double best = 0.0;
    for (double l : pool_loads) {
      if (is_valid_at(l, threshold)) best = std::max(best, l);
    }
    return best;
  };

  double lo = result.lower_bound;
  double hi = result.upper_bound;
  auto first = probe(lo);
  if (first.status == LpStatus::Feasible) {
    result.threshold = snap(lo);
    result.solution = *probe(result.threshold).solution;
    return result;
  }
  auto top = probe(hi);
  if (top.status != LpStatus::Feasible) {
    throw SolverFailure("configuration LP infeasible at the all-jobs upper bound " + std::to_string(hi));
  }
  while (hi > lo * (1.0 + tol_rel)) {
    const double mid = std::sqrt(lo * hi);
    if (probe(mid).status == LpStatus::Feasible) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  result.threshold = snap(hi);
  auto final_probe = probe(result.threshold);
  if (!final_probe.solution) throw SolverFailure("snapped threshold lost LP feasibility");
  result.solution = std::move(*final_probe.solution);
  return result;
}

}  // namespace gmsched
