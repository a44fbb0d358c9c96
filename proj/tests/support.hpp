#pragma once

// Generators and slow reference oracles shared by the unit tests.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <numeric>
#include <vector>

#include "gmsched/common.hpp"
#include "gmsched/instance.hpp"
#include "gmsched/labelcover.hpp"
#include "gmsched/norms.hpp"

namespace testing {

using namespace gmsched;

// Sort a copy descending and add the first k; no prefix sums, no partial sort.
inline double oracle_top_k(std::vector<double> v, std::size_t k) {
  std::sort(v.begin(), v.end(), std::greater<>());
  double s = 0.0;
  for (std::size_t i = 0; i < v.size() && i < k; ++i) s += v[i];
  return s;
}

inline double oracle_norm(const MixtureNorm& n, const std::vector<double>& v) {
  double s = 0.0;
  for (const auto& t : n.terms()) s += t.scale * oracle_top_k(v, t.k);
  return s;
}

inline std::vector<double> random_vector(Rng& rng, std::size_t dim, bool integral = false) {
  std::vector<double> v(dim);
  for (auto& x : v) x = integral ? static_cast<double>(rng.below(10)) : rng.uniform(0.0, 10.0);
  return v;
}

inline MixtureNorm random_mixture(Rng& rng, std::size_t dim) {
  std::vector<ScaledTopKTerm> terms;
  const auto count = 1 + rng.below(4);
  for (std::size_t t = 0; t < count; ++t) {
    terms.push_back({1 + rng.below(dim), rng.uniform(0.05, 3.0)});
  }
  return MixtureNorm(terms);
}

// Restricted assignment: job j has one size (integral, 1..4) and a random
// nonempty set of allowed machines. Each machine draws one of three norms.
inline SchedulingInstance random_restricted(Rng& rng, std::size_t machines, std::size_t jobs) {
  std::vector<MixtureNorm> pool = {MixtureNorm::sum_norm(jobs), MixtureNorm({{1, 1.0}}),
                                   MixtureNorm({{1, 1.0}, {2, 0.5}, {jobs, 0.25}})};
  std::vector<std::uint32_t> norm_of(machines);
  for (auto& x : norm_of) x = static_cast<std::uint32_t>(rng.below(pool.size()));
  std::vector<ProcTriplet> triplets;
  for (JobId j = 0; j < jobs; ++j) {
    const double p = 1.0 + static_cast<double>(rng.below(4));
    bool any = false;
    for (MachineId i = 0; i < machines; ++i) {
      if (rng.coin(0.6)) {
        triplets.push_back({i, j, p});
        any = true;
      }
    }
    if (!any) triplets.push_back({static_cast<MachineId>(rng.below(machines)), j, p});
  }
  return SchedulingInstance::from_triplets(machines, jobs, triplets, pool, norm_of);
}

// Loads recomputed from scratch with the sort-and-sum oracle.
inline std::vector<double> oracle_loads(const SchedulingInstance& inst, const Assignment& a) {
  std::vector<std::vector<double>> per(inst.machine_count());
  for (JobId j = 0; j < inst.job_count(); ++j) per[a.machine_of[j]].push_back(*inst.size(a.machine_of[j], j));
  std::vector<double> out;
  for (MachineId i = 0; i < inst.machine_count(); ++i) out.push_back(oracle_norm(inst.norm(i), per[i]));
  return out;
}

// Minimum makespan over all m^n total maps (forbidden pairs skipped).
inline double oracle_opt(const SchedulingInstance& inst) {
  const auto n = inst.job_count();
  const auto m = inst.machine_count();
  Assignment a{std::vector<MachineId>(n, 0)};
  double best = std::numeric_limits<double>::infinity();
  std::function<void(std::size_t)> rec = [&](std::size_t j) {
    if (j == n) {
      const auto l = oracle_loads(inst, a);
      best = std::min(best, *std::max_element(l.begin(), l.end()));
      return;
    }
    for (MachineId i = 0; i < m; ++i) {
      if (!inst.size(i, static_cast<JobId>(j))) continue;
      a.machine_of[j] = i;
      rec(j + 1);
    }
  };
  rec(0);
  return best;
}

// Best labeling by trying all L^(|U|+|V|) labelings.
inline std::size_t oracle_lc_opt(const LabelCoverInstance& lc) {
  const auto w = lc.left + lc.right;
  Labeling s{std::vector<Label>(w, 0)};
  std::size_t best = 0;
  while (true) {
    best = std::max(best, satisfied_count(lc, s));
    std::size_t pos = 0;
    while (pos < w && ++s.labels[pos] == lc.labels) s.labels[pos++] = 0;
    if (pos == w) break;
  }
  return best;
}

}  // namespace testing
