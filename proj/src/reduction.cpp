#include "gmsched/reduction.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "gmsched/gapgen.hpp"

namespace gmsched {

std::size_t ReducedInstance::class_of(JobId j) const {
  const std::size_t local = j % edge_block;
  const auto it = std::upper_bound(class_offsets.begin(), class_offsets.end(), local);
  return static_cast<std::size_t>(it - class_offsets.begin()) - 1;
}

namespace {

constexpr double kLoadSlack = 1e-12;

void validate_params(const LabelCoverInstance& lc, const ReductionParams& p, std::size_t d) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("reduction params: " + what); };
  const std::size_t m = lc.labels;
  if (m < 2 || m % 2 != 0) fail("m = L must be even and >= 2");
  if (p.classes < 1) fail("h must be >= 1");
  if (p.classes >= m) fail("h must be < m");
  if (!(p.beta > 0.0 && p.beta < 1.0)) fail("beta must lie in (0, 1)");
  if (p.class_sizes.size() != p.classes) fail("need exactly h class sizes");
  for (std::size_t s : p.class_sizes) {
    if (s == 0) fail("empty size class");
  }
  if (!(2.0 * static_cast<double>(m) * p.beta * static_cast<double>(d) < 1.0)) fail("2 m beta d must be < 1");
}

}  // namespace

std::vector<JobId> claim_set(const ReducedInstance& r, std::size_t w, Label a, std::size_t s) {
  if (w >= r.vertex_count() || a >= r.m || s >= r.params.classes) {
    throw std::invalid_argument("claim set index out of range");
  }
  std::vector<JobId> out;
  const bool left = w < r.lc.left;
  for (std::size_t e = 0; e < r.lc.edges.size(); ++e) {
    const auto& edge = r.lc.edges[e];
    if (left ? edge.u != w : edge.v != w - r.lc.left) continue;
    const auto& set = r.system(e, s).sets[left ? edge.proj[a] : a];
    for (std::size_t x = 0; x < set.size(); ++x) {
      if (set.test(x) == left) out.push_back(r.job_id(e, s, x));
    }
  }
  return out;
}

ReducedInstance reduce(const LabelCoverInstance& lc, const ReductionParams& params) {
  lc.validate();
  const auto d = lc.regular_degree();
  if (!d || *d == 0) throw std::invalid_argument("label cover graph must be regular with positive degree");
  validate_params(lc, params, *d);

  ReducedInstance r;
  r.lc = lc;
  r.params = params;
  r.m = lc.labels;
  r.degree = *d;
  const std::size_t h = params.classes;
  r.class_offsets.push_back(0);
  for (std::size_t s = 0; s < h; ++s) {
    r.class_offsets.push_back(r.class_offsets.back() + params.class_sizes[s]);
    const double n_s = static_cast<double>(r.degree * params.class_sizes[s]);
    r.heavy_k.push_back(size_class_k(params.beta * params.beta * n_s));
  }
  r.edge_block = r.class_offsets.back();
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    for (std::size_t s = 0; s < h; ++s) {
      r.systems.push_back(build_random(params.class_sizes[s], r.m, r.system_seed(e, s)));
    }
  }

  std::vector<std::size_t> offsets{0};
  std::vector<ProcEntry> entries;
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    const auto& edge = lc.edges[e];
    for (std::size_t s = 0; s < h; ++s) {
      const double p = class_job_size(params.beta, s);
      const auto& sets = r.system(e, s).sets;
      for (std::size_t x = 0; x < params.class_sizes[s]; ++x) {
        // Left machines come first in id order, each side by increasing index.
        for (std::size_t i = 0; i < r.m; ++i) {
          if (sets[edge.proj[r.label_at(i, s)]].test(x)) entries.push_back({r.machine_id(edge.u, i), p});
        }
        for (std::size_t i = 0; i < r.m; ++i) {
          if (!sets[r.label_at(i, s)].test(x)) entries.push_back({r.machine_id(lc.left + edge.v, i), p});
        }
        offsets.push_back(entries.size());
      }
    }
  }
  std::vector<ScaledTopKTerm> terms;
  for (std::size_t s = 0; s < h; ++s) {
    terms.push_back({r.heavy_k[s], 1.0 / (static_cast<double>(r.heavy_k[s]) * class_job_size(params.beta, s))});
  }
  const std::size_t machines = r.vertex_count() * r.m;
  r.instance = SchedulingInstance(machines, std::move(offsets), std::move(entries), {MixtureNorm(std::move(terms))},
                                  std::vector<std::uint32_t>(machines, 0));

  const double upper = 1.0 + static_cast<double>(h) * params.beta;
  const auto& norm = r.instance.norm(0);
  for (std::size_t w = 0; w < r.vertex_count(); ++w) {
    for (Label a = 0; a < r.m; ++a) {
      for (std::size_t s = 0; s < h; ++s) {
        const std::pair<double, std::size_t> hist[] = {{class_job_size(params.beta, s), claim_set(r, w, a, s).size()}};
        const double v = hist[0].second == 0 ? 0.0 : norm.evaluate_histogram(hist);
        if (v < 1.0 - kLoadSlack || v > upper * (1.0 + kLoadSlack)) {
          throw ConstructionRejected("load of S(w=" + std::to_string(w) + ", a=" + std::to_string(a) +
                                     ", s=" + std::to_string(s) + ") is " + std::to_string(v) + ", outside [1, " +
                                     std::to_string(upper) + "]");
        }
      }
    }
  }
  return r;
}

StructuralReport structural_scan(const ReducedInstance& r) {
  StructuralReport rep;
  rep.machines = r.instance.machine_count();
  rep.expected_machines = r.vertex_count() * r.m;
  std::vector<double> sizes;
  for (std::size_t s = 0; s < r.params.classes; ++s) sizes.push_back(class_job_size(r.params.beta, s));
  for (JobId j = 0; j < r.instance.job_count(); ++j) {
    const auto& edge = r.lc.edges[r.edge_of(j)];
    bool left = false, right = false;
    for (const auto& entry : r.instance.entries(j)) {
      const std::size_t w = r.vertex_of(entry.machine);
      if (w == edge.u) {
        left = true;
      } else if (w == r.lc.left + edge.v) {
        right = true;
      } else {
        ++rep.foreign_machines;
      }
      if (std::find(sizes.begin(), sizes.end(), entry.size) == sizes.end()) ++rep.foreign_sizes;
    }
    rep.jobs_with_left_entry += left ? 1 : 0;
    rep.jobs_with_right_entry += right ? 1 : 0;
    rep.jobs_without_entry += (left || right) ? 0 : 1;
  }
  // For a machine w_i and a label a, count the classes whose residue for a is i
  // and whose claim set S_{w,a,s} is nonempty.
  for (std::size_t w = 0; w < r.vertex_count(); ++w) {
    for (std::size_t i = 0; i < r.m; ++i) {
      for (Label a = 0; a < r.m; ++a) {
        std::size_t hits = 0;
        for (std::size_t s = 0; s < r.params.classes; ++s) {
          if (r.residue(a, s) == i && !claim_set(r, w, a, s).empty()) ++hits;
        }
        if (hits > 1) ++rep.label_class_clashes;
      }
    }
  }
  rep.ok = rep.machines == rep.expected_machines && rep.jobs_without_entry == 0 && rep.foreign_sizes == 0 &&
           rep.foreign_machines == 0 && rep.label_class_clashes == 0;
  return rep;
}

Assignment completeness_assignment(const ReducedInstance& r, const Labeling& sigma) {
  const auto& lc = r.lc;
  satisfied_count(lc, sigma);  // shape and range check
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    if (!edge_satisfied(lc, sigma, e)) {
      throw std::invalid_argument("labeling violates edge " + std::to_string(e) + " (u=" +
                                  std::to_string(lc.edges[e].u) + ", v=" + std::to_string(lc.edges[e].v) + ")");
    }
  }
  Assignment a{std::vector<MachineId>(r.instance.job_count(), kUnassigned)};
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    const auto& edge = lc.edges[e];
    const Label au = sigma.of_left(edge.u);
    const Label bv = sigma.of_right(lc.left, edge.v);
    for (std::size_t s = 0; s < r.params.classes; ++s) {
      const auto& set = r.system(e, s).sets[edge.proj[au]];
      const MachineId mu = r.machine_id(edge.u, r.residue(au, s));
      const MachineId mv = r.machine_id(lc.left + edge.v, r.residue(bv, s));
      for (std::size_t x = 0; x < set.size(); ++x) {
        // Since pi_e(sigma(u)) = sigma(v), x is in S_{v,sigma(v),s} exactly when not in S_{u,sigma(u),s}.
        a.machine_of[r.job_id(e, s, x)] = set.test(x) ? mu : mv;
      }
    }
  }
  validate_assignment(r.instance, a);
  return a;
}

ReducedHeavyProfile heavy_profile_reduced(const ReducedInstance& r, const Assignment& a) {
  validate_assignment(r.instance, a);
  const std::size_t h = r.params.classes;
  const std::size_t machines = r.instance.machine_count();
  ReducedHeavyProfile hp;
  hp.classes = h;
  hp.counts.assign(machines * h, 0);
  // A class-s job is finite on w_i exactly when it lies in S_{w,a,s} for the
  // label a with residue i, so every class-s job on w_i counts.
  for (JobId j = 0; j < a.machine_of.size(); ++j) ++hp.counts[a.machine_of[j] * h + r.class_of(j)];
  hp.heavy.assign(hp.counts.size(), false);
  hp.heavy_per_machine.assign(machines, 0);
  hp.classes_per_machine.assign(machines, 0);
  hp.loads = loads(r.instance, a);
  for (MachineId i = 0; i < machines; ++i) {
    for (std::size_t s = 0; s < h; ++s) {
      const std::size_t c = hp.counts[i * h + s];
      if (c > 0) ++hp.classes_per_machine[i];
      if (c >= r.heavy_k[s]) {
        hp.heavy[i * h + s] = true;
        ++hp.heavy_per_machine[i];
      }
    }
    // 1e-9 absolute: a saturated term evaluates to k p / (k p), which may round below 1.
    if (hp.loads[i] + 1e-9 < static_cast<double>(hp.heavy_per_machine[i])) hp.load_below_heavy.push_back(i);
  }
  return hp;
}

GoodClassReport good_classes(const ReducedInstance& r, const ReducedHeavyProfile& hp, double threshold) {
  const std::size_t h = r.params.classes;
  GoodClassReport rep;
  rep.threshold = threshold;
  rep.spread_limit = 32.0 * threshold;
  rep.required = (3 * h + 3) / 4;
  rep.good.assign(r.vertex_count(), std::vector<bool>(h, false));
  rep.spread.assign(r.vertex_count(), std::vector<std::size_t>(h, 0));
  rep.good_count.assign(r.vertex_count(), 0);
  for (std::size_t w = 0; w < r.vertex_count(); ++w) {
    for (std::size_t s = 0; s < h; ++s) {
      for (std::size_t i = 0; i < r.m; ++i) rep.spread[w][s] += hp.is_heavy(r.machine_id(w, i), s) ? 1 : 0;
      if (static_cast<double>(rep.spread[w][s]) <= rep.spread_limit) {
        rep.good[w][s] = true;
        ++rep.good_count[w];
      }
    }
    if (rep.good_count[w] < rep.required) rep.violations.push_back(w);
  }
  return rep;
}

StarClass select_star_class(const ReducedInstance& r, const GoodClassReport& good) {
  StarClass best;
  bool have = false;
  for (std::size_t s = 0; s < r.params.classes; ++s) {
    std::vector<std::size_t> edges;
    for (std::size_t e = 0; e < r.lc.edges.size(); ++e) {
      const auto& edge = r.lc.edges[e];
      if (good.good[edge.u][s] && good.good[r.lc.left + edge.v][s]) edges.push_back(e);
    }
    if (!have || edges.size() > best.edges.size()) {
      best.cls = s;
      best.edges = std::move(edges);
      have = true;
    }
  }
  best.covers_half = 2 * best.edges.size() >= r.lc.edges.size();
  return best;
}

LabelSets extract_label_sets(const ReducedInstance& r, const ReducedHeavyProfile& hp, std::size_t star) {
  if (star >= r.params.classes) throw std::invalid_argument("class index out of range");
  LabelSets out;
  out.sets.resize(r.vertex_count());
  out.fallback.assign(r.vertex_count(), false);
  for (std::size_t w = 0; w < r.vertex_count(); ++w) {
    for (Label a = 0; a < r.m; ++a) {
      if (hp.is_heavy(r.machine_id(w, r.residue(a, star)), star)) out.sets[w].push_back(a);
    }
    if (out.sets[w].empty()) {
      out.sets[w].push_back(0);
      out.fallback[w] = true;
    }
  }
  return out;
}

Labeling sample_labeling(const LabelSets& sets, std::uint64_t seed) {
  Rng rng(seed);
  Labeling sigma;
  sigma.labels.reserve(sets.sets.size());
  for (const auto& s : sets.sets) {
    if (s.empty()) throw std::invalid_argument("empty label set");
    sigma.labels.push_back(s[rng.below(s.size())]);
  }
  return sigma;
}

SoundnessReport soundness_report(const ReducedInstance& r, const Assignment& a, std::size_t trials,
                                 std::uint64_t seed, const SoundnessOptions& options) {
  if (trials == 0) throw std::invalid_argument("soundness report needs trials >= 1");
  const auto& lc = r.lc;
  SoundnessReport rep;
  const auto hp = heavy_profile_reduced(r, a);  // validates a
  rep.makespan = *std::max_element(hp.loads.begin(), hp.loads.end());
  const double T = rep.makespan;
  rep.load_below_heavy = hp.load_below_heavy.size();
  const auto good = good_classes(r, hp, T);
  rep.good_violations = good.violations.size();
  const auto star = select_star_class(r, good);
  rep.star = star.cls;
  rep.star_edges = star.edges.size();
  rep.star_covers_half = star.covers_half;
  const auto sets = extract_label_sets(r, hp, star.cls);
  const double m = static_cast<double>(r.m);
  rep.counting_ok = 2.0 * m * r.params.beta * static_cast<double>(r.degree) < 1.0;
  rep.class_budget_ok = 8 * r.params.classes <= r.m;
  const bool scale_ok = 64.0 * T < static_cast<double>(r.params.cover_budget);
  if (!rep.class_budget_ok) rep.notes.push_back("h > m/8: the good-class count is not guaranteed");

  std::vector<bool> star_good(lc.edges.size(), false);
  for (auto e : star.edges) star_good[e] = true;
  double prob_sum = 0.0, asserted_sum = 0.0;
  std::size_t scale_blocked = 0;
  for (std::size_t e = 0; e < lc.edges.size(); ++e) {
    const auto& edge = lc.edges[e];
    const auto& lu = sets.sets[edge.u];
    const auto& lv = sets.sets[lc.left + edge.v];
    EdgeSoundness es;
    es.edge = e;
    es.left_size = lu.size();
    es.right_size = lv.size();
    for (Label x : lu) {
      if (std::binary_search(lv.begin(), lv.end(), edge.proj[x])) ++es.matching_pairs;
    }
    es.probability = static_cast<double>(es.matching_pairs) / static_cast<double>(lu.size() * lv.size());
    es.star_good = star_good[e];
    es.sizes_within = static_cast<double>(lu.size() + lv.size()) <= 64.0 * T;
    es.scale_ok = scale_ok;
    es.systems_ok = verify_exhaustive(r.system(e, star.cls), r.params.cover_budget, r.params.beta).passed;
    if (!es.star_good) es.unmet.push_back("class s* not good at both endpoints");
    if (!es.sizes_within) es.unmet.push_back("|L(u)| + |L(v)| > 64T");
    if (!es.scale_ok && options.require_scale_gate) es.unmet.push_back("64T >= l");
    if (!rep.counting_ok) es.unmet.push_back("2 m beta d >= 1");
    if (!es.systems_ok) es.unmet.push_back("set system fails the covering check at (l, beta)");
    es.asserted = es.unmet.empty();
    if (!es.scale_ok && options.require_scale_gate) ++scale_blocked;
    if (es.asserted) {
      ++rep.asserted;
      es.holds = es.matching_pairs > 0;
      if (!es.holds) ++rep.asserted_failures;
      asserted_sum += 1.0 / static_cast<double>(lu.size() * lv.size());
    } else {
      rep.vacuous_edges.push_back(e);
    }
    prob_sum += es.probability;
    rep.edges.push_back(std::move(es));
  }
  const double E = static_cast<double>(lc.edges.size());
  rep.vacuous = rep.asserted == 0;
  if (scale_blocked == lc.edges.size() && !lc.edges.empty()) {
    rep.notes.push_back("matching-pair preconditions vacuous at this scale (64T >= l on every edge)");
  }
  rep.exact_expected = lc.edges.empty() ? 1.0 : prob_sum / E;
  rep.asserted_bound = lc.edges.empty() ? 0.0 : asserted_sum / E;
  rep.extraction_bound = lc.edges.empty() ? 0.0 : static_cast<double>(rep.star_edges) / (E * 32.0 * T * 32.0 * T);

  rep.trials = trials;
  double sum = 0.0, sum_sq = 0.0;
  for (std::size_t t = 0; t < trials; ++t) {
    const double f = eval_labeling(lc, sample_labeling(sets, derive_seed(seed, t)));
    sum += f;
    sum_sq += f * f;
  }
  const double n = static_cast<double>(trials);
  rep.sample_mean = sum / n;
  const double var = trials > 1 ? std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0)) : 0.0;
  rep.sample_stderr = std::sqrt(var / n);
  rep.mean_consistent = std::abs(rep.sample_mean - rep.exact_expected) <= 3.0 * rep.sample_stderr + 1e-9;
  rep.bound_consistent = rep.sample_mean >= rep.asserted_bound - 3.0 * rep.sample_stderr - 1e-9;
  return rep;
}

}  // namespace gmsched
