#include "gmsched/gapgen.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gmsched {

namespace {

// Relative slack for the lower end of [1, 1 + h beta]: k p (1 / (k p)) need not round to 1.
constexpr double kLoadSlack = 1e-12;

std::string class_name(std::size_t s) { return "class " + std::to_string(s + 1); }

MixtureNorm gap_norm(const GapParams& p) {
  std::vector<ScaledTopKTerm> terms;
  for (std::size_t s = 0; s < p.classes; ++s) {
    const double n = static_cast<double>(p.class_sizes[s]);
    terms.push_back(size_class_term(p.beta * p.beta * n, class_job_size(p.beta, s)));
  }
  return MixtureNorm(std::move(terms));
}

}  // namespace

double class_job_size(double beta, std::size_t s) { return std::pow(beta, static_cast<double>(s)); }

void validate_gap_params(const GapParams& p) {
  auto fail = [](const std::string& what) { throw std::invalid_argument("gap params: " + what); };
  if (p.machines < 2 || p.machines % 2 != 0) fail("m must be even and >= 2");
  if (p.classes < 1) fail("h must be >= 1");
  if (p.classes >= p.machines) fail("h must be < m");
  if (2 * p.classes > p.machines) fail("h must be <= m/2 so that machine sums 2h/m stay <= 1");
  if (!(p.beta > 0.0 && p.beta < 1.0)) fail("beta must lie in (0, 1)");
  if (!(static_cast<double>(p.machines) * p.beta < 1.0)) fail("m * beta must be < 1");
  if (!(static_cast<double>(p.classes) * p.beta <= 0.5)) fail("h * beta must be <= 0.5");
  if (p.class_sizes.size() != p.classes) fail("need exactly h class sizes");
  for (std::size_t s = 0; s < p.classes; ++s) {
    if (p.class_sizes[s] == 0) fail(class_name(s) + " is empty");
  }
}

AsymptoticCoupling asymptotic_params(double n) {
  if (!(n > 1.0) || !std::isfinite(n)) throw std::invalid_argument("asymptotic_params needs a finite n > 1");
  AsymptoticCoupling c;
  c.n = n;
  const double root = std::sqrt(std::log(n));
  c.machines = std::max<std::size_t>(2, 2 * static_cast<std::size_t>(std::llround(root / 2.0)));
  const auto m = static_cast<double>(c.machines);
  c.classes = c.machines / 8;
  c.cover_budget = c.machines / 10;
  if (c.classes < 1) {
    c.classes = 1;
    c.classes_clamped = true;
    c.notes.push_back("h = floor(m/8) was 0, clamped to 1");
  }
  if (c.cover_budget < 1) {
    c.cover_budget = 1;
    c.budget_clamped = true;
    c.notes.push_back("l = floor(m/10) was 0, clamped to 1");
  }
  c.beta = std::exp(-m);
  double total = 0.0;
  for (std::size_t s = 1; s <= c.classes; ++s) {
    c.class_sizes.push_back(std::sqrt(n) / 2.0 * std::exp(4.0 * m * static_cast<double>(s)));
    total += c.class_sizes.back();
  }
  c.heavy_threshold_ok = c.beta * c.beta * c.class_sizes.front() >= 1.0;
  if (!c.heavy_threshold_ok) c.notes.push_back("beta^2 n_1 < 1: heavy threshold below one job");
  const bool small = total <= 1e7 && std::isfinite(total);
  if (!small) c.notes.push_back("class sizes total " + std::to_string(total) + " jobs");
  c.desk_verifiable = c.heavy_threshold_ok && small;
  if (!c.desk_verifiable) c.notes.push_back("asymptotic - not desk-verifiable");
  return c;
}

GapParams desk_params(std::size_t m, std::size_t h, std::size_t l, double beta, std::size_t first_class_size,
                      std::uint64_t seed, std::size_t attempts) {
  GapParams p{m, h, l, beta, std::vector<std::size_t>(h, first_class_size), seed};
  validate_gap_params(p);
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    p.seed = seed + attempt;
    p.class_sizes.assign(1, first_class_size);
    std::vector<std::size_t> largest_set;  // max_i |A_i(s)| per built class
    bool ok = true;
    for (std::size_t s = 0; s < h && ok; ++s) {
      if (s > 0) {
        // Cross term of class s on A_i(t), t < s: |A_i(t)| / (k_s beta^(s-t)). Classes
        // below t contribute at most beta^(t-r) each; the rest of h*beta is split
        // evenly over the h-1-t classes above t.
        double need = 1.0;
        for (std::size_t t = 0; t < s; ++t) {
          double lower = 0.0;
          for (std::size_t r = 1; r <= t; ++r) lower += std::pow(beta, static_cast<double>(r));
          const double share = (static_cast<double>(h) * beta - lower) / static_cast<double>(h - 1 - t);
          const double k = static_cast<double>(largest_set[t]) /
                           (std::pow(beta, static_cast<double>(s - t)) * share);
          // Strictly inside the budget so the bound survives rounding.
          need = std::max(need, std::floor(k * (1.0 + 1e-9)) + 1.0);
        }
        auto n = static_cast<std::size_t>(std::ceil(need / (beta * beta)));
        while (size_class_k(beta * beta * static_cast<double>(n)) < static_cast<std::size_t>(need)) ++n;
        p.class_sizes.push_back(n);
      }
      const SetSystem ss = build_random(p.class_sizes[s], m, derive_seed(p.seed, s));
      if (!verify_exhaustive(ss, l, beta).passed) {
        ok = false;
        break;
      }
      std::size_t biggest = 0;
      for (const auto& set : ss.sets) biggest = std::max(biggest, set.count());
      largest_set.push_back(biggest);
    }
    if (ok) return p;
  }
  throw ConstructionRejected("no seed in [" + std::to_string(seed) + ", " + std::to_string(seed + attempts) +
                             ") gives class systems passing verification at l=" + std::to_string(l));
}

std::size_t GapInstance::class_of(JobId j) const {
  const auto it = std::upper_bound(class_offsets.begin(), class_offsets.end(), static_cast<std::size_t>(j));
  return static_cast<std::size_t>(it - class_offsets.begin()) - 1;
}

std::vector<JobId> GapInstance::set_jobs(MachineId i, std::size_t s) const {
  std::vector<JobId> out;
  for (std::size_t e : systems[s].sets[i].elements()) out.push_back(job_id(s, e));
  return out;
}

GapInstance build_gap_instance(const GapParams& params) {
  std::vector<SetSystem> systems;
  for (std::size_t s = 0; s < params.classes; ++s) {
    systems.push_back(build_random(params.class_sizes.at(s), params.machines, derive_seed(params.seed, s)));
  }
  return build_gap_instance(params, std::move(systems));
}

GapInstance build_gap_instance(const GapParams& params, std::vector<SetSystem> systems) {
  validate_gap_params(params);
  if (systems.size() != params.classes) throw std::invalid_argument("need one set system per class");
  GapInstance g;
  g.params = params;
  g.class_offsets.push_back(0);
  for (std::size_t s = 0; s < params.classes; ++s) {
    const auto& ss = systems[s];
    if (ss.universe != params.class_sizes[s] || ss.set_count() != params.machines) {
      throw std::invalid_argument(class_name(s) + " set system has the wrong shape");
    }
    g.class_offsets.push_back(g.class_offsets.back() + ss.universe);
    g.heavy_k.push_back(size_class_k(params.beta * params.beta * static_cast<double>(ss.universe)));
  }
  g.systems = std::move(systems);

  const std::size_t n = g.class_offsets.back();
  std::vector<std::size_t> offsets;
  offsets.reserve(n + 1);
  offsets.push_back(0);
  std::vector<ProcEntry> entries;
  for (std::size_t s = 0; s < params.classes; ++s) {
    const double p = class_job_size(params.beta, s);
    const auto& ss = g.systems[s];
    for (std::size_t e = 0; e < ss.universe; ++e) {
      for (MachineId i = 0; i < params.machines; ++i) {
        if (ss.sets[i].test(e)) entries.push_back({i, p});
      }
      if (entries.size() == offsets.back()) {
        throw ConstructionRejected(class_name(s) + " element " + std::to_string(e) + " lies in no set");
      }
      offsets.push_back(entries.size());
    }
  }
  g.instance = SchedulingInstance(params.machines, std::move(offsets), std::move(entries), {gap_norm(params)},
                                  std::vector<std::uint32_t>(params.machines, 0));

  const double upper = 1.0 + static_cast<double>(params.classes) * params.beta;
  const auto set_loads = class_set_loads(g);
  for (MachineId i = 0; i < params.machines; ++i) {
    for (std::size_t s = 0; s < params.classes; ++s) {
      const double v = set_loads[i][s];
      if (v < 1.0 - kLoadSlack || v > upper * (1.0 + kLoadSlack)) {
        throw ConstructionRejected("psi_" + std::to_string(i) + "(A_" + std::to_string(i) + "(" +
                                   std::to_string(s + 1) + ")) = " + std::to_string(v) + " outside [1, " +
                                   std::to_string(upper) + "] (machine " + std::to_string(i) + ", " +
                                   class_name(s) + ")");
      }
    }
  }
  return g;
}

std::vector<std::vector<double>> class_set_loads(const GapInstance& g) {
  const auto& norm = g.instance.norm(0);
  std::vector<std::vector<double>> out(g.params.machines, std::vector<double>(g.params.classes));
  for (MachineId i = 0; i < g.params.machines; ++i) {
    for (std::size_t s = 0; s < g.params.classes; ++s) {
      // A_i(s) is |A_i(s)| copies of beta^s.
      const std::pair<double, std::size_t> hist[] = {
          {class_job_size(g.params.beta, s), g.systems[s].sets[i].count()}};
      out[i][s] = hist[0].second == 0 ? 0.0 : norm.evaluate_histogram(hist);
    }
  }
  return out;
}

FractionalSolution fractional_certificate(const GapInstance& g) {
  FractionalSolution sol{2.0, {}};
  const double w = 2.0 / static_cast<double>(g.params.machines);
  for (MachineId i = 0; i < g.params.machines; ++i) {
    for (std::size_t s = 0; s < g.params.classes; ++s) sol.entries.push_back({{i, g.set_jobs(i, s)}, w});
  }
  return sol;
}

namespace {

HeavyProfile count_heavy(const GapInstance& g, const Assignment& a) {
  HeavyProfile hp;
  hp.machines = g.params.machines;
  hp.classes = g.params.classes;
  hp.counts.assign(hp.machines * hp.classes, 0);
  for (std::size_t s = 0; s < hp.classes; ++s) {
    const auto& ss = g.systems[s];
    for (std::size_t e = 0; e < ss.universe; ++e) {
      const MachineId i = a.machine_of[g.job_id(s, e)];
      if (ss.sets[i].test(e)) ++hp.counts[i * hp.classes + s];
    }
  }
  hp.heavy.assign(hp.counts.size(), false);
  hp.heavy_per_machine.assign(hp.machines, 0);
  hp.heavy_machines_per_class.assign(hp.classes, 0);
  for (MachineId i = 0; i < hp.machines; ++i) {
    for (std::size_t s = 0; s < hp.classes; ++s) {
      if (hp.counts[i * hp.classes + s] >= g.heavy_k[s]) {
        hp.heavy[i * hp.classes + s] = true;
        ++hp.heavy_per_machine[i];
        ++hp.heavy_machines_per_class[s];
      }
    }
    hp.max_heavy = std::max(hp.max_heavy, hp.heavy_per_machine[i]);
  }
  return hp;
}

}  // namespace

HeavyProfile heavy_profile(const GapInstance& g, const Assignment& a) {
  validate_assignment(g.instance, a);
  return count_heavy(g, a);
}

AuditPreconditions audit_preconditions(const GapInstance& g) {
  AuditPreconditions pre;
  const auto& p = g.params;
  if (!(static_cast<double>(p.machines) * p.beta < 1.0)) pre.broken.push_back("m * beta >= 1");
  for (std::size_t s = 0; s < p.classes; ++s) {
    const auto report = verify_exhaustive(g.systems[s], p.cover_budget, p.beta);
    if (!report.passed) {
      pre.broken.push_back(class_name(s) + " set system violates the covering property at l=" +
                           std::to_string(p.cover_budget) + " (union " +
                           std::to_string(report.witness->union_size) + " > " + std::to_string(report.threshold) +
                           ")");
    }
  }
  pre.applicable = pre.broken.empty();
  return pre;
}

CoverageAudit class_coverage_audit(const GapInstance& g, const Assignment& a) {
  return class_coverage_audit(g, a, audit_preconditions(g));
}

CoverageAudit class_coverage_audit(const GapInstance& g, const Assignment& a, const AuditPreconditions& pre) {
  CoverageAudit audit;
  audit.makespan = makespan(g.instance, a);  // validates a
  const auto hp = count_heavy(g, a);
  const auto& p = g.params;
  audit.heavy_machines_per_class = hp.heavy_machines_per_class;
  audit.required_per_class = p.cover_budget;
  audit.max_heavy = hp.max_heavy;
  audit.required_max_heavy = (p.classes * p.cover_budget + p.machines - 1) / p.machines;
  if (!pre.applicable) {
    audit.verdict = AuditVerdict::NotApplicable;
    audit.not_applicable = pre.broken;
    return audit;
  }
  for (std::size_t s = 0; s < p.classes; ++s) {
    if (hp.heavy_machines_per_class[s] >= p.cover_budget) continue;
    // Counting contradiction: heavy machines only hold jobs of their own sets, so
    // at least beta n_s jobs sit on light machines, each holding < k_s of them.
    ClassShortfall sf;
    sf.cls = s;
    sf.heavy_machines = hp.heavy_machines_per_class[s];
    const auto& ss = g.systems[s];
    BitSet acc(ss.universe);
    for (MachineId i = 0; i < p.machines; ++i) {
      if (hp.is_heavy(i, s)) acc.unite(ss.sets[i], false);
    }
    sf.heavy_union = acc.count();
    sf.union_threshold = union_threshold(ss.universe, p.beta);
    for (std::size_t e = 0; e < ss.universe; ++e) {
      if (!hp.is_heavy(a.machine_of[g.job_id(s, e)], s)) ++sf.jobs_on_light;
    }
    sf.light_capacity = (p.machines - sf.heavy_machines) * (g.heavy_k[s] - 1);
    audit.shortfalls.push_back(sf);
  }
  if (!audit.shortfalls.empty() || audit.max_heavy < audit.required_max_heavy) {
    audit.verdict = AuditVerdict::Fails;
  }
  return audit;
}

const char* to_string(AuditVerdict v) {
  switch (v) {
    case AuditVerdict::Holds: return "holds";
    case AuditVerdict::Fails: return "fails";
    case AuditVerdict::NotApplicable: return "not-applicable";
  }
  return "?";
}

}  // namespace gmsched
