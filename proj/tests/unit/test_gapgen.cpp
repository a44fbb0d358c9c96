#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "gmsched/gapgen.hpp"
#include "support.hpp"

using namespace gmsched;

namespace {

const GapInstance& desk() {
  static const GapInstance g = build_gap_instance(desk_params(8, 2, 2, 0.05, 16, 1));
  return g;
}

// Every job goes to the first machine of a random priority order on which
// it is finite, which piles each class onto as few machines as it can.
Assignment concentrating(const SchedulingInstance& inst, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> rank(inst.machine_count());
  std::vector<MachineId> order(inst.machine_count());
  for (MachineId i = 0; i < order.size(); ++i) order[i] = i;
  rng.shuffle(order);
  for (std::size_t r = 0; r < order.size(); ++r) rank[order[r]] = r;
  Assignment a{std::vector<MachineId>(inst.job_count())};
  for (JobId j = 0; j < inst.job_count(); ++j) {
    MachineId best = kUnassigned;
    for (const auto& e : inst.entries(j))
      if (best == kUnassigned || rank[e.machine] < rank[best]) best = e.machine;
    a.machine_of[j] = best;
  }
  return a;
}

GapInstance tiny_gap() {
  GapParams p{2, 1, 1, 0.25, {4}, 0};
  return build_gap_instance(p, {set_system_from_lists(4, {{0, 1}, {2, 3}})});
}

}  // namespace

TEST_CASE("parameter validation") {
  const GapParams ok{8, 2, 2, 0.05, {16, 800}, 1};
  CHECK_NOTHROW(validate_gap_params(ok));
  auto broken = [&](auto mutate) {
    GapParams p = ok;
    mutate(p);
    return p;
  };
  CHECK_THROWS_AS(validate_gap_params(broken([](GapParams& p) { p.machines = 7; })), std::invalid_argument);
  CHECK_THROWS_AS(validate_gap_params(broken([](GapParams& p) { p.classes = 0; p.class_sizes = {}; })),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_gap_params(broken([](GapParams& p) { p.classes = 5; p.class_sizes.resize(5, 1); })),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_gap_params(broken([](GapParams& p) { p.beta = 0.2; })), std::invalid_argument);
  CHECK_THROWS_AS(validate_gap_params(broken([](GapParams& p) { p.beta = 0.0; })), std::invalid_argument);
  CHECK_THROWS_AS(validate_gap_params(broken([](GapParams& p) { p.class_sizes = {16}; })), std::invalid_argument);
  CHECK_THROWS_AS(validate_gap_params(broken([](GapParams& p) { p.class_sizes = {16, 0}; })),
                  std::invalid_argument);
}

TEST_CASE("class job sizes are powers of beta") {
  CHECK(class_job_size(0.05, 0) == 1.0);
  CHECK(class_job_size(0.05, 1) == 0.05);
  CHECK(class_job_size(0.5, 3) == 0.125);
}

TEST_CASE("asymptotic coupling at n = 2^64") {
  const auto c = asymptotic_params(std::pow(2.0, 64));
  // sqrt(ln 2^64) = 6.66..., rounded to the even 6
  CHECK(c.machines == 6);
  CHECK(c.classes == 1);
  CHECK(c.classes_clamped);
  CHECK(c.cover_budget == 1);
  CHECK(c.budget_clamped);
  CHECK(c.beta == doctest::Approx(std::exp(-6.0)));
  REQUIRE(c.class_sizes.size() == 1);
  // n_1 = (sqrt(n) / 2) exp(4 m), far too many jobs to build
  CHECK(c.class_sizes[0] == doctest::Approx(std::sqrt(std::pow(2.0, 64)) / 2.0 * std::exp(24.0)));
  CHECK(c.heavy_threshold_ok);
  CHECK_FALSE(c.desk_verifiable);
  CHECK_FALSE(c.notes.empty());
  CHECK_THROWS_AS(asymptotic_params(1.0), std::invalid_argument);
}

TEST_CASE("desk instance structure") {
  const auto& g = desk();
  const auto& p = g.params;
  CHECK(p.machines == 8);
  CHECK(p.classes == 2);
  REQUIRE(p.class_sizes.size() == 2);
  CHECK(g.instance.job_count() == p.class_sizes[0] + p.class_sizes[1]);
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(g.heavy_k[s] == size_class_k(p.beta * p.beta * static_cast<double>(p.class_sizes[s])));
    CHECK(verify_exhaustive(g.systems[s], p.cover_budget, p.beta).passed);
  }
  // p_ij = beta^s exactly where j is in A_i(s), absent elsewhere
  for (std::size_t s = 0; s < 2; ++s) {
    for (std::size_t e = 0; e < p.class_sizes[s]; e += 97) {
      const JobId j = g.job_id(s, e);
      CHECK(g.class_of(j) == s);
      for (MachineId i = 0; i < 8; ++i) {
        const auto size = g.instance.size(i, j);
        CHECK(size.has_value() == g.systems[s].sets[i].test(e));
        if (size) CHECK(*size == class_job_size(p.beta, s));
      }
    }
  }
  // one shared norm
  CHECK(g.instance.norm_pool().size() == 1);
  for (MachineId i = 0; i < 8; ++i) {
    auto jobs = g.set_jobs(i, 1);
    CHECK(jobs.size() == g.systems[1].sets[i].count());
    CHECK(std::is_sorted(jobs.begin(), jobs.end()));
  }
}

TEST_CASE("class set loads lie in [1, 1 + h beta]") {
  const auto& g = desk();
  const double hi = 1.0 + g.params.classes * g.params.beta;
  const auto loads = class_set_loads(g);
  for (MachineId i = 0; i < 8; ++i) {
    for (std::size_t s = 0; s < 2; ++s) {
      CHECK(loads[i][s] >= 1.0);
      CHECK(loads[i][s] <= hi);
      // cross-check on a direct evaluation of the job list
      CHECK(loads[i][s] == doctest::Approx(g.instance.config_load(i, g.set_jobs(i, s))).epsilon(1e-12));
    }
  }
}

TEST_CASE("fractional certificate: coverage exactly one, machine sums exactly 2h/m") {
  const auto& g = desk();
  auto sol = fractional_certificate(g);
  CHECK(sol.threshold == 2.0);
  auto rep = check_fractional_feasibility(g.instance, sol, 1e-12);
  CHECK(rep.feasible);
  CHECK(rep.worst_coverage_error == 0.0);
  for (double s : rep.machine_sums) CHECK(s == 0.5);
  for (double c : rep.job_coverage) CHECK(c == 1.0);

  // one weight bumped by 0.1 breaks coverage on exactly the jobs of that set
  auto bumped = sol;
  bumped.entries[0].weight += 0.1;
  rep = check_fractional_feasibility(g.instance, bumped, 1e-9);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.coverage_violations == bumped.entries[0].config.jobs);
}

TEST_CASE("h = 1, m = 2 certificate has weight one") {
  auto g = tiny_gap();
  auto sol = fractional_certificate(g);
  for (const auto& e : sol.entries) CHECK(e.weight == 1.0);
  CHECK(check_fractional_feasibility(g.instance, sol, 1e-12).feasible);
}

TEST_CASE("explicit systems are checked") {
  GapParams p{2, 1, 1, 0.25, {4}, 0};
  CHECK_THROWS_AS(build_gap_instance(p, {set_system_from_lists(4, {{0, 1}, {2}})}), ConstructionRejected);
  CHECK_THROWS_AS(build_gap_instance(p, {set_system_from_lists(4, {{0, 1, 2, 3}, {}})}), ConstructionRejected);
  CHECK_THROWS_AS(build_gap_instance(p, {set_system_from_lists(5, {{0, 1}, {2, 3, 4}})}), std::invalid_argument);
  CHECK_THROWS_AS(build_gap_instance(p, {}), std::invalid_argument);
}

TEST_CASE("heavy profile basics") {
  const auto& g = desk();
  // put every job on the machine of its first set: A_i(s) lands wholly on i for that i
  auto a = concentrating(g.instance, 3);
  auto hp = heavy_profile(g, a);
  for (MachineId i = 0; i < 8; ++i) {
    for (std::size_t s = 0; s < 2; ++s) {
      CHECK(hp.is_heavy(i, s) == (hp.count(i, s) >= g.heavy_k[s]));
    }
  }
  // the top-priority machine receives all of its sets
  Rng rng(3);
  std::vector<MachineId> order(8);
  for (MachineId i = 0; i < 8; ++i) order[i] = i;
  rng.shuffle(order);
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(hp.count(order[0], s) == g.systems[s].sets[order[0]].count());
    CHECK(hp.is_heavy(order[0], s));
  }
  // the last-priority machine only gets jobs nobody else can take: none here
  CHECK(hp.heavy_per_machine[order[7]] == 0);
}

TEST_CASE("load is at least the heavy count on every machine") {
  const auto& g = desk();
  std::vector<Assignment> pool = heuristic_assignments(g.instance, 6, 2);
  for (std::uint64_t s = 0; s < 6; ++s) pool.push_back(concentrating(g.instance, s));
  for (const auto& a : pool) {
    auto hp = heavy_profile(g, a);
    auto l = loads(g.instance, a);
    for (MachineId i = 0; i < 8; ++i) CHECK(l[i] >= static_cast<double>(hp.heavy_per_machine[i]));
  }
}

TEST_CASE("coverage audit holds on heuristic and concentrating assignments") {
  const auto& g = desk();
  const auto pre = audit_preconditions(g);
  REQUIRE(pre.applicable);
  std::vector<Assignment> pool = heuristic_assignments(g.instance, 6, 4);
  for (std::uint64_t s = 0; s < 10; ++s) pool.push_back(concentrating(g.instance, 100 + s));
  for (const auto& a : pool) {
    auto audit = class_coverage_audit(g, a, pre);
    CHECK(audit.verdict == AuditVerdict::Holds);
    CHECK(audit.required_max_heavy == 1);
    CHECK(audit.max_heavy >= 1);
    CHECK(audit.makespan >= static_cast<double>(audit.required_max_heavy));
    for (auto c : audit.heavy_machines_per_class) CHECK(c >= 2);
  }
}

TEST_CASE("tiny instance: audit holds for every assignment") {
  auto g = tiny_gap();
  const auto pre = audit_preconditions(g);
  REQUIRE(pre.applicable);
  const auto n = g.instance.job_count();
  for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
    Assignment a{std::vector<MachineId>(n)};
    for (JobId j = 0; j < n; ++j) a.machine_of[j] = mask >> j & 1U;
    if (!is_valid_assignment(g.instance, a)) continue;
    auto audit = class_coverage_audit(g, a, pre);
    CHECK(audit.verdict == AuditVerdict::Holds);
  }
}

TEST_CASE("broken covering property makes the audit not applicable") {
  GapParams p{4, 1, 2, 0.2, {10}, 0};
  auto g = build_gap_instance(
      p, {set_system_from_lists(10, {{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, {0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9}})});
  auto pre = audit_preconditions(g);
  CHECK_FALSE(pre.applicable);
  REQUIRE(pre.broken.size() == 1);

  Assignment all_on_zero{std::vector<MachineId>(10, 0)};
  auto audit = class_coverage_audit(g, all_on_zero, pre);
  CHECK(audit.verdict == AuditVerdict::NotApplicable);
  CHECK(audit.not_applicable == pre.broken);
  CHECK(std::string(to_string(audit.verdict)) == "not-applicable");

  // pretending the precondition held exposes the counting contradiction
  auto forced = class_coverage_audit(g, all_on_zero, AuditPreconditions{});
  CHECK(forced.verdict == AuditVerdict::Fails);
  REQUIRE(forced.shortfalls.size() == 1);
  const auto& sf = forced.shortfalls[0];
  CHECK(sf.heavy_machines == 1);
  CHECK(sf.heavy_union == 10);
  CHECK(sf.union_threshold == 8);
  CHECK(sf.jobs_on_light == 0);
  CHECK(sf.light_capacity == 0);
}

TEST_CASE("an unassigned job is an invalid assignment, not an audit failure") {
  auto g = tiny_gap();
  Assignment a{{0, 0, 1, kUnassigned}};
  CHECK_THROWS_AS(class_coverage_audit(g, a), std::invalid_argument);
  CHECK_THROWS_AS(heavy_profile(g, a), std::invalid_argument);
}

TEST_CASE("desk parameters are reproducible") {
  auto p = desk_params(8, 2, 2, 0.05, 16, 1);
  CHECK(p == desk().params);
  CHECK(build_gap_instance(p).instance == desk().instance);
}
