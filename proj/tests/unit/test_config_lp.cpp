#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "gmsched/config_lp.hpp"
#include "support.hpp"

using namespace gmsched;

namespace {

SchedulingInstance sum_instance(std::size_t machines, const std::vector<double>& sizes) {
  std::vector<ProcTriplet> t;
  for (JobId j = 0; j < sizes.size(); ++j)
    for (MachineId i = 0; i < machines; ++i) t.push_back({i, j, sizes[j]});
  return SchedulingInstance::from_triplets(machines, sizes.size(), t, MixtureNorm::sum_norm(sizes.size()));
}

std::vector<Configuration> full_pool(const SchedulingInstance& inst, double T) {
  std::vector<Configuration> pool;
  for (MachineId i = 0; i < inst.machine_count(); ++i) {
    auto c = enumerate_valid_configs(inst, i, T, 1U << 20);
    pool.insert(pool.end(), c.begin(), c.end());
  }
  return pool;
}

}  // namespace

TEST_CASE("threshold below every job leaves the empty configuration") {
  auto inst = sum_instance(1, {2, 3});
  auto c = enumerate_valid_configs(inst, 0, 1.0, 1024);
  REQUIRE(c.size() == 1);
  CHECK(c[0].jobs.empty());
}

TEST_CASE("unit pair exceeds T = 1.5") {
  auto inst = sum_instance(1, {1, 1});
  auto c = enumerate_valid_configs(inst, 0, 1.5, 1024);
  std::set<std::vector<JobId>> got;
  for (auto& x : c) got.insert(x.jobs);
  CHECK(got == std::set<std::vector<JobId>>{{}, {0}, {1}});
}

TEST_CASE("enumeration equals the filtered power set and is downward closed") {
  Rng rng(3);
  for (int t = 0; t < 30; ++t) {
    auto inst = testing::random_restricted(rng, 3, 8);
    const double T = rng.uniform(1.0, 8.0);
    for (MachineId i = 0; i < 3; ++i) {
      const auto finite = inst.finite_jobs(i);
      std::set<std::vector<JobId>> oracle;
      for (std::uint32_t mask = 0; mask < (1U << finite.size()); ++mask) {
        std::vector<JobId> jobs;
        std::vector<double> sizes;
        for (std::size_t k = 0; k < finite.size(); ++k) {
          if (mask >> k & 1U) {
            jobs.push_back(finite[k]);
            sizes.push_back(*inst.size(i, finite[k]));
          }
        }
        if (testing::oracle_norm(inst.norm(i), sizes) <= T * (1 + kValidSlack)) oracle.insert(jobs);
      }
      std::set<std::vector<JobId>> got;
      for (auto& c : enumerate_valid_configs(inst, i, T, 1U << 20)) {
        CHECK(c.machine == i);
        got.insert(c.jobs);
      }
      CHECK(got == oracle);
      for (const auto& jobs : got) {
        for (std::size_t drop = 0; drop < jobs.size(); ++drop) {
          auto sub = jobs;
          sub.erase(sub.begin() + static_cast<std::ptrdiff_t>(drop));
          CHECK(got.count(sub) == 1);
        }
      }
    }
  }
}

TEST_CASE("enumeration cap names the machine") {
  auto inst = sum_instance(2, std::vector<double>(12, 1.0));
  try {
    enumerate_valid_configs(inst, 1, 100.0, 1000);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(std::string(e.what()).find("machine 1") != std::string::npos);
  }
}

TEST_CASE("integral assignment encodes to a feasible solution at its makespan") {
  Rng rng(5);
  for (int t = 0; t < 30; ++t) {
    auto inst = testing::random_restricted(rng, 3, 7);
    Rng arng(t);
    auto a = random_assignment(inst, arng);
    const double T = makespan(inst, a);
    auto sol = integral_solution(inst, a, T);
    auto rep = check_fractional_feasibility(inst, sol, 1e-9);
    CHECK(rep.feasible);
    CHECK(rep.worst_coverage_error == 0.0);
    CHECK(rep.max_machine_sum <= 1.0);
    // a strictly lower threshold breaks validity on the busiest machine
    sol.threshold = T * 0.9;
    CHECK_FALSE(check_fractional_feasibility(inst, sol, 1e-9).feasible);
  }
}

TEST_CASE("checker reports each constraint family") {
  auto inst = sum_instance(2, {1, 1});
  FractionalSolution sol{2.0, {{{0, {0}}, 1.0}, {{1, {1}}, 1.0}}};
  REQUIRE(check_fractional_feasibility(inst, sol, 1e-9).feasible);

  auto over = sol;
  over.entries[0].weight = 1.1;
  auto rep = check_fractional_feasibility(inst, over, 1e-9);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.overfull_machines == std::vector<MachineId>{0});
  CHECK(rep.coverage_violations == std::vector<JobId>{0});

  auto heavy = sol;
  heavy.entries[0].config.jobs = {0, 1};
  heavy.threshold = 1.5;
  rep = check_fractional_feasibility(inst, heavy, 1e-9);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.invalid_entries == std::vector<std::size_t>{0});
  CHECK(rep.worst_validity_excess > 0.0);

  auto restricted = SchedulingInstance::from_triplets(2, 1, {{0, 0, 1.0}}, MixtureNorm({{1, 1.0}}));
  FractionalSolution forbidden{1.0, {{{1, {0}}, 1.0}}};
  CHECK_FALSE(check_fractional_feasibility(restricted, forbidden, 1e-9).feasible);

  auto negative = sol;
  negative.entries.push_back({{0, {}}, -0.5});
  rep = check_fractional_feasibility(inst, negative, 1e-9);
  CHECK_FALSE(rep.feasible);
  CHECK(rep.min_weight == -0.5);
}

TEST_CASE("solve_feasibility output passes the checker") {
  Rng rng(7);
  for (int t = 0; t < 25; ++t) {
    auto inst = testing::random_restricted(rng, 3, 6);
    const auto opt = brute_force_opt(inst, 10'000'000);
    auto res = solve_feasibility(inst, opt.makespan, full_pool(inst, opt.makespan));
    REQUIRE(res.status == LpStatus::Feasible);
    auto rep = check_fractional_feasibility(inst, *res.solution, 1e-7);
    CHECK(rep.feasible);
  }
}

TEST_CASE("single machine optimum is the full job set") {
  auto inst = SchedulingInstance::from_triplets(1, 4, {{0, 0, 1.0}, {0, 1, 2.0}, {0, 2, 3.0}, {0, 3, 4.0}},
                                                MixtureNorm({{2, 0.5}, {4, 0.25}}));
  const auto opt = lp_opt_T(inst, 1e-3);
  const std::vector<JobId> all = {0, 1, 2, 3};
  CHECK(opt.threshold == inst.config_load(0, all));
}

TEST_CASE("LP threshold is a lower bound on the integral optimum") {
  Rng rng(13);
  for (int t = 0; t < 25; ++t) {
    auto inst = testing::random_restricted(rng, 3, 6);
    const auto opt = brute_force_opt(inst, 10'000'000);
    const auto lp = lp_opt_T(inst, 1e-3);
    CHECK(lp.threshold <= opt.makespan * (1 + 1e-3));
    CHECK(lp.threshold >= lp.lower_bound * (1 - 1e-12));
    CHECK(lp.threshold <= lp.upper_bound * (1 + 1e-12));
    CHECK(check_fractional_feasibility(inst, lp.solution, 1e-7).feasible);
  }
}

TEST_CASE("two identical machines, three unit jobs: LP value 2") {
  auto inst = sum_instance(2, {1, 1, 1});
  const auto lp = lp_opt_T(inst, 1e-4);
  // below T = 2 only singletons are valid and two machines cover at most 2 of the 3 jobs
  CHECK(lp.threshold == doctest::Approx(2.0));
  CHECK(brute_force_opt(inst, 1000).makespan == 2.0);
  // at T = 1 only singletons are valid: 3 jobs, 2 machines -> infeasible
  auto res = solve_feasibility(inst, 1.0, full_pool(inst, 1.0));
  CHECK(res.status == LpStatus::Infeasible);
}
