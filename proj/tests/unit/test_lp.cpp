#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmsched/common.hpp"
#include "gmsched/lp.hpp"

using namespace gmsched;

TEST_CASE("bounded equality row") {
  LinearSystem s{1, {{{{0, 1.0}}, RowSense::LessEqual, 1.0}, {{{0, 1.0}}, RowSense::Equal, 0.5}}};
  auto r = lp_feasible(s);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.point[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_row_violation(s, r.point) <= 1e-7);
}

TEST_CASE("x <= -1 with x >= 0 is infeasible") {
  LinearSystem s{1, {{{{0, 1.0}}, RowSense::LessEqual, -1.0}}};
  auto r = lp_feasible(s);
  CHECK(r.status == LpStatus::Infeasible);
  CHECK(r.residual == doctest::Approx(1.0));
}

TEST_CASE("greater-equal rows and a small residual band") {
  // x + y >= 2, x <= 1, y <= 1 -> only (1, 1)
  LinearSystem s{2,
                 {{{{0, 1.0}, {1, 1.0}}, RowSense::GreaterEqual, 2.0},
                  {{{0, 1.0}}, RowSense::LessEqual, 1.0},
                  {{{1, 1.0}}, RowSense::LessEqual, 1.0}}};
  auto r = lp_feasible(s);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.point[0] + r.point[1] == doctest::Approx(2.0));

  // push the sum just past what the bounds allow: residual 1e-6 lands in the marginal band
  s.rows[0].rhs = 2.0 + 1e-6;
  CHECK(lp_feasible(s).status == LpStatus::Marginal);
  s.rows[0].rhs = 2.1;
  CHECK(lp_feasible(s).status == LpStatus::Infeasible);
}

TEST_CASE("negative right-hand sides") {
  // -x <= -0.25  ->  x >= 0.25; x <= 0.5
  LinearSystem s{1, {{{{0, -1.0}}, RowSense::LessEqual, -0.25}, {{{0, 1.0}}, RowSense::LessEqual, 0.5}}};
  auto r = lp_feasible(s);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(r.point[0] >= 0.25 - 1e-9);
  CHECK(r.point[0] <= 0.5 + 1e-9);
}

TEST_CASE("transportation system") {
  // two suppliers (<= 1) and three demands (= 2/3 each) with a full bipartite support
  LinearSystem s{6, {}};
  for (std::size_t i = 0; i < 2; ++i) {
    LinearRow row{{}, RowSense::LessEqual, 1.0};
    for (std::size_t j = 0; j < 3; ++j) row.coeffs.push_back({i * 3 + j, 1.0});
    s.rows.push_back(row);
  }
  for (std::size_t j = 0; j < 3; ++j) {
    s.rows.push_back({{{j, 1.0}, {3 + j, 1.0}}, RowSense::Equal, 2.0 / 3.0});
  }
  auto r = lp_feasible(s);
  REQUIRE(r.status == LpStatus::Feasible);
  CHECK(max_row_violation(s, r.point) <= 1e-7);
  s.rows[2].rhs = 1.5;
  s.rows[3].rhs = 1.5;
  CHECK(lp_feasible(s).status == LpStatus::Infeasible);
}

TEST_CASE("deterministic and rejects bad input") {
  LinearSystem s{3,
                 {{{{0, 1.0}, {1, 2.0}, {2, 3.0}}, RowSense::Equal, 4.0},
                  {{{0, 1.0}, {2, 1.0}}, RowSense::LessEqual, 1.0}}};
  auto a = lp_feasible(s);
  auto b = lp_feasible(s);
  CHECK(a.point == b.point);
  CHECK(a.pivots == b.pivots);
  LinearSystem bad{1, {{{{3, 1.0}}, RowSense::Equal, 1.0}}};
  CHECK_THROWS_AS(lp_feasible(bad), std::invalid_argument);
  LinearSystem tiny{2, {{{{0, 1.0}, {1, 1.0}}, RowSense::Equal, 1.0}}};
  CHECK_THROWS_AS(lp_feasible(tiny, LpOptions{1e-7, 1e-5, 0}), SolverFailure);
}
