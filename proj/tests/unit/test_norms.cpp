#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gmsched/norms.hpp"
#include "support.hpp"

using namespace gmsched;
using testing::oracle_norm;
using testing::oracle_top_k;

TEST_CASE("top_k with k = dimension is the plain sum") {
  Rng rng(11);
  auto v = testing::random_vector(rng, 100, true);
  double sum = 0.0;
  for (double x : v) sum += x;
  CHECK(top_k(v, 100) == sum);
  CHECK(top_k(v, 500) == sum);
}

TEST_CASE("saturated single term") {
  MixtureNorm n({{4, 0.25}});
  std::vector<double> v(6, 1.0);
  CHECK(n(v) == 1.0);
}

TEST_CASE("zero vector maps to zero") {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    auto n = testing::random_mixture(rng, 12);
    std::vector<double> z(12, 0.0);
    CHECK(n(z) == 0.0);
  }
  CHECK(MixtureNorm({{3, 1.0}})(std::vector<double>{}) == 0.0);
}

TEST_CASE("two-term mixture against per-term sort-and-sum") {
  MixtureNorm n({{2, 0.5}, {8, 1.0 / 80.0}});
  std::vector<double> v = {1, 10, 1, 1, 10, 1, 1, 1, 1, 1};
  // top_2 = 20, top_8 = 20 + 6
  CHECK(n(v) == doctest::Approx(20 * 0.5 + 26.0 / 80.0).epsilon(1e-15));
  CHECK(n(v) == doctest::Approx(oracle_norm(n, v)).epsilon(1e-15));
}

TEST_CASE("random mixtures agree with the oracle") {
  Rng rng(5);
  for (int t = 0; t < 200; ++t) {
    const auto dim = 1 + rng.below(30);
    auto n = testing::random_mixture(rng, dim);
    auto v = testing::random_vector(rng, dim);
    CHECK(n(v) == doctest::Approx(oracle_norm(n, v)).epsilon(1e-12));
  }
}

TEST_CASE("histogram evaluation matches the vector form") {
  Rng rng(8);
  for (int t = 0; t < 100; ++t) {
    auto n = testing::random_mixture(rng, 20);
    std::vector<std::pair<double, std::size_t>> hist;
    std::vector<double> flat;
    double value = 50.0;
    const auto groups = 1 + rng.below(5);
    for (std::size_t g = 0; g < groups; ++g) {
      value -= 1.0 + static_cast<double>(rng.below(5));
      const auto mult = 1 + rng.below(6);
      hist.emplace_back(value, mult);
      flat.insert(flat.end(), mult, value);
    }
    CHECK(n.evaluate_histogram(hist) == doctest::Approx(n(flat)).epsilon(1e-13));
  }
}

TEST_CASE("top_k monotone in k and entries, permutation invariant") {
  Rng rng(21);
  for (int t = 0; t < 300; ++t) {
    const auto dim = 1 + rng.below(25);
    auto v = testing::random_vector(rng, dim, true);
    for (std::size_t k = 1; k < dim + 2; ++k) CHECK(top_k(v, k) <= top_k(v, k + 1));
    const auto k = 1 + rng.below(dim);
    auto w = v;
    w[rng.below(dim)] += 1.0 + static_cast<double>(rng.below(4));
    CHECK(top_k(v, k) <= top_k(w, k));
    auto p = v;
    rng.shuffle(p);
    CHECK(top_k(p, k) == top_k(v, k));
    CHECK(top_k(v, k) == oracle_top_k(v, k));
  }
}

TEST_CASE("homogeneity and triangle inequality on samples") {
  Rng rng(99);
  for (int t = 0; t < 500; ++t) {
    const auto dim = 1 + rng.below(40);
    auto n = testing::random_mixture(rng, dim);
    auto u = testing::random_vector(rng, dim);
    auto v = testing::random_vector(rng, dim);
    const double a = rng.uniform(0.0, 5.0);
    std::vector<double> au(dim), uv(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      au[i] = a * u[i];
      uv[i] = u[i] + v[i];
    }
    CHECK(std::abs(n(au) - a * n(u)) <= 1e-12 * std::max(1.0, a * n(u)));
    CHECK(n(uv) <= n(u) + n(v) + 1e-9);
  }
}

TEST_CASE("axiom checker passes genuine norms") {
  Rng rng(4);
  for (int t = 0; t < 5; ++t) {
    auto n = testing::random_mixture(rng, 20);
    auto rep = check_norm_axioms(n, 20, 2000, 100 + t, 1e-9);
    CHECK(rep.passed());
    CHECK(rep.checks.size() == 5);
  }
}

TEST_CASE("axiom checker flags a negative scale") {
  auto bad = MixtureNorm::unchecked({{1, 1.0}, {4, -0.7}});
  auto rep = check_norm_axioms(bad, 6, 2000, 1, 1e-9);
  CHECK_FALSE(rep.passed());
  CHECK((!rep.check("triangle").passed || !rep.check("monotonicity").passed));
}

TEST_CASE("dimension one homogeneity") {
  // one unit term: psi(a x) and a psi(x) are the same single product
  auto rep = check_norm_axioms(MixtureNorm({{1, 1.0}}), 1, 1000, 7, 1e-9);
  CHECK(rep.check("homogeneity").worst == 0.0);
  CHECK(rep.passed());
  // with several terms only rounding in the final sum remains
  auto mixed = check_norm_axioms(MixtureNorm({{1, 0.5}, {3, 2.0}}), 1, 1000, 7, 1e-9);
  CHECK(mixed.check("homogeneity").worst <= 1e-14);
}

TEST_CASE("invalid terms and inputs are rejected") {
  CHECK_THROWS_AS(MixtureNorm(std::vector<ScaledTopKTerm>{}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureNorm({{0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureNorm({{1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(MixtureNorm({{1, -1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(top_k(std::vector<double>{1.0}, 0), std::invalid_argument);
  CHECK_THROWS_AS(top_k(std::vector<double>{-1.0}, 1), std::invalid_argument);
  CHECK_THROWS_AS(top_k(std::vector<double>{NAN}, 1), std::invalid_argument);
  CHECK_THROWS_AS(check_norm_axioms(MixtureNorm({{1, 1.0}}), 3, 0, 1, 1e-9), std::invalid_argument);
}

TEST_CASE("size-class k floors the heavy threshold and never drops below one") {
  CHECK(size_class_k(16.0) == 16);
  CHECK(size_class_k(2001.6) == 2001);
  CHECK(size_class_k(0.48) == 1);
  CHECK_THROWS_AS(size_class_k(0.0), std::invalid_argument);
  auto t = size_class_term(32.0, 0.05);
  CHECK(t.k == 32);
  CHECK(t.scale == doctest::Approx(1.0 / (32 * 0.05)).epsilon(1e-15));
}
