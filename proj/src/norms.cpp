#include "gmsched/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "gmsched/common.hpp"

namespace gmsched {

namespace {

void require_entries(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i]) || v[i] < 0.0) {
      throw std::invalid_argument("norm input entry " + std::to_string(i) +
                                  " is negative or not finite");
    }
  }
}

// Nonzero entries of v, the largest `keep` of them sorted nonincreasing.
std::vector<double> leading_entries(std::span<const double> v, std::size_t keep) {
  std::vector<double> out;
  out.reserve(v.size());
  for (double x : v) {
    if (x > 0.0) out.push_back(x);
  }
  if (out.size() > keep) {
    std::nth_element(out.begin(), out.begin() + static_cast<std::ptrdiff_t>(keep), out.end(),
                     std::greater<>());
    out.resize(keep);
  }
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

std::size_t size_class_k(double heavy_threshold) {
  if (!std::isfinite(heavy_threshold) || heavy_threshold <= 0.0) {
    throw std::invalid_argument("heavy threshold must be positive and finite");
  }
  // 1e-12 relative guard: beta^2 * n_s is usually an integer computed with rounding error.
  const double k = std::floor(heavy_threshold * (1.0 + 1e-12));
  return std::max<std::size_t>(1, static_cast<std::size_t>(k));
}

ScaledTopKTerm size_class_term(double heavy_threshold, double job_size) {
  if (!std::isfinite(job_size) || job_size <= 0.0) {
    throw std::invalid_argument("job size must be positive and finite");
  }
  const std::size_t k = size_class_k(heavy_threshold);
  return {k, 1.0 / (static_cast<double>(k) * job_size)};
}

double top_k(std::span<const double> v, std::size_t k) {
  if (k == 0) throw std::invalid_argument("top_k requires k >= 1");
  require_entries(v);
  const auto lead = leading_entries(v, k);
  double sum = 0.0;
  for (double x : lead) sum += x;
  return sum;
}

MixtureNorm::MixtureNorm(std::vector<ScaledTopKTerm> terms) : terms_(std::move(terms)) {
  if (terms_.empty()) throw std::invalid_argument("mixture norm needs at least one term");
  for (const auto& t : terms_) {
    if (t.k == 0) throw std::invalid_argument("top-k term with k = 0");
    if (!std::isfinite(t.scale) || t.scale <= 0.0) {
      throw std::invalid_argument("top-k term scale must be positive and finite");
    }
    max_k_ = std::max(max_k_, t.k);
  }
}

MixtureNorm MixtureNorm::unchecked(std::vector<ScaledTopKTerm> terms) {
  MixtureNorm norm;
  norm.terms_ = std::move(terms);
  for (const auto& t : norm.terms_) norm.max_k_ = std::max(norm.max_k_, t.k);
  return norm;
}

double MixtureNorm::operator()(std::span<const double> v) const {
  require_entries(v);
  const auto lead = leading_entries(v, max_k_);
  return evaluate_descending(lead);
}

double MixtureNorm::evaluate_descending(std::span<const double> sorted) const {
  const std::size_t len = std::min(sorted.size(), max_k_);
  std::vector<double> prefix(len + 1, 0.0);
  for (std::size_t i = 0; i < len; ++i) prefix[i + 1] = prefix[i] + sorted[i];
  double value = 0.0;
  for (const auto& t : terms_) value += t.scale * prefix[std::min(t.k, len)];
  return value;
}

double MixtureNorm::evaluate_histogram(
    std::span<const std::pair<double, std::size_t>> histogram) const {
  double value = 0.0;
  for (const auto& t : terms_) {
    std::size_t remaining = t.k;
    double sum = 0.0;
    for (const auto& [x, count] : histogram) {
      if (remaining == 0) break;
      const std::size_t take = std::min(remaining, count);
      sum += x * static_cast<double>(take);
      remaining -= take;
    }
    value += t.scale * sum;
  }
  return value;
}

bool AxiomReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck& AxiomReport::check(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no axiom check named " + name);
}

AxiomReport check_norm_axioms(const MixtureNorm& norm, std::size_t dimension, std::size_t trials,
                              std::uint64_t seed, double tol) {
  if (trials == 0) throw std::invalid_argument("axiom check needs trials >= 1");
  Rng rng(seed);
  AxiomCheck zero{"zero"}, homogeneity{"homogeneity"}, triangle{"triangle"},
      symmetry{"symmetry"}, monotonicity{"monotonicity"};

  auto sample = [&](std::vector<double>& out, double zero_probability) {
    out.resize(dimension);
    for (auto& x : out) x = rng.coin(zero_probability) ? 0.0 : rng.uniform(0.0, 10.0);
  };
  auto record = [tol](AxiomCheck& c, double violation) {
    if (violation > tol) ++c.failures;
    if (violation > c.worst) c.worst = violation;
  };
  auto relative = [](double got, double want) {
    const double denom = std::max(std::abs(want), 1e-300);
    return got == want ? 0.0 : std::abs(got - want) / denom;
  };

  const std::vector<double> origin(dimension, 0.0);
  record(zero, std::abs(norm(origin)));

  std::vector<double> u, v, sum, scaled, permuted, bigger;
  for (std::size_t t = 0; t < trials; ++t) {
    sample(u, 0.3);
    sample(v, 0.3);
    const double a = rng.coin(0.05) ? 0.0 : rng.uniform(0.0, 5.0);

    const double nu = norm(u);
    const double nv = norm(v);

    const bool nonzero = std::any_of(u.begin(), u.end(), [](double x) { return x > 0.0; });
    if (nonzero && !(nu > 0.0)) record(zero, 1.0);

    scaled.resize(dimension);
    for (std::size_t i = 0; i < dimension; ++i) scaled[i] = a * u[i];
    const double h_err = a == 0.0 ? std::abs(norm(scaled)) : relative(norm(scaled), a * nu);
    record(homogeneity, h_err);

    sum.resize(dimension);
    for (std::size_t i = 0; i < dimension; ++i) sum[i] = u[i] + v[i];
    record(triangle, std::max(0.0, norm(sum) - nu - nv));

    permuted = u;
    rng.shuffle(permuted);
    record(symmetry, relative(norm(permuted), nu));

    bigger = u;
    for (auto& x : bigger) {
      if (rng.coin(0.5)) x += rng.uniform(0.0, 3.0);
    }
    record(monotonicity, std::max(0.0, nu - norm(bigger)));
  }

  AxiomReport report;
  report.dimension = dimension;
  report.trials = trials;
  report.tol = tol;
  for (auto* c : {&zero, &homogeneity, &triangle, &symmetry, &monotonicity}) {
    c->passed = c->failures == 0;
    report.checks.push_back(*c);
  }
  return report;
}

}  // namespace gmsched
