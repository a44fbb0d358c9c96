#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace gmsched {

/// scale * top_k(v): one size-class component of a machine norm.
struct ScaledTopKTerm {
  std::size_t k = 1;
  double scale = 1.0;

  friend bool operator==(const ScaledTopKTerm&, const ScaledTopKTerm&) = default;
};

/// Number of largest entries summed by the term of a size class whose heavy
/// threshold is `heavy_threshold` (beta^2 * n_s). Integer part, but never
/// below one: for thresholds in (0, 1) the fractional top-kappa norm scaled by
/// 1/kappa coincides with the plain maximum, i.e. k = 1.
std::size_t size_class_k(double heavy_threshold);

/// Term top_k(v) / (k * job_size) with k = size_class_k(heavy_threshold).
ScaledTopKTerm size_class_term(double heavy_threshold, double job_size);

/// Sum of the min(k, |v|) largest entries. Entries must be finite and >= 0.
double top_k(std::span<const double> v, std::size_t k);

/// Symmetric monotone norm given as a nonnegative combination of top-k norms.
class MixtureNorm {
 public:
  MixtureNorm() = default;
  explicit MixtureNorm(std::vector<ScaledTopKTerm> terms);

  /// Skips validation. Only meant for tests that need a deliberately broken
  /// "norm" (e.g. a negative scale) to exercise the axiom checker.
  static MixtureNorm unchecked(std::vector<ScaledTopKTerm> terms);

  static MixtureNorm sum_norm(std::size_t dimension) { return MixtureNorm({{dimension, 1.0}}); }

  double operator()(std::span<const double> v) const;

  /// Evaluate on values already sorted in nonincreasing order.
  double evaluate_descending(std::span<const double> sorted) const;

  /// Evaluate on a multiset given as (value, multiplicity) pairs with values
  /// strictly decreasing. Used by incremental load tracking.
  double evaluate_histogram(std::span<const std::pair<double, std::size_t>> histogram) const;

  const std::vector<ScaledTopKTerm>& terms() const { return terms_; }
  std::size_t max_k() const { return max_k_; }

  friend bool operator==(const MixtureNorm& a, const MixtureNorm& b) { return a.terms_ == b.terms_; }

 private:
  std::vector<ScaledTopKTerm> terms_;
  std::size_t max_k_ = 0;
};

struct AxiomCheck {
  std::string name;
  bool passed = true;
  double worst = 0.0;  // relative for homogeneity/symmetry, absolute otherwise
  std::size_t failures = 0;
};

struct AxiomReport {
  std::size_t dimension = 0;
  std::size_t trials = 0;
  double tol = 0.0;
  std::vector<AxiomCheck> checks;  // zero, homogeneity, triangle, symmetry, monotonicity

  bool passed() const;
  const AxiomCheck& check(const std::string& name) const;
};

/// Randomised check of the norm axioms on `trials` sampled (u, v, a) triples.
AxiomReport check_norm_axioms(const MixtureNorm& norm, std::size_t dimension, std::size_t trials,
                              std::uint64_t seed, double tol);

}  // namespace gmsched
