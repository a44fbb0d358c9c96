#include "gmsched/setsys.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gmsched {

std::uint64_t BitSet::tail_mask() const {
  const std::size_t r = size_ & 63;
  return r == 0 ? ~std::uint64_t{0} : (std::uint64_t{1} << r) - 1;
}

std::size_t BitSet::count() const {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

void BitSet::unite(const BitSet& other, bool complement) {
  if (other.size_ != size_) throw std::invalid_argument("bitset size mismatch");
  if (complement) {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= ~other.words_[w];
    if (!words_.empty()) words_.back() &= tail_mask();
  } else {
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  }
}

void BitSet::clear() { std::fill(words_.begin(), words_.end(), 0); }

std::vector<std::size_t> BitSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

SetSystem build_random(std::size_t n, std::size_t m, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("set system needs n >= 1");
  if (m < 2 || m % 2 != 0) throw std::invalid_argument("random set system needs an even m >= 2");
  SetSystem ss{n, std::vector<BitSet>(m, BitSet(n)), seed};
  Rng rng(seed);
  std::vector<std::size_t> idx(m);
  for (std::size_t e = 0; e < n; ++e) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    // Partial Fisher-Yates: the first m/2 slots form a uniform m/2-subset.
    for (std::size_t t = 0; t < m / 2; ++t) {
      std::swap(idx[t], idx[t + rng.below(m - t)]);
      ss.sets[idx[t]].set(e);
    }
  }
  return ss;
}

SetSystem set_system_from_lists(std::size_t n, const std::vector<std::vector<std::size_t>>& lists) {
  SetSystem ss{n, std::vector<BitSet>(lists.size(), BitSet(n)), 0};
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (std::size_t e : lists[i]) {
      if (e >= n) {
        throw std::invalid_argument("set " + std::to_string(i) + " contains element " +
                                    std::to_string(e) + " outside the universe");
      }
      ss.sets[i].set(e);
    }
  }
  return ss;
}

std::size_t union_threshold(std::size_t n, double beta) {
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must lie in [0, 1)");
  // 1e-12 relative guard so beta * n landing a hair above an integer still rounds to it.
  const double excluded = std::ceil(beta * static_cast<double>(n) * (1.0 - 1e-12));
  return n - std::min(n, static_cast<std::size_t>(excluded));
}

std::uint64_t exhaustive_cost(std::size_t m, std::size_t l) {
  std::uint64_t total = 0;
  std::uint64_t binom = 1;  // C(m, t)
  for (std::size_t t = 0; t <= std::min(l, m); ++t) {
    if (t > 0) binom = binom * (m - t + 1) / t;
    total += binom << t;
  }
  return total;
}

namespace {

class Enumerator {
 public:
  Enumerator(const SetSystem& ss, std::size_t threshold, ExhaustiveReport& report)
      : ss_(ss), threshold_(threshold), report_(report) {}

  // Index sets of exactly `size` elements in lexicographic order, each with
  // its sign patterns in lexicographic order (plain set before complement).
  bool run(std::size_t size) {
    indices_.clear();
    signs_.clear();
    partial_.assign(size + 1, BitSet(ss_.universe));
    return extend(0, size);
  }

 private:
  bool extend(std::size_t first, std::size_t remaining) {
    const std::size_t depth = indices_.size();
    if (remaining == 0) {
      ++report_.unions_checked;
      const std::size_t covered = partial_[depth].count();
      report_.largest_union = std::max(report_.largest_union, covered);
      if (covered > threshold_) {
        report_.witness = Witness{indices_, signs_, covered};
        return false;
      }
      return true;
    }
    for (std::size_t i = first; i + remaining <= ss_.set_count(); ++i) {
      for (bool complement : {false, true}) {
        partial_[depth + 1] = partial_[depth];
        partial_[depth + 1].unite(ss_.sets[i], complement);
        indices_.push_back(i);
        signs_.push_back(complement);
        const bool ok = extend(i + 1, remaining - 1);
        indices_.pop_back();
        signs_.pop_back();
        if (!ok) return false;
      }
    }
    return true;
  }

  const SetSystem& ss_;
  std::size_t threshold_;
  ExhaustiveReport& report_;
  std::vector<std::size_t> indices_;
  std::vector<bool> signs_;
  std::vector<BitSet> partial_;
};

}  // namespace

ExhaustiveReport verify_exhaustive(const SetSystem& ss, std::size_t l, double beta) {
  ExhaustiveReport report;
  report.beta = beta;
  report.max_indices = std::min(l, ss.set_count());
  report.threshold = union_threshold(ss.universe, beta);
  report.estimated_unions = exhaustive_cost(ss.set_count(), report.max_indices);
  Enumerator enumerator(ss, report.threshold, report);
  // Sizes in increasing order so the first witness has minimum |I|.
  for (std::size_t size = 1; size <= report.max_indices; ++size) {
    if (!enumerator.run(size)) {
      report.passed = false;
      break;
    }
  }
  return report;
}

MonteCarloReport verify_monte_carlo(const SetSystem& ss, std::size_t l, double beta, std::size_t trials,
                                    std::uint64_t seed) {
  if (trials == 0) throw std::invalid_argument("monte carlo check needs trials >= 1");
  MonteCarloReport report;
  report.trials = trials;
  report.threshold = union_threshold(ss.universe, beta);
  const std::size_t size = std::min(l, ss.set_count());
  if (size == 0) return report;
  Rng rng(seed);
  std::vector<std::size_t> idx(ss.set_count());
  BitSet acc(ss.universe);
  for (std::size_t t = 0; t < trials; ++t) {
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t k = 0; k < size; ++k) std::swap(idx[k], idx[k + rng.below(idx.size() - k)]);
    std::vector<std::size_t> chosen(idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(size));
    std::sort(chosen.begin(), chosen.end());
    std::vector<bool> signs(size);
    acc.clear();
    for (std::size_t k = 0; k < size; ++k) {
      signs[k] = rng.coin(0.5);
      acc.unite(ss.sets[chosen[k]], signs[k]);
    }
    const std::size_t covered = acc.count();
    const double fraction = static_cast<double>(covered) / static_cast<double>(ss.universe);
    report.worst_fraction = std::max(report.worst_fraction, fraction);
    if (covered > report.threshold) {
      ++report.violations;
      if (!report.witness) report.witness = Witness{chosen, signs, covered};
    }
  }
  report.violation_rate = static_cast<double>(report.violations) / static_cast<double>(trials);
  return report;
}

}  // namespace gmsched
