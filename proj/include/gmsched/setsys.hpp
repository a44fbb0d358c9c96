#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gmsched/common.hpp"

namespace gmsched {

/// Fixed-length packed bit vector. Bits past size() in the last word are kept
/// zero so that counts and comparisons are word-parallel.
class BitSet {
 public:
  BitSet() = default;
  explicit BitSet(std::size_t size) : size_(size), words_((size + 63) / 64, 0) {}

  std::size_t size() const { return size_; }
  bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1U; }
  void set(std::size_t i) { words_[i >> 6] |= std::uint64_t{1} << (i & 63); }
  void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63)); }
  std::size_t count() const;

  /// this |= other, or this |= ~other when `complement` is set.
  void unite(const BitSet& other, bool complement);

  void clear();
  std::vector<std::size_t> elements() const;
  std::span<const std::uint64_t> words() const { return words_; }

  friend bool operator==(const BitSet&, const BitSet&) = default;

 private:
  std::uint64_t tail_mask() const;

  std::size_t size_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Universe [0, n) with m subsets A_0..A_{m-1}.
struct SetSystem {
  std::size_t universe = 0;
  std::vector<BitSet> sets;
  std::uint64_t seed = 0;  // 0 when not produced by build_random

  std::size_t set_count() const { return sets.size(); }
  friend bool operator==(const SetSystem&, const SetSystem&) = default;
};

/// Each element joins a uniformly random m/2-subset of the m sets.
SetSystem build_random(std::size_t n, std::size_t m, std::uint64_t seed);

SetSystem set_system_from_lists(std::size_t n, const std::vector<std::vector<std::size_t>>& lists);

/// Largest union size allowed for (n, beta): n - ceil(beta * n).
std::size_t union_threshold(std::size_t n, double beta);

struct Witness {
  std::vector<std::size_t> indices;
  std::vector<bool> complemented;  // B_i = complement of A_i when set
  std::size_t union_size = 0;
};

struct ExhaustiveReport {
  bool passed = true;
  std::size_t max_indices = 0;  // effective l = min(l, m)
  double beta = 0.0;
  std::size_t threshold = 0;
  std::uint64_t unions_checked = 0;
  std::uint64_t estimated_unions = 0;
  std::size_t largest_union = 0;
  std::optional<Witness> witness;
};

/// Number of unions an exhaustive check at (l) enumerates: sum_{t<=l} C(m,t) 2^t.
std::uint64_t exhaustive_cost(std::size_t m, std::size_t l);

/// Checks every index set of size <= l and every complement pattern. On
/// failure the witness has minimum |I| and is lexicographically first.
ExhaustiveReport verify_exhaustive(const SetSystem& ss, std::size_t l, double beta);

struct MonteCarloReport {
  std::size_t trials = 0;
  std::size_t violations = 0;
  double violation_rate = 0.0;
  double worst_fraction = 0.0;
  std::size_t threshold = 0;
  std::optional<Witness> witness;  // first violating sample

  bool any_violation() const { return violations > 0; }
};

/// Samples (I, signs) uniformly with |I| = min(l, m).
MonteCarloReport verify_monte_carlo(const SetSystem& ss, std::size_t l, double beta, std::size_t trials,
                                    std::uint64_t seed);

}  // namespace gmsched
