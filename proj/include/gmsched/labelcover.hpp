#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gmsched/common.hpp"

namespace gmsched {

struct LcEdge {
  std::uint32_t u = 0;        // left vertex
  std::uint32_t v = 0;        // right vertex
  std::vector<Label> proj;    // pi_e: [L] -> [L]

  friend bool operator==(const LcEdge&, const LcEdge&) = default;
};

/// Bipartite label cover ((U, V, E), L, Pi). Labels are 0-based.
struct LabelCoverInstance {
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t labels = 0;
  std::vector<LcEdge> edges;

  /// Throws std::invalid_argument on out-of-range vertices or projections.
  void validate() const;

  /// Edge ids incident to each left / right vertex.
  std::vector<std::vector<std::size_t>> left_adjacency() const;
  std::vector<std::vector<std::size_t>> right_adjacency() const;

  /// The common degree if every vertex on both sides has it.
  std::optional<std::size_t> regular_degree() const;

  friend bool operator==(const LabelCoverInstance&, const LabelCoverInstance&) = default;
};

/// sigma over U then V: labels[u] for u in U, labels[left + v] for v in V.
struct Labeling {
  std::vector<Label> labels;

  Label of_left(std::size_t u) const { return labels[u]; }
  Label of_right(std::size_t left, std::size_t v) const { return labels[left + v]; }

  friend bool operator==(const Labeling&, const Labeling&) = default;
};

bool edge_satisfied(const LabelCoverInstance& lc, const Labeling& sigma, std::size_t e);
std::size_t satisfied_count(const LabelCoverInstance& lc, const Labeling& sigma);

/// Fraction of satisfied edges; 1 for an edgeless instance. Throws
/// std::invalid_argument for a wrong length or out-of-range label.
double eval_labeling(const LabelCoverInstance& lc, const Labeling& sigma);

struct LabelCoverOpt {
  double value = 0.0;
  std::size_t satisfied = 0;
  Labeling witness;
  std::uint64_t nodes = 0;
};

/// Exact optimum by branch and bound over left labels, per connected
/// component. Right labels are chosen optimally for each partial left
/// labeling. Throws BudgetExceeded after `node_budget` nodes.
LabelCoverOpt brute_opt(const LabelCoverInstance& lc, std::uint64_t node_budget = 50'000'000);

struct PlantedLabelCover {
  LabelCoverInstance instance;
  Labeling planted;
};

/// d-regular bipartite graph on N + N vertices as a union of d random perfect
/// matchings (a matching that would repeat an edge is redrawn). Planted labels
/// are uniform and each pi_e is uniform among maps with pi_e(sigma(u)) = sigma(v).
PlantedLabelCover planted_random(std::size_t n, std::size_t d, std::size_t labels, std::uint64_t seed);

/// Same graph model with uniformly random projections (no planted solution).
LabelCoverInstance random_label_cover(std::size_t n, std::size_t d, std::size_t labels, std::uint64_t seed);

/// k-th power: vertices, edges and labels are k-tuples (mixed radix, first
/// coordinate most significant); projections act componentwise. Throws
/// BudgetExceeded if |E|^k * L^k exceeds `budget`.
LabelCoverInstance power(const LabelCoverInstance& lc, std::size_t k, std::uint64_t budget = 50'000'000);

/// Componentwise labeling of the k-th power induced by sigma.
Labeling power_labeling(const LabelCoverInstance& lc, const Labeling& sigma, std::size_t k);

}  // namespace gmsched
