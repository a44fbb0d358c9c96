#include "gmsched/labelcover.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gmsched {

void LabelCoverInstance::validate() const {
  if (labels == 0) throw std::invalid_argument("label cover needs L >= 1");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& edge = edges[e];
    if (edge.u >= left || edge.v >= right) {
      throw std::invalid_argument("edge " + std::to_string(e) + " has an endpoint out of range");
    }
    if (edge.proj.size() != labels) {
      throw std::invalid_argument("edge " + std::to_string(e) + " projection has length " +
                                  std::to_string(edge.proj.size()) + ", expected " + std::to_string(labels));
    }
    for (Label b : edge.proj) {
      if (b >= labels) throw std::invalid_argument("edge " + std::to_string(e) + " projects outside [L]");
    }
  }
}

std::vector<std::vector<std::size_t>> LabelCoverInstance::left_adjacency() const {
  std::vector<std::vector<std::size_t>> adj(left);
  for (std::size_t e = 0; e < edges.size(); ++e) adj[edges[e].u].push_back(e);
  return adj;
}

std::vector<std::vector<std::size_t>> LabelCoverInstance::right_adjacency() const {
  std::vector<std::vector<std::size_t>> adj(right);
  for (std::size_t e = 0; e < edges.size(); ++e) adj[edges[e].v].push_back(e);
  return adj;
}

std::optional<std::size_t> LabelCoverInstance::regular_degree() const {
  std::vector<std::size_t> deg_l(left, 0), deg_r(right, 0);
  for (const auto& e : edges) {
    ++deg_l[e.u];
    ++deg_r[e.v];
  }
  std::optional<std::size_t> d;
  for (const auto* side : {&deg_l, &deg_r}) {
    for (std::size_t x : *side) {
      if (!d) d = x;
      if (*d != x) return std::nullopt;
    }
  }
  return d;
}

namespace {

void check_labeling(const LabelCoverInstance& lc, const Labeling& sigma) {
  if (sigma.labels.size() != lc.left + lc.right) {
    throw std::invalid_argument("labeling has " + std::to_string(sigma.labels.size()) + " labels, expected " +
                                std::to_string(lc.left + lc.right));
  }
  for (std::size_t w = 0; w < sigma.labels.size(); ++w) {
    if (sigma.labels[w] >= lc.labels) {
      throw std::invalid_argument("vertex " + std::to_string(w) + " has label " + std::to_string(sigma.labels[w]) +
                                  " outside [L]");
    }
  }
}

}  // namespace

bool edge_satisfied(const LabelCoverInstance& lc, const Labeling& sigma, std::size_t e) {
  const auto& edge = lc.edges[e];
  return edge.proj[sigma.of_left(edge.u)] == sigma.of_right(lc.left, edge.v);
}

std::size_t satisfied_count(const LabelCoverInstance& lc, const Labeling& sigma) {
  check_labeling(lc, sigma);
  std::size_t count = 0;
  for (std::size_t e = 0; e < lc.edges.size(); ++e) count += edge_satisfied(lc, sigma, e) ? 1 : 0;
  return count;
}

double eval_labeling(const LabelCoverInstance& lc, const Labeling& sigma) {
  const std::size_t sat = satisfied_count(lc, sigma);
  if (lc.edges.empty()) return 1.0;
  return static_cast<double>(sat) / static_cast<double>(lc.edges.size());
}

namespace {

// Branch and bound over the left vertices of one connected component.
// cnt[v][b] counts labelled left neighbours whose projection sends them to b.
class LcSearch {
 public:
  LcSearch(const LabelCoverInstance& lc, const std::vector<std::vector<std::size_t>>& ladj,
           std::uint64_t budget, std::uint64_t& nodes)
      : lc_(lc), ladj_(ladj), budget_(budget), nodes_(nodes), cnt_(lc.right, std::vector<std::size_t>(lc.labels, 0)),
        best_of_v_(lc.right, 0), remaining_(lc.right, 0), current_(lc.left, 0) {}

  // Returns the best satisfied count and writes left labels into `best_left`.
  std::size_t run(const std::vector<std::uint32_t>& us, const std::vector<std::uint32_t>& vs,
                  std::vector<Label>& best_left) {
    us_ = us;
    vs_ = vs;
    for (auto u : us_) {
      for (auto e : ladj_[u]) ++remaining_[lc_.edges[e].v];
    }
    best_ = 0;
    best_left_.assign(lc_.left, 0);
    found_ = false;
    dfs(0, 0);
    for (auto u : us_) best_left[u] = best_left_[u];
    return best_;
  }

 private:
  void dfs(std::size_t depth, std::size_t committed) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("label cover search exceeded " + std::to_string(budget_) + " nodes");
    }
    // committed = sum over v of max_b cnt[v][b]; bound adds every unlabelled edge.
    std::size_t bound = committed;
    for (auto v : vs_) bound += remaining_[v];
    if (found_ && bound <= best_) return;
    if (depth == us_.size()) {
      best_ = committed;
      found_ = true;
      for (auto u : us_) best_left_[u] = current_[u];
      return;
    }
    const auto u = us_[depth];
    for (Label a = 0; a < lc_.labels; ++a) {
      current_[u] = a;
      std::size_t gain = 0;
      std::vector<std::size_t> saved;
      saved.reserve(ladj_[u].size());
      for (auto e : ladj_[u]) {
        const auto& edge = lc_.edges[e];
        saved.push_back(best_of_v_[edge.v]);
        const std::size_t c = ++cnt_[edge.v][edge.proj[a]];
        --remaining_[edge.v];
        if (c > best_of_v_[edge.v]) {
          gain += c - best_of_v_[edge.v];
          best_of_v_[edge.v] = c;
        }
      }
      dfs(depth + 1, committed + gain);
      for (std::size_t t = ladj_[u].size(); t-- > 0;) {
        const auto& edge = lc_.edges[ladj_[u][t]];
        --cnt_[edge.v][edge.proj[a]];
        ++remaining_[edge.v];
        best_of_v_[edge.v] = saved[t];
      }
    }
  }

  const LabelCoverInstance& lc_;
  const std::vector<std::vector<std::size_t>>& ladj_;
  std::uint64_t budget_;
  std::uint64_t& nodes_;
  std::vector<std::vector<std::size_t>> cnt_;
  std::vector<std::size_t> best_of_v_;
  std::vector<std::size_t> remaining_;
  std::vector<Label> current_;
  std::vector<Label> best_left_;
  std::vector<std::uint32_t> us_, vs_;
  std::size_t best_ = 0;
  bool found_ = false;
};

}  // namespace

LabelCoverOpt brute_opt(const LabelCoverInstance& lc, std::uint64_t node_budget) {
  lc.validate();
  const auto ladj = lc.left_adjacency();
  const auto radj = lc.right_adjacency();

  // Components by BFS; left vertices are visited in BFS order so that right
  // neighbours complete early and the bound tightens.
  const std::size_t total = lc.left + lc.right;
  std::vector<int> seen(total, 0);
  LabelCoverOpt out;
  out.witness.labels.assign(total, 0);
  std::vector<Label> left_labels(lc.left, 0);
  LcSearch search(lc, ladj, node_budget, out.nodes);
  for (std::size_t start = 0; start < total; ++start) {
    if (seen[start]) continue;
    std::vector<std::uint32_t> us, vs, queue{static_cast<std::uint32_t>(start)};
    seen[start] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const auto w = queue[head];
      auto visit = [&](std::size_t x) {
        if (!seen[x]) {
          seen[x] = 1;
          queue.push_back(static_cast<std::uint32_t>(x));
        }
      };
      if (w < lc.left) {
        us.push_back(w);
        for (auto e : ladj[w]) visit(lc.left + lc.edges[e].v);
      } else {
        vs.push_back(static_cast<std::uint32_t>(w - lc.left));
        for (auto e : radj[w - lc.left]) visit(lc.edges[e].u);
      }
    }
    if (us.empty() || vs.empty()) continue;  // no edges
    out.satisfied += search.run(us, vs, left_labels);
  }
  for (std::size_t u = 0; u < lc.left; ++u) out.witness.labels[u] = left_labels[u];
  for (std::size_t v = 0; v < lc.right; ++v) {
    std::vector<std::size_t> cnt(lc.labels, 0);
    for (auto e : radj[v]) ++cnt[lc.edges[e].proj[left_labels[lc.edges[e].u]]];
    out.witness.labels[lc.left + v] =
        static_cast<Label>(std::max_element(cnt.begin(), cnt.end()) - cnt.begin());
  }
  out.value = lc.edges.empty() ? 1.0 : static_cast<double>(out.satisfied) / static_cast<double>(lc.edges.size());
  return out;
}

namespace {

std::vector<std::pair<std::uint32_t, std::uint32_t>> regular_graph(std::size_t n, std::size_t d, Rng& rng) {
  if (n == 0) throw std::invalid_argument("label cover needs N >= 1");
  if (d == 0 || d > n) throw std::invalid_argument("degree must lie in [1, N]");
  constexpr std::size_t kRetries = 10000;
  std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
  std::vector<std::uint32_t> perm(n);
  for (std::size_t r = 0; r < d; ++r) {
    std::size_t tries = 0;
    while (true) {
      std::iota(perm.begin(), perm.end(), 0U);
      rng.shuffle(perm);
      bool clash = false;
      for (std::size_t u = 0; u < n && !clash; ++u) clash = used[u][perm[u]] != 0;
      if (!clash) break;
      if (++tries == kRetries) {
        throw ConstructionRejected("could not draw matching " + std::to_string(r + 1) + " without parallel edges");
      }
    }
    for (std::uint32_t u = 0; u < n; ++u) {
      used[u][perm[u]] = 1;
      edges.emplace_back(u, perm[u]);
    }
  }
  return edges;
}

}  // namespace

PlantedLabelCover planted_random(std::size_t n, std::size_t d, std::size_t labels, std::uint64_t seed) {
  if (labels == 0) throw std::invalid_argument("label cover needs L >= 1");
  Rng rng(seed);
  const auto graph = regular_graph(n, d, rng);
  PlantedLabelCover out;
  auto& lc = out.instance;
  lc.left = lc.right = n;
  lc.labels = labels;
  out.planted.labels.resize(2 * n);
  for (auto& x : out.planted.labels) x = static_cast<Label>(rng.below(labels));
  for (auto [u, v] : graph) {
    LcEdge e{u, v, std::vector<Label>(labels)};
    for (auto& b : e.proj) b = static_cast<Label>(rng.below(labels));
    e.proj[out.planted.labels[u]] = out.planted.labels[n + v];
    lc.edges.push_back(std::move(e));
  }
  return out;
}

LabelCoverInstance random_label_cover(std::size_t n, std::size_t d, std::size_t labels, std::uint64_t seed) {
  if (labels == 0) throw std::invalid_argument("label cover needs L >= 1");
  Rng rng(seed);
  const auto graph = regular_graph(n, d, rng);
  LabelCoverInstance lc{n, n, labels, {}};
  for (auto [u, v] : graph) {
    LcEdge e{u, v, std::vector<Label>(labels)};
    for (auto& b : e.proj) b = static_cast<Label>(rng.below(labels));
    lc.edges.push_back(std::move(e));
  }
  return lc;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, std::size_t k, std::uint64_t cap) {
  std::uint64_t r = 1;
  for (std::size_t t = 0; t < k; ++t) {
    if (base != 0 && r > cap / base) return cap + 1;
    r *= base;
  }
  return r;
}

}  // namespace

LabelCoverInstance power(const LabelCoverInstance& lc, std::size_t k, std::uint64_t budget) {
  lc.validate();
  if (k == 0) throw std::invalid_argument("power needs k >= 1");
  const auto edge_count = checked_pow(lc.edges.size(), k, budget);
  const auto label_count = checked_pow(lc.labels, k, budget);
  const auto left = checked_pow(lc.left, k, budget);
  const auto right = checked_pow(lc.right, k, budget);
  if (edge_count > budget || label_count > budget || left > budget || right > budget ||
      (label_count != 0 && edge_count > budget / label_count)) {
    throw BudgetExceeded("power " + std::to_string(k) + " needs |E|^k * L^k entries beyond the budget of " +
                         std::to_string(budget));
  }
  LabelCoverInstance out{left, right, label_count, {}};
  out.edges.reserve(edge_count);
  std::vector<std::size_t> digits(k, 0);  // edge tuple, first coordinate most significant
  std::vector<Label> label_digits(k);
  for (std::uint64_t idx = 0; idx < edge_count; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t t = k; t-- > 0;) {
      digits[t] = rest % lc.edges.size();
      rest /= lc.edges.size();
    }
    LcEdge e;
    std::uint64_t u = 0, v = 0;
    for (std::size_t t = 0; t < k; ++t) {
      u = u * lc.left + lc.edges[digits[t]].u;
      v = v * lc.right + lc.edges[digits[t]].v;
    }
    e.u = static_cast<std::uint32_t>(u);
    e.v = static_cast<std::uint32_t>(v);
    e.proj.resize(label_count);
    for (std::uint64_t a = 0; a < label_count; ++a) {
      std::uint64_t r = a;
      for (std::size_t t = k; t-- > 0;) {
        label_digits[t] = static_cast<Label>(r % lc.labels);
        r /= lc.labels;
      }
      std::uint64_t b = 0;
      for (std::size_t t = 0; t < k; ++t) b = b * lc.labels + lc.edges[digits[t]].proj[label_digits[t]];
      e.proj[a] = static_cast<Label>(b);
    }
    out.edges.push_back(std::move(e));
  }
  return out;
}

Labeling power_labeling(const LabelCoverInstance& lc, const Labeling& sigma, std::size_t k) {
  check_labeling(lc, sigma);
  const std::uint64_t left = checked_pow(lc.left, k, ~0ULL >> 1);
  const std::uint64_t right = checked_pow(lc.right, k, ~0ULL >> 1);
  Labeling out;
  out.labels.resize(left + right);
  auto encode = [&](std::uint64_t tuple, std::size_t base, std::size_t offset) {
    std::uint64_t label = 0, scale = 1;
    for (std::size_t t = 0; t < k; ++t) {  // least significant coordinate first
      label += sigma.labels[offset + tuple % base] * scale;
      tuple /= base;
      scale *= lc.labels;
    }
    return static_cast<Label>(label);
  };
  for (std::uint64_t u = 0; u < left; ++u) out.labels[u] = encode(u, lc.left, 0);
  for (std::uint64_t v = 0; v < right; ++v) out.labels[left + v] = encode(v, lc.right, lc.left);
  return out;
}

}  // namespace gmsched
