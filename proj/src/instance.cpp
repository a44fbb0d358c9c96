#include "gmsched/instance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace gmsched {

SchedulingInstance::SchedulingInstance(std::size_t machine_count, std::vector<std::size_t> job_offsets,
                                       std::vector<ProcEntry> entries, std::vector<MixtureNorm> norms,
                                       std::vector<std::uint32_t> norm_of_machine)
    : machine_count_(machine_count),
      offsets_(std::move(job_offsets)),
      entries_(std::move(entries)),
      norms_(std::move(norms)),
      norm_of_machine_(std::move(norm_of_machine)) {
  validate();
}

SchedulingInstance SchedulingInstance::from_triplets(std::size_t machine_count, std::size_t job_count,
                                                     std::vector<ProcTriplet> triplets,
                                                     std::vector<MixtureNorm> norms,
                                                     std::vector<std::uint32_t> norm_of_machine) {
  for (const auto& t : triplets) {
    if (t.job >= job_count) {
      throw std::invalid_argument("triplet job " + std::to_string(t.job) + " out of range");
    }
  }
  std::stable_sort(triplets.begin(), triplets.end(), [](const ProcTriplet& a, const ProcTriplet& b) {
    return a.job != b.job ? a.job < b.job : a.machine < b.machine;
  });
  std::vector<std::size_t> offsets(job_count + 1, 0);
  std::vector<ProcEntry> entries;
  entries.reserve(triplets.size());
  for (const auto& t : triplets) {
    ++offsets[t.job + 1];
    entries.push_back({t.machine, t.size});
  }
  std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
  return SchedulingInstance(machine_count, std::move(offsets), std::move(entries), std::move(norms),
                            std::move(norm_of_machine));
}

SchedulingInstance SchedulingInstance::from_triplets(std::size_t machine_count, std::size_t job_count,
                                                     std::vector<ProcTriplet> triplets,
                                                     const MixtureNorm& norm) {
  return from_triplets(machine_count, job_count, std::move(triplets), {norm},
                       std::vector<std::uint32_t>(machine_count, 0));
}

void SchedulingInstance::validate() const {
  if (machine_count_ == 0) throw std::invalid_argument("instance needs at least one machine");
  if (machine_count_ > kUnassigned) throw std::invalid_argument("too many machines");
  if (offsets_.empty() || offsets_.front() != 0 || offsets_.back() != entries_.size()) {
    throw std::invalid_argument("malformed job offsets");
  }
  if (norm_of_machine_.size() != machine_count_) {
    throw std::invalid_argument("need one norm reference per machine");
  }
  for (auto idx : norm_of_machine_) {
    if (idx >= norms_.size()) throw std::invalid_argument("machine norm index out of range");
  }
  for (const auto& norm : norms_) {
    if (norm.terms().empty()) throw std::invalid_argument("machine norm without terms");
  }
  const std::size_t n = job_count();
  for (std::size_t j = 0; j < n; ++j) {
    if (offsets_[j + 1] < offsets_[j]) throw std::invalid_argument("malformed job offsets");
    if (offsets_[j + 1] == offsets_[j]) {
      throw std::invalid_argument("job " + std::to_string(j) + " has no finite processing time");
    }
    for (std::size_t e = offsets_[j]; e < offsets_[j + 1]; ++e) {
      const auto& entry = entries_[e];
      if (entry.machine >= machine_count_) {
        throw std::invalid_argument("job " + std::to_string(j) + " references machine " +
                                    std::to_string(entry.machine) + " out of range");
      }
      if (!std::isfinite(entry.size) || entry.size <= 0.0) {
        throw std::invalid_argument("job " + std::to_string(j) + " has a nonpositive size");
      }
      if (e > offsets_[j] && entries_[e - 1].machine >= entry.machine) {
        throw std::invalid_argument("job " + std::to_string(j) +
                                    " has duplicate or unsorted machine entries");
      }
    }
  }
}

std::optional<double> SchedulingInstance::size(MachineId machine, JobId job) const {
  const auto row = entries(job);
  if (row.size() <= 8) {
    for (const auto& e : row) {
      if (e.machine >= machine) return e.machine == machine ? std::optional<double>(e.size) : std::nullopt;
    }
    return std::nullopt;
  }
  auto it = std::lower_bound(row.begin(), row.end(), machine,
                             [](const ProcEntry& e, MachineId m) { return e.machine < m; });
  if (it == row.end() || it->machine != machine) return std::nullopt;
  return it->size;
}

std::vector<JobId> SchedulingInstance::finite_jobs(MachineId machine) const {
  std::vector<JobId> jobs;
  for (JobId j = 0; j < job_count(); ++j) {
    if (size(machine, j)) jobs.push_back(j);
  }
  return jobs;
}

double SchedulingInstance::config_load(MachineId machine, std::span<const JobId> jobs) const {
  std::vector<double> sizes;
  sizes.reserve(jobs.size());
  for (JobId j : jobs) {
    const auto p = size(machine, j);
    if (!p) {
      throw std::invalid_argument("job " + std::to_string(j) + " is forbidden on machine " +
                                  std::to_string(machine));
    }
    sizes.push_back(*p);
  }
  return norm(machine)(sizes);
}

double SchedulingInstance::min_size(JobId job) const {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& e : entries(job)) best = std::min(best, e.size);
  return best;
}

void validate_assignment(const SchedulingInstance& inst, const Assignment& a) {
  if (a.machine_of.size() != inst.job_count()) {
    throw std::invalid_argument("assignment covers " + std::to_string(a.machine_of.size()) +
                                " jobs, instance has " + std::to_string(inst.job_count()));
  }
  for (JobId j = 0; j < a.machine_of.size(); ++j) {
    const MachineId i = a.machine_of[j];
    if (i == kUnassigned) {
      throw std::invalid_argument("job " + std::to_string(j) + " is unassigned");
    }
    if (!inst.size(i, j)) {
      throw std::invalid_argument("job " + std::to_string(j) + " is assigned to machine " +
                                  std::to_string(i) + " where it is forbidden");
    }
  }
}

bool is_valid_assignment(const SchedulingInstance& inst, const Assignment& a) {
  try {
    validate_assignment(inst, a);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

namespace {

// Sizes on one machine. Few distinct values (the common case for structured
// instances) are kept as counts; past kMaxDistinct it falls back to a list.
class SizeBag {
 public:
  void add(double x) {
    if (!list_.empty() || counts_.size() == kMaxDistinct) {
      if (list_.empty()) spill();
      list_.push_back(x);
      return;
    }
    for (auto& [v, c] : counts_) {
      if (v == x) {
        ++c;
        return;
      }
    }
    counts_.push_back({x, 1});
  }

  double value(const MixtureNorm& norm) {
    if (!list_.empty()) return norm(list_);
    // expand the leading max_k entries; same sequence the list path sums
    std::sort(counts_.begin(), counts_.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
    std::vector<double> lead;
    for (const auto& [v, c] : counts_) {
      if (v <= 0.0 || lead.size() >= norm.max_k()) break;
      lead.insert(lead.end(), std::min(c, norm.max_k() - lead.size()), v);
    }
    return norm.evaluate_descending(lead);
  }

 private:
  static constexpr std::size_t kMaxDistinct = 16;

  void spill() {
    for (const auto& [v, c] : counts_) list_.insert(list_.end(), c, v);
    counts_.clear();
  }

  std::vector<std::pair<double, std::size_t>> counts_;
  std::vector<double> list_;
};

}  // namespace

std::vector<double> loads(const SchedulingInstance& inst, const Assignment& a) {
  if (a.machine_of.size() != inst.job_count()) validate_assignment(inst, a);
  std::vector<SizeBag> bags(inst.machine_count());
  for (JobId j = 0; j < a.machine_of.size(); ++j) {
    const MachineId i = a.machine_of[j];
    const auto p = i == kUnassigned ? std::nullopt : inst.size(i, j);
    if (!p) validate_assignment(inst, a);  // throws with the message
    bags[i].add(*p);
  }
  std::vector<double> out(inst.machine_count(), 0.0);
  for (MachineId i = 0; i < inst.machine_count(); ++i) out[i] = bags[i].value(inst.norm(i));
  return out;
}

double load(const SchedulingInstance& inst, const Assignment& a, MachineId machine) {
  if (machine >= inst.machine_count()) throw std::invalid_argument("machine out of range");
  return loads(inst, a)[machine];
}

double makespan(const SchedulingInstance& inst, const Assignment& a) {
  const auto l = loads(inst, a);
  return l.empty() ? 0.0 : *std::max_element(l.begin(), l.end());
}

std::vector<JobId> placement_order(const SchedulingInstance& inst) {
  std::vector<JobId> order(inst.job_count());
  std::iota(order.begin(), order.end(), JobId{0});
  std::vector<double> key(inst.job_count());
  for (JobId j = 0; j < inst.job_count(); ++j) key[j] = inst.min_size(j);
  std::stable_sort(order.begin(), order.end(), [&](JobId a, JobId b) { return key[a] > key[b]; });
  return order;
}

namespace {

// Per-machine multiset of assigned sizes kept as (value, count) with values
// strictly decreasing; top-k sums then cost O(distinct values).
class LoadTracker {
 public:
  explicit LoadTracker(const SchedulingInstance& inst)
      : inst_(inst), hist_(inst.machine_count()), loads_(inst.machine_count(), 0.0) {}

  double load(MachineId i) const { return loads_[i]; }

  void add(MachineId i, double x) {
    insert(hist_[i], x);
    loads_[i] = evaluate(i);
  }
  void remove(MachineId i, double x) {
    erase(hist_[i], x);
    loads_[i] = evaluate(i);
  }
  double load_with(MachineId i, double x) {
    insert(hist_[i], x);
    const double v = evaluate(i);
    erase(hist_[i], x);
    return v;
  }
  double load_without(MachineId i, double x) {
    erase(hist_[i], x);
    const double v = evaluate(i);
    insert(hist_[i], x);
    return v;
  }

 private:
  using Histogram = std::vector<std::pair<double, std::size_t>>;

  static Histogram::iterator find(Histogram& h, double x) {
    return std::lower_bound(h.begin(), h.end(), x,
                            [](const std::pair<double, std::size_t>& e, double v) { return e.first > v; });
  }
  static void insert(Histogram& h, double x) {
    auto it = find(h, x);
    if (it != h.end() && it->first == x) {
      ++it->second;
    } else {
      h.insert(it, {x, 1});
    }
  }
  static void erase(Histogram& h, double x) {
    auto it = find(h, x);
    if (it == h.end() || it->first != x) throw std::logic_error("load tracker lost a job");
    if (--it->second == 0) h.erase(it);
  }
  double evaluate(MachineId i) const { return inst_.norm(i).evaluate_histogram(hist_[i]); }

  const SchedulingInstance& inst_;
  std::vector<Histogram> hist_;
  std::vector<double> loads_;
};

}  // namespace

Assignment greedy_assignment(const SchedulingInstance& inst) {
  Assignment a{std::vector<MachineId>(inst.job_count(), kUnassigned)};
  LoadTracker tracker(inst);
  for (JobId j : placement_order(inst)) {
    MachineId best = kUnassigned;
    double best_size = 0.0;
    double best_load = std::numeric_limits<double>::infinity();
    for (const auto& e : inst.entries(j)) {
      const double l = tracker.load_with(e.machine, e.size);
      if (l < best_load) {
        best_load = l;
        best = e.machine;
        best_size = e.size;
      }
    }
    tracker.add(best, best_size);
    a.machine_of[j] = best;
  }
  return a;
}

Assignment random_assignment(const SchedulingInstance& inst, Rng& rng) {
  Assignment a{std::vector<MachineId>(inst.job_count())};
  for (JobId j = 0; j < inst.job_count(); ++j) {
    const auto row = inst.entries(j);
    a.machine_of[j] = row.size() == 1 ? row[0].machine : row[rng.below(row.size())].machine;
  }
  return a;
}

Assignment local_search(const SchedulingInstance& inst, Assignment start, std::size_t max_moves) {
  validate_assignment(inst, start);
  LoadTracker tracker(inst);
  for (JobId j = 0; j < inst.job_count(); ++j) {
    tracker.add(start.machine_of[j], *inst.size(start.machine_of[j], j));
  }
  constexpr double kGain = 1e-12;
  std::size_t moves = 0;
  bool improved = true;
  while (improved && moves < max_moves) {
    improved = false;
    for (JobId j = 0; j < inst.job_count() && moves < max_moves; ++j) {
      const MachineId from = start.machine_of[j];
      const double from_size = *inst.size(from, j);
      const double before_from = tracker.load(from);
      const double after_from = tracker.load_without(from, from_size);
      for (const auto& e : inst.entries(j)) {
        if (e.machine == from) continue;
        const double before = std::max(before_from, tracker.load(e.machine));
        const double after = std::max(after_from, tracker.load_with(e.machine, e.size));
        if (after < before - kGain) {
          tracker.remove(from, from_size);
          tracker.add(e.machine, e.size);
          start.machine_of[j] = e.machine;
          ++moves;
          improved = true;
          break;
        }
      }
    }
  }
  return start;
}

void for_each_heuristic_assignment(const SchedulingInstance& inst, std::size_t count, std::uint64_t seed,
                                   const std::function<void(const Assignment&)>& visit,
                                   const HeuristicOptions& options) {
  if (count == 0) throw std::invalid_argument("heuristic pool needs count >= 1");
  visit(greedy_assignment(inst));
  Rng rng(seed);
  for (std::size_t k = 1; k < count; ++k) {
    Assignment a = random_assignment(inst, rng);
    if (options.local_search_every > 0 && k % options.local_search_every == 0) {
      a = local_search(inst, std::move(a), options.max_moves);
    }
    visit(a);
  }
}

std::vector<Assignment> heuristic_assignments(const SchedulingInstance& inst, std::size_t count,
                                              std::uint64_t seed, const HeuristicOptions& options) {
  std::vector<Assignment> pool;
  pool.reserve(count);
  for_each_heuristic_assignment(inst, count, seed, [&](const Assignment& a) { pool.push_back(a); }, options);
  return pool;
}

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const SchedulingInstance& inst, std::uint64_t budget)
      : inst_(inst), order_(placement_order(inst)), budget_(budget), sizes_(inst.machine_count()),
        current_(inst.job_count(), kUnassigned) {
    // Suffix maxima of single-job lower bounds: any completion pays at least
    // the cheapest placement of every remaining job.
    suffix_bound_.assign(order_.size() + 1, 0.0);
    for (std::size_t d = order_.size(); d-- > 0;) {
      const JobId j = order_[d];
      double cheapest = std::numeric_limits<double>::infinity();
      for (const auto& e : inst.entries(j)) {
        const double single[] = {e.size};
        cheapest = std::min(cheapest, inst.norm(e.machine)(single));
      }
      suffix_bound_[d] = std::max(suffix_bound_[d + 1], cheapest);
    }
  }

  OptResult run() {
    best_ = greedy_assignment(inst_);
    best_value_ = makespan(inst_, best_);
    search(0, 0.0);
    return {best_, best_value_, nodes_};
  }

 private:
  void search(std::size_t depth, double current_max) {
    if (++nodes_ > budget_) {
      throw BudgetExceeded("branch and bound exceeded its budget of " + std::to_string(budget_) +
                           " nodes");
    }
    if (depth == order_.size()) {
      if (current_max < best_value_) {
        best_value_ = current_max;
        best_.machine_of = current_;
      }
      return;
    }
    const JobId j = order_[depth];
    struct Candidate {
      double new_max;
      MachineId machine;
      double size;
    };
    std::vector<Candidate> candidates;
    for (const auto& e : inst_.entries(j)) {
      auto& bucket = sizes_[e.machine];
      bucket.push_back(e.size);
      const double l = inst_.norm(e.machine)(bucket);
      bucket.pop_back();
      candidates.push_back({std::max(current_max, l), e.machine, e.size});
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
      return a.new_max != b.new_max ? a.new_max < b.new_max : a.machine < b.machine;
    });
    for (const auto& c : candidates) {
      if (std::max(c.new_max, suffix_bound_[depth + 1]) >= best_value_) break;
      sizes_[c.machine].push_back(c.size);
      current_[j] = c.machine;
      search(depth + 1, c.new_max);
      current_[j] = kUnassigned;
      sizes_[c.machine].pop_back();
    }
  }

  const SchedulingInstance& inst_;
  std::vector<JobId> order_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::vector<double>> sizes_;
  std::vector<MachineId> current_;
  std::vector<double> suffix_bound_;
  Assignment best_;
  double best_value_ = 0.0;
};

}  // namespace

OptResult brute_force_opt(const SchedulingInstance& inst, std::uint64_t node_budget) {
  if (inst.job_count() == 0) {
    return {Assignment{}, 0.0, 0};
  }
  return BranchAndBound(inst, node_budget).run();
}

}  // namespace gmsched
