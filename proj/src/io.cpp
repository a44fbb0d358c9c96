#include "gmsched/io.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gmsched::io {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
  throw ParseError("field '" + where + "': " + what);
}

const Json& member(const Json& j, const std::string& where, const char* name) {
  if (!j.is_object()) bad(where, "expected an object");
  const auto it = j.find(name);
  if (it == j.end()) bad(where.empty() ? name : where + "." + name, "missing");
  return *it;
}

std::string path(const std::string& where, const char* name) { return where.empty() ? name : where + "." + name; }
std::string path(const std::string& where, std::size_t idx) { return where + "[" + std::to_string(idx) + "]"; }

std::uint64_t as_uint(const Json& j, const std::string& where) {
  if (!j.is_number_unsigned()) bad(where, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

double as_double(const Json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected an array");
  return j;
}

std::uint64_t get_uint(const Json& j, const std::string& where, const char* name) {
  return as_uint(member(j, where, name), path(where, name));
}

double get_double(const Json& j, const std::string& where, const char* name) {
  return as_double(member(j, where, name), path(where, name));
}

std::vector<std::uint64_t> uint_list(const Json& j, const std::string& where) {
  as_array(j, where);
  std::vector<std::uint64_t> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_uint(j[i], path(where, i)));
  return out;
}

// Library validation errors inside a document become parse errors.
template <class F>
auto guarded(const std::string& kind, F&& f) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    throw ParseError(kind + " document is inconsistent: " + e.what());
  }
}

}  // namespace

Json parse(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(col) + ": malformed JSON");
  }
}

std::string kind_of(const Json& doc) {
  if (!doc.is_object()) throw ParseError("document is not a JSON object");
  const auto& schema = member(doc, "", "schema");
  if (!schema.is_string() || schema.get<std::string>() != kSchema) {
    bad("schema", std::string("expected \"") + kSchema + "\"");
  }
  const auto& kind = member(doc, "", "kind");
  if (!kind.is_string()) bad("kind", "expected a string");
  return kind.get<std::string>();
}

void expect_kind(const Json& doc, const std::string& kind) {
  const auto k = kind_of(doc);
  if (k != kind) bad("kind", "expected \"" + kind + "\", found \"" + k + "\"");
}

Json document(const std::string& kind) {
  Json j;
  j["schema"] = kSchema;
  j["kind"] = kind;
  return j;
}

std::string dump(const Json& doc) { return doc.dump(2) + "\n"; }

// ---- set systems

namespace {

Json set_lists(const SetSystem& ss) {
  Json sets = Json::array();
  for (const auto& s : ss.sets) sets.push_back(s.elements());
  return sets;
}

SetSystem set_system_body(const Json& j, const std::string& where) {
  const auto n = get_uint(j, where, "n");
  const auto m = get_uint(j, where, "m");
  const auto& sets = as_array(member(j, where, "sets"), path(where, "sets"));
  if (sets.size() != m) bad(path(where, "sets"), "has " + std::to_string(sets.size()) + " sets, m = " + std::to_string(m));
  std::vector<std::vector<std::size_t>> lists;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    const auto els = uint_list(sets[i], path(path(where, "sets"), i));
    for (std::size_t t = 0; t < els.size(); ++t) {
      if (els[t] >= n) bad(path(path(path(where, "sets"), i), t), "element outside [0, n)");
    }
    lists.emplace_back(els.begin(), els.end());
  }
  auto ss = set_system_from_lists(n, lists);
  ss.seed = get_uint(j, where, "seed");
  return ss;
}

}  // namespace

Json to_json(const SetSystemFile& f) {
  Json j = document("set-system");
  j["n"] = f.system.universe;
  j["m"] = f.system.set_count();
  j["seed"] = f.system.seed;
  if (f.cover_budget) j["l"] = *f.cover_budget;
  if (f.beta) j["beta"] = *f.beta;
  j["sets"] = set_lists(f.system);
  return j;
}

SetSystemFile set_system_from_json(const Json& doc) {
  expect_kind(doc, "set-system");
  SetSystemFile f;
  f.system = set_system_body(doc, "");
  if (doc.contains("l")) f.cover_budget = as_uint(doc["l"], "l");
  if (doc.contains("beta")) f.beta = as_double(doc["beta"], "beta");
  return f;
}

// ---- norms and instances

Json to_json(const MixtureNorm& norm) {
  Json terms = Json::array();
  for (const auto& t : norm.terms()) terms.push_back({{"k", t.k}, {"scale", t.scale}});
  return terms;
}

MixtureNorm norm_from_json(const Json& j, const std::string& where) {
  as_array(j, where);
  std::vector<ScaledTopKTerm> terms;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const auto w = path(where, i);
    terms.push_back({get_uint(j[i], w, "k"), get_double(j[i], w, "scale")});
  }
  return guarded("norm", [&] { return MixtureNorm(std::move(terms)); });
}

namespace {

Json instance_body(const SchedulingInstance& inst) {
  Json j;
  j["machines"] = inst.machine_count();
  j["jobs"] = inst.job_count();
  Json norms = Json::array();
  for (const auto& n : inst.norm_pool()) norms.push_back(to_json(n));
  j["norms"] = norms;
  Json which = Json::array();
  for (MachineId i = 0; i < inst.machine_count(); ++i) which.push_back(inst.norm_index(i));
  j["machine_norm"] = which;
  Json entries = Json::array();
  for (JobId job = 0; job < inst.job_count(); ++job) {
    for (const auto& e : inst.entries(job)) entries.push_back(Json::array({e.machine, job, e.size}));
  }
  j["entries"] = entries;
  return j;
}

SchedulingInstance instance_body_from_json(const Json& j, const std::string& where) {
  const auto m = get_uint(j, where, "machines");
  const auto n = get_uint(j, where, "jobs");
  const auto& norms_j = as_array(member(j, where, "norms"), path(where, "norms"));
  std::vector<MixtureNorm> norms;
  for (std::size_t i = 0; i < norms_j.size(); ++i) norms.push_back(norm_from_json(norms_j[i], path(path(where, "norms"), i)));
  const auto which = uint_list(member(j, where, "machine_norm"), path(where, "machine_norm"));
  if (which.size() != m) bad(path(where, "machine_norm"), "needs one entry per machine");
  for (std::size_t i = 0; i < which.size(); ++i) {
    if (which[i] >= norms.size()) bad(path(path(where, "machine_norm"), i), "norm index out of range");
  }
  const auto& entries = as_array(member(j, where, "entries"), path(where, "entries"));
  std::vector<ProcTriplet> triplets;
  triplets.reserve(entries.size());
  for (std::size_t t = 0; t < entries.size(); ++t) {
    const auto w = path(path(where, "entries"), t);
    const auto& e = as_array(entries[t], w);
    if (e.size() != 3) bad(w, "expected [machine, job, size]");
    const auto i = as_uint(e[0], path(w, std::size_t{0}));
    const auto job = as_uint(e[1], path(w, std::size_t{1}));
    const double p = as_double(e[2], path(w, std::size_t{2}));
    if (i >= m) bad(path(w, std::size_t{0}), "machine out of range");
    if (job >= n) bad(path(w, std::size_t{1}), "job out of range");
    triplets.push_back({static_cast<MachineId>(i), static_cast<JobId>(job), p});
  }
  std::vector<std::uint32_t> idx(which.begin(), which.end());
  return guarded("instance", [&] {
    return SchedulingInstance::from_triplets(m, n, std::move(triplets), std::move(norms), std::move(idx));
  });
}

}  // namespace

Json to_json(const SchedulingInstance& inst) {
  Json j = document("instance");
  j.update(instance_body(inst));
  return j;
}

SchedulingInstance instance_from_json(const Json& doc) {
  expect_kind(doc, "instance");
  return instance_body_from_json(doc, "");
}

SchedulingInstance any_instance_from_json(const Json& doc) {
  const auto kind = kind_of(doc);
  if (kind == "instance") return instance_from_json(doc);
  if (kind == "gap-instance") return gap_instance_from_json(doc).instance;
  if (kind == "reduced-instance") return reduced_from_json(doc).instance;
  if (kind == "fractional-solution") return instance_body_from_json(member(doc, "", "instance"), "instance");
  bad("kind", "\"" + kind + "\" does not carry a scheduling instance");
}

// ---- assignments

namespace {

Json machine_list(const Assignment& a) {
  Json arr = Json::array();
  for (MachineId i : a.machine_of) {
    if (i == kUnassigned) {
      arr.push_back(nullptr);
    } else {
      arr.push_back(i);
    }
  }
  return arr;
}

Assignment machine_list_from_json(const Json& j, const std::string& where) {
  as_array(j, where);
  Assignment a;
  a.machine_of.reserve(j.size());
  for (std::size_t t = 0; t < j.size(); ++t) {
    if (j[t].is_null()) {
      a.machine_of.push_back(kUnassigned);
    } else {
      const auto i = as_uint(j[t], path(where, t));
      if (i >= kUnassigned) bad(path(where, t), "machine id too large");
      a.machine_of.push_back(static_cast<MachineId>(i));
    }
  }
  return a;
}

}  // namespace

Json to_json(const Assignment& a) {
  Json j = document("assignment");
  j["machine_of"] = machine_list(a);
  return j;
}

Assignment assignment_from_json(const Json& doc) {
  expect_kind(doc, "assignment");
  return machine_list_from_json(member(doc, "", "machine_of"), "machine_of");
}

Json assignments_to_json(const std::vector<Assignment>& pool) {
  Json j = document("assignments");
  Json items = Json::array();
  for (const auto& a : pool) items.push_back(machine_list(a));
  j["items"] = items;
  return j;
}

std::vector<Assignment> assignments_from_json(const Json& doc) {
  const auto kind = kind_of(doc);
  if (kind == "assignment") return {assignment_from_json(doc)};
  expect_kind(doc, "assignments");
  const auto& items = as_array(member(doc, "", "items"), "items");
  std::vector<Assignment> out;
  for (std::size_t t = 0; t < items.size(); ++t) out.push_back(machine_list_from_json(items[t], path("items", t)));
  return out;
}

// ---- fractional solutions

Json to_json(const FractionalSolution& sol, const SchedulingInstance* embed) {
  Json j = document("fractional-solution");
  j["threshold"] = sol.threshold;
  Json entries = Json::array();
  for (const auto& [config, weight] : sol.entries) {
    entries.push_back({{"machine", config.machine}, {"weight", weight}, {"jobs", config.jobs}});
  }
  j["entries"] = entries;
  if (embed) j["instance"] = instance_body(*embed);
  return j;
}

FractionalSolution fractional_from_json(const Json& doc) {
  expect_kind(doc, "fractional-solution");
  FractionalSolution sol;
  sol.threshold = get_double(doc, "", "threshold");
  const auto& entries = as_array(member(doc, "", "entries"), "entries");
  for (std::size_t t = 0; t < entries.size(); ++t) {
    const auto w = path("entries", t);
    Configuration c;
    const auto machine = get_uint(entries[t], w, "machine");
    if (machine >= kUnassigned) bad(path(w, "machine"), "machine id too large");
    c.machine = static_cast<MachineId>(machine);
    for (auto x : uint_list(member(entries[t], w, "jobs"), path(w, "jobs"))) c.jobs.push_back(static_cast<JobId>(x));
    sol.entries.push_back({std::move(c), get_double(entries[t], w, "weight")});
  }
  return sol;
}

// ---- label cover

namespace {

Json label_cover_body(const LabelCoverInstance& lc) {
  Json j;
  j["left"] = lc.left;
  j["right"] = lc.right;
  j["labels"] = lc.labels;
  Json edges = Json::array();
  for (const auto& e : lc.edges) edges.push_back({{"u", e.u}, {"v", e.v}, {"proj", e.proj}});
  j["edges"] = edges;
  return j;
}

LabelCoverInstance label_cover_body_from_json(const Json& j, const std::string& where) {
  LabelCoverInstance lc;
  lc.left = get_uint(j, where, "left");
  lc.right = get_uint(j, where, "right");
  lc.labels = get_uint(j, where, "labels");
  const auto& edges = as_array(member(j, where, "edges"), path(where, "edges"));
  for (std::size_t t = 0; t < edges.size(); ++t) {
    const auto w = path(path(where, "edges"), t);
    LcEdge e;
    const auto u = get_uint(edges[t], w, "u");
    const auto v = get_uint(edges[t], w, "v");
    if (u >= lc.left) bad(path(w, "u"), "vertex out of range");
    if (v >= lc.right) bad(path(w, "v"), "vertex out of range");
    e.u = static_cast<std::uint32_t>(u);
    e.v = static_cast<std::uint32_t>(v);
    const auto proj = uint_list(member(edges[t], w, "proj"), path(w, "proj"));
    if (proj.size() != lc.labels) bad(path(w, "proj"), "length must equal labels");
    for (std::size_t a = 0; a < proj.size(); ++a) {
      if (proj[a] >= lc.labels) bad(path(path(w, "proj"), a), "label out of range");
      e.proj.push_back(static_cast<Label>(proj[a]));
    }
    lc.edges.push_back(std::move(e));
  }
  guarded("label-cover", [&] {
    lc.validate();
    return 0;
  });
  return lc;
}

Labeling labels_from_json(const Json& j, const std::string& where) {
  Labeling sigma;
  for (auto x : uint_list(j, where)) sigma.labels.push_back(static_cast<Label>(x));
  return sigma;
}

}  // namespace

Json to_json(const LabelCoverInstance& lc, const Labeling* planted) {
  Json j = document("label-cover");
  j.update(label_cover_body(lc));
  if (planted) j["planted"] = planted->labels;
  return j;
}

LabelCoverInstance label_cover_from_json(const Json& doc) {
  const auto kind = kind_of(doc);
  if (kind == "reduced-instance") return label_cover_body_from_json(member(doc, "", "label_cover"), "label_cover");
  expect_kind(doc, "label-cover");
  return label_cover_body_from_json(doc, "");
}

std::optional<Labeling> planted_from_json(const Json& doc) {
  const Json* holder = &doc;
  std::string where;
  if (kind_of(doc) == "reduced-instance") {
    holder = &member(doc, "", "label_cover");
    where = "label_cover";
  }
  if (!holder->contains("planted")) return std::nullopt;
  return labels_from_json((*holder)["planted"], path(where, "planted"));
}

Json to_json(const Labeling& sigma) {
  Json j = document("labeling");
  j["labels"] = sigma.labels;
  return j;
}

Labeling labeling_from_json(const Json& doc) {
  expect_kind(doc, "labeling");
  return labels_from_json(member(doc, "", "labels"), "labels");
}

// ---- gap instances

Json to_json(const GapParams& p) {
  Json j;
  j["m"] = p.machines;
  j["h"] = p.classes;
  j["l"] = p.cover_budget;
  j["beta"] = p.beta;
  j["class_sizes"] = p.class_sizes;
  j["seed"] = p.seed;
  return j;
}

GapParams gap_params_from_json(const Json& j) {
  GapParams p;
  p.machines = get_uint(j, "params", "m");
  p.classes = get_uint(j, "params", "h");
  p.cover_budget = get_uint(j, "params", "l");
  p.beta = get_double(j, "params", "beta");
  for (auto x : uint_list(member(j, "params", "class_sizes"), "params.class_sizes")) p.class_sizes.push_back(x);
  p.seed = get_uint(j, "params", "seed");
  return p;
}

Json to_json(const GapInstance& g, bool embed_instance) {
  Json j = document("gap-instance");
  j["params"] = to_json(g.params);
  Json systems = Json::array();
  for (const auto& ss : g.systems) {
    systems.push_back({{"n", ss.universe}, {"m", ss.set_count()}, {"seed", ss.seed}, {"sets", set_lists(ss)}});
  }
  j["systems"] = systems;
  if (embed_instance) j["instance"] = instance_body(g.instance);
  return j;
}

GapInstance gap_instance_from_json(const Json& doc) {
  expect_kind(doc, "gap-instance");
  const auto params = gap_params_from_json(member(doc, "", "params"));
  const auto& systems_j = as_array(member(doc, "", "systems"), "systems");
  std::vector<SetSystem> systems;
  for (std::size_t s = 0; s < systems_j.size(); ++s) systems.push_back(set_system_body(systems_j[s], path("systems", s)));
  auto g = guarded("gap-instance", [&] { return build_gap_instance(params, std::move(systems)); });
  if (doc.contains("instance")) {
    const auto stored = instance_body_from_json(doc["instance"], "instance");
    if (!(stored == g.instance)) bad("instance", "does not match the instance rebuilt from params and systems");
  }
  return g;
}

// ---- reduced instances

Json to_json(const ReductionParams& p) {
  Json j;
  j["beta"] = p.beta;
  j["l"] = p.cover_budget;
  j["h"] = p.classes;
  j["class_sizes"] = p.class_sizes;
  j["seed"] = p.seed;
  return j;
}

ReductionParams reduction_params_from_json(const Json& j) {
  ReductionParams p;
  p.beta = get_double(j, "params", "beta");
  p.cover_budget = get_uint(j, "params", "l");
  p.classes = get_uint(j, "params", "h");
  for (auto x : uint_list(member(j, "params", "class_sizes"), "params.class_sizes")) p.class_sizes.push_back(x);
  p.seed = get_uint(j, "params", "seed");
  return p;
}

Json to_json(const ReducedInstance& r, const Labeling* planted) {
  Json j = document("reduced-instance");
  Json lc = label_cover_body(r.lc);
  if (planted) lc["planted"] = planted->labels;
  j["label_cover"] = lc;
  j["params"] = to_json(r.params);
  j["machines"] = r.instance.machine_count();
  j["jobs"] = r.instance.job_count();
  j["machine_map"] = "machine = w * m + i; w < left is a left vertex, else right vertex w - left";
  j["job_map"] = "job = e * edge_block + class_offsets[s] + x";
  j["edge_block"] = r.edge_block;
  j["class_offsets"] = r.class_offsets;
  Json seeds = Json::array();
  for (std::size_t e = 0; e < r.lc.edges.size(); ++e) {
    for (std::size_t s = 0; s < r.params.classes; ++s) seeds.push_back(Json::array({e, s, r.system(e, s).seed}));
  }
  j["system_seeds"] = seeds;
  return j;
}

ReducedInstance reduced_from_json(const Json& doc) {
  expect_kind(doc, "reduced-instance");
  const auto lc = label_cover_body_from_json(member(doc, "", "label_cover"), "label_cover");
  const auto params = reduction_params_from_json(member(doc, "", "params"));
  auto r = guarded("reduced-instance", [&] { return reduce(lc, params); });
  if (doc.contains("system_seeds")) {
    const auto& seeds = as_array(doc["system_seeds"], "system_seeds");
    if (seeds.size() != r.systems.size()) bad("system_seeds", "one seed per (edge, class) expected");
    for (std::size_t t = 0; t < seeds.size(); ++t) {
      const auto triple = uint_list(seeds[t], path("system_seeds", t));
      if (triple.size() != 3 || triple[0] >= lc.edges.size() || triple[1] >= params.classes ||
          r.system(triple[0], triple[1]).seed != triple[2]) {
        bad(path("system_seeds", t), "does not match the seed derived from params.seed");
      }
    }
  }
  return r;
}

// ---- reports

Json to_json(const Witness& w) {
  Json signs = Json::array();
  for (bool b : w.complemented) signs.push_back(b ? "complement" : "set");
  return {{"indices", w.indices}, {"signs", signs}, {"union_size", w.union_size}};
}

Json to_json(const ExhaustiveReport& r) {
  Json j = document("setsystem-report");
  j["method"] = "exhaustive";
  j["passed"] = r.passed;
  j["l"] = r.max_indices;
  j["beta"] = r.beta;
  j["threshold"] = r.threshold;
  j["estimated_unions"] = r.estimated_unions;
  j["unions_checked"] = r.unions_checked;
  j["largest_union"] = r.largest_union;
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const MonteCarloReport& r) {
  Json j = document("setsystem-report");
  j["method"] = "monte-carlo";
  j["passed"] = r.violations == 0;
  j["trials"] = r.trials;
  j["violations"] = r.violations;
  j["violation_rate"] = r.violation_rate;
  j["worst_fraction"] = r.worst_fraction;
  j["threshold"] = r.threshold;
  if (r.witness) j["witness"] = to_json(*r.witness);
  return j;
}

Json to_json(const FeasibilityReport& r) {
  Json j = document("feasibility-report");
  j["feasible"] = r.feasible;
  j["threshold"] = r.threshold;
  j["tol"] = r.tol;
  j["max_machine_sum"] = r.max_machine_sum;
  j["worst_coverage_error"] = r.worst_coverage_error;
  j["worst_validity_excess"] = r.worst_validity_excess;
  j["min_weight"] = r.min_weight;
  j["overfull_machines"] = r.overfull_machines;
  j["coverage_violations"] = r.coverage_violations;
  j["invalid_entries"] = r.invalid_entries;
  return j;
}

Json to_json(const CoverageAudit& a) {
  Json j = document("coverage-audit");
  j["verdict"] = to_string(a.verdict);
  j["makespan"] = a.makespan;
  j["heavy_machines_per_class"] = a.heavy_machines_per_class;
  j["required_per_class"] = a.required_per_class;
  j["max_heavy"] = a.max_heavy;
  j["required_max_heavy"] = a.required_max_heavy;
  if (!a.not_applicable.empty()) j["not_applicable"] = a.not_applicable;
  Json sf = Json::array();
  for (const auto& s : a.shortfalls) {
    sf.push_back({{"class", s.cls},
                  {"heavy_machines", s.heavy_machines},
                  {"heavy_union", s.heavy_union},
                  {"union_threshold", s.union_threshold},
                  {"jobs_on_light", s.jobs_on_light},
                  {"light_capacity", s.light_capacity}});
  }
  j["shortfalls"] = sf;
  return j;
}

Json to_json(const StructuralReport& r) {
  Json j = document("structural-report");
  j["ok"] = r.ok;
  j["machines"] = r.machines;
  j["expected_machines"] = r.expected_machines;
  j["jobs_with_left_entry"] = r.jobs_with_left_entry;
  j["jobs_with_right_entry"] = r.jobs_with_right_entry;
  j["jobs_without_entry"] = r.jobs_without_entry;
  j["foreign_sizes"] = r.foreign_sizes;
  j["foreign_machines"] = r.foreign_machines;
  j["label_class_clashes"] = r.label_class_clashes;
  return j;
}

Json to_json(const SoundnessReport& r) {
  Json j = document("soundness-report");
  j["makespan"] = r.makespan;
  j["star_class"] = r.star;
  j["star_edges"] = r.star_edges;
  j["star_covers_half"] = r.star_covers_half;
  j["good_class_violations"] = r.good_violations;
  j["load_below_heavy"] = r.load_below_heavy;
  j["counting_ok"] = r.counting_ok;
  j["class_budget_ok"] = r.class_budget_ok;
  j["asserted_edges"] = r.asserted;
  j["asserted_failures"] = r.asserted_failures;
  j["vacuous"] = r.vacuous;
  j["vacuous_edges"] = r.vacuous_edges;
  j["exact_expected"] = r.exact_expected;
  j["asserted_bound"] = r.asserted_bound;
  j["extraction_bound"] = r.extraction_bound;
  j["trials"] = r.trials;
  j["sample_mean"] = r.sample_mean;
  j["sample_stderr"] = r.sample_stderr;
  j["mean_consistent"] = r.mean_consistent;
  j["bound_consistent"] = r.bound_consistent;
  j["notes"] = r.notes;
  Json edges = Json::array();
  for (const auto& e : r.edges) {
    edges.push_back({{"edge", e.edge},
                     {"left_size", e.left_size},
                     {"right_size", e.right_size},
                     {"matching_pairs", e.matching_pairs},
                     {"probability", e.probability},
                     {"asserted", e.asserted},
                     {"holds", e.holds},
                     {"unmet", e.unmet}});
  }
  j["edges"] = edges;
  return j;
}

Json to_json(const AxiomReport& r) {
  Json j = document("axiom-report");
  j["passed"] = r.passed();
  j["dimension"] = r.dimension;
  j["trials"] = r.trials;
  j["tol"] = r.tol;
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name}, {"passed", c.passed}, {"worst", c.worst}, {"failures", c.failures}});
  }
  j["checks"] = checks;
  return j;
}

}  // namespace gmsched::io
