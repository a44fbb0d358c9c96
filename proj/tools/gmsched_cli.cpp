// gmsched: generators, solvers and audits over JSON files.
// Exit codes: 0 verified / ok, 1 refuted (witness written), 2 error or not applicable.

#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "gmsched/config_lp.hpp"
#include "gmsched/gapgen.hpp"
#include "gmsched/instance.hpp"
#include "gmsched/io.hpp"
#include "gmsched/labelcover.hpp"
#include "gmsched/reduction.hpp"
#include "gmsched/setsys.hpp"

using namespace gmsched;
using io::Json;

namespace {

constexpr int kOk = 0;
constexpr int kRefuted = 1;
constexpr int kError = 2;

// Past this many processing-time entries gen-gap leaves the instance out of
// the file (it is rebuilt from params and systems on load anyway).
constexpr std::size_t kEmbedLimit = 200000;

std::string read_all(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Json read_doc(const std::string& path) { return io::parse(read_all(path)); }

void write_doc(const std::string& path, const Json& doc) {
  const auto text = io::dump(doc);
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

void note(const std::string& line) { std::cerr << line << "\n"; }

struct Io {
  std::string in = "-";
  std::string out = "-";
};

void add_io(CLI::App* cmd, Io& io, bool input = true) {
  if (input) cmd->add_option("-i,--input", io.in, "input file ('-' for stdin)");
  cmd->add_option("-o,--output", io.out, "output file ('-' for stdout)");
}

std::vector<std::size_t> parse_sizes(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    const auto v = std::stoull(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad size list: " + csv);
    out.push_back(v);
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gmsched: generalized makespan constructions and audits"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");  // -h is taken by --h
  std::function<int()> action;

  // gen-setsystem
  Io gs_io;
  std::size_t gs_n = 0, gs_m = 0;
  std::uint64_t gs_seed = 0;
  std::optional<std::size_t> gs_l;
  std::optional<double> gs_beta;
  auto* gs = app.add_subcommand("gen-setsystem", "random set system, each element in m/2 sets");
  gs->add_option("--n", gs_n, "universe size")->required();
  gs->add_option("--m", gs_m, "number of sets (even)")->required();
  gs->add_option("--seed", gs_seed)->required();
  gs->add_option("--l", gs_l, "cover budget recorded in the header");
  gs->add_option("--beta", gs_beta, "beta recorded in the header");
  add_io(gs, gs_io, false);
  gs->callback([&] {
    action = [&] {
      write_doc(gs_io.out, io::to_json(io::SetSystemFile{build_random(gs_n, gs_m, gs_seed), gs_l, gs_beta}));
      return kOk;
    };
  });

  // verify-setsystem
  Io vs_io;
  std::optional<std::size_t> vs_l;
  std::optional<double> vs_beta;
  std::size_t vs_trials = 0;
  std::uint64_t vs_seed = 0;
  auto* vs = app.add_subcommand("verify-setsystem", "check the covering property exhaustively or by sampling");
  vs->add_option("--l", vs_l, "cover budget (default: header)");
  vs->add_option("--beta", vs_beta, "beta (default: header)");
  vs->add_option("--monte-carlo", vs_trials, "sample this many (I, signs) instead of enumerating");
  vs->add_option("--seed", vs_seed, "seed for --monte-carlo");
  add_io(vs, vs_io);
  vs->callback([&] {
    action = [&] {
      const auto f = io::set_system_from_json(read_doc(vs_io.in));
      const auto l = vs_l ? vs_l : f.cover_budget;
      const auto beta = vs_beta ? vs_beta : f.beta;
      if (!l || !beta) throw std::invalid_argument("--l and --beta are required when the header lacks them");
      if (vs_trials > 0) {
        const auto rep = verify_monte_carlo(f.system, *l, *beta, vs_trials, vs_seed);
        write_doc(vs_io.out, io::to_json(rep));
        note("monte carlo: " + std::to_string(rep.violations) + " violations in " + std::to_string(rep.trials));
        return rep.violations == 0 ? kOk : kRefuted;
      }
      note("exhaustive check: about " + std::to_string(exhaustive_cost(f.system.set_count(), *l)) + " unions");
      const auto rep = verify_exhaustive(f.system, *l, *beta);
      write_doc(vs_io.out, io::to_json(rep));
      note(rep.passed ? "passed" : "failed: witness written");
      return rep.passed ? kOk : kRefuted;
    };
  });

  // gen-gap
  Io gg_io;
  std::size_t gg_m = 8, gg_h = 2, gg_l = 2, gg_n1 = 16;
  double gg_beta = 0.05;
  std::string gg_sizes;
  std::uint64_t gg_seed = 0;
  std::string gg_embed = "auto";
  auto* gg = app.add_subcommand("gen-gap", "integrality-gap instance from h random set systems");
  gg->add_option("--m", gg_m, "machines (even)");
  gg->add_option("--h", gg_h, "size classes");
  gg->add_option("--l", gg_l, "cover budget");
  gg->add_option("--beta", gg_beta);
  gg->add_option("--n1", gg_n1, "first class size; later classes are sized automatically");
  gg->add_option("--sizes", gg_sizes, "explicit comma-separated class sizes (skips seed search)");
  gg->add_option("--seed", gg_seed)->required();
  gg->add_option("--embed-instance", gg_embed, "write the derived instance too: auto (small ones), yes, no")
      ->check(CLI::IsMember({"auto", "yes", "no"}));
  add_io(gg, gg_io, false);
  gg->callback([&] {
    action = [&] {
      GapParams p;
      if (gg_sizes.empty()) {
        p = desk_params(gg_m, gg_h, gg_l, gg_beta, gg_n1, gg_seed);
        if (p.seed != gg_seed) note("seed advanced to " + std::to_string(p.seed) + " for verified class systems");
      } else {
        p = GapParams{gg_m, gg_h, gg_l, gg_beta, parse_sizes(gg_sizes), gg_seed};
      }
      const auto g = build_gap_instance(p);
      const bool embed = gg_embed == "yes" || (gg_embed == "auto" && g.instance.entry_count() <= kEmbedLimit);
      write_doc(gg_io.out, io::to_json(g, embed));
      return kOk;
    };
  });

  // gap-certificate
  Io gc_io;
  auto* gc = app.add_subcommand("gap-certificate", "fractional solution x_{i,A_i(s)} = 2/m at T = 2");
  add_io(gc, gc_io);
  gc->callback([&] {
    action = [&] {
      const auto g = io::gap_instance_from_json(read_doc(gc_io.in));
      write_doc(gc_io.out, io::to_json(fractional_certificate(g), &g.instance));
      return kOk;
    };
  });

  // gap-audit
  Io ga_io;
  std::string ga_assignments;
  std::size_t ga_pool = 100;
  std::uint64_t ga_seed = 0;
  auto* ga = app.add_subcommand("gap-audit", "heavy-class coverage audit over assignments");
  ga->add_option("--assignments", ga_assignments, "assignment(s) file; default is a heuristic pool");
  ga->add_option("--pool", ga_pool, "heuristic pool size");
  auto* ga_seed_opt = ga->add_option("--seed", ga_seed, "heuristic pool seed (required without --assignments)");
  add_io(ga, ga_io);
  ga->callback([&] {
    action = [&] {
      if (ga_assignments.empty() && ga_seed_opt->count() == 0) {
        throw std::invalid_argument("--seed is required when the pool is generated");
      }
      const auto g = io::gap_instance_from_json(read_doc(ga_io.in));
      const auto pre = audit_preconditions(g);
      Json out = io::document("coverage-audits");
      Json items = Json::array();
      int code = kOk;
      std::size_t audited = 0;
      auto audit_one = [&](const Assignment& a) {
        const auto audit = class_coverage_audit(g, a, pre);
        if (audit.verdict == AuditVerdict::NotApplicable) code = kError;
        if (audit.verdict == AuditVerdict::Fails && code == kOk) code = kRefuted;
        items.push_back(io::to_json(audit));
        ++audited;
      };
      if (ga_assignments.empty()) {
        out["pool"] = {{"count", ga_pool}, {"seed", ga_seed}};
        for_each_heuristic_assignment(g.instance, ga_pool, ga_seed, audit_one);
      } else {
        for (const auto& a : io::assignments_from_json(read_doc(ga_assignments))) audit_one(a);
      }
      out["audits"] = items;
      write_doc(ga_io.out, out);
      note(std::to_string(audited) + " assignments audited");
      return code;
    };
  });

  // solve-lp
  Io sl_io;
  std::optional<double> sl_T;
  double sl_tol = 1e-3;
  std::uint64_t sl_cap = 1U << 20;
  auto* sl = app.add_subcommand("solve-lp", "configuration LP: feasibility at --T, else binary search for T*");
  sl->add_option("--T", sl_T, "threshold to test");
  sl->add_option("--tol-rel", sl_tol, "relative tolerance of the search")->check(CLI::PositiveNumber);
  sl->add_option("--cap", sl_cap, "configuration cap per machine");
  add_io(sl, sl_io);
  sl->callback([&] {
    action = [&] {
      const auto inst = io::any_instance_from_json(read_doc(sl_io.in));
      // embed small instances so check-fractional can run on the output alone
      const SchedulingInstance* embed = inst.entry_count() <= kEmbedLimit ? &inst : nullptr;
      if (sl_T) {
        std::vector<Configuration> pool;
        for (MachineId i = 0; i < inst.machine_count(); ++i) {
          auto c = enumerate_valid_configs(inst, i, *sl_T, sl_cap);
          pool.insert(pool.end(), c.begin(), c.end());
        }
        const auto res = solve_feasibility(inst, *sl_T, pool);
        if (res.status == LpStatus::Feasible) {
          write_doc(sl_io.out, io::to_json(*res.solution, embed));
          note("feasible at T = " + std::to_string(*sl_T));
          return kOk;
        }
        Json out = io::document("lp-verdict");
        out["threshold"] = *sl_T;
        out["status"] = res.status == LpStatus::Marginal ? "marginal" : "infeasible";
        out["residual"] = res.residual;
        write_doc(sl_io.out, out);
        return res.status == LpStatus::Marginal ? kError : kRefuted;
      }
      const auto opt = lp_opt_T(inst, sl_tol, sl_cap);
      Json out = io::to_json(opt.solution, embed);
      out["lower_bound"] = opt.lower_bound;
      out["upper_bound"] = opt.upper_bound;
      out["probes"] = opt.probes;
      write_doc(sl_io.out, out);
      note("T* = " + std::to_string(opt.threshold));
      return kOk;
    };
  });

  // brute-opt
  Io bo_io;
  std::uint64_t bo_budget = 10'000'000;
  auto* bo = app.add_subcommand("brute-opt", "exact minimum makespan by branch and bound");
  bo->add_option("--budget", bo_budget, "node budget");
  add_io(bo, bo_io);
  bo->callback([&] {
    action = [&] {
      const auto inst = io::any_instance_from_json(read_doc(bo_io.in));
      const auto res = brute_force_opt(inst, bo_budget);
      Json out = io::to_json(res.assignment);
      out["makespan"] = res.makespan;
      out["nodes"] = res.nodes;
      write_doc(bo_io.out, out);
      note("optimal makespan " + std::to_string(res.makespan));
      return kOk;
    };
  });

  // heuristics
  Io he_io;
  std::size_t he_count = 10;
  std::uint64_t he_seed = 0;
  auto* he = app.add_subcommand("heuristics", "greedy, random and local-search assignments");
  he->add_option("--count", he_count)->check(CLI::PositiveNumber);
  he->add_option("--seed", he_seed)->required();
  add_io(he, he_io);
  he->callback([&] {
    action = [&] {
      const auto inst = io::any_instance_from_json(read_doc(he_io.in));
      const auto pool = heuristic_assignments(inst, he_count, he_seed);
      Json out = io::assignments_to_json(pool);
      Json spans = Json::array();
      for (const auto& a : pool) spans.push_back(makespan(inst, a));
      out["makespans"] = spans;
      out["seed"] = he_seed;
      write_doc(he_io.out, out);
      return kOk;
    };
  });

  // gen-labelcover
  Io gl_io;
  std::size_t gl_n = 6, gl_d = 3, gl_labels = 8;
  std::uint64_t gl_seed = 0;
  bool gl_unplanted = false;
  auto* gl = app.add_subcommand("gen-labelcover", "d-regular label cover with a planted perfect labeling");
  gl->add_option("--n", gl_n, "vertices per side");
  gl->add_option("--d", gl_d, "degree");
  gl->add_option("--labels", gl_labels, "label count L");
  gl->add_option("--seed", gl_seed)->required();
  gl->add_flag("--unplanted", gl_unplanted, "uniformly random projections, no planted labeling");
  add_io(gl, gl_io, false);
  gl->callback([&] {
    action = [&] {
      Json out;
      if (gl_unplanted) {
        out = io::to_json(random_label_cover(gl_n, gl_d, gl_labels, gl_seed));
      } else {
        const auto pl = planted_random(gl_n, gl_d, gl_labels, gl_seed);
        out = io::to_json(pl.instance, &pl.planted);
      }
      out["generator"] = {{"n", gl_n}, {"d", gl_d}, {"labels", gl_labels}, {"seed", gl_seed},
                          {"planted", !gl_unplanted}};
      write_doc(gl_io.out, out);
      return kOk;
    };
  });

  // power-labelcover
  Io pl_io;
  std::size_t pl_k = 2;
  std::uint64_t pl_budget = 50'000'000;
  auto* pw = app.add_subcommand("power-labelcover", "k-th power (tuples of vertices, edges and labels)");
  pw->add_option("--k", pl_k)->check(CLI::PositiveNumber);
  pw->add_option("--budget", pl_budget, "cap on |E|^k * L^k");
  add_io(pw, pl_io);
  pw->callback([&] {
    action = [&] {
      const auto doc = read_doc(pl_io.in);
      const auto lc = io::label_cover_from_json(doc);
      const auto planted = io::planted_from_json(doc);
      const auto p = power(lc, pl_k, pl_budget);
      if (planted) {
        const auto lifted = power_labeling(lc, *planted, pl_k);
        write_doc(pl_io.out, io::to_json(p, &lifted));
      } else {
        write_doc(pl_io.out, io::to_json(p));
      }
      return kOk;
    };
  });

  // brute-labelcover
  Io bl_io;
  std::uint64_t bl_budget = 50'000'000;
  auto* bl = app.add_subcommand("brute-labelcover", "exact label cover optimum");
  bl->add_option("--budget", bl_budget, "node budget");
  add_io(bl, bl_io);
  bl->callback([&] {
    action = [&] {
      const auto lc = io::label_cover_from_json(read_doc(bl_io.in));
      const auto opt = brute_opt(lc, bl_budget);
      Json out = io::to_json(opt.witness);
      out["value"] = opt.value;
      out["satisfied"] = opt.satisfied;
      out["edges"] = lc.edges.size();
      out["nodes"] = opt.nodes;
      write_doc(bl_io.out, out);
      note("OPT = " + std::to_string(opt.satisfied) + "/" + std::to_string(lc.edges.size()));
      return kOk;
    };
  });

  // reduce
  Io rd_io;
  double rd_beta = 0.02;
  std::size_t rd_l = 3, rd_h = 1;
  std::string rd_sizes = "400";
  std::uint64_t rd_seed = 0;
  auto* rd = app.add_subcommand("reduce", "label cover to scheduling reduction");
  rd->add_option("--beta", rd_beta);
  rd->add_option("--l", rd_l, "cover budget");
  rd->add_option("--h", rd_h, "size classes");
  rd->add_option("--sizes", rd_sizes, "comma-separated |U^e(s)|");
  rd->add_option("--seed", rd_seed)->required();
  add_io(rd, rd_io);
  rd->callback([&] {
    action = [&] {
      const auto doc = read_doc(rd_io.in);
      const auto lc = io::label_cover_from_json(doc);
      const auto planted = io::planted_from_json(doc);
      const auto r = reduce(lc, ReductionParams{rd_beta, rd_l, rd_h, parse_sizes(rd_sizes), rd_seed});
      const auto scan = structural_scan(r);
      write_doc(rd_io.out, io::to_json(r, planted ? &*planted : nullptr));
      note(std::to_string(r.instance.machine_count()) + " machines, " + std::to_string(r.instance.job_count()) +
           " jobs, structural scan " + (scan.ok ? "ok" : "FAILED"));
      return scan.ok ? kOk : kRefuted;
    };
  });

  // completeness
  Io cp_io;
  std::string cp_labeling;
  auto* cp = app.add_subcommand("completeness", "assignment induced by a perfect labeling");
  cp->add_option("--labeling", cp_labeling, "labeling file (default: planted labeling)");
  add_io(cp, cp_io);
  cp->callback([&] {
    action = [&] {
      const auto doc = read_doc(cp_io.in);
      const auto r = io::reduced_from_json(doc);
      std::optional<Labeling> sigma;
      if (!cp_labeling.empty()) {
        sigma = io::labeling_from_json(read_doc(cp_labeling));
      } else {
        sigma = io::planted_from_json(doc);
      }
      if (!sigma) throw std::invalid_argument("no --labeling given and the instance has no planted labeling");
      const auto a = completeness_assignment(r, *sigma);
      const auto hp = heavy_profile_reduced(r, a);
      std::size_t mixed = 0;
      for (auto c : hp.classes_per_machine) mixed += c > 1 ? 1 : 0;
      const double mk = makespan(r.instance, a);
      Json out = io::to_json(a);
      out["makespan"] = mk;
      out["machines_with_several_classes"] = mixed;
      write_doc(cp_io.out, out);
      note("makespan " + std::to_string(mk));
      return mk < 2.0 && mixed == 0 ? kOk : kRefuted;
    };
  });

  // soundness-report
  Io sr_io;
  std::string sr_assignment;
  std::size_t sr_trials = 1000;
  std::uint64_t sr_seed = 0;
  bool sr_no_gate = false;
  auto* sr = app.add_subcommand("soundness-report", "label extraction from an assignment");
  sr->add_option("--assignment", sr_assignment, "assignment file (default: completeness assignment)");
  sr->add_option("--trials", sr_trials, "sampled labelings")->check(CLI::PositiveNumber);
  sr->add_option("--seed", sr_seed)->required();
  sr->add_flag("--no-scale-gate", sr_no_gate, "assert matching pairs even when 64T >= l");
  add_io(sr, sr_io);
  sr->callback([&] {
    action = [&] {
      const auto doc = read_doc(sr_io.in);
      const auto r = io::reduced_from_json(doc);
      Assignment a;
      if (!sr_assignment.empty()) {
        a = io::assignment_from_json(read_doc(sr_assignment));
      } else {
        const auto sigma = io::planted_from_json(doc);
        if (!sigma) throw std::invalid_argument("no --assignment given and the instance has no planted labeling");
        a = completeness_assignment(r, *sigma);
      }
      const auto rep = soundness_report(r, a, sr_trials, sr_seed, SoundnessOptions{!sr_no_gate});
      write_doc(sr_io.out, io::to_json(rep));
      for (const auto& n : rep.notes) note(n);
      note(std::to_string(rep.asserted) + " asserted edges, " + std::to_string(rep.vacuous_edges.size()) +
           " with unmet preconditions");
      const bool ok = rep.asserted_failures == 0 && rep.load_below_heavy == 0 && rep.good_violations == 0 &&
                      rep.mean_consistent && rep.bound_consistent;
      return ok ? kOk : kRefuted;
    };
  });

  // check-fractional
  Io cf_io;
  std::string cf_instance;
  std::optional<double> cf_T;
  double cf_tol = 1e-7;
  auto* cf = app.add_subcommand("check-fractional", "check coverage, per-machine weight and validity of a fractional solution");
  cf->add_option("--instance", cf_instance, "instance file (default: the one embedded in the solution)");
  cf->add_option("--T", cf_T, "override the threshold");
  cf->add_option("--tol", cf_tol)->check(CLI::PositiveNumber);
  add_io(cf, cf_io);
  cf->callback([&] {
    action = [&] {
      const auto doc = read_doc(cf_io.in);
      auto sol = io::fractional_from_json(doc);
      const auto inst = cf_instance.empty() ? io::any_instance_from_json(doc)
                                            : io::any_instance_from_json(read_doc(cf_instance));
      if (cf_T) sol.threshold = *cf_T;
      const auto rep = check_fractional_feasibility(inst, sol, cf_tol);
      write_doc(cf_io.out, io::to_json(rep));
      note(rep.feasible ? "feasible" : "infeasible");
      return rep.feasible ? kOk : kRefuted;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kError;
  }
  try {
    return action ? action() : kError;
  } catch (const io::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
  } catch (const ConstructionRejected& e) {
    std::cerr << "construction rejected: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid argument: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return kError;
}
