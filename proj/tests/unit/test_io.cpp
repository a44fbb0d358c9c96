#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "gmsched/io.hpp"
#include "support.hpp"

using namespace gmsched;
using io::Json;

namespace {

std::string error_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const io::ParseError& e) {
    return e.what();
  }
  return "";
}

// text -> document -> object -> document -> text
template <class Load>
void round_trip(const Json& doc, Load load) {
  const auto text = io::dump(doc);
  const auto again = io::dump(io::to_json(load(io::parse(text))));
  CHECK(again == text);
}

}  // namespace

TEST_CASE("set system file") {
  io::SetSystemFile f{build_random(50, 4, 3), 2, 0.05};
  const auto doc = io::to_json(f);
  CHECK(io::kind_of(doc) == "set-system");
  auto back = io::set_system_from_json(io::parse(io::dump(doc)));
  CHECK(back.system == f.system);
  CHECK(back.cover_budget == f.cover_budget);
  CHECK(back.beta == f.beta);
  io::SetSystemFile bare{f.system, std::nullopt, std::nullopt};
  auto bare_back = io::set_system_from_json(io::to_json(bare));
  CHECK_FALSE(bare_back.cover_budget.has_value());
  CHECK_FALSE(bare_back.beta.has_value());
}

TEST_CASE("instance, assignment, fractional solution") {
  Rng rng(2);
  auto inst = testing::random_restricted(rng, 3, 7);
  round_trip(io::to_json(inst), [](const Json& d) { return io::instance_from_json(d); });
  CHECK(io::instance_from_json(io::to_json(inst)) == inst);

  Assignment a = greedy_assignment(inst);
  a.machine_of[2] = kUnassigned;
  CHECK(io::assignment_from_json(io::to_json(a)) == a);
  auto pool = heuristic_assignments(inst, 4, 1);
  CHECK(io::assignments_from_json(io::assignments_to_json(pool)) == pool);

  auto sol = integral_solution(inst, pool[0], makespan(inst, pool[0]));
  auto doc = io::to_json(sol, &inst);
  auto back = io::fractional_from_json(io::parse(io::dump(doc)));
  CHECK(back.threshold == sol.threshold);
  REQUIRE(back.entries.size() == sol.entries.size());
  for (std::size_t k = 0; k < back.entries.size(); ++k) {
    CHECK(back.entries[k].config == sol.entries[k].config);
    CHECK(back.entries[k].weight == sol.entries[k].weight);
  }
  CHECK(io::any_instance_from_json(doc) == inst);
}

TEST_CASE("doubles survive the text round trip bit for bit") {
  auto inst = SchedulingInstance::from_triplets(1, 1, {{0, 0, 0.1 + 0.2}}, MixtureNorm({{1, 1.0 / 3.0}}));
  auto back = io::instance_from_json(io::parse(io::dump(io::to_json(inst))));
  CHECK(*back.size(0, 0) == 0.1 + 0.2);
  CHECK(back.norm(0).terms()[0].scale == 1.0 / 3.0);
}

TEST_CASE("label cover and labeling") {
  auto pl = planted_random(4, 2, 3, 5);
  auto doc = io::to_json(pl.instance, &pl.planted);
  auto text = io::dump(doc);
  auto parsed = io::parse(text);
  CHECK(io::label_cover_from_json(parsed) == pl.instance);
  CHECK(io::planted_from_json(parsed) == pl.planted);
  CHECK_FALSE(io::planted_from_json(io::to_json(pl.instance)).has_value());
  CHECK(io::labeling_from_json(io::to_json(pl.planted)) == pl.planted);
}

TEST_CASE("gap instance rebuilds from params and systems") {
  auto g = build_gap_instance(desk_params(4, 1, 1, 0.1, 100, 2));
  auto doc = io::to_json(g);
  auto back = io::gap_instance_from_json(io::parse(io::dump(doc)));
  CHECK(back.instance == g.instance);
  CHECK(back.params == g.params);
  CHECK(back.systems == g.systems);

  auto slim = io::to_json(g, false);
  CHECK_FALSE(slim.contains("instance"));
  CHECK(io::gap_instance_from_json(slim).instance == g.instance);

  // a tampered embedded instance is caught
  doc["instance"]["entries"][0][2] = 0.5;
  CHECK(error_of([&] { io::gap_instance_from_json(doc); }).find("field 'instance'") != std::string::npos);
}

TEST_CASE("reduced instance rebuilds from the label cover and seeds") {
  auto pl = planted_random(3, 2, 4, 1);
  auto r = reduce(pl.instance, ReductionParams{0.05, 2, 1, {40}, 7});
  auto doc = io::to_json(r, &pl.planted);
  auto back = io::reduced_from_json(io::parse(io::dump(doc)));
  CHECK(back.instance == r.instance);
  CHECK(back.systems == r.systems);
  CHECK(io::planted_from_json(doc) == pl.planted);
  CHECK(io::dump(io::to_json(back, &pl.planted)) == io::dump(doc));

  doc["system_seeds"][0][2] = 12345;
  CHECK(error_of([&] { io::reduced_from_json(doc); }).find("system_seeds[0]") != std::string::npos);
}

TEST_CASE("syntax errors name line and column") {
  const auto msg = error_of([] { io::parse("{\n  \"schema\": \"gmsched/1\",\n  \"kind\" \"x\"\n}"); });
  CHECK(msg.find("line 3") != std::string::npos);
  CHECK(msg.find("column") != std::string::npos);
}

TEST_CASE("field errors name the field") {
  auto doc = io::to_json(Assignment{{0, 1}});
  doc["schema"] = "other/9";
  CHECK(error_of([&] { io::assignment_from_json(doc); }).find("field 'schema'") != std::string::npos);

  auto wrong = io::to_json(Labeling{{0}});
  CHECK(error_of([&] { io::assignment_from_json(wrong); }).find("field 'kind'") != std::string::npos);

  Rng rng(1);
  auto inst = io::to_json(testing::random_restricted(rng, 2, 3));
  inst.erase("machines");
  CHECK(error_of([&] { io::instance_from_json(inst); }).find("field 'machines': missing") != std::string::npos);

  auto neg = io::to_json(io::SetSystemFile{build_random(10, 2, 1), std::nullopt, std::nullopt});
  neg["n"] = -3;
  CHECK(error_of([&] { io::set_system_from_json(neg); }).find("field 'n'") != std::string::npos);

  CHECK(error_of([] { io::kind_of(Json::array()); }) == "document is not a JSON object");
  CHECK(error_of([&] { io::any_instance_from_json(io::to_json(Labeling{{0}})); }).find("kind") != std::string::npos);
}

TEST_CASE("reports carry their kind") {
  auto ss = build_random(100, 4, 1);
  CHECK(io::kind_of(io::to_json(verify_exhaustive(ss, 1, 0.01))) == "setsystem-report");
  CHECK(io::kind_of(io::to_json(verify_monte_carlo(ss, 1, 0.01, 10, 1))) == "setsystem-report");
  CHECK(io::kind_of(io::to_json(check_norm_axioms(MixtureNorm({{1, 1.0}}), 3, 10, 1, 1e-9))) == "axiom-report");
  auto pl = planted_random(3, 2, 4, 1);
  auto r = reduce(pl.instance, ReductionParams{0.05, 2, 1, {40}, 7});
  CHECK(io::kind_of(io::to_json(structural_scan(r))) == "structural-report");
  auto rep = soundness_report(r, completeness_assignment(r, pl.planted), 10, 1);
  auto j = io::to_json(rep);
  CHECK(io::kind_of(j) == "soundness-report");
  CHECK(j["vacuous_edges"].size() == rep.vacuous_edges.size());
}

TEST_CASE("seeded pipelines serialize byte-identically") {
  auto twice = [](const std::function<std::string()>& f) { CHECK(f() == f()); };
  twice([] { return io::dump(io::to_json(io::SetSystemFile{build_random(500, 6, 3), 2, 0.01})); });
  twice([] { return io::dump(io::to_json(build_gap_instance(desk_params(4, 1, 1, 0.1, 100, 4)))); });
  twice([] {
    auto pl = planted_random(5, 3, 4, 8);
    return io::dump(io::to_json(pl.instance, &pl.planted));
  });
  twice([] {
    auto pl = planted_random(3, 2, 4, 2);
    auto r = reduce(pl.instance, ReductionParams{0.05, 2, 1, {40}, 3});
    auto pool = heuristic_assignments(r.instance, 5, 11);
    return io::dump(io::to_json(r, &pl.planted)) + io::dump(io::assignments_to_json(pool)) +
           io::dump(io::to_json(soundness_report(r, pool[3], 50, 4, SoundnessOptions{false})));
  });
  twice([] {
    Rng rng(6);
    auto inst = testing::random_restricted(rng, 3, 6);
    return io::dump(io::to_json(lp_opt_T(inst).solution, &inst));
  });
}
