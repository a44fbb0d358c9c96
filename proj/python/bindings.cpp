// Python surface: documents go in and out as JSON text, the package layer
// turns them into dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gmsched/io.hpp"

namespace py = pybind11;
using namespace gmsched;
using io::Json;

namespace {

std::string out(const Json& doc) { return io::dump(doc); }
Json in(const std::string& text) { return io::parse(text); }

MixtureNorm norm_of(const std::vector<std::pair<std::size_t, double>>& terms) {
  std::vector<ScaledTopKTerm> t;
  for (auto [k, c] : terms) t.push_back({k, c});
  return MixtureNorm(t);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  py::register_exception<io::ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<BudgetExceeded>(m, "BudgetExceeded", PyExc_RuntimeError);
  py::register_exception<ConstructionRejected>(m, "ConstructionRejected", PyExc_ValueError);

  m.def("norm_value", [](const std::vector<std::pair<std::size_t, double>>& terms, std::vector<double> v) {
    return norm_of(terms)(v);
  });
  m.def("top_k", [](std::vector<double> v, std::size_t k) { return top_k(v, k); });
  m.def("check_norm_axioms",
        [](const std::vector<std::pair<std::size_t, double>>& terms, std::size_t dim, std::size_t trials,
           std::uint64_t seed, double tol) { return out(io::to_json(check_norm_axioms(norm_of(terms), dim, trials, seed, tol))); },
        py::arg("terms"), py::arg("dimension"), py::arg("trials"), py::arg("seed"), py::arg("tol") = 1e-9);

  m.def("gen_setsystem", [](std::size_t n, std::size_t msets, std::uint64_t seed) {
    return out(io::to_json(io::SetSystemFile{build_random(n, msets, seed), std::nullopt, std::nullopt}));
  });
  m.def("verify_setsystem", [](const std::string& doc, std::size_t l, double beta) {
    return out(io::to_json(verify_exhaustive(io::set_system_from_json(in(doc)).system, l, beta)));
  });

  m.def("gen_gap",
        [](std::size_t machines, std::size_t h, std::size_t l, double beta, std::size_t n1, std::uint64_t seed,
           bool embed) { return out(io::to_json(build_gap_instance(desk_params(machines, h, l, beta, n1, seed)), embed)); },
        py::arg("machines") = 8, py::arg("h") = 2, py::arg("l") = 2, py::arg("beta") = 0.05, py::arg("n1") = 16,
        py::arg("seed") = 1, py::arg("embed_instance") = false);
  m.def("gap_certificate", [](const std::string& doc) {
    const auto g = io::gap_instance_from_json(in(doc));
    return out(io::to_json(fractional_certificate(g)));
  });
  m.def("gap_check_certificate", [](const std::string& doc, double tol) {
    const auto g = io::gap_instance_from_json(in(doc));
    return out(io::to_json(check_fractional_feasibility(g.instance, fractional_certificate(g), tol)));
  }, py::arg("gap"), py::arg("tol") = 1e-12);

  m.def("solve_lp", [](const std::string& doc, double tol_rel) {
    const auto inst = io::any_instance_from_json(in(doc));
    const auto opt = lp_opt_T(inst, tol_rel);
    auto j = io::to_json(opt.solution, &inst);
    j["lower_bound"] = opt.lower_bound;
    j["upper_bound"] = opt.upper_bound;
    return out(j);
  }, py::arg("instance"), py::arg("tol_rel") = 1e-3);
  m.def("brute_opt", [](const std::string& doc, std::uint64_t budget) {
    const auto inst = io::any_instance_from_json(in(doc));
    const auto r = brute_force_opt(inst, budget);
    auto j = io::to_json(r.assignment);
    j["makespan"] = r.makespan;
    return out(j);
  }, py::arg("instance"), py::arg("budget") = 10'000'000);
  m.def("makespan", [](const std::string& inst, const std::string& a) {
    return makespan(io::any_instance_from_json(in(inst)), io::assignment_from_json(in(a)));
  });
  m.def("check_fractional", [](const std::string& inst, const std::string& sol, double tol) {
    return out(io::to_json(check_fractional_feasibility(io::any_instance_from_json(in(inst)),
                                                        io::fractional_from_json(in(sol)), tol)));
  }, py::arg("instance"), py::arg("solution"), py::arg("tol") = 1e-7);

  m.def("gen_labelcover", [](std::size_t n, std::size_t d, std::size_t labels, std::uint64_t seed) {
    const auto pl = planted_random(n, d, labels, seed);
    return out(io::to_json(pl.instance, &pl.planted));
  });
  m.def("brute_labelcover", [](const std::string& doc) {
    const auto r = brute_opt(io::label_cover_from_json(in(doc)));
    auto j = io::to_json(r.witness);
    j["value"] = r.value;
    j["satisfied"] = r.satisfied;
    return out(j);
  });
  m.def("power_labelcover", [](const std::string& doc, std::size_t k) {
    return out(io::to_json(power(io::label_cover_from_json(in(doc)), k)));
  });

  m.def("reduce", [](const std::string& lc_doc, double beta, std::size_t l, std::size_t h,
                     std::vector<std::size_t> sizes, std::uint64_t seed) {
    const auto parsed = in(lc_doc);
    const auto planted = io::planted_from_json(parsed);
    const auto r = reduce(io::label_cover_from_json(parsed), ReductionParams{beta, l, h, std::move(sizes), seed});
    return out(io::to_json(r, planted ? &*planted : nullptr));
  }, py::arg("labelcover"), py::arg("beta") = 0.02, py::arg("l") = 3, py::arg("h") = 1,
     py::arg("sizes") = std::vector<std::size_t>{400}, py::arg("seed") = 1);
  m.def("completeness", [](const std::string& reduced, const std::string& labeling) {
    const auto r = io::reduced_from_json(in(reduced));
    return out(io::to_json(completeness_assignment(r, io::labeling_from_json(in(labeling)))));
  });
  m.def("soundness_report", [](const std::string& reduced, const std::string& a, std::size_t trials,
                               std::uint64_t seed, bool gate) {
    const auto r = io::reduced_from_json(in(reduced));
    return out(io::to_json(soundness_report(r, io::assignment_from_json(in(a)), trials, seed, SoundnessOptions{gate})));
  }, py::arg("reduced"), py::arg("assignment"), py::arg("trials") = 1000, py::arg("seed") = 1,
     py::arg("require_scale_gate") = true);
}
