#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "votecut/control.hpp"
#include "votecut/control_format.hpp"
#include "votecut/dcdc.hpp"
#include "votecut/error.hpp"
#include "votecut/formats.hpp"
#include "votecut/ranked_pairs.hpp"
#include "votecut/reductions.hpp"
#include "votecut/schulze.hpp"
#include "votecut/verify.hpp"
#include "votecut/vertex_cut.hpp"

namespace py = pybind11;
using namespace votecut;

namespace {

TieBreakPolicy policy_from(const std::optional<std::string>& favor) {
  return favor ? TieBreakPolicy::favor(*favor) : TieBreakPolicy::lexicographic();
}

std::vector<std::string> names_of(const WeightedMajorityGraph& g, const std::vector<CandidateIndex>& idx) {
  std::vector<std::string> out;
  for (int c : idx) out.push_back(g.name(c));
  return out;
}

py::dict witness_dict(const ControlWitness& w) {
  py::dict d;
  d["added_candidates"] = w.added_candidates;
  d["deleted_candidates"] = w.deleted_candidates;
  d["deleted_ballots"] = w.deleted_ballots;
  d["added_ballots"] = w.added_ballots;
  py::list bribed;
  for (const auto& b : w.bribed)
    bribed.append(py::make_tuple(b.from_spare ? "spare" : "registered", b.index, b.ranking));
  d["bribed"] = bribed;
  return d;
}

}  // namespace

PYBIND11_MODULE(votecut, m) {
  m.doc() = "Schulze and ranked pairs winners, election control and vertex cuts";

  auto error = py::register_exception<Error>(m, "Error", PyExc_ValueError);
  py::register_exception<SearchRefused>(m, "SearchRefused", error.ptr());

  py::class_<Election>(m, "Election")
      .def(py::init<std::vector<std::string>>(), py::arg("candidates"))
      .def_property_readonly("candidates", &Election::candidates)
      .def("add_ballot",
           py::overload_cast<const std::vector<std::string>&, int>(&Election::add_ballot),
           py::arg("ranking"), py::arg("multiplicity") = 1)
      .def_property_readonly("ballot_count", &Election::ballot_count)
      .def("__str__", [](const Election& e) { return serialize_election(e); });

  py::class_<WeightedMajorityGraph>(m, "MarginGraph")
      .def(py::init<std::vector<std::string>>(), py::arg("candidates"))
      .def_property_readonly("candidates", &WeightedMajorityGraph::candidates)
      .def("margin",
           [](const WeightedMajorityGraph& g, const std::string& c, const std::string& d) {
             return g.margin(g.index_of(c), g.index_of(d));
           })
      .def("set_margin",
           py::overload_cast<std::string_view, std::string_view, int>(&WeightedMajorityGraph::set_margin))
      .def("__eq__", [](const WeightedMajorityGraph& a, const WeightedMajorityGraph& b) { return a == b; })
      .def("__str__", [](const WeightedMajorityGraph& g) { return serialize_wmg(g); });

  m.def("parse_election", &parse_election, py::arg("text"));
  m.def("parse_wmg", &parse_wmg, py::arg("text"));
  m.def("build_wmg", &build_wmg, py::arg("election"));
  m.def("mcgarvey_realize", py::overload_cast<const WeightedMajorityGraph&>(&mcgarvey_realize),
        py::arg("target"));

  m.def(
      "schulze_winners",
      [](const WeightedMajorityGraph& g) { return names_of(g, schulze_winners(g)); }, py::arg("graph"));
  m.def(
      "strongest_paths",
      [](const WeightedMajorityGraph& g) {
        const auto p = strongest_paths(g);
        std::map<std::pair<std::string, std::string>, int> out;
        for (int c = 0; c < g.candidate_count(); ++c)
          for (int d = 0; d < g.candidate_count(); ++d)
            if (c != d) out[{g.name(c), g.name(d)}] = p(c, d);
        return out;
      },
      py::arg("graph"));
  m.def(
      "ranked_pairs_winner",
      [](const WeightedMajorityGraph& g, const std::optional<std::string>& favor) {
        return g.name(ranked_pairs_winner(g, policy_from(favor)));
      },
      py::arg("graph"), py::arg("favor") = py::none());

  m.def(
      "solve_control",
      [](const std::string& instance_text, bool force) {
        const auto inst = parse_instance(instance_text);
        const auto r = solve_control(inst, SolveOptions{force});
        py::dict d;
        d["decision"] = r.decision;
        d["witness"] = r.witness ? py::object(witness_dict(*r.witness)) : py::none();
        d["evaluated"] = r.evaluated;
        return d;
      },
      py::arg("instance_text"), py::arg("force") = false);
  m.def(
      "solve_dcdc",
      [](const WeightedMajorityGraph& g, const std::string& despised, int limit) {
        const auto r = solve_dcdc_nonunique(g, g.index_of(despised), limit);
        py::dict d;
        d["decision"] = r.decision;
        d["deleted"] = r.deleted;
        d["rival"] = r.rival ? py::object(py::str(*r.rival)) : py::none();
        return d;
      },
      py::arg("graph"), py::arg("despised"), py::arg("limit"));
  m.def(
      "min_vertex_cut",
      [](const std::vector<std::string>& vertices, const std::vector<std::pair<std::string, std::string>>& edges,
         const std::string& s, const std::string& t) {
        DiGraph g(vertices);
        for (const auto& [u, v] : edges) g.add_edge(g.index_of(u), g.index_of(v));
        const auto cut = min_st_vertex_cut(g, g.index_of(s), g.index_of(t));
        std::vector<std::string> out;
        for (int v : cut.vertices) out.push_back(g.name(v));
        return out;
      },
      py::arg("vertices"), py::arg("edges"), py::arg("s"), py::arg("t"));
  m.def(
      "reduce_3sat",
      [](const std::string& cnf_text, const std::string& variant) {
        const auto art = threesat_to_ccdc(parse_cnf(cnf_text), parse_sat_variant(variant));
        return serialize_instance(art.instance("ccdc"));
      },
      py::arg("cnf_text"), py::arg("variant") = "fixed-nonunique");
  m.def(
      "run_sweep",
      [](const std::string& suite, std::uint64_t cases, std::uint64_t seed) {
        SweepOptions opt;
        opt.cases = cases;
        opt.seed = seed;
        const auto rep = run_sweep(suite, opt);
        py::dict d;
        d["suite"] = rep.suite;
        d["cases"] = rep.cases;
        d["failures"] = rep.failures;
        d["passed"] = rep.passed();
        return d;
      },
      py::arg("suite"), py::arg("cases") = 0, py::arg("seed") = SweepOptions{}.seed);
  m.def("sweep_names", &sweep_names);
}
