#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "letq/diagnosis.hpp"
#include "letq/labels.hpp"
#include "letq/rng.hpp"
#include "letq/serialize.hpp"
#include "letq/structure.hpp"
#include "letq/topology.hpp"

namespace py = pybind11;
using namespace letq;

namespace {

py::object to_py(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

FaultSet to_fault(const Topology& topo, const std::vector<std::string>& labels) {
  return FaultSet::from_labels(topo, labels);
}

}  // namespace

PYBIND11_MODULE(letq, m) {
  m.doc() = "locally exchanged twisted cube toolkit";
  m.attr("DEFAULT_SEED") = kDefaultSeed;

  py::class_<Topology>(m, "Topology")
      .def_property_readonly("width", &Topology::width)
      .def("vertex_count", &Topology::vertex_count)
      .def("edge_count", &Topology::edge_count)
      .def("labels",
           [](const Topology& t) {
             std::vector<std::string> out;
             out.reserve(t.vertex_count());
             for (VertexId v = 0; v < t.vertex_count(); ++v) out.push_back(t.label(v));
             return out;
           })
      .def("neighbors",
           [](const Topology& t, const std::string& label) {
             std::vector<std::string> out;
             for (VertexId u : t.neighbors(t.id_of(label))) out.push_back(t.label(u));
             return out;
           })
      .def("adjacent",
           [](const Topology& t, const std::string& a, const std::string& b) {
             return t.adjacent(t.id_of(a), t.id_of(b));
           })
      .def("edges",
           [](const Topology& t) {
             std::vector<std::pair<std::string, std::string>> out;
             out.reserve(t.edge_count());
             for (auto [u, v] : t.edges()) out.emplace_back(t.label(u), t.label(v));
             return out;
           })
      .def("edge_list", [](const Topology& t) { return edge_list_text(t); })
      .def(
          "dot", [](const Topology& t, bool clusters) { return dot_text(t, clusters); },
          py::arg("clusters") = false)
      .def("to_json", [](const Topology& t) { return to_py(adjacency_json(t)); });

  m.def(
      "build", [](int s, int t) { return Topology::build_letq({s, t}); }, py::arg("s"), py::arg("t"));
  m.def(
      "build_ltq", [](int n) { return Topology::build_ltq(n); }, py::arg("n"));

  m.def(
      "kappa_formula", [](int s, int t, int g) { return kappa_g_formula({s, t}, g); }, py::arg("s"),
      py::arg("t"), py::arg("g"));
  m.def(
      "kappa_bruteforce",
      [](const Topology& topo, int g, std::uint64_t budget, int jobs) {
        return to_py(cut_report_json(topo, kappa_g_bruteforce(topo, g, budget, jobs)));
      },
      py::arg("topo"), py::arg("g"), py::arg("budget") = 0, py::arg("jobs") = 1);

  m.def(
      "fault_witness",
      [](const Topology& topo, int g) { return to_py(witness_json(topo, good_neighbor_fault_set(topo, g))); },
      py::arg("topo"), py::arg("g"));
  m.def(
      "is_good_neighbor",
      [](const Topology& topo, const std::vector<std::string>& fault, int g) {
        return is_g_good_neighbor_set(topo, to_fault(topo, fault), g);
      },
      py::arg("topo"), py::arg("fault"), py::arg("g"));

  m.def(
      "tg_formula",
      [](int s, int t, int g, const std::string& model) { return tg_formula({s, t}, g, parse_model(model)); },
      py::arg("s"), py::arg("t"), py::arg("g"), py::arg("model"));

  m.def(
      "distinguishable",
      [](const Topology& topo, const std::string& model, const std::vector<std::string>& f1,
         const std::vector<std::string>& f2) {
        FaultSet a = to_fault(topo, f1), b = to_fault(topo, f2);
        return to_py(distinguish_report_json(topo, a, b, distinguishable(topo, parse_model(model), a, b)));
      },
      py::arg("topo"), py::arg("model"), py::arg("f1"), py::arg("f2"));

  m.def(
      "indistinguishable_witness",
      [](const Topology& topo, int g, const std::string& model) {
        auto [f1, f2] = indistinguishable_witness(topo, g, parse_model(model));
        return py::make_tuple(f1.labels(topo), f2.labels(topo));
      },
      py::arg("topo"), py::arg("g"), py::arg("model"));

  m.def(
      "verify_tg",
      [](const Topology& topo, int g, const std::string& model, const std::string& mode,
         std::uint64_t samples, std::uint64_t seed, std::uint64_t budget, int jobs, long claim) {
        VerifyOptions opt;
        opt.mode = mode == "sampled" ? VerifyMode::Sampled : VerifyMode::Exhaustive;
        opt.samples = samples;
        opt.seed = seed;
        opt.budget = budget;
        opt.jobs = jobs;
        opt.claimed_override = claim;
        return to_py(verify_report_json(topo, verify_tg(topo, g, parse_model(model), opt)));
      },
      py::arg("topo"), py::arg("g"), py::arg("model"), py::arg("mode") = "exhaustive",
      py::arg("samples") = 100000, py::arg("seed") = kDefaultSeed, py::arg("budget") = 0,
      py::arg("jobs") = 1, py::arg("claim") = 0);

  m.def(
      "generate_syndrome",
      [](const Topology& topo, const std::string& model, const std::vector<std::string>& fault,
         const std::string& policy, std::uint64_t seed) {
        TestAssignment asg = TestAssignment::build(topo, parse_model(model));
        Syndrome syn = generate_syndrome(topo, asg, to_fault(topo, fault), parse_policy(policy, seed));
        return std::vector<int>(syn.begin(), syn.end());
      },
      py::arg("topo"), py::arg("model"), py::arg("fault"), py::arg("policy") = "random",
      py::arg("seed") = kDefaultSeed);

  m.def(
      "diagnose",
      [](const Topology& topo, const std::string& model, const std::vector<int>& syndrome, int g, long T,
         std::uint64_t budget) {
        TestAssignment asg = TestAssignment::build(topo, parse_model(model));
        if (syndrome.size() != asg.size()) throw std::invalid_argument("syndrome length mismatch");
        Syndrome syn(syndrome.begin(), syndrome.end());
        DiagnoseResult res = diagnose(topo, asg, syn, g, T, budget);
        py::list cands;
        for (const FaultSet& f : res.candidates) cands.append(f.labels(topo));
        py::dict out;
        out["candidates"] = std::move(cands);
        out["partial"] = res.partial;
        out["enumerated"] = res.enumerated;
        return out;
      },
      py::arg("topo"), py::arg("model"), py::arg("syndrome"), py::arg("g"), py::arg("T"),
      py::arg("budget") = 0);
}
