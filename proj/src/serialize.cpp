#include "letq/serialize.hpp"

#include <algorithm>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace letq {

std::string model_name(Model model) { return model == Model::PMC ? "pmc" : "mm"; }

Model parse_model(std::string_view text) {
  if (text == "pmc") return Model::PMC;
  if (text == "mm" || text == "mmstar" || text == "mm*") return Model::MMStar;
  throw std::invalid_argument("model must be pmc or mm");
}

std::string policy_name(const AdversaryPolicy& policy) {
  switch (policy.kind) {
    case AdversaryPolicy::Kind::AllZeros:
      return "all-zeros";
    case AdversaryPolicy::Kind::AllOnes:
      return "all-ones";
    case AdversaryPolicy::Kind::SeededRandom:
      return "seeded-random(" + std::to_string(policy.seed) + ")";
  }
  return "all-zeros";
}

AdversaryPolicy parse_policy(std::string_view text, std::uint64_t seed) {
  if (text == "zeros" || text == "all-zeros") return AdversaryPolicy::zeros();
  if (text == "ones" || text == "all-ones") return AdversaryPolicy::ones();
  if (text == "random" || text == "seeded-random") return AdversaryPolicy::seeded(seed);
  throw std::invalid_argument("policy must be zeros, ones, or random");
}

std::string edge_list_text(const Topology& topo) {
  std::string out;
  for (auto [u, v] : topo.edges()) {
    out += topo.label(u);
    out += ' ';
    out += topo.label(v);
    out += '\n';
  }
  return out;
}

std::vector<Edge> parse_edge_list(std::istream& in, const CubeParams& p) {
  p.validate();
  std::vector<Edge> edges;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, extra;
    if (!(row >> a >> b) || (row >> extra))
      throw std::invalid_argument("edge list line " + std::to_string(lineno) + " is not 'label label'");
    edges.emplace_back(static_cast<VertexId>(parse_label(a, p.width())),
                       static_cast<VertexId>(parse_label(b, p.width())));
  }
  return edges;
}

std::string dot_text(const Topology& topo, bool group_clusters) {
  std::ostringstream out;
  std::string name = topo.family() == Family::LeTQ
                         ? "letq_" + std::to_string(topo.params().s) + "_" + std::to_string(topo.params().t)
                         : "ltq_" + std::to_string(topo.ltq_dim());
  out << "graph " << name << " {\n";
  if (group_clusters && topo.family() == Family::LeTQ) {
    ClusterPartition part = cluster_partition(topo);
    const CubeParams& p = topo.params();
    for (std::size_t i = 0; i < part.class0.size(); ++i) {
      out << "  subgraph cluster_l" << render_label(i, p.t) << " {\n";
      for (VertexId v : part.class0[i]) out << "    \"" << topo.label(v) << "\";\n";
      out << "  }\n";
    }
    for (std::size_t i = 0; i < part.class1.size(); ++i) {
      out << "  subgraph cluster_r" << render_label(i, p.s) << " {\n";
      for (VertexId v : part.class1[i]) out << "    \"" << topo.label(v) << "\";\n";
      out << "  }\n";
    }
  }
  for (auto [u, v] : topo.edges()) out << "  \"" << topo.label(u) << "\" -- \"" << topo.label(v) << "\";\n";
  out << "}\n";
  return out.str();
}

namespace {

Json label_array(const Topology& topo, const std::vector<VertexId>& ids) {
  Json arr = Json::array();
  for (VertexId v : ids) arr.push_back(topo.label(v));
  return arr;
}

}  // namespace

Json adjacency_json(const Topology& topo) {
  Json j;
  if (topo.family() == Family::LeTQ) {
    j["family"] = "letq";
    j["s"] = topo.params().s;
    j["t"] = topo.params().t;
  } else {
    j["family"] = "ltq";
    j["n"] = topo.ltq_dim();
  }
  Json verts = Json::array();
  for (VertexId v = 0; v < topo.vertex_count(); ++v) verts.push_back(topo.label(v));
  j["vertices"] = std::move(verts);
  Json edges = Json::array();
  for (auto [u, v] : topo.edges()) edges.push_back(Json::array({topo.label(u), topo.label(v)}));
  j["edges"] = std::move(edges);
  return j;
}

Json cut_report_json(const Topology& topo, const CutReport& rep) {
  Json j;
  j["g"] = rep.g;
  j["formula"] = rep.formula;
  if (rep.certified)
    j["certified"] = *rep.certified;
  else
    j["certified"] = nullptr;
  j["certified_at_least"] = rep.certified_at_least;
  j["partial"] = rep.partial;
  j["examined"] = rep.examined;
  j["witness"] = label_array(topo, rep.witness);
  j["components"] = rep.component_sizes;
  return j;
}

Json verify_report_json(const Topology& topo, const VerifyReport& rep) {
  Json j;
  j["s"] = rep.params.s;
  j["t"] = rep.params.t;
  j["g"] = rep.g;
  j["model"] = model_name(rep.model);
  j["claimed_tg"] = rep.claimed;
  j["mode"] = rep.mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled";
  j["enumerated_sets"] = rep.enumerated_sets;
  j["checked_pairs"] = rep.checked_pairs;
  if (rep.mode == VerifyMode::Sampled) j["rejected_samples"] = rep.rejected_samples;
  j["verdict"] = rep.partial ? "partial" : (rep.passed ? "pass" : "fail");
  if (rep.counterexample) {
    j["counterexample"] = Json{{"F1", rep.counterexample->first.labels(topo)},
                               {"F2", rep.counterexample->second.labels(topo)}};
  }
  if (!rep.partial)
    j["witness_pair"] = Json{{"F1", rep.witness_pair.first.labels(topo)},
                             {"F2", rep.witness_pair.second.labels(topo)}};
  return j;
}

Json witness_json(const Topology& topo, const GoodNeighborWitness& wit) {
  Json j;
  j["g"] = wit.level;
  j["core"] = label_array(topo, wit.core);
  j["boundary"] = label_array(topo, wit.boundary);
  j["closed_hull"] = label_array(topo, wit.closed_hull);
  return j;
}

Json distinguish_report_json(const Topology& topo, const FaultSet& f1, const FaultSet& f2,
                             const DistinguishReport& rep) {
  Json j;
  j["model"] = model_name(rep.model);
  j["f1"] = f1.labels(topo);
  j["f2"] = f2.labels(topo);
  j["verdict"] = rep.distinguishable ? "distinguishable" : "indistinguishable";
  if (rep.witness) {
    Json w;
    w["condition"] = rep.witness->condition;
    w["u"] = topo.label(rep.witness->u);
    w["v"] = topo.label(rep.witness->v);
    if (rep.witness->condition != 0) w["w"] = topo.label(rep.witness->w);
    j["witness"] = std::move(w);
  }
  return j;
}

Json syndrome_json(const Topology& topo, const TestAssignment& assignment, const Syndrome& syndrome) {
  if (syndrome.size() != assignment.size()) throw std::invalid_argument("syndrome length mismatch");
  Json arr = Json::array();
  if (assignment.model() == Model::PMC) {
    const auto& tests = assignment.pmc_tests();
    for (std::size_t i = 0; i < tests.size(); ++i) {
      Json t;
      t["test"] = Json{{"tester", topo.label(tests[i].tester)}, {"tested", topo.label(tests[i].tested)}};
      t["outcome"] = static_cast<int>(syndrome[i]);
      arr.push_back(std::move(t));
    }
  } else {
    const auto& tests = assignment.mm_tests();
    for (std::size_t i = 0; i < tests.size(); ++i) {
      Json t;
      t["test"] = Json{{"tester", topo.label(tests[i].tester)},
                       {"left", topo.label(tests[i].left)},
                       {"right", topo.label(tests[i].right)}};
      t["outcome"] = static_cast<int>(syndrome[i]);
      arr.push_back(std::move(t));
    }
  }
  return arr;
}

std::vector<std::string> read_label_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    out.push_back(line);
  }
  return out;
}

std::string syndrome_digest(const Syndrome& syndrome) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (auto b : syndrome) {
    h ^= static_cast<std::uint64_t>(b + '0');
    h *= 0x100000001b3ULL;
  }
  char buf[19];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace letq
