// Batch front end: build and export cubes, run the property suite, certify
// cut sizes, verify diagnosability thresholds, and replay fault scenarios.
//
// Exit codes: 0 checks pass / unique diagnosis, 1 a check or verification
// failed, 2 usage or input error, 3 work capped by budget (partial result).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "letq/diagnosis.hpp"
#include "letq/isomorphism.hpp"
#include "letq/labels.hpp"
#include "letq/rng.hpp"
#include "letq/serialize.hpp"
#include "letq/structure.hpp"
#include "letq/topology.hpp"

using namespace letq;

namespace {

int g_rc = 0;

void emit(const std::string& output, const std::string& content) {
  if (output.empty()) {
    std::fwrite(content.data(), 1, content.size(), stdout);
    return;
  }
  std::ofstream out(output, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + output + " for writing");
  out << content;
  if (!out) throw std::runtime_error("write to " + output + " failed");
}

// Runs with s > t are transposed onto the (t, s) cube through the verified
// block-swap map; every emitted label then refers to the transposed cube.
struct CubeRun {
  Topology topo;
  CubeParams requested;
  bool swapped = false;
  std::vector<std::uint32_t> to_normal;  // requested-cube id -> run-cube id
};

CubeRun make_cube(int s, int t) {
  CubeParams requested{s, t};
  requested.validate();
  if (s <= t) return {Topology::build_letq(requested), requested, false, {}};
  IsoReport iso = swap_isomorphism(requested);
  if (!iso.found) throw std::runtime_error("block swap failed: " + iso.note);
  return {Topology::build_letq({t, s}), requested, true, std::move(iso.map)};
}

Json relabeling_json(const CubeRun& run) {
  Json j;
  j["requested"] = Json{{"s", run.requested.s}, {"t", run.requested.t}};
  j["run"] = Json{{"s", run.requested.t}, {"t", run.requested.s}};
  Json map = Json::object();
  int w = run.requested.width();
  for (Word u = 0; u < (Word{1} << w); ++u)
    map[render_label(u, w)] = render_label(run.to_normal[u], w);
  j["map"] = std::move(map);
  return j;
}

void announce_swap(const CubeRun& run) {
  if (!run.swapped) return;
  std::cerr << "note: s > t transposed onto LeTQ(" << run.requested.t << "," << run.requested.s
            << "); labels below use the transposed cube\n";
}

// JSON documents carry the map inline; text formats get it on stderr.
void emit_doc(const std::string& output, Json j, const CubeRun& run) {
  if (run.swapped) j["relabeling"] = relabeling_json(run);
  emit(output, j.dump(2) + "\n");
}

VertexId input_vertex(const CubeRun& run, const std::string& label) {
  Word u = parse_label(label, run.requested.width());
  return run.swapped ? run.to_normal[u] : static_cast<VertexId>(u);
}

FaultSet parse_fault(const CubeRun& run, const std::string& csv) {
  std::vector<VertexId> members;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) members.push_back(input_vertex(run, item));
  return FaultSet(run.topo, members);
}

FaultSet load_fault_file(const CubeRun& run, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read fault file " + path);
  std::vector<VertexId> members;
  for (const std::string& label : read_label_lines(in)) members.push_back(input_vertex(run, label));
  return FaultSet(run.topo, members);
}

// ---- props ----

struct PropCheck {
  std::string name;
  std::string status;  // ok | fail | skipped
  std::string detail;
};

class PropSuite {
 public:
  explicit PropSuite(std::vector<PropCheck>& out) : out_(out) {}

  void run(const std::string& name, const std::function<std::string()>& body) {
    PropCheck c{name, "ok", ""};
    try {
      c.detail = body();  // empty detail means pass; "skipped: ..." means skip
      if (c.detail.rfind("skipped", 0) == 0) c.status = "skipped";
    } catch (const std::exception& e) {
      c.status = "fail";
      c.detail = e.what();
    }
    out_.push_back(std::move(c));
  }

 private:
  std::vector<PropCheck>& out_;
};

[[noreturn]] void prop_fail(const std::string& msg) { throw std::runtime_error(msg); }

using EdgeKeySet = std::set<std::pair<Word, Word>>;

EdgeKeySet block_edge_set(const Topology& topo, const std::vector<VertexId>& cluster, const CubeParams& p,
                          bool class1) {
  EdgeKeySet out;
  for (VertexId v : cluster)
    for (VertexId u : topo.neighbors(v)) {
      if (class_bit(u) != class_bit(v)) continue;
      Word x = class1 ? b_block(v, p) : a_block(v, p);
      Word y = class1 ? b_block(u, p) : a_block(u, p);
      out.insert({std::min(x, y), std::max(x, y)});
    }
  return out;
}

std::vector<PropCheck> run_prop_suite(const Topology& topo, std::uint64_t budget) {
  const CubeParams& p = topo.params();
  std::vector<PropCheck> checks;
  PropSuite suite(checks);

  suite.run("vertex-count", [&] {
    if (topo.vertex_count() != (std::size_t{1} << p.width())) prop_fail("vertex count is off");
    return "";
  });
  suite.run("edge-count", [&] {
    std::size_t want = (std::size_t{1} << (p.s + p.t - 1)) * static_cast<std::size_t>(p.s + p.t + 2);
    if (topo.edge_count() != want)
      prop_fail("expected " + std::to_string(want) + " edges, found " + std::to_string(topo.edge_count()));
    return "";
  });
  suite.run("degree-law", [&] {
    for (VertexId v = 0; v < topo.vertex_count(); ++v) {
      int want = class_bit(v) ? p.t + 1 : p.s + 1;
      if (topo.degree(v) != want)
        prop_fail("vertex " + topo.label(v) + " has degree " + std::to_string(topo.degree(v)) +
                  ", expected " + std::to_string(want));
    }
    return "";
  });
  suite.run("cross-matching", [&] {
    for (VertexId v = 0; v < topo.vertex_count(); ++v)
      if (!topo.adjacent(v, static_cast<VertexId>(cross_neighbor(v))))
        prop_fail("missing cross edge at " + topo.label(v));
    return "";
  });
  suite.run("cluster-partition", [&] {
    ClusterPartition part = cluster_partition(topo);
    if (part.class0.size() != (std::size_t{1} << p.t) || part.class1.size() != (std::size_t{1} << p.s))
      prop_fail("cluster counts are off");
    for (VertexId v = 0; v < topo.vertex_count(); ++v)
      for (VertexId u : topo.neighbors(v))
        if (class_bit(u) == class_bit(v) &&
            (class_bit(v) ? a_block(u, p) != a_block(v, p) : b_block(u, p) != b_block(v, p)))
          prop_fail("edge " + topo.label(v) + " -- " + topo.label(u) + " crosses clusters in one class");
    Topology ltq_s = Topology::build_ltq(p.s), ltq_t = Topology::build_ltq(p.t);
    EdgeKeySet want0, want1;
    for (auto [u, v] : ltq_s.edges()) want0.insert({u, v});
    for (auto [u, v] : ltq_t.edges()) want1.insert({u, v});
    for (const auto& cluster : part.class0)
      if (block_edge_set(topo, cluster, p, false) != want0)
        prop_fail("a class-0 cluster is not the dimension-" + std::to_string(p.s) + " twisted cube");
    for (const auto& cluster : part.class1)
      if (block_edge_set(topo, cluster, p, true) != want1)
        prop_fail("a class-1 cluster is not the dimension-" + std::to_string(p.t) + " twisted cube");
    return "";
  });
  suite.run("split-boundary", [&] {
    // end coordinates of a block cut a perfect matching; interior ones also
    // cut the doubled twisted edge of control-bit-1 vertices
    std::size_t matching = std::size_t{1} << (p.s + p.t - 1);
    std::size_t interior = std::size_t{3} << (p.s + p.t - 2);
    auto check_coord = [&](Coordinate c, int width) {
      Decomposition d = decompose(topo, c, 0);
      bool end = c.index == 0 || c.index == width - 1;
      std::size_t want = end ? matching : interior;
      if (d.boundary_edges.size() != want)
        prop_fail("split on " + coordinate_name(c) + " cut " + std::to_string(d.boundary_edges.size()) +
                  " edges, expected " + std::to_string(want));
      if (!end) return;
      std::set<VertexId> touched;
      for (auto [u, v] : d.boundary_edges)
        if (!touched.insert(u).second || !touched.insert(v).second)
          prop_fail("split on " + coordinate_name(c) + " is not a matching");
    };
    for (int i = 0; p.s >= 2 && i < p.s; ++i) check_coord({Coordinate::A, i}, p.s);
    for (int j = 0; p.t >= 2 && j < p.t; ++j) check_coord({Coordinate::B, j}, p.t);
    if (p.s < 2 && p.t < 2) return std::string("skipped: no splittable coordinate at s=t=1");
    return std::string();
  });
  suite.run("triangle-free", [&] {
    if (!is_triangle_free(topo)) prop_fail("triangle found");
    return "";
  });
  suite.run("common-neighbors", [&] {
    int m = max_common_neighbors(topo);
    if (m > 2) prop_fail("a vertex pair shares " + std::to_string(m) + " neighbors");
    return "";
  });
  suite.run("min-degree-core", [&] {
    for (int g = 0; g <= p.s; ++g) {
      MinOrderResult r = min_order_with_min_degree(topo, g, budget ? budget : 200'000'000);
      if (!r.exact)
        return "skipped: smallest min-degree-" + std::to_string(g) + " subgraph not certified within budget";
      if (r.order != (1L << g))
        prop_fail("smallest subgraph with min degree " + std::to_string(g) + " has order " +
                  std::to_string(r.order) + ", expected " + std::to_string(1L << g));
    }
    return std::string();
  });
  if (p.s == 1 && p.t == 1)
    suite.run("eight-cycle", [&] {
      if (topo.vertex_count() != 8) prop_fail("not 8 vertices");
      for (VertexId v = 0; v < 8; ++v)
        if (topo.degree(v) != 2) prop_fail("not 2-regular");
      auto comps = surviving_components(topo, FaultSet(topo, {}));
      if (comps.size() != 1 || comps[0] != 8) prop_fail("not connected");
      return "";
    });
  return checks;
}

std::string props_text(const std::vector<PropCheck>& checks) {
  std::string out;
  for (const auto& c : checks) {
    if (c.status == "ok")
      out += "ok      " + c.name + "\n";
    else if (c.status == "skipped")
      out += "skipped " + c.name + " (" + c.detail + ")\n";
    else
      out += "FAIL    " + c.name + ": " + c.detail + "\n";
  }
  return out;
}

Json props_json(const std::vector<PropCheck>& checks) {
  Json arr = Json::array();
  for (const auto& c : checks) {
    Json j;
    j["check"] = c.name;
    j["status"] = c.status;
    if (!c.detail.empty()) j["detail"] = c.detail;
    arr.push_back(std::move(j));
  }
  return arr;
}

std::string cut_text(const Topology& topo, const CutReport& rep) {
  std::ostringstream out;
  out << "g: " << rep.g << "\nformula: " << rep.formula << "\n";
  if (rep.certified)
    out << "certified: " << *rep.certified << "\n";
  else
    out << "certified: none (partial, at least " << rep.certified_at_least << ")\n";
  out << "examined: " << rep.examined << "\n";
  if (!rep.witness.empty()) {
    out << "witness:";
    for (VertexId v : rep.witness) out << ' ' << topo.label(v);
    out << "\ncomponents:";
    for (long c : rep.component_sizes) out << ' ' << c;
    out << "\n";
  }
  return out.str();
}

std::string verify_text(const VerifyReport& rep) {
  std::ostringstream out;
  out << "claimed: " << rep.claimed << "\nmode: " << (rep.mode == VerifyMode::Exhaustive ? "exhaustive" : "sampled")
      << "\nchecked pairs: " << rep.checked_pairs << "\nverdict: "
      << (rep.partial ? "partial" : rep.passed ? "pass" : "fail") << "\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"locally exchanged twisted cube toolkit"};
  app.require_subcommand(1);

  // gen
  auto* gen = app.add_subcommand("gen", "build a cube and export it");
  std::string gen_family = "letq";
  int gen_s = 1, gen_t = 1, gen_n = 0;
  std::string gen_format = "edge-list", gen_output;
  bool gen_clusters = false;
  gen->add_option("--family", gen_family, "letq or ltq")->check(CLI::IsMember({"letq", "ltq"}));
  gen->add_option("-s", gen_s, "a-block width");
  gen->add_option("-t", gen_t, "b-block width");
  gen->add_option("-n", gen_n, "twisted cube dimension (family ltq)");
  gen->add_option("--format", gen_format)->check(CLI::IsMember({"edge-list", "dot", "json"}));
  gen->add_option("-o,--output", gen_output, "output file (default stdout)");
  gen->add_flag("--clusters", gen_clusters, "group cluster subgraphs in dot output");
  gen->callback([&] {
    if (gen_family == "ltq") {
      if (gen_n <= 0) throw std::invalid_argument("family ltq needs -n");
      Topology topo = Topology::build_ltq(gen_n);
      if (gen_format == "edge-list")
        emit(gen_output, edge_list_text(topo));
      else if (gen_format == "dot")
        emit(gen_output, dot_text(topo, false));
      else
        emit(gen_output, adjacency_json(topo).dump(2) + "\n");
      return;
    }
    CubeRun run = make_cube(gen_s, gen_t);
    announce_swap(run);
    if (gen_format == "edge-list")
      emit(gen_output, edge_list_text(run.topo));
    else if (gen_format == "dot")
      emit(gen_output, dot_text(run.topo, gen_clusters));
    else
      emit_doc(gen_output, adjacency_json(run.topo), run);
  });

  // props
  auto* props = app.add_subcommand("props", "run the structural property suite");
  int props_s = 1, props_t = 1;
  std::string props_edges, props_format = "text", props_output;
  std::uint64_t props_budget = 0;
  props->add_option("-s", props_s)->required();
  props->add_option("-t", props_t)->required();
  props->add_option("--edges", props_edges, "validate this edge list instead of a built cube");
  props->add_option("--format", props_format)->check(CLI::IsMember({"text", "json"}));
  props->add_option("-o,--output", props_output);
  props->add_option("--budget", props_budget, "cap on certification work")->envname("LETQ_BUDGET");
  props->callback([&] {
    CubeRun run = make_cube(props_s, props_t);
    announce_swap(run);
    Topology topo = std::move(run.topo);
    if (!props_edges.empty()) {
      std::ifstream in(props_edges);
      if (!in) throw std::invalid_argument("cannot read " + props_edges);
      CubeParams p = run.swapped ? CubeParams{run.requested.t, run.requested.s} : run.requested;
      topo = Topology::from_edges(p, parse_edge_list(in, p));
    }
    auto checks = run_prop_suite(topo, props_budget);
    bool any_fail = false, any_skip = false;
    for (const auto& c : checks) {
      any_fail = any_fail || c.status == "fail";
      any_skip = any_skip || c.status == "skipped";
    }
    if (props_format == "json") {
      run.topo = std::move(topo);
      emit_doc(props_output, props_json(checks), run);
    } else {
      emit(props_output, props_text(checks));
    }
    g_rc = any_fail ? 1 : any_skip ? 3 : 0;
  });

  // kappa
  auto* kappa = app.add_subcommand("kappa", "certify the minimum good-neighbor cut size");
  int kappa_s = 1, kappa_t = 1, kappa_g = 0, kappa_jobs = 1;
  std::uint64_t kappa_budget = 0;
  std::string kappa_format = "json", kappa_output;
  kappa->add_option("-s", kappa_s)->required();
  kappa->add_option("-t", kappa_t)->required();
  kappa->add_option("-g", kappa_g)->required();
  kappa->add_option("--budget", kappa_budget, "cap on examined subsets")->envname("LETQ_BUDGET");
  kappa->add_option("--jobs", kappa_jobs);
  kappa->add_option("--format", kappa_format)->check(CLI::IsMember({"text", "json"}));
  kappa->add_option("-o,--output", kappa_output);
  kappa->callback([&] {
    CubeRun run = make_cube(kappa_s, kappa_t);
    announce_swap(run);
    CutReport rep = kappa_g_bruteforce(run.topo, kappa_g, kappa_budget, kappa_jobs);
    if (kappa_format == "json")
      emit_doc(kappa_output, cut_report_json(run.topo, rep), run);
    else
      emit(kappa_output, cut_text(run.topo, rep));
    g_rc = rep.partial ? 3 : (rep.certified && *rep.certified == rep.formula ? 0 : 1);
  });

  // faultset
  auto* fs = app.add_subcommand("faultset", "emit the canonical good-neighbor fault sets");
  int fs_s = 1, fs_t = 1, fs_g = 0;
  std::string fs_format = "json", fs_output;
  fs->add_option("-s", fs_s)->required();
  fs->add_option("-t", fs_t)->required();
  fs->add_option("-g", fs_g)->required();
  fs->add_option("--format", fs_format)->check(CLI::IsMember({"text", "json"}));
  fs->add_option("-o,--output", fs_output);
  fs->callback([&] {
    CubeRun run = make_cube(fs_s, fs_t);
    announce_swap(run);
    GoodNeighborWitness wit = good_neighbor_fault_set(run.topo, fs_g);
    if (fs_format == "json") {
      emit_doc(fs_output, witness_json(run.topo, wit), run);
    } else {
      std::ostringstream out;
      auto row = [&](const char* name, const std::vector<VertexId>& ids) {
        out << name << ":";
        for (VertexId v : ids) out << ' ' << run.topo.label(v);
        out << "\n";
      };
      row("core", wit.core);
      row("boundary", wit.boundary);
      row("closed-hull", wit.closed_hull);
      emit(fs_output, out.str());
    }
  });

  // distinguish
  auto* dist = app.add_subcommand("distinguish", "decide whether two fault sets can be told apart");
  int dist_s = 1, dist_t = 1;
  std::string dist_model = "pmc", dist_f1, dist_f2, dist_format = "json", dist_output;
  dist->add_option("-s", dist_s)->required();
  dist->add_option("-t", dist_t)->required();
  dist->add_option("--model", dist_model)->check(CLI::IsMember({"pmc", "mm"}));
  dist->add_option("--f1", dist_f1, "comma-separated labels")->required();
  dist->add_option("--f2", dist_f2, "comma-separated labels")->required();
  dist->add_option("--format", dist_format)->check(CLI::IsMember({"text", "json"}));
  dist->add_option("-o,--output", dist_output);
  dist->callback([&] {
    CubeRun run = make_cube(dist_s, dist_t);
    announce_swap(run);
    FaultSet f1 = parse_fault(run, dist_f1);
    FaultSet f2 = parse_fault(run, dist_f2);
    DistinguishReport rep = distinguishable(run.topo, parse_model(dist_model), f1, f2);
    if (dist_format == "json") {
      emit_doc(dist_output, distinguish_report_json(run.topo, f1, f2, rep), run);
    } else {
      emit(dist_output, std::string(rep.distinguishable ? "distinguishable" : "indistinguishable") + "\n");
    }
  });

  // verify-tg
  auto* vtg = app.add_subcommand("verify-tg", "verify the diagnosability threshold");
  int vtg_s = 1, vtg_t = 1, vtg_g = 0, vtg_jobs = 1;
  long vtg_claim = 0;
  std::uint64_t vtg_samples = 100000, vtg_seed = kDefaultSeed, vtg_budget = 0;
  std::string vtg_model = "pmc", vtg_mode = "exhaustive", vtg_format = "json", vtg_output;
  vtg->add_option("-s", vtg_s)->required();
  vtg->add_option("-t", vtg_t)->required();
  vtg->add_option("-g", vtg_g)->required();
  vtg->add_option("--model", vtg_model)->check(CLI::IsMember({"pmc", "mm"}));
  vtg->add_option("--mode", vtg_mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
  vtg->add_option("--samples,--n", vtg_samples, "sampled mode trial count");
  vtg->add_option("--seed", vtg_seed);
  vtg->add_option("--jobs", vtg_jobs);
  vtg->add_option("--budget", vtg_budget, "cap on enumeration work")->envname("LETQ_BUDGET");
  vtg->add_option("-T,--claim", vtg_claim, "claim to verify (default: the formula value)");
  vtg->add_option("--format", vtg_format)->check(CLI::IsMember({"text", "json"}));
  vtg->add_option("-o,--output", vtg_output);
  vtg->callback([&] {
    CubeRun run = make_cube(vtg_s, vtg_t);
    announce_swap(run);
    VerifyOptions opt;
    opt.mode = vtg_mode == "sampled" ? VerifyMode::Sampled : VerifyMode::Exhaustive;
    opt.samples = vtg_samples;
    opt.seed = vtg_seed;
    opt.budget = vtg_budget;
    opt.jobs = vtg_jobs;
    opt.claimed_override = vtg_claim;
    VerifyReport rep = verify_tg(run.topo, vtg_g, parse_model(vtg_model), opt);
    if (vtg_format == "json")
      emit_doc(vtg_output, verify_report_json(run.topo, rep), run);
    else
      emit(vtg_output, verify_text(rep));
    g_rc = rep.partial ? 3 : rep.passed ? 0 : 1;
  });

  // simulate
  auto* sim = app.add_subcommand("simulate", "inject a fault set, test, and diagnose");
  int sim_s = 1, sim_t = 1, sim_g = 0;
  long sim_T = -1, sim_random = -1;
  std::uint64_t sim_seed = kDefaultSeed, sim_budget = 0;
  std::string sim_model = "pmc", sim_fault, sim_fault_file, sim_policy = "random", sim_format = "json",
              sim_output;
  bool sim_dump = false;
  sim->add_option("-s", sim_s)->required();
  sim->add_option("-t", sim_t)->required();
  sim->add_option("-g", sim_g, "good-neighbor level assumed by the solver");
  sim->add_option("-T", sim_T, "candidate size bound (default: the formula value)");
  sim->add_option("--model", sim_model)->check(CLI::IsMember({"pmc", "mm"}));
  sim->add_option("--fault", sim_fault, "comma-separated labels to inject");
  sim->add_option("--fault-file", sim_fault_file, "newline-delimited label file");
  sim->add_option("--random-fault", sim_random, "inject a random good-neighbor set of at most this size");
  sim->add_option("--policy", sim_policy, "faulty-tester answers: zeros, ones, or random")
      ->check(CLI::IsMember({"zeros", "ones", "random"}));
  sim->add_option("--seed", sim_seed);
  sim->add_option("--budget", sim_budget, "cap on candidate enumeration")->envname("LETQ_BUDGET");
  sim->add_option("--format", sim_format)->check(CLI::IsMember({"text", "json"}));
  sim->add_option("-o,--output", sim_output);
  sim->add_flag("--dump-syndrome", sim_dump, "include the full syndrome in the transcript");
  sim->callback([&] {
    CubeRun run = make_cube(sim_s, sim_t);
    announce_swap(run);
    int sources = (!sim_fault.empty()) + (!sim_fault_file.empty()) + (sim_random >= 0);
    if (sources != 1)
      throw std::invalid_argument("give exactly one of --fault, --fault-file, --random-fault");
    FaultSet fault;
    if (!sim_fault.empty()) {
      fault = parse_fault(run, sim_fault);
    } else if (!sim_fault_file.empty()) {
      fault = load_fault_file(run, sim_fault_file);
    } else {
      Rng rng(sim_seed);
      fault = random_good_neighbor_set(run.topo, sim_g, sim_random, rng);
    }
    Model model = parse_model(sim_model);
    long T = sim_T >= 0 ? sim_T : tg_formula(run.topo.params(), sim_g, model);
    AdversaryPolicy policy = parse_policy(sim_policy, sim_seed);
    TestAssignment asg = TestAssignment::build(run.topo, model);
    Syndrome syn = generate_syndrome(run.topo, asg, fault, policy);
    DiagnoseResult res = diagnose(run.topo, asg, syn, sim_g, T, sim_budget);

    bool unique = res.candidates.size() == 1;
    bool correct = unique && res.candidates[0] == fault;
    Json j;
    j["s"] = run.topo.params().s;
    j["t"] = run.topo.params().t;
    j["model"] = model_name(model);
    j["g"] = sim_g;
    j["T"] = T;
    j["policy"] = policy_name(policy);
    j["fault"] = fault.labels(run.topo);
    j["fault_good_neighbor"] = is_g_good_neighbor_set(run.topo, fault, sim_g);
    j["tests"] = asg.size();
    j["syndrome_digest"] = syndrome_digest(syn);
    if (sim_dump) j["syndrome"] = syndrome_json(run.topo, asg, syn);
    Json cands = Json::array();
    for (const FaultSet& f : res.candidates) cands.push_back(f.labels(run.topo));
    j["candidates"] = std::move(cands);
    j["enumerated"] = res.enumerated;
    j["partial"] = res.partial;
    j["unique"] = unique;
    j["correct"] = correct;
    if (sim_format == "json") {
      emit_doc(sim_output, std::move(j), run);
    } else {
      std::ostringstream out;
      out << "fault:";
      for (const auto& l : fault.labels(run.topo)) out << ' ' << l;
      out << "\nsyndrome digest: " << syndrome_digest(syn) << "\ncandidates: " << res.candidates.size()
          << (res.partial ? " (partial)" : "") << "\nverdict: "
          << (correct ? "unique recovery" : unique ? "unique but wrong" : "ambiguous") << "\n";
      emit(sim_output, out.str());
    }
    g_rc = res.partial ? 3 : (unique && correct ? 0 : 1);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return g_rc;
}
