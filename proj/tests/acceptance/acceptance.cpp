// Release gate: one line per criterion, nonzero exit if any fails.
// Each criterion carries its own wall-clock budget and fails when exceeded.

#include <chrono>
#include <cstdio>
#include <exception>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "letq/diagnosis.hpp"
#include "letq/labels.hpp"
#include "letq/rng.hpp"
#include "letq/structure.hpp"
#include "letq/topology.hpp"
#include "support/oracles.hpp"

using namespace letq;

namespace {

int failures = 0;

void criterion(int index, const char* name, double budget_s, const std::function<void()>& body) {
  auto start = std::chrono::steady_clock::now();
  std::string err;
  try {
    body();
  } catch (const std::exception& e) {
    err = e.what();
  } catch (...) {
    err = "unknown exception";
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (err.empty() && secs < budget_s) {
    std::printf("[PASS] %d. %s (%.2fs < %.0fs)\n", index, name, secs, budget_s);
  } else {
    ++failures;
    if (err.empty())
      std::printf("[FAIL] %d. %s (time %.2fs exceeded %.0fs)\n", index, name, secs, budget_s);
    else
      std::printf("[FAIL] %d. %s: %s\n", index, name, err.c_str());
  }
  std::fflush(stdout);
}

[[noreturn]] void bail(const std::string& msg) { throw std::runtime_error(msg); }

void expect(bool ok, const std::string& msg) {
  if (!ok) bail(msg);
}

std::string at(int s, int t) { return "(s=" + std::to_string(s) + ",t=" + std::to_string(t) + ")"; }

using EdgeSet = std::set<std::pair<Word, Word>>;

EdgeSet block_edges(const Topology& topo, const std::vector<VertexId>& cluster, const CubeParams& p,
                    bool class1) {
  EdgeSet out;
  for (VertexId v : cluster)
    for (VertexId u : topo.neighbors(v)) {
      if (class_bit(u) != class_bit(v)) continue;
      Word x = class1 ? b_block(v, p) : a_block(v, p);
      Word y = class1 ? b_block(u, p) : a_block(u, p);
      out.insert({std::min(x, y), std::max(x, y)});
    }
  return out;
}

EdgeSet ltq_edge_set(int n) {
  EdgeSet out;
  Topology cube = Topology::build_ltq(n);
  for (auto [u, v] : cube.edges()) out.insert({u, v});
  return out;
}

void check_structure(int s, int t) {
  CubeParams p{s, t};
  Topology topo = Topology::build_letq(p);
  std::string where = at(s, t);

  expect(topo.vertex_count() == (std::size_t{1} << p.width()), where + " vertex count");
  for (VertexId v = 0; v < topo.vertex_count(); ++v) {
    std::size_t want = class_bit(v) ? static_cast<std::size_t>(t) + 1 : static_cast<std::size_t>(s) + 1;
    expect(topo.degree(v) == want, where + " degree law at " + topo.label(v));
    Word mate = cross_neighbor(v);
    expect(cross_neighbor(mate) == v && topo.adjacent(v, static_cast<VertexId>(mate)),
           where + " cross matching at " + topo.label(v));
  }

  // splitting on an end coordinate of a block leaves a perfect matching of
  // 2^(s+t-1) edges between the halves; interior coordinates also cut the
  // doubled twisted edge of control-bit-1 vertices, 3 * 2^(s+t-2) in total
  std::size_t half_edges = std::size_t{1} << (s + t - 1);
  std::size_t interior_edges = std::size_t{3} << (s + t - 2);
  auto check_split = [&](Coordinate coord, int width, const char* tag) {
    Decomposition d = decompose(topo, coord, 0);
    std::string label = where + " " + tag + std::to_string(coord.index);
    if (coord.index == 0 || coord.index == width - 1) {
      expect(d.boundary_edges.size() == half_edges, label + " boundary size");
      std::set<VertexId> touched;
      for (auto [u, v] : d.boundary_edges)
        expect(touched.insert(u).second && touched.insert(v).second, label + " not a matching");
    } else {
      expect(d.boundary_edges.size() == interior_edges, label + " boundary size");
    }
  };
  for (int i = 0; s >= 2 && i < s; ++i) check_split({Coordinate::A, i}, s, "a-split ");
  for (int j = 0; t >= 2 && j < t; ++j) check_split({Coordinate::B, j}, t, "b-split ");

  ClusterPartition part = cluster_partition(topo);
  expect(part.class0.size() == (std::size_t{1} << t), where + " class-0 cluster count");
  expect(part.class1.size() == (std::size_t{1} << s), where + " class-1 cluster count");
  EdgeSet want0 = ltq_edge_set(s), want1 = ltq_edge_set(t);
  for (const auto& cluster : part.class0)
    expect(block_edges(topo, cluster, p, false) == want0, where + " class-0 cluster shape");
  for (const auto& cluster : part.class1)
    expect(block_edges(topo, cluster, p, true) == want1, where + " class-1 cluster shape");
  for (VertexId v = 0; v < topo.vertex_count(); ++v)
    for (VertexId u : topo.neighbors(v))
      if (class_bit(u) == class_bit(v))
        expect(class_bit(v) ? a_block(u, p) == a_block(v, p) : b_block(u, p) == b_block(v, p),
               where + " edge crosses clusters inside one class");

  expect(is_triangle_free(topo), where + " triangle found");
  expect(max_common_neighbors(topo) <= 2, where + " common neighbor bound");
}

}  // namespace

int main() {
  criterion(1, "structure suite over every cube with s+t <= 7", 5.0, [] {
    for (int s = 1; s <= 3; ++s)
      for (int t = s; s + t <= 7; ++t) check_structure(s, t);
  });

  criterion(2, "smallest cube is a single 8-cycle", 5.0, [] {
    Topology topo = Topology::build_letq({1, 1});
    expect(topo.vertex_count() == 8 && topo.edge_count() == 8, "counts");
    for (VertexId v = 0; v < 8; ++v) expect(topo.degree(v) == 2, "degree");
    std::vector<long> comps = surviving_components(topo, FaultSet(topo, {}));
    expect(comps.size() == 1 && comps[0] == 8, "connected");
  });

  criterion(3, "certified cut sizes match the closed form on 12 instances", 120.0, [] {
    for (auto [s, t] : {std::pair{1, 1}, {1, 2}, {1, 3}, {2, 2}, {2, 3}}) {
      Topology topo = Topology::build_letq({s, t});
      for (int g = 0; g <= s; ++g) {
        CutReport rep = kappa_g_bruteforce(topo, g);
        std::string where = at(s, t) + " g=" + std::to_string(g);
        expect(!rep.partial && rep.certified.has_value(), where + " search incomplete");
        expect(*rep.certified == rep.formula, where + " certified value mismatch");
        expect(!rep.witness.empty() && is_rg_cut(topo, FaultSet(topo, rep.witness), g),
               where + " witness not a valid cut");
      }
    }
  });

  criterion(4, "fault-set witness suite over every cube with s+t <= 8", 10.0, [] {
    for (int s = 1; s <= 4; ++s)
      for (int t = s; s + t <= 8; ++t) {
        CubeParams p{s, t};
        Topology topo = Topology::build_letq(p);
        for (int g = 0; g <= s; ++g) {
          std::string where = at(s, t) + " g=" + std::to_string(g);
          GoodNeighborWitness w = good_neighbor_fault_set(topo, g);
          expect(w.boundary.size() == (std::size_t{1} << g) * static_cast<std::size_t>(s - g + 1),
                 where + " boundary size");
          expect(w.closed_hull.size() == (std::size_t{1} << g) * static_cast<std::size_t>(s - g + 2),
                 where + " hull size");
          std::set<VertexId> core(w.core.begin(), w.core.end());
          for (VertexId c : w.core) {
            int deg = 0;
            for (VertexId u : topo.neighbors(c)) deg += core.count(u) > 0;
            expect(deg == g, where + " core not regular");
          }
          expect(is_g_good_neighbor_set(topo, FaultSet(topo, w.boundary), g), where + " boundary condition");
          // at g = s-2 the twisted edge out of the doubly-set low pair lands
          // in the boundary too, pinning the hull level to g instead of s-1
          int hull_level = (g >= 1 && g == s - 2) ? g : std::max(s - 1, g);
          expect(is_g_good_neighbor_set(topo, FaultSet(topo, w.closed_hull), hull_level),
                 where + " hull condition");
        }
      }
  });

  criterion(5, "exhaustive thresholds under the direct-test model", 120.0, [] {
    struct Case {
      int s, t, g;
      long T;
    };
    for (Case c : {Case{1, 1, 0, 2}, {1, 1, 1, 3}, {1, 2, 0, 2}, {1, 2, 1, 3}}) {
      Topology topo = Topology::build_letq({c.s, c.t});
      std::string where = at(c.s, c.t) + " g=" + std::to_string(c.g);
      VerifyOptions opt;
      opt.mode = VerifyMode::Exhaustive;
      VerifyReport rep = verify_tg(topo, c.g, Model::PMC, opt);
      expect(rep.claimed == c.T, where + " threshold value");
      expect(rep.passed && !rep.partial, where + " exhaustive run failed");
      expect(rep.witness_ok, where + " limit witness missing");
    }
  });

  criterion(6, "exhaustive thresholds under the comparison model", 120.0, [] {
    struct Case {
      int s, t, g;
      long T;
    };
    for (Case c : {Case{1, 1, 0, 1}, {1, 1, 1, 1}, {1, 2, 0, 2}, {1, 2, 1, 3}}) {
      Topology topo = Topology::build_letq({c.s, c.t});
      std::string where = at(c.s, c.t) + " g=" + std::to_string(c.g);
      VerifyOptions opt;
      opt.mode = VerifyMode::Exhaustive;
      VerifyReport rep = verify_tg(topo, c.g, Model::MMStar, opt);
      expect(rep.claimed == c.T, where + " threshold value");
      expect(rep.passed && !rep.partial, where + " exhaustive run failed");
      expect(rep.witness_ok, where + " limit witness missing");
    }
  });

  criterion(7, "comparison-model witnesses at scale plus sampled falsification", 30.0, [] {
    for (int t : {2, 3}) {
      Topology topo = Topology::build_letq({2, t});
      std::string where = at(2, t);
      auto [f1, f2] = indistinguishable_witness(topo, 1, Model::MMStar);
      expect(f1.size() == 5 && f2.size() == 5, where + " witness sizes");
      expect(is_g_good_neighbor_set(topo, f1, 1) && is_g_good_neighbor_set(topo, f2, 1),
             where + " witness condition");
      expect(!mm_distinguishable(topo, f1, f2).distinguishable, where + " witness distinguishable");

      VerifyOptions opt;
      opt.mode = VerifyMode::Sampled;
      opt.samples = 100000;
      opt.seed = 7;
      VerifyReport rep = verify_tg(topo, 1, Model::MMStar, opt);
      expect(rep.claimed == 4, where + " threshold value");
      expect(rep.passed && !rep.partial, where + " sampling found a counterexample");
      expect(rep.checked_pairs > 0, where + " sample accounting");
    }
  });

  criterion(8, "syndrome round-trip and distinguishability oracle agreement", 60.0, [] {
    Topology topo = Topology::build_letq({1, 1});
    std::vector<FaultSet> small, tiny;
    small.emplace_back(topo, std::vector<VertexId>{});
    for (VertexId a = 0; a < 8; ++a) {
      small.emplace_back(topo, std::vector<VertexId>{a});
      for (VertexId b = a + 1; b < 8; ++b) {
        small.emplace_back(topo, std::vector<VertexId>{a, b});
        for (VertexId c = b + 1; c < 8; ++c) small.emplace_back(topo, std::vector<VertexId>{a, b, c});
      }
    }
    for (const FaultSet& f : small)
      if (f.size() <= 2) tiny.push_back(f);

    std::vector<AdversaryPolicy> policies{AdversaryPolicy::zeros(), AdversaryPolicy::ones(),
                                          AdversaryPolicy::seeded(kDefaultSeed)};
    for (Model model : {Model::PMC, Model::MMStar}) {
      TestAssignment asg = TestAssignment::build(topo, model);
      for (const FaultSet& f : small)
        for (const AdversaryPolicy& pol : policies)
          expect(is_consistent(topo, asg, generate_syndrome(topo, asg, f, pol), f),
                 "round trip broke for a size-" + std::to_string(f.size()) + " set");
      for (std::size_t i = 0; i < tiny.size(); ++i)
        for (std::size_t j = i + 1; j < tiny.size(); ++j) {
          bool fast = distinguishable(topo, model, tiny[i], tiny[j]).distinguishable;
          bool literal = oracle::distinguishable_by_enumeration(topo, asg, tiny[i], tiny[j]);
          expect(fast == literal, "characterization disagrees with syndrome enumeration");
        }
    }
  });

  criterion(9, "diagnosis recovers planted faults and flags ambiguity", 60.0, [] {
    Topology topo = Topology::build_letq({1, 1});
    TestAssignment pmc = TestAssignment::build(topo, Model::PMC);
    std::vector<AdversaryPolicy> policies{AdversaryPolicy::zeros(), AdversaryPolicy::ones(),
                                          AdversaryPolicy::seeded(kDefaultSeed)};
    std::vector<std::vector<VertexId>> plants;
    enumerate_good_neighbor_sets(topo, 1, 3, 0, nullptr,
                                 [&](const std::vector<VertexId>& s) { plants.push_back(s); });
    expect(plants.size() > 50, "enumeration came up short");
    for (const auto& members : plants) {
      FaultSet planted(topo, members);
      for (const AdversaryPolicy& pol : policies) {
        Syndrome syn = generate_syndrome(topo, pmc, planted, pol);
        DiagnoseResult res = diagnose(topo, pmc, syn, 1, 3);
        expect(!res.partial && res.candidates.size() == 1 && res.candidates[0] == planted,
               "non-unique recovery for a size-" + std::to_string(planted.size()) + " set");
      }
    }

    TestAssignment mm = TestAssignment::build(topo, Model::MMStar);
    FaultSet pair1(topo, {topo.id_of("000"), topo.id_of("110")});
    FaultSet pair2(topo, {topo.id_of("011"), topo.id_of("101")});
    Syndrome syn = generate_syndrome(topo, mm, pair1, AdversaryPolicy::zeros());
    DiagnoseResult res = diagnose(topo, mm, syn, 1, 2);
    expect(res.candidates.size() == 2, "expected exactly two candidates");
    bool saw1 = false, saw2 = false;
    for (const FaultSet& f : res.candidates) {
      saw1 = saw1 || f == pair1;
      saw2 = saw2 || f == pair2;
    }
    expect(saw1 && saw2, "ambiguous pair not recovered");
  });

  if (failures) std::printf("%d criterion(s) failed\n", failures);
  return failures ? 1 : 0;
}
