#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "letq/bitset.hpp"
#include "letq/diagnosis.hpp"
#include "letq/structure.hpp"
#include "letq/topology.hpp"
#include "support/oracles.hpp"

using namespace letq;

namespace {

std::vector<FaultSet> all_fault_sets_up_to(const Topology& topo, std::size_t cap) {
  std::vector<FaultSet> out;
  std::size_t n = topo.vertex_count();
  out.emplace_back(topo, std::vector<VertexId>{});
  for (VertexId a = 0; a < n; ++a) {
    out.emplace_back(topo, std::vector<VertexId>{a});
    for (VertexId b = a + 1; cap >= 2 && b < n; ++b) {
      out.emplace_back(topo, std::vector<VertexId>{a, b});
      for (VertexId c = b + 1; cap >= 3 && c < n; ++c)
        out.emplace_back(topo, std::vector<VertexId>{a, b, c});
    }
  }
  return out;
}

std::uint64_t syndrome_mask(const Syndrome& syn) {
  std::uint64_t mask = 0;
  for (std::size_t i = 0; i < syn.size(); ++i)
    if (syn[i]) mask |= std::uint64_t{1} << i;
  return mask;
}

DynBitset fault_mask(const Topology& topo, const FaultSet& f) {
  DynBitset m(topo.vertex_count());
  for (VertexId v : f.members()) m.set(v);
  return m;
}

}  // namespace

TEST_CASE("test assignment enumeration") {
  Topology topo = Topology::build_letq({1, 1});
  TestAssignment pmc = TestAssignment::build(topo, Model::PMC);
  CHECK(pmc.size() == 16);  // both directions of each of the 8 edges
  TestAssignment mm = TestAssignment::build(topo, Model::MMStar);
  CHECK(mm.size() == 8);  // each degree-2 tester contributes one pair
  CHECK_THROWS_AS(pmc.mm_tests(), std::logic_error);
  CHECK_THROWS_AS(mm.pmc_tests(), std::logic_error);

  SUBCASE("counts follow the degree law") {
    Topology big = Topology::build_letq({2, 3});
    TestAssignment p = TestAssignment::build(big, Model::PMC);
    CHECK(p.size() == 2 * big.edge_count());
    TestAssignment m = TestAssignment::build(big, Model::MMStar);
    std::size_t want = 0;
    for (VertexId v = 0; v < big.vertex_count(); ++v) {
      std::size_t d = static_cast<std::size_t>(big.degree(v));
      want += d * (d - 1) / 2;
    }
    CHECK(m.size() == want);
  }
}

TEST_CASE("generated syndromes are consistent with their fault set") {
  Topology topo = Topology::build_letq({1, 2});
  auto sets = all_fault_sets_up_to(topo, 2);
  std::vector<AdversaryPolicy> policies{AdversaryPolicy::zeros(), AdversaryPolicy::ones(),
                                        AdversaryPolicy::seeded(5)};
  for (Model model : {Model::PMC, Model::MMStar}) {
    TestAssignment asg = TestAssignment::build(topo, model);
    for (const FaultSet& f : sets)
      for (const AdversaryPolicy& pol : policies) {
        Syndrome syn = generate_syndrome(topo, asg, f, pol);
        REQUIRE(syn.size() == asg.size());
        REQUIRE(is_consistent(topo, asg, syn, f));
      }
  }

  SUBCASE("bitmask interpreter agrees on the smallest cube") {
    Topology small = Topology::build_letq({1, 1});
    auto small_sets = all_fault_sets_up_to(small, 2);
    for (Model model : {Model::PMC, Model::MMStar}) {
      TestAssignment asg = TestAssignment::build(small, model);
      for (const FaultSet& f : small_sets)
        for (const AdversaryPolicy& pol : policies) {
          Syndrome syn = generate_syndrome(small, asg, f, pol);
          REQUIRE(oracle::syndrome_consistent(asg, syndrome_mask(syn), fault_mask(small, f)));
        }
    }
  }
}

TEST_CASE("syndrome generation is deterministic per seed") {
  Topology topo = Topology::build_letq({1, 1});
  TestAssignment asg = TestAssignment::build(topo, Model::PMC);
  FaultSet f(topo, {0, 3});
  Syndrome a = generate_syndrome(topo, asg, f, AdversaryPolicy::seeded(11));
  Syndrome b = generate_syndrome(topo, asg, f, AdversaryPolicy::seeded(11));
  Syndrome c = generate_syndrome(topo, asg, f, AdversaryPolicy::seeded(12));
  CHECK(a == b);
  CHECK(a != c);  // holds for this fault set and these seeds
}

TEST_CASE("distinguishability matches literal syndrome enumeration") {
  Topology topo = Topology::build_letq({1, 1});
  auto sets = all_fault_sets_up_to(topo, 2);
  for (Model model : {Model::PMC, Model::MMStar}) {
    TestAssignment asg = TestAssignment::build(topo, model);
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        DistinguishReport rep = distinguishable(topo, model, sets[i], sets[j]);
        bool want = oracle::distinguishable_by_enumeration(topo, asg, sets[i], sets[j]);
        REQUIRE(rep.distinguishable == want);
        DistinguishReport sym = distinguishable(topo, model, sets[j], sets[i]);
        REQUIRE(sym.distinguishable == rep.distinguishable);
      }
  }
}

TEST_CASE("distinguishing witness points at a live discrepancy") {
  Topology topo = Topology::build_letq({1, 2});
  FaultSet f1(topo, {0});
  FaultSet f2(topo, {5});
  DistinguishReport rep = pmc_distinguishable(topo, f1, f2);
  REQUIRE(rep.distinguishable);
  REQUIRE(rep.witness.has_value());
  CHECK(rep.witness->condition == 0);
  // tester is unfaulted in both sets and probes the symmetric difference
  CHECK(!f1.contains(rep.witness->u));
  CHECK(!f2.contains(rep.witness->u));
  CHECK(f1.contains(rep.witness->v) != f2.contains(rep.witness->v));
  CHECK(topo.adjacent(rep.witness->u, rep.witness->v));

  CHECK_THROWS_AS(pmc_distinguishable(topo, f1, f1), std::invalid_argument);
  CHECK_THROWS_AS(mm_distinguishable(topo, f2, f2), std::invalid_argument);
}

TEST_CASE("indistinguishable pairs stay indistinguishable under common augmentation") {
  Topology topo = Topology::build_letq({1, 1});
  for (Model model : {Model::PMC, Model::MMStar}) {
    auto sets = all_fault_sets_up_to(topo, 3);
    int exercised = 0;
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        if (distinguishable(topo, model, sets[i], sets[j]).distinguishable) continue;
        // adding the same outside vertex to both preserves the verdict
        for (VertexId w = 0; w < topo.vertex_count(); ++w) {
          if (sets[i].contains(w) || sets[j].contains(w)) continue;
          auto mi = sets[i].members();
          auto mj = sets[j].members();
          mi.push_back(w);
          mj.push_back(w);
          FaultSet gi(topo, mi), gj(topo, mj);
          REQUIRE(!distinguishable(topo, model, gi, gj).distinguishable);
          ++exercised;
        }
      }
    CHECK(exercised > 0);  // the property must not hold vacuously
  }
}

TEST_CASE("diagnosability thresholds") {
  CHECK(tg_formula({1, 1}, 0, Model::PMC) == 2);
  CHECK(tg_formula({1, 1}, 1, Model::PMC) == 3);
  CHECK(tg_formula({1, 2}, 0, Model::PMC) == 2);
  CHECK(tg_formula({1, 2}, 1, Model::PMC) == 3);
  CHECK(tg_formula({2, 3}, 2, Model::PMC) == 7);

  CHECK(tg_formula({1, 1}, 0, Model::MMStar) == 1);
  CHECK(tg_formula({1, 1}, 1, Model::MMStar) == 1);
  CHECK(tg_formula({1, 2}, 0, Model::MMStar) == 2);
  CHECK(tg_formula({1, 2}, 1, Model::MMStar) == 3);
  CHECK(tg_formula({2, 2}, 1, Model::MMStar) == 4);
  CHECK(tg_formula({2, 3}, 1, Model::MMStar) == 4);
  CHECK(tg_formula({3, 3}, 1, Model::MMStar) == 7);
  CHECK(tg_formula({3, 3}, 2, Model::MMStar) == 11);
  CHECK(tg_formula({2, 3}, 2, Model::MMStar) == 7);

  CHECK_THROWS_AS(tg_formula({2, 1}, 0, Model::PMC), std::invalid_argument);
  CHECK_THROWS_AS(tg_formula({2, 2}, 3, Model::PMC), std::invalid_argument);

  SUBCASE("thresholds leave room for two disjoint fault sets") {
    for (int s = 1; s <= 3; ++s)
      for (int t = s; s + t <= 6; ++t)
        for (int g = 0; g <= s; ++g) {
          long vertices = 1L << (s + t + 1);
          REQUIRE(2 * tg_formula({s, t}, g, Model::PMC) < vertices);
          REQUIRE(2 * tg_formula({s, t}, g, Model::MMStar) < vertices);
        }
  }
}

TEST_CASE("limit witnesses self-validate") {
  // construction throws if the pair fails size, condition, or
  // indistinguishability checks, so building it is most of the assertion
  for (int s = 1; s <= 2; ++s)
    for (int t = s; s + t <= 5; ++t) {
      Topology topo = Topology::build_letq({s, t});
      for (int g = 0; g <= s; ++g)
        for (Model model : {Model::PMC, Model::MMStar}) {
          auto [f1, f2] = indistinguishable_witness(topo, g, model);
          std::size_t cap = static_cast<std::size_t>(tg_formula({s, t}, g, model)) + 1;
          REQUIRE(std::max(f1.size(), f2.size()) == cap);
          REQUIRE(is_g_good_neighbor_set(topo, f1, g));
          REQUIRE(is_g_good_neighbor_set(topo, f2, g));
          REQUIRE(!distinguishable(topo, model, f1, f2).distinguishable);
        }
    }
}

TEST_CASE("exhaustive threshold verification") {
  Topology topo = Topology::build_letq({1, 1});

  SUBCASE("the formula value passes") {
    VerifyOptions opt;
    opt.mode = VerifyMode::Exhaustive;
    VerifyReport rep = verify_tg(topo, 1, Model::PMC, opt);
    CHECK(rep.claimed == 3);
    CHECK(rep.passed);
    CHECK(!rep.partial);
    CHECK(!rep.counterexample.has_value());
    CHECK(rep.witness_ok);
  }

  SUBCASE("an inflated claim fails with a counterexample") {
    VerifyOptions opt;
    opt.mode = VerifyMode::Exhaustive;
    opt.claimed_override = 4;
    VerifyReport rep = verify_tg(topo, 1, Model::PMC, opt);
    CHECK(!rep.passed);
    REQUIRE(rep.counterexample.has_value());
    auto [c1, c2] = *rep.counterexample;
    CHECK(!distinguishable(topo, Model::PMC, c1, c2).distinguishable);
    CHECK(is_g_good_neighbor_set(topo, c1, 1));
    CHECK(is_g_good_neighbor_set(topo, c2, 1));
  }

  SUBCASE("budget exhaustion turns the verdict partial") {
    VerifyOptions opt;
    opt.mode = VerifyMode::Exhaustive;
    opt.budget = 3;
    VerifyReport rep = verify_tg(topo, 0, Model::PMC, opt);
    CHECK(rep.partial);
    CHECK(!rep.passed);
  }
}

TEST_CASE("sampled threshold verification is deterministic per seed and jobs") {
  Topology topo = Topology::build_letq({1, 2});
  VerifyOptions opt;
  opt.mode = VerifyMode::Sampled;
  opt.samples = 2000;
  opt.seed = 99;
  VerifyReport one = verify_tg(topo, 1, Model::PMC, opt);
  CHECK(one.passed);
  VerifyReport again = verify_tg(topo, 1, Model::PMC, opt);
  CHECK(one.checked_pairs == again.checked_pairs);
  CHECK(one.rejected_samples == again.rejected_samples);

  opt.jobs = 2;
  VerifyReport split = verify_tg(topo, 1, Model::PMC, opt);
  CHECK(split.passed);
  CHECK(split.checked_pairs == one.checked_pairs);
}

TEST_CASE("diagnosis recovers the planted fault set") {
  Topology topo = Topology::build_letq({1, 1});

  SUBCASE("unique at the threshold under directed tests") {
    TestAssignment asg = TestAssignment::build(topo, Model::PMC);
    FaultSet planted(topo, {topo.id_of("000"), topo.id_of("001")});
    Syndrome syn = generate_syndrome(topo, asg, planted, AdversaryPolicy::ones());
    DiagnoseResult res = diagnose(topo, asg, syn, 1, 3);
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.candidates[0] == planted);
    CHECK(!res.partial);
  }

  SUBCASE("ambiguous pairs surface as multiple candidates") {
    TestAssignment asg = TestAssignment::build(topo, Model::MMStar);
    FaultSet planted(topo, {topo.id_of("000"), topo.id_of("110")});
    Syndrome syn = generate_syndrome(topo, asg, planted, AdversaryPolicy::zeros());
    DiagnoseResult res = diagnose(topo, asg, syn, 1, 2);
    REQUIRE(res.candidates.size() == 2);
    std::set<std::vector<std::string>> got;
    for (const FaultSet& f : res.candidates) got.insert(f.labels(topo));
    std::set<std::vector<std::string>> want{{"000", "110"}, {"011", "101"}};
    CHECK(got == want);
  }

  SUBCASE("empty fault set with an honest syndrome is recovered") {
    TestAssignment asg = TestAssignment::build(topo, Model::PMC);
    FaultSet planted(topo, {});
    Syndrome syn = generate_syndrome(topo, asg, planted, AdversaryPolicy::zeros());
    DiagnoseResult res = diagnose(topo, asg, syn, 0, 2);
    REQUIRE(res.candidates.size() == 1);
    CHECK(res.candidates[0] == planted);
  }
}

TEST_CASE("good neighbor enumeration order and budget") {
  Topology topo = Topology::build_letq({1, 1});
  std::vector<std::vector<VertexId>> seen;
  std::uint64_t visited = 0;
  bool complete = enumerate_good_neighbor_sets(topo, 1, 2, 0, &visited,
                                               [&](const std::vector<VertexId>& s) { seen.push_back(s); });
  CHECK(complete);
  CHECK(visited >= seen.size());
  // empty set first, then singletons ascending, then pairs lexicographically
  REQUIRE(seen.size() > 9);
  CHECK(seen[0].empty());
  CHECK(seen[1] == std::vector<VertexId>{0});
  CHECK(seen[8] == std::vector<VertexId>{7});
  CHECK(seen[9].size() == 2);

  std::vector<std::vector<VertexId>> few;
  bool done = enumerate_good_neighbor_sets(topo, 1, 2, 4, nullptr,
                                           [&](const std::vector<VertexId>& s) { few.push_back(s); });
  CHECK(!done);
  CHECK(few.size() <= 4);
}
