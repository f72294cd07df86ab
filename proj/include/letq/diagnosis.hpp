#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "letq/rng.hpp"
#include "letq/structure.hpp"
#include "letq/topology.hpp"

namespace letq {

enum class Model { PMC, MMStar };

struct PmcTest {
  VertexId tester = 0;
  VertexId tested = 0;
};

// Tester compares its neighbors left and right; left < right, and the same
// pair may appear under several testers.
struct MmTest {
  VertexId tester = 0;
  VertexId left = 0;
  VertexId right = 0;
};

class TestAssignment {
 public:
  static TestAssignment build(const Topology& topo, Model model);

  Model model() const { return model_; }
  std::size_t size() const { return model_ == Model::PMC ? pmc_.size() : mm_.size(); }
  const std::vector<PmcTest>& pmc_tests() const;
  const std::vector<MmTest>& mm_tests() const;

 private:
  Model model_ = Model::PMC;
  std::vector<PmcTest> pmc_;
  std::vector<MmTest> mm_;
};

using Syndrome = std::vector<std::uint8_t>;

// Faulty testers answer arbitrarily; these policies pin their answers so
// runs replay exactly.
struct AdversaryPolicy {
  enum class Kind { AllZeros, AllOnes, SeededRandom };
  Kind kind = Kind::AllZeros;
  std::uint64_t seed = kDefaultSeed;

  static AdversaryPolicy zeros() { return {Kind::AllZeros, 0}; }
  static AdversaryPolicy ones() { return {Kind::AllOnes, 0}; }
  static AdversaryPolicy seeded(std::uint64_t seed) { return {Kind::SeededRandom, seed}; }
};

Syndrome generate_syndrome(const Topology& topo, const TestAssignment& assignment, const FaultSet& fault,
                           const AdversaryPolicy& policy);

// True when every fault-free tester's outcome matches what the fault set
// dictates; faulty testers are unconstrained.
bool is_consistent(const Topology& topo, const TestAssignment& assignment, const Syndrome& syndrome,
                   const FaultSet& fault);

struct DistinguishWitness {
  // 0: comparison-free model, u = fault-free vertex testing v across the
  //    symmetric difference. 1-3: tester w compares u against v (1: v in the
  //    symmetric difference; 2/3: u,v both in one side's surplus).
  int condition = 0;
  VertexId u = 0;
  VertexId v = 0;
  VertexId w = 0;
};

struct DistinguishReport {
  Model model = Model::PMC;
  bool distinguishable = false;
  std::optional<DistinguishWitness> witness;
};

DistinguishReport pmc_distinguishable(const Topology& topo, const FaultSet& f1, const FaultSet& f2);
DistinguishReport mm_distinguishable(const Topology& topo, const FaultSet& f1, const FaultSet& f2);
DistinguishReport distinguishable(const Topology& topo, Model model, const FaultSet& f1, const FaultSet& f2);

// Largest T such that any two admissible fault sets of size <= T can be
// told apart, by closed formula.
long tg_formula(const CubeParams& p, int g, Model model);

// A pair of good-neighbor fault sets of size <= tg+1 with identical
// syndrome spaces; the construction depends on the (g, s, t) regime.
std::pair<FaultSet, FaultSet> indistinguishable_witness(const Topology& topo, int g, Model model);

enum class VerifyMode { Exhaustive, Sampled };

struct VerifyOptions {
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint64_t samples = 100'000;  // sampled mode
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t budget = 0;  // 0: unlimited; exhaustive mode on >16 vertices demands one
  int jobs = 1;
  long claimed_override = 0;  // 0: verify the formula value; else this claim
};

struct VerifyReport {
  CubeParams params;
  int g = 0;
  Model model = Model::PMC;
  long claimed = 0;
  VerifyMode mode = VerifyMode::Exhaustive;
  std::uint64_t enumerated_sets = 0;
  std::uint64_t checked_pairs = 0;
  std::uint64_t rejected_samples = 0;
  bool passed = false;
  bool partial = false;
  std::optional<std::pair<FaultSet, FaultSet>> counterexample;
  std::pair<FaultSet, FaultSet> witness_pair;
  bool witness_ok = false;
};

// Confirms the formula value: no indistinguishable pair at size <= T
// (exhaustively or by sampling), and the regime witness breaks at T+1.
VerifyReport verify_tg(const Topology& topo, int g, Model model, const VerifyOptions& opts = {});

struct DiagnoseResult {
  std::vector<FaultSet> candidates;
  bool partial = false;
  std::uint64_t enumerated = 0;
};

// All good-neighbor fault sets of size <= T consistent with the syndrome,
// in size-then-lex order. Empty: the real fault breaks the (g, T) promise.
DiagnoseResult diagnose(const Topology& topo, const TestAssignment& assignment, const Syndrome& syndrome,
                        int g, long T, std::uint64_t budget = 0);

// Size-then-lex enumeration of fault-set candidates meeting the
// good-neighbor condition; the visitor sees each sorted member list.
// Returns false when the leaf budget ran out.
bool enumerate_good_neighbor_sets(const Topology& topo, int g, int max_size, std::uint64_t budget,
                                  std::uint64_t* visited,
                                  const std::function<void(const std::vector<VertexId>&)>& visit);

// One random good-neighbor fault set of size <= max_size: uniform draw,
// then deletion-only repair until the condition holds.
FaultSet random_good_neighbor_set(const Topology& topo, int g, long max_size, Rng& rng);

}  // namespace letq
