#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "letq/topology.hpp"

namespace letq {

// Sorted, duplicate-free vertex set validated against a topology's label
// space at construction.
class FaultSet {
 public:
  FaultSet() = default;
  FaultSet(const Topology& topo, std::vector<VertexId> members);
  static FaultSet from_labels(const Topology& topo, const std::vector<std::string>& labels);

  const std::vector<VertexId>& members() const { return members_; }
  std::size_t size() const { return members_.size(); }
  bool contains(VertexId v) const;
  std::vector<std::string> labels(const Topology& topo) const;

  bool operator==(const FaultSet&) const = default;

 private:
  std::vector<VertexId> members_;
};

bool is_triangle_free(const Topology& topo);

// Largest number of shared neighbors over all vertex pairs.
int max_common_neighbors(const Topology& topo);

struct MinOrderResult {
  long order = 0;          // smallest subgraph order with min degree >= g
  bool exact = false;      // certified by exhausting all smaller subsets
  std::uint64_t visited = 0;
  std::vector<VertexId> witness;
};

// Exhausts connected vertex sets below 2^g (components of a min-degree-g
// subgraph are themselves min-degree-g, so connected sets suffice). Large
// graphs or an exhausted budget yield the 2^g bound flagged non-exact.
// Above g = s there is no cube bound: the search runs unseeded and order 0
// reports that no induced subgraph reaches the degree bound.
MinOrderResult min_order_with_min_degree(const Topology& topo, int g, std::uint64_t budget = 200'000'000);

struct GoodNeighborWitness {
  int level = 0;                    // the g these sets target
  std::vector<VertexId> core;       // 2^g vertices inducing a g-regular cube
  std::vector<VertexId> boundary;   // the core's open neighborhood
  std::vector<VertexId> closed_hull;  // core plus boundary
};

// The canonical fault-set pair: the core frees the top g a-coordinates and
// zeroes everything else; boundary/closed hull are computed from adjacency.
GoodNeighborWitness good_neighbor_fault_set(const Topology& topo, int g);

// Every vertex outside F keeps at least g neighbors outside F.
bool is_g_good_neighbor_set(const Topology& topo, const FaultSet& f, int g);

// F disconnects the graph and the survivors meet the good-neighbor bound.
bool is_rg_cut(const Topology& topo, const FaultSet& f, int g);

long kappa_g_formula(const CubeParams& p, int g);

struct CutReport {
  int g = 0;
  long formula = 0;
  std::optional<long> certified;  // min cut size, when fully certified
  long certified_at_least = 1;    // lower bound: every smaller size exhausted
  bool partial = false;
  std::uint64_t examined = 0;
  std::vector<VertexId> witness;
  std::vector<long> component_sizes;  // ordered by smallest member label
};

// Exhaustive search for the smallest good-neighbor cut, smallest size first,
// subsets in colexicographic order. `budget` caps examined subsets; `jobs`
// splits each size level across threads with a deterministic merge.
CutReport kappa_g_bruteforce(const Topology& topo, int g, std::uint64_t budget = 0, int jobs = 1);

// Component sizes of topo minus F, ordered by smallest member label.
std::vector<long> surviving_components(const Topology& topo, const FaultSet& f);

}  // namespace letq
