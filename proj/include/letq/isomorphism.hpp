#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "letq/topology.hpp"

namespace letq {

// A plain graph over ids 0..n-1 for isomorphism work; decouples the search
// from Topology so induced/relabelled graphs fit too.
struct SmallGraph {
  std::vector<std::vector<std::uint32_t>> adj;

  std::size_t size() const { return adj.size(); }
  static SmallGraph from_topology(const Topology& topo);
  static SmallGraph induced(const Topology& topo, const std::vector<VertexId>& verts,
                            std::vector<VertexId>* id_map = nullptr);
  void sort_rows();
  std::size_t edge_count() const;
};

struct IsoReport {
  bool found = false;
  bool via_candidate = false;  // the structured map checked out; no search ran
  std::vector<std::uint32_t> map;
  std::string note;
};

// Exact search, WL colour refinement + backtracking. Intended for graphs
// up to 2^13 vertices; `budget` caps backtrack nodes and a nullopt result
// with *exhausted set means the search gave up rather than proved absence.
std::optional<std::vector<std::uint32_t>> find_isomorphism(const SmallGraph& g, const SmallGraph& h,
                                                           std::uint64_t budget = 50'000'000,
                                                           bool* exhausted = nullptr);

// Block-swap map into the (t,s) cube: a- and b-blocks trade places and the
// class bit flips. Verified edge-by-edge; falls back to search on failure.
IsoReport swap_isomorphism(const CubeParams& p);
Word swap_map_word(Word u, const CubeParams& p);

// Checks the half against the one-smaller cube under drop-the-fixed-bit
// relabelling; that map is not always edge-preserving, so a failed check
// falls back to search.
IsoReport half_isomorphism(const Topology& topo, Coordinate coord, int value);

}  // namespace letq
