#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "letq/bitset.hpp"
#include "letq/labels.hpp"

namespace letq {

using VertexId = std::uint32_t;
using Edge = std::pair<VertexId, VertexId>;

enum class Family { LTQ, LeTQ };

struct BuildOptions {
  // Vertices are materialized, so building is capped well below the label
  // width limit.
  int max_width = 20;
  // Re-derive every adjacency from the pairwise predicate and compare.
  bool cross_validate = false;
};

// Vertex ids coincide with packed label words; the full 2^width label space
// is present, so no id map is needed.
class Topology {
 public:
  static Topology build_letq(const CubeParams& p, const BuildOptions& opt = {});
  static Topology build_ltq(int n, const BuildOptions& opt = {});

  // Adjacency taken verbatim from an edge list claiming the given shape;
  // serves the validation path, where the checks themselves judge the data.
  static Topology from_edges(const CubeParams& p, const std::vector<Edge>& edges);

  Family family() const { return family_; }
  int width() const { return width_; }
  const CubeParams& params() const;
  int ltq_dim() const;

  std::size_t vertex_count() const { return adj_.size(); }
  std::size_t edge_count() const { return edge_count_; }
  const std::vector<VertexId>& neighbors(VertexId v) const { return adj_[v]; }
  const DynBitset& neighbor_mask(VertexId v) const { return masks_[v]; }
  int degree(VertexId v) const { return static_cast<int>(adj_[v].size()); }

  std::string label(VertexId v) const { return render_label(v, width_); }
  VertexId id_of(std::string_view text) const { return static_cast<VertexId>(parse_label(text, width_)); }

  // Each edge once, (min,max) endpoints, lexicographically sorted.
  std::vector<Edge> edges() const;

  bool adjacent(VertexId u, VertexId v) const { return masks_[u].test(v); }

 private:
  Family family_ = Family::LeTQ;
  CubeParams params_{};
  int width_ = 0;
  std::size_t edge_count_ = 0;
  std::vector<std::vector<VertexId>> adj_;
  std::vector<DynBitset> masks_;

  void finalize();
};

// Same-class clusters: class0 groups c=0 vertices by their b-block (the
// induced graphs are twisted cubes on the a-block), class1 groups c=1
// vertices by their a-block. Outer index is the grouping block's value.
struct ClusterPartition {
  std::vector<std::vector<VertexId>> class0;
  std::vector<std::vector<VertexId>> class1;
};

ClusterPartition cluster_partition(const Topology& topo);

struct Coordinate {
  enum Block { A, B };
  Block block = Block::A;
  int index = 0;
};

Coordinate parse_coordinate(std::string_view text);
std::string coordinate_name(Coordinate c);

struct Decomposition {
  std::vector<VertexId> half;        // vertices with the fixed bit value
  std::vector<Edge> boundary_edges;  // edges leaving the half; a matching
};

// Splits on one a- or b-coordinate. Fixing the only coordinate of its block
// is rejected: the halves would not be cubes of the same family.
Decomposition decompose(const Topology& topo, Coordinate coord, int value);

}  // namespace letq
