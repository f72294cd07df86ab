#include "letq/topology.hpp"

#include <algorithm>
#include <stdexcept>

namespace letq {

namespace {

void check_build_width(int width, const BuildOptions& opt) {
  if (width > opt.max_width)
    throw std::invalid_argument("refusing to materialize 2^" + std::to_string(width) +
                                " vertices (limit 2^" + std::to_string(opt.max_width) + ")");
}

}  // namespace

void Topology::finalize() {
  std::size_t degsum = 0;
  masks_.assign(adj_.size(), DynBitset(adj_.size()));
  for (VertexId v = 0; v < adj_.size(); ++v) {
    auto& row = adj_[v];
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
    degsum += row.size();
    for (VertexId u : row) {
      if (u == v) throw std::invalid_argument("self-loop at " + label(v));
      masks_[v].set(u);
    }
  }
  for (VertexId v = 0; v < adj_.size(); ++v)
    for (VertexId u : adj_[v])
      if (!masks_[u].test(v)) throw std::invalid_argument("asymmetric adjacency at " + label(v) + " " + label(u));
  edge_count_ = degsum / 2;
}

Topology Topology::build_letq(const CubeParams& p, const BuildOptions& opt) {
  p.validate();
  check_build_width(p.width(), opt);
  Topology topo;
  topo.family_ = Family::LeTQ;
  topo.params_ = p;
  topo.width_ = p.width();
  std::size_t n = std::size_t{1} << p.width();
  topo.adj_.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    auto nb = letq_neighbors(static_cast<Word>(v), p);
    topo.adj_[v].assign(nb.begin(), nb.end());
  }
  topo.finalize();
  if (opt.cross_validate) {
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t u = 0; u < n; ++u)
        if (topo.masks_[v].test(u) != letq_adjacent(v, u, p))
          throw std::logic_error("adjacency generator disagrees with pairwise rule at " +
                                 topo.label(static_cast<VertexId>(v)) + " " + topo.label(static_cast<VertexId>(u)));
  }
  return topo;
}

Topology Topology::build_ltq(int n, const BuildOptions& opt) {
  if (n < 1 || n > kMaxLabelWidth) throw std::invalid_argument("ltq dimension out of range");
  check_build_width(n, opt);
  Topology topo;
  topo.family_ = Family::LTQ;
  topo.width_ = n;
  std::size_t count = std::size_t{1} << n;
  topo.adj_.resize(count);
  for (std::size_t v = 0; v < count; ++v) {
    auto nb = ltq_neighbors(static_cast<Word>(v), n);
    topo.adj_[v].assign(nb.begin(), nb.end());
  }
  topo.finalize();
  if (opt.cross_validate) {
    for (std::size_t v = 0; v < count; ++v)
      for (std::size_t u = 0; u < count; ++u)
        if (topo.masks_[v].test(u) != ltq_adjacent(v, u, n))
          throw std::logic_error("adjacency generator disagrees with pairwise rule at " +
                                 topo.label(static_cast<VertexId>(v)) + " " + topo.label(static_cast<VertexId>(u)));
  }
  return topo;
}

Topology Topology::from_edges(const CubeParams& p, const std::vector<Edge>& edges) {
  p.validate();
  BuildOptions opt;
  check_build_width(p.width(), opt);
  Topology topo;
  topo.family_ = Family::LeTQ;
  topo.params_ = p;
  topo.width_ = p.width();
  std::size_t n = std::size_t{1} << p.width();
  topo.adj_.resize(n);
  for (auto [u, v] : edges) {
    if (u >= n || v >= n) throw std::invalid_argument("edge endpoint outside the label space");
    if (u == v) throw std::invalid_argument("self-loop in edge list");
    topo.adj_[u].push_back(v);
    topo.adj_[v].push_back(u);
  }
  topo.finalize();
  return topo;
}

const CubeParams& Topology::params() const {
  if (family_ != Family::LeTQ) throw std::invalid_argument("not an exchanged cube");
  return params_;
}

int Topology::ltq_dim() const {
  if (family_ != Family::LTQ) throw std::invalid_argument("not a twisted cube");
  return width_;
}

std::vector<Edge> Topology::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count_);
  for (VertexId v = 0; v < adj_.size(); ++v)
    for (VertexId u : adj_[v])
      if (v < u) out.emplace_back(v, u);
  return out;
}

ClusterPartition cluster_partition(const Topology& topo) {
  const CubeParams& p = topo.params();
  ClusterPartition part;
  part.class0.resize(std::size_t{1} << p.t);
  part.class1.resize(std::size_t{1} << p.s);
  for (VertexId v = 0; v < topo.vertex_count(); ++v) {
    if (class_bit(v))
      part.class1[a_block(v, p)].push_back(v);
    else
      part.class0[b_block(v, p)].push_back(v);
  }
  return part;
}

Coordinate parse_coordinate(std::string_view text) {
  if (text.size() < 2 || (text[0] != 'a' && text[0] != 'b'))
    throw std::invalid_argument("coordinate must look like a0 or b2");
  Coordinate c;
  c.block = text[0] == 'a' ? Coordinate::A : Coordinate::B;
  int idx = 0;
  for (char ch : text.substr(1)) {
    if (ch < '0' || ch > '9') throw std::invalid_argument("coordinate must look like a0 or b2");
    idx = idx * 10 + (ch - '0');
  }
  c.index = idx;
  return c;
}

std::string coordinate_name(Coordinate c) {
  return (c.block == Coordinate::A ? "a" : "b") + std::to_string(c.index);
}

Decomposition decompose(const Topology& topo, Coordinate coord, int value) {
  const CubeParams& p = topo.params();
  if (value != 0 && value != 1) throw std::invalid_argument("coordinate value must be 0 or 1");
  int blockwidth = coord.block == Coordinate::A ? p.s : p.t;
  if (coord.index < 0 || coord.index >= blockwidth)
    throw std::invalid_argument("no coordinate " + coordinate_name(coord) + " at these parameters");
  if (blockwidth < 2)
    throw std::invalid_argument("cannot split on the only " +
                                std::string(coord.block == Coordinate::A ? "a" : "b") + "-coordinate");
  int bit = coord.block == Coordinate::A ? p.t + 1 + coord.index : 1 + coord.index;

  Decomposition d;
  d.half.reserve(topo.vertex_count() / 2);
  for (VertexId v = 0; v < topo.vertex_count(); ++v)
    if ((v >> bit & 1) == static_cast<unsigned>(value)) d.half.push_back(v);
  for (VertexId v : d.half)
    for (VertexId u : topo.neighbors(v))
      if ((u >> bit & 1) != static_cast<unsigned>(value)) d.boundary_edges.emplace_back(v, u);
  std::sort(d.boundary_edges.begin(), d.boundary_edges.end());
  return d;
}

}  // namespace letq
