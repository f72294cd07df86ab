#include "letq/isomorphism.hpp"

#include <algorithm>
#include <stdexcept>

namespace letq {

namespace {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Iterated neighbourhood colour refinement; colours are comparable across
// graphs because both sides run the same hash chain.
std::vector<std::uint64_t> wl_colors(const SmallGraph& g, int rounds) {
  std::vector<std::uint64_t> color(g.size()), next(g.size());
  for (std::size_t v = 0; v < g.size(); ++v) color[v] = mix(g.adj[v].size());
  std::vector<std::uint64_t> around;
  for (int r = 0; r < rounds; ++r) {
    for (std::size_t v = 0; v < g.size(); ++v) {
      around.clear();
      for (auto u : g.adj[v]) around.push_back(color[u]);
      std::sort(around.begin(), around.end());
      std::uint64_t h = mix(color[v] ^ 0xabcdef1234567ULL);
      for (auto c : around) h = mix(h ^ c);
      next[v] = h;
    }
    color.swap(next);
  }
  return color;
}

}  // namespace

SmallGraph SmallGraph::from_topology(const Topology& topo) {
  SmallGraph g;
  g.adj.resize(topo.vertex_count());
  for (VertexId v = 0; v < topo.vertex_count(); ++v)
    g.adj[v].assign(topo.neighbors(v).begin(), topo.neighbors(v).end());
  return g;
}

SmallGraph SmallGraph::induced(const Topology& topo, const std::vector<VertexId>& verts,
                               std::vector<VertexId>* id_map) {
  std::vector<std::int64_t> local(topo.vertex_count(), -1);
  for (std::size_t i = 0; i < verts.size(); ++i) local[verts[i]] = static_cast<std::int64_t>(i);
  SmallGraph g;
  g.adj.resize(verts.size());
  for (std::size_t i = 0; i < verts.size(); ++i)
    for (VertexId u : topo.neighbors(verts[i]))
      if (local[u] >= 0) g.adj[i].push_back(static_cast<std::uint32_t>(local[u]));
  g.sort_rows();
  if (id_map) *id_map = verts;
  return g;
}

void SmallGraph::sort_rows() {
  for (auto& row : adj) std::sort(row.begin(), row.end());
}

std::size_t SmallGraph::edge_count() const {
  std::size_t degsum = 0;
  for (auto& row : adj) degsum += row.size();
  return degsum / 2;
}

std::optional<std::vector<std::uint32_t>> find_isomorphism(const SmallGraph& g, const SmallGraph& h,
                                                           std::uint64_t budget, bool* exhausted) {
  if (exhausted) *exhausted = false;
  std::size_t n = g.size();
  if (n != h.size() || g.edge_count() != h.edge_count()) return std::nullopt;
  if (n == 0) return std::vector<std::uint32_t>{};
  if (n > (std::size_t{1} << 13)) throw std::invalid_argument("isomorphism search capped at 2^13 vertices");

  int rounds = 2;
  for (std::size_t m = n; m > 1; m >>= 1) ++rounds;
  auto cg = wl_colors(g, rounds);
  auto ch = wl_colors(h, rounds);
  {
    auto sg = cg, sh = ch;
    std::sort(sg.begin(), sg.end());
    std::sort(sh.begin(), sh.end());
    if (sg != sh) return std::nullopt;
  }

  std::vector<DynBitset> hmask(n, DynBitset(n));
  for (std::size_t v = 0; v < n; ++v)
    for (auto u : h.adj[v]) hmask[v].set(u);

  // Map vertices in an order where each one (after the first per component)
  // already has a mapped neighbour; candidate sets then stay tiny.
  std::vector<std::uint32_t> order;
  order.reserve(n);
  {
    std::vector<char> seen(n, 0);
    for (std::size_t s0 = 0; s0 < n; ++s0) {
      if (seen[s0]) continue;
      seen[s0] = 1;
      order.push_back(static_cast<std::uint32_t>(s0));
      for (std::size_t head = order.size() - 1; head < order.size(); ++head) {
        for (auto u : g.adj[order[head]])
          if (!seen[u]) {
            seen[u] = 1;
            order.push_back(u);
          }
      }
    }
  }

  std::vector<std::int64_t> map(n, -1);
  std::vector<char> used(n, 0);
  std::uint64_t nodes = 0;

  auto consistent = [&](std::uint32_t v, std::uint32_t w) {
    if (cg[v] != ch[w] || g.adj[v].size() != h.adj[w].size()) return false;
    std::size_t mapped_nb = 0;
    for (auto x : g.adj[v])
      if (map[x] >= 0) {
        ++mapped_nb;
        if (!hmask[w].test(static_cast<std::size_t>(map[x]))) return false;
      }
    std::size_t used_nb = 0;
    for (auto y : h.adj[w])
      if (used[y]) ++used_nb;
    return mapped_nb == used_nb;
  };

  bool gave_up = false;
  auto rec = [&](auto&& self, std::size_t depth) -> bool {
    if (depth == n) return true;
    if (++nodes > budget) {
      gave_up = true;
      return false;
    }
    std::uint32_t v = order[depth];
    std::int64_t anchor = -1;
    for (auto x : g.adj[v])
      if (map[x] >= 0) {
        anchor = map[x];
        break;
      }
    auto try_one = [&](std::uint32_t w) -> bool {
      if (used[w] || !consistent(v, w)) return false;
      map[v] = w;
      used[w] = 1;
      if (self(self, depth + 1)) return true;
      map[v] = -1;
      used[w] = 0;
      return false;
    };
    if (anchor >= 0) {
      for (auto w : h.adj[static_cast<std::size_t>(anchor)])
        if (try_one(w)) return true;
    } else {
      for (std::uint32_t w = 0; w < n; ++w)
        if (try_one(w)) return true;
    }
    return false;
  };

  if (!rec(rec, 0)) {
    if (exhausted) *exhausted = gave_up;
    return std::nullopt;
  }
  std::vector<std::uint32_t> out(n);
  for (std::size_t v = 0; v < n; ++v) out[v] = static_cast<std::uint32_t>(map[v]);
  return out;
}

Word swap_map_word(Word u, const CubeParams& p) {
  Word a = a_block(u, p);
  Word b = b_block(u, p);
  Word c = u & 1;
  return b << (p.s + 1) | a << 1 | (c ^ 1);
}

IsoReport swap_isomorphism(const CubeParams& p) {
  p.validate();
  CubeParams q{p.t, p.s};
  IsoReport rep;
  if (p.width() > 20) throw std::invalid_argument("swap map verification capped at 2^20 labels");
  std::size_t n = std::size_t{1} << p.width();

  bool ok = true;
  std::vector<Word> image, expect;
  for (std::size_t u = 0; u < n && ok; ++u) {
    image.clear();
    for (Word v : letq_neighbors(u, p)) image.push_back(swap_map_word(v, p));
    std::sort(image.begin(), image.end());
    expect = letq_neighbors(swap_map_word(u, p), q);
    if (image != expect) ok = false;
  }
  if (ok) {
    rep.found = true;
    rep.via_candidate = true;
    rep.map.resize(n);
    for (std::size_t u = 0; u < n; ++u) rep.map[u] = static_cast<std::uint32_t>(swap_map_word(u, p));
    rep.note = "block-swap map verified on every edge";
    return rep;
  }

  if (p.width() > 13) {
    rep.note = "block-swap map failed verification; graph too large for search";
    return rep;
  }
  auto g = SmallGraph::from_topology(Topology::build_letq(p));
  auto h = SmallGraph::from_topology(Topology::build_letq(q));
  bool gave_up = false;
  auto found = find_isomorphism(g, h, 50'000'000, &gave_up);
  if (found) {
    rep.found = true;
    rep.map = *found;
    rep.note = "block-swap map failed verification; search found another isomorphism";
  } else {
    rep.note = gave_up ? "block-swap map failed verification; search budget exhausted"
                       : "block-swap map failed verification and search found no isomorphism";
  }
  return rep;
}

IsoReport half_isomorphism(const Topology& topo, Coordinate coord, int value) {
  const CubeParams& p = topo.params();
  Decomposition d = decompose(topo, coord, value);
  CubeParams reduced = coord.block == Coordinate::A ? CubeParams{p.s - 1, p.t} : CubeParams{p.s, p.t - 1};
  reduced.validate();
  int bit = coord.block == Coordinate::A ? p.t + 1 + coord.index : 1 + coord.index;
  Word low = (Word{1} << bit) - 1;

  Topology small = Topology::build_letq(reduced);
  IsoReport rep;

  // Candidate relabelling: delete the fixed bit. Positions in d.half are in
  // increasing id order, so dropped ids enumerate 0..2^(w-1)-1 in order.
  bool ok = true;
  for (std::size_t i = 0; i < d.half.size() && ok; ++i) {
    VertexId v = d.half[i];
    Word dv = (v >> (bit + 1)) << bit | (v & low);
    std::vector<Word> image;
    for (VertexId u : topo.neighbors(v))
      if ((u >> bit & 1) == (static_cast<Word>(v) >> bit & 1)) image.push_back((u >> (bit + 1)) << bit | (u & low));
    std::sort(image.begin(), image.end());
    auto expect = letq_neighbors(dv, reduced);
    if (image != expect) ok = false;
  }
  if (ok) {
    rep.found = true;
    rep.via_candidate = true;
    rep.map.resize(d.half.size());
    for (std::size_t i = 0; i < d.half.size(); ++i) {
      VertexId v = d.half[i];
      rep.map[i] = static_cast<std::uint32_t>((v >> (bit + 1)) << bit | (v & low));
    }
    rep.note = "drop-bit relabelling verified on every edge";
    return rep;
  }

  if (topo.width() > 13) {
    rep.note = "drop-bit relabelling failed; graph too large for search";
    return rep;
  }
  auto g = SmallGraph::induced(topo, d.half);
  auto h = SmallGraph::from_topology(small);
  bool gave_up = false;
  auto found = find_isomorphism(g, h, 50'000'000, &gave_up);
  if (found) {
    rep.found = true;
    rep.map = *found;
    rep.note = "drop-bit relabelling failed; search found an isomorphism";
  } else {
    rep.note = gave_up ? "drop-bit relabelling failed; search budget exhausted"
                       : "drop-bit relabelling failed and search found no isomorphism";
  }
  return rep;
}

}  // namespace letq
