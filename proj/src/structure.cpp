#include "letq/structure.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace letq {

namespace {

DynBitset member_mask(const Topology& topo, const std::vector<VertexId>& members) {
  DynBitset m(topo.vertex_count());
  for (VertexId v : members) m.set(v);
  return m;
}

}  // namespace

FaultSet::FaultSet(const Topology& topo, std::vector<VertexId> members) : members_(std::move(members)) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  for (VertexId v : members_)
    if (v >= topo.vertex_count()) throw std::invalid_argument("fault vertex outside the label space");
}

FaultSet FaultSet::from_labels(const Topology& topo, const std::vector<std::string>& labels) {
  std::vector<VertexId> ids;
  ids.reserve(labels.size());
  for (const auto& text : labels) ids.push_back(topo.id_of(text));
  return FaultSet(topo, std::move(ids));
}

bool FaultSet::contains(VertexId v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

std::vector<std::string> FaultSet::labels(const Topology& topo) const {
  std::vector<std::string> out;
  out.reserve(members_.size());
  for (VertexId v : members_) out.push_back(topo.label(v));
  return out;
}

bool is_triangle_free(const Topology& topo) {
  for (VertexId v = 0; v < topo.vertex_count(); ++v)
    for (VertexId u : topo.neighbors(v))
      if (v < u && topo.neighbor_mask(v).any_and(topo.neighbor_mask(u))) return false;
  return true;
}

int max_common_neighbors(const Topology& topo) {
  std::size_t best = 0;
  for (VertexId v = 0; v < topo.vertex_count(); ++v)
    for (VertexId u = v + 1; u < topo.vertex_count(); ++u)
      best = std::max(best, topo.neighbor_mask(v).count_and(topo.neighbor_mask(u)));
  return static_cast<int>(best);
}

namespace {

// Connected-set enumeration (each connected induced subgraph visited once,
// rooted at its smallest vertex) with a visit budget.
class ConnectedSetScan {
 public:
  ConnectedSetScan(const Topology& topo, int g, int max_size, std::uint64_t budget)
      : topo_(topo), g_(g), max_size_(max_size), budget_(budget), in_set_(topo.vertex_count()),
        seen_(topo.vertex_count()) {}

  bool run() {  // false when the budget ran out
    if (max_size_ < 1) return true;
    for (VertexId root = 0; root < topo_.vertex_count(); ++root) {
      set_.clear();
      seen_.clear();
      set_.push_back(root);
      in_set_.set(root);
      seen_.set(root);
      std::vector<VertexId> ext;
      for (VertexId u : topo_.neighbors(root))
        if (u > root) {
          ext.push_back(u);
          seen_.set(u);
        }
      bool ok = extend(root, ext);
      in_set_.reset(root);
      if (!ok) return false;
    }
    return true;
  }

  long best_order() const { return best_order_; }
  const std::vector<VertexId>& best_set() const { return best_set_; }
  std::uint64_t visited() const { return visited_; }

 private:
  bool extend(VertexId root, std::vector<VertexId>& ext) {
    if (++visited_ > budget_) return false;
    visit_current();
    if (static_cast<int>(set_.size()) == max_size_) return true;
    while (!ext.empty()) {
      VertexId w = ext.back();
      ext.pop_back();
      std::vector<VertexId> ext2 = ext;
      std::vector<VertexId> newly;
      for (VertexId u : topo_.neighbors(w))
        if (u > root && !seen_.test(u)) {
          ext2.push_back(u);
          newly.push_back(u);
          seen_.set(u);
        }
      set_.push_back(w);
      in_set_.set(w);
      bool ok = extend(root, ext2);
      in_set_.reset(w);
      set_.pop_back();
      for (VertexId u : newly) seen_.reset(u);
      if (!ok) return false;
    }
    return true;
  }

  void visit_current() {
    if (static_cast<int>(set_.size()) < g_ + 1) return;
    if (best_order_ > 0 && static_cast<long>(set_.size()) >= best_order_) return;
    for (VertexId v : set_)
      if (static_cast<int>(topo_.neighbor_mask(v).count_and(in_set_)) < g_) return;
    best_order_ = static_cast<long>(set_.size());
    best_set_ = set_;
  }

  const Topology& topo_;
  int g_;
  int max_size_;
  std::uint64_t budget_;
  std::uint64_t visited_ = 0;
  DynBitset in_set_;
  DynBitset seen_;  // in the set, or already offered as an extension
  std::vector<VertexId> set_;
  long best_order_ = 0;
  std::vector<VertexId> best_set_;
};

}  // namespace

MinOrderResult min_order_with_min_degree(const Topology& topo, int g, std::uint64_t budget) {
  const CubeParams& p = topo.params();
  if (g < 0) throw std::invalid_argument("degree bound must be nonnegative");

  MinOrderResult res;
  if (g == 0) {
    res.order = 1;
    res.witness = {0};
    res.exact = true;
    return res;
  }

  if (g > p.s) {
    // No cube witness above s; search outright. Order 0 means no induced
    // subgraph reaches the bound (certified only when exact).
    ConnectedSetScan scan(topo, g, static_cast<int>(topo.vertex_count()), budget);
    bool complete = scan.run();
    res.visited = scan.visited();
    res.order = scan.best_order();
    res.witness = scan.best_set();
    res.exact = complete;
    return res;
  }

  GoodNeighborWitness wit = good_neighbor_fault_set(topo, g);
  DynBitset core_mask = member_mask(topo, wit.core);
  for (VertexId v : wit.core)
    if (static_cast<int>(topo.neighbor_mask(v).count_and(core_mask)) < g)
      throw std::logic_error("core witness misses its own degree bound");

  res.order = long{1} << g;
  res.witness = wit.core;
  if (topo.vertex_count() > (std::size_t{1} << 9)) return res;  // bound only

  ConnectedSetScan scan(topo, g, (1 << g) - 1, budget);
  bool complete = scan.run();
  res.visited = scan.visited();
  if (scan.best_order() > 0) {
    // A smaller subgraph than the cube bound predicts; report it as found.
    res.order = scan.best_order();
    res.witness = scan.best_set();
    res.exact = complete;
    return res;
  }
  res.exact = complete;
  return res;
}

GoodNeighborWitness good_neighbor_fault_set(const Topology& topo, int g) {
  const CubeParams& p = topo.params();
  if (p.s > p.t)
    throw std::invalid_argument("requires s <= t; renormalize through the block-swap map first");
  if (g < 0 || g > p.s) throw std::invalid_argument("good-neighbor level must lie in [0, s]");

  GoodNeighborWitness wit;
  wit.level = g;
  int shift = p.s - g + p.t + 1;
  for (Word x = 0; x < (Word{1} << g); ++x) wit.core.push_back(static_cast<VertexId>(x << shift));

  DynBitset in_core = member_mask(topo, wit.core);
  DynBitset in_boundary(topo.vertex_count());
  for (VertexId v : wit.core)
    for (VertexId u : topo.neighbors(v))
      if (!in_core.test(u) && !in_boundary.test(u)) {
        in_boundary.set(u);
        wit.boundary.push_back(u);
      }
  std::sort(wit.boundary.begin(), wit.boundary.end());
  wit.closed_hull = wit.core;
  wit.closed_hull.insert(wit.closed_hull.end(), wit.boundary.begin(), wit.boundary.end());
  std::sort(wit.closed_hull.begin(), wit.closed_hull.end());
  return wit;
}

bool is_g_good_neighbor_set(const Topology& topo, const FaultSet& f, int g) {
  if (g < 0) throw std::invalid_argument("good-neighbor level must be nonnegative");
  DynBitset faulty = member_mask(topo, f.members());
  for (VertexId v = 0; v < topo.vertex_count(); ++v) {
    if (faulty.test(v)) continue;
    if (static_cast<int>(topo.neighbor_mask(v).count_andnot(faulty)) < g) return false;
  }
  return true;
}

std::vector<long> surviving_components(const Topology& topo, const FaultSet& f) {
  DynBitset faulty = member_mask(topo, f.members());
  DynBitset seen(topo.vertex_count());
  std::vector<long> sizes;
  std::vector<VertexId> queue;
  for (VertexId v = 0; v < topo.vertex_count(); ++v) {
    if (faulty.test(v) || seen.test(v)) continue;
    long size = 0;
    queue.clear();
    queue.push_back(v);
    seen.set(v);
    while (!queue.empty()) {
      VertexId x = queue.back();
      queue.pop_back();
      ++size;
      for (VertexId u : topo.neighbors(x))
        if (!faulty.test(u) && !seen.test(u)) {
          seen.set(u);
          queue.push_back(u);
        }
    }
    sizes.push_back(size);
  }
  return sizes;
}

bool is_rg_cut(const Topology& topo, const FaultSet& f, int g) {
  if (!is_g_good_neighbor_set(topo, f, g)) return false;
  return surviving_components(topo, f).size() >= 2;
}

long kappa_g_formula(const CubeParams& p, int g) {
  p.validate();
  if (p.s > p.t)
    throw std::invalid_argument("requires s <= t; renormalize through the block-swap map first");
  if (g < 0 || g > p.s) throw std::invalid_argument("good-neighbor level must lie in [0, s]");
  return (long{1} << g) * (p.s - g + 1);
}

namespace {

// One worker's scan over the k-subsets whose largest element falls in its
// stripe, in colexicographic order. Tracks residual degrees so a frozen
// survivor below the degree bound prunes the whole branch.
class CutScan {
 public:
  CutScan(const Topology& topo, int g, int k, std::uint64_t budget)
      : topo_(topo), g_(g), k_(k), budget_(budget), n_(static_cast<int>(topo.vertex_count())),
        resid_(topo.vertex_count()), chosen_mask_(topo.vertex_count()) {
    for (int v = 0; v < n_; ++v) resid_[static_cast<std::size_t>(v)] = topo.degree(static_cast<VertexId>(v));
  }

  // stripe: largest elements m with m % stride == offset
  void run(int offset, int stride) {
    for (int m = k_ - 1; m < n_; ++m) {
      if (m % stride != offset) continue;
      if (done_) return;
      pick(m);
      descend(k_ - 1, m);
      unpick(m);
    }
  }

  bool found() const { return !witness_.empty(); }
  bool exhausted() const { return exhausted_; }
  std::uint64_t examined() const { return examined_; }
  const std::vector<VertexId>& witness() const { return witness_; }

 private:
  void pick(int v) {
    chosen_.push_back(static_cast<VertexId>(v));
    chosen_mask_.set(static_cast<std::size_t>(v));
    if (resid_[static_cast<std::size_t>(v)] < g_) --cnt_bad_;
    for (VertexId u : topo_.neighbors(static_cast<VertexId>(v)))
      if (--resid_[u] == g_ - 1 && !chosen_mask_.test(u)) ++cnt_bad_;
  }

  void unpick(int v) {
    for (VertexId u : topo_.neighbors(static_cast<VertexId>(v)))
      if (resid_[u]++ == g_ - 1 && !chosen_mask_.test(u)) --cnt_bad_;
    if (resid_[static_cast<std::size_t>(v)] < g_) ++cnt_bad_;
    chosen_mask_.reset(static_cast<std::size_t>(v));
    chosen_.pop_back();
  }

  void descend(int rem, int limit) {
    if (done_) return;
    if (rem == 0) {
      leaf();
      return;
    }
    // Vertices in [e+1, limit) stay survivors once e is picked; a residual
    // degree already below g there cannot recover.
    std::vector<bool> suffbad(static_cast<std::size_t>(limit) + 1, false);
    for (int i = limit - 1; i >= rem; --i)
      suffbad[static_cast<std::size_t>(i)] =
          suffbad[static_cast<std::size_t>(i) + 1] || resid_[static_cast<std::size_t>(i)] < g_;

    for (int e = rem - 1; e < limit; ++e) {
      if (suffbad[static_cast<std::size_t>(e) + 1]) continue;
      pick(e);
      descend(rem - 1, e);
      unpick(e);
      if (done_) return;
    }
  }

  void leaf() {
    if (++examined_ > budget_) {
      exhausted_ = true;
      done_ = true;
      return;
    }
    if (cnt_bad_ > 0) return;
    if (!disconnects()) return;
    witness_ = chosen_;
    std::sort(witness_.begin(), witness_.end());
    done_ = true;
  }

  bool disconnects() {
    int survivors = n_ - k_;
    if (survivors <= 1) return false;
    int start = 0;
    while (chosen_mask_.test(static_cast<std::size_t>(start))) ++start;
    bfs_seen_.assign(static_cast<std::size_t>(n_), false);
    stack_.clear();
    stack_.push_back(static_cast<VertexId>(start));
    bfs_seen_[static_cast<std::size_t>(start)] = true;
    int reached = 0;
    while (!stack_.empty()) {
      VertexId x = stack_.back();
      stack_.pop_back();
      ++reached;
      for (VertexId u : topo_.neighbors(x))
        if (!chosen_mask_.test(u) && !bfs_seen_[u]) {
          bfs_seen_[u] = true;
          stack_.push_back(u);
        }
    }
    return reached < survivors;
  }

  const Topology& topo_;
  int g_;
  int k_;
  std::uint64_t budget_;
  int n_;
  std::vector<int> resid_;
  DynBitset chosen_mask_;
  std::vector<VertexId> chosen_;
  int cnt_bad_ = 0;
  std::uint64_t examined_ = 0;
  bool exhausted_ = false;
  bool done_ = false;
  std::vector<VertexId> witness_;
  std::vector<bool> bfs_seen_;
  std::vector<VertexId> stack_;
};

bool colex_less(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  return std::lexicographical_compare(a.rbegin(), a.rend(), b.rbegin(), b.rend());
}

}  // namespace

CutReport kappa_g_bruteforce(const Topology& topo, int g, std::uint64_t budget, int jobs) {
  const CubeParams& p = topo.params();
  if (g < 0 || g > std::min(p.s, p.t))
    throw std::invalid_argument("good-neighbor level must lie in [0, min(s,t)]");
  if (jobs < 1) throw std::invalid_argument("jobs must be positive");
  if (budget == 0) budget = UINT64_MAX;

  CutReport rep;
  rep.g = g;
  rep.formula = (p.s <= p.t) ? kappa_g_formula(p, g) : kappa_g_formula(CubeParams{p.t, p.s}, g);

  int n = static_cast<int>(topo.vertex_count());
  std::uint64_t spent = 0;
  for (int k = 1; k < n; ++k) {
    std::uint64_t remaining = budget > spent ? budget - spent : 0;
    if (remaining == 0) {
      rep.partial = true;
      rep.certified_at_least = k;
      rep.examined = spent;
      return rep;
    }
    int workers = std::min(jobs, n);
    std::vector<CutScan> scans;
    scans.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) scans.emplace_back(topo, g, k, std::max<std::uint64_t>(remaining / workers, 1));
    if (workers == 1) {
      scans[0].run(0, 1);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w)
        threads.emplace_back([&scans, w, workers] { scans[static_cast<std::size_t>(w)].run(w, workers); });
      for (auto& th : threads) th.join();
    }

    bool exhausted = false;
    const std::vector<VertexId>* best = nullptr;
    for (auto& s : scans) {
      spent += s.examined();
      exhausted = exhausted || s.exhausted();
      if (s.found() && (!best || colex_less(s.witness(), *best))) best = &s.witness();
    }
    if (best) {
      rep.certified = k;
      rep.certified_at_least = k;
      rep.witness = *best;
      rep.examined = spent;
      rep.component_sizes = surviving_components(topo, FaultSet(topo, rep.witness));
      return rep;
    }
    if (exhausted) {
      rep.partial = true;
      rep.certified_at_least = k;
      rep.examined = spent;
      return rep;
    }
    rep.certified_at_least = k + 1;
  }
  rep.examined = spent;
  rep.partial = true;  // no good-neighbor cut of any size; nothing to certify
  return rep;
}

}  // namespace letq
