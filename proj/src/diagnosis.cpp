#include "letq/diagnosis.hpp"

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

std::uint8_t adversary_bit(const AdversaryPolicy& policy, std::size_t test_index) {
  switch (policy.kind) {
    case AdversaryPolicy::Kind::AllZeros:
      return 0;
    case AdversaryPolicy::Kind::AllOnes:
      return 1;
    case AdversaryPolicy::Kind::SeededRandom:
      return static_cast<std::uint8_t>(mix64(mix64(policy.seed) + test_index) & 1);
  }
  return 0;
}

}  // namespace

TestAssignment TestAssignment::build(const Topology& topo, Model model) {
  TestAssignment a;
  a.model_ = model;
  if (model == Model::PMC) {
    a.pmc_.reserve(2 * topo.edge_count());
    for (VertexId w = 0; w < topo.vertex_count(); ++w)
      for (VertexId v : topo.neighbors(w)) a.pmc_.push_back({w, v});
  } else {
    for (VertexId w = 0; w < topo.vertex_count(); ++w) {
      const auto& nb = topo.neighbors(w);
      for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) a.mm_.push_back({w, nb[i], nb[j]});
    }
  }
  return a;
}

const std::vector<PmcTest>& TestAssignment::pmc_tests() const {
  if (model_ != Model::PMC) throw std::invalid_argument("assignment holds comparison tests");
  return pmc_;
}

const std::vector<MmTest>& TestAssignment::mm_tests() const {
  if (model_ != Model::MMStar) throw std::invalid_argument("assignment holds one-way tests");
  return mm_;
}

Syndrome generate_syndrome(const Topology& topo, const TestAssignment& assignment, const FaultSet& fault,
                           const AdversaryPolicy& policy) {
  DynBitset faulty = member_mask(topo, fault.members());
  Syndrome syn(assignment.size(), 0);
  if (assignment.model() == Model::PMC) {
    const auto& tests = assignment.pmc_tests();
    for (std::size_t i = 0; i < tests.size(); ++i) {
      if (faulty.test(tests[i].tester))
        syn[i] = adversary_bit(policy, i);
      else
        syn[i] = faulty.test(tests[i].tested) ? 1 : 0;
    }
  } else {
    const auto& tests = assignment.mm_tests();
    for (std::size_t i = 0; i < tests.size(); ++i) {
      if (faulty.test(tests[i].tester))
        syn[i] = adversary_bit(policy, i);
      else
        syn[i] = (faulty.test(tests[i].left) || faulty.test(tests[i].right)) ? 1 : 0;
    }
  }
  return syn;
}

bool is_consistent(const Topology& topo, const TestAssignment& assignment, const Syndrome& syndrome,
                   const FaultSet& fault) {
  if (syndrome.size() != assignment.size()) throw std::invalid_argument("syndrome length mismatch");
  DynBitset faulty = member_mask(topo, fault.members());
  if (assignment.model() == Model::PMC) {
    const auto& tests = assignment.pmc_tests();
    for (std::size_t i = 0; i < tests.size(); ++i) {
      if (faulty.test(tests[i].tester)) continue;
      if (syndrome[i] != (faulty.test(tests[i].tested) ? 1 : 0)) return false;
    }
  } else {
    const auto& tests = assignment.mm_tests();
    for (std::size_t i = 0; i < tests.size(); ++i) {
      if (faulty.test(tests[i].tester)) continue;
      std::uint8_t expect = (faulty.test(tests[i].left) || faulty.test(tests[i].right)) ? 1 : 0;
      if (syndrome[i] != expect) return false;
    }
  }
  return true;
}

namespace {

// Shared pair check over prebuilt masks; the public wrappers and the t_g
// verification loops all land here.
DistinguishReport check_pair(const Topology& topo, Model model, const std::vector<VertexId>& a,
                             const DynBitset& amask, const std::vector<VertexId>& b, const DynBitset& bmask) {
  DistinguishReport rep;
  rep.model = model;
  auto in_either = [&](VertexId v) { return amask.test(v) || bmask.test(v); };
  auto in_symdiff = [&](VertexId v) { return amask.test(v) != bmask.test(v); };

  if (model == Model::PMC) {
    auto scan = [&](const std::vector<VertexId>& side) -> bool {
      for (VertexId v : side) {
        if (!in_symdiff(v)) continue;
        for (VertexId u : topo.neighbors(v))
          if (!in_either(u)) {
            rep.distinguishable = true;
            rep.witness = DistinguishWitness{0, u, v, 0};
            return true;
          }
      }
      return false;
    };
    if (!scan(a)) scan(b);
    return rep;
  }

  for (VertexId w = 0; w < topo.vertex_count(); ++w) {
    if (in_either(w)) continue;
    VertexId free_nb = 0, diff_nb = 0;
    VertexId only1[2] = {0, 0}, only2[2] = {0, 0};
    int nfree = 0, ndiff = 0, n1 = 0, n2 = 0;
    for (VertexId u : topo.neighbors(w)) {
      bool ina = amask.test(u), inb = bmask.test(u);
      if (!ina && !inb) {
        if (nfree++ == 0) free_nb = u;
      } else if (ina != inb) {
        if (ndiff++ == 0) diff_nb = u;
        if (ina && n1 < 2) only1[n1++] = u;
        if (inb && n2 < 2) only2[n2++] = u;
      }
    }
    if (nfree >= 1 && ndiff >= 1) {
      rep.distinguishable = true;
      rep.witness = DistinguishWitness{1, free_nb, diff_nb, w};
      return rep;
    }
    if (n1 >= 2) {
      rep.distinguishable = true;
      rep.witness = DistinguishWitness{2, only1[0], only1[1], w};
      return rep;
    }
    if (n2 >= 2) {
      rep.distinguishable = true;
      rep.witness = DistinguishWitness{3, only2[0], only2[1], w};
      return rep;
    }
  }
  return rep;
}

}  // namespace

DistinguishReport pmc_distinguishable(const Topology& topo, const FaultSet& f1, const FaultSet& f2) {
  return distinguishable(topo, Model::PMC, f1, f2);
}

DistinguishReport mm_distinguishable(const Topology& topo, const FaultSet& f1, const FaultSet& f2) {
  return distinguishable(topo, Model::MMStar, f1, f2);
}

DistinguishReport distinguishable(const Topology& topo, Model model, const FaultSet& f1, const FaultSet& f2) {
  if (f1 == f2) throw std::invalid_argument("fault sets must differ");
  return check_pair(topo, model, f1.members(), member_mask(topo, f1.members()), f2.members(),
                    member_mask(topo, f2.members()));
}

long tg_formula(const CubeParams& p, int g, Model model) {
  p.validate();
  if (p.s > p.t)
    throw std::invalid_argument("requires s <= t; renormalize through the block-swap map first");
  if (g < 0 || g > p.s) throw std::invalid_argument("good-neighbor level must lie in [0, s]");
  if (model == Model::PMC) return (long{1} << g) * (p.s - g + 2) - 1;
  if (p.s == 1 && p.t == 1) return 1;
  if (g == 0) return p.s + 1;
  if (g == 1) return p.s == 2 ? 4 : 2 * p.s + 1;
  return (long{1} << g) * (p.s - g + 2) - 1;
}

std::pair<FaultSet, FaultSet> indistinguishable_witness(const Topology& topo, int g, Model model) {
  const CubeParams& p = topo.params();
  long cap = tg_formula(p, g, model) + 1;

  std::vector<VertexId> first, second;
  if (model == Model::MMStar && p.s == 1 && p.t == 1) {
    first = {topo.id_of("000"), topo.id_of("110")};
    second = {topo.id_of("011"), topo.id_of("101")};
  } else if (model == Model::MMStar && g == 0) {
    first = topo.neighbors(0);
    second = first;
    second.push_back(0);
  } else if (model == Model::MMStar && g == 1 && p.s == 2) {
    int base = p.t + 1;
    VertexId all_a = static_cast<VertexId>(3u << base);
    first = {0, 1, static_cast<VertexId>((1u << base) | 1), static_cast<VertexId>((2u << base) | 1),
             static_cast<VertexId>(all_a | 1)};
    second = {all_a, 1, static_cast<VertexId>((1u << base) | 1), static_cast<VertexId>((2u << base) | 1),
              static_cast<VertexId>(all_a | 1)};
  } else {
    GoodNeighborWitness wit = good_neighbor_fault_set(topo, g);
    first = wit.boundary;
    second = wit.closed_hull;
  }

  FaultSet f1(topo, std::move(first));
  FaultSet f2(topo, std::move(second));
  if (static_cast<long>(f1.size()) > cap || static_cast<long>(f2.size()) > cap)
    throw std::logic_error("witness pair exceeds its size budget");
  if (!is_g_good_neighbor_set(topo, f1, g) || !is_g_good_neighbor_set(topo, f2, g))
    throw std::logic_error("witness pair misses the good-neighbor condition");
  if (distinguishable(topo, model, f1, f2).distinguishable)
    throw std::logic_error("witness pair is distinguishable");
  return {std::move(f1), std::move(f2)};
}

namespace {

// Lexicographic fixed-size scan with residual-degree tracking: a passed-over
// vertex already below g survivors-side can never recover, so the whole
// tail is pruned.
class GoodNeighborScan {
 public:
  GoodNeighborScan(const Topology& topo, int g, std::uint64_t budget,
                   const std::function<void(const std::vector<VertexId>&)>& visit)
      : topo_(topo), g_(g), budget_(budget), visit_(visit), n_(static_cast<int>(topo.vertex_count())),
        resid_(topo.vertex_count()), chosen_mask_(topo.vertex_count()) {
    for (int v = 0; v < n_; ++v) resid_[static_cast<std::size_t>(v)] = topo.degree(static_cast<VertexId>(v));
  }

  bool run(int max_size) {
    for (int m = 0; m <= std::min(max_size, n_); ++m)
      if (!rec(0, m)) return false;
    return true;
  }

  std::uint64_t visited() const { return visited_; }

 private:
  bool rec(int start, int rem) {
    if (rem == 0) {
      if (++visited_ > budget_) return false;
      if (cnt_bad_ == 0) visit_(cur_);
      return true;
    }
    for (int e = start; e <= n_ - rem; ++e) {
      if (e > start && resid_[static_cast<std::size_t>(e - 1)] < g_) break;
      pick(e);
      bool ok = rec(e + 1, rem - 1);
      unpick(e);
      if (!ok) return false;
    }
    return true;
  }

  void pick(int v) {
    cur_.push_back(static_cast<VertexId>(v));
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
    cur_.pop_back();
  }

  const Topology& topo_;
  int g_;
  std::uint64_t budget_;
  const std::function<void(const std::vector<VertexId>&)>& visit_;
  int n_;
  std::vector<int> resid_;
  DynBitset chosen_mask_;
  std::vector<VertexId> cur_;
  int cnt_bad_ = 0;
  std::uint64_t visited_ = 0;
};

}  // namespace

bool enumerate_good_neighbor_sets(const Topology& topo, int g, int max_size, std::uint64_t budget,
                                  std::uint64_t* visited,
                                  const std::function<void(const std::vector<VertexId>&)>& visit) {
  if (g < 0) throw std::invalid_argument("good-neighbor level must be nonnegative");
  if (max_size < 0) throw std::invalid_argument("max size must be nonnegative");
  if (budget == 0) budget = UINT64_MAX;
  GoodNeighborScan scan(topo, g, budget, visit);
  bool complete = scan.run(max_size);
  if (visited) *visited = scan.visited();
  return complete;
}

namespace {

struct SetEntry {
  std::vector<VertexId> members;
  DynBitset mask;
};

struct PairViolation {
  std::size_t i = 0, j = 0;
  bool found = false;
};

// Outer loop striped across workers; each stops at its first violation, and
// the merged result is the (i, j)-smallest, matching a sequential scan.
void scan_pairs(const Topology& topo, Model model, const std::vector<SetEntry>& sets, std::uint64_t budget,
                int jobs, std::uint64_t* checked, bool* exhausted, PairViolation* violation) {
  int workers = std::max(1, jobs);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(workers), 0);
  std::vector<PairViolation> found(static_cast<std::size_t>(workers));
  std::vector<char> ran_out(static_cast<std::size_t>(workers), 0);
  std::uint64_t slice = std::max<std::uint64_t>(budget / static_cast<std::uint64_t>(workers), 1);

  auto work = [&](int w) {
    std::uint64_t& count = counts[static_cast<std::size_t>(w)];
    for (std::size_t i = static_cast<std::size_t>(w); i < sets.size(); i += static_cast<std::size_t>(workers)) {
      for (std::size_t j = i + 1; j < sets.size(); ++j) {
        if (count >= slice) {
          ran_out[static_cast<std::size_t>(w)] = 1;
          return;
        }
        ++count;
        if (!check_pair(topo, model, sets[i].members, sets[i].mask, sets[j].members, sets[j].mask)
                 .distinguishable) {
          found[static_cast<std::size_t>(w)] = {i, j, true};
          return;
        }
      }
    }
  };

  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> threads;
    threads.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
    for (auto& th : threads) th.join();
  }

  *checked = 0;
  *exhausted = false;
  *violation = {};
  for (int w = 0; w < workers; ++w) {
    *checked += counts[static_cast<std::size_t>(w)];
    *exhausted = *exhausted || ran_out[static_cast<std::size_t>(w)];
    const auto& f = found[static_cast<std::size_t>(w)];
    if (f.found && (!violation->found || f.i < violation->i || (f.i == violation->i && f.j < violation->j)))
      *violation = f;
  }
}

std::vector<VertexId> draw_good_neighbor_set(const Topology& topo, int g, long max_size, Rng& rng) {
  std::size_t n = topo.vertex_count();
  std::uint64_t m = rng.below(static_cast<std::uint64_t>(max_size) + 1);
  DynBitset mask(n);
  std::vector<VertexId> members;
  while (members.size() < m) {
    auto v = static_cast<VertexId>(rng.below(n));
    if (mask.test(v)) continue;
    mask.set(v);
    members.push_back(v);
  }
  // Repair by deletion only: each round removes one member, and the empty
  // set satisfies any admissible g, so this terminates.
  for (;;) {
    VertexId violator = 0;
    bool has = false;
    for (VertexId v = 0; v < n && !has; ++v)
      if (!mask.test(v) && static_cast<int>(topo.neighbor_mask(v).count_andnot(mask)) < g) {
        violator = v;
        has = true;
      }
    if (!has) break;
    std::vector<VertexId> culprits;
    for (VertexId u : topo.neighbors(violator))
      if (mask.test(u)) culprits.push_back(u);
    VertexId gone = culprits[rng.below(culprits.size())];
    mask.reset(gone);
    members.erase(std::find(members.begin(), members.end(), gone));
  }
  std::sort(members.begin(), members.end());
  return members;
}

}  // namespace

FaultSet random_good_neighbor_set(const Topology& topo, int g, long max_size, Rng& rng) {
  if (g < 0 || max_size < 0) throw std::invalid_argument("level and size bound must be nonnegative");
  return FaultSet(topo, draw_good_neighbor_set(topo, g, max_size, rng));
}

VerifyReport verify_tg(const Topology& topo, int g, Model model, const VerifyOptions& opts) {
  const CubeParams& p = topo.params();
  VerifyReport rep;
  rep.params = p;
  rep.g = g;
  rep.model = model;
  rep.mode = opts.mode;
  rep.claimed = opts.claimed_override > 0 ? opts.claimed_override : tg_formula(p, g, model);
  if (opts.jobs < 1) throw std::invalid_argument("jobs must be positive");

  long T = rep.claimed;
  if (opts.mode == VerifyMode::Exhaustive) {
    if (topo.vertex_count() > 16 && opts.budget == 0)
      throw std::invalid_argument("exhaustive mode above 16 vertices needs an explicit budget");
    std::uint64_t budget = opts.budget == 0 ? UINT64_MAX : opts.budget;

    std::vector<SetEntry> sets;
    std::uint64_t visited = 0;
    bool complete = enumerate_good_neighbor_sets(
        topo, g, static_cast<int>(T), budget, &visited,
        [&](const std::vector<VertexId>& members) { sets.push_back({members, member_mask(topo, members)}); });
    rep.enumerated_sets = sets.size();
    if (!complete) {
      rep.partial = true;
      return rep;
    }

    std::uint64_t remaining = budget == UINT64_MAX ? UINT64_MAX : (budget > visited ? budget - visited : 1);
    bool exhausted = false;
    PairViolation violation;
    scan_pairs(topo, model, sets, remaining, opts.jobs, &rep.checked_pairs, &exhausted, &violation);
    if (violation.found) {
      rep.counterexample = {FaultSet(topo, sets[violation.i].members), FaultSet(topo, sets[violation.j].members)};
    } else if (exhausted) {
      rep.partial = true;
      return rep;
    }
  } else {
    std::uint64_t total = opts.samples;
    int workers = opts.jobs;
    std::vector<std::optional<std::pair<FaultSet, FaultSet>>> hits(static_cast<std::size_t>(workers));
    std::vector<std::uint64_t> counts(static_cast<std::size_t>(workers), 0);
    std::vector<std::uint64_t> rejects(static_cast<std::size_t>(workers), 0);

    auto work = [&](int w) {
      Rng rng(mix64(opts.seed) ^ mix64(static_cast<std::uint64_t>(w) + 1));
      std::uint64_t trials = total / static_cast<std::uint64_t>(workers) +
                             (static_cast<std::uint64_t>(w) < total % static_cast<std::uint64_t>(workers) ? 1 : 0);
      for (std::uint64_t i = 0; i < trials; ++i) {
        auto first = draw_good_neighbor_set(topo, g, T, rng);
        auto second = draw_good_neighbor_set(topo, g, T, rng);
        int attempts = 0;
        while (second == first && attempts++ < 32) {
          ++rejects[static_cast<std::size_t>(w)];
          second = draw_good_neighbor_set(topo, g, T, rng);
        }
        if (second == first) continue;
        ++counts[static_cast<std::size_t>(w)];
        if (!check_pair(topo, model, first, member_mask(topo, first), second, member_mask(topo, second))
                 .distinguishable) {
          hits[static_cast<std::size_t>(w)] = {FaultSet(topo, first), FaultSet(topo, second)};
          return;
        }
      }
    };

    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> threads;
      threads.reserve(static_cast<std::size_t>(workers));
      for (int w = 0; w < workers; ++w) threads.emplace_back(work, w);
      for (auto& th : threads) th.join();
    }
    for (int w = 0; w < workers; ++w) {
      rep.checked_pairs += counts[static_cast<std::size_t>(w)];
      rep.rejected_samples += rejects[static_cast<std::size_t>(w)];
      if (hits[static_cast<std::size_t>(w)] && !rep.counterexample) rep.counterexample = hits[static_cast<std::size_t>(w)];
    }
  }

  rep.witness_pair = indistinguishable_witness(topo, g, model);
  rep.witness_ok = true;  // the constructor validates or throws
  rep.passed = !rep.counterexample && rep.witness_ok;
  return rep;
}

DiagnoseResult diagnose(const Topology& topo, const TestAssignment& assignment, const Syndrome& syndrome,
                        int g, long T, std::uint64_t budget) {
  if (T < 0) throw std::invalid_argument("candidate size bound must be nonnegative");
  DiagnoseResult res;
  int cap = static_cast<int>(std::min<long>(T, static_cast<long>(topo.vertex_count())));
  bool complete = enumerate_good_neighbor_sets(topo, g, cap, budget, &res.enumerated,
                                               [&](const std::vector<VertexId>& members) {
                                                 FaultSet f(topo, members);
                                                 if (is_consistent(topo, assignment, syndrome, f))
                                                   res.candidates.push_back(std::move(f));
                                               });
  res.partial = !complete;
  return res;
}

}  // namespace letq
