// Copyright 2026 The ocf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Pseudo-polynomial solvers for 2-OCF games whose interaction graph is a
// forest. Each agent splits its budget between working alone, each incident
// edge, and (when deviating) what it keeps inside coalitions with
// non-deviators. Tables are indexed by integer budgets 0..W_i.

#ifndef OCF_TREE_SOLVER_HPP
#define OCF_TREE_SOLVER_HPP

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocf/arbitration.hpp"
#include "ocf/core.hpp"
#include "ocf/cover.hpp"
#include "ocf/detail/mixed_radix.hpp"
#include "ocf/lp.hpp"
#include "ocf/oracle.hpp"
#include "ocf/validate.hpp"

namespace ocf {

inline void require_two_ocf(const Game& g) {
  if (g.v().effective_k() > 2)
    throw UnsupportedError("game has positive coalitions with more than two "
                           "members; graph solvers need k <= 2");
}

struct RootedForest {
  std::vector<Agent> parent;  // -1 for roots and non-members
  std::vector<std::vector<Agent>> children;
  std::vector<Agent> roots;
  std::vector<Agent> order;  // every parent precedes its children
};

// Roots each component of the subgraph induced by `members` at its lowest
// agent, or at `preferred` for the component containing it.
inline RootedForest root_forest(const InteractionGraph& gr,
                                const AgentSet& members,
                                std::optional<Agent> preferred = std::nullopt) {
  if (!gr.is_forest_on(members))
    throw UnsupportedError(
        "interaction graph has a cycle; use the treewidth solver");
  RootedForest f;
  f.parent.assign(gr.n(), -1);
  f.children.assign(gr.n(), {});
  for (const auto& comp : gr.components(members)) {
    Agent root = comp.front();
    if (preferred && std::binary_search(comp.begin(), comp.end(), *preferred))
      root = *preferred;
    f.roots.push_back(root);
    std::size_t head = f.order.size();
    f.order.push_back(root);
    while (head < f.order.size()) {
      Agent a = f.order[head++];
      for (Agent b : gr.neighbors(a)) {
        if (!members.contains(b) || b == f.parent[a]) continue;
        f.parent[b] = a;
        f.children[a].push_back(b);
        f.order.push_back(b);
      }
    }
  }
  return f;
}

// Best use of entries supported exactly on {i, j}; coordinates (i, j).
inline CoverTable pair_cover(const Game& g, Agent i, Agent j, int cap_i,
                             int cap_j) {
  std::vector<std::pair<Coalition, Rational>> items;
  for (const auto& [key, value] : g.v().entries())
    if (value > 0 && key.support.size() == 2 &&
        key.support[0] == std::min(i, j) && key.support[1] == std::max(i, j))
      items.emplace_back(g.v().coalition_of(key), value);
  return CoverTable(g.n(), {i, j}, {cap_i, cap_j}, items);
}

inline CoverTable self_cover(const Game& g, Agent i, int cap) {
  return make_cover_table(g, AgentSet{i}, {cap});
}

namespace detail {

// Exact-total withdrawal of one deviator from a list of coalitions:
// best(T) = max sum alpha_l(t_l) subject to sum t_l = T, 0 <= t_l <= m_l.
class WithdrawalKnapsack {
 public:
  WithdrawalKnapsack() { best_.assign(1, Rational(0)); }

  // alpha[l][t] for t = 0..m_l.
  WithdrawalKnapsack(std::vector<int> ids,
                     std::vector<std::vector<Rational>> alpha)
      : ids_(std::move(ids)) {
    best_.assign(1, Rational(0));
    Rational cand;
    for (const auto& a : alpha) {
      const int m = static_cast<int>(a.size()) - 1;
      const int old_total = static_cast<int>(best_.size()) - 1;
      std::vector<Rational> next(old_total + m + 1);
      std::vector<int> bp(old_total + m + 1, -1);
      for (int T = 0; T <= old_total + m; ++T) {
        for (int t = std::max(0, T - old_total); t <= std::min(m, T); ++t) {
          cand = best_[T - t];
          cand += a[t];
          if (bp[T] < 0 || cand > next[T]) {
            next[T] = cand;
            bp[T] = t;
          }
        }
      }
      best_ = std::move(next);
      bps_.push_back(std::move(bp));
    }
  }

  int total() const { return static_cast<int>(best_.size()) - 1; }
  const Rational& best(int T) const { return best_[T]; }

  // (coalition id, amount) per coalition realizing best(T).
  std::vector<std::pair<int, int>> split(int T) const {
    std::vector<std::pair<int, int>> out(ids_.size());
    for (std::size_t l = ids_.size(); l-- > 0;) {
      int t = bps_[l][T];
      out[l] = {ids_[l], t};
      T -= t;
    }
    return out;
  }

 private:
  std::vector<int> ids_;
  std::vector<Rational> best_;
  std::vector<std::vector<int>> bps_;
};

// Payments alpha_c(t) for deviator i withdrawing t = 0..c_i units from
// coalition j.
inline std::vector<Rational> withdrawal_payments(const Game& g,
                                                 const LocalArbitration& arb,
                                                 const Outcome& o, int j,
                                                 Agent i, const AgentSet& s) {
  const Coalition& c = o.structure[j];
  std::vector<Rational> out;
  Coalition d(g.n());
  for (int t = 0; t <= c[i]; ++t) {
    d[i] = t;
    out.push_back(local_payoff(arb, c, d, o.imputation[j], s, g.v()));
  }
  return out;
}

inline WithdrawalKnapsack make_knapsack(const Game& g,
                                        const LocalArbitration& arb,
                                        const Outcome& o,
                                        const std::vector<int>& ids, Agent i,
                                        const AgentSet& s) {
  std::vector<std::vector<Rational>> alpha;
  for (int j : ids) alpha.push_back(withdrawal_payments(g, arb, o, j, i, s));
  return WithdrawalKnapsack(ids, std::move(alpha));
}

// Max-plus prefix maximum, remembering the smallest argument attaining it.
inline void prefix_max(std::vector<Rational>& f, std::vector<int>& arg) {
  arg.assign(f.size(), 0);
  for (std::size_t w = 1; w < f.size(); ++w) {
    if (f[w - 1] >= f[w]) {
      f[w] = f[w - 1];
      arg[w] = arg[w - 1];
    } else {
      arg[w] = static_cast<int>(w);
    }
  }
}

// Payment to deviator a, as a function of the amount r it keeps in the
// coalitions `ids` it shares with a non-deviator, prefix-maximized over r.
struct KeepTable {
  WithdrawalKnapsack knap;
  std::vector<Rational> value;
  std::vector<int> arg;  // kept amount realizing value[r]
};

inline KeepTable make_keep(const Game& g, const LocalArbitration& arb,
                           const Outcome& o, const std::vector<int>& ids,
                           Agent a) {
  KeepTable k;
  k.knap = make_knapsack(g, arb, o, ids, a, AgentSet{a});
  const int M = k.knap.total();
  const int W = g.weight(a);
  k.value.resize(W + 1);
  k.arg.assign(W + 1, 0);
  for (int r = 0; r <= W; ++r) {
    const int rr = std::min(r, M);
    k.value[r] = k.knap.best(M - rr);
    k.arg[r] = rr;
    if (r > 0 && k.value[r - 1] >= k.value[r]) {
      k.value[r] = k.value[r - 1];
      k.arg[r] = k.arg[r - 1];
    }
  }
  return k;
}

// Adds to `dev` the withdrawals of deviator a realizing kp.value[r].
inline void keep_withdrawals(const KeepTable& kp, Agent a, int r, int n,
                             Deviation& dev) {
  const int M = kp.knap.total();
  for (const auto& [j, t] : kp.knap.split(M - kp.arg[r])) {
    if (t == 0) continue;
    Coalition d(n);
    d[a] = t;
    dev.emplace(j, d);
  }
}

// Mixed coalitions of cs owned by their unique member in s.
inline std::vector<std::vector<int>> mixed_owners(const CoalitionStructure& cs,
                                                  const AgentSet& s, int n) {
  std::vector<std::vector<int>> mine(n);
  for (int j : mixed_indices(cs, s)) {
    std::vector<Agent> in;
    for (Agent i : s)
      if (cs[j][i] > 0) in.push_back(i);
    if (in.size() != 1)
      throw UnsupportedError("coalition " + std::to_string(j) +
                             " mixes several deviators with outsiders");
    mine[in.front()].push_back(j);
  }
  return mine;
}

// vbar_i(w) = max over kept r of v*_i(w - r) + alpha_i(C - r), where C is
// what deviator i committed to its mixed coalitions `ids`.
struct DeviatorSelf {
  CoverTable cover;
  WithdrawalKnapsack knap;
  std::vector<Rational> value;
  std::vector<int> keep_arg;

  // Appends the post-deviation use and withdrawals realizing value[w].
  void emit(Agent i, int w, int n, CoalitionStructure& post,
            Deviation& dev) const {
    const int r = keep_arg[w];
    for (const auto& c : cover.witness(std::size_t(w - r), false))
      post.push_back(c);
    for (const auto& [j, t] : knap.split(knap.total() - r)) {
      if (t == 0) continue;
      Coalition d(n);
      d[i] = t;
      dev.emplace(j, d);
    }
  }
};

inline DeviatorSelf make_deviator_self(const Game& g,
                                       const LocalArbitration& arb,
                                       const Outcome& o,
                                       const std::vector<int>& ids, Agent i,
                                       const AgentSet& s) {
  DeviatorSelf d;
  const int W = g.weight(i);
  d.cover = self_cover(g, i, W);
  d.knap = make_knapsack(g, arb, o, ids, i, s);
  const int C = d.knap.total();
  d.value.resize(W + 1);
  d.keep_arg.assign(W + 1, 0);
  Rational cand;
  for (int w = 0; w <= W; ++w)
    for (int r = 0; r <= std::min(w, C); ++r) {
      cand = d.cover.at(std::size_t(w - r));
      cand += d.knap.best(C - r);
      if (r == 0 || cand > d.value[w]) {
        d.value[w] = cand;
        d.keep_arg[w] = r;
      }
    }
  return d;
}

// Budget DP on a rooted forest: each member i has capacity cap[i], a self
// function, and a pair cover on every tree edge. F_i(w) is the best value of
// i's subtree when i spends at most w on itself and its child edges.
class BudgetTreeDp {
 public:
  struct PairUse {
    Agent a, b;
    int amount_a, amount_b;
  };
  struct Allocation {
    std::vector<int> self;  // per agent; -1 for non-members
    std::vector<PairUse> pairs;
  };

  BudgetTreeDp(const Game& g, const RootedForest& f, std::vector<int> cap,
               std::vector<std::vector<Rational>> self)
      : f_(f), cap_(std::move(cap)), F_(g.n()), self_arg_(g.n()),
        steps_(g.n()) {
    for (std::size_t k = f_.order.size(); k-- > 0;) {
      const Agent i = f_.order[k];
      std::vector<Rational> G = std::move(self[i]);
      prefix_max(G, self_arg_[i]);
      Rational cand;
      for (Agent c : f_.children[i]) {
        Step st;
        st.child = c;
        st.pair = pair_cover(g, i, c, cap_[i], cap_[c]);
        st.E.resize(cap_[i] + 1);
        st.e_bp.assign(cap_[i] + 1, 0);
        for (int y = 0; y <= cap_[i]; ++y) {
          for (int z = 0; z <= cap_[c]; ++z) {
            cand = st.pair.at(std::vector<int>{y, z});
            cand += F_[c][cap_[c] - z];
            if (z == 0 || cand > st.E[y]) {
              st.E[y] = cand;
              st.e_bp[y] = z;
            }
          }
        }
        std::vector<Rational> next(cap_[i] + 1);
        st.merge_bp.assign(cap_[i] + 1, 0);
        for (int w = 0; w <= cap_[i]; ++w) {
          for (int y = 0; y <= w; ++y) {
            cand = G[w - y];
            cand += st.E[y];
            if (y == 0 || cand > next[w]) {
              next[w] = cand;
              st.merge_bp[w] = y;
            }
          }
        }
        G = std::move(next);
        steps_[i].push_back(std::move(st));
      }
      F_[i] = std::move(G);
    }
  }

  Rational value() const {
    Rational v = 0;
    for (Agent r : f_.roots) v += F_[r][cap_[r]];
    return v;
  }

  Allocation reconstruct() const {
    Allocation a;
    a.self.assign(F_.size(), -1);
    for (Agent r : f_.roots) walk(r, cap_[r], a);
    return a;
  }

  const CoverTable& pair_table(Agent parent, Agent child) const {
    for (const auto& st : steps_[parent])
      if (st.child == child) return st.pair;
    throw ContractError("no tree edge between the given agents");
  }

 private:
  struct Step {
    Agent child = -1;
    CoverTable pair;
    std::vector<Rational> E;
    std::vector<int> e_bp, merge_bp;
  };

  void walk(Agent i, int w, Allocation& a) const {
    for (std::size_t k = steps_[i].size(); k-- > 0;) {
      const Step& st = steps_[i][k];
      int y = st.merge_bp[w];
      w -= y;
      int z = st.e_bp[y];
      a.pairs.push_back({i, st.child, y, z});
      walk(st.child, cap_[st.child] - z, a);
    }
    a.self[i] = self_arg_[i][w];
  }

  const RootedForest& f_;
  std::vector<int> cap_;
  std::vector<std::vector<Rational>> F_;
  std::vector<std::vector<int>> self_arg_;
  std::vector<std::vector<Step>> steps_;
};

inline void append(CoalitionStructure& out, const CoalitionStructure& more) {
  for (const auto& c : more) out.push_back(c);
}

}  // namespace detail

struct OptValResult {
  Rational value;
  CoalitionStructure witness;
};

// v*(c) for a 2-OCF game on a forest. `root` optionally fixes the root of
// its component; the value does not depend on it.
inline OptValResult optval_tree(const Game& g, const Coalition& c,
                                std::optional<Agent> root = std::nullopt) {
  require_two_ocf(g);
  if (!g.is_valid_coalition(c))
    throw ContractError("coalition " + c.to_string() + " is not within W");
  const int n = g.n();
  RootedForest f = root_forest(g.interaction_graph(), AgentSet::all(n), root);
  std::vector<int> cap = c.values();
  std::vector<CoverTable> selfs;
  std::vector<std::vector<Rational>> self(n);
  for (Agent i = 0; i < n; ++i) {
    selfs.push_back(self_cover(g, i, cap[i]));
    for (std::size_t w = 0; w < selfs[i].size(); ++w)
      self[i].push_back(selfs[i].at(w));
  }
  detail::BudgetTreeDp dp(g, f, cap, std::move(self));
  OptValResult res{dp.value(), {}};
  auto alloc = dp.reconstruct();
  for (Agent i = 0; i < n; ++i)
    detail::append(res.witness,
                   selfs[i].witness(std::size_t(alloc.self[i]), false));
  for (const auto& p : alloc.pairs)
    detail::append(res.witness,
                   dp.pair_table(p.a, p.b).witness(
                       dp.pair_table(p.a, p.b).index().encode(
                           {p.amount_a, p.amount_b}),
                       false));
  return res;
}

// A*(CS, x, S) for a local rule by a DP over the mixed coalitions; tables
// have (W_M + 1)^|S| entries. Works for any k and any graph.
inline ArbValResult arbval_local(const Game& g, const LocalArbitration& arb,
                                 const Outcome& o, const AgentSet& s,
                                 int max_set_size = 4) {
  if (s.size() > max_set_size)
    throw ResourceError("arbval_local: |S| = " + std::to_string(s.size()) +
                        " exceeds the cap of " + std::to_string(max_set_size));
  if (s.empty()) return {0, {}, {}};
  const int n = g.n();
  const auto& cs = o.structure;
  CoverTable cover = make_endowment_cover(g, s);
  const detail::MixedRadix& idx = cover.index();
  const std::vector<Agent>& ag = s.members();
  const std::size_t states = idx.size();

  std::vector<int> mixed = mixed_indices(cs, s);
  std::vector<ExtRational> A(states);
  A[0] = Rational(0);
  std::vector<std::vector<std::size_t>> bps;  // chosen withdrawal offset
  Rational cand;
  for (int j : mixed) {
    // Every withdrawal d <= c^S with its payment and table offset.
    std::vector<int> lim(ag.size());
    for (std::size_t k = 0; k < ag.size(); ++k) lim[k] = cs[j][ag[k]] + 1;
    detail::MixedRadix dspace(lim);
    std::vector<std::size_t> offset(dspace.size());
    std::vector<std::vector<int>> dvec(dspace.size());
    std::vector<Rational> pay(dspace.size());
    for (std::size_t q = 0; q < dspace.size(); ++q) {
      dvec[q] = dspace.decode(q);
      Coalition d(n);
      for (std::size_t k = 0; k < ag.size(); ++k) {
        d[ag[k]] = dvec[q][k];
        offset[q] += idx.stride(k) * static_cast<std::size_t>(dvec[q][k]);
      }
      pay[q] = local_payoff(arb, cs[j], d, o.imputation[j], s, g.v());
    }
    std::vector<ExtRational> next(states);
    std::vector<std::size_t> bp(states, 0);
    for (std::size_t t = 0; t < states; ++t) {
      std::vector<int> tv = idx.decode(t);
      for (std::size_t q = 0; q < dspace.size(); ++q) {
        bool fits = true;
        for (std::size_t k = 0; k < ag.size(); ++k)
          if (dvec[q][k] > tv[k]) {
            fits = false;
            break;
          }
        if (!fits) continue;
        const ExtRational& prev = A[t - offset[q]];
        if (!prev.finite()) continue;
        if (next[t].improve_with_sum(prev.value(), pay[q])) bp[t] = q;
      }
    }
    A = std::move(next);
    bps.push_back(std::move(bp));
  }

  Coalition base = deviation_resources(g, o, s, {});
  std::vector<int> bvec(ag.size());
  for (std::size_t k = 0; k < ag.size(); ++k) bvec[k] = base[ag[k]];
  std::optional<std::size_t> best_t;
  ExtRational best;
  for (std::size_t t = 0; t < states; ++t) {
    if (!A[t].finite()) continue;
    std::vector<int> tv = idx.decode(t);
    bool fits = true;
    for (std::size_t k = 0; k < ag.size(); ++k) {
      tv[k] += bvec[k];
      if (tv[k] >= idx.radix(k)) fits = false;
    }
    if (!fits) continue;
    if (best.improve_with_sum(A[t].value(), cover.at(tv))) best_t = t;
  }

  ArbValResult res{best.value(), {}, {}};
  std::size_t t = *best_t;
  std::vector<int> free_vec = idx.decode(t);
  for (std::size_t k = 0; k < ag.size(); ++k) free_vec[k] += bvec[k];
  res.post = cover.witness(idx.encode(free_vec));
  for (std::size_t l = mixed.size(); l-- > 0;) {
    const int j = mixed[l];
    std::vector<int> lim(ag.size());
    for (std::size_t k = 0; k < ag.size(); ++k) lim[k] = cs[j][ag[k]] + 1;
    detail::MixedRadix dspace(lim);
    std::vector<int> dv = dspace.decode(bps[l][t]);
    Coalition d(n);
    std::size_t off = 0;
    for (std::size_t k = 0; k < ag.size(); ++k) {
      d[ag[k]] = dv[k];
      off += idx.stride(k) * static_cast<std::size_t>(dv[k]);
    }
    if (!d.is_zero()) res.deviation.emplace(j, d);
    t -= off;
  }
  return res;
}

// A*(CS, x, S) on a forest: per-agent payment tables folded into the self
// functions, then the OptVal DP over the forest induced by S. Every mixed
// coalition must have exactly one member in S.
inline ArbValResult arbval_tree(const Game& g, const LocalArbitration& arb,
                                const Outcome& o, const AgentSet& s) {
  require_two_ocf(g);
  const int n = g.n();
  auto mine = detail::mixed_owners(o.structure, s, n);
  InteractionGraph gr = g.interaction_graph();
  if (!gr.is_forest_on(s)) {
    if (s.size() <= 4) return arbval_local(g, arb, o, s);
    throw UnsupportedError("deviating set induces a cycle");
  }
  RootedForest f = root_forest(gr, s);

  std::vector<int> cap(n, 0);
  std::vector<std::vector<Rational>> self(n);
  std::vector<detail::DeviatorSelf> dev(n);
  for (Agent i : s) {
    cap[i] = g.weight(i);
    dev[i] = detail::make_deviator_self(g, arb, o, mine[i], i, s);
    self[i] = dev[i].value;
  }
  detail::BudgetTreeDp dp(g, f, cap, std::move(self));
  ArbValResult res{dp.value(), {}, {}};
  auto alloc = dp.reconstruct();
  for (Agent i : s) dev[i].emit(i, alloc.self[i], n, res.post, res.deviation);
  for (const auto& p : alloc.pairs) {
    const CoverTable& pt = dp.pair_table(p.a, p.b);
    detail::append(res.post,
                   pt.witness(pt.index().encode({p.amount_a, p.amount_b}),
                              false));
  }
  return res;
}

struct CoreCheck {
  Rational max_excess;
  AgentSet set;
  Deviation deviation;        // nonzero withdrawals of `set`
  CoalitionStructure post;    // how `set` uses its resources
  bool in_core() const { return max_excess <= 0; }
};

namespace detail {

// Requires every coalition of the structure to have at most two members.
inline void require_small_supports(const CoalitionStructure& cs) {
  for (int j = 0; j < cs.size(); ++j)
    if (cs[j].support_size() > 2)
      throw UnsupportedError("coalition " + std::to_string(j) +
                             " has more than two members");
}

}  // namespace detail

// Largest excess A*(S) - p_S over connected S of the forest
// working_graph(g, o.structure), with the maximizing set and its deviation.
inline CoreCheck tree_max_excess(const Game& g, const LocalArbitration& arb,
                                 const Outcome& o) {
  require_two_ocf(g);
  const auto& cs = o.structure;
  detail::require_small_supports(cs);
  const int n = g.n();
  if (n == 0) throw ContractError("game has no agents");
  InteractionGraph gr = working_graph(g, cs);
  RootedForest f = root_forest(gr, AgentSet::all(n));
  const std::vector<int>& W = g.weights();

  // Coalitions on each tree edge, keyed by the child.
  std::vector<std::vector<int>> up(n);
  for (int j = 0; j < cs.size(); ++j) {
    AgentSet sp = cs[j].support();
    if (sp.size() != 2) continue;
    Agent a = sp.members()[0], b = sp.members()[1];
    up[f.parent[b] == a ? b : a].push_back(j);
  }

  // child->parent and parent->child keep tables.
  std::vector<detail::KeepTable> keep_up(n), keep_down(n);
  for (Agent c = 0; c < n; ++c) {
    if (f.parent[c] < 0) continue;
    keep_up[c] = detail::make_keep(g, arb, o, up[c], c);
    keep_down[c] = detail::make_keep(g, arb, o, up[c], f.parent[c]);
  }

  std::vector<Rational> pay(n, Rational(0));
  for (Agent i = 0; i < n; ++i) pay[i] = payoff_to_agent(o, i);

  struct Step {
    Agent child;
    CoverTable pair;
    std::vector<Rational> E;
    std::vector<int> z_bp;     // E1 argmax
    std::vector<bool> inside;  // child joins S
    std::vector<int> merge_bp;
  };
  std::vector<std::vector<Rational>> D(n);
  std::vector<std::vector<Step>> steps(n);
  std::vector<CoverTable> selfs(n);
  Rational cand;
  for (std::size_t k = f.order.size(); k-- > 0;) {
    const Agent i = f.order[k];
    selfs[i] = self_cover(g, i, W[i]);
    std::vector<Rational> cur(W[i] + 1);
    for (int w = 0; w <= W[i]; ++w) cur[w] = selfs[i].at(std::size_t(w)) - pay[i];
    for (Agent c : f.children[i]) {
      Step st{c, pair_cover(g, i, c, W[i], W[c]), {}, {}, {}, {}};
      st.E.resize(W[i] + 1);
      st.z_bp.assign(W[i] + 1, 0);
      st.inside.assign(W[i] + 1, false);
      for (int y = 0; y <= W[i]; ++y) {
        st.E[y] = keep_down[c].value[y];
        for (int z = 0; z <= W[c]; ++z) {
          cand = st.pair.at(std::vector<int>{y, z});
          cand += D[c][W[c] - z];
          if (cand > st.E[y]) {
            st.E[y] = cand;
            st.z_bp[y] = z;
            st.inside[y] = true;
          }
        }
      }
      std::vector<Rational> next(W[i] + 1);
      st.merge_bp.assign(W[i] + 1, 0);
      for (int w = 0; w <= W[i]; ++w)
        for (int y = 0; y <= w; ++y) {
          cand = cur[w - y];
          cand += st.E[y];
          if (y == 0 || cand > next[w]) {
            next[w] = cand;
            st.merge_bp[w] = y;
          }
        }
      cur = std::move(next);
      steps[i].push_back(std::move(st));
    }
    D[i] = std::move(cur);
  }

  // Top of S at i: i also keeps some amount with its parent.
  std::optional<Agent> top;
  int top_keep = 0;
  Rational best;
  for (Agent i = 0; i < n; ++i) {
    if (f.parent[i] < 0) {
      cand = D[i][W[i]];
      if (!top || cand > best) {
        best = cand;
        top = i;
        top_keep = 0;
      }
      continue;
    }
    for (int y = 0; y <= W[i]; ++y) {
      cand = D[i][W[i] - y];
      cand += keep_up[i].value[y];
      if (!top || cand > best) {
        best = cand;
        top = i;
        top_keep = y;
      }
    }
  }

  CoreCheck res{best, {}, {}, {}};
  std::vector<Agent> members;
  auto withdraw = [&](const detail::KeepTable& kp, Agent a, int r) {
    detail::keep_withdrawals(kp, a, r, n, res.deviation);
  };
  auto walk = [&](auto&& self_fn, Agent i, int w) -> void {
    members.push_back(i);
    for (std::size_t k = steps[i].size(); k-- > 0;) {
      const Step& st = steps[i][k];
      int y = st.merge_bp[w];
      w -= y;
      if (st.inside[y]) {
        int z = st.z_bp[y];
        detail::append(res.post,
                       st.pair.witness(st.pair.index().encode({y, z}), false));
        self_fn(self_fn, st.child, W[st.child] - z);
      } else {
        withdraw(keep_down[st.child], i, y);
      }
    }
    detail::append(res.post, selfs[i].witness(std::size_t(w), false));
  };
  const Agent t = *top;
  if (f.parent[t] >= 0) withdraw(keep_up[t], t, top_keep);
  walk(walk, t, W[t] - top_keep);
  res.set = AgentSet(members);
  return res;
}

// The connected set of largest positive excess, or none if the outcome is in
// the core for `arb`.
inline std::optional<Excess> checkcore_tree(const Game& g,
                                            const LocalArbitration& arb,
                                            const Outcome& o) {
  CoreCheck c = tree_max_excess(g, arb, o);
  if (c.in_core()) return std::nullopt;
  return Excess{c.set, c.max_excess};
}

struct StabilityResult {
  std::optional<Imputation> imputation;
  int rounds = 0;  // LP solves
  int cuts = 0;
};

// Cutting-plane search for an imputation making `cs` stable: solve the LP of
// efficiency, x >= 0 and individual rationality plus the cuts so far, find
// the most violated deviation with tree_max_excess, cut it off, repeat.
inline StabilityResult is_stable_tree_detailed(
    const Game& g, const LocalArbitration& arb, const CoalitionStructure& cs,
    IrMode mode = IrMode::full_endowment, int max_rounds = 100000) {
  require_two_ocf(g);
  detail::require_small_supports(cs);
  if (!cs.is_feasible(g)) throw ContractError("structure is not feasible");
  const int n = g.n();
  ImputationVars iv(cs);
  LinearProgram lp = base_stability_lp(g, cs, iv, mode);
  StabilityResult out;
  const bool clamped =
      arb.rule == LocalArbitration::Rule::optimistic && arb.clamped;
  while (out.rounds < max_rounds) {
    ++out.rounds;
    LpResult r = solve_lp(lp);
    if (r.status != LpStatus::optimal) return out;
    Outcome o{cs, iv.to_imputation(r.x, cs.size(), n)};
    CoreCheck c = tree_max_excess(g, arb, o);
    if (c.in_core()) {
      out.imputation = o.imputation;
      return out;
    }
    Deviation full;
    std::vector<bool> live(cs.size(), !clamped);
    for (int j : mixed_indices(cs, c.set)) {
      full[j] = withdrawal_of(c.deviation, j, n);
      if (clamped) {
        LocalArbitration raw = LocalArbitration::optimistic(false);
        live[j] = local_payoff(raw, cs[j], full[j], o.imputation[j], c.set,
                               g.v()) > 0;
      }
    }
    auto [row, rhs] = detail::stability_cut(g, cs, iv, arb, c.set, full,
                                            c.post.value(g), live);
    Rational lhs = 0;
    for (int v = 0; v < iv.size(); ++v) lhs += row[v] * r.x[v];
    if (lhs >= rhs)
      throw ContractError("separation returned a cut the candidate satisfies");
    lp.add_row(std::move(row), Sense::ge, rhs);
    ++out.cuts;
  }
  throw ResourceError("is_stable_tree: no answer after " +
                      std::to_string(max_rounds) + " rounds");
}

inline std::optional<Imputation> is_stable_tree(
    const Game& g, const LocalArbitration& arb, const CoalitionStructure& cs,
    IrMode mode = IrMode::full_endowment) {
  return is_stable_tree_detailed(g, arb, cs, mode).imputation;
}

}  // namespace ocf

#endif  // OCF_TREE_SOLVER_HPP
