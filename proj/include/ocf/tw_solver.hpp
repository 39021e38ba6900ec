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

// Solvers for 2-OCF games on graphs of bounded treewidth. One bag DP serves
// all three problems: every participating agent carries a resource counter
// and, optionally, an in/out label; edge terms are charged at the highest bag
// holding both ends and self terms when an agent is forgotten.

#ifndef OCF_TW_SOLVER_HPP
#define OCF_TW_SOLVER_HPP

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ocf/arbitration.hpp"
#include "ocf/core.hpp"
#include "ocf/cover.hpp"
#include "ocf/decomposition.hpp"
#include "ocf/detail/mixed_radix.hpp"
#include "ocf/oracle.hpp"
#include "ocf/tree_solver.hpp"

namespace ocf {

namespace detail {

struct BagDpEdge {
  Agent a = -1, b = -1;
  CoverTable pair;  // coordinates (a, b); used when both are in
  std::vector<Rational> keep_ab;  // a in, b out; indexed by a's amount
  std::vector<Rational> keep_ba;  // b in, a out
};

struct BagDpInput {
  std::vector<bool> member;
  std::vector<bool> optional;  // agent may be labeled out
  std::vector<int> cap;
  std::vector<std::vector<Rational>> self;  // self[a][u] for u = 0..cap[a]
  std::vector<BagDpEdge> edges;
  bool require_in = false;
  std::size_t limit = kDefaultTableLimit;
};

struct BagDpSolution {
  ExtRational value;
  std::vector<int> label;     // -1 non-member, 0 out, 1 in
  std::vector<int> self_use;  // amount given to the self term
  std::vector<std::pair<int, int>> edge_use;  // per edge (amount_a, amount_b)
};

// Digits: an in-only agent stores its usage 0..cap; an optional agent stores
// 0 for out and 1 + usage when in. The last coordinate is the in-flag.
class BagDp {
 public:
  BagDp(const BagDpInput& in, const TreeDecomposition& t) : in_(in), t_(t) {
    const int n = static_cast<int>(in_.member.size());
    flags_ = in_.require_in ? 2 : 1;
    selfpm_.resize(n);
    selfarg_.resize(n);
    for (Agent a = 0; a < n; ++a) {
      if (!in_.member[a]) continue;
      selfpm_[a] = in_.self[a];
      prefix_max(selfpm_[a], selfarg_[a]);
    }
    const int nb = static_cast<int>(t_.bags.size());
    if (nb == 0) {
      sol_.value = in_.require_in ? ExtRational() : ExtRational(Rational(0));
      sol_.label.assign(n, -1);
      sol_.self_use.assign(n, -1);
      sol_.edge_use.assign(in_.edges.size(), {0, 0});
      return;
    }
    // Bag depths and parents from the root.
    auto adj = t_.adjacency();
    parent_.assign(nb, -1);
    std::vector<int> depth(nb, -1), order{t_.root};
    depth[t_.root] = 0;
    for (std::size_t h = 0; h < order.size(); ++h)
      for (int y : adj[order[h]])
        if (depth[y] < 0) {
          depth[y] = depth[order[h]] + 1;
          parent_[y] = order[h];
          order.push_back(y);
        }
    children_.assign(nb, {});
    for (int x : order)
      if (parent_[x] >= 0) children_[parent_[x]].push_back(x);

    bag_agents_.resize(nb);
    for (int x = 0; x < nb; ++x)
      for (Agent a : t_.bags[x])
        if (in_.member[a]) bag_agents_[x].push_back(a);
    auto highest = [&](auto holds) {
      int best = -1;
      for (int x = 0; x < nb; ++x)
        if (holds(x) && (best < 0 || depth[x] < depth[best])) best = x;
      return best;
    };
    top_.assign(n, -1);
    for (Agent a = 0; a < n; ++a) {
      if (!in_.member[a]) continue;
      top_[a] = highest([&](int x) { return has(x, a); });
      if (top_[a] < 0)
        throw ContractError("agent " + std::to_string(a) + " is in no bag");
    }
    edges_at_.assign(nb, {});
    for (std::size_t e = 0; e < in_.edges.size(); ++e) {
      const auto& ed = in_.edges[e];
      int x = highest([&](int y) { return has(y, ed.a) && has(y, ed.b); });
      if (x < 0)
        throw ContractError("edge {" + std::to_string(ed.a) + "," +
                            std::to_string(ed.b) + "} is in no bag");
      edges_at_[x].push_back(static_cast<int>(e));
    }

    ops_.resize(nb);
    proj_.resize(nb);
    for (std::size_t k = order.size(); k-- > 0;) process(order[k]);

    const Table& root = proj_[t_.root];
    const std::size_t final_state = in_.require_in ? 1 : 0;
    sol_.value = root.values[final_state];
    sol_.label.assign(n, -1);
    sol_.self_use.assign(n, -1);
    sol_.edge_use.assign(in_.edges.size(), {0, 0});
    if (sol_.value.finite()) reconstruct(t_.root, final_state);
  }

  const BagDpSolution& solution() const { return sol_; }

 private:
  struct Shape {
    std::vector<Agent> agents;
    MixedRadix idx;  // agents then flag
  };
  struct Table {
    Shape shape;
    std::vector<ExtRational> values;
  };
  enum class Kind { child, edge, forget };
  struct Op {
    Kind kind;
    int ref = -1;        // child bag, edge index, or forgotten agent
    Shape before;        // shape the op reads
    std::vector<std::size_t> prev;  // predecessor state per output state
    std::vector<std::size_t> aux;   // child state, packed (x, y), self use
  };
  static constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

  bool has(int x, Agent a) const {
    return std::binary_search(t_.bags[x].begin(), t_.bags[x].end(), a) &&
           in_.member[a];
  }
  int radix_of(Agent a) const { return in_.cap[a] + 1 + (in_.optional[a] ? 1 : 0); }
  bool is_in(Agent a, int d) const { return !in_.optional[a] || d > 0; }
  int usage(Agent a, int d) const { return in_.optional[a] ? d - 1 : d; }

  Shape make_shape(std::vector<Agent> agents) const {
    std::vector<int> radix;
    for (Agent a : agents) radix.push_back(radix_of(a));
    radix.push_back(flags_);
    return {std::move(agents), MixedRadix(std::move(radix), in_.limit)};
  }
  std::size_t flag_stride(const Shape& s) const {
    return s.idx.stride(s.agents.size());
  }

  void process(int x) {
    Table cur;
    cur.shape = make_shape(bag_agents_[x]);
    const Shape& sh = cur.shape;
    const std::size_t dims = sh.agents.size();
    cur.values.assign(sh.idx.size(), ExtRational());
    // Every agent at usage zero, flag clear.
    for (std::size_t s = 0; s < sh.idx.size(); ++s) {
      bool ok = sh.idx.digit(s, dims) == 0;
      for (std::size_t k = 0; k < dims && ok; ++k) {
        const Agent a = sh.agents[k];
        const int d = sh.idx.digit(s, k);
        ok = is_in(a, d) ? usage(a, d) == 0 : true;
      }
      if (ok) cur.values[s] = Rational(0);
    }
    for (int y : children_[x]) {
      convolve(x, y, cur);
      proj_[y].values.clear();
      proj_[y].values.shrink_to_fit();
    }
    for (int e : edges_at_[x]) apply_edge(x, e, cur);
    for (Agent a : bag_agents_[x])
      if (top_[a] == x) forget(x, a, cur);
    proj_[x] = std::move(cur);
  }

  void convolve(int x, int y, Table& cur) {
    const Table& ch = proj_[y];
    const Shape& ps = cur.shape;
    const Shape& cs = ch.shape;
    const std::size_t cd = cs.agents.size();
    std::vector<std::size_t> pos(cd);
    for (std::size_t k = 0; k < cd; ++k)
      pos[k] = static_cast<std::size_t>(
          std::find(ps.agents.begin(), ps.agents.end(), cs.agents[k]) -
          ps.agents.begin());
    struct ChildState {
      std::size_t idx;
      std::vector<int> digit;
      int flag;
    };
    std::vector<ChildState> live;
    for (std::size_t u = 0; u < ch.values.size(); ++u)
      if (ch.values[u].finite()) {
        auto d = cs.idx.decode(u);
        int f = d.back();
        d.pop_back();
        live.push_back({u, std::move(d), f});
      }
    Op op{Kind::child, y, ps, {}, {}};
    op.prev.assign(ps.idx.size(), kNone);
    op.aux.assign(ps.idx.size(), kNone);
    std::vector<ExtRational> next(ps.idx.size());
    const std::size_t fstride = flag_stride(ps);
    for (std::size_t s = 0; s < ps.idx.size(); ++s) {
      const int f = ps.idx.digit(s, ps.agents.size());
      for (const auto& u : live) {
        std::size_t base = s;
        bool ok = true;
        for (std::size_t k = 0; k < cd && ok; ++k) {
          const Agent a = cs.agents[k];
          const int pd = ps.idx.digit(s, pos[k]);
          const int ud = u.digit[k];
          if (in_.optional[a]) {
            if ((pd == 0) != (ud == 0)) ok = false;
            else if (ud > 0 && ud - 1 > pd - 1) ok = false;
            else if (ud > 0) base -= ps.idx.stride(pos[k]) * std::size_t(ud - 1);
          } else {
            if (ud > pd) ok = false;
            else base -= ps.idx.stride(pos[k]) * std::size_t(ud);
          }
        }
        if (!ok) continue;
        for (int f1 = 0; f1 < flags_; ++f1) {
          if ((f1 | u.flag) != f) continue;
          const std::size_t p = base - fstride * std::size_t(f - f1);
          if (!cur.values[p].finite()) continue;
          if (next[s].improve_with_sum(cur.values[p].value(),
                                       ch.values[u.idx].value())) {
            op.prev[s] = p;
            op.aux[s] = u.idx;
          }
        }
      }
    }
    cur.values = std::move(next);
    ops_[x].push_back(std::move(op));
  }

  void apply_edge(int x, int e, Table& cur) {
    const BagDpEdge& ed = in_.edges[e];
    const Shape& sh = cur.shape;
    auto at = [&](Agent a) {
      return static_cast<std::size_t>(
          std::find(sh.agents.begin(), sh.agents.end(), a) - sh.agents.begin());
    };
    const std::size_t pa = at(ed.a), pb = at(ed.b);
    const std::size_t sa = sh.idx.stride(pa), sb = sh.idx.stride(pb);
    const std::size_t width = static_cast<std::size_t>(in_.cap[ed.b]) + 1;
    Op op{Kind::edge, e, sh, {}, {}};
    op.prev.assign(sh.idx.size(), kNone);
    op.aux.assign(sh.idx.size(), kNone);
    std::vector<ExtRational> next(sh.idx.size());
    const Rational zero = 0;
    for (std::size_t s = 0; s < sh.idx.size(); ++s) {
      const int da = sh.idx.digit(s, pa), db = sh.idx.digit(s, pb);
      const bool ia = is_in(ed.a, da), ib = is_in(ed.b, db);
      const int ua = ia ? usage(ed.a, da) : 0, ub = ib ? usage(ed.b, db) : 0;
      for (int xa = 0; xa <= ua; ++xa)
        for (int yb = 0; yb <= ub; ++yb) {
          const std::size_t p = s - sa * std::size_t(xa) - sb * std::size_t(yb);
          if (!cur.values[p].finite()) continue;
          const Rational* gain = &zero;
          if (ia && ib)
            gain = &ed.pair.at(std::size_t(xa) +
                               std::size_t(yb) * (std::size_t(in_.cap[ed.a]) + 1));
          else if (ia)
            gain = &ed.keep_ab[xa];
          else if (ib)
            gain = &ed.keep_ba[yb];
          if (next[s].improve_with_sum(cur.values[p].value(), *gain)) {
            op.prev[s] = p;
            op.aux[s] = std::size_t(xa) * width + std::size_t(yb);
          }
        }
    }
    cur.values = std::move(next);
    ops_[x].push_back(std::move(op));
  }

  void forget(int x, Agent a, Table& cur) {
    const Shape& old = cur.shape;
    const std::size_t p = static_cast<std::size_t>(
        std::find(old.agents.begin(), old.agents.end(), a) - old.agents.begin());
    std::vector<Agent> rest = old.agents;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(p));
    Shape ns = make_shape(std::move(rest));
    Op op{Kind::forget, a, old, {}, {}};
    op.prev.assign(ns.idx.size(), kNone);
    op.aux.assign(ns.idx.size(), kNone);
    std::vector<ExtRational> next(ns.idx.size());
    const std::size_t below = old.idx.stride(p);
    const std::size_t above = old.idx.stride(p) * std::size_t(old.idx.radix(p));
    const std::size_t nfs = flag_stride(ns);
    for (std::size_t s = 0; s < old.idx.size(); ++s) {
      if (!cur.values[s].finite()) continue;
      const int d = old.idx.digit(s, p);
      std::size_t t = s % below + (s / above) * below;
      std::size_t self_use = 0;
      const Rational* gain = nullptr;
      if (is_in(a, d)) {
        const int rem = in_.cap[a] - usage(a, d);
        gain = &selfpm_[a][rem];
        self_use = std::size_t(selfarg_[a][rem]);
        if (in_.optional[a] && flags_ == 2 && ns.idx.digit(t, ns.agents.size()) == 0)
          t += nfs;
      }
      bool better = gain ? next[t].improve_with_sum(cur.values[s].value(), *gain)
                         : next[t].improve(cur.values[s].value());
      if (better) {
        op.prev[t] = s;
        op.aux[t] = self_use;
      }
    }
    cur.shape = std::move(ns);
    cur.values = std::move(next);
    ops_[x].push_back(std::move(op));
  }

  void reconstruct(int x, std::size_t s) {
    for (std::size_t k = ops_[x].size(); k-- > 0;) {
      const Op& op = ops_[x][k];
      const std::size_t p = op.prev[s];
      if (p == kNone) throw ContractError("bag DP backtrack hit -infinity");
      switch (op.kind) {
        case Kind::forget: {
          const Agent a = op.ref;
          const std::size_t pos = static_cast<std::size_t>(
              std::find(op.before.agents.begin(), op.before.agents.end(), a) -
              op.before.agents.begin());
          const int d = op.before.idx.digit(p, pos);
          sol_.label[a] = is_in(a, d) ? 1 : 0;
          sol_.self_use[a] = is_in(a, d) ? static_cast<int>(op.aux[s]) : 0;
          break;
        }
        case Kind::edge: {
          const std::size_t width =
              static_cast<std::size_t>(in_.cap[in_.edges[op.ref].b]) + 1;
          sol_.edge_use[op.ref] = {static_cast<int>(op.aux[s] / width),
                                   static_cast<int>(op.aux[s] % width)};
          break;
        }
        case Kind::child:
          reconstruct(op.ref, op.aux[s]);
          break;
      }
      s = p;
    }
  }

  const BagDpInput& in_;
  const TreeDecomposition& t_;
  int flags_ = 1;
  std::vector<std::vector<Rational>> selfpm_;
  std::vector<std::vector<int>> selfarg_;
  std::vector<int> parent_;
  std::vector<std::vector<int>> children_;
  std::vector<std::vector<Agent>> bag_agents_;
  std::vector<int> top_;
  std::vector<std::vector<int>> edges_at_;
  std::vector<std::vector<Op>> ops_;
  std::vector<Table> proj_;
  BagDpSolution sol_;
};

inline void require_decomposition(const InteractionGraph& gr,
                                  const TreeDecomposition& t,
                                  const std::optional<AgentSet>& members =
                                      std::nullopt) {
  auto report = validate_decomposition(gr, t, members);
  if (!report.empty())
    throw DataError("invalid tree decomposition: " + report.front());
}

inline std::size_t pair_index(const CoverTable& t, int x, int y) {
  return std::size_t(x) + std::size_t(y) * std::size_t(t.index().radix(0));
}

}  // namespace detail

// v*(c) for a 2-OCF game by a DP over a tree decomposition of its
// interaction graph.
inline OptValResult optval_tw(const Game& g, const TreeDecomposition& t,
                              const Coalition& c) {
  require_two_ocf(g);
  if (!g.is_valid_coalition(c))
    throw ContractError("coalition " + c.to_string() + " is not within W");
  const int n = g.n();
  InteractionGraph gr = g.interaction_graph();
  detail::require_decomposition(gr, t);
  detail::BagDpInput in;
  in.member.assign(n, true);
  in.optional.assign(n, false);
  in.cap = c.values();
  std::vector<CoverTable> selfs;
  for (Agent i = 0; i < n; ++i) {
    selfs.push_back(self_cover(g, i, in.cap[i]));
    std::vector<Rational> f;
    for (std::size_t w = 0; w < selfs[i].size(); ++w) f.push_back(selfs[i].at(w));
    in.self.push_back(std::move(f));
  }
  for (const auto& [a, b] : gr.edges())
    in.edges.push_back({a, b, pair_cover(g, a, b, in.cap[a], in.cap[b]), {}, {}});
  detail::BagDp dp(in, t);
  const auto& sol = dp.solution();
  OptValResult res{sol.value.value(), {}};
  for (Agent i = 0; i < n; ++i)
    detail::append(res.witness,
                   selfs[i].witness(std::size_t(sol.self_use[i]), false));
  for (std::size_t e = 0; e < in.edges.size(); ++e) {
    const auto& pt = in.edges[e].pair;
    const auto [x, y] = sol.edge_use[e];
    detail::append(res.witness, pt.witness(detail::pair_index(pt, x, y), false));
  }
  return res;
}

inline OptValResult optval_tw(const Game& g, const Coalition& c) {
  return optval_tw(g, heuristic_decomposition(g.interaction_graph()), c);
}

// A*(CS, x, S) for a local rule. `t` decomposes the interaction graph, or
// just the part induced by S; it is restricted to S before use. Every mixed
// coalition must have exactly one member in S.
inline ArbValResult arbval_tw(const Game& g, const LocalArbitration& arb,
                              const Outcome& o, const AgentSet& s,
                              const TreeDecomposition& t) {
  require_two_ocf(g);
  if (s.empty()) return {0, {}, {}};
  const int n = g.n();
  InteractionGraph gr = induced_subgraph(g.interaction_graph(), s);
  TreeDecomposition ts = restrict_decomposition(t, s);
  detail::require_decomposition(gr, ts, s);
  auto mine = detail::mixed_owners(o.structure, s, n);
  detail::BagDpInput in;
  in.member.assign(n, false);
  in.optional.assign(n, false);
  in.cap.assign(n, 0);
  in.self.assign(n, {});
  std::vector<detail::DeviatorSelf> dev(n);
  for (Agent i : s) {
    in.member[i] = true;
    in.cap[i] = g.weight(i);
    dev[i] = detail::make_deviator_self(g, arb, o, mine[i], i, s);
    in.self[i] = dev[i].value;
  }
  for (const auto& [a, b] : gr.edges())
    in.edges.push_back({a, b, pair_cover(g, a, b, in.cap[a], in.cap[b]), {}, {}});
  detail::BagDp dp(in, ts);
  const auto& sol = dp.solution();
  ArbValResult res{sol.value.value(), {}, {}};
  for (Agent i : s) dev[i].emit(i, sol.self_use[i], n, res.post, res.deviation);
  for (std::size_t e = 0; e < in.edges.size(); ++e) {
    const auto& pt = in.edges[e].pair;
    const auto [x, y] = sol.edge_use[e];
    detail::append(res.post, pt.witness(detail::pair_index(pt, x, y), false));
  }
  return res;
}

inline ArbValResult arbval_tw(const Game& g, const LocalArbitration& arb,
                              const Outcome& o, const AgentSet& s) {
  return arbval_tw(g, arb, o, s,
                   heuristic_decomposition(
                       induced_subgraph(g.interaction_graph(), s)));
}

// Largest excess A*(S) - p_S over all nonempty S, by a bag DP over a
// decomposition of working_graph(g, o.structure). Deviators are labeled in,
// the rest out; a coalition between an in and an out agent pays through the
// withdrawal knapsack of its member in S.
inline CoreCheck tw_max_excess(const Game& g, const LocalArbitration& arb,
                               const Outcome& o, const TreeDecomposition& t) {
  require_two_ocf(g);
  const auto& cs = o.structure;
  detail::require_small_supports(cs);
  const int n = g.n();
  if (n == 0) throw ContractError("game has no agents");
  InteractionGraph gr = working_graph(g, cs);
  detail::require_decomposition(gr, t);
  detail::BagDpInput in;
  in.member.assign(n, true);
  in.optional.assign(n, true);
  in.cap = g.weights();
  in.require_in = true;
  std::vector<CoverTable> selfs;
  for (Agent i = 0; i < n; ++i) {
    selfs.push_back(self_cover(g, i, in.cap[i]));
    const Rational p = payoff_to_agent(o, i);
    std::vector<Rational> f;
    for (std::size_t w = 0; w < selfs[i].size(); ++w)
      f.push_back(selfs[i].at(w) - p);
    in.self.push_back(std::move(f));
  }
  std::vector<detail::KeepTable> kab, kba;
  for (const auto& [a, b] : gr.edges()) {
    std::vector<int> ids;
    for (int j = 0; j < cs.size(); ++j)
      if (cs[j].support() == AgentSet{a, b}) ids.push_back(j);
    kab.push_back(detail::make_keep(g, arb, o, ids, a));
    kba.push_back(detail::make_keep(g, arb, o, ids, b));
    in.edges.push_back({a, b, pair_cover(g, a, b, in.cap[a], in.cap[b]),
                        kab.back().value, kba.back().value});
  }
  detail::BagDp dp(in, t);
  const auto& sol = dp.solution();
  CoreCheck res{sol.value.value(), {}, {}, {}};
  std::vector<Agent> members;
  for (Agent i = 0; i < n; ++i) {
    if (sol.label[i] != 1) continue;
    members.push_back(i);
    detail::append(res.post,
                   selfs[i].witness(std::size_t(sol.self_use[i]), false));
  }
  for (std::size_t e = 0; e < in.edges.size(); ++e) {
    const auto& ed = in.edges[e];
    const auto [x, y] = sol.edge_use[e];
    const bool ia = sol.label[ed.a] == 1, ib = sol.label[ed.b] == 1;
    if (ia && ib)
      detail::append(res.post,
                     ed.pair.witness(detail::pair_index(ed.pair, x, y), false));
    else if (ia)
      detail::keep_withdrawals(kab[e], ed.a, x, n, res.deviation);
    else if (ib)
      detail::keep_withdrawals(kba[e], ed.b, y, n, res.deviation);
  }
  res.set = AgentSet(members);
  return res;
}

inline CoreCheck tw_max_excess(const Game& g, const LocalArbitration& arb,
                               const Outcome& o) {
  return tw_max_excess(g, arb, o,
                       heuristic_decomposition(working_graph(g, o.structure)));
}

// The set of largest positive excess, or none if the outcome is in the core.
inline std::optional<Excess> checkcore_tw(const Game& g,
                                          const LocalArbitration& arb,
                                          const Outcome& o,
                                          const TreeDecomposition& t) {
  CoreCheck c = tw_max_excess(g, arb, o, t);
  if (c.in_core()) return std::nullopt;
  return Excess{c.set, c.max_excess};
}

inline std::optional<Excess> checkcore_tw(const Game& g,
                                          const LocalArbitration& arb,
                                          const Outcome& o) {
  CoreCheck c = tw_max_excess(g, arb, o);
  if (c.in_core()) return std::nullopt;
  return Excess{c.set, c.max_excess};
}

}  // namespace ocf

#endif  // OCF_TW_SOLVER_HPP
