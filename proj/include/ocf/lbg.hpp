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

// Linear bottleneck games: every task needs a fixed agent set and pays its
// price times the smallest contribution. Contributions are continuous.

#ifndef OCF_LBG_HPP
#define OCF_LBG_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocf/core.hpp"
#include "ocf/errors.hpp"
#include "ocf/lp.hpp"
#include "ocf/rational.hpp"

namespace ocf {

struct LbgTask {
  AgentSet agents;
  Rational pi;
};

class LbgInstance {
 public:
  LbgInstance() = default;

  // Missing singleton tasks are appended with price 0, in agent order.
  LbgInstance(std::vector<Rational> weights, std::vector<LbgTask> tasks)
      : weights_(std::move(weights)), tasks_(std::move(tasks)) {
    const int n = this->n();
    for (Agent i = 0; i < n; ++i)
      if (weights_[i] <= 0)
        throw DataError("weight of agent " + std::to_string(i) +
                        " is not positive");
    std::set<AgentSet> seen;
    for (std::size_t j = 0; j < tasks_.size(); ++j) {
      const auto& t = tasks_[j];
      if (t.agents.empty())
        throw DataError("task " + std::to_string(j) + " has no agents");
      for (Agent a : t.agents)
        if (a < 0 || a >= n)
          throw DataError("task " + std::to_string(j) + " names agent " +
                          std::to_string(a) + " out of range");
      if (t.pi < 0)
        throw DataError("task " + std::to_string(j) + " has a negative price");
      if (!seen.insert(t.agents).second)
        throw DataError("task " + std::to_string(j) + " repeats agent set " +
                        t.agents.to_string());
    }
    for (Agent i = 0; i < n; ++i)
      if (!seen.count(AgentSet{i})) tasks_.push_back({AgentSet{i}, 0});
    singleton_.assign(n, -1);
    for (std::size_t j = 0; j < tasks_.size(); ++j)
      if (tasks_[j].agents.size() == 1)
        singleton_[tasks_[j].agents.members()[0]] = static_cast<int>(j);
  }

  int n() const { return static_cast<int>(weights_.size()); }
  int m() const { return static_cast<int>(tasks_.size()); }
  const std::vector<Rational>& weights() const { return weights_; }
  const Rational& weight(Agent i) const { return weights_[i]; }
  const std::vector<LbgTask>& tasks() const { return tasks_; }
  const LbgTask& task(int j) const { return tasks_[j]; }
  int singleton_task(Agent i) const { return singleton_[i]; }

  // pi_j * min contribution over A_j, where A_j is the support of c.
  Rational value(const std::vector<Rational>& c) const {
    std::vector<Agent> supp;
    for (Agent i = 0; i < n(); ++i)
      if (c[i] > 0) supp.push_back(i);
    AgentSet s(supp);
    for (const auto& t : tasks_)
      if (t.agents == s) {
        Rational low = c[supp.front()];
        for (Agent i : supp) low = std::min(low, c[i]);
        return t.pi * low;
      }
    return 0;
  }

 private:
  std::vector<Rational> weights_;
  std::vector<LbgTask> tasks_;
  std::vector<int> singleton_;
};

struct LbgSolution {
  std::vector<Rational> allocation;  // per task
  std::vector<Rational> duals;       // per agent
  Rational value;
};

// Primal: max sum pi_j c_j s.t. sum_{j : i in A_j} c_j <= W_i, c >= 0.
inline LinearProgram lbg_primal(const LbgInstance& inst) {
  LinearProgram lp;
  for (const auto& t : inst.tasks()) lp.objective.push_back(t.pi);
  for (Agent i = 0; i < inst.n(); ++i) {
    std::vector<Rational> row(inst.m(), Rational(0));
    for (int j = 0; j < inst.m(); ++j)
      if (inst.task(j).agents.contains(i)) row[j] = 1;
    lp.add_row(std::move(row), Sense::le, inst.weight(i));
  }
  return lp;
}

// Dual, solved as max -sum W_i g_i s.t. sum_{i in A_j} g_i >= pi_j, g >= 0.
inline LinearProgram lbg_dual(const LbgInstance& inst) {
  LinearProgram lp;
  for (Agent i = 0; i < inst.n(); ++i) lp.objective.push_back(-inst.weight(i));
  for (const auto& t : inst.tasks()) {
    std::vector<Rational> row(inst.n(), Rational(0));
    for (Agent i : t.agents) row[i] = 1;
    lp.add_row(std::move(row), Sense::ge, t.pi);
  }
  return lp;
}

// Every violated LP optimality condition: primal and dual feasibility,
// strong duality, complementary slackness.
inline std::vector<std::string> lbg_certificate_errors(const LbgInstance& inst,
                                                       const LbgSolution& s) {
  std::vector<std::string> out;
  Rational primal = 0, dual = 0;
  for (int j = 0; j < inst.m(); ++j) {
    if (s.allocation[j] < 0)
      out.push_back("task " + std::to_string(j) + " has negative level");
    primal += inst.task(j).pi * s.allocation[j];
  }
  for (Agent i = 0; i < inst.n(); ++i) {
    Rational used = 0;
    for (int j = 0; j < inst.m(); ++j)
      if (inst.task(j).agents.contains(i)) used += s.allocation[j];
    if (used > inst.weight(i))
      out.push_back("agent " + std::to_string(i) + " is over capacity");
    if (s.duals[i] < 0)
      out.push_back("dual of agent " + std::to_string(i) + " is negative");
    if (s.duals[i] > 0 && used != inst.weight(i))
      out.push_back("agent " + std::to_string(i) +
                    " has a positive dual and slack capacity");
    dual += s.duals[i] * inst.weight(i);
  }
  for (int j = 0; j < inst.m(); ++j) {
    Rational price = 0;
    for (Agent i : inst.task(j).agents) price += s.duals[i];
    if (price < inst.task(j).pi)
      out.push_back("dual constraint of task " + std::to_string(j) +
                    " is violated");
    if (s.allocation[j] > 0 && price != inst.task(j).pi)
      out.push_back("task " + std::to_string(j) +
                    " is used but its dual constraint is slack");
  }
  if (primal != s.value) out.push_back("value differs from the allocation");
  if (dual != s.value) out.push_back("primal and dual values differ");
  return out;
}

// Optimal allocation with duals read from the final simplex basis. The dual
// is also solved on its own and must reach the same value.
inline LbgSolution lbg_optimal(const LbgInstance& inst) {
  LpResult r = solve_lp(lbg_primal(inst));
  if (r.status != LpStatus::optimal)
    throw ContractError("allocation LP is not optimal");
  LbgSolution s{r.x, r.duals, r.value};
  LpResult d = solve_lp(lbg_dual(inst));
  if (d.status != LpStatus::optimal || d.value != -r.value)
    throw ContractError("dual LP disagrees with the allocation LP");
  auto errors = lbg_certificate_errors(inst, s);
  if (!errors.empty()) throw ContractError("basis duals: " + errors.front());
  return s;
}

// Task levels with uniform contributions and per-task payoff vectors.
struct LbgOutcome {
  std::vector<Rational> level;                 // per task
  std::vector<std::vector<Rational>> payoff;   // [task][agent]

  Rational payoff_to(Agent i) const {
    Rational p = 0;
    for (const auto& x : payoff) p += x[i];
    return p;
  }
  Rational payoff_to_set(const AgentSet& s) const {
    Rational p = 0;
    for (Agent i : s) p += payoff_to(i);
    return p;
  }
};

// x_j^i = gamma_i * level_j; unused weight goes to the agent's singleton task.
inline LbgOutcome lbg_core_outcome(const LbgInstance& inst,
                                   const LbgSolution& sol) {
  const int n = inst.n(), m = inst.m();
  LbgOutcome out;
  out.level = sol.allocation;
  for (Agent i = 0; i < n; ++i) {
    Rational used = 0;
    for (int j = 0; j < m; ++j)
      if (inst.task(j).agents.contains(i)) used += sol.allocation[j];
    out.level[inst.singleton_task(i)] += inst.weight(i) - used;
  }
  out.payoff.assign(m, std::vector<Rational>(n, Rational(0)));
  for (int j = 0; j < m; ++j)
    for (Agent i : inst.task(j).agents)
      out.payoff[j][i] = sol.duals[i] * out.level[j];
  return out;
}

inline LbgOutcome lbg_core_outcome(const LbgInstance& inst) {
  return lbg_core_outcome(inst, lbg_optimal(inst));
}

// Every violated outcome condition: capacity, efficiency per task, no
// payments outside A_j, non-negative payoffs, individual rationality
// (p_i >= pi_{i} W_i).
inline std::vector<std::string> lbg_validate(const LbgInstance& inst,
                                             const LbgOutcome& out) {
  std::vector<std::string> errs;
  const int n = inst.n(), m = inst.m();
  if (static_cast<int>(out.level.size()) != m ||
      static_cast<int>(out.payoff.size()) != m) {
    errs.push_back("outcome does not list every task");
    return errs;
  }
  for (int j = 0; j < m; ++j) {
    if (static_cast<int>(out.payoff[j].size()) != n) {
      errs.push_back("payoff of task " + std::to_string(j) +
                     " does not list every agent");
      return errs;
    }
    if (out.level[j] < 0)
      errs.push_back("task " + std::to_string(j) + " has negative level");
    Rational sum = 0;
    for (Agent i = 0; i < n; ++i) {
      if (out.payoff[j][i] < 0)
        errs.push_back("agent " + std::to_string(i) +
                       " has a negative payoff from task " + std::to_string(j));
      if (out.payoff[j][i] != 0 && !inst.task(j).agents.contains(i))
        errs.push_back("task " + std::to_string(j) + " pays non-member " +
                       std::to_string(i));
      sum += out.payoff[j][i];
    }
    if (sum != inst.task(j).pi * out.level[j])
      errs.push_back("task " + std::to_string(j) + " pays " + to_string(sum) +
                     " but is worth " +
                     to_string(Rational(inst.task(j).pi * out.level[j])));
  }
  for (Agent i = 0; i < n; ++i) {
    Rational used = 0;
    for (int j = 0; j < m; ++j)
      if (inst.task(j).agents.contains(i)) used += out.level[j];
    if (used > inst.weight(i))
      errs.push_back("agent " + std::to_string(i) + " is over capacity");
    const Rational alone = inst.task(inst.singleton_task(i)).pi * inst.weight(i);
    if (out.payoff_to(i) < alone)
      errs.push_back("agent " + std::to_string(i) + " earns less than alone");
  }
  return errs;
}

struct LbgDeviationValue {
  Rational alpha;  // best use of the freed weight on tasks inside S
  Rational net;    // alpha - sum z_j pi_j
  Rational total;  // what S ends with under the optimistic rule
  std::vector<Rational> nu, Z;  // per agent; zero outside S
};

namespace detail {

inline bool touches(const LbgTask& t, const AgentSet& s) {
  for (Agent a : t.agents)
    if (s.contains(a)) return true;
  return false;
}

// max sum pi_j c_j over tasks inside S with per-agent capacity rhs.
inline Rational lbg_inside_value(const LbgInstance& inst, const AgentSet& s,
                                 const std::vector<Rational>& rhs) {
  LinearProgram lp;
  std::vector<int> inside;
  for (int j = 0; j < inst.m(); ++j)
    if (inst.task(j).agents.is_subset_of(s)) {
      inside.push_back(j);
      lp.objective.push_back(inst.task(j).pi);
    }
  for (Agent i : s) {
    std::vector<Rational> row;
    for (int j : inside)
      row.push_back(inst.task(j).agents.contains(i) ? 1 : 0);
    lp.add_row(std::move(row), Sense::le, rhs[i]);
  }
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::optimal)
    throw ContractError("deviation LP is not optimal");
  return r.value;
}

}  // namespace detail

// Value of S abandoning the tasks in `abandon` and withdrawing z_j (uniformly
// per member of S) from the other used tasks it touches. S keeps collecting
// what non-deviators leave of those tasks.
inline LbgDeviationValue lbg_best_deviation(
    const LbgInstance& inst, const LbgOutcome& out, const AgentSet& s,
    const std::vector<int>& abandon, const std::vector<Rational>& z,
    std::map<std::vector<Rational>, Rational>* memo = nullptr) {
  const int n = inst.n(), m = inst.m();
  if (static_cast<int>(z.size()) != m)
    throw ContractError("withdrawal vector does not list every task");
  std::vector<bool> gone(m, false);
  for (int j : abandon) {
    if (j < 0 || j >= m) throw ContractError("abandoned task out of range");
    if (out.level[j] <= 0 || !detail::touches(inst.task(j), s))
      throw ContractError("task " + std::to_string(j) +
                          " is not a used task touching S");
    gone[j] = true;
  }
  LbgDeviationValue v;
  v.nu.assign(n, Rational(0));
  v.Z.assign(n, Rational(0));
  std::vector<Rational> rhs(n, Rational(0));
  for (Agent i : s) {
    rhs[i] = inst.weight(i);
    for (int j = 0; j < m; ++j)
      if (inst.task(j).agents.contains(i)) rhs[i] -= out.level[j];
  }
  Rational withdrawn = 0;
  v.total = 0;
  for (int j = 0; j < m; ++j) {
    const LbgTask& t = inst.task(j);
    const bool used = out.level[j] > 0 && detail::touches(t, s);
    if (!used || gone[j]) {
      if (z[j] != 0)
        throw ContractError("withdrawal from task " + std::to_string(j) +
                            " which is unused or abandoned");
      if (used) {
        for (Agent i : t.agents)
          if (s.contains(i)) v.nu[i] += out.level[j];
      } else if (out.level[j] > 0 && t.agents.is_subset_of(s)) {
        throw ContractError("task " + std::to_string(j) +
                            " lies inside S and must be abandoned");
      }
      continue;
    }
    if (t.agents.is_subset_of(s))
      throw ContractError("task " + std::to_string(j) +
                          " lies inside S and must be abandoned");
    if (z[j] < 0 || z[j] > out.level[j])
      throw ContractError("withdrawal from task " + std::to_string(j) +
                          " outside [0, level]");
    Rational rest = t.pi * (out.level[j] - z[j]);
    for (Agent i : t.agents)
      if (s.contains(i))
        v.Z[i] += z[j];
      else
        rest -= out.payoff[j][i];
    v.total += rest;
    withdrawn += z[j] * t.pi;
  }
  for (Agent i : s) rhs[i] += v.nu[i] + v.Z[i];
  if (memo) {
    auto it = memo->find(rhs);
    if (it == memo->end())
      it = memo->emplace(rhs, detail::lbg_inside_value(inst, s, rhs)).first;
    v.alpha = it->second;
  } else {
    v.alpha = detail::lbg_inside_value(inst, s, rhs);
  }
  v.net = v.alpha - withdrawn;
  v.total += v.alpha;
  return v;
}

struct LbgDeviation {
  AgentSet set;
  std::vector<int> abandon;
  std::vector<Rational> z;
  LbgDeviationValue value;
  Rational payoff;  // p_S before deviating
};

struct LbgVerifyReport {
  std::optional<LbgDeviation> witness;  // total > p_S
  std::int64_t deviations = 0;
};

// Exhaustive search over nonempty S, abandon lists and withdrawals on the
// grid {0, g, 2g, ...} plus the full level. `observer` sees every deviation.
inline LbgVerifyReport lbg_verify_core(
    const LbgInstance& inst, const LbgOutcome& out, const Rational& grid,
    const std::function<void(const LbgDeviation&)>& observer = {},
    std::int64_t max_deviations = 10'000'000, int max_agents = 12) {
  const int n = inst.n(), m = inst.m();
  if (grid <= 0) throw ContractError("grid must be positive");
  if (n > max_agents)
    throw ResourceError("lbg_verify_core: " + std::to_string(n) +
                        " agents exceed the cap of " +
                        std::to_string(max_agents));
  LbgVerifyReport rep;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    const AgentSet s = AgentSet::from_mask(mask, n);
    const Rational ps = out.payoff_to_set(s);
    std::vector<int> inside, optional;
    for (int j = 0; j < m; ++j) {
      if (out.level[j] <= 0 || !detail::touches(inst.task(j), s)) continue;
      (inst.task(j).agents.is_subset_of(s) ? inside : optional).push_back(j);
    }
    std::map<std::vector<Rational>, Rational> memo;
    for (std::uint64_t am = 0; am < (std::uint64_t{1} << optional.size());
         ++am) {
      std::vector<int> abandon = inside;
      std::vector<int> partial;
      for (std::size_t k = 0; k < optional.size(); ++k)
        ((am >> k) & 1 ? abandon : partial).push_back(optional[k]);
      std::vector<std::vector<Rational>> points(partial.size());
      for (std::size_t k = 0; k < partial.size(); ++k) {
        const Rational& lvl = out.level[partial[k]];
        for (Rational x = 0; x < lvl; x += grid) points[k].push_back(x);
        points[k].push_back(lvl);
      }
      std::vector<std::size_t> at(partial.size(), 0);
      while (true) {
        if (++rep.deviations > max_deviations)
          throw ResourceError("lbg_verify_core: more than " +
                              std::to_string(max_deviations) + " deviations");
        std::vector<Rational> z(m, Rational(0));
        for (std::size_t k = 0; k < partial.size(); ++k)
          z[partial[k]] = points[k][at[k]];
        LbgDeviation d{s, abandon, z,
                       lbg_best_deviation(inst, out, s, abandon, z, &memo), ps};
        if (observer) observer(d);
        if (d.value.total > ps && !rep.witness) rep.witness = d;
        std::size_t k = 0;
        while (k < at.size() && ++at[k] == points[k].size()) at[k++] = 0;
        if (k == at.size()) break;
      }
    }
  }
  return rep;
}

// Directed edge with a capacity; each edge is an agent.
struct FlowEdge {
  int from, to;
  Rational capacity;
};

struct FlowSupplier {
  int source, sink;
  Rational weight, price;
};

namespace detail {

// Simple directed paths from s to t as edge-index lists.
inline void simple_paths(int nodes, const std::vector<std::pair<int, int>>& arcs,
                         int s, int t, std::size_t max_paths,
                         std::vector<std::vector<int>>& out) {
  std::vector<std::vector<int>> leaving(nodes);
  for (std::size_t e = 0; e < arcs.size(); ++e)
    leaving[arcs[e].first].push_back(static_cast<int>(e));
  std::vector<bool> on(nodes, false);
  std::vector<int> path;
  auto dfs = [&](auto&& self, int u) -> void {
    if (u == t) {
      if (out.size() >= max_paths)
        throw ResourceError("more than " + std::to_string(max_paths) +
                            " paths");
      out.push_back(path);
      return;
    }
    on[u] = true;
    for (int e : leaving[u]) {
      const int v = arcs[e].second;
      if (on[v]) continue;
      path.push_back(e);
      self(self, v);
      path.pop_back();
    }
    on[u] = false;
  };
  dfs(dfs, s);
}

inline void check_node(int v, int nodes, const std::string& what) {
  if (v < 0 || v >= nodes)
    throw DataError(what + " " + std::to_string(v) + " is not a node");
}

}  // namespace detail

// Agents: suppliers 0..k-1, then one per edge. One task per supplier and
// simple path, priced at the supplier's unit price.
inline LbgInstance gen_multicommodity_flow(
    int nodes, const std::vector<FlowEdge>& edges,
    const std::vector<FlowSupplier>& suppliers, std::size_t max_paths = 10000) {
  std::vector<std::pair<int, int>> arcs;
  std::vector<Rational> weights;
  for (const auto& s : suppliers) {
    detail::check_node(s.source, nodes, "source");
    detail::check_node(s.sink, nodes, "sink");
    if (s.source == s.sink) throw DataError("supplier source equals sink");
    weights.push_back(s.weight);
  }
  for (const auto& e : edges) {
    detail::check_node(e.from, nodes, "edge end");
    detail::check_node(e.to, nodes, "edge end");
    if (e.from == e.to) throw DataError("self-loop edge");
    arcs.emplace_back(e.from, e.to);
    weights.push_back(e.capacity);
  }
  const int k = static_cast<int>(suppliers.size());
  std::vector<LbgTask> tasks;
  std::size_t total = 0;
  for (int i = 0; i < k; ++i) {
    std::vector<std::vector<int>> paths;
    detail::simple_paths(nodes, arcs, suppliers[i].source, suppliers[i].sink,
                         max_paths - total, paths);
    total += paths.size();
    for (const auto& p : paths) {
      std::vector<Agent> a{i};
      for (int e : p) a.push_back(k + e);
      tasks.push_back({AgentSet(std::move(a)), suppliers[i].price});
    }
  }
  return LbgInstance(std::move(weights), std::move(tasks));
}

struct MarketEdge {
  Agent u, v;  // one on each side
  Rational price;
};

// Agents: side A as 0..|A|-1, side B after it. One task per edge.
inline LbgInstance gen_bipartite_market(std::vector<Rational> a_weights,
                                        const std::vector<Rational>& b_weights,
                                        const std::vector<MarketEdge>& edges) {
  const int na = static_cast<int>(a_weights.size());
  const int n = na + static_cast<int>(b_weights.size());
  std::vector<Rational> weights = std::move(a_weights);
  weights.insert(weights.end(), b_weights.begin(), b_weights.end());
  std::vector<LbgTask> tasks;
  std::set<std::pair<Agent, Agent>> seen;
  for (const auto& e : edges) {
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
      throw DataError("market edge names an unknown agent");
    if ((e.u < na) == (e.v < na))
      throw DataError("market edge {" + std::to_string(e.u) + "," +
                      std::to_string(e.v) + "} joins one side");
    if (!seen.insert(std::minmax(e.u, e.v)).second)
      throw DataError("duplicate market edge");
    tasks.push_back({AgentSet{e.u, e.v}, e.price});
  }
  return LbgInstance(std::move(weights), std::move(tasks));
}

struct RoutingDemand {
  int source, sink;
  Rational price;
};

// Agents are nodes. One task per demand and simple directed path, over the
// path's node set; equal node sets keep the higher price.
inline LbgInstance gen_routing(int nodes,
                               const std::vector<std::pair<int, int>>& arcs,
                               std::vector<Rational> capacities,
                               const std::vector<RoutingDemand>& demands,
                               std::size_t max_paths = 10000) {
  if (static_cast<int>(capacities.size()) != nodes)
    throw DataError("routing needs one capacity per node");
  for (const auto& [u, v] : arcs) {
    detail::check_node(u, nodes, "arc end");
    detail::check_node(v, nodes, "arc end");
    if (u == v) throw DataError("self-loop arc");
  }
  std::map<AgentSet, Rational> best;
  std::vector<AgentSet> order;
  std::size_t total = 0;
  for (const auto& d : demands) {
    detail::check_node(d.source, nodes, "source");
    detail::check_node(d.sink, nodes, "sink");
    if (d.source == d.sink) throw DataError("demand source equals sink");
    std::vector<std::vector<int>> paths;
    detail::simple_paths(nodes, arcs, d.source, d.sink, max_paths - total,
                         paths);
    total += paths.size();
    for (const auto& p : paths) {
      std::vector<Agent> a{d.source};
      for (int e : p) a.push_back(arcs[e].second);
      AgentSet s(std::move(a));
      auto [it, fresh] = best.emplace(s, d.price);
      if (fresh)
        order.push_back(s);
      else if (d.price > it->second)
        it->second = d.price;
    }
  }
  std::vector<LbgTask> tasks;
  for (const auto& s : order) tasks.push_back({s, best[s]});
  return LbgInstance(std::move(capacities), std::move(tasks));
}

}  // namespace ocf

#endif  // OCF_LBG_HPP
