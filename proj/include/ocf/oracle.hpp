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

// Exhaustive reference solvers for small games. Everything here is
// exponential on purpose; budgets turn runaway inputs into ResourceError.

#ifndef OCF_ORACLE_HPP
#define OCF_ORACLE_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ocf/arbitration.hpp"
#include "ocf/core.hpp"
#include "ocf/cover.hpp"
#include "ocf/lp.hpp"
#include "ocf/validate.hpp"

namespace ocf {

struct EnumerationBudget {
  int max_agents = 6;
  int max_weight = 4;
  std::int64_t max_structures = 10'000'000;
};

struct CoverResult {
  Rational value;
  CoalitionStructure witness;
};

namespace detail {

inline void check_budget(const Game& g, const AgentSet& agents,
                         const EnumerationBudget& b, const char* what) {
  if (agents.size() > b.max_agents)
    throw ResourceError(std::string(what) + ": " +
                        std::to_string(agents.size()) + " agents exceed the " +
                        std::to_string(b.max_agents) + "-agent budget");
  for (Agent i : agents)
    if (g.weight(i) > b.max_weight)
      throw ResourceError(std::string(what) + ": weight " +
                          std::to_string(g.weight(i)) + " of agent " +
                          std::to_string(i) + " exceeds the budget of " +
                          std::to_string(b.max_weight));
}

}  // namespace detail

// Capacities of c on the listed agents.
inline std::vector<int> capacities_of(const Coalition& c, const AgentSet& agents) {
  std::vector<int> cap;
  for (Agent i : agents) cap.push_back(c[i]);
  return cap;
}

// v*(c) with a witness whose weight is exactly c.
inline CoverResult superadditive_cover(const Game& g, const Coalition& c,
                                       const EnumerationBudget& budget = {}) {
  if (!g.is_valid_coalition(c))
    throw ContractError("coalition " + c.to_string() + " is not within W");
  AgentSet supp = c.support();
  detail::check_budget(g, supp, budget, "superadditive_cover");
  CoverTable t = make_cover_table(g, supp, capacities_of(c, supp));
  return {t.at(c), t.witness(c)};
}

// Visits every multiset of nonzero coalitions with total weight <= c, as
// lexicographically sorted lists, in lexicographic order. With
// positive_only, only coalitions of positive value are used. The visitor
// returns false to stop early.
inline void enumerate_structures(
    const Game& g, const Coalition& c,
    const std::function<bool(const CoalitionStructure&)>& visit,
    const EnumerationBudget& budget = {}, bool positive_only = false) {
  if (!g.is_valid_coalition(c))
    throw ContractError("coalition " + c.to_string() + " is not within W");
  AgentSet supp = c.support();
  detail::check_budget(g, supp, budget, "enumerate_structures");
  const int n = g.n();

  std::vector<Coalition> atoms;
  {
    Coalition d(n);
    std::vector<Agent> ag = supp.members();
    while (true) {
      if (!d.is_zero() && (!positive_only || g.value(d) > 0))
        atoms.push_back(d);
      std::size_t k = 0;
      for (; k < ag.size(); ++k) {
        if (d[ag[k]] < c[ag[k]]) {
          ++d[ag[k]];
          break;
        }
        d[ag[k]] = 0;
      }
      if (k == ag.size()) break;
    }
    std::sort(atoms.begin(), atoms.end());
  }

  std::int64_t count = 0;
  std::vector<Coalition> current;
  Coalition room = c;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t first) {
    if (++count > budget.max_structures)
      throw ResourceError("enumerate_structures: more than " +
                          std::to_string(budget.max_structures) +
                          " structures");
    if (!visit(CoalitionStructure(current))) {
      stop = true;
      return;
    }
    for (std::size_t a = first; a < atoms.size() && !stop; ++a) {
      if (!fits_within(atoms[a], room)) continue;
      room -= atoms[a];
      current.push_back(atoms[a]);
      rec(a);
      current.pop_back();
      room += atoms[a];
    }
  };
  rec(0);
}

struct ArbValResult {
  Rational value;
  Deviation deviation;
  CoalitionStructure post;
};

// A*(CS, x, S): best total over every deviation of S and every use of the
// freed resources.
inline ArbValResult brute_arbval(const Game& g, const FullArbitration& arb,
                                 const Outcome& o, const AgentSet& s,
                                 const EnumerationBudget& budget = {}) {
  detail::check_budget(g, s, budget, "brute_arbval");
  std::int64_t deviations = 1;
  for (int j : mixed_indices(o.structure, s))
    for (Agent i : s) {
      deviations *= o.structure[j][i] + 1;
      if (deviations > budget.max_structures)
        throw ResourceError("brute_arbval: more than " +
                            std::to_string(budget.max_structures) +
                            " deviations");
    }
  CoverTable cover = make_endowment_cover(g, s);
  const Coalition base = deviation_resources(g, o, s, {});
  std::optional<ArbValResult> best;
  for_each_deviation(o, s, [&](const Deviation& dev) {
    Coalition free = base;
    for (const auto& [j, d] : dev) free += d;
    Rational total = cover.at(free);
    for (const auto& p : arbitration_payoffs(g, o, s, dev, arb)) total += p;
    if (!best || total > best->value) {
      Deviation nonzero;
      for (const auto& [j, d] : dev)
        if (!d.is_zero()) nonzero.emplace(j, d);
      best = ArbValResult{total, std::move(nonzero), CoalitionStructure{}};
      best->post = cover.witness(free);
    }
    return true;
  });
  return *best;
}

enum class SetScope { all, connected };

struct Excess {
  AgentSet set;
  Rational excess;
};

// The set of largest excess A*(S) - p_S among nonempty S in scope (ties go to
// the smallest bitmask). Connected scope uses working_graph(g, o.structure).
inline Excess brute_max_excess(const Game& g, const FullArbitration& arb,
                               const Outcome& o, SetScope scope = SetScope::all,
                               const EnumerationBudget& budget = {}) {
  const int n = g.n();
  detail::check_budget(g, AgentSet::all(n), budget, "brute_checkcore");
  InteractionGraph graph = working_graph(g, o.structure);
  std::optional<Excess> best;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    AgentSet s = AgentSet::from_mask(mask, n);
    if (scope == SetScope::connected && !graph.is_connected_subset(s)) continue;
    Rational e = brute_arbval(g, arb, o, s, budget).value - payoff_to_set(o, s);
    if (!best || e > best->excess) best = Excess{s, e};
  }
  if (!best) throw ContractError("game has no agents");
  return *best;
}

// None iff the outcome is in the core for `arb`.
inline std::optional<Excess> brute_checkcore(
    const Game& g, const FullArbitration& arb, const Outcome& o,
    SetScope scope = SetScope::all, const EnumerationBudget& budget = {}) {
  Excess e = brute_max_excess(g, arb, o, scope, budget);
  if (e.excess > 0) return e;
  return std::nullopt;
}

// Variables of stability LPs: x_j^i for each i in supp(c_j).
struct ImputationVars {
  std::vector<std::pair<int, Agent>> vars;
  std::map<std::pair<int, Agent>, int> index;

  explicit ImputationVars(const CoalitionStructure& cs) {
    for (int j = 0; j < cs.size(); ++j)
      for (Agent i = 0; i < cs[j].n(); ++i)
        if (cs[j][i] > 0) {
          index[{j, i}] = static_cast<int>(vars.size());
          vars.emplace_back(j, i);
        }
  }
  int size() const { return static_cast<int>(vars.size()); }

  Imputation to_imputation(const std::vector<Rational>& x, int coalitions,
                           int n) const {
    Imputation imp = Imputation::zeros(coalitions, n);
    for (int v = 0; v < size(); ++v) imp[vars[v].first][vars[v].second] = x[v];
    return imp;
  }
};

// Efficiency equalities and individual rationality rows; x >= 0 is implicit.
inline LinearProgram base_stability_lp(const Game& g,
                                       const CoalitionStructure& cs,
                                       const ImputationVars& iv,
                                       IrMode mode = IrMode::full_endowment) {
  LinearProgram lp;
  lp.objective.assign(iv.size(), Rational(0));
  for (int j = 0; j < cs.size(); ++j) {
    std::vector<Rational> row(iv.size(), Rational(0));
    for (Agent i = 0; i < g.n(); ++i)
      if (cs[j][i] > 0) row[iv.index.at({j, i})] = 1;
    lp.add_row(std::move(row), Sense::eq, g.value(cs[j]));
  }
  for (Agent i = 0; i < g.n(); ++i) {
    std::vector<Rational> row(iv.size(), Rational(0));
    for (int j = 0; j < cs.size(); ++j)
      if (cs[j][i] > 0) row[iv.index.at({j, i})] = 1;
    lp.add_row(std::move(row), Sense::ge,
               individual_rationality_bound(g, i, mode));
  }
  return lp;
}

namespace detail {

// p_S(x) - sum of linear arbitration terms >= constant, for one deviation and
// one choice of clamped branches (`live` marks coalitions whose optimistic
// payment is taken unclamped).
inline std::pair<std::vector<Rational>, Rational> stability_cut(
    const Game& g, const CoalitionStructure& cs, const ImputationVars& iv,
    const LocalArbitration& arb, const AgentSet& s, const Deviation& dev,
    const Rational& cover_value, const std::vector<bool>& live) {
  std::vector<Rational> row(iv.size(), Rational(0));
  Rational rhs = cover_value;
  for (int v = 0; v < iv.size(); ++v)
    if (s.contains(iv.vars[v].second)) row[v] += 1;
  for (const auto& [j, d] : dev) {
    switch (arb.rule) {
      case LocalArbitration::Rule::conservative:
        break;
      case LocalArbitration::Rule::refined:
        if (d.is_zero())
          for (Agent i : s)
            if (cs[j][i] > 0) row[iv.index.at({j, i})] -= 1;
        break;
      case LocalArbitration::Rule::optimistic:
        if (!live[j]) break;
        rhs += g.value(cs[j] - d);
        for (Agent i = 0; i < g.n(); ++i)
          if (cs[j][i] > 0 && !s.contains(i)) row[iv.index.at({j, i})] += 1;
        break;
    }
  }
  return {std::move(row), rhs};
}

}  // namespace detail

// Solves the full stability system for a fixed structure: efficiency,
// x >= 0, individual rationality, and p_S(x) >= A(CS, x, S, d) for every S
// and deviation d. Returns a stable imputation or none.
inline std::optional<Imputation> brute_is_stable(
    const Game& g, const FullArbitration& arb, const CoalitionStructure& cs,
    const EnumerationBudget& budget = {},
    IrMode mode = IrMode::full_endowment) {
  const auto* local = std::get_if<LocalArbitration>(&arb);
  if (!local)
    throw UnsupportedError("stability LP needs a local arbitration rule");
  if (!cs.is_feasible(g)) throw ContractError("structure is not feasible");
  const int n = g.n();
  detail::check_budget(g, AgentSet::all(n), budget, "brute_is_stable");
  ImputationVars iv(cs);
  LinearProgram lp = base_stability_lp(g, cs, iv, mode);

  std::map<std::vector<Rational>, Rational> cuts;
  std::int64_t count = 0;
  Outcome shell{cs, Imputation::zeros(cs.size(), n)};
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    AgentSet s = AgentSet::from_mask(mask, n);
    CoverTable cover = make_endowment_cover(g, s);
    Coalition base = deviation_resources(g, shell, s, {});
    std::vector<int> mixed = mixed_indices(cs, s);
    const bool branch = local->rule == LocalArbitration::Rule::optimistic &&
                        local->clamped;
    const std::uint64_t branches =
        branch ? (std::uint64_t{1} << mixed.size()) : 1;
    for_each_deviation(shell, s, [&](const Deviation& dev) {
      Coalition free = base;
      for (const auto& [j, d] : dev) free += d;
      const Rational& cv = cover.at(free);
      for (std::uint64_t b = 0; b < branches; ++b) {
        if (++count > budget.max_structures)
          throw ResourceError("brute_is_stable: more than " +
                              std::to_string(budget.max_structures) +
                              " stability constraints");
        std::vector<bool> live(cs.size(), !branch);
        for (std::size_t t = 0; t < mixed.size() && branch; ++t)
          live[mixed[t]] = (b >> t & 1U) != 0;
        auto [row, rhs] =
            detail::stability_cut(g, cs, iv, *local, s, dev, cv, live);
        auto [it, fresh] = cuts.try_emplace(std::move(row), rhs);
        if (!fresh && rhs > it->second) it->second = rhs;
      }
      return true;
    });
  }
  for (auto& [row, rhs] : cuts) lp.add_row(row, Sense::ge, rhs);
  LpResult r = solve_lp(lp);
  if (r.status != LpStatus::optimal) return std::nullopt;
  return iv.to_imputation(r.x, cs.size(), n);
}

}  // namespace ocf

#endif  // OCF_ORACLE_HPP
