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

// Arbitration functions: what the non-deviators of each coalition still pay
// a deviating set S after it withdraws resources.
//
// Only coalitions that mix S with outsiders are arbitrated. Coalitions
// entirely inside S are dissolved into the deviators' free resources, and
// coalitions without an S member pay S nothing.

#ifndef OCF_ARBITRATION_HPP
#define OCF_ARBITRATION_HPP

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ocf/core.hpp"

namespace ocf {

struct LocalArbitration {
  enum class Rule { conservative, refined, optimistic };
  Rule rule = Rule::conservative;
  // Only meaningful for the optimistic rule: floor the payment at 0.
  bool clamped = false;

  static LocalArbitration conservative() { return {Rule::conservative, false}; }
  static LocalArbitration refined() { return {Rule::refined, false}; }
  static LocalArbitration optimistic(bool clamped = false) {
    return {Rule::optimistic, clamped};
  }

  std::string name() const {
    switch (rule) {
      case Rule::conservative: return "conservative";
      case Rule::refined: return "refined";
      case Rule::optimistic:
        return clamped ? "optimistic-clamped" : "optimistic";
    }
    return "unknown";
  }
};

// Withdrawals d(c) keyed by coalition index. Absent keys withdraw nothing.
using Deviation = std::map<int, Coalition>;

struct SensitiveArbitration {};

// Arbitrary rule: returns one payment per coalition of the outcome.
struct CustomArbitration {
  std::string name;
  std::function<std::vector<Rational>(const Game&, const Outcome&,
                                      const AgentSet&, const Deviation&)>
      payoffs;
};

using FullArbitration =
    std::variant<LocalArbitration, SensitiveArbitration, CustomArbitration>;

inline std::string arbitration_name(const FullArbitration& a) {
  if (const auto* l = std::get_if<LocalArbitration>(&a)) return l->name();
  if (std::holds_alternative<SensitiveArbitration>(a)) return "sensitive";
  return std::get<CustomArbitration>(a).name;
}

// supp(c) meets S and is not contained in S.
inline bool is_mixed(const Coalition& c, const AgentSet& s) {
  bool inside = false, outside = false;
  for (int i = 0; i < c.n(); ++i) {
    if (c[i] == 0) continue;
    (s.contains(i) ? inside : outside) = true;
  }
  return inside && outside;
}

inline std::vector<int> mixed_indices(const CoalitionStructure& cs,
                                      const AgentSet& s) {
  std::vector<int> out;
  for (int j = 0; j < cs.size(); ++j)
    if (is_mixed(cs[j], s)) out.push_back(j);
  return out;
}

// d <= c and supp(d) inside S.
inline void require_valid_withdrawal(const Coalition& c, const Coalition& d,
                                     const AgentSet& s) {
  if (d.n() != c.n()) throw ContractError("withdrawal dimension mismatch");
  for (int i = 0; i < c.n(); ++i) {
    if (d[i] < 0 || d[i] > c[i])
      throw ContractError("withdrawal " + d.to_string() + " not within " +
                          c.to_string());
    if (d[i] > 0 && !s.contains(i))
      throw ContractError("non-deviator " + std::to_string(i) + " withdraws");
  }
}

inline void require_valid_deviation(const Outcome& o, const AgentSet& s,
                                    const Deviation& dev) {
  for (const auto& [j, d] : dev) {
    if (j < 0 || j >= o.structure.size())
      throw ContractError("deviation names coalition " + std::to_string(j) +
                          " outside the structure");
    if (!is_mixed(o.structure[j], s) && !d.is_zero())
      throw ContractError("withdrawal from a coalition that is not mixed");
    require_valid_withdrawal(o.structure[j], d, s);
  }
}

// Payment from one coalition under a local rule.
inline Rational local_payoff(const LocalArbitration& arb, const Coalition& c,
                             const Coalition& d,
                             const std::vector<Rational>& xc,
                             const AgentSet& s,
                             const CharacteristicFunction& v) {
  require_valid_withdrawal(c, d, s);
  switch (arb.rule) {
    case LocalArbitration::Rule::conservative:
      return 0;
    case LocalArbitration::Rule::refined:
      return d.is_zero() ? share_of(xc, s) : Rational(0);
    case LocalArbitration::Rule::optimistic: {
      Rational r = v.eval(c - d);
      for (int i = 0; i < c.n(); ++i)
        if (!s.contains(i)) r -= xc.at(i);
      if (arb.clamped && r < 0) r = 0;
      return r;
    }
  }
  return 0;
}

inline Coalition withdrawal_of(const Deviation& dev, int j, int n) {
  auto it = dev.find(j);
  return it == dev.end() ? Coalition(n) : it->second;
}

// Sensitive rule. Hurt agents are the non-deviators in the support of any
// coalition with a nonzero withdrawal. A touched coalition pays 0; an
// untouched one pays S its share unless a hurt agent is in its support.
inline std::vector<Rational> sensitive_payoffs(const Outcome& o,
                                               const AgentSet& s,
                                               const Deviation& dev) {
  require_valid_deviation(o, s, dev);
  const auto& cs = o.structure;
  std::vector<bool> hurt;
  int n = cs.empty() ? 0 : cs[0].n();
  hurt.assign(static_cast<std::size_t>(n), false);
  for (const auto& [j, d] : dev) {
    if (d.is_zero()) continue;
    for (int i = 0; i < n; ++i)
      if (cs[j][i] > 0 && !s.contains(i)) hurt[i] = true;
  }
  std::vector<Rational> out(cs.size(), Rational(0));
  for (int j = 0; j < cs.size(); ++j) {
    if (!is_mixed(cs[j], s)) continue;
    auto it = dev.find(j);
    if (it != dev.end() && !it->second.is_zero()) continue;
    bool clean = true;
    for (int i = 0; i < n; ++i)
      if (cs[j][i] > 0 && hurt[i]) clean = false;
    if (clean) out[j] = share_of(o.imputation[j], s);
  }
  return out;
}

// One payment per coalition; non-mixed coalitions pay 0.
inline std::vector<Rational> arbitration_payoffs(const Game& g,
                                                 const Outcome& o,
                                                 const AgentSet& s,
                                                 const Deviation& dev,
                                                 const FullArbitration& arb) {
  require_valid_deviation(o, s, dev);
  const auto& cs = o.structure;
  if (const auto* l = std::get_if<LocalArbitration>(&arb)) {
    std::vector<Rational> out(cs.size(), Rational(0));
    for (int j = 0; j < cs.size(); ++j)
      if (is_mixed(cs[j], s))
        out[j] = local_payoff(*l, cs[j], withdrawal_of(dev, j, g.n()),
                              o.imputation[j], s, g.v());
    return out;
  }
  if (std::holds_alternative<SensitiveArbitration>(arb))
    return sensitive_payoffs(o, s, dev);
  auto out = std::get<CustomArbitration>(arb).payoffs(g, o, s, dev);
  if (static_cast<int>(out.size()) != cs.size())
    throw ContractError("custom arbitration returned wrong payoff count");
  for (int j = 0; j < cs.size(); ++j)
    if (!is_mixed(cs[j], s)) out[j] = 0;
  return out;
}

// Resources S may use after the deviation: its unused weight, everything it
// put into coalitions inside S, and its withdrawals.
inline Coalition deviation_resources(const Game& g, const Outcome& o,
                                     const AgentSet& s, const Deviation& dev) {
  const int n = g.n();
  Coalition free = (g.endowment() - o.structure.weight(n)).restricted_to(s);
  free += reduce_structure(o.structure, s).weight(n).restricted_to(s);
  for (const auto& [j, d] : dev) free += d;
  return free;
}

// Total payoff of S: v(post) plus the arbitration payments.
inline Rational deviation_total(const Game& g, const Outcome& o,
                                const AgentSet& s, const Deviation& dev,
                                const FullArbitration& arb,
                                const CoalitionStructure& post) {
  require_valid_deviation(o, s, dev);
  const int n = g.n();
  for (const auto& c : post)
    if (!c.support().is_subset_of(s))
      throw ContractError("post-deviation coalition " + c.to_string() +
                          " uses agents outside S");
  if (!fits_within(post.weight(n), deviation_resources(g, o, s, dev)))
    throw ContractError("post-deviation structure overuses resources");
  Rational total = post.value(g);
  for (const auto& p : arbitration_payoffs(g, o, s, dev, arb)) total += p;
  return total;
}

// Calls f(dev) for every deviation of S, withdrawing any amount from every
// mixed coalition. Returns false if f asked to stop.
template <typename F>
bool for_each_deviation(const Outcome& o, const AgentSet& s, F&& f) {
  const auto& cs = o.structure;
  std::vector<int> mixed = mixed_indices(cs, s);
  Deviation dev;
  for (int j : mixed) dev[j] = Coalition(cs[j].n());
  while (true) {
    if (!f(static_cast<const Deviation&>(dev))) return false;
    // Odometer over (coalition, deviator) digits.
    bool advanced = false;
    for (int j : mixed) {
      Coalition& d = dev[j];
      for (int i = 0; i < d.n() && !advanced; ++i) {
        if (!s.contains(i) || cs[j][i] == 0) continue;
        if (d[i] < cs[j][i]) {
          ++d[i];
          advanced = true;
        } else {
          d[i] = 0;
        }
      }
      if (advanced) break;
    }
    if (!advanced) return true;
  }
}

struct LocalityViolation {
  int coalition = -1;
  Deviation first, second;
  Rational first_payoff, second_payoff;
};

// Searches for two deviations that agree on one coalition's withdrawal but
// give that coalition different payments. A local rule never has one.
inline std::optional<LocalityViolation> find_locality_violation(
    const Game& g, const Outcome& o, const AgentSet& s,
    const FullArbitration& arb) {
  // Per coalition: withdrawal -> (first deviation seen, its payment).
  std::vector<std::map<Coalition, std::pair<Deviation, Rational>>> seen(
      static_cast<std::size_t>(o.structure.size()));
  std::optional<LocalityViolation> found;
  for_each_deviation(o, s, [&](const Deviation& dev) {
    auto pay = arbitration_payoffs(g, o, s, dev, arb);
    for (int j : mixed_indices(o.structure, s)) {
      Coalition d = withdrawal_of(dev, j, g.n());
      auto [it, fresh] = seen[j].try_emplace(d, dev, pay[j]);
      if (!fresh && it->second.second != pay[j]) {
        found = LocalityViolation{j, it->second.first, dev, it->second.second,
                                  pay[j]};
        return false;
      }
    }
    return true;
  });
  return found;
}

}  // namespace ocf

#endif  // OCF_ARBITRATION_HPP
