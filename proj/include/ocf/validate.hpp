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

#ifndef OCF_VALIDATE_HPP
#define OCF_VALIDATE_HPP

#include <string>
#include <vector>

#include "ocf/core.hpp"
#include "ocf/cover.hpp"

namespace ocf {

// Which bound individual rationality compares against: v*(W^{i}) (the
// agent's whole endowment) or v*(e^i) (one unit).
enum class IrMode { full_endowment, unit };

struct Violation {
  enum class Kind {
    shape,
    feasibility,
    efficiency,
    side_payment,
    negative_payoff,
    individual_rationality
  };
  Kind kind;
  int coalition = -1;  // -1 when not tied to a coalition
  Agent agent = -1;    // -1 when not tied to an agent
  std::string detail;
};

inline const char* kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::shape: return "shape";
    case Violation::Kind::feasibility: return "feasibility";
    case Violation::Kind::efficiency: return "efficiency";
    case Violation::Kind::side_payment: return "side_payment";
    case Violation::Kind::negative_payoff: return "negative_payoff";
    case Violation::Kind::individual_rationality:
      return "individual_rationality";
  }
  return "unknown";
}

// The IR bound for agent i.
inline Rational individual_rationality_bound(const Game& g, Agent i,
                                             IrMode mode) {
  std::vector<Rational> alone = single_agent_cover(g, i);
  return mode == IrMode::unit ? alone.at(1) : alone.back();
}

// Every violated outcome invariant; empty iff the outcome is valid.
inline std::vector<Violation> validate_outcome(
    const Outcome& o, const Game& g, IrMode mode = IrMode::full_endowment) {
  using K = Violation::Kind;
  std::vector<Violation> out;
  const int n = g.n();
  const auto& cs = o.structure;
  if (o.imputation.size() != cs.size()) {
    out.push_back({K::shape, -1, -1,
                   "imputation has " + std::to_string(o.imputation.size()) +
                       " vectors for " + std::to_string(cs.size()) +
                       " coalitions"});
    return out;
  }
  for (int j = 0; j < cs.size(); ++j) {
    if (cs[j].n() != n || static_cast<int>(o.imputation[j].size()) != n) {
      out.push_back({K::shape, j, -1, "vector length differs from n"});
      return out;
    }
  }

  for (int j = 0; j < cs.size(); ++j)
    for (Agent i = 0; i < n; ++i)
      if (cs[j][i] < 0 || cs[j][i] > g.weight(i))
        out.push_back({K::feasibility, j, i,
                       "contribution " + std::to_string(cs[j][i]) +
                           " outside [0," + std::to_string(g.weight(i)) + "]"});
  Coalition used = cs.weight(n);
  for (Agent i = 0; i < n; ++i)
    if (used[i] > g.weight(i))
      out.push_back({K::feasibility, -1, i,
                     "total contribution " + std::to_string(used[i]) +
                         " exceeds weight " + std::to_string(g.weight(i))});
  if (!out.empty()) return out;

  for (int j = 0; j < cs.size(); ++j) {
    const auto& x = o.imputation[j];
    Rational sum = 0;
    for (Agent i = 0; i < n; ++i) {
      sum += x[i];
      if (x[i] < 0)
        out.push_back({K::negative_payoff, j, i, "payoff " + to_string(x[i])});
      if (cs[j][i] == 0 && x[i] != 0)
        out.push_back({K::side_payment, j, i,
                       "agent outside the support is paid " + to_string(x[i])});
    }
    Rational v = g.value(cs[j]);
    if (sum != v)
      out.push_back({K::efficiency, j, -1,
                     "payoffs sum to " + to_string(sum) + ", value is " +
                         to_string(v)});
  }
  for (Agent i = 0; i < n; ++i) {
    Rational p = payoff_to_agent(o, i);
    Rational bound = individual_rationality_bound(g, i, mode);
    if (p < bound)
      out.push_back({K::individual_rationality, -1, i,
                     "payoff " + to_string(p) + " below " + to_string(bound)});
  }
  return out;
}

}  // namespace ocf

#endif  // OCF_VALIDATE_HPP
