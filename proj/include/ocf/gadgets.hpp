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

// Game generators encoding three hardness reductions. Each returns its
// decision threshold so callers never recompute it.

#ifndef OCF_GADGETS_HPP
#define OCF_GADGETS_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocf/arbitration.hpp"
#include "ocf/core.hpp"
#include "ocf/errors.hpp"

namespace ocf {

struct X3cInstance {
  int elements = 0;  // 3 * l
  std::vector<std::array<int, 3>> subsets;
};

inline void validate_x3c(const X3cInstance& x) {
  if (x.elements <= 0 || x.elements % 3 != 0)
    throw DataError("X3C element count must be a positive multiple of 3");
  std::set<std::array<int, 3>> seen;
  for (auto s : x.subsets) {
    std::sort(s.begin(), s.end());
    if (s[0] < 0 || s[2] >= x.elements)
      throw DataError("X3C subset names an unknown element");
    if (s[0] == s[1] || s[1] == s[2])
      throw DataError("X3C subset repeats an element");
    if (!seen.insert(s).second) throw DataError("X3C subsets must be distinct");
  }
}

// Brute force over subset selections.
inline bool exact_cover_exists(const X3cInstance& x) {
  validate_x3c(x);
  const std::size_t t = x.subsets.size();
  if (t >= 63) throw ResourceError("too many subsets for brute force");
  const std::size_t need = static_cast<std::size_t>(x.elements / 3);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcountll(mask)) != need) continue;
    std::vector<bool> hit(x.elements, false);
    bool ok = true;
    for (std::size_t k = 0; k < t && ok; ++k)
      if (mask >> k & 1U)
        for (int e : x.subsets[k]) {
          if (hit[e]) ok = false;
          hit[e] = true;
        }
    if (ok) return true;
  }
  return false;
}

struct GadgetGame {
  Game game;
  Rational threshold;  // yes iff v*(W) >= threshold
};

// Element agents 0..|A|-1 with weight 1, then one set agent of weight 3 per
// subset. A set agent earns 2 with each of its elements and 5 alone at full
// weight.
inline GadgetGame x3c_gadget(const X3cInstance& x) {
  validate_x3c(x);
  const int na = x.elements;
  const int t = static_cast<int>(x.subsets.size());
  const int n = na + t;
  std::vector<int> w(n, 1);
  CharacteristicFunction v(n, 2);
  InteractionGraph gr(n);
  for (int k = 0; k < t; ++k) {
    const Agent a = na + k;
    w[a] = 3;
    v.set({a}, {3}, 5);
    for (int e : x.subsets[k]) {
      v.set({e, a}, {1, 1}, 2);
      gr.add_edge(e, a);
    }
  }
  return {Game(w, v, gr), Rational(5 * t + na / 3)};
}

// Hub agent n of weight 2 joined to every vertex. A nonempty vertex set S
// with the hub at 1 unit is worth 1 when S is independent, otherwise
// eps/(|S|+1) when S covers every edge. Not a 2-OCF game.
inline GadgetGame independent_set_gadget(const InteractionGraph& g, int m,
                                         const Rational& eps = Rational(1, 10)) {
  const int n = g.n();
  if (eps <= 0 || eps >= 1) throw DataError("eps must lie in (0, 1)");
  if (n < 1 || n > 20) throw ResourceError("independent set gadget needs 1..20 vertices");
  if (m < 0 || m > n) throw DataError("m must lie in [0, n]");
  const Agent hub = n;
  std::vector<int> w(n + 1, 1);
  w[hub] = 2;
  CharacteristicFunction v(n + 1, n + 1);
  InteractionGraph star(n + 1);
  for (Agent i = 0; i < n; ++i) star.add_edge(i, hub);
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    AgentSet s = AgentSet::from_mask(mask, n);
    bool independent = true, cover = true;
    for (const auto& [a, b] : g.edges()) {
      if (s.contains(a) && s.contains(b)) independent = false;
      if (!s.contains(a) && !s.contains(b)) cover = false;
    }
    Rational value;
    if (independent)
      value = 1;
    else if (cover)
      value = eps / (s.size() + 1);
    else
      continue;
    std::vector<Agent> members = s.members();
    members.push_back(hub);
    std::vector<int> ones(members.size(), 1);
    v.set(members, ones, value);
  }
  return {Game(w, v, star), 1 + eps / (n - m + 1)};
}

struct SetCoverGadget {
  Game game;
  Outcome outcome;
  CustomArbitration arbitration;
  AgentSet deviator;   // {0}
  Rational threshold;  // yes iff A*(deviator) >= threshold
};

// Two agents of weight t+2 with v_i(x) = x, v(1,1) = 2, v(2,2) = 10(t+2).
// The structure holds t coalitions (1,1) paying (0,2), one per set, and one
// (2,2) paying 5(t+2) each. When agent 0 deviates, the (2,2) coalition pays
// it 5(t+2) only if untouched and the untouched (1,1) coalitions name a
// cover; every other payment follows the refined rule.
inline SetCoverGadget set_cover_arbitration_gadget(
    int elements, const std::vector<std::vector<int>>& sets, int l) {
  const int t = static_cast<int>(sets.size());
  if (elements < 1) throw DataError("set cover needs at least one element");
  for (const auto& s : sets)
    for (int e : s)
      if (e < 0 || e >= elements)
        throw DataError("set names an unknown element");
  if (l < 0) throw DataError("cover size bound must be non-negative");
  const int W = t + 2;
  CharacteristicFunction v(2, 2);
  for (int x = 1; x <= W; ++x) {
    v.set({0}, {x}, x);
    v.set({1}, {x}, x);
  }
  v.set({0, 1}, {1, 1}, 2);
  v.set({0, 1}, {2, 2}, 10 * W);
  InteractionGraph gr(2);
  gr.add_edge(0, 1);
  Game game({W, W}, v, gr);
  CoalitionStructure cs;
  Imputation x = Imputation::zeros(t + 1, 2);
  for (int j = 0; j < t; ++j) {
    cs.push_back(Coalition{1, 1});
    x[j][1] = 2;
  }
  cs.push_back(Coalition{2, 2});
  x[t][0] = 5 * W;
  x[t][1] = 5 * W;

  auto payoffs = [sets, elements, t, W](const Game&, const Outcome& o,
                                        const AgentSet& s,
                                        const Deviation& dev) {
    const auto& cs = o.structure;
    std::vector<Rational> out(cs.size(), Rational(0));
    auto untouched = [&](int j) {
      auto it = dev.find(j);
      return it == dev.end() || it->second.is_zero();
    };
    for (int j = 0; j < cs.size(); ++j)
      if (is_mixed(cs[j], s) && untouched(j))
        out[j] = share_of(o.imputation[j], s);
    if (s == AgentSet{0} && cs.size() == t + 1) {
      std::vector<bool> hit(elements, false);
      for (int j = 0; j < t; ++j)
        if (untouched(j))
          for (int e : sets[j]) hit[e] = true;
      const bool covers = std::all_of(hit.begin(), hit.end(),
                                      [](bool b) { return b; });
      out[t] = untouched(t) && covers ? Rational(5 * W) : Rational(0);
    }
    return out;
  };
  return {game,
          {cs, x},
          {"set-cover", payoffs},
          AgentSet{0},
          Rational(5 * W + t - l)};
}

// Smallest cover size by brute force, or -1 if the sets do not cover.
inline int min_set_cover(int elements, const std::vector<std::vector<int>>& sets) {
  const std::size_t t = sets.size();
  if (t >= 31) throw ResourceError("too many sets for brute force");
  int best = -1;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << t); ++mask) {
    std::vector<bool> hit(elements, false);
    for (std::size_t k = 0; k < t; ++k)
      if (mask >> k & 1U)
        for (int e : sets[k]) hit[e] = true;
    if (!std::all_of(hit.begin(), hit.end(), [](bool b) { return b; })) continue;
    const int size = __builtin_popcountll(mask);
    if (best < 0 || size < best) best = size;
  }
  return best;
}

}  // namespace ocf

#endif  // OCF_GADGETS_HPP
