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

// Hand-built fixtures and seeded random instance generators shared by the
// unit tests and the acceptance binary.

#ifndef OCF_TESTS_FIXTURES_HPP
#define OCF_TESTS_FIXTURES_HPP

#include <random>
#include <utility>
#include <vector>

#include "ocf/ocf.hpp"

namespace ocf::testing {

// Two agents, W = (2,1): v0(1)=1, v0(2)=3, v1(1)=2, v01(1,1)=4.
inline Game g1(bool with_edge = true) {
  CharacteristicFunction v(2, 2);
  v.set({0}, {1}, 1);
  v.set({0}, {2}, 3);
  v.set({1}, {1}, 2);
  v.set({0, 1}, {1, 1}, 4);
  if (!with_edge) return Game({2, 1}, v);
  InteractionGraph gr(2);
  gr.add_edge(0, 1);
  return Game({2, 1}, v, gr);
}

// CS = ((1,1),(1,0)), x = ((2,2),(1,0)).
inline Outcome o1() {
  CoalitionStructure cs{Coalition{1, 1}, Coalition{1, 0}};
  Imputation x({{2, 2}, {1, 0}});
  return {cs, x};
}

// Two agents, W = (2,1); tasks {0,1} pi 3, {0} pi 1, {1} pi 0.
inline LbgInstance l1() {
  return LbgInstance({2, 1}, {{AgentSet{0, 1}, 3}, {AgentSet{0}, 1},
                              {AgentSet{1}, 0}});
}

// Path 0-1-2 with unit weights, v01(1,1) = v12(1,1) = 1.
inline Game path3() {
  CharacteristicFunction v(3, 2);
  v.set({0, 1}, {1, 1}, 1);
  v.set({1, 2}, {1, 1}, 1);
  InteractionGraph gr(3);
  gr.add_edge(0, 1);
  gr.add_edge(1, 2);
  return Game({1, 1, 1}, v, gr);
}

// Triangle with unit weights and v_ij(1,1) = 1 on every edge.
inline Game triangle() {
  CharacteristicFunction v(3, 2);
  v.set({0, 1}, {1, 1}, 1);
  v.set({0, 2}, {1, 1}, 1);
  v.set({1, 2}, {1, 1}, 1);
  return Game({1, 1, 1}, v);
}

inline Rational random_value(std::mt19937_64& rng, int max_value) {
  std::uniform_int_distribution<int> num(0, max_value);
  std::uniform_int_distribution<int> coin(0, 3);
  Rational r = num(rng);
  if (coin(rng) == 0) r /= 2;
  return r;
}

// Random parent tree on n agents: agent i > 0 hangs below some j < i.
inline InteractionGraph random_tree(std::mt19937_64& rng, int n) {
  InteractionGraph gr(n);
  for (int i = 1; i < n; ++i) {
    std::uniform_int_distribution<int> p(0, i - 1);
    gr.add_edge(p(rng), i);
  }
  return gr;
}

inline InteractionGraph cycle_graph(int n) {
  InteractionGraph gr(n);
  for (int i = 0; i < n; ++i) gr.ensure_edge(i, (i + 1) % n);
  return gr;
}

inline InteractionGraph clique_graph(int n) {
  InteractionGraph gr(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) gr.add_edge(i, j);
  return gr;
}

// Random 2-OCF game on the edges of `gr` with weights in [1, max_w].
inline Game random_2ocf(std::mt19937_64& rng, const InteractionGraph& gr,
                        int max_w, int max_value, double density = 0.6) {
  const int n = gr.n();
  std::uniform_int_distribution<int> wd(1, max_w);
  std::bernoulli_distribution keep(density);
  std::vector<int> w(n);
  for (auto& x : w) x = wd(rng);
  CharacteristicFunction v(n, 2);
  for (int i = 0; i < n; ++i)
    for (int a = 1; a <= w[i]; ++a)
      if (keep(rng)) v.set({i}, {a}, random_value(rng, max_value));
  for (const auto& [i, j] : gr.edges()) {
    if (i == j) continue;
    for (int a = 1; a <= w[i]; ++a)
      for (int b = 1; b <= w[j]; ++b)
        if (keep(rng)) v.set({i, j}, {a, b}, random_value(rng, max_value));
  }
  return Game(w, v, gr);
}

// Random feasible structure of singleton and edge coalitions, with an
// efficient, side-payment-free imputation splitting each value at random.
inline Outcome random_outcome(std::mt19937_64& rng, const Game& g,
                              const InteractionGraph& gr) {
  const int n = g.n();
  std::vector<int> room = g.weights();
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i) slots.emplace_back(i, i);
  for (const auto& e : gr.edges())
    if (e.first != e.second) slots.push_back(e);
  std::uniform_int_distribution<std::size_t> pick(0, slots.size() - 1);
  std::uniform_int_distribution<int> count(0, n + 1);
  CoalitionStructure cs;
  const int tries = count(rng);
  for (int t = 0; t < tries; ++t) {
    auto [i, j] = slots[pick(rng)];
    if (room[i] == 0 || room[j] == 0) continue;
    Coalition c(n);
    if (i == j) {
      std::uniform_int_distribution<int> a(1, room[i]);
      c[i] = a(rng);
    } else {
      std::uniform_int_distribution<int> a(1, room[i]);
      std::uniform_int_distribution<int> b(1, room[j]);
      c[i] = a(rng);
      c[j] = b(rng);
    }
    for (int k = 0; k < n; ++k) room[k] -= c[k];
    cs.push_back(std::move(c));
  }
  Imputation x = Imputation::zeros(cs.size(), n);
  std::uniform_int_distribution<int> split(0, 4);
  for (int j = 0; j < cs.size(); ++j) {
    Rational value = g.value(cs[j]);
    AgentSet s = cs[j].support();
    Rational left = value;
    for (std::size_t k = 0; k + 1 < s.members().size(); ++k) {
      Rational part = value * split(rng) / 4;
      if (part > left) part = left;
      x[j][s.members()[k]] = part;
      left -= part;
    }
    x[j][s.members().back()] = left;
  }
  return {cs, x};
}

}  // namespace ocf::testing

#endif  // OCF_TESTS_FIXTURES_HPP
