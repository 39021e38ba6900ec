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

#ifndef OCF_DECOMPOSITION_HPP
#define OCF_DECOMPOSITION_HPP

#include <algorithm>
#include <limits>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocf/core.hpp"

namespace ocf {

// A tree of agent bags. Bags are kept sorted.
struct TreeDecomposition {
  std::vector<std::vector<Agent>> bags;
  std::vector<std::pair<int, int>> edges;
  int root = 0;

  int width() const {
    std::size_t m = 0;
    for (const auto& b : bags) m = std::max(m, b.size());
    return static_cast<int>(m) - 1;
  }

  // Bag adjacency lists.
  std::vector<std::vector<int>> adjacency() const {
    std::vector<std::vector<int>> adj(bags.size());
    for (const auto& [a, b] : edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
  }
};

// Every violated property: bag tree shape, agent coverage, edge coverage,
// running intersection. Empty iff valid for g. Agent coverage is checked for
// `members` only when given.
inline std::vector<std::string> validate_decomposition(
    const InteractionGraph& g, const TreeDecomposition& t,
    const std::optional<AgentSet>& members = std::nullopt) {
  std::vector<std::string> out;
  const int nb = static_cast<int>(t.bags.size());
  if (nb == 0) {
    if (g.n() > 0) out.push_back("decomposition has no bags");
    return out;
  }
  if (t.root < 0 || t.root >= nb) out.push_back("root bag out of range");
  for (int b = 0; b < nb; ++b)
    for (Agent a : t.bags[b])
      if (a < 0 || a >= g.n())
        out.push_back("bag " + std::to_string(b) + " names agent " +
                      std::to_string(a) + " out of range");
  bool edges_ok = true;
  for (const auto& [a, b] : t.edges)
    if (a < 0 || b < 0 || a >= nb || b >= nb || a == b) {
      out.push_back("tree edge (" + std::to_string(a) + "," +
                    std::to_string(b) + ") is invalid");
      edges_ok = false;
    }
  if (!out.empty()) return out;
  if (static_cast<int>(t.edges.size()) != nb - 1 || !edges_ok) {
    out.push_back("bag graph has " + std::to_string(t.edges.size()) +
                  " edges for " + std::to_string(nb) + " bags");
  }
  auto adj = t.adjacency();
  {
    std::vector<bool> seen(nb, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (!seen[y]) {
          seen[y] = true;
          ++count;
          stack.push_back(y);
        }
    }
    if (count != nb) out.push_back("bag graph is not connected");
  }
  if (!out.empty()) return out;

  std::vector<std::vector<bool>> in(nb, std::vector<bool>(g.n(), false));
  for (int b = 0; b < nb; ++b)
    for (Agent a : t.bags[b]) in[b][a] = true;
  for (Agent a = 0; a < g.n(); ++a) {
    std::vector<int> holders;
    for (int b = 0; b < nb; ++b)
      if (in[b][a]) holders.push_back(b);
    if (holders.empty()) {
      if (members && !members->contains(a)) continue;
      out.push_back("agent " + std::to_string(a) + " is in no bag");
      continue;
    }
    // Holders must induce a connected subtree.
    std::vector<bool> seen(nb, false);
    std::vector<int> stack{holders.front()};
    seen[holders.front()] = true;
    std::size_t count = 1;
    while (!stack.empty()) {
      int x = stack.back();
      stack.pop_back();
      for (int y : adj[x])
        if (in[y][a] && !seen[y]) {
          seen[y] = true;
          ++count;
          stack.push_back(y);
        }
    }
    if (count != holders.size())
      out.push_back("bags holding agent " + std::to_string(a) +
                    " are not connected");
  }
  for (const auto& [a, b] : g.edges()) {
    bool covered = false;
    for (int x = 0; x < nb && !covered; ++x)
      covered = in[x][a] && in[x][b];
    if (!covered)
      out.push_back("edge {" + std::to_string(a) + "," + std::to_string(b) +
                    "} is in no bag");
  }
  return out;
}

// Min-fill elimination ordering, ties to the lowest agent. The bag of each
// eliminated agent hangs below the bag of its first-eliminated neighbour;
// the last bag is the root.
inline TreeDecomposition heuristic_decomposition(const InteractionGraph& g) {
  const int n = g.n();
  TreeDecomposition t;
  if (n == 0) return t;
  std::vector<std::set<Agent>> adj(n);
  for (const auto& [a, b] : g.edges())
    if (a != b) {
      adj[a].insert(b);
      adj[b].insert(a);
    }
  std::vector<int> position(n, -1);
  std::vector<Agent> order;
  std::vector<std::vector<Agent>> nbrs_at(n);
  for (int step = 0; step < n; ++step) {
    Agent pick = -1;
    long best = std::numeric_limits<long>::max();
    for (Agent v = 0; v < n; ++v) {
      if (position[v] >= 0) continue;
      long fill = 0;
      for (auto x = adj[v].begin(); x != adj[v].end(); ++x)
        for (auto y = std::next(x); y != adj[v].end(); ++y)
          if (!adj[*x].count(*y)) ++fill;
      if (fill < best) {
        best = fill;
        pick = v;
      }
    }
    position[pick] = step;
    order.push_back(pick);
    nbrs_at[pick].assign(adj[pick].begin(), adj[pick].end());
    for (Agent x : adj[pick])
      for (Agent y : adj[pick])
        if (x != y) adj[x].insert(y);
    for (Agent x : adj[pick]) adj[x].erase(pick);
    adj[pick].clear();
  }
  t.bags.resize(n);
  for (int p = 0; p < n; ++p) {
    Agent v = order[p];
    std::vector<Agent> bag = nbrs_at[v];
    bag.push_back(v);
    std::sort(bag.begin(), bag.end());
    t.bags[p] = std::move(bag);
  }
  for (int p = 0; p + 1 < n; ++p) {
    Agent v = order[p];
    int parent = p + 1;
    if (!nbrs_at[v].empty()) {
      parent = n;
      for (Agent u : nbrs_at[v]) parent = std::min(parent, position[u]);
    }
    t.edges.emplace_back(p, parent);
  }
  t.root = n - 1;
  return t;
}

// Intersects every bag with `keep`; stays a decomposition of the subgraph
// induced by `keep`.
inline TreeDecomposition restrict_decomposition(const TreeDecomposition& t,
                                                const AgentSet& keep) {
  TreeDecomposition r = t;
  for (auto& b : r.bags) {
    std::vector<Agent> kept;
    for (Agent a : b)
      if (keep.contains(a)) kept.push_back(a);
    b = std::move(kept);
  }
  return r;
}

// The subgraph of g induced by s, on the same agent indices.
inline InteractionGraph induced_subgraph(const InteractionGraph& g,
                                         const AgentSet& s) {
  InteractionGraph h(g.n());
  for (const auto& [a, b] : g.edges())
    if (s.contains(a) && s.contains(b)) h.add_edge(a, b);
  return h;
}

}  // namespace ocf

#endif  // OCF_DECOMPOSITION_HPP
