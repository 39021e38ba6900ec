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

// Domain types for discrete overlapping-coalition-formation games: agents
// hold integer resource endowments and split them across any number of
// simultaneous coalitions. Agent indices are 0-based throughout.

#ifndef OCF_CORE_HPP
#define OCF_CORE_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ocf/errors.hpp"
#include "ocf/rational.hpp"

namespace ocf {

using Agent = int;

// Sorted set of agent indices.
class AgentSet {
 public:
  AgentSet() = default;
  AgentSet(std::initializer_list<Agent> agents)
      : AgentSet(std::vector<Agent>(agents)) {}
  explicit AgentSet(std::vector<Agent> agents) : members_(std::move(agents)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()),
                   members_.end());
  }

  static AgentSet all(int n) {
    std::vector<Agent> v(n);
    std::iota(v.begin(), v.end(), 0);
    return AgentSet(std::move(v));
  }

  static AgentSet from_mask(std::uint64_t mask, int n) {
    std::vector<Agent> v;
    for (int i = 0; i < n; ++i)
      if (mask >> i & 1U) v.push_back(i);
    return AgentSet(std::move(v));
  }

  bool contains(Agent i) const {
    return std::binary_search(members_.begin(), members_.end(), i);
  }
  bool empty() const { return members_.empty(); }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<Agent>& members() const { return members_; }
  auto begin() const { return members_.begin(); }
  auto end() const { return members_.end(); }

  bool is_subset_of(const AgentSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(),
                         members_.begin(), members_.end());
  }

  AgentSet complement(int n) const {
    std::vector<Agent> v;
    for (int i = 0; i < n; ++i)
      if (!contains(i)) v.push_back(i);
    return AgentSet(std::move(v));
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t k = 0; k < members_.size(); ++k) {
      if (k) s += ",";
      s += std::to_string(members_[k]);
    }
    return s + "}";
  }

  friend bool operator==(const AgentSet&, const AgentSet&) = default;
  friend auto operator<=>(const AgentSet&, const AgentSet&) = default;

 private:
  std::vector<Agent> members_;
};

// A contribution vector: how many resource units each agent puts into one
// task. Ordered lexicographically.
class Coalition {
 public:
  Coalition() = default;
  explicit Coalition(int n) : c_(static_cast<std::size_t>(n), 0) {}
  explicit Coalition(std::vector<int> c) : c_(std::move(c)) {}
  Coalition(std::initializer_list<int> c) : c_(c) {}

  static Coalition indicator(int n, const AgentSet& s) {
    Coalition e(n);
    for (Agent i : s) e.c_.at(i) = 1;
    return e;
  }

  int n() const { return static_cast<int>(c_.size()); }
  int operator[](Agent i) const { return c_[i]; }
  int& operator[](Agent i) { return c_[i]; }
  const std::vector<int>& values() const { return c_; }

  AgentSet support() const {
    std::vector<Agent> s;
    for (int i = 0; i < n(); ++i)
      if (c_[i] > 0) s.push_back(i);
    return AgentSet(std::move(s));
  }
  int support_size() const {
    return static_cast<int>(
        std::count_if(c_.begin(), c_.end(), [](int x) { return x > 0; }));
  }
  bool is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
  }
  int total() const { return std::accumulate(c_.begin(), c_.end(), 0); }

  // c^S: zero outside S.
  Coalition restricted_to(const AgentSet& s) const {
    Coalition r(n());
    for (Agent i : s)
      if (i < n()) r.c_[i] = c_[i];
    return r;
  }

  Coalition& operator+=(const Coalition& o) {
    require_same_dim(o);
    for (int i = 0; i < n(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Coalition& operator-=(const Coalition& o) {
    require_same_dim(o);
    for (int i = 0; i < n(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Coalition operator+(Coalition a, const Coalition& b) {
    return a += b;
  }
  friend Coalition operator-(Coalition a, const Coalition& b) {
    return a -= b;
  }

  std::string to_string() const {
    std::string s = "(";
    for (int i = 0; i < n(); ++i) {
      if (i) s += ",";
      s += std::to_string(c_[i]);
    }
    return s + ")";
  }

  friend bool operator==(const Coalition&, const Coalition&) = default;
  friend auto operator<=>(const Coalition&, const Coalition&) = default;

 private:
  void require_same_dim(const Coalition& o) const {
    if (o.n() != n()) throw ContractError("coalition dimension mismatch");
  }

  std::vector<int> c_;
};

// Componentwise a <= b.
inline bool fits_within(const Coalition& a, const Coalition& b) {
  if (a.n() != b.n()) throw ContractError("coalition dimension mismatch");
  for (int i = 0; i < a.n(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Undirected agent graph; self-loops are allowed and ignored by
// connectivity queries.
class InteractionGraph {
 public:
  InteractionGraph() = default;
  explicit InteractionGraph(int n) : n_(n), adj_(static_cast<std::size_t>(n)) {}

  int n() const { return n_; }

  void add_edge(Agent a, Agent b) {
    if (a < 0 || b < 0 || a >= n_ || b >= n_)
      throw DataError("edge endpoint out of range");
    if (a > b) std::swap(a, b);
    if (!edges_.insert({a, b}).second)
      throw DataError("duplicate edge {" + std::to_string(a) + "," +
                      std::to_string(b) + "}");
    if (a != b) {
      adj_[a].push_back(b);
      adj_[b].push_back(a);
      std::sort(adj_[a].begin(), adj_[a].end());
      std::sort(adj_[b].begin(), adj_[b].end());
    }
  }

  // Adds the edge unless it is already present.
  void ensure_edge(Agent a, Agent b) {
    if (!has_edge(a, b)) add_edge(a, b);
  }

  bool has_edge(Agent a, Agent b) const {
    if (a > b) std::swap(a, b);
    return edges_.count({a, b}) > 0;
  }

  const std::set<std::pair<Agent, Agent>>& edges() const { return edges_; }
  const std::vector<Agent>& neighbors(Agent a) const { return adj_[a]; }

  // True iff s is nonempty and induces a connected subgraph. Singletons are
  // connected.
  bool is_connected_subset(const AgentSet& s) const {
    if (s.empty()) return false;
    std::vector<Agent> stack{*s.begin()};
    std::set<Agent> seen{*s.begin()};
    while (!stack.empty()) {
      Agent a = stack.back();
      stack.pop_back();
      for (Agent b : adj_[a])
        if (s.contains(b) && seen.insert(b).second) stack.push_back(b);
    }
    return static_cast<int>(seen.size()) == s.size();
  }

  // Connected components of the subgraph induced by s, each sorted, in order
  // of their smallest member.
  std::vector<std::vector<Agent>> components(const AgentSet& s) const {
    std::vector<std::vector<Agent>> out;
    std::set<Agent> seen;
    for (Agent root : s) {
      if (seen.count(root)) continue;
      std::vector<Agent> comp, stack{root};
      seen.insert(root);
      while (!stack.empty()) {
        Agent a = stack.back();
        stack.pop_back();
        comp.push_back(a);
        for (Agent b : adj_[a])
          if (s.contains(b) && seen.insert(b).second) stack.push_back(b);
      }
      std::sort(comp.begin(), comp.end());
      out.push_back(std::move(comp));
    }
    return out;
  }

  // True iff the subgraph induced by s has no cycle (self-loops ignored).
  bool is_forest_on(const AgentSet& s) const {
    std::size_t inner_edges = 0;
    for (const auto& [a, b] : edges_)
      if (a != b && s.contains(a) && s.contains(b)) ++inner_edges;
    return inner_edges + components(s).size() ==
           static_cast<std::size_t>(s.size());
  }

  bool is_forest() const { return is_forest_on(AgentSet::all(n_)); }

 private:
  int n_ = 0;
  std::set<std::pair<Agent, Agent>> edges_;
  std::vector<std::vector<Agent>> adj_;
};

// Sparse table of coalition values keyed by (sorted support, contributions of
// the support members). Unlisted coalitions, and coalitions whose support
// exceeds k, evaluate to 0.
class CharacteristicFunction {
 public:
  struct Key {
    std::vector<Agent> support;
    std::vector<int> contribution;
    friend auto operator<=>(const Key&, const Key&) = default;
    friend bool operator==(const Key&, const Key&) = default;
  };

  CharacteristicFunction() = default;
  CharacteristicFunction(int n, int k) : n_(n), k_(k) {
    if (n < 0) throw DataError("negative agent count");
    if (k < 1) throw DataError("k must be positive");
  }

  int n() const { return n_; }
  int k() const { return k_; }
  const std::map<Key, Rational>& entries() const { return entries_; }
  bool empty() const { return entries_.empty(); }

  static Key key_of(const Coalition& c) {
    Key key;
    for (int i = 0; i < c.n(); ++i) {
      if (c[i] > 0) {
        key.support.push_back(i);
        key.contribution.push_back(c[i]);
      }
    }
    return key;
  }

  Coalition coalition_of(const Key& key) const {
    Coalition c(n_);
    for (std::size_t t = 0; t < key.support.size(); ++t)
      c[key.support[t]] = key.contribution[t];
    return c;
  }

  void set(std::vector<Agent> support, std::vector<int> contribution,
           Rational value) {
    if (support.empty()) throw DataError("entry with empty support");
    if (support.size() != contribution.size())
      throw DataError("support and contribution lengths differ");
    if (static_cast<int>(support.size()) > k_)
      throw DataError("entry support larger than k");
    for (std::size_t t = 0; t < support.size(); ++t) {
      if (support[t] < 0 || support[t] >= n_)
        throw DataError("support agent out of range");
      if (t > 0 && support[t] <= support[t - 1])
        throw DataError("support must be strictly ascending");
      if (contribution[t] <= 0)
        throw DataError("support members must contribute at least 1 unit");
    }
    if (value < 0) throw DataError("negative coalition value");
    Key key{std::move(support), std::move(contribution)};
    entries_[std::move(key)] = std::move(value);
  }

  void set(const Coalition& c, Rational value) {
    check_dim(c);
    Key key = key_of(c);
    set(std::move(key.support), std::move(key.contribution), std::move(value));
  }

  void erase(const Key& key) { entries_.erase(key); }

  Rational eval(const Coalition& c) const {
    check_dim(c);
    if (c.support_size() > k_) return 0;
    auto it = entries_.find(key_of(c));
    return it == entries_.end() ? Rational(0) : it->second;
  }

  // Entries with positive value whose support lies inside s, as full
  // coalitions.
  std::vector<std::pair<Coalition, Rational>> positive_entries_within(
      const AgentSet& s) const {
    std::vector<std::pair<Coalition, Rational>> out;
    for (const auto& [key, value] : entries_) {
      if (value <= 0) continue;
      if (std::all_of(key.support.begin(), key.support.end(),
                      [&](Agent i) { return s.contains(i); }))
        out.emplace_back(coalition_of(key), value);
    }
    return out;
  }

  // Largest support among positive entries (0 for an all-zero function).
  int effective_k() const {
    int m = 0;
    for (const auto& [key, value] : entries_)
      if (value > 0) m = std::max(m, static_cast<int>(key.support.size()));
    return m;
  }

  friend bool operator==(const CharacteristicFunction&,
                         const CharacteristicFunction&) = default;

 private:
  void check_dim(const Coalition& c) const {
    if (c.n() != n_)
      throw ContractError("coalition has " + std::to_string(c.n()) +
                          " coordinates, game has " + std::to_string(n_));
  }

  int n_ = 0;
  int k_ = 1;
  std::map<Key, Rational> entries_;
};

// Drops every entry whose support is disconnected in g.
inline CharacteristicFunction myerson_restrict(const CharacteristicFunction& cf,
                                               const InteractionGraph& g) {
  if (cf.n() != g.n()) throw ContractError("graph and game sizes differ");
  CharacteristicFunction out(cf.n(), cf.k());
  for (const auto& [key, value] : cf.entries())
    if (g.is_connected_subset(AgentSet(key.support)))
      out.set(key.support, key.contribution, value);
  return out;
}

// A discrete OCF game. When an interaction graph is supplied, the
// characteristic function is restricted to it on construction.
class Game {
 public:
  Game() = default;
  Game(std::vector<int> weights, CharacteristicFunction v,
       std::optional<InteractionGraph> graph = std::nullopt)
      : weights_(std::move(weights)), v_(std::move(v)), graph_(std::move(graph)) {
    if (static_cast<int>(weights_.size()) != v_.n())
      throw DataError("weights length differs from characteristic function n");
    for (int w : weights_)
      if (w < 1) throw DataError("agent weights must be at least 1");
    for (const auto& [key, value] : v_.entries())
      for (std::size_t t = 0; t < key.support.size(); ++t)
        if (key.contribution[t] > weights_[key.support[t]])
          throw DataError("entry contribution exceeds agent weight");
    if (graph_) {
      if (graph_->n() != n()) throw DataError("graph size differs from n");
      v_ = myerson_restrict(v_, *graph_);
    }
  }

  int n() const { return static_cast<int>(weights_.size()); }
  const std::vector<int>& weights() const { return weights_; }
  int weight(Agent i) const { return weights_[i]; }
  int max_weight() const {
    return weights_.empty() ? 0
                            : *std::max_element(weights_.begin(), weights_.end());
  }
  const CharacteristicFunction& v() const { return v_; }
  const std::optional<InteractionGraph>& graph() const { return graph_; }

  Coalition endowment() const { return Coalition(weights_); }
  // W^S.
  Coalition endowment_of(const AgentSet& s) const {
    return endowment().restricted_to(s);
  }

  bool is_valid_coalition(const Coalition& c) const {
    if (c.n() != n()) return false;
    for (int i = 0; i < n(); ++i)
      if (c[i] < 0 || c[i] > weights_[i]) return false;
    return true;
  }

  Rational value(const Coalition& c) const { return v_.eval(c); }

  // The explicit interaction graph, or the graph whose edges are the supports
  // of positive two-agent entries.
  InteractionGraph interaction_graph() const {
    if (graph_) {
      InteractionGraph g(n());
      for (const auto& [a, b] : graph_->edges())
        if (a != b) g.add_edge(a, b);
      return g;
    }
    InteractionGraph g(n());
    for (const auto& [key, value] : v_.entries())
      if (value > 0 && key.support.size() == 2)
        g.ensure_edge(key.support[0], key.support[1]);
    return g;
  }

 private:
  std::vector<int> weights_;
  CharacteristicFunction v_;
  std::optional<InteractionGraph> graph_;
};

// A finite list (multiset) of coalitions.
class CoalitionStructure {
 public:
  CoalitionStructure() = default;
  explicit CoalitionStructure(std::vector<Coalition> cs)
      : coalitions_(std::move(cs)) {}
  CoalitionStructure(std::initializer_list<Coalition> cs) : coalitions_(cs) {}

  int size() const { return static_cast<int>(coalitions_.size()); }
  bool empty() const { return coalitions_.empty(); }
  const Coalition& operator[](int j) const { return coalitions_[j]; }
  const std::vector<Coalition>& coalitions() const { return coalitions_; }
  auto begin() const { return coalitions_.begin(); }
  auto end() const { return coalitions_.end(); }
  void push_back(Coalition c) { coalitions_.push_back(std::move(c)); }

  // w(CS): componentwise sum.
  Coalition weight(int n) const {
    Coalition w(n);
    for (const auto& c : coalitions_) w += c;
    return w;
  }

  Rational value(const Game& g) const {
    Rational total = 0;
    for (const auto& c : coalitions_) total += g.value(c);
    return total;
  }

  bool is_feasible(const Game& g) const {
    for (const auto& c : coalitions_)
      if (!g.is_valid_coalition(c)) return false;
    return fits_within(weight(g.n()), g.endowment());
  }

  // Canonical multiset form: coalitions sorted lexicographically.
  CoalitionStructure canonical() const {
    auto v = coalitions_;
    std::sort(v.begin(), v.end());
    return CoalitionStructure(std::move(v));
  }

  friend bool operator==(const CoalitionStructure&,
                         const CoalitionStructure&) = default;

 private:
  std::vector<Coalition> coalitions_;
};

// CS|_S: the coalitions whose support lies inside S, order preserved.
inline CoalitionStructure reduce_structure(const CoalitionStructure& cs,
                                           const AgentSet& s) {
  CoalitionStructure out;
  for (const auto& c : cs)
    if (c.support().is_subset_of(s)) out.push_back(c);
  return out;
}

// Per-coalition payoff vectors, parallel to a CoalitionStructure.
class Imputation {
 public:
  Imputation() = default;
  explicit Imputation(std::vector<std::vector<Rational>> payoffs)
      : payoffs_(std::move(payoffs)) {}

  static Imputation zeros(int coalitions, int n) {
    return Imputation(std::vector<std::vector<Rational>>(
        coalitions, std::vector<Rational>(n, Rational(0))));
  }

  int size() const { return static_cast<int>(payoffs_.size()); }
  const std::vector<Rational>& operator[](int j) const { return payoffs_[j]; }
  std::vector<Rational>& operator[](int j) { return payoffs_[j]; }
  const std::vector<std::vector<Rational>>& payoffs() const { return payoffs_; }

  friend bool operator==(const Imputation&, const Imputation&) = default;

 private:
  std::vector<std::vector<Rational>> payoffs_;
};

struct Outcome {
  CoalitionStructure structure;
  Imputation imputation;
};

// The game's interaction graph plus an edge for every two-agent support in
// cs. Structure-aware solvers decompose this graph.
inline InteractionGraph working_graph(const Game& g,
                                      const CoalitionStructure& cs) {
  InteractionGraph w = g.interaction_graph();
  for (const auto& c : cs) {
    AgentSet s = c.support();
    if (s.size() == 2) w.ensure_edge(s.members()[0], s.members()[1]);
  }
  return w;
}

// p_i(CS, x).
inline Rational payoff_to_agent(const Outcome& o, Agent i) {
  Rational p = 0;
  for (int j = 0; j < o.imputation.size(); ++j) p += o.imputation[j].at(i);
  return p;
}

// p_S(CS, x).
inline Rational payoff_to_set(const Outcome& o, const AgentSet& s) {
  Rational p = 0;
  for (Agent i : s) p += payoff_to_agent(o, i);
  return p;
}

// x^S(c) for one coalition of the outcome.
inline Rational share_of(const std::vector<Rational>& xc, const AgentSet& s) {
  Rational p = 0;
  for (Agent i : s) p += xc.at(i);
  return p;
}

}  // namespace ocf

#endif  // OCF_CORE_HPP
