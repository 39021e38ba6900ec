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

#ifndef OCF_COVER_HPP
#define OCF_COVER_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "ocf/core.hpp"
#include "ocf/detail/mixed_radix.hpp"

namespace ocf {

inline constexpr std::size_t kDefaultTableLimit = std::size_t{1} << 24;

// Table of the superadditive cover over a fixed list of agents:
//   f(t) = max value of a multiset of items with total weight <= t.
// Only positive items matter since values are non-negative, so f is exact
// for v* when every positive entry inside the agent list is supplied.
class CoverTable {
 public:
  CoverTable() = default;

  // items: full n-dimensional coalitions, each supported inside `agents`.
  CoverTable(int n, std::vector<Agent> agents, std::vector<int> cap,
             const std::vector<std::pair<Coalition, Rational>>& items,
             std::size_t limit = kDefaultTableLimit)
      : n_(n), agents_(std::move(agents)) {
    if (cap.size() != agents_.size())
      throw ContractError("cover capacity length differs from agent list");
    std::vector<int> radix(cap.size());
    for (std::size_t k = 0; k < cap.size(); ++k) {
      if (cap[k] < 0) throw ContractError("negative cover capacity");
      radix[k] = cap[k] + 1;
    }
    index_ = detail::MixedRadix(std::move(radix), limit);

    for (const auto& [c, value] : items) {
      if (value <= 0) continue;
      Item item;
      item.amount.resize(agents_.size());
      bool fits = true;
      int placed = 0;
      for (std::size_t k = 0; k < agents_.size(); ++k) {
        int a = c[agents_[k]];
        if (a > cap[k]) fits = false;
        item.amount[k] = a;
        placed += a;
        item.offset += static_cast<std::size_t>(a) * index_.stride(k);
      }
      if (!fits || placed != c.total() || placed == 0) continue;
      item.coalition = c;
      item.value = value;
      items_.push_back(std::move(item));
    }
    fill();
  }

  int n() const { return n_; }
  const std::vector<Agent>& agents() const { return agents_; }
  const detail::MixedRadix& index() const { return index_; }
  std::size_t size() const { return value_.size(); }

  const Rational& at(std::size_t idx) const { return value_[idx]; }
  const Rational& at(const std::vector<int>& t) const {
    return value_[index_.encode(t)];
  }
  // t given as a full n-dimensional coalition.
  const Rational& at(const Coalition& c) const { return at(project(c)); }

  std::vector<int> project(const Coalition& c) const {
    std::vector<int> t(agents_.size());
    for (std::size_t k = 0; k < agents_.size(); ++k) {
      t[k] = c[agents_[k]];
      if (t[k] >= index_.radix(k))
        throw ContractError("cover query exceeds table capacity");
    }
    return t;
  }

  // Items realizing f(t). With `fill_to_exact`, the unused remainder is added
  // as one extra coalition so the total weight equals t.
  CoalitionStructure witness(std::size_t idx, bool fill_to_exact = true) const {
    CoalitionStructure cs;
    std::vector<int> rest = index_.decode(idx);
    while (true) {
      int bp = back_[idx];
      if (bp == kNone) break;
      if (bp < 0) {
        std::size_t k = static_cast<std::size_t>(-bp - 2);
        idx -= index_.stride(k);
        continue;
      }
      const Item& item = items_[static_cast<std::size_t>(bp)];
      cs.push_back(item.coalition);
      for (std::size_t k = 0; k < agents_.size(); ++k)
        rest[k] -= item.amount[k];
      idx -= item.offset;
    }
    if (fill_to_exact) {
      Coalition filler(n_);
      for (std::size_t k = 0; k < agents_.size(); ++k)
        filler[agents_[k]] = rest[k];
      if (!filler.is_zero()) cs.push_back(std::move(filler));
    }
    return cs;
  }
  CoalitionStructure witness(const Coalition& c,
                             bool fill_to_exact = true) const {
    return witness(index_.encode(project(c)), fill_to_exact);
  }

 private:
  static constexpr int kNone = -1;

  struct Item {
    std::vector<int> amount;
    std::size_t offset = 0;
    Coalition coalition;
    Rational value;
  };

  void fill() {
    const std::size_t dims = agents_.size();
    value_.assign(index_.size(), Rational(0));
    back_.assign(index_.size(), kNone);
    std::vector<int> t(dims, 0);
    Rational cand;
    for (std::size_t idx = 0; idx < index_.size(); ++idx) {
      if (idx > 0) {
        for (std::size_t k = 0; k < dims; ++k) {
          if (++t[k] < index_.radix(k)) break;
          t[k] = 0;
        }
      }
      Rational& best = value_[idx];
      int& bp = back_[idx];
      for (std::size_t k = 0; k < dims; ++k) {
        if (t[k] == 0) continue;
        const Rational& prev = value_[idx - index_.stride(k)];
        if (prev > best) {
          best = prev;
          bp = -static_cast<int>(k) - 2;
        }
      }
      for (std::size_t j = 0; j < items_.size(); ++j) {
        const Item& item = items_[j];
        bool fits = true;
        for (std::size_t k = 0; k < dims; ++k)
          if (item.amount[k] > t[k]) {
            fits = false;
            break;
          }
        if (!fits) continue;
        cand = value_[idx - item.offset];
        cand += item.value;
        if (cand > best) {
          best = cand;
          bp = static_cast<int>(j);
        }
      }
    }
  }

  int n_ = 0;
  std::vector<Agent> agents_;
  detail::MixedRadix index_;
  std::vector<Item> items_;
  std::vector<Rational> value_;
  std::vector<int> back_;
};

// Cover table of the game over `agents` with per-agent capacities `cap`,
// using every positive entry supported inside `agents`.
inline CoverTable make_cover_table(const Game& g, const AgentSet& agents,
                                   std::vector<int> cap,
                                   std::size_t limit = kDefaultTableLimit) {
  return CoverTable(g.n(), agents.members(), std::move(cap),
                    g.v().positive_entries_within(agents), limit);
}

// Cover table over `agents` with capacities W_i.
inline CoverTable make_endowment_cover(const Game& g, const AgentSet& agents,
                                       std::size_t limit = kDefaultTableLimit) {
  std::vector<int> cap;
  for (Agent i : agents) cap.push_back(g.weight(i));
  return make_cover_table(g, agents, std::move(cap), limit);
}

// v*_i(w) for w = 0..W_i: the best a single agent does alone.
inline std::vector<Rational> single_agent_cover(const Game& g, Agent i) {
  CoverTable t = make_endowment_cover(g, AgentSet{i});
  std::vector<Rational> out;
  for (std::size_t w = 0; w < t.size(); ++w) out.push_back(t.at(w));
  return out;
}

}  // namespace ocf

#endif  // OCF_COVER_HPP
