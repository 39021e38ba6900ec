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

// JSON forms of games, outcomes, decompositions and bottleneck games.
// Rationals are written as canonical "p/q" strings; integers and strings are
// both accepted on input.

#ifndef OCF_IO_HPP
#define OCF_IO_HPP

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ocf/core.hpp"
#include "ocf/decomposition.hpp"
#include "ocf/errors.hpp"
#include "ocf/lbg.hpp"
#include "ocf/rational.hpp"

namespace ocf {

using Json = nlohmann::json;

namespace detail {

// Runs f, turning JSON access errors into DataError.
template <typename F>
auto json_guard(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw DataError(what + ": " + e.what());
  }
}

inline int json_int(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) throw DataError(what + " must be an integer");
  return j.get<int>();
}

inline std::vector<int> json_ints(const Json& j, const std::string& what) {
  if (!j.is_array()) throw DataError(what + " must be an array");
  std::vector<int> out;
  for (const auto& x : j) out.push_back(json_int(x, what));
  return out;
}

}  // namespace detail

inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw DataError("rational must be a \"p/q\" string or an integer");
}

inline Json rational_to_json(const Rational& r) { return to_string(r); }

inline Json rationals_to_json(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& r : v) a.push_back(rational_to_json(r));
  return a;
}

inline std::vector<Rational> rationals_from_json(const Json& j,
                                                 const std::string& what) {
  if (!j.is_array()) throw DataError(what + " must be an array");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline Json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw DataError(what + " is not valid JSON: " + e.what());
  }
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

inline void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << j.dump(2) << "\n";
}

inline InteractionGraph graph_from_json(const Json& j, int n) {
  InteractionGraph g(n);
  if (!j.is_object() || !j.contains("edges"))
    throw DataError("graph must be an object with \"edges\"");
  for (const auto& e : j.at("edges")) {
    auto ab = detail::json_ints(e, "graph edge");
    if (ab.size() != 2) throw DataError("graph edge must have two ends");
    g.add_edge(ab[0], ab[1]);
  }
  return g;
}

inline Json graph_to_json(const InteractionGraph& g) {
  Json edges = Json::array();
  for (const auto& [a, b] : g.edges()) edges.push_back({a, b});
  return {{"edges", edges}};
}

inline Game game_from_json(const Json& j) {
  return detail::json_guard("game", [&] {
    if (!j.is_object()) throw DataError("game must be a JSON object");
    const int n = detail::json_int(j.at("n"), "n");
    auto weights = detail::json_ints(j.at("weights"), "weights");
    if (static_cast<int>(weights.size()) != n)
      throw DataError("weights must list n entries");
    const int k = detail::json_int(j.at("k"), "k");
    CharacteristicFunction v(n, k);
    for (const auto& e : j.at("coalitions")) {
      auto support = detail::json_ints(e.at("support"), "support");
      auto contribution = detail::json_ints(e.at("contribution"), "contribution");
      v.set(std::move(support), std::move(contribution),
            rational_from_json(e.at("value")));
    }
    if (j.contains("graph") && !j.at("graph").is_null())
      return Game(weights, v, graph_from_json(j.at("graph"), n));
    return Game(weights, v);
  });
}

inline Json game_to_json(const Game& g) {
  Json coalitions = Json::array();
  for (const auto& [key, value] : g.v().entries())
    coalitions.push_back({{"support", key.support},
                          {"contribution", key.contribution},
                          {"value", rational_to_json(value)}});
  Json j = {{"n", g.n()},
            {"weights", g.weights()},
            {"k", g.v().k()},
            {"coalitions", coalitions}};
  if (g.graph()) j["graph"] = graph_to_json(*g.graph());
  return j;
}

// Shapes are checked against n; validity against a game is validate_outcome.
inline Outcome outcome_from_json(const Json& j, int n) {
  return detail::json_guard("outcome", [&] {
    if (!j.is_object()) throw DataError("outcome must be a JSON object");
    Outcome o;
    for (const auto& c : j.at("structure")) {
      auto v = detail::json_ints(c, "structure row");
      if (static_cast<int>(v.size()) != n)
        throw DataError("structure rows must have n entries");
      for (int x : v)
        if (x < 0) throw DataError("negative contribution in structure");
      o.structure.push_back(Coalition(std::move(v)));
    }
    std::vector<std::vector<Rational>> x;
    for (const auto& row : j.at("imputation")) {
      auto r = rationals_from_json(row, "imputation row");
      if (static_cast<int>(r.size()) != n)
        throw DataError("imputation rows must have n entries");
      x.push_back(std::move(r));
    }
    if (static_cast<int>(x.size()) != o.structure.size())
      throw DataError("imputation must have one row per coalition");
    o.imputation = Imputation(std::move(x));
    return o;
  });
}

inline Json structure_to_json(const CoalitionStructure& cs) {
  Json s = Json::array();
  for (const auto& c : cs) s.push_back(c.values());
  return s;
}

inline Json imputation_to_json(const Imputation& x) {
  Json a = Json::array();
  for (const auto& row : x.payoffs()) a.push_back(rationals_to_json(row));
  return a;
}

inline Json outcome_to_json(const Outcome& o) {
  return {{"structure", structure_to_json(o.structure)},
          {"imputation", imputation_to_json(o.imputation)}};
}

inline TreeDecomposition decomposition_from_json(const Json& j) {
  return detail::json_guard("decomposition", [&] {
    if (!j.is_object()) throw DataError("decomposition must be a JSON object");
    TreeDecomposition t;
    for (const auto& b : j.at("bags")) {
      auto bag = detail::json_ints(b, "bag");
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
      t.bags.push_back(std::move(bag));
    }
    for (const auto& e : j.at("edges")) {
      auto ab = detail::json_ints(e, "decomposition edge");
      if (ab.size() != 2) throw DataError("decomposition edge must have two ends");
      t.edges.emplace_back(ab[0], ab[1]);
    }
    t.root = j.contains("root") ? detail::json_int(j.at("root"), "root") : 0;
    return t;
  });
}

inline Json decomposition_to_json(const TreeDecomposition& t) {
  Json edges = Json::array();
  for (const auto& [a, b] : t.edges) edges.push_back({a, b});
  return {{"bags", t.bags}, {"edges", edges}, {"root", t.root}};
}

inline LbgInstance lbg_from_json(const Json& j) {
  return detail::json_guard("bottleneck game", [&] {
    if (!j.is_object()) throw DataError("bottleneck game must be a JSON object");
    const int n = detail::json_int(j.at("n"), "n");
    auto weights = rationals_from_json(j.at("weights"), "weights");
    if (static_cast<int>(weights.size()) != n)
      throw DataError("weights must list n entries");
    std::vector<LbgTask> tasks;
    for (const auto& t : j.at("tasks"))
      tasks.push_back({AgentSet(detail::json_ints(t.at("agents"), "task agents")),
                       rational_from_json(t.at("pi"))});
    return LbgInstance(std::move(weights), std::move(tasks));
  });
}

inline Json lbg_to_json(const LbgInstance& inst) {
  Json tasks = Json::array();
  for (const auto& t : inst.tasks())
    tasks.push_back({{"agents", t.agents.members()}, {"pi", rational_to_json(t.pi)}});
  return {{"n", inst.n()},
          {"weights", rationals_to_json(inst.weights())},
          {"tasks", tasks}};
}

inline Json lbg_outcome_to_json(const LbgOutcome& o) {
  Json payoff = Json::array();
  for (const auto& row : o.payoff) payoff.push_back(rationals_to_json(row));
  return {{"levels", rationals_to_json(o.level)}, {"payoff", payoff}};
}

inline LbgOutcome lbg_outcome_from_json(const Json& j, const LbgInstance& inst) {
  return detail::json_guard("bottleneck outcome", [&] {
    LbgOutcome o;
    o.level = rationals_from_json(j.at("levels"), "levels");
    for (const auto& row : j.at("payoff"))
      o.payoff.push_back(rationals_from_json(row, "payoff row"));
    if (static_cast<int>(o.level.size()) != inst.m() ||
        static_cast<int>(o.payoff.size()) != inst.m())
      throw DataError("bottleneck outcome must list every task");
    for (const auto& row : o.payoff)
      if (static_cast<int>(row.size()) != inst.n())
        throw DataError("payoff rows must have n entries");
    return o;
  });
}

}  // namespace ocf

#endif  // OCF_IO_HPP
