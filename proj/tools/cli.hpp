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

// The ocf command line. Exit codes: 0 yes, 1 no, 2 usage or data error,
// 3 resource budget exceeded.

#ifndef OCF_TOOLS_CLI_HPP
#define OCF_TOOLS_CLI_HPP

#include <chrono>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ocf/ocf.hpp"

namespace ocf::cli {

inline constexpr const char* kVersion = "ocf 1.0.0";

enum Exit { kYes = 0, kNo = 1, kError = 2, kBudget = 3 };

struct Options {
  std::string format = "human";
  bool timing = false;
  std::string game, outcome, decomp, lbg, input, out, outcome_out;
  std::string coalition, set, arb = "conservative", threshold;
  std::string ir_mode = "full-endowment", scope = "all", grid = "1";
  bool all = false, auto_decomp = false, solve = false;
  int budget_agents = 6, budget_weight = 4;
  long long budget_structures = 10'000'000;
  int max_paths = 10000;
};

// Collects a result as JSON and as human-readable lines.
class Report {
 public:
  Report(std::string command, bool machine)
      : machine_(machine) {
    doc_["version"] = kVersion;
    doc_["command"] = std::move(command);
  }
  Json& doc() { return doc_; }
  void line(const std::string& s) { lines_.push_back(s); }
  void emit(std::ostream& out) const {
    if (machine_) {
      out << doc_.dump(2) << "\n";
    } else {
      for (const auto& l : lines_) out << l << "\n";
    }
  }

 private:
  bool machine_;
  Json doc_;
  std::vector<std::string> lines_;
};

namespace detail {

inline std::vector<int> parse_int_list(const std::string& text,
                                       const std::string& what) {
  std::vector<int> out;
  if (text.empty()) return out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(item, &used);
    } catch (const std::exception&) {
      throw DataError("malformed " + what + " '" + text + "'");
    }
    if (used != item.size()) throw DataError("malformed " + what + " '" + text + "'");
    out.push_back(v);
  }
  return out;
}

inline AgentSet parse_set(const std::string& text, int n) {
  auto v = parse_int_list(text, "agent set");
  for (int a : v)
    if (a < 0 || a >= n) throw DataError("agent " + std::to_string(a) + " out of range");
  if (v.empty()) throw DataError("--set needs at least one agent");
  return AgentSet(v);
}

inline FullArbitration parse_arb(const std::string& name) {
  if (name == "conservative") return LocalArbitration::conservative();
  if (name == "refined") return LocalArbitration::refined();
  if (name == "optimistic") return LocalArbitration::optimistic(false);
  if (name == "optimistic-clamped") return LocalArbitration::optimistic(true);
  if (name == "sensitive") return SensitiveArbitration{};
  throw DataError("unknown arbitration rule '" + name + "'");
}

inline LocalArbitration parse_local_arb(const std::string& name) {
  FullArbitration a = parse_arb(name);
  if (const auto* l = std::get_if<LocalArbitration>(&a)) return *l;
  throw UnsupportedError("the " + name +
                         " rule is not local; use the oracle solvers");
}

inline IrMode parse_ir_mode(const std::string& s) {
  if (s == "full-endowment") return IrMode::full_endowment;
  if (s == "unit") return IrMode::unit;
  throw DataError("unknown IR mode '" + s + "'");
}

inline Json agents_json(const AgentSet& s) { return s.members(); }

inline Json deviation_json(const Deviation& dev) {
  Json a = Json::array();
  for (const auto& [j, d] : dev)
    a.push_back({{"coalition", j}, {"withdrawal", d.values()}});
  return a;
}

inline std::string structure_text(const CoalitionStructure& cs) {
  std::string s = "[";
  for (int j = 0; j < cs.size(); ++j) s += (j ? " " : "") + cs[j].to_string();
  return s + "]";
}

}  // namespace detail

class Runner {
 public:
  Runner(Options& o, std::ostream& out) : o_(o), out_(out) {}

  int dispatch(const std::string& cmd) {
    start_ = std::chrono::steady_clock::now();
    static const std::map<std::string, int (Runner::*)()> table = {
        {"oracle optval", &Runner::oracle_optval},
        {"oracle arbval", &Runner::oracle_arbval},
        {"oracle checkcore", &Runner::oracle_checkcore},
        {"oracle is-stable", &Runner::oracle_is_stable},
        {"tree optval", &Runner::tree_optval},
        {"tree arbval", &Runner::tree_arbval},
        {"tree checkcore", &Runner::tree_checkcore},
        {"tree is-stable", &Runner::tree_is_stable},
        {"tw optval", &Runner::tw_optval},
        {"tw arbval", &Runner::tw_arbval},
        {"tw checkcore", &Runner::tw_checkcore},
        {"lbg solve", &Runner::lbg_solve},
        {"lbg core", &Runner::lbg_core},
        {"lbg verify", &Runner::lbg_verify},
        {"lbg gen-flow", &Runner::lbg_gen_flow},
        {"lbg gen-market", &Runner::lbg_gen_market},
        {"lbg gen-routing", &Runner::lbg_gen_routing},
        {"gen x3c", &Runner::gen_x3c},
        {"gen indep-set", &Runner::gen_indep_set},
        {"gen set-cover", &Runner::gen_set_cover},
        {"validate", &Runner::validate},
    };
    auto it = table.find(cmd);
    if (it == table.end()) throw DataError("unknown command '" + cmd + "'");
    report_.emplace(cmd, o_.format == "machine");
    int code = (this->*(it->second))();
    if (o_.timing) {
      const double secs = std::chrono::duration<double>(
                              std::chrono::steady_clock::now() - start_)
                              .count();
      report_->doc()["timing"] = {{"seconds", secs}};
      std::ostringstream s;
      s << "time: " << std::fixed << std::setprecision(3) << secs << " s";
      report_->line(s.str());
    }
    report_->emit(out_);
    return code;
  }

 private:
  Report& rep() { return *report_; }

  Game load_game() {
    if (o_.game.empty()) throw DataError("--game is required");
    return game_from_json(read_json_file(o_.game));
  }
  Outcome load_outcome(const Game& g) {
    if (o_.outcome.empty()) throw DataError("--outcome is required");
    return outcome_from_json(read_json_file(o_.outcome), g.n());
  }
  CoalitionStructure load_structure(const Game& g) {
    if (o_.outcome.empty()) throw DataError("--outcome is required");
    Json j = read_json_file(o_.outcome);
    if (!j.contains("imputation")) {
      Json k = j;
      k["imputation"] = Json::array();
      for (std::size_t r = 0; r < j.at("structure").size(); ++r)
        k["imputation"].push_back(std::vector<int>(g.n(), 0));
      return outcome_from_json(k, g.n()).structure;
    }
    return outcome_from_json(j, g.n()).structure;
  }
  EnumerationBudget budget() const {
    EnumerationBudget b;
    b.max_agents = o_.budget_agents;
    b.max_weight = o_.budget_weight;
    b.max_structures = o_.budget_structures;
    return b;
  }
  Coalition target(const Game& g) const {
    if (o_.coalition.empty() || o_.all) return g.endowment();
    auto v = detail::parse_int_list(o_.coalition, "coalition");
    if (static_cast<int>(v.size()) != g.n())
      throw DataError("--coalition needs n entries");
    Coalition c(v);
    if (!g.is_valid_coalition(c))
      throw DataError("coalition " + c.to_string() + " exceeds the weights");
    return c;
  }
  TreeDecomposition decomposition(const InteractionGraph& gr) const {
    if (!o_.decomp.empty() && o_.auto_decomp)
      throw DataError("--decomp and --auto are exclusive");
    if (!o_.decomp.empty()) return decomposition_from_json(read_json_file(o_.decomp));
    return heuristic_decomposition(gr);
  }

  // Threshold decision for value-type commands.
  int decide_value(const Rational& value) {
    rep().doc()["value"] = to_string(value);
    rep().line("value: " + to_string(value));
    if (o_.threshold.empty()) return kYes;
    Rational t = parse_rational(o_.threshold);
    const bool yes = value >= t;
    rep().doc()["threshold"] = to_string(t);
    rep().doc()["decision"] = yes ? "yes" : "no";
    rep().line(std::string("decision: ") + (yes ? "yes" : "no") + " (threshold " +
               to_string(t) + ")");
    return yes ? kYes : kNo;
  }

  void write_witness_structure(const CoalitionStructure& cs) {
    rep().doc()["witness"] = structure_to_json(cs);
    rep().line("witness: " + detail::structure_text(cs));
    if (!o_.out.empty()) write_json_file(o_.out, {{"structure", structure_to_json(cs)}});
  }

  int report_optval(const Rational& value, const CoalitionStructure& w) {
    write_witness_structure(w);
    return decide_value(value);
  }

  int report_arbval(const AgentSet& s, const ArbValResult& r) {
    rep().doc()["set"] = detail::agents_json(s);
    rep().doc()["deviation"] = detail::deviation_json(r.deviation);
    rep().doc()["post"] = structure_to_json(r.post);
    rep().line("set: " + s.to_string());
    rep().line("post-deviation structure: " + detail::structure_text(r.post));
    return decide_value(r.value);
  }

  int report_core(const std::optional<Excess>& e, const Rational* max_excess) {
    const bool in = !e.has_value();
    rep().doc()["in_core"] = in;
    if (max_excess) rep().doc()["max_excess"] = to_string(*max_excess);
    if (in) {
      rep().line("in core");
    } else {
      rep().doc()["set"] = detail::agents_json(e->set);
      rep().doc()["excess"] = to_string(e->excess);
      rep().line("not in core: set " + e->set.to_string() + " has excess " +
                 to_string(e->excess));
    }
    return in ? kYes : kNo;
  }

  int report_stable(const Game& g, const CoalitionStructure& cs,
                    const std::optional<Imputation>& x) {
    rep().doc()["stable"] = x.has_value();
    if (!x) {
      rep().line("not stable: no imputation puts this structure in the core");
      return kNo;
    }
    Outcome o{cs, *x};
    rep().doc()["outcome"] = outcome_to_json(o);
    rep().line("stable");
    for (Agent i = 0; i < g.n(); ++i)
      rep().line("  agent " + std::to_string(i) + " payoff " +
                 to_string(payoff_to_agent(o, i)));
    if (!o_.out.empty()) write_json_file(o_.out, outcome_to_json(o));
    return kYes;
  }

  int oracle_optval() {
    Game g = load_game();
    auto r = superadditive_cover(g, target(g), budget());
    return report_optval(r.value, r.witness);
  }
  int oracle_arbval() {
    Game g = load_game();
    Outcome o = load_outcome(g);
    AgentSet s = detail::parse_set(o_.set, g.n());
    FullArbitration arb = detail::parse_arb(o_.arb);
    rep().doc()["arbitration"] = arbitration_name(arb);
    return report_arbval(s, brute_arbval(g, arb, o, s, budget()));
  }
  int oracle_checkcore() {
    Game g = load_game();
    Outcome o = load_outcome(g);
    FullArbitration arb = detail::parse_arb(o_.arb);
    rep().doc()["arbitration"] = arbitration_name(arb);
    SetScope scope;
    if (o_.scope == "all")
      scope = SetScope::all;
    else if (o_.scope == "connected")
      scope = SetScope::connected;
    else
      throw DataError("unknown scope '" + o_.scope + "'");
    Excess e = brute_max_excess(g, arb, o, scope, budget());
    std::optional<Excess> v;
    if (e.excess > 0) v = e;
    return report_core(v, &e.excess);
  }
  int oracle_is_stable() {
    Game g = load_game();
    CoalitionStructure cs = load_structure(g);
    FullArbitration arb = detail::parse_arb(o_.arb);
    rep().doc()["arbitration"] = arbitration_name(arb);
    return report_stable(g, cs,
                         brute_is_stable(g, arb, cs, budget(),
                                         detail::parse_ir_mode(o_.ir_mode)));
  }

  int tree_optval() {
    Game g = load_game();
    auto r = optval_tree(g, target(g));
    return report_optval(r.value, r.witness);
  }
  int tree_arbval() {
    Game g = load_game();
    Outcome o = load_outcome(g);
    AgentSet s = detail::parse_set(o_.set, g.n());
    LocalArbitration arb = detail::parse_local_arb(o_.arb);
    rep().doc()["arbitration"] = arb.name();
    return report_arbval(s, arbval_tree(g, arb, o, s));
  }
  int tree_checkcore() {
    Game g = load_game();
    Outcome o = load_outcome(g);
    LocalArbitration arb = detail::parse_local_arb(o_.arb);
    rep().doc()["arbitration"] = arb.name();
    CoreCheck c = tree_max_excess(g, arb, o);
    std::optional<Excess> e;
    if (!c.in_core()) e = Excess{c.set, c.max_excess};
    return report_core(e, &c.max_excess);
  }
  int tree_is_stable() {
    Game g = load_game();
    CoalitionStructure cs = load_structure(g);
    LocalArbitration arb = detail::parse_local_arb(o_.arb);
    rep().doc()["arbitration"] = arb.name();
    auto r = is_stable_tree_detailed(g, arb, cs, detail::parse_ir_mode(o_.ir_mode));
    rep().doc()["rounds"] = r.rounds;
    rep().doc()["cuts"] = r.cuts;
    return report_stable(g, cs, r.imputation);
  }

  int tw_optval() {
    Game g = load_game();
    TreeDecomposition t = decomposition(g.interaction_graph());
    rep().doc()["width"] = t.width();
    auto r = optval_tw(g, t, target(g));
    return report_optval(r.value, r.witness);
  }
  int tw_arbval() {
    Game g = load_game();
    Outcome o = load_outcome(g);
    AgentSet s = detail::parse_set(o_.set, g.n());
    LocalArbitration arb = detail::parse_local_arb(o_.arb);
    rep().doc()["arbitration"] = arb.name();
    TreeDecomposition t =
        decomposition(induced_subgraph(g.interaction_graph(), s));
    return report_arbval(s, arbval_tw(g, arb, o, s, t));
  }
  int tw_checkcore() {
    Game g = load_game();
    Outcome o = load_outcome(g);
    LocalArbitration arb = detail::parse_local_arb(o_.arb);
    rep().doc()["arbitration"] = arb.name();
    TreeDecomposition t = decomposition(working_graph(g, o.structure));
    rep().doc()["width"] = t.width();
    CoreCheck c = tw_max_excess(g, arb, o, t);
    std::optional<Excess> e;
    if (!c.in_core()) e = Excess{c.set, c.max_excess};
    return report_core(e, &c.max_excess);
  }

  LbgInstance load_lbg() {
    if (o_.lbg.empty()) throw DataError("--lbg is required");
    return lbg_from_json(read_json_file(o_.lbg));
  }
  Json load_input() {
    if (o_.input.empty()) throw DataError("--input is required");
    return read_json_file(o_.input);
  }
  int emit_lbg(const LbgInstance& inst) {
    rep().doc()["instance"] = lbg_to_json(inst);
    rep().line("agents: " + std::to_string(inst.n()) +
               ", tasks: " + std::to_string(inst.m()));
    for (int j = 0; j < inst.m(); ++j)
      rep().line("  task " + std::to_string(j) + " " +
                 inst.task(j).agents.to_string() + " pi " +
                 to_string(inst.task(j).pi));
    if (!o_.out.empty()) write_json_file(o_.out, lbg_to_json(inst));
    return o_.solve ? decide_value(lbg_optimal(inst).value) : kYes;
  }

  int lbg_solve() {
    LbgInstance inst = load_lbg();
    LbgSolution s = lbg_optimal(inst);
    rep().doc()["allocation"] = rationals_to_json(s.allocation);
    rep().doc()["duals"] = rationals_to_json(s.duals);
    std::string a, d;
    for (const auto& x : s.allocation) a += " " + to_string(x);
    for (const auto& x : s.duals) d += " " + to_string(x);
    rep().line("allocation:" + a);
    rep().line("duals:" + d);
    return decide_value(s.value);
  }
  int lbg_core() {
    LbgInstance inst = load_lbg();
    LbgOutcome out = lbg_core_outcome(inst);
    rep().doc()["outcome"] = lbg_outcome_to_json(out);
    std::vector<Rational> pay;
    for (Agent i = 0; i < inst.n(); ++i) pay.push_back(out.payoff_to(i));
    rep().doc()["payoffs"] = rationals_to_json(pay);
    std::string p;
    for (const auto& x : pay) p += " " + to_string(x);
    rep().line("payoffs:" + p);
    if (!o_.out.empty()) write_json_file(o_.out, lbg_outcome_to_json(out));
    return kYes;
  }
  int lbg_verify() {
    LbgInstance inst = load_lbg();
    LbgOutcome out = o_.outcome.empty()
                         ? lbg_core_outcome(inst)
                         : lbg_outcome_from_json(read_json_file(o_.outcome), inst);
    auto errors = lbg_validate(inst, out);
    rep().doc()["outcome_errors"] = errors;
    for (const auto& e : errors) rep().line("outcome error: " + e);
    Rational grid = parse_rational(o_.grid);
    auto r = lbg_verify_core(inst, out, grid);
    rep().doc()["deviations"] = r.deviations;
    rep().doc()["in_core"] = !r.witness;
    if (!r.witness) {
      rep().line("in optimistic core (" + std::to_string(r.deviations) +
                 " deviations checked at grid " + to_string(grid) + ")");
      return kYes;
    }
    const auto& w = *r.witness;
    rep().doc()["set"] = detail::agents_json(w.set);
    rep().doc()["abandon"] = w.abandon;
    rep().doc()["z"] = rationals_to_json(w.z);
    rep().doc()["total"] = to_string(w.value.total);
    rep().doc()["payoff"] = to_string(w.payoff);
    rep().line("violation: set " + w.set.to_string() + " gets " +
               to_string(w.value.total) + " > " + to_string(w.payoff));
    return kNo;
  }
  int lbg_gen_flow() {
    Json j = load_input();
    auto inst = ocf::detail::json_guard("flow input", [&] {
      std::vector<FlowEdge> edges;
      for (const auto& e : j.at("edges"))
        edges.push_back({e.at("from").get<int>(), e.at("to").get<int>(),
                         rational_from_json(e.at("capacity"))});
      std::vector<FlowSupplier> sup;
      for (const auto& s : j.at("suppliers"))
        sup.push_back({s.at("source").get<int>(), s.at("sink").get<int>(),
                       rational_from_json(s.at("weight")),
                       rational_from_json(s.at("price"))});
      return gen_multicommodity_flow(j.at("nodes").get<int>(), edges, sup,
                                     static_cast<std::size_t>(o_.max_paths));
    });
    return emit_lbg(inst);
  }
  int lbg_gen_market() {
    Json j = load_input();
    auto inst = ocf::detail::json_guard("market input", [&] {
      std::vector<MarketEdge> edges;
      for (const auto& e : j.at("edges"))
        edges.push_back({e.at("u").get<int>(), e.at("v").get<int>(),
                         rational_from_json(e.at("price"))});
      return gen_bipartite_market(rationals_from_json(j.at("a_weights"), "a_weights"),
                                  rationals_from_json(j.at("b_weights"), "b_weights"),
                                  edges);
    });
    return emit_lbg(inst);
  }
  int lbg_gen_routing() {
    Json j = load_input();
    auto inst = ocf::detail::json_guard("routing input", [&] {
      std::vector<std::pair<int, int>> arcs;
      for (const auto& a : j.at("arcs"))
        arcs.emplace_back(a.at(0).get<int>(), a.at(1).get<int>());
      std::vector<RoutingDemand> dem;
      for (const auto& d : j.at("demands"))
        dem.push_back({d.at("source").get<int>(), d.at("sink").get<int>(),
                       rational_from_json(d.at("price"))});
      return gen_routing(j.at("nodes").get<int>(), arcs,
                         rationals_from_json(j.at("capacities"), "capacities"),
                         dem, static_cast<std::size_t>(o_.max_paths));
    });
    return emit_lbg(inst);
  }

  int emit_gadget(const GadgetGame& gg) {
    rep().doc()["game"] = game_to_json(gg.game);
    rep().doc()["threshold"] = to_string(gg.threshold);
    rep().line("agents: " + std::to_string(gg.game.n()) + ", threshold " +
               to_string(gg.threshold));
    if (!o_.out.empty()) write_json_file(o_.out, game_to_json(gg.game));
    if (!o_.solve) return kYes;
    auto r = superadditive_cover(gg.game, gg.game.endowment(), budget());
    o_.threshold = to_string(gg.threshold);
    rep().doc().erase("threshold");
    return decide_value(r.value);
  }
  int gen_x3c() {
    Json j = load_input();
    X3cInstance x = ocf::detail::json_guard("x3c input", [&] {
      X3cInstance x;
      x.elements = j.at("elements").get<int>();
      for (const auto& s : j.at("subsets")) {
        auto v = s.get<std::vector<int>>();
        if (v.size() != 3) throw DataError("X3C subsets need three elements");
        x.subsets.push_back({v[0], v[1], v[2]});
      }
      return x;
    });
    return emit_gadget(x3c_gadget(x));
  }
  int gen_indep_set() {
    Json j = load_input();
    return emit_gadget(ocf::detail::json_guard("independent set input", [&] {
      const int n = j.at("n").get<int>();
      InteractionGraph g(n);
      for (const auto& e : j.at("edges")) g.add_edge(e.at(0).get<int>(), e.at(1).get<int>());
      Rational eps = j.contains("eps") ? rational_from_json(j.at("eps")) : Rational(1, 10);
      return independent_set_gadget(g, j.at("m").get<int>(), eps);
    }));
  }
  int gen_set_cover() {
    Json j = load_input();
    SetCoverGadget sc = ocf::detail::json_guard("set cover input", [&] {
      std::vector<std::vector<int>> sets;
      for (const auto& s : j.at("sets")) sets.push_back(s.get<std::vector<int>>());
      return set_cover_arbitration_gadget(j.at("elements").get<int>(), sets,
                                          j.at("l").get<int>());
    });
    rep().doc()["game"] = game_to_json(sc.game);
    rep().doc()["outcome"] = outcome_to_json(sc.outcome);
    if (!o_.out.empty()) write_json_file(o_.out, game_to_json(sc.game));
    if (!o_.outcome_out.empty())
      write_json_file(o_.outcome_out, outcome_to_json(sc.outcome));
    EnumerationBudget b = budget();
    b.max_weight = std::max(b.max_weight, sc.game.max_weight());
    auto r = brute_arbval(sc.game, sc.arbitration, sc.outcome, sc.deviator, b);
    o_.threshold = to_string(sc.threshold);
    rep().doc()["deviation"] = detail::deviation_json(r.deviation);
    return decide_value(r.value);
  }

  int validate() {
    Game g = load_game();
    if (o_.outcome.empty()) {
      rep().doc()["valid"] = true;
      rep().line("game is valid");
      return kYes;
    }
    Json j = read_json_file(o_.outcome);
    if (!j.contains("imputation")) {
      CoalitionStructure cs = load_structure(g);
      const bool ok = cs.is_feasible(g);
      rep().doc()["valid"] = ok;
      rep().doc()["value"] = to_string(cs.value(g));
      rep().line(ok ? "structure is feasible, value " + to_string(cs.value(g))
                    : "structure overuses some agent's weight");
      return ok ? kYes : kNo;
    }
    Outcome o = outcome_from_json(j, g.n());
    auto v = validate_outcome(o, g, detail::parse_ir_mode(o_.ir_mode));
    rep().doc()["valid"] = v.empty();
    Json list = Json::array();
    for (const auto& x : v) {
      list.push_back({{"kind", kind_name(x.kind)},
                      {"coalition", x.coalition},
                      {"agent", x.agent},
                      {"detail", x.detail}});
      rep().line(std::string(kind_name(x.kind)) + ": " + x.detail);
    }
    rep().doc()["violations"] = list;
    if (v.empty()) rep().line("outcome is valid");
    return v.empty() ? kYes : kNo;
  }

  Options& o_;
  std::ostream& out_;
  std::optional<Report> report_;
  std::chrono::steady_clock::time_point start_;
};

inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  Options o;
  CLI::App app{"Solvers for overlapping coalition formation games", "ocf"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  std::vector<std::pair<CLI::App*, std::string>> leaves;
  auto common = [&](CLI::App* c, const std::string& path) {
    c->add_option("--format", o.format, "human or machine")
        ->check(CLI::IsMember({"human", "machine"}));
    c->add_flag("--timing", o.timing, "report wall-clock time");
    leaves.emplace_back(c, path);
  };
  auto game_opt = [&](CLI::App* c) {
    c->add_option("--game", o.game, "game file")->required();
  };
  auto outcome_opt = [&](CLI::App* c, bool required) {
    auto* opt = c->add_option("--outcome", o.outcome, "outcome file");
    if (required) opt->required();
  };
  auto value_opts = [&](CLI::App* c) {
    c->add_option("--threshold", o.threshold, "decide value >= p/q");
  };
  auto arb_opt = [&](CLI::App* c) {
    c->add_option("--arb", o.arb,
                  "conservative|refined|optimistic|optimistic-clamped|sensitive");
  };
  auto budget_opts = [&](CLI::App* c) {
    c->add_option("--budget-agents", o.budget_agents, "oracle agent cap");
    c->add_option("--budget-weight", o.budget_weight, "oracle per-agent weight cap");
    c->add_option("--budget-structures", o.budget_structures,
                  "oracle enumeration cap");
  };
  auto optval_opts = [&](CLI::App* c) {
    game_opt(c);
    value_opts(c);
    auto* all = c->add_flag("--all", o.all, "use the full endowment W (default)");
    c->add_option("--coalition", o.coalition, "comma-separated contributions")
        ->excludes(all);
    c->add_option("--out", o.out, "write the witness structure");
  };
  auto arbval_opts = [&](CLI::App* c) {
    game_opt(c);
    outcome_opt(c, true);
    value_opts(c);
    arb_opt(c);
    c->add_option("--set", o.set, "comma-separated deviating agents")->required();
  };
  auto core_opts = [&](CLI::App* c) {
    game_opt(c);
    outcome_opt(c, true);
    arb_opt(c);
  };
  auto stable_opts = [&](CLI::App* c) {
    game_opt(c);
    outcome_opt(c, true);
    arb_opt(c);
    c->add_option("--ir-mode", o.ir_mode, "full-endowment|unit");
    c->add_option("--out", o.out, "write the stable outcome");
  };
  auto decomp_opts = [&](CLI::App* c) {
    c->add_option("--decomp", o.decomp, "tree decomposition file");
    c->add_flag("--auto", o.auto_decomp, "min-fill decomposition (default)");
  };

  auto* oracle = app.add_subcommand("oracle", "brute-force reference solvers");
  oracle->require_subcommand(1);
  {
    auto* c = oracle->add_subcommand("optval", "best structure value");
    optval_opts(c); budget_opts(c); common(c, "oracle optval");
    c = oracle->add_subcommand("arbval", "best deviation value");
    arbval_opts(c); budget_opts(c); common(c, "oracle arbval");
    c = oracle->add_subcommand("checkcore", "core membership");
    core_opts(c); budget_opts(c); common(c, "oracle checkcore");
    c->add_option("--scope", o.scope, "all|connected");
    c = oracle->add_subcommand("is-stable", "stabilizing imputation");
    stable_opts(c); budget_opts(c); common(c, "oracle is-stable");
  }
  auto* tree = app.add_subcommand("tree", "solvers for forest interaction graphs");
  tree->require_subcommand(1);
  {
    auto* c = tree->add_subcommand("optval", "best structure value");
    optval_opts(c); common(c, "tree optval");
    c = tree->add_subcommand("arbval", "best deviation value");
    arbval_opts(c); common(c, "tree arbval");
    c = tree->add_subcommand("checkcore", "core membership");
    core_opts(c); common(c, "tree checkcore");
    c = tree->add_subcommand("is-stable", "stabilizing imputation");
    stable_opts(c); common(c, "tree is-stable");
  }
  auto* tw = app.add_subcommand("tw", "solvers over a tree decomposition");
  tw->require_subcommand(1);
  {
    auto* c = tw->add_subcommand("optval", "best structure value");
    optval_opts(c); decomp_opts(c); common(c, "tw optval");
    c = tw->add_subcommand("arbval", "best deviation value");
    arbval_opts(c); decomp_opts(c); common(c, "tw arbval");
    c = tw->add_subcommand("checkcore", "core membership");
    core_opts(c); decomp_opts(c); common(c, "tw checkcore");
  }
  auto* lbg = app.add_subcommand("lbg", "linear bottleneck games");
  lbg->require_subcommand(1);
  {
    auto* c = lbg->add_subcommand("solve", "optimal allocation and duals");
    c->add_option("--lbg", o.lbg, "bottleneck game file")->required();
    value_opts(c); common(c, "lbg solve");
    c = lbg->add_subcommand("core", "dual-priced core outcome");
    c->add_option("--lbg", o.lbg, "bottleneck game file")->required();
    c->add_option("--out", o.out, "write the outcome");
    common(c, "lbg core");
    c = lbg->add_subcommand("verify", "search for optimistic deviations");
    c->add_option("--lbg", o.lbg, "bottleneck game file")->required();
    c->add_option("--outcome", o.outcome, "outcome (default: dual-priced)");
    c->add_option("--grid", o.grid, "withdrawal granularity p/q");
    common(c, "lbg verify");
    for (const auto& [name, path] :
         std::vector<std::pair<std::string, std::string>>{
             {"gen-flow", "lbg gen-flow"},
             {"gen-market", "lbg gen-market"},
             {"gen-routing", "lbg gen-routing"}}) {
      c = lbg->add_subcommand(name, "generate a bottleneck game");
      c->add_option("--input", o.input, "generator input")->required();
      c->add_option("--out", o.out, "write the bottleneck game");
      c->add_option("--max-paths", o.max_paths, "path enumeration cap");
      c->add_flag("--solve", o.solve, "also solve the generated game");
      value_opts(c);
      common(c, path);
    }
  }
  auto* gen = app.add_subcommand("gen", "reduction gadgets");
  gen->require_subcommand(1);
  {
    for (const auto& name : {"x3c", "indep-set"}) {
      auto* c = gen->add_subcommand(name, "generate a gadget game");
      c->add_option("--input", o.input, "source instance")->required();
      c->add_option("--out", o.out, "write the game");
      c->add_flag("--solve", o.solve, "decide with the oracle");
      budget_opts(c);
      common(c, std::string("gen ") + name);
    }
    auto* c = gen->add_subcommand("set-cover", "generate the arbitration gadget");
    c->add_option("--input", o.input, "source instance")->required();
    c->add_option("--out", o.out, "write the game");
    c->add_option("--outcome-out", o.outcome_out, "write the outcome");
    budget_opts(c);
    common(c, "gen set-cover");
  }
  {
    auto* c = app.add_subcommand("validate", "check a game and outcome");
    game_opt(c);
    outcome_opt(c, false);
    c->add_option("--ir-mode", o.ir_mode, "full-endowment|unit");
    common(c, "validate");
  }

  std::vector<const char*> argv{"ocf"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kYes : kError;
  }
  std::string path;
  for (const auto& [c, p] : leaves)
    if (c->parsed()) path = p;
  Runner runner(o, out);
  try {
    return runner.dispatch(path);
  } catch (const ResourceError& e) {
    err << "ocf: budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const UnsupportedError& e) {
    err << "ocf: unsupported: " << e.what() << "\n";
    return kError;
  } catch (const DataError& e) {
    err << "ocf: " << e.what() << "\n";
    return kError;
  } catch (const ContractError& e) {
    err << "ocf: " << e.what() << "\n";
    return kError;
  }
}

}  // namespace ocf::cli

#endif  // OCF_TOOLS_CLI_HPP
