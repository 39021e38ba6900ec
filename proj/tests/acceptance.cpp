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

// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria. All comparisons are exact; only the time limits
// below are tolerances.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "ocf/ocf.hpp"

namespace ocf {
namespace {

constexpr double kOracleSeconds = 60;
constexpr double kLbgSeconds = 120;
constexpr double kPathSeconds = 5;
constexpr double kCycleSeconds = 30;

const LocalArbitration kRules[] = {
    LocalArbitration::conservative(), LocalArbitration::refined(),
    LocalArbitration::optimistic(false), LocalArbitration::optimistic(true)};

double seconds_since(std::chrono::steady_clock::time_point t) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t)
      .count();
}

// Collects mismatches; a criterion passes with none.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  int failed() const { return failed_; }
  int checks() const { return checks_; }
  std::string summary() const {
    std::ostringstream s;
    s << checks_ << " checks, " << failed_ << " failed";
    for (const auto& f : failures_) s << "; " << f;
    return s.str();
  }

 private:
  int checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

int failed_criteria = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  if (!pass) ++failed_criteria;
  std::cout << "criterion " << id << " [" << name << "]: " << (pass ? "PASS" : "FAIL")
            << " (" << detail << ")" << std::endl;
}

void run_criterion(int id, const std::string& name,
                   const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    report(id, name, pass, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

Game tree_game(std::mt19937_64& rng, int n, int max_w, int max_value = 10) {
  return testing::random_2ocf(rng, testing::random_tree(rng, n), max_w, max_value);
}

std::pair<bool, std::string> optval_oracle() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1001);
  Check c;
  for (int it = 0; it < 200; ++it) {
    const int n = 1 + it % 5;
    Game g = tree_game(rng, n, 3);
    Coalition w = g.endowment();
    Rational tree = optval_tree(g, w).value;
    Rational cover = superadditive_cover(g, w).value;
    Rational best = 0;
    enumerate_structures(
        g, w,
        [&](const CoalitionStructure& cs) {
          Rational v = cs.value(g);
          if (v > best) best = v;
          return true;
        },
        {}, true);
    c.expect(tree == cover && cover == best,
             "game " + std::to_string(it) + ": tree " + to_string(tree) +
                 " cover " + to_string(cover) + " enumeration " + to_string(best));
  }
  const double secs = seconds_since(t0);
  c.expect(secs < kOracleSeconds, "runtime");
  return {c.failed() == 0, c.summary() + ", " + std::to_string(secs) + " s"};
}

std::pair<bool, std::string> x3c_gadgets() {
  struct Case {
    X3cInstance x;
    bool cover;  // hand label
  };
  const std::vector<Case> cases = {
      {{3, {{0, 1, 2}}}, true},
      {{3, {}}, false},
      {{6, {{0, 1, 2}, {3, 4, 5}}}, true},
      {{6, {{0, 1, 2}, {0, 1, 3}}}, false},
      {{6, {{0, 1, 2}, {2, 3, 4}}}, false},
      {{6, {{0, 1, 2}, {3, 4, 5}, {1, 2, 3}}}, true},
      {{6, {{0, 1, 3}, {2, 4, 5}, {0, 1, 2}}}, true},
      {{6, {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}}}, false},
      {{6, {{0, 3, 4}, {1, 2, 5}, {0, 1, 2}}}, true},
      {{6, {{0, 1, 2}, {0, 3, 4}, {0, 4, 5}}}, false},
      {{6, {{3, 4, 5}}}, false},
      {{6, {{0, 2, 4}, {1, 3, 5}, {0, 1, 5}}}, true},
  };
  EnumerationBudget b;
  b.max_agents = 12;
  Check c;
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& x = cases[k].x;
    GadgetGame gg = x3c_gadget(x);
    Rational v = superadditive_cover(gg.game, gg.game.endowment(), b).value;
    c.expect(exact_cover_exists(x) == cases[k].cover,
             "case " + std::to_string(k) + " label disagrees with brute force");
    c.expect((v >= gg.threshold) == cases[k].cover,
             "case " + std::to_string(k) + ": v* " + to_string(v) + " threshold " +
                 to_string(gg.threshold));
    c.expect(gg.game.max_weight() <= 3 && gg.game.v().k() <= 2,
             "case " + std::to_string(k) + " shape");
  }
  return {c.failed() == 0, std::to_string(cases.size()) + " instances, " + c.summary()};
}

std::pair<bool, std::string> treewidth_dp() {
  std::mt19937_64 rng(1003);
  Check c;
  for (int it = 0; it < 100; ++it) {
    const int n = 3 + it % 3;
    InteractionGraph gr = it % 2 == 0 ? testing::cycle_graph(n)
                                      : testing::clique_graph(std::min(n, 4));
    Game g = testing::random_2ocf(rng, gr, 3, 10);
    Rational tw = optval_tw(g, g.endowment()).value;
    Rational cover = superadditive_cover(g, g.endowment()).value;
    c.expect(tw == cover, "graph game " + std::to_string(it) + ": tw " +
                              to_string(tw) + " oracle " + to_string(cover));
  }
  std::vector<Game> trees{testing::g1(), testing::path3()};
  for (int it = 0; it < 100; ++it) trees.push_back(tree_game(rng, 1 + it % 6, 3));
  for (std::size_t k = 0; k < trees.size(); ++k) {
    const Game& g = trees[k];
    c.expect(optval_tw(g, g.endowment()).value == optval_tree(g, g.endowment()).value,
             "tree fixture " + std::to_string(k));
  }
  return {c.failed() == 0, c.summary()};
}

AgentSet random_subset(std::mt19937_64& rng, int n, int max_size) {
  while (true) {
    std::uniform_int_distribution<std::uint64_t> m(1, (1u << n) - 1);
    AgentSet s = AgentSet::from_mask(m(rng), n);
    if (s.size() <= max_size) return s;
  }
}

std::pair<bool, std::string> arbval_agreement() {
  std::mt19937_64 rng(1004);
  Check c;
  for (int it = 0; it < 100; ++it) {
    const int n = 2 + it % 3;
    Game g = tree_game(rng, n, 3);
    Outcome o = testing::random_outcome(rng, g, g.interaction_graph());
    AgentSet s = random_subset(rng, n, 3);
    for (const auto& arb : kRules) {
      Rational brute = brute_arbval(g, arb, o, s).value;
      Rational local = arbval_local(g, arb, o, s).value;
      Rational tree = arbval_tree(g, arb, o, s).value;
      c.expect(brute == local && local == tree,
               "fixture " + std::to_string(it) + " " + arb.name() + ": brute " +
                   to_string(brute) + " local " + to_string(local) + " tree " +
                   to_string(tree));
    }
  }
  return {c.failed() == 0, c.summary()};
}

std::pair<bool, std::string> checkcore_agreement() {
  std::mt19937_64 rng(1005);
  Check c;
  int violated = 0;
  for (int it = 0; it < 100; ++it) {
    const int n = 2 + it % 4;
    Game g = tree_game(rng, n, 3);
    Outcome o = testing::random_outcome(rng, g, g.interaction_graph());
    for (const auto& arb : kRules) {
      auto brute = brute_checkcore(g, arb, o);
      Rational all = brute_max_excess(g, arb, o, SetScope::all).excess;
      Rational connected = brute_max_excess(g, arb, o, SetScope::connected).excess;
      auto tree = checkcore_tree(g, arb, o);
      CoreCheck tw = tw_max_excess(g, arb, o);
      violated += brute.has_value();
      const std::string tag = "fixture " + std::to_string(it) + " " + arb.name();
      c.expect(tree.has_value() == brute.has_value(), tag + " tree membership");
      c.expect(tree_max_excess(g, arb, o).max_excess == connected,
               tag + " tree max excess");
      c.expect(tw.in_core() == !brute.has_value(), tag + " tw membership");
      c.expect(tw.max_excess == all, tag + " tw max excess " +
                                         to_string(tw.max_excess) + " vs " +
                                         to_string(all));
    }
  }
  return {c.failed() == 0,
          c.summary() + ", " + std::to_string(violated) + " violated cases"};
}

std::pair<bool, std::string> is_stable_soundness() {
  std::mt19937_64 rng(1006);
  Check c;
  int stable = 0, unstable = 0;
  const LocalArbitration rules[] = {LocalArbitration::conservative(),
                                    LocalArbitration::refined(),
                                    LocalArbitration::optimistic()};
  for (int it = 0; it < 50; ++it) {
    const int n = 2 + it % 3;
    Game g = tree_game(rng, n, 2, 8);
    std::vector<CoalitionStructure> structures{optval_tree(g, g.endowment()).witness};
    structures.push_back(
        testing::random_outcome(rng, g, g.interaction_graph()).structure);
    for (const auto& cs : structures)
      for (const auto& arb : rules) {
        const std::string tag = "game " + std::to_string(it) + " " + arb.name();
        auto x = is_stable_tree(g, arb, cs);
        if (x) {
          ++stable;
          Outcome o{cs, *x};
          c.expect(validate_outcome(o, g).empty(), tag + " invalid imputation");
          c.expect(!brute_checkcore(g, arb, o), tag + " imputation not in core");
        } else {
          ++unstable;
          c.expect(!brute_is_stable(g, arb, cs), tag + " oracle found imputation");
        }
      }
  }
  return {c.failed() == 0 && stable > 0 && unstable > 0,
          c.summary() + ", " + std::to_string(stable) + " stable, " +
              std::to_string(unstable) + " unstable"};
}

LbgInstance random_lbg(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(1, 5), wnum(1, 4), den(1, 4), pnum(0, 12);
  const int n = nd(rng);
  std::vector<Rational> w;
  for (int i = 0; i < n; ++i) {
    Rational x(wnum(rng), den(rng));
    x.canonicalize();
    w.push_back(x);
  }
  std::uniform_int_distribution<int> extra(0, 8 - n);
  const int want = extra(rng);
  std::uniform_int_distribution<std::uint64_t> mask(1, (1u << n) - 1);
  std::set<AgentSet> used;
  std::vector<LbgTask> tasks;
  std::bernoulli_distribution priced_single(0.5);
  for (Agent i = 0; i < n; ++i) {
    if (!priced_single(rng)) continue;
    Rational p(pnum(rng), den(rng) * 4);
    p.canonicalize();
    tasks.push_back({AgentSet{i}, p});
    used.insert(AgentSet{i});
  }
  for (int t = 0, tries = 0; t < want && tries < 50; ++tries) {
    AgentSet s = AgentSet::from_mask(mask(rng), n);
    if (s.size() < 2 || !used.insert(s).second) continue;
    Rational p(pnum(rng), den(rng));
    p.canonicalize();
    tasks.push_back({s, p});
    ++t;
  }
  return LbgInstance(w, tasks);
}

std::pair<bool, std::string> lbg_core_property() {
  auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1007);
  Check c;
  std::int64_t deviations = 0;
  for (int it = 0; it < 100; ++it) {
    LbgInstance inst = random_lbg(rng);
    const std::string tag = "instance " + std::to_string(it);
    LbgSolution s = lbg_optimal(inst);
    auto cert = lbg_certificate_errors(inst, s);
    c.expect(cert.empty(), tag + (cert.empty() ? "" : ": " + cert.front()));
    c.expect(inst.m() <= 8, tag + " has too many tasks");
    LpResult dual = solve_lp(lbg_dual(inst));
    c.expect(dual.status == LpStatus::optimal && dual.value == -s.value,
             tag + " strong duality");
    LbgOutcome out = lbg_core_outcome(inst, s);
    c.expect(lbg_validate(inst, out).empty(), tag + " outcome invalid");
    c.expect(out.payoff_to_set(AgentSet::all(inst.n())) == s.value,
             tag + " payoff accounting");
    for (const Rational& grid : {Rational(1), Rational(1, 2)}) {
      auto observer = [&](const LbgDeviation& d) {
        Rational bound = 0, nu_bound = 0;
        for (Agent i : d.set) {
          bound += s.duals[i] * (d.value.nu[i] + d.value.Z[i]);
          nu_bound += s.duals[i] * d.value.nu[i];
        }
        c.expect(d.value.alpha <= bound, tag + " weighted withdrawal bound");
        c.expect(d.value.net <= nu_bound, tag + " net bound");
        c.expect(d.value.total <= d.payoff, tag + " payoff bound");
      };
      LbgVerifyReport r = lbg_verify_core(inst, out, grid, observer);
      deviations += r.deviations;
      c.expect(!r.witness, tag + " blocked at grid " + to_string(grid));
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < kLbgSeconds, "runtime");
  return {c.failed() == 0, c.summary() + ", " + std::to_string(deviations) +
                               " deviations, " + std::to_string(secs) + " s"};
}

std::pair<bool, std::string> golden_fixtures() {
  Check c;
  Game g = testing::g1();
  Outcome o = testing::o1();
  c.expect(superadditive_cover(g, g.endowment()).value == 5, "G1 oracle");
  c.expect(optval_tree(g, g.endowment()).value == 5, "G1 tree");
  c.expect(optval_tw(g, g.endowment()).value == 5, "G1 tw");
  for (const auto& arb : {LocalArbitration::conservative(), LocalArbitration::refined()})
    for (const AgentSet& s : {AgentSet{0}, AgentSet{1}, AgentSet{0, 1}}) {
      Rational excess = brute_arbval(g, arb, o, s).value - payoff_to_set(o, s);
      c.expect(excess == 0, "O1 excess of " + s.to_string() + " under " + arb.name());
    }
  c.expect(validate_outcome(o, g).empty(), "O1 valid");
  LbgInstance l = testing::l1();
  LbgSolution s = lbg_optimal(l);
  c.expect(s.value == 4, "L1 value");
  c.expect(s.allocation == std::vector<Rational>{1, 1, 0}, "L1 allocation");
  c.expect(s.duals == std::vector<Rational>{1, 2}, "L1 duals");
  LbgOutcome out = lbg_core_outcome(l, s);
  c.expect(out.payoff_to(0) == 2 && out.payoff_to(1) == 2, "L1 payoffs");
  return {c.failed() == 0, c.summary()};
}

Game random_path(std::mt19937_64& rng, int n, int w) {
  std::uniform_int_distribution<int> val(0, 100);
  CharacteristicFunction v(n, 2);
  InteractionGraph gr(n);
  for (int i = 0; i < n; ++i)
    for (int a = 1; a <= w; ++a) v.set({i}, {a}, val(rng));
  for (int i = 0; i + 1 < n; ++i) {
    gr.add_edge(i, i + 1);
    for (int a = 1; a <= w; ++a)
      for (int b = 1; b <= w; ++b) v.set({i, i + 1}, {a, b}, val(rng));
  }
  return Game(std::vector<int>(n, w), v, gr);
}

Game random_cycle(std::mt19937_64& rng, int n, int w) {
  std::uniform_int_distribution<int> val(0, 100);
  CharacteristicFunction v(n, 2);
  InteractionGraph gr = testing::cycle_graph(n);
  for (int i = 0; i < n; ++i)
    for (int a = 1; a <= w; ++a) v.set({i}, {a}, val(rng));
  for (const auto& [i, j] : gr.edges())
    for (int a = 1; a <= w; ++a)
      for (int b = 1; b <= w; ++b) v.set({i, j}, {a, b}, val(rng));
  return Game(std::vector<int>(n, w), v, gr);
}

std::pair<bool, std::string> performance() {
  std::mt19937_64 rng(1009);
  Check c;
  Game path = random_path(rng, 50, 20);
  auto t0 = std::chrono::steady_clock::now();
  OptValResult p = optval_tree(path, path.endowment());
  const double path_secs = seconds_since(t0);
  c.expect(p.witness.value(path) == p.value, "path witness");
  c.expect(path_secs < kPathSeconds, "path runtime");

  Game cycle = random_cycle(rng, 30, 10);
  TreeDecomposition t = heuristic_decomposition(cycle.interaction_graph());
  c.expect(t.width() == 2, "cycle decomposition width " + std::to_string(t.width()));
  t0 = std::chrono::steady_clock::now();
  OptValResult q = optval_tw(cycle, t, cycle.endowment());
  const double cycle_secs = seconds_since(t0);
  c.expect(q.witness.value(cycle) == q.value, "cycle witness");
  c.expect(cycle_secs < kCycleSeconds, "cycle runtime");
  std::ostringstream d;
  d << c.summary() << ", path n=50 W=20 " << path_secs << " s (limit "
    << kPathSeconds << "), cycle n=30 W=10 " << cycle_secs << " s (limit "
    << kCycleSeconds << ")";
  return {c.failed() == 0, d.str()};
}

std::pair<bool, std::string> locality_counterexample() {
  struct Case {
    int elements;
    std::vector<std::vector<int>> sets;
    int l;
    bool yes;  // hand label: a cover of size <= l exists
  };
  const std::vector<Case> cases = {
      {1, {{0}}, 1, true},
      {2, {{0}}, 1, false},
      {2, {{0}, {1}}, 1, false},
      {2, {{0}, {1}}, 2, true},
      {2, {{0, 1}, {1}}, 1, true},
      {3, {{0, 1}, {1, 2}, {2}}, 1, false},
      {3, {{0, 1}, {1, 2}, {2}}, 2, true},
  };
  EnumerationBudget b;
  b.max_weight = 20;
  Check c;
  SetCoverGadget probe = set_cover_arbitration_gadget(2, {{0}, {1}}, 1);
  c.expect(find_locality_violation(probe.game, probe.outcome, probe.deviator,
                                   probe.arbitration)
               .has_value(),
           "gadget arbitration passed the locality test");
  for (std::size_t k = 0; k < cases.size(); ++k) {
    const auto& cs = cases[k];
    SetCoverGadget sc = set_cover_arbitration_gadget(cs.elements, cs.sets, cs.l);
    Rational v = brute_arbval(sc.game, sc.arbitration, sc.outcome, sc.deviator, b).value;
    const int best = min_set_cover(cs.elements, cs.sets);
    c.expect((best >= 0 && best <= cs.l) == cs.yes,
             "case " + std::to_string(k) + " label disagrees with brute force");
    c.expect((v >= sc.threshold) == cs.yes,
             "case " + std::to_string(k) + ": value " + to_string(v) +
                 " threshold " + to_string(sc.threshold));
  }
  return {c.failed() == 0, std::to_string(cases.size()) + " cases, " + c.summary()};
}

}  // namespace
}  // namespace ocf

int main() {
  using namespace ocf;
  run_criterion(1, "optval oracle equivalence", optval_oracle);
  run_criterion(2, "x3c gadget", x3c_gadgets);
  run_criterion(3, "treewidth optval", treewidth_dp);
  run_criterion(4, "arbval agreement", arbval_agreement);
  run_criterion(5, "checkcore agreement", checkcore_agreement);
  run_criterion(6, "is-stable soundness", is_stable_soundness);
  run_criterion(7, "bottleneck core", lbg_core_property);
  run_criterion(8, "golden fixtures", golden_fixtures);
  run_criterion(9, "performance smoke", performance);
  run_criterion(10, "locality counterexample", locality_counterexample);
  std::cout << (failed_criteria == 0 ? "all criteria passed"
                                     : std::to_string(failed_criteria) +
                                           " criteria failed")
            << std::endl;
  return failed_criteria;
}
