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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "ocf/ocf.hpp"

namespace ocf {
namespace {

EnumerationBudget wide_budget() {
  EnumerationBudget b;
  b.max_agents = 12;
  b.max_weight = 20;
  return b;
}

TEST(X3cTest, Validation) {
  EXPECT_THROW(validate_x3c({4, {}}), DataError);
  EXPECT_THROW(validate_x3c({3, {{0, 1, 3}}}), DataError);
  EXPECT_THROW(validate_x3c({3, {{0, 1, 1}}}), DataError);
  EXPECT_THROW(validate_x3c({3, {{0, 1, 2}, {2, 1, 0}}}), DataError);
  EXPECT_NO_THROW(validate_x3c({3, {{0, 1, 2}}}));
}

TEST(X3cTest, ExactCoverBruteForce) {
  EXPECT_TRUE(exact_cover_exists({6, {{0, 1, 2}, {3, 4, 5}}}));
  EXPECT_FALSE(exact_cover_exists({6, {{0, 1, 2}, {0, 1, 3}}}));
  EXPECT_FALSE(exact_cover_exists({3, {}}));
}

TEST(X3cTest, GadgetShape) {
  GadgetGame gg = x3c_gadget({6, {{0, 1, 2}, {3, 4, 5}}});
  EXPECT_EQ(gg.game.n(), 8);
  EXPECT_EQ(gg.game.max_weight(), 3);
  EXPECT_LE(gg.game.v().k(), 2);
  EXPECT_EQ(gg.threshold, 12);
  EXPECT_TRUE(gg.game.interaction_graph().is_forest());
}

TEST(X3cTest, OracleDecidesExactCover) {
  const std::vector<X3cInstance> cases = {
      {3, {{0, 1, 2}}},
      {6, {{0, 1, 2}, {3, 4, 5}}},
      {6, {{0, 1, 2}, {0, 1, 3}}},
      {6, {{0, 1, 2}, {2, 3, 4}}},
  };
  for (const auto& x : cases) {
    GadgetGame gg = x3c_gadget(x);
    Rational v = superadditive_cover(gg.game, gg.game.endowment(), wide_budget()).value;
    EXPECT_EQ(v >= gg.threshold, exact_cover_exists(x));
    // The gadget is a forest when no two subsets share two elements.
    if (gg.game.interaction_graph().is_forest()) {
      EXPECT_EQ(optval_tree(gg.game, gg.game.endowment()).value, v);
    }
  }
}

TEST(IndependentSetTest, GadgetShape) {
  GadgetGame gg = independent_set_gadget(testing::triangle().interaction_graph(), 1);
  EXPECT_EQ(gg.game.n(), 4);
  EXPECT_EQ(gg.game.weight(3), 2);
  EXPECT_EQ(gg.threshold, Rational(1) + Rational(1, 30));
  EXPECT_THROW(independent_set_gadget(InteractionGraph(2), 3), DataError);
  EXPECT_THROW(independent_set_gadget(InteractionGraph(2), 1, 1), DataError);
}

TEST(IndependentSetTest, TriangleValues) {
  InteractionGraph tri = testing::triangle().interaction_graph();
  GadgetGame gg = independent_set_gadget(tri, 1);
  Rational v = superadditive_cover(gg.game, gg.game.endowment()).value;
  EXPECT_EQ(v, 2);
  EXPECT_GE(v, gg.threshold);
}

TEST(SetCoverTest, GadgetShape) {
  SetCoverGadget sc = set_cover_arbitration_gadget(1, {{0}}, 1);
  EXPECT_EQ(sc.threshold, 15);
  EXPECT_EQ(sc.game.weights(), (std::vector<int>{3, 3}));
  EXPECT_EQ(sc.outcome.structure.size(), 2);
  EXPECT_TRUE(validate_outcome(sc.outcome, sc.game, IrMode::unit).empty());
  EXPECT_THROW(set_cover_arbitration_gadget(1, {{1}}, 1), DataError);
}

TEST(SetCoverTest, ArbitrationIsNotLocal) {
  SetCoverGadget sc = set_cover_arbitration_gadget(2, {{0}, {1}}, 2);
  EXPECT_TRUE(find_locality_violation(sc.game, sc.outcome, sc.deviator,
                                      sc.arbitration));
}

TEST(SetCoverTest, DeviationSearchDecidesCover) {
  struct Case {
    int elements;
    std::vector<std::vector<int>> sets;
    int l;
  };
  const std::vector<Case> cases = {
      {1, {{0}}, 1},
      {2, {{0}}, 1},
      {2, {{0}, {1}}, 1},
      {2, {{0}, {1}}, 2},
      {2, {{0, 1}, {1}}, 1},
      {3, {{0, 1}, {1, 2}, {2}}, 1},
  };
  for (const auto& c : cases) {
    SetCoverGadget sc = set_cover_arbitration_gadget(c.elements, c.sets, c.l);
    Rational v =
        brute_arbval(sc.game, sc.arbitration, sc.outcome, sc.deviator, wide_budget())
            .value;
    const int best = min_set_cover(c.elements, c.sets);
    EXPECT_EQ(v >= sc.threshold, best >= 0 && best <= c.l);
  }
}

TEST(SetCoverTest, MinCoverBruteForce) {
  EXPECT_EQ(min_set_cover(2, {{0}, {1}, {0, 1}}), 1);
  EXPECT_EQ(min_set_cover(2, {{0}}), -1);
  EXPECT_EQ(min_set_cover(3, {{0, 1}, {1, 2}, {2}}), 2);
}

}  // namespace
}  // namespace ocf
