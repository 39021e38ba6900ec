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

#include <random>

#include "ocf/lp.hpp"

namespace ocf {
namespace {

std::vector<Rational> R(std::initializer_list<int> v) {
  return std::vector<Rational>(v.begin(), v.end());
}

TEST(LpTest, SingleBound) {
  LinearProgram lp;
  lp.objective = R({1});
  lp.add_row(R({1}), Sense::le, 3);
  LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.x[0], 3);
  EXPECT_EQ(r.value, 3);
  EXPECT_EQ(r.duals[0], 1);
}

TEST(LpTest, TwoVariableExample) {
  LinearProgram lp;
  lp.objective = R({3, 1});
  lp.add_row(R({1, 1}), Sense::le, 2);
  lp.add_row(R({1, 0}), Sense::le, 1);
  LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.x, R({1, 1}));
  EXPECT_EQ(r.value, 4);
  EXPECT_EQ(r.duals, R({1, 2}));
}

TEST(LpTest, Infeasible) {
  LinearProgram lp;
  lp.objective = R({1});
  lp.add_row(R({1}), Sense::ge, 1);
  lp.add_row(R({1}), Sense::le, 0);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::infeasible);
}

TEST(LpTest, Unbounded) {
  LinearProgram lp;
  lp.objective = R({1, 0});
  lp.add_row(R({-1, 1}), Sense::le, 1);
  EXPECT_EQ(solve_lp(lp).status, LpStatus::unbounded);
}

TEST(LpTest, EqualityAndLowerBounds) {
  // max -x - y s.t. x + y = 3, x >= 1, y >= -1 -> value -3.
  LinearProgram lp;
  lp.objective = R({-1, -1});
  lp.add_row(R({1, 1}), Sense::eq, 3);
  lp.lower_bounds = R({1, -1});
  LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, -3);
  EXPECT_GE(r.x[0], 1);
  EXPECT_GE(r.x[1], -1);
}

TEST(LpTest, MalformedRowThrows) {
  LinearProgram lp;
  lp.objective = R({1, 1});
  lp.add_row(R({1}), Sense::le, 1);
  EXPECT_THROW(solve_lp(lp), ContractError);
}

// Degenerate vertex where Bland's rule must avoid cycling.
TEST(LpTest, DegenerateCyclingExample) {
  LinearProgram lp;
  lp.objective = {Rational(3, 4), -150, Rational(1, 50), -6};
  lp.add_row({Rational(1, 4), -60, Rational(-1, 25), 9}, Sense::le, 0);
  lp.add_row({Rational(1, 2), -90, Rational(-1, 50), 3}, Sense::le, 0);
  lp.add_row(R({0, 0, 1, 0}), Sense::le, 1);
  LpResult r = solve_lp(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, Rational(1, 20));
}

// Random bounded LPs: primal and dual feasibility, strong duality and
// complementary slackness of the returned certificate.
TEST(LpTest, RandomCertificates) {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> coef(0, 4), den(1, 3), sense(0, 5);
  for (int it = 0; it < 200; ++it) {
    const int nv = 1 + it % 4, nr = 1 + it % 5;
    LinearProgram lp;
    for (int v = 0; v < nv; ++v) lp.objective.push_back(Rational(coef(rng) - 1));
    for (int r = 0; r < nr; ++r) {
      std::vector<Rational> row;
      for (int v = 0; v < nv; ++v) {
        Rational c(coef(rng), den(rng));
        c.canonicalize();
        row.push_back(c);
      }
      const Sense s = sense(rng) == 0 ? Sense::ge : Sense::le;
      lp.add_row(row, s, Rational(coef(rng)));
    }
    std::vector<Rational> box(nv, Rational(1));
    lp.add_row(box, Sense::le, 10);
    LpResult r = solve_lp(lp);
    if (r.status != LpStatus::optimal) continue;
    Rational dual_value = 0;
    for (std::size_t k = 0; k < lp.rows.size(); ++k) {
      const auto& row = lp.rows[k];
      Rational lhs = 0;
      for (int v = 0; v < nv; ++v) lhs += row.coeffs[v] * r.x[v];
      if (row.sense == Sense::le) {
        EXPECT_LE(lhs, row.rhs);
        EXPECT_GE(r.duals[k], 0);
      } else {
        EXPECT_GE(lhs, row.rhs);
        EXPECT_LE(r.duals[k], 0);
      }
      if (r.duals[k] != 0) {
        EXPECT_EQ(lhs, row.rhs);
      }
      dual_value += r.duals[k] * row.rhs;
    }
    EXPECT_EQ(dual_value, r.value);
    for (int v = 0; v < nv; ++v) {
      Rational reduced = 0;
      for (std::size_t k = 0; k < lp.rows.size(); ++k)
        reduced += r.duals[k] * lp.rows[k].coeffs[v];
      EXPECT_GE(reduced, lp.objective[v]);
      if (r.x[v] > 0) {
        EXPECT_EQ(reduced, lp.objective[v]);
      }
    }
  }
}

}  // namespace
}  // namespace ocf
