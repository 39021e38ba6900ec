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

// Exact two-phase tableau simplex over rationals with Bland's rule.

#ifndef OCF_LP_HPP
#define OCF_LP_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "ocf/errors.hpp"
#include "ocf/rational.hpp"

namespace ocf {

enum class Sense { le, ge, eq };

struct LpRow {
  std::vector<Rational> coeffs;
  Sense sense = Sense::le;
  Rational rhs;
};

// maximize objective . x  subject to rows, x >= lower_bounds.
struct LinearProgram {
  std::vector<Rational> objective;
  std::vector<LpRow> rows;
  std::vector<Rational> lower_bounds;  // empty means all zero

  int num_vars() const { return static_cast<int>(objective.size()); }

  void add_row(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
    rows.push_back({std::move(coeffs), sense, std::move(rhs)});
  }
};

enum class LpStatus { optimal, infeasible, unbounded };

inline const char* status_name(LpStatus s) {
  switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
  }
  return "unknown";
}

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational value;
  // One dual per row, for the original row orientation: >= 0 on <= rows,
  // <= 0 on >= rows, free on = rows. With zero lower bounds,
  // value == duals . rhs.
  std::vector<Rational> duals;
};

namespace detail {

class Tableau {
 public:
  // Columns: [structural | slack/surplus | artificial], then rhs.
  Tableau(const LinearProgram& lp) {
    const int nv = lp.num_vars();
    m_ = static_cast<int>(lp.rows.size());
    nv_ = nv;
    std::vector<Rational> lb(nv, Rational(0));
    if (!lp.lower_bounds.empty()) {
      if (static_cast<int>(lp.lower_bounds.size()) != nv)
        throw ContractError("lower bound count differs from variable count");
      lb = lp.lower_bounds;
    }
    int slacks = 0;
    for (const auto& r : lp.rows) {
      if (static_cast<int>(r.coeffs.size()) != nv)
        throw ContractError("LP row has wrong coefficient count");
      if (r.sense != Sense::eq) ++slacks;
    }
    ns_ = slacks;
    art0_ = nv_ + ns_;
    cols_ = art0_ + m_;
    a_.assign(m_, std::vector<Rational>(cols_ + 1, Rational(0)));
    basis_.assign(m_, 0);
    flipped_.assign(m_, false);
    int s = 0;
    for (int r = 0; r < m_; ++r) {
      const auto& row = lp.rows[r];
      Rational rhs = row.rhs;
      for (int j = 0; j < nv; ++j) rhs -= row.coeffs[j] * lb[j];
      Sense sense = row.sense;
      const bool flip = rhs < 0;
      flipped_[r] = flip;
      const int sign = flip ? -1 : 1;
      for (int j = 0; j < nv; ++j) a_[r][j] = row.coeffs[j] * sign;
      if (flip) {
        rhs = -rhs;
        if (sense == Sense::le) sense = Sense::ge;
        else if (sense == Sense::ge) sense = Sense::le;
      }
      if (sense == Sense::le) a_[r][nv_ + s++] = 1;
      else if (sense == Sense::ge) a_[r][nv_ + s++] = -1;
      a_[r][art0_ + r] = 1;
      a_[r][cols_] = rhs;
      basis_[r] = art0_ + r;
    }
    lb_ = std::move(lb);
  }

  // Runs both phases; fills result.
  LpResult solve(const std::vector<Rational>& objective) {
    LpResult res;
    // Phase 1: maximize -sum(artificials).
    std::vector<Rational> c1(cols_, Rational(0));
    for (int r = 0; r < m_; ++r) c1[art0_ + r] = -1;
    set_objective(c1);
    iterate(/*allow_artificial=*/true);
    if (z_[cols_] < 0) {
      res.status = LpStatus::infeasible;
      return res;
    }
    drive_out_artificials();
    std::vector<Rational> c2(cols_, Rational(0));
    for (int j = 0; j < nv_; ++j) c2[j] = objective[j];
    set_objective(c2);
    if (!iterate(/*allow_artificial=*/false)) {
      res.status = LpStatus::unbounded;
      return res;
    }
    res.status = LpStatus::optimal;
    res.x = lb_;
    for (int r = 0; r < m_; ++r)
      if (basis_[r] < nv_) res.x[basis_[r]] += a_[r][cols_];
    res.value = 0;
    for (int j = 0; j < nv_; ++j) res.value += objective[j] * res.x[j];
    res.duals.resize(m_);
    for (int r = 0; r < m_; ++r) {
      // Reduced cost of artificial column r is y_r for the flipped row.
      res.duals[r] = flipped_[r] ? -z_[art0_ + r] : z_[art0_ + r];
    }
    return res;
  }

 private:
  // z_j = c_B B^-1 A_j - c_j, kept as the objective row.
  void set_objective(const std::vector<Rational>& c) {
    c_ = c;
    z_.assign(cols_ + 1, Rational(0));
    for (int j = 0; j <= cols_; ++j) {
      Rational acc = j < cols_ ? Rational(-c[j]) : Rational(0);
      for (int r = 0; r < m_; ++r)
        if (c[basis_[r]] != 0) acc += c[basis_[r]] * a_[r][j];
      z_[j] = acc;
    }
  }

  void pivot(int pr, int pc) {
    Rational piv = a_[pr][pc];
    for (auto& v : a_[pr]) v /= piv;
    Rational f;
    for (int r = 0; r < m_; ++r) {
      if (r == pr || a_[r][pc] == 0) continue;
      f = a_[r][pc];
      for (int j = 0; j <= cols_; ++j)
        if (a_[pr][j] != 0) a_[r][j] -= f * a_[pr][j];
    }
    if (z_[pc] != 0) {
      f = z_[pc];
      for (int j = 0; j <= cols_; ++j)
        if (a_[pr][j] != 0) z_[j] -= f * a_[pr][j];
    }
    basis_[pr] = pc;
  }

  // Bland's rule. Returns false on unboundedness.
  bool iterate(bool allow_artificial) {
    const int limit_col = allow_artificial ? cols_ : art0_;
    while (true) {
      int pc = -1;
      for (int j = 0; j < limit_col; ++j)
        if (z_[j] < 0) {
          pc = j;
          break;
        }
      if (pc < 0) return true;
      int pr = -1;
      Rational best, ratio;
      for (int r = 0; r < m_; ++r) {
        if (a_[r][pc] <= 0) continue;
        ratio = a_[r][cols_] / a_[r][pc];
        if (pr < 0 || ratio < best ||
            (ratio == best && basis_[r] < basis_[pr])) {
          pr = r;
          best = ratio;
        }
      }
      if (pr < 0) return false;
      pivot(pr, pc);
    }
  }

  // Pivots zero-level artificials out of the basis where possible; rows
  // where that fails are redundant and keep the artificial at 0.
  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (basis_[r] < art0_) continue;
      for (int j = 0; j < art0_; ++j) {
        if (a_[r][j] != 0) {
          pivot(r, j);
          break;
        }
      }
    }
  }

  int m_ = 0, nv_ = 0, ns_ = 0, art0_ = 0, cols_ = 0;
  std::vector<std::vector<Rational>> a_;
  std::vector<Rational> z_, c_, lb_;
  std::vector<int> basis_;
  std::vector<bool> flipped_;
};

}  // namespace detail

inline LpResult solve_lp(const LinearProgram& lp) {
  detail::Tableau t(lp);
  return t.solve(lp.objective);
}

}  // namespace ocf

#endif  // OCF_LP_HPP
