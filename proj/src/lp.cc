// Copyright 2026 The fpa-equilibria Authors. All rights reserved.
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

#include "fpa/lp.h"

#include <algorithm>

namespace fpa {
namespace {

// Tableau rows hold [A | rhs]; basis[r] is the basic column of row r.
class Tableau {
 public:
  Tableau(Matrix rows, std::vector<int> basis, int num_cols)
      : rows_(std::move(rows)), basis_(std::move(basis)), cols_(num_cols) {}

  // Maximizes cost.x over the current basis using columns in `allowed`.
  // Returns false when unbounded.
  bool Maximize(const std::vector<Rational>& cost,
                const std::vector<bool>& allowed) {
    while (true) {
      std::vector<Rational> reduced = Reduced(cost);
      int enter = -1;
      for (int j = 0; j < cols_; ++j) {
        if (allowed[j] && reduced[j] > 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best_ratio;
      for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
        const Rational& coef = rows_[r][enter];
        if (coef <= 0) continue;
        Rational ratio = rows_[r][cols_] / coef;
        if (leave < 0 || ratio < best_ratio ||
            (ratio == best_ratio && basis_[r] < basis_[leave])) {
          leave = r;
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(leave, enter);
    }
  }

  void Pivot(int row, int col) {
    Rational pivot = rows_[row][col];
    for (Rational& x : rows_[row]) x /= pivot;
    for (int r = 0; r < static_cast<int>(rows_.size()); ++r) {
      if (r == row || rows_[r][col] == 0) continue;
      Rational factor = rows_[r][col];
      for (int j = 0; j <= cols_; ++j) {
        if (rows_[row][j] != 0) rows_[r][j] -= factor * rows_[row][j];
      }
    }
    basis_[row] = col;
  }

  std::vector<Rational> Solution() const {
    std::vector<Rational> x(cols_, Rational(0));
    for (size_t r = 0; r < rows_.size(); ++r) x[basis_[r]] = rows_[r][cols_];
    return x;
  }

  Matrix& rows() { return rows_; }
  std::vector<int>& basis() { return basis_; }

 private:
  std::vector<Rational> Reduced(const std::vector<Rational>& cost) const {
    std::vector<Rational> reduced = cost;
    for (size_t r = 0; r < rows_.size(); ++r) {
      const Rational& cb = cost[basis_[r]];
      if (cb == 0) continue;
      for (int j = 0; j < cols_; ++j) {
        if (rows_[r][j] != 0) reduced[j] -= cb * rows_[r][j];
      }
    }
    return reduced;
  }

  Matrix rows_;
  std::vector<int> basis_;
  int cols_;
};

}  // namespace

LpResult SolveLp(const Matrix& a_le, const std::vector<Rational>& b_le,
                 const Matrix& a_eq, const std::vector<Rational>& b_eq,
                 const std::vector<Rational>& c) {
  const int n = static_cast<int>(c.size());
  const int n_le = static_cast<int>(a_le.size());
  const int n_eq = static_cast<int>(a_eq.size());
  const int rows = n_le + n_eq;
  // Columns: x, one slack per <= row, one artificial per row.
  const int slack0 = n;
  const int art0 = n + n_le;
  const int cols = art0 + rows;
  Matrix t(rows, std::vector<Rational>(cols + 1, Rational(0)));
  std::vector<int> basis(rows);
  for (int r = 0; r < rows; ++r) {
    bool is_le = r < n_le;
    const std::vector<Rational>& a = is_le ? a_le[r] : a_eq[r - n_le];
    Rational rhs = is_le ? b_le[r] : b_eq[r - n_le];
    Rational sign = rhs < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t[r][j] = sign * a[j];
    if (is_le) t[r][slack0 + r] = sign;
    t[r][cols] = sign * rhs;
    t[r][art0 + r] = 1;
    basis[r] = art0 + r;
  }
  Tableau tableau(std::move(t), std::move(basis), cols);
  // A <= row with nonnegative rhs can start from its slack.
  for (int r = 0; r < n_le; ++r) {
    if (tableau.rows()[r][slack0 + r] == 1) tableau.Pivot(r, slack0 + r);
  }
  std::vector<bool> all(cols, true);
  std::vector<Rational> phase1(cols, Rational(0));
  for (int r = 0; r < rows; ++r) phase1[art0 + r] = -1;
  tableau.Maximize(phase1, all);
  LpResult result;
  std::vector<Rational> x = tableau.Solution();
  for (int r = 0; r < rows; ++r) {
    if (x[art0 + r] != 0) return result;
  }
  // Drive zero-level artificials out of the basis where possible.
  for (int r = 0; r < rows; ++r) {
    if (tableau.basis()[r] < art0) continue;
    for (int j = 0; j < art0; ++j) {
      if (tableau.rows()[r][j] != 0) {
        tableau.Pivot(r, j);
        break;
      }
    }
  }
  std::vector<bool> allowed(cols, true);
  for (int r = 0; r < rows; ++r) allowed[art0 + r] = false;
  std::vector<Rational> cost(cols, Rational(0));
  for (int j = 0; j < n; ++j) cost[j] = c[j];
  if (!tableau.Maximize(cost, allowed)) {
    result.status = LpResult::Status::kUnbounded;
    return result;
  }
  x = tableau.Solution();
  result.status = LpResult::Status::kOptimal;
  result.x.assign(x.begin(), x.begin() + n);
  result.objective = 0;
  for (int j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
  return result;
}

}  // namespace fpa
