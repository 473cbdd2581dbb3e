// Copyright 2026 The Authors.
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

#include "fairpay/simplex.h"

#include <optional>

#include "fairpay/errors.h"

namespace fairpay {
namespace {

class Tableau {
 public:
  Tableau(int rows, int cols) : rows_(rows), cols_(cols), cells_(static_cast<std::size_t>(rows + 1) * (cols + 1)) {}

  // Row `rows_` is the objective (reduced costs); column `cols_` the rhs.
  Number& at(int r, int c) { return cells_[static_cast<std::size_t>(r) * (cols_ + 1) + c]; }
  Number& rhs(int r) { return at(r, cols_); }
  Number& cost(int c) { return at(rows_, c); }

  void pivot(int pr, int pc) {
    Number inv = at(pr, pc).inverse();
    for (int c = 0; c <= cols_; ++c) at(pr, c) *= inv;
    for (int r = 0; r <= rows_; ++r) {
      if (r == pr || at(r, pc).is_zero()) continue;
      Number factor = at(r, pc);
      for (int c = 0; c <= cols_; ++c) {
        if (!at(pr, c).is_zero()) at(r, c) -= factor * at(pr, c);
      }
    }
    basis[pr] = pc;
  }

  // Runs Bland's rule over the allowed columns. Returns false if unbounded.
  bool optimize(const std::vector<bool>& allowed) {
    while (true) {
      int enter = -1;
      for (int c = 0; c < cols_; ++c) {
        if (allowed[c] && cost(c).sign() < 0) {
          enter = c;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      std::optional<Number> best;
      for (int r = 0; r < rows_; ++r) {
        if (at(r, enter).sign() <= 0) continue;
        Number ratio = rhs(r) / at(r, enter);
        if (!best || ratio < *best || (ratio == *best && basis[r] < basis[leave])) {
          best = std::move(ratio);
          leave = r;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  void price(const std::vector<Number>& c) {
    for (int k = 0; k <= cols_; ++k) cost(k) = k < cols_ ? c[k] : Number();
    for (int r = 0; r < rows_; ++r) {
      const Number cb = c[basis[r]];
      if (cb.is_zero()) continue;
      for (int k = 0; k <= cols_; ++k) cost(k) -= cb * at(r, k);
    }
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::vector<int> basis;

 private:
  int rows_;
  int cols_;
  std::vector<Number> cells_;
};

}  // namespace

LpSolution solve_lp(const LinearProgram& lp) {
  const int n = lp.variables;
  const int m = static_cast<int>(lp.rows.size());
  if (static_cast<int>(lp.objective.size()) != n) throw PreconditionError("objective size mismatch");

  // Flip rows to nonnegative rhs, then count slack/surplus and artificials.
  std::vector<LinearProgram::Row> rows = lp.rows;
  for (auto& row : rows) {
    if (static_cast<int>(row.coef.size()) != n) throw PreconditionError("constraint size mismatch");
    if (row.rhs.sign() < 0) {
      for (auto& a : row.coef) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == Relation::kLessEqual) {
        row.relation = Relation::kGreaterEqual;
      } else if (row.relation == Relation::kGreaterEqual) {
        row.relation = Relation::kLessEqual;
      }
    }
  }
  int slack_count = 0;
  int artificial_count = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::kEqual) ++slack_count;
    if (row.relation != Relation::kLessEqual) ++artificial_count;
  }
  const int first_slack = n;
  const int first_artificial = n + slack_count;
  const int cols = n + slack_count + artificial_count;

  Tableau t(m, cols);
  t.basis.assign(m, -1);
  int slack = first_slack;
  int artificial = first_artificial;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < n; ++c) t.at(r, c) = rows[r].coef[c];
    t.rhs(r) = rows[r].rhs;
    if (rows[r].relation == Relation::kLessEqual) {
      t.at(r, slack) = 1;
      t.basis[r] = slack++;
    } else {
      if (rows[r].relation == Relation::kGreaterEqual) t.at(r, slack++) = -1;
      t.at(r, artificial) = 1;
      t.basis[r] = artificial++;
    }
  }

  LpSolution out;
  std::vector<bool> allowed(cols, true);
  if (artificial_count > 0) {
    std::vector<Number> phase1(cols);
    for (int c = first_artificial; c < cols; ++c) phase1[c] = 1;
    t.price(phase1);
    t.optimize(allowed);
    if (!(-t.rhs(m)).is_zero()) {
      out.status = LpStatus::kInfeasible;
      return out;
    }
    // Drive artificials out of the basis where possible.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < first_artificial) continue;
      for (int c = 0; c < first_artificial; ++c) {
        if (!t.at(r, c).is_zero()) {
          t.pivot(r, c);
          break;
        }
      }
    }
    for (int c = first_artificial; c < cols; ++c) allowed[c] = false;
  }

  std::vector<Number> phase2(cols);
  for (int c = 0; c < n; ++c) phase2[c] = lp.objective[c];
  t.price(phase2);
  if (!t.optimize(allowed)) {
    out.status = LpStatus::kUnbounded;
    return out;
  }
  out.status = LpStatus::kOptimal;
  out.x.assign(n, Number());
  for (int r = 0; r < m; ++r) {
    if (t.basis[r] < n) out.x[t.basis[r]] = t.rhs(r);
  }
  for (int c = 0; c < n; ++c) out.value += lp.objective[c] * out.x[c];
  return out;
}

}  // namespace fairpay
