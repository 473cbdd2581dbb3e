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

#include "fairpay/matching.h"

#include <optional>

#include "fairpay/errors.h"

namespace fairpay {
namespace {

// Minimum-weight perfect matching on the n x n cost matrix restricted to
// the given rows and columns. Returns the column index (into `cols`) for
// each row position and the total cost.
std::pair<std::vector<int>, Number> hungarian_min(const WeightMatrix& cost, const std::vector<int>& rows,
                                                  const std::vector<int>& cols) {
  const int n = static_cast<int>(rows.size());
  std::vector<Number> u(n + 1), v(n + 1);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<std::optional<Number>> minv(n + 1);
    std::vector<bool> used(n + 1, false);
    do {
      used[j0] = true;
      const int i0 = p[j0];
      std::optional<Number> delta;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        Number cur = cost.at(rows[i0 - 1], cols[j - 1]) - u[i0] - v[j];
        if (!minv[j] || cur < *minv[j]) {
          minv[j] = std::move(cur);
          way[j] = j0;
        }
        if (!delta || *minv[j] < *delta) {
          delta = *minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += *delta;
          v[j] -= *delta;
        } else {
          *minv[j] -= *delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> col_of_row(n);
  Number total;
  for (int j = 1; j <= n; ++j) {
    col_of_row[p[j] - 1] = j - 1;
    total += cost.at(rows[p[j] - 1], cols[j - 1]);
  }
  return {col_of_row, total};
}

}  // namespace

Assignment max_weight_assignment(const WeightMatrix& w) {
  if (w.rows != w.cols) throw PreconditionError("max_weight_assignment needs a square matrix");
  const int n = w.rows;
  Assignment out;
  if (n == 0) return out;
  WeightMatrix cost(n, n);
  for (std::size_t k = 0; k < w.data.size(); ++k) cost.data[k] = -w.data[k];

  std::vector<int> all(n);
  for (int k = 0; k < n; ++k) all[k] = k;
  const Number best = -hungarian_min(cost, all, all).second;

  // Fix rows in order to the smallest column that still admits an optimum.
  out.column_of_row.assign(n, -1);
  std::vector<bool> taken(n, false);
  Number prefix;
  for (int r = 0; r < n; ++r) {
    std::vector<int> rest_rows;
    for (int k = r + 1; k < n; ++k) rest_rows.push_back(k);
    for (int c = 0; c < n; ++c) {
      if (taken[c]) continue;
      std::vector<int> rest_cols;
      for (int k = 0; k < n; ++k) {
        if (!taken[k] && k != c) rest_cols.push_back(k);
      }
      Number total = prefix + w.at(r, c);
      if (!rest_rows.empty()) total -= hungarian_min(cost, rest_rows, rest_cols).second;
      if (total == best) {
        out.column_of_row[r] = c;
        taken[c] = true;
        prefix += w.at(r, c);
        break;
      }
    }
  }
  out.weight = best;
  return out;
}

Reassignment reassign_bundles(const Instance& inst, const Allocation& base) {
  check_partition(inst, base, /*require_full=*/false);
  const int n = inst.agents();
  WeightMatrix w(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) w.at(i, j) = inst.value(i, base.bundles[j]);
  }
  Assignment assignment = max_weight_assignment(w);
  Reassignment out{empty_allocation(n), assignment.column_of_row};
  for (int i = 0; i < n; ++i) out.allocation.bundles[i] = base.bundles[out.bundle_of_agent[i]];
  return out;
}

Allocation iterated_matching(const Instance& inst, Bundle items, const Allocation& start) {
  check_partition(inst, start, /*require_full=*/false);
  for (Bundle b : start.bundles) {
    if ((b & items) != 0) throw PreconditionError("iterated_matching: items overlap the start allocation");
  }
  const int n = inst.agents();
  Allocation current = start;
  std::vector<int> remaining;
  for (int g = 0; g < inst.items(); ++g) {
    if (contains(items, g)) remaining.push_back(g);
  }
  while (!remaining.empty()) {
    const int k = static_cast<int>(remaining.size());
    const int size = std::max(n, k);
    // Dummy rows (k > n) and dummy columns (k < n) carry weight zero.
    WeightMatrix w(size, size);
    for (int i = 0; i < n; ++i) {
      Number own = inst.value(i, current.bundles[i]);
      for (int c = 0; c < k; ++c) {
        w.at(i, c) = inst.value(i, current.bundles[i] | singleton(remaining[c])) - own;
      }
    }
    Assignment assignment = max_weight_assignment(w);
    std::vector<bool> allocated(k, false);
    for (int i = 0; i < n; ++i) {
      const int c = assignment.column_of_row[i];
      if (c < k) {
        current.bundles[i] |= singleton(remaining[c]);
        allocated[c] = true;
      }
    }
    std::vector<int> next;
    for (int c = 0; c < k; ++c) {
      if (!allocated[c]) next.push_back(remaining[c]);
    }
    remaining = std::move(next);
  }
  return current;
}

}  // namespace fairpay
