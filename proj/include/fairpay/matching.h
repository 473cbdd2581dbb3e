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

// Exact maximum-weight assignment and the two allocation routines built on
// it: permuting bundles for maximum welfare, and iterated matching of items.

#ifndef FAIRPAY_MATCHING_H_
#define FAIRPAY_MATCHING_H_

#include <vector>

#include "fairpay/model.h"

namespace fairpay {

struct WeightMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<Number> data;  // row-major

  WeightMatrix() = default;
  WeightMatrix(int r, int c) : rows(r), cols(c), data(static_cast<std::size_t>(r) * c) {}
  Number& at(int i, int j) { return data[i * cols + j]; }
  const Number& at(int i, int j) const { return data[i * cols + j]; }
};

struct Assignment {
  std::vector<int> column_of_row;
  Number weight;
};

// Hungarian method over exact numbers. Among all optimal permutations the
// lexicographically smallest column_of_row is returned. Requires a square
// matrix.
Assignment max_weight_assignment(const WeightMatrix& w);

struct Reassignment {
  Allocation allocation;
  // allocation.bundles[i] == base.bundles[bundle_of_agent[i]]
  std::vector<int> bundle_of_agent;
};

// Permutes the bundles of `base` to maximize sum_i v_i(bundle). The result
// is envy-freeable.
Reassignment reassign_bundles(const Instance& inst, const Allocation& base);

// Allocates `items` on top of `start` in rounds: each round solves a
// maximum-weight matching between agents and the remaining items on
// marginal values, giving each agent at most one item.
Allocation iterated_matching(const Instance& inst, Bundle items, const Allocation& start);

}  // namespace fairpay

#endif  // FAIRPAY_MATCHING_H_
