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

// Dense two-phase simplex over exact numbers, Bland's rule throughout.
// Sized for the handful-of-agents programs the transfer oracles build.

#ifndef FAIRPAY_SIMPLEX_H_
#define FAIRPAY_SIMPLEX_H_

#include <vector>

#include "fairpay/number.h"

namespace fairpay {

enum class Relation { kLessEqual, kGreaterEqual, kEqual };

// minimize objective . x  subject to rows, x >= 0.
struct LinearProgram {
  struct Row {
    std::vector<Number> coef;
    Relation relation;
    Number rhs;
  };
  int variables = 0;
  std::vector<Number> objective;
  std::vector<Row> rows;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

struct LpSolution {
  LpStatus status = LpStatus::kInfeasible;
  Number value;
  std::vector<Number> x;
};

LpSolution solve_lp(const LinearProgram& lp);

}  // namespace fairpay

#endif  // FAIRPAY_SIMPLEX_H_
