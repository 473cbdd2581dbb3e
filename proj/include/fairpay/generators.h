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

// Instance families: the lower-bound constructions and seeded random
// instances. Every generator returns a validated, normalized instance.

#ifndef FAIRPAY_GENERATORS_H_
#define FAIRPAY_GENERATORS_H_

#include <cstdint>

#include "fairpay/model.h"

namespace fairpay {

// Two agents, items a = 0 and b = 1: v1 = (1, 1/2), v2 = (1/2, eps).
Instance gen_bad_nsw(const Rational& eps);

// n agents, n items, v_ii = 1 and v_ij = 0.
Instance gen_tightness(int n);

// Agent n-1 values every item at 1, all others at eps.
Instance gen_imposs(int n, int m, const Rational& eps);

// sqrt(n) high agents valuing their own block of m/sqrt(n) items at 1, and
// n - sqrt(n) low agents valuing every item at 1/sqrt(n).
Instance gen_constant_sum(int n, int m);

// Agent 0: v(S) = |S|. Agent 1: v(S) = sqrt(|S|).
Instance gen_sqrt(int m);

// Additive values k/64; monotone tables by random monotone closure;
// subadditive tables as a max of two additive clauses; matroid rank as the
// rank function of random vectors over GF(2).
Instance gen_random(int n, int m, ValuationClass cls, std::uint64_t seed);

}  // namespace fairpay

#endif  // FAIRPAY_GENERATORS_H_
