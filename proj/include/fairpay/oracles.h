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

// Brute-force ground truth: welfare optima, envy-freeable enumeration and
// minimum total transfer.
//
// Allocations are enumerated in lexicographic order of their owner string
// (owner of item 0, owner of item 1, ...), which is also the tie-break for
// every optimum below. Parallel scans split that order into contiguous
// ranges and merge with (value, index) reductions, so results do not depend
// on the worker count.

#ifndef FAIRPAY_ORACLES_H_
#define FAIRPAY_ORACLES_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "fairpay/model.h"

namespace fairpay {

struct EnumerationOptions {
  int workers = 1;
  std::uint64_t cap = 10'000'000;  // largest n^m scanned exhaustively
};

// n^m, saturating at UINT64_MAX.
std::uint64_t allocation_count(const Instance& inst);

// Allocation with the given lexicographic index.
Allocation allocation_at(const Instance& inst, std::uint64_t index);
std::uint64_t allocation_index(const Instance& inst, const Allocation& a);

// Visits every allocation in lexicographic order on the calling thread.
// Throws TooLargeError above the cap.
void for_each_allocation(const Instance& inst, const std::function<void(const Allocation&)>& visit,
                         const EnumerationOptions& opts = {});

// Utilitarian optimum. Additive instances use the closed form (each item to
// its highest-value agent, lowest index on ties); others enumerate.
Allocation brute_sw_opt(const Instance& inst, const EnumerationOptions& opts = {});

// Nash optimum: maximizes the number of agents with positive utility, then
// the product of those utilities. When some allocation gives everyone
// positive value this is exactly the maximizer of the Nash product. Beyond
// the cap, instances whose valuations depend on bundle size alone are
// solved exactly over size profiles.
Allocation brute_nsw_opt(const Instance& inst, const EnumerationOptions& opts = {});

// Maximizer of the rho-mean welfare (double precision), rho in (0, 1).
Allocation brute_rho_opt(const Instance& inst, const Rational& rho, const EnumerationOptions& opts = {});

std::vector<Allocation> enumerate_envy_freeable(const Instance& inst, const EnumerationOptions& opts = {});

struct TransferOptimum {
  PaymentVector transfers;  // an exact minimizer of sum |t_i|
  Number total;             // sum |t_i| at the optimum
  Number natural_total;  // sum |t_i| of the natural transfers (upper bound)
};

// Solves  min sum|t_i|  s.t.  t_i - t_j >= w(i,j), sum t = 0  exactly.
// Throws NotEnvyFreeableError when the constraints are infeasible.
TransferOptimum min_total_transfer(const Instance& inst, const Allocation& a);

enum class WelfareKind { kSocial, kNash };

struct TransferAtWelfare {
  std::optional<Number> value;         // empty means +infinity
  std::optional<Allocation> witness;   // lowest-index minimizer
  std::uint64_t allocations_examined = 0;
};

// Minimum of min_total_transfer over envy-freeable allocations whose welfare
// is at least alpha times the optimum (Nash welfare compared through
// products: prod(A) >= alpha^n prod(A*)). Additive utilitarian queries run a
// pruned depth-first scan that is exact beyond the n^m cap.
TransferAtWelfare min_transfer_at_welfare(const Instance& inst, const Rational& alpha, WelfareKind welfare,
                                          const EnumerationOptions& opts = {});

}  // namespace fairpay

#endif  // FAIRPAY_ORACLES_H_
