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

// End-to-end constructions of envy-free allocations with transfers.
//
// Every solver returns (A, t) where t are the natural transfers of A's
// minimum subsidies, so (A, t) is envy-free and sum t = 0, together with
// named certificates recording each guaranteed bound as an exact
// inequality. Only the Nash-ratio certificates, which compare against the
// transcendental e^{-1/e}, are evaluated in floating point.

#ifndef FAIRPAY_ALGORITHMS_H_
#define FAIRPAY_ALGORITHMS_H_

#include <optional>
#include <string>
#include <vector>

#include "fairpay/model.h"
#include "fairpay/oracles.h"

namespace fairpay {

// e^{-1/e}
inline const double kNashRatioBound = 0.69220062755534635;
// Relative slack on double-precision Nash-ratio comparisons.
inline constexpr double kNashRatioTolerance = 1e-9;

struct Certificate {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool holds = false;
  bool approx = false;  // lhs/rhs are decimal approximations
};

struct SolveResult {
  std::string algorithm;
  std::optional<Rational> alpha;
  std::optional<Rational> rho;
  Allocation allocation;
  PaymentVector subsidies;  // minimum subsidies of `allocation`
  PaymentVector transfers;  // natural transfers
  WelfareReport report;
  std::vector<Certificate> certificates;

  bool all_hold() const;
  // First failing certificate, if any.
  const Certificate* first_failure() const;
};

Certificate certify_le(std::string name, const Number& lhs, const Number& rhs);

// Bounded-envy pipeline: permute bundles for maximum welfare, pay minimum
// subsidies, center them. Certifies total transfer <= 2 b n^2.
SolveResult make_envy_free_from_bounded(const Instance& inst, const Allocation& base, const Rational& b,
                                        const EnumerationOptions& opts = {});

// Adds `items` (ascending) to `start`, each to an agent nobody strictly
// envies, rotating strict-envy cycles whenever no such agent exists.
Allocation envy_cycles(const Instance& inst, Bundle items, const Allocation& start);

// Reassigns the bundles of `base` and certifies
// NSW(A, t) >= e^{-1/e} NSW(base).
SolveResult nsw_reassign(const Instance& inst, const Allocation& base);

struct NashPipelineOptions {
  // An EF1 allocation with Nash welfare within `approximation` of optimal.
  // Defaults to the exact Nash optimum.
  std::optional<Allocation> ef1_input;
  Rational approximation = 1;
  // Set when ef1_input came from an EF1 conversion that may halve the Nash
  // welfare; the ratio certificate then allows the extra factor 1/2.
  bool converted = false;
  EnumerationOptions enumeration;
};

SolveResult nsw_pipeline_additive(const Instance& inst, const NashPipelineOptions& opts = {});

// Matroid-rank instances: exact Nash optimum (which must be EF1), then the
// bounded-envy pipeline with b = 1.
SolveResult nsw_pipeline_matroid(const Instance& inst, const EnumerationOptions& opts = {});

// Additive instances, alpha in (0, 1]. Certifies SW(A, t) >= alpha SW(A*)
// and total transfer <= n (alpha max_i v_i(A*_i) + 2).
SolveResult algorithm1_additive(const Instance& inst, const Rational& alpha);

enum class CandidateSearch {
  kEnumerate,       // every subset of each remaining optimal bundle
  kGreedyAdditive,  // top items by value; additive instances only
};

inline constexpr int kAlgorithm2MaxItems = 20;

// General monotone instances, alpha in (0, 1/3]. Certifies SW(A, t) >=
// alpha SW(A*) and total transfer <= 2 n^2 (3 alpha max_i v_i(A*_i) + 2).
SolveResult algorithm2_general(const Instance& inst, const Rational& alpha,
                               CandidateSearch search = CandidateSearch::kEnumerate,
                               const EnumerationOptions& opts = {});

// Iterated matching from scratch, bundle reassignment, natural transfers.
// Certifies total transfer <= 2 n^2 and the 1/n welfare floors (utilitarian
// exactly, Nash through products, and rho-mean in double precision when rho
// lies strictly between 0 and 1).
SolveResult subadditive_baseline(const Instance& inst, std::optional<Rational> rho = std::nullopt,
                                 const EnumerationOptions& opts = {});

}  // namespace fairpay

#endif  // FAIRPAY_ALGORITHMS_H_
