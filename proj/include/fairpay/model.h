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

// Instances, valuation oracles, allocations, payments and welfare.

#ifndef FAIRPAY_MODEL_H_
#define FAIRPAY_MODEL_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fairpay/number.h"

namespace fairpay {

// A set of items as a bitmask over M = {0, ..., m-1}.
using Bundle = std::uint64_t;

inline constexpr int kMaxItems = 63;
inline constexpr int kMaxTableItems = 20;
// Full class verification (monotonicity, subadditivity, ...) runs only up to
// this many items; larger instances keep their declared class unverified.
inline constexpr int kValidationCap = 16;

inline int bundle_size(Bundle s) { return __builtin_popcountll(s); }
inline bool contains(Bundle s, int item) { return (s >> item) & 1U; }
inline Bundle singleton(int item) { return Bundle{1} << item; }
inline Bundle full_bundle(int m) { return m == 64 ? ~Bundle{0} : (Bundle{1} << m) - 1; }

enum class ValuationClass { kAdditive, kSubadditive, kMatroidRank, kMonotone };

std::string_view to_string(ValuationClass c);
ValuationClass parse_valuation_class(std::string_view text);

struct AdditiveValuation {
  std::vector<Rational> values;  // one per item
};

struct TableValuation {
  std::vector<Rational> entries;  // indexed by bundle, 2^m entries
};

// v(S) = scale * sqrt(|S|).
struct SqrtCardinalityValuation {
  Rational scale = 1;
};

using Valuation = std::variant<AdditiveValuation, TableValuation, SqrtCardinalityValuation>;

Number evaluate(const Valuation& v, Bundle s);

class Instance {
 public:
  // Checks shapes and item caps only. Use validate() (or load_instance) for
  // the semantic invariants.
  Instance(int agents, int items, std::vector<Valuation> valuations, ValuationClass declared);

  int agents() const { return agents_; }
  int items() const { return items_; }
  Bundle all_items() const { return full_bundle(items_); }
  ValuationClass declared_class() const { return declared_; }
  bool class_verified() const { return class_verified_; }
  const Valuation& valuation(int agent) const { return valuations_[agent]; }
  const std::vector<Valuation>& valuations() const { return valuations_; }

  // True when every agent has an additive oracle.
  bool is_additive() const;
  // Item value under an additive oracle; precondition: that agent is additive.
  const Rational& item_value(int agent, int item) const;

  Number value(int agent, Bundle s) const;

 private:
  friend Instance validate(Instance inst, bool require_normalized);

  int agents_;
  int items_;
  std::vector<Valuation> valuations_;
  ValuationClass declared_;
  bool class_verified_ = false;
  // Per-agent values of every bundle; filled for table oracles and small m.
  std::vector<std::vector<Number>> cache_;
};

// Checks v(empty) = 0, monotonicity, the marginal cap (when
// require_normalized) and, for m <= kValidationCap, the declared class.
// Throws InvariantViolation naming a witness. Returns the instance with its
// class_verified flag set.
Instance validate(Instance inst, bool require_normalized = true);

// Largest marginal value v_i(S + g) - v_i(S) over agents, bundles and items.
Number max_marginal(const Instance& inst);

// Divides every valuation by the largest marginal. All-zero instances are
// returned unchanged.
Instance normalize(const Instance& inst);

struct Allocation {
  std::vector<Bundle> bundles;

  int agents() const { return static_cast<int>(bundles.size()); }
  bool operator==(const Allocation&) const = default;
  // Owner of each item, -1 when unallocated.
  std::vector<int> owners(int items) const;
};

Allocation empty_allocation(int agents);
// Throws InvariantViolation unless bundles are pairwise disjoint and, when
// require_full, cover all items.
void check_partition(const Instance& inst, const Allocation& a, bool require_full = true);

enum class PaymentKind { kSubsidy, kTransfer };

struct PaymentVector {
  std::vector<Number> amounts;
  PaymentKind kind = PaymentKind::kTransfer;

  Number total() const;
  // Sum of |p_i|.
  Number total_absolute() const;
};

PaymentVector zero_transfers(int agents);
// Throws InvariantViolation if a subsidy entry is negative or a transfer
// vector does not sum to zero.
void check_payments(const PaymentVector& p, int agents);

std::vector<Number> utilities(const Instance& inst, const Allocation& a);
std::vector<Number> utilities(const Instance& inst, const Allocation& a, const PaymentVector& p);

Number social_welfare(const Instance& inst, const Allocation& a);
Number social_welfare(const Instance& inst, const Allocation& a, const PaymentVector& transfers);

// Product of utilities (NSW^n). Throws PreconditionError on a negative utility.
Number nash_product(const Instance& inst, const Allocation& a);
Number nash_product(const Instance& inst, const Allocation& a, const PaymentVector& p);
Number nash_product(const std::vector<Number>& utilities);

// ((1/n) sum u_i^rho)^(1/rho) for rho in (0, 1]. rho = 1 is evaluated
// exactly and converted at the end.
double rho_mean(const std::vector<Number>& utilities, const Rational& rho);
double rho_mean(const Instance& inst, const Allocation& a, const Rational& rho);
double rho_mean(const Instance& inst, const Allocation& a, const PaymentVector& p, const Rational& rho);

struct WelfareReport {
  Number sw;
  std::optional<Number> nash_product;  // empty when some utility is negative
  std::optional<Rational> rho;
  std::optional<double> rho_mean;
  std::vector<Number> utilities;
};

WelfareReport welfare_report(const Instance& inst, const Allocation& a, const PaymentVector& p,
                             std::optional<Rational> rho = std::nullopt);

}  // namespace fairpay

#endif  // FAIRPAY_MODEL_H_
