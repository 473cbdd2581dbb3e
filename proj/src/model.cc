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

#include "fairpay/model.h"

#include <cmath>
#include <sstream>

#include "fairpay/errors.h"

namespace fairpay {
namespace {

inline constexpr int kCacheCap = 14;

std::string bundle_text(Bundle s) {
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (int g = 0; g < 64; ++g) {
    if (!contains(s, g)) continue;
    if (!first) os << ",";
    os << g;
    first = false;
  }
  os << "}";
  return os.str();
}

[[noreturn]] void violation(int agent, const std::string& what, Bundle s, Bundle t) {
  throw InvariantViolation("agent " + std::to_string(agent) + ": " + what + " (witness " +
                           bundle_text(s) + ", " + bundle_text(t) + ")");
}

// Monotonicity, and the marginal cap when requested, over all bundles.
void check_marginals(const Instance& inst, int agent, bool require_normalized) {
  const int m = inst.items();
  for (Bundle s = 0; s <= inst.all_items(); ++s) {
    Number base = inst.value(agent, s);
    for (int g = 0; g < m; ++g) {
      if (contains(s, g)) continue;
      Number marginal = inst.value(agent, s | singleton(g)) - base;
      if (marginal.sign() < 0) violation(agent, "valuation is not monotone", s, s | singleton(g));
      if (require_normalized && marginal > Number(1)) {
        violation(agent, "marginal value exceeds 1", s, s | singleton(g));
      }
    }
  }
}

void check_additive(const Instance& inst, int agent) {
  if (std::holds_alternative<AdditiveValuation>(inst.valuation(agent))) return;
  for (Bundle s = 1; s <= inst.all_items(); ++s) {
    Number sum;
    for (int g = 0; g < inst.items(); ++g) {
      if (contains(s, g)) sum += inst.value(agent, singleton(g));
    }
    if (sum != inst.value(agent, s)) violation(agent, "valuation is not additive", 0, s);
  }
}

void check_subadditive(const Instance& inst, int agent) {
  if (!std::holds_alternative<TableValuation>(inst.valuation(agent))) return;
  const Bundle all = inst.all_items();
  for (Bundle s = 1; s <= all; ++s) {
    Bundle rest = all & ~s;
    // Disjoint pairs suffice for monotone valuations.
    for (Bundle t = rest; t > s; t = (t - 1) & rest) {
      if (inst.value(agent, s | t) > inst.value(agent, s) + inst.value(agent, t)) {
        violation(agent, "valuation is not subadditive", s, t);
      }
    }
  }
}

void check_matroid_rank(const Instance& inst, int agent) {
  const int m = inst.items();
  for (Bundle s = 0; s <= inst.all_items(); ++s) {
    Number base = inst.value(agent, s);
    for (int g = 0; g < m; ++g) {
      if (contains(s, g)) continue;
      Number mg = inst.value(agent, s | singleton(g)) - base;
      if (mg != Number(0) && mg != Number(1)) {
        violation(agent, "marginal value is not binary", s, s | singleton(g));
      }
      for (int h = 0; h < m; ++h) {
        if (h == g || contains(s, h)) continue;
        Bundle sh = s | singleton(h);
        Number mgh = inst.value(agent, sh | singleton(g)) - inst.value(agent, sh);
        if (mgh > mg) violation(agent, "valuation is not submodular", s, sh);
      }
    }
  }
}

}  // namespace

std::string_view to_string(ValuationClass c) {
  switch (c) {
    case ValuationClass::kAdditive: return "additive";
    case ValuationClass::kSubadditive: return "subadditive";
    case ValuationClass::kMatroidRank: return "matroid_rank";
    case ValuationClass::kMonotone: return "monotone";
  }
  return "monotone";
}

ValuationClass parse_valuation_class(std::string_view text) {
  if (text == "additive") return ValuationClass::kAdditive;
  if (text == "subadditive") return ValuationClass::kSubadditive;
  if (text == "matroid_rank") return ValuationClass::kMatroidRank;
  if (text == "monotone") return ValuationClass::kMonotone;
  throw ParseError("unknown valuation class '" + std::string(text) + "'");
}

Number evaluate(const Valuation& v, Bundle s) {
  if (const auto* add = std::get_if<AdditiveValuation>(&v)) {
    Rational sum;
    for (int g = 0; s != 0; ++g, s >>= 1) {
      if (s & 1U) sum += add->values[g];
    }
    return Number(std::move(sum));
  }
  if (const auto* table = std::get_if<TableValuation>(&v)) return Number(table->entries[s]);
  const auto& sq = std::get<SqrtCardinalityValuation>(v);
  return Number(sq.scale) * Number::sqrt_of(static_cast<std::uint64_t>(bundle_size(s)));
}

Instance::Instance(int agents, int items, std::vector<Valuation> valuations, ValuationClass declared)
    : agents_(agents), items_(items), valuations_(std::move(valuations)), declared_(declared) {
  if (agents_ < 1) throw InvariantViolation("instance needs at least one agent");
  if (items_ < 0 || items_ > kMaxItems) {
    throw InvariantViolation("item count must lie in [0, " + std::to_string(kMaxItems) + "]");
  }
  if (static_cast<int>(valuations_.size()) != agents_) {
    throw InvariantViolation("expected " + std::to_string(agents_) + " valuations, got " +
                             std::to_string(valuations_.size()));
  }
  for (int i = 0; i < agents_; ++i) {
    const Valuation& v = valuations_[i];
    if (const auto* add = std::get_if<AdditiveValuation>(&v)) {
      if (static_cast<int>(add->values.size()) != items_) {
        throw InvariantViolation("agent " + std::to_string(i) + ": additive valuation needs " +
                                 std::to_string(items_) + " values");
      }
    } else if (const auto* table = std::get_if<TableValuation>(&v)) {
      if (items_ > kMaxTableItems) {
        throw InvariantViolation("explicit tables support at most " + std::to_string(kMaxTableItems) +
                                 " items");
      }
      if (table->entries.size() != (std::size_t{1} << items_)) {
        throw InvariantViolation("agent " + std::to_string(i) + ": table must cover all 2^m bundles");
      }
    } else if (sgn(std::get<SqrtCardinalityValuation>(v).scale) < 0) {
      throw InvariantViolation("agent " + std::to_string(i) + ": negative sqrt_cardinality scale");
    }
  }
  if (items_ <= kCacheCap) {
    cache_.resize(agents_);
    for (int i = 0; i < agents_; ++i) {
      if (std::holds_alternative<TableValuation>(valuations_[i])) continue;
      auto& values = cache_[i];
      values.reserve(std::size_t{1} << items_);
      for (Bundle s = 0; s <= all_items(); ++s) values.push_back(evaluate(valuations_[i], s));
    }
  }
}

bool Instance::is_additive() const {
  for (const auto& v : valuations_) {
    if (!std::holds_alternative<AdditiveValuation>(v)) return false;
  }
  return true;
}

const Rational& Instance::item_value(int agent, int item) const {
  return std::get<AdditiveValuation>(valuations_[agent]).values[item];
}

Number Instance::value(int agent, Bundle s) const {
  if (const auto* table = std::get_if<TableValuation>(&valuations_[agent])) return Number(table->entries[s]);
  if (!cache_.empty()) return cache_[agent][s];
  return evaluate(valuations_[agent], s);
}

Instance validate(Instance inst, bool require_normalized) {
  const int m = inst.items();
  for (int i = 0; i < inst.agents(); ++i) {
    const Valuation& v = inst.valuation(i);
    if (const auto* add = std::get_if<AdditiveValuation>(&v)) {
      for (int g = 0; g < m; ++g) {
        if (sgn(add->values[g]) < 0) violation(i, "valuation is not monotone", 0, singleton(g));
        if (require_normalized && add->values[g] > 1) violation(i, "marginal value exceeds 1", 0, singleton(g));
      }
    } else if (const auto* table = std::get_if<TableValuation>(&v)) {
      if (sgn(table->entries[0]) != 0) {
        throw InvariantViolation("agent " + std::to_string(i) + ": nonzero empty-set value");
      }
      if (m <= kValidationCap) check_marginals(inst, i, require_normalized);
    } else if (require_normalized && m > 0 && std::get<SqrtCardinalityValuation>(v).scale > 1) {
      violation(i, "marginal value exceeds 1", 0, singleton(0));
    }
  }
  inst.class_verified_ = false;
  if (m <= kValidationCap) {
    for (int i = 0; i < inst.agents(); ++i) {
      switch (inst.declared_class()) {
        case ValuationClass::kAdditive: check_additive(inst, i); break;
        case ValuationClass::kSubadditive: check_subadditive(inst, i); break;
        case ValuationClass::kMatroidRank: check_matroid_rank(inst, i); break;
        case ValuationClass::kMonotone: break;
      }
    }
    inst.class_verified_ = true;
  }
  return inst;
}

Number max_marginal(const Instance& inst) {
  Number best;
  for (int i = 0; i < inst.agents(); ++i) {
    const Valuation& v = inst.valuation(i);
    if (const auto* add = std::get_if<AdditiveValuation>(&v)) {
      for (const auto& x : add->values) best = max(best, Number(x));
    } else if (std::holds_alternative<SqrtCardinalityValuation>(v)) {
      if (inst.items() > 0) best = max(best, Number(std::get<SqrtCardinalityValuation>(v).scale));
    } else {
      for (Bundle s = 0; s <= inst.all_items(); ++s) {
        Number base = inst.value(i, s);
        for (int g = 0; g < inst.items(); ++g) {
          if (!contains(s, g)) best = max(best, inst.value(i, s | singleton(g)) - base);
        }
      }
    }
  }
  return best;
}

Instance normalize(const Instance& inst) {
  Number mu = max_marginal(inst);
  if (mu.sign() <= 0) return inst;
  if (!mu.is_rational()) throw PreconditionError("normalization by an irrational factor is unsupported");
  const Rational& scale = mu.rational_part();
  std::vector<Valuation> scaled;
  for (const auto& v : inst.valuations()) {
    if (const auto* add = std::get_if<AdditiveValuation>(&v)) {
      AdditiveValuation out = *add;
      for (auto& x : out.values) x /= scale;
      scaled.emplace_back(std::move(out));
    } else if (const auto* table = std::get_if<TableValuation>(&v)) {
      TableValuation out = *table;
      for (auto& x : out.entries) x /= scale;
      scaled.emplace_back(std::move(out));
    } else {
      scaled.emplace_back(SqrtCardinalityValuation{std::get<SqrtCardinalityValuation>(v).scale / scale});
    }
  }
  return validate(Instance(inst.agents(), inst.items(), std::move(scaled), inst.declared_class()));
}

std::vector<int> Allocation::owners(int items) const {
  std::vector<int> out(items, -1);
  for (int i = 0; i < agents(); ++i) {
    for (int g = 0; g < items; ++g) {
      if (contains(bundles[i], g)) out[g] = i;
    }
  }
  return out;
}

Allocation empty_allocation(int agents) { return Allocation{std::vector<Bundle>(agents, 0)}; }

void check_partition(const Instance& inst, const Allocation& a, bool require_full) {
  if (a.agents() != inst.agents()) {
    throw InvariantViolation("allocation has " + std::to_string(a.agents()) + " bundles for " +
                             std::to_string(inst.agents()) + " agents");
  }
  Bundle seen = 0;
  for (int i = 0; i < a.agents(); ++i) {
    if ((a.bundles[i] & ~inst.all_items()) != 0) {
      throw InvariantViolation("bundle of agent " + std::to_string(i) + " names items outside M");
    }
    if ((seen & a.bundles[i]) != 0) {
      throw InvariantViolation("bundles overlap on items " + bundle_text(seen & a.bundles[i]));
    }
    seen |= a.bundles[i];
  }
  if (require_full && seen != inst.all_items()) {
    throw InvariantViolation("items " + bundle_text(inst.all_items() & ~seen) + " are unallocated");
  }
}

Number PaymentVector::total() const {
  Number sum;
  for (const auto& x : amounts) sum += x;
  return sum;
}

Number PaymentVector::total_absolute() const {
  Number sum;
  for (const auto& x : amounts) sum += x.abs();
  return sum;
}

PaymentVector zero_transfers(int agents) {
  return PaymentVector{std::vector<Number>(agents), PaymentKind::kTransfer};
}

void check_payments(const PaymentVector& p, int agents) {
  if (static_cast<int>(p.amounts.size()) != agents) {
    throw InvariantViolation("payment vector has " + std::to_string(p.amounts.size()) + " entries for " +
                             std::to_string(agents) + " agents");
  }
  if (p.kind == PaymentKind::kSubsidy) {
    for (int i = 0; i < agents; ++i) {
      if (p.amounts[i].sign() < 0) throw InvariantViolation("negative subsidy for agent " + std::to_string(i));
    }
  } else if (!p.total().is_zero()) {
    throw InvariantViolation("transfers sum to " + p.total().to_string() + ", not 0");
  }
}

std::vector<Number> utilities(const Instance& inst, const Allocation& a) {
  std::vector<Number> out;
  out.reserve(inst.agents());
  for (int i = 0; i < inst.agents(); ++i) out.push_back(inst.value(i, a.bundles[i]));
  return out;
}

std::vector<Number> utilities(const Instance& inst, const Allocation& a, const PaymentVector& p) {
  std::vector<Number> out = utilities(inst, a);
  for (int i = 0; i < inst.agents(); ++i) out[i] += p.amounts[i];
  return out;
}

Number social_welfare(const Instance& inst, const Allocation& a) {
  Number sum;
  for (int i = 0; i < inst.agents(); ++i) sum += inst.value(i, a.bundles[i]);
  return sum;
}

Number social_welfare(const Instance& inst, const Allocation& a, const PaymentVector& transfers) {
  Number sum;
  for (const auto& u : utilities(inst, a, transfers)) sum += u;
  return sum;
}

Number nash_product(const std::vector<Number>& utilities) {
  Number prod(1);
  for (const auto& u : utilities) {
    if (u.sign() < 0) throw PreconditionError("NSW undefined for negative utility");
    prod *= u;
  }
  return prod;
}

Number nash_product(const Instance& inst, const Allocation& a) { return nash_product(utilities(inst, a)); }

Number nash_product(const Instance& inst, const Allocation& a, const PaymentVector& p) {
  return nash_product(utilities(inst, a, p));
}

double rho_mean(const std::vector<Number>& utilities, const Rational& rho) {
  if (sgn(rho) <= 0 || rho > 1) throw PreconditionError("rho must lie in (0, 1]");
  for (const auto& u : utilities) {
    if (u.sign() < 0) throw PreconditionError("rho-mean undefined for negative utility");
  }
  const double n = static_cast<double>(utilities.size());
  if (rho == 1) {
    Number sum;
    for (const auto& u : utilities) sum += u;
    return (sum / Number(Rational(static_cast<long>(utilities.size())))).to_double();
  }
  const double r = rho.get_d();
  double acc = 0;
  for (const auto& u : utilities) acc += std::pow(u.to_double(), r);
  return std::pow(acc / n, 1.0 / r);
}

double rho_mean(const Instance& inst, const Allocation& a, const Rational& rho) {
  return rho_mean(utilities(inst, a), rho);
}

double rho_mean(const Instance& inst, const Allocation& a, const PaymentVector& p, const Rational& rho) {
  return rho_mean(utilities(inst, a, p), rho);
}

WelfareReport welfare_report(const Instance& inst, const Allocation& a, const PaymentVector& p,
                             std::optional<Rational> rho) {
  WelfareReport r;
  r.utilities = utilities(inst, a, p);
  for (const auto& u : r.utilities) r.sw += u;
  bool nonnegative = true;
  for (const auto& u : r.utilities) nonnegative = nonnegative && u.sign() >= 0;
  if (nonnegative) r.nash_product = nash_product(r.utilities);
  if (rho && sgn(*rho) > 0 && nonnegative) {
    r.rho = rho;
    r.rho_mean = rho_mean(r.utilities, *rho);
  } else if (rho) {
    r.rho = rho;
  }
  return r;
}

}  // namespace fairpay
