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

#include "fairpay/algorithms.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fairpay/envy.h"
#include "fairpay/errors.h"
#include "fairpay/matching.h"

namespace fairpay {
namespace {

std::string decimal(double x) {
  if (std::isinf(x)) return "inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

Number n_squared(int n) { return Number(static_cast<long>(n) * n); }

// Minimum subsidies, natural transfers, welfare report. The envy-freeness
// of the outcome is re-checked here; a failure is a bug, not a bound.
SolveResult finish(const Instance& inst, std::string algorithm, Allocation a,
                   std::optional<Rational> alpha = std::nullopt, std::optional<Rational> rho = std::nullopt) {
  SolveResult r;
  r.algorithm = std::move(algorithm);
  r.alpha = std::move(alpha);
  r.rho = std::move(rho);
  r.subsidies = min_subsidies(inst, a);
  r.transfers = natural_transfers(r.subsidies);
  r.allocation = std::move(a);
  if (!is_envy_free(inst, r.allocation, r.transfers).envy_free) {
    throw std::logic_error("natural transfers left envy");
  }
  r.report = welfare_report(inst, r.allocation, r.transfers, r.rho);
  return r;
}

// NSW(result)/NSW(reference) >= factor * e^{-1/e}, through exact products.
Certificate nash_ratio_certificate(std::string name, const std::optional<Number>& product, const Number& reference,
                                   int n, double factor) {
  Certificate c;
  c.name = std::move(name);
  c.approx = true;
  const double bound = factor * kNashRatioBound;
  c.rhs = decimal(bound);
  if (!product) {
    c.lhs = "undefined";
    return c;
  }
  if (reference.is_zero()) {
    c.lhs = "inf";
    c.holds = true;
    return c;
  }
  const double ratio = std::pow((*product / reference).to_double(), 1.0 / n);
  c.lhs = decimal(ratio);
  c.holds = ratio >= bound * (1 - kNashRatioTolerance);
  return c;
}

Number max_optimal_value(const Instance& inst, const Allocation& opt) {
  Number best;
  for (int i = 0; i < inst.agents(); ++i) best = max(best, inst.value(i, opt.bundles[i]));
  return best;
}

void require_additive(const Instance& inst, const char* who) {
  if (inst.declared_class() != ValuationClass::kAdditive || !(inst.is_additive() || inst.class_verified())) {
    throw PreconditionError(std::string(who) + " requires an additive instance");
  }
}

void require_alpha(const Rational& alpha, const Rational& upper, const char* who) {
  if (sgn(alpha) <= 0 || alpha > upper) {
    throw PreconditionError(std::string(who) + ": alpha must lie in (0, " + to_string(upper) + "]");
  }
}

SolveResult bounded_envy_pipeline(const Instance& inst, const Allocation& base, const Number& b,
                                  std::string algorithm) {
  Allocation a = reassign_bundles(inst, base).allocation;
  SolveResult r = finish(inst, std::move(algorithm), std::move(a));
  const int n = inst.agents();
  r.certificates.push_back(certify_le("total_transfer <= 2*b*n^2", r.transfers.total_absolute(),
                                      Number(2) * b * n_squared(n)));
  Number max_subsidy;
  for (const auto& s : r.subsidies.amounts) max_subsidy = max(max_subsidy, s);
  r.certificates.push_back(certify_le("max_subsidy <= 2*b*(n-1)", max_subsidy, Number(2) * b * Number(n - 1)));
  return r;
}

SolveResult nash_pipeline(const Instance& inst, const Allocation& base, const Number& optimum_product,
                          double factor, std::string algorithm) {
  SolveResult r = bounded_envy_pipeline(inst, base, Number(1), std::move(algorithm));
  // Only the transfer-total certificate of the b = 1 pipeline is claimed.
  r.certificates.erase(r.certificates.begin() + 1);
  r.certificates.front().name = "total_transfer <= 2*n^2";
  r.certificates.push_back(nash_ratio_certificate("nsw_ratio >= factor*e^(-1/e)", r.report.nash_product,
                                                  optimum_product, inst.agents(), factor));
  return r;
}

}  // namespace

bool SolveResult::all_hold() const { return first_failure() == nullptr; }

const Certificate* SolveResult::first_failure() const {
  for (const auto& c : certificates) {
    if (!c.holds) return &c;
  }
  return nullptr;
}

Certificate certify_le(std::string name, const Number& lhs, const Number& rhs) {
  return Certificate{std::move(name), lhs.to_string(), rhs.to_string(), lhs <= rhs, false};
}

SolveResult make_envy_free_from_bounded(const Instance& inst, const Allocation& base, const Rational& b,
                                        const EnumerationOptions&) {
  check_partition(inst, base);
  if (sgn(b) < 0) throw PreconditionError("b must be nonnegative");
  if (auto pair = worst_envy_pair(inst, base)) {
    Number envy = bounded_envy(inst, base);
    if (envy > Number(b)) {
      throw PreconditionError("allocation is not " + to_string(b) + "-bounded: agent " +
                              std::to_string(pair->first) + " envies agent " + std::to_string(pair->second) +
                              " by " + envy.to_string());
    }
  }
  SolveResult r = bounded_envy_pipeline(inst, base, Number(b), "bounded");
  return r;
}

Allocation envy_cycles(const Instance& inst, Bundle items, const Allocation& start) {
  check_partition(inst, start, /*require_full=*/false);
  for (Bundle s : start.bundles) {
    if ((s & items) != 0) throw PreconditionError("envy_cycles: items overlap the start allocation");
  }
  const int n = inst.agents();
  Allocation a = start;
  auto envies = [&](int i, int j) { return inst.value(i, a.bundles[j]) > inst.value(i, a.bundles[i]); };
  for (int g = 0; g < inst.items(); ++g) {
    if (!contains(items, g)) continue;
    while (true) {
      // Among unenvied agents, the one gaining most from g; ties to the lowest index.
      int source = -1;
      Number gain;
      for (int j = 0; j < n; ++j) {
        bool envied = false;
        for (int i = 0; i < n && !envied; ++i) envied = i != j && envies(i, j);
        if (envied) continue;
        Number mine = inst.value(j, a.bundles[j] | singleton(g)) - inst.value(j, a.bundles[j]);
        if (source < 0 || mine > gain) {
          source = j;
          gain = std::move(mine);
        }
      }
      if (source >= 0) {
        a.bundles[source] |= singleton(g);
        break;
      }
      // Every agent is envied: follow lowest-index enviers until a repeat.
      std::vector<int> position(n, -1);
      std::vector<int> walk;
      int cur = 0;
      while (position[cur] < 0) {
        position[cur] = static_cast<int>(walk.size());
        walk.push_back(cur);
        int next = 0;
        while (next == cur || !envies(next, cur)) ++next;
        cur = next;
      }
      // walk[k+1] envies walk[k] along the cycle; each takes what it envies.
      std::vector<int> cycle(walk.begin() + position[cur], walk.end());
      std::vector<Bundle> old = a.bundles;
      const auto len = cycle.size();
      for (std::size_t k = 0; k < len; ++k) a.bundles[cycle[(k + 1) % len]] = old[cycle[k]];
    }
  }
  return a;
}

SolveResult nsw_reassign(const Instance& inst, const Allocation& base) {
  check_partition(inst, base);
  Allocation a = reassign_bundles(inst, base).allocation;
  SolveResult r = finish(inst, "nsw-reassign", std::move(a));
  r.certificates.push_back(nash_ratio_certificate("nsw_ratio_vs_base >= e^(-1/e)", r.report.nash_product,
                                                  nash_product(inst, base), inst.agents(), 1.0));
  return r;
}

SolveResult nsw_pipeline_additive(const Instance& inst, const NashPipelineOptions& opts) {
  require_additive(inst, "nsw_pipeline_additive");
  if (sgn(opts.approximation) <= 0 || opts.approximation > 1) {
    throw PreconditionError("approximation factor must lie in (0, 1]");
  }
  std::optional<Allocation> optimum;
  if (allocation_count(inst) <= opts.enumeration.cap) optimum = brute_nsw_opt(inst, opts.enumeration);
  Allocation base;
  if (opts.ef1_input) {
    check_partition(inst, *opts.ef1_input);
    if (!is_ef1(inst, *opts.ef1_input)) throw PreconditionError("supplied allocation is not EF1");
    base = *opts.ef1_input;
  } else {
    if (!optimum) throw TooLargeError("Nash optimum out of enumeration range; supply an EF1 allocation");
    base = *optimum;
    if (!is_ef1(inst, base)) throw TheoremViolation("Nash-optimal allocation of an additive instance is not EF1");
  }
  double factor = opts.approximation.get_d() * (opts.converted ? 0.5 : 1.0);
  Number reference = optimum ? nash_product(inst, *optimum) : nash_product(inst, base);
  SolveResult r = nash_pipeline(inst, base, reference, factor, "nsw");
  r.alpha = opts.approximation;
  return r;
}

SolveResult nsw_pipeline_matroid(const Instance& inst, const EnumerationOptions& opts) {
  if (inst.declared_class() != ValuationClass::kMatroidRank || !inst.class_verified()) {
    throw PreconditionError("nsw_pipeline_matroid requires a verified matroid-rank instance");
  }
  Allocation base = brute_nsw_opt(inst, opts);
  if (!is_ef1(inst, base)) throw TheoremViolation("Nash-optimal allocation of a matroid-rank instance is not EF1");
  return nash_pipeline(inst, base, nash_product(inst, base), 1.0, "nsw-matroid");
}

SolveResult algorithm1_additive(const Instance& inst, const Rational& alpha) {
  require_additive(inst, "algorithm1_additive");
  require_alpha(alpha, Rational(1), "algorithm1_additive");
  const int n = inst.agents();
  const int m = inst.items();
  const Allocation optimum = brute_sw_opt(inst);

  Allocation x = empty_allocation(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> items;
    for (int g = 0; g < m; ++g) {
      if (contains(optimum.bundles[i], g)) items.push_back(g);
    }
    std::stable_sort(items.begin(), items.end(),
                     [&](int g, int h) { return inst.item_value(i, g) > inst.item_value(i, h); });
    const Rational target = alpha * inst.value(i, optimum.bundles[i]).rational_part();
    Rational have = 0;
    for (int g : items) {
      if (have >= target) break;
      x.bundles[i] |= singleton(g);
      have += inst.item_value(i, g);
    }
  }
  Bundle taken = 0;
  for (Bundle b : x.bundles) taken |= b;
  Allocation a = iterated_matching(inst, inst.all_items() & ~taken, x);

  SolveResult r = finish(inst, "alg1", std::move(a), alpha);
  const Number opt_sw = social_welfare(inst, optimum);
  r.certificates.push_back(Certificate{"SW(A,t) >= alpha*SW(A*)", r.report.sw.to_string(),
                                       (Number(alpha) * opt_sw).to_string(), r.report.sw >= Number(alpha) * opt_sw,
                                       false});
  r.certificates.push_back(
      certify_le("total_transfer <= n*(alpha*max_i v_i(A*_i) + 2)", r.transfers.total_absolute(),
                 Number(n) * (Number(alpha) * max_optimal_value(inst, optimum) + Number(2))));
  return r;
}

SolveResult algorithm2_general(const Instance& inst, const Rational& alpha, CandidateSearch search,
                               const EnumerationOptions& opts) {
  require_alpha(alpha, Rational(1, 3), "algorithm2_general");
  if (inst.items() > kAlgorithm2MaxItems) {
    throw PreconditionError("algorithm2_general supports at most " + std::to_string(kAlgorithm2MaxItems) + " items");
  }
  if (search == CandidateSearch::kGreedyAdditive && !inst.is_additive()) {
    throw PreconditionError("greedy candidate search needs additive valuations");
  }
  const int n = inst.agents();
  const int m = inst.items();
  const Allocation optimum = brute_sw_opt(inst, opts);

  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::vector<Number> opt_value(n);
  for (int i = 0; i < n; ++i) opt_value[i] = inst.value(i, optimum.bundles[i]);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return opt_value[a] > opt_value[b]; });

  Allocation b = empty_allocation(n);
  Bundle assigned = 0;
  for (int k = 0; k < n; ++k) {
    const Number threshold = Number(3 * alpha) * opt_value[order[k]];
    auto recipient = [&](Bundle set) {
      for (int j = 0; j < n; ++j) {
        if (b.bundles[j] == 0 && inst.value(j, set) >= threshold) return j;
      }
      return -1;
    };
    std::optional<Bundle> best;
    auto offer = [&](Bundle set) {
      if (best && (bundle_size(set) > bundle_size(*best) ||
                   (bundle_size(set) == bundle_size(*best) && set >= *best))) {
        return;
      }
      if (recipient(set) >= 0) best = set;
    };
    for (int i = 0; i < n; ++i) {
      const Bundle avail = optimum.bundles[i] & ~assigned;
      if (search == CandidateSearch::kEnumerate) {
        for (Bundle set = avail;; set = (set - 1) & avail) {
          offer(set);
          if (set == 0) break;
        }
      } else {
        for (int j = 0; j < n; ++j) {
          if (b.bundles[j] != 0) continue;
          std::vector<int> items;
          for (int g = 0; g < m; ++g) {
            if (contains(avail, g)) items.push_back(g);
          }
          std::stable_sort(items.begin(), items.end(),
                           [&](int g, int h) { return inst.item_value(j, g) > inst.item_value(j, h); });
          Bundle set = 0;
          for (std::size_t t = 0; t <= items.size(); ++t) {
            if (inst.value(j, set) >= threshold) {
              offer(set);
              break;
            }
            if (t < items.size()) set |= singleton(items[t]);
          }
        }
      }
    }
    if (best) {
      b.bundles[recipient(*best)] = *best;
      assigned |= *best;
    }
  }
  Allocation filled = envy_cycles(inst, inst.all_items() & ~assigned, b);
  Allocation a = reassign_bundles(inst, filled).allocation;

  SolveResult r = finish(inst, "alg2", std::move(a), alpha);
  const Number opt_sw = social_welfare(inst, optimum);
  r.certificates.push_back(Certificate{"SW(A,t) >= alpha*SW(A*)", r.report.sw.to_string(),
                                       (Number(alpha) * opt_sw).to_string(), r.report.sw >= Number(alpha) * opt_sw,
                                       false});
  r.certificates.push_back(certify_le(
      "total_transfer <= 2*n^2*(3*alpha*max_i v_i(A*_i) + 2)", r.transfers.total_absolute(),
      Number(2) * n_squared(n) * (Number(3 * alpha) * max_optimal_value(inst, optimum) + Number(2))));
  return r;
}

SolveResult subadditive_baseline(const Instance& inst, std::optional<Rational> rho, const EnumerationOptions& opts) {
  if (inst.declared_class() == ValuationClass::kMonotone) {
    throw PreconditionError("subadditive_baseline requires an additive, subadditive or matroid-rank instance");
  }
  if (rho && (sgn(*rho) < 0 || *rho > 1)) throw PreconditionError("rho must lie in [0, 1]");
  const int n = inst.agents();
  Allocation y = iterated_matching(inst, inst.all_items(), empty_allocation(n));
  Allocation a = reassign_bundles(inst, y).allocation;
  SolveResult r = finish(inst, "baseline", std::move(a), std::nullopt, rho);
  r.certificates.push_back(certify_le("total_transfer <= 2*n^2", r.transfers.total_absolute(), n_squared(n) * 2));
  if (inst.is_additive()) {
    Number max_subsidy;
    for (const auto& s : r.subsidies.amounts) max_subsidy = max(max_subsidy, s);
    r.certificates.push_back(certify_le("max_subsidy <= 2*(n-1)", max_subsidy, Number(2 * (n - 1))));
  }
  const bool enumerable = allocation_count(inst) <= opts.cap;
  if (inst.is_additive() || enumerable) {
    const Number opt_sw = social_welfare(inst, brute_sw_opt(inst, opts));
    const Number floor = opt_sw / Number(n);
    r.certificates.push_back(Certificate{"SW(A,t) >= SW(A*)/n", r.report.sw.to_string(), floor.to_string(),
                                         r.report.sw >= floor, false});
  }
  if (enumerable) {
    const Number opt_product = nash_product(inst, brute_nsw_opt(inst, opts));
    Number scale(1);
    for (int i = 0; i < n; ++i) scale /= Number(n);
    const Number floor = scale * opt_product;
    const auto& achieved = r.report.nash_product;
    r.certificates.push_back(Certificate{"nash_product(A,t) >= nash_product(A*)/n^n",
                                         achieved ? achieved->to_string() : "undefined", floor.to_string(),
                                         achieved && *achieved >= floor, false});
    if (rho && sgn(*rho) > 0 && *rho < 1) {
      const double achieved = r.report.rho_mean.value_or(-1.0);
      const double floor_rho = rho_mean(inst, brute_rho_opt(inst, *rho, opts), *rho) / n;
      r.certificates.push_back(Certificate{"W^rho(A,t) >= W^rho(A*)/n", decimal(achieved), decimal(floor_rho),
                                           achieved >= floor_rho * (1 - kNashRatioTolerance), true});
    }
  }
  return r;
}

}  // namespace fairpay
