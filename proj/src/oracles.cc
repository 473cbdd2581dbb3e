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

#include "fairpay/oracles.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>
#include <thread>

#include "fairpay/envy.h"
#include "fairpay/errors.h"
#include "fairpay/simplex.h"

namespace fairpay {
namespace {

inline constexpr int kTabulationCap = 20;
inline constexpr std::uint64_t kPrunedNodeBudget = 200'000'000;

// Values of every bundle for every agent, when 2^m is small enough.
class ValueTables {
 public:
  explicit ValueTables(const Instance& inst) : inst_(inst) {
    if (inst.items() > kTabulationCap) return;
    tables_.resize(inst.agents());
    for (int i = 0; i < inst.agents(); ++i) {
      tables_[i].reserve(std::size_t{1} << inst.items());
      for (Bundle s = 0; s <= inst.all_items(); ++s) tables_[i].push_back(inst.value(i, s));
    }
  }

  const Number& get(int agent, Bundle s, Number& scratch) const {
    if (!tables_.empty()) return tables_[agent][s];
    scratch = inst_.value(agent, s);
    return scratch;
  }

 private:
  const Instance& inst_;
  std::vector<std::vector<Number>> tables_;
};

void check_cap(const Instance& inst, const EnumerationOptions& opts) {
  if (allocation_count(inst) > opts.cap) {
    throw TooLargeError("enumeration of " + std::to_string(inst.agents()) + "^" + std::to_string(inst.items()) +
                        " allocations exceeds the cap of " + std::to_string(opts.cap));
  }
}

// Splits [0, n^m) into contiguous ranges, one per worker, and feeds each
// worker its allocations in lexicographic order.
template <class Worker, class Make>
std::vector<Worker> parallel_scan(const Instance& inst, const EnumerationOptions& opts, Make make) {
  check_cap(inst, opts);
  const std::uint64_t total = allocation_count(inst);
  const auto count = static_cast<std::uint64_t>(std::clamp<std::uint64_t>(opts.workers, 1, total));
  std::vector<Worker> workers;
  workers.reserve(count);
  for (std::uint64_t k = 0; k < count; ++k) workers.push_back(make());

  const int n = inst.agents();
  const int m = inst.items();
  auto run = [&](std::uint64_t k) {
    const auto lo = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * k / count);
    const auto hi = static_cast<std::uint64_t>(static_cast<unsigned __int128>(total) * (k + 1) / count);
    if (lo >= hi) return;
    Allocation a = allocation_at(inst, lo);
    std::vector<int> owner = a.owners(m);
    for (std::uint64_t index = lo;; ++index) {
      workers[k].visit(a, index);
      if (index + 1 == hi) break;
      // Odometer step; the last item changes fastest.
      for (int g = m - 1; g >= 0; --g) {
        a.bundles[owner[g]] &= ~singleton(g);
        if (++owner[g] < n) {
          a.bundles[owner[g]] |= singleton(g);
          break;
        }
        owner[g] = 0;
        a.bundles[0] |= singleton(g);
      }
    }
  };
  if (count == 1) {
    run(0);
  } else {
    std::vector<std::thread> threads;
    for (std::uint64_t k = 0; k < count; ++k) threads.emplace_back(run, k);
    for (auto& t : threads) t.join();
  }
  return workers;
}

// Best allocation under a strict "better than" on keys; ties keep the
// lowest index, so merging worker results is order-independent.
template <class Key, class Better>
struct BestScan {
  std::optional<Key> key;
  std::uint64_t index = 0;
  Allocation allocation;
  Better better;

  void offer(Key k, std::uint64_t idx, const Allocation& a) {
    if (!key || better(k, *key) || (!better(*key, k) && idx < index)) {
      key = std::move(k);
      index = idx;
      allocation = a;
    }
  }
};

template <class Worker>
Allocation merge_best(std::vector<Worker>& workers) {
  Worker* best = nullptr;
  for (auto& w : workers) {
    if (!w.scan.key) continue;
    if (best == nullptr) {
      best = &w;
      continue;
    }
    const auto& better = w.scan.better;
    if (better(*w.scan.key, *best->scan.key) ||
        (!better(*best->scan.key, *w.scan.key) && w.scan.index < best->scan.index)) {
      best = &w;
    }
  }
  return best->scan.allocation;
}

struct GreaterNumber {
  bool operator()(const Number& a, const Number& b) const { return a > b; }
};

struct NashKey {
  int positive = 0;
  Number product;
};

struct GreaterNash {
  bool operator()(const NashKey& a, const NashKey& b) const {
    if (a.positive != b.positive) return a.positive > b.positive;
    return a.product > b.product;
  }
};

struct GreaterDouble {
  bool operator()(double a, double b) const { return a > b; }
};

// v_i(S) as a function of |S|, when agent i's value depends on size alone.
std::optional<std::vector<Number>> cardinality_profile(const Instance& inst, int agent) {
  const int m = inst.items();
  std::vector<Number> profile;
  for (int k = 0; k <= m; ++k) profile.push_back(inst.value(agent, full_bundle(k)));
  const Valuation& v = inst.valuation(agent);
  if (std::holds_alternative<SqrtCardinalityValuation>(v)) return profile;
  if (const auto* add = std::get_if<AdditiveValuation>(&v)) {
    for (const auto& x : add->values) {
      if (x != add->values.front()) return std::nullopt;
    }
    return profile;
  }
  if (m > kValidationCap) return std::nullopt;
  for (Bundle s = 0; s <= inst.all_items(); ++s) {
    if (inst.value(agent, s) != profile[bundle_size(s)]) return std::nullopt;
  }
  return profile;
}

// Exact Nash optimum over size profiles for instances whose valuations all
// depend on bundle size alone. Profiles are visited in the order of their
// lowest-index allocation (agent 0 takes the first k_0 items, and so on), so
// ties resolve as in the full scan.
std::optional<Allocation> nsw_opt_by_sizes(const Instance& inst) {
  const int n = inst.agents();
  const int m = inst.items();
  std::vector<std::vector<Number>> profiles;
  for (int i = 0; i < n; ++i) {
    auto p = cardinality_profile(inst, i);
    if (!p) return std::nullopt;
    profiles.push_back(std::move(*p));
  }
  std::vector<int> sizes(n, 0);
  std::optional<NashKey> best;
  std::vector<int> best_sizes;
  GreaterNash better;
  std::function<void(int, int)> rec = [&](int agent, int left) {
    if (agent == n - 1) {
      sizes[agent] = left;
      NashKey key{0, Number(1)};
      for (int i = 0; i < n; ++i) {
        const Number& u = profiles[i][sizes[i]];
        if (u.sign() > 0) {
          ++key.positive;
          key.product *= u;
        }
      }
      if (!best || better(key, *best)) {
        best = std::move(key);
        best_sizes = sizes;
      }
      return;
    }
    for (int k = left; k >= 0; --k) {
      sizes[agent] = k;
      rec(agent + 1, left - k);
    }
  };
  rec(0, m);
  Allocation a = empty_allocation(n);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < best_sizes[i]; ++k) a.bundles[i] |= singleton(next++);
  }
  return a;
}

Number welfare_of(const Instance& inst, const Allocation& a, WelfareKind kind) {
  return kind == WelfareKind::kSocial ? social_welfare(inst, a) : nash_product(inst, a);
}

Number power(const Rational& base, int exp) {
  Rational out = 1;
  for (int k = 0; k < exp; ++k) out *= base;
  return Number(out);
}

}  // namespace

std::uint64_t allocation_count(const Instance& inst) {
  unsigned __int128 total = 1;
  for (int g = 0; g < inst.items(); ++g) {
    total *= static_cast<unsigned>(inst.agents());
    if (total > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

Allocation allocation_at(const Instance& inst, std::uint64_t index) {
  Allocation a = empty_allocation(inst.agents());
  const auto n = static_cast<std::uint64_t>(inst.agents());
  for (int g = inst.items() - 1; g >= 0; --g) {
    a.bundles[index % n] |= singleton(g);
    index /= n;
  }
  return a;
}

std::uint64_t allocation_index(const Instance& inst, const Allocation& a) {
  std::vector<int> owner = a.owners(inst.items());
  std::uint64_t index = 0;
  for (int g = 0; g < inst.items(); ++g) index = index * inst.agents() + owner[g];
  return index;
}

void for_each_allocation(const Instance& inst, const std::function<void(const Allocation&)>& visit,
                         const EnumerationOptions& opts) {
  struct Worker {
    const std::function<void(const Allocation&)>* fn;
    void visit(const Allocation& a, std::uint64_t) { (*fn)(a); }
  };
  EnumerationOptions serial = opts;
  serial.workers = 1;
  parallel_scan<Worker>(inst, serial, [&] { return Worker{&visit}; });
}

Allocation brute_sw_opt(const Instance& inst, const EnumerationOptions& opts) {
  const int n = inst.agents();
  if (inst.is_additive()) {
    Allocation a = empty_allocation(n);
    for (int g = 0; g < inst.items(); ++g) {
      int best = 0;
      for (int i = 1; i < n; ++i) {
        if (inst.item_value(i, g) > inst.item_value(best, g)) best = i;
      }
      a.bundles[best] |= singleton(g);
    }
    return a;
  }
  ValueTables values(inst);
  struct Worker {
    const ValueTables* values;
    int n;
    BestScan<Number, GreaterNumber> scan;
    Number scratch;
    void visit(const Allocation& a, std::uint64_t index) {
      Number sw;
      for (int i = 0; i < n; ++i) sw += values->get(i, a.bundles[i], scratch);
      scan.offer(std::move(sw), index, a);
    }
  };
  auto workers = parallel_scan<Worker>(inst, opts, [&] { return Worker{&values, n, {}, {}}; });
  return merge_best(workers);
}

Allocation brute_nsw_opt(const Instance& inst, const EnumerationOptions& opts) {
  if (allocation_count(inst) > opts.cap) {
    if (auto by_sizes = nsw_opt_by_sizes(inst)) return *by_sizes;
  }
  check_cap(inst, opts);
  ValueTables values(inst);
  const int n = inst.agents();
  struct Worker {
    const ValueTables* values;
    int n;
    BestScan<NashKey, GreaterNash> scan;
    Number scratch;
    void visit(const Allocation& a, std::uint64_t index) {
      NashKey key{0, Number(1)};
      for (int i = 0; i < n; ++i) {
        const Number& u = values->get(i, a.bundles[i], scratch);
        if (u.sign() > 0) {
          ++key.positive;
          key.product *= u;
        }
      }
      scan.offer(std::move(key), index, a);
    }
  };
  auto workers = parallel_scan<Worker>(inst, opts, [&] { return Worker{&values, n, {}, {}}; });
  return merge_best(workers);
}

Allocation brute_rho_opt(const Instance& inst, const Rational& rho, const EnumerationOptions& opts) {
  ValueTables values(inst);
  const int n = inst.agents();
  struct Worker {
    const ValueTables* values;
    int n;
    Rational rho;
    BestScan<double, GreaterDouble> scan;
    Number scratch;
    void visit(const Allocation& a, std::uint64_t index) {
      std::vector<Number> u;
      u.reserve(n);
      for (int i = 0; i < n; ++i) u.push_back(values->get(i, a.bundles[i], scratch));
      scan.offer(rho_mean(u, rho), index, a);
    }
  };
  auto workers = parallel_scan<Worker>(inst, opts, [&] { return Worker{&values, n, rho, {}, {}}; });
  return merge_best(workers);
}

std::vector<Allocation> enumerate_envy_freeable(const Instance& inst, const EnumerationOptions& opts) {
  struct Worker {
    const Instance* inst;
    std::vector<Allocation> found;
    void visit(const Allocation& a, std::uint64_t) {
      if (is_envy_freeable(*inst, a).envy_freeable) found.push_back(a);
    }
  };
  auto workers = parallel_scan<Worker>(inst, opts, [&] { return Worker{&inst, {}}; });
  std::vector<Allocation> out;
  for (auto& w : workers) {
    for (auto& a : w.found) out.push_back(std::move(a));
  }
  return out;
}

TransferOptimum min_total_transfer(const Instance& inst, const Allocation& a) {
  const int n = inst.agents();
  EnvyGraph g = build_envy_graph(inst, a);
  PaymentVector subsidies = min_subsidies(g);  // throws when infeasible

  // t_i = p_i - q_i with p, q >= 0; minimize sum (p_i + q_i).
  LinearProgram lp;
  lp.variables = 2 * n;
  lp.objective.assign(2 * n, Number(1));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      std::vector<Number> coef(2 * n);
      coef[i] += 1;
      coef[n + i] -= 1;
      coef[j] -= 1;
      coef[n + j] += 1;
      lp.rows.push_back({std::move(coef), Relation::kGreaterEqual, g.weight(i, j)});
    }
  }
  std::vector<Number> balance(2 * n);
  for (int i = 0; i < n; ++i) {
    balance[i] = 1;
    balance[n + i] = -1;
  }
  lp.rows.push_back({std::move(balance), Relation::kEqual, Number()});
  LpSolution sol = solve_lp(lp);
  if (sol.status != LpStatus::kOptimal) throw std::logic_error("transfer program not solved to optimality");

  TransferOptimum out;
  out.transfers.kind = PaymentKind::kTransfer;
  for (int i = 0; i < n; ++i) out.transfers.amounts.push_back(sol.x[i] - sol.x[n + i]);
  out.total = out.transfers.total_absolute();

  // The natural transfers are feasible, so they bound the optimum above.
  out.natural_total = natural_transfers(subsidies).total_absolute();
  if (out.total > out.natural_total) throw std::logic_error("transfer program above the natural transfers");
  if (!out.transfers.total().is_zero() || !is_envy_free(inst, a, out.transfers).envy_free) {
    throw std::logic_error("transfer program returned an infeasible point");
  }
  return out;
}

TransferAtWelfare min_transfer_at_welfare(const Instance& inst, const Rational& alpha, WelfareKind welfare,
                                          const EnumerationOptions& opts) {
  if (sgn(alpha) < 0) throw PreconditionError("alpha must be nonnegative");
  const int n = inst.agents();
  TransferAtWelfare out;

  auto consider = [&](const Allocation& a) {
    ++out.allocations_examined;
    if (!is_envy_freeable(inst, a).envy_freeable) return;
    Number total = min_total_transfer(inst, a).total;
    if (!out.value || total < *out.value) {
      out.value = std::move(total);
      out.witness = a;
    }
  };

  if (welfare == WelfareKind::kSocial && inst.is_additive()) {
    const Number threshold = Number(alpha) * social_welfare(inst, brute_sw_opt(inst));
    const int m = inst.items();
    // best_rest[g] = sum over items >= g of the largest item value.
    std::vector<Number> best_rest(m + 1);
    for (int g = m - 1; g >= 0; --g) {
      Rational top = 0;
      for (int i = 0; i < n; ++i) top = std::max(top, inst.item_value(i, g));
      best_rest[g] = best_rest[g + 1] + Number(top);
    }
    Allocation a = empty_allocation(n);
    std::uint64_t nodes = 0;
    bool done = false;
    std::function<void(int, const Number&)> dfs = [&](int g, const Number& sw) {
      if (done) return;
      if (++nodes > kPrunedNodeBudget) throw TooLargeError("pruned scan exceeded its node budget");
      if (sw + best_rest[g] < threshold) return;
      if (g == m) {
        consider(a);
        if (out.value && out.value->is_zero()) done = true;
        return;
      }
      for (int i = 0; i < n && !done; ++i) {
        a.bundles[i] |= singleton(g);
        dfs(g + 1, sw + Number(inst.item_value(i, g)));
        a.bundles[i] &= ~singleton(g);
      }
    };
    dfs(0, Number());
    return out;
  }

  check_cap(inst, opts);
  const Allocation best = welfare == WelfareKind::kSocial ? brute_sw_opt(inst, opts) : brute_nsw_opt(inst, opts);
  const Number optimum = welfare_of(inst, best, welfare);
  const Number threshold = welfare == WelfareKind::kSocial ? Number(alpha) * optimum : power(alpha, n) * optimum;
  ValueTables values(inst);
  Number scratch;
  for_each_allocation(
      inst,
      [&](const Allocation& a) {
        if (out.value && out.value->is_zero()) return;
        Number w = welfare == WelfareKind::kSocial ? Number() : Number(1);
        for (int i = 0; i < n; ++i) {
          const Number& u = values.get(i, a.bundles[i], scratch);
          if (welfare == WelfareKind::kSocial) {
            w += u;
          } else {
            w *= u;
          }
        }
        if (w >= threshold) consider(a);
      },
      opts);
  return out;
}

}  // namespace fairpay
