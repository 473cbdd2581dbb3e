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

#include "fairpay/envy.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fairpay/errors.h"

namespace fairpay {

EnvyGraph build_envy_graph(const Instance& inst, const Allocation& a) {
  check_partition(inst, a, /*require_full=*/false);
  const int n = inst.agents();
  EnvyGraph g{n, std::vector<Number>(static_cast<std::size_t>(n) * n), a};
  for (int i = 0; i < n; ++i) {
    Number own = inst.value(i, a.bundles[i]);
    for (int j = 0; j < n; ++j) {
      if (i != j) g.weights[i * n + j] = inst.value(i, a.bundles[j]) - own;
    }
  }
  return g;
}

std::vector<Number> relax_longest_paths(const EnvyGraph& g, int rounds) {
  const int n = g.agents;
  std::vector<Number> l(n);
  for (int r = 0; r < rounds; ++r) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Number cand = g.weight(i, j) + l[j];
        if (cand > l[i]) l[i] = std::move(cand);
      }
    }
  }
  return l;
}

EnvyFreeabilityCertificate is_envy_freeable(const EnvyGraph& g) {
  const int n = g.agents;
  std::vector<Number> l(n);
  std::vector<int> succ(n, -1);
  int last = -1;
  // Rounds 1..n-1 settle every path value; a change in round n means a
  // positive cycle.
  for (int round = 0; round < n; ++round) {
    last = -1;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        Number cand = g.weight(i, j) + l[j];
        if (cand > l[i]) {
          l[i] = std::move(cand);
          succ[i] = j;
          if (last < 0) last = i;
        }
      }
    }
    if (last < 0) break;
  }
  EnvyFreeabilityCertificate cert;
  if (last < 0) {
    cert.envy_freeable = true;
    cert.longest_path = std::move(l);
    return cert;
  }
  // Cycles of the successor graph have positive weight; walking n steps
  // from a vertex updated in the last round lands on one.
  int v = last;
  for (int k = 0; k < n && v >= 0; ++k) v = succ[v];
  if (v < 0) throw std::logic_error("successor walk left the graph");
  std::vector<int> cycle{v};
  for (int u = succ[v]; u != v; u = succ[u]) cycle.push_back(u);
  std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
  Number weight;
  for (std::size_t k = 0; k < cycle.size(); ++k) {
    weight += g.weight(cycle[k], cycle[(k + 1) % cycle.size()]);
  }
  if (weight.sign() <= 0) throw std::logic_error("successor cycle without positive weight");
  cert.cycle = std::move(cycle);
  cert.cycle_weight = std::move(weight);
  return cert;
}

EnvyFreeabilityCertificate is_envy_freeable(const Instance& inst, const Allocation& a) {
  return is_envy_freeable(build_envy_graph(inst, a));
}

bool is_envy_freeable_by_permutation(const Instance& inst, const Allocation& a) {
  const int n = inst.agents();
  if (n > 10) throw PreconditionError("permutation check supports at most 10 agents");
  std::vector<Number> value(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) value[i * n + j] = inst.value(i, a.bundles[j]);
  }
  Number current;
  for (int i = 0; i < n; ++i) current += value[i * n + i];
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    Number total;
    for (int i = 0; i < n; ++i) total += value[i * n + perm[i]];
    if (total > current) return false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return true;
}

PaymentVector min_subsidies(const EnvyGraph& g) {
  EnvyFreeabilityCertificate cert = is_envy_freeable(g);
  if (!cert.envy_freeable) {
    std::string cyc;
    for (int v : cert.cycle) cyc += (cyc.empty() ? "" : "->") + std::to_string(v);
    throw NotEnvyFreeableError("allocation is not envy-freeable: positive cycle " + cyc + " of weight " +
                                   cert.cycle_weight.to_string(),
                               cert.cycle);
  }
  return PaymentVector{std::move(cert.longest_path), PaymentKind::kSubsidy};
}

PaymentVector min_subsidies(const Instance& inst, const Allocation& a) {
  return min_subsidies(build_envy_graph(inst, a));
}

PaymentVector natural_transfers(const PaymentVector& subsidies) {
  const auto n = static_cast<long>(subsidies.amounts.size());
  Number mean = subsidies.total() / Number(n);
  PaymentVector t{subsidies.amounts, PaymentKind::kTransfer};
  for (auto& x : t.amounts) x -= mean;
  return t;
}

EnvyFreeCheck is_envy_free(const Instance& inst, const Allocation& a, const PaymentVector& p) {
  const int n = inst.agents();
  EnvyFreeCheck out;
  for (int i = 0; i < n; ++i) {
    Number own = inst.value(i, a.bundles[i]) + p.amounts[i];
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      Number excess = inst.value(i, a.bundles[j]) + p.amounts[j] - own;
      if (excess.sign() > 0 && (out.envy_free || excess > out.violation)) {
        out.envy_free = false;
        out.envier = i;
        out.envied = j;
        out.violation = std::move(excess);
      }
    }
  }
  return out;
}

bool is_ef1(const Instance& inst, const Allocation& a) {
  const int n = inst.agents();
  for (int i = 0; i < n; ++i) {
    Number own = inst.value(i, a.bundles[i]);
    for (int j = 0; j < n; ++j) {
      if (i == j || a.bundles[j] == 0) continue;
      if (inst.value(i, a.bundles[j]) <= own) continue;
      bool fixed = false;
      for (int g = 0; g < inst.items() && !fixed; ++g) {
        if (contains(a.bundles[j], g)) fixed = inst.value(i, a.bundles[j] & ~singleton(g)) <= own;
      }
      if (!fixed) return false;
    }
  }
  return true;
}

std::optional<std::pair<int, int>> worst_envy_pair(const Instance& inst, const Allocation& a) {
  std::optional<std::pair<int, int>> pair;
  Number best;
  EnvyGraph g = build_envy_graph(inst, a);
  for (int i = 0; i < g.agents; ++i) {
    for (int j = 0; j < g.agents; ++j) {
      if (i != j && g.weight(i, j) > best) {
        best = g.weight(i, j);
        pair = {i, j};
      }
    }
  }
  return pair;
}

Number bounded_envy(const Instance& inst, const Allocation& a) {
  auto pair = worst_envy_pair(inst, a);
  if (!pair) return Number();
  return inst.value(pair->first, a.bundles[pair->second]) - inst.value(pair->first, a.bundles[pair->first]);
}

}  // namespace fairpay
