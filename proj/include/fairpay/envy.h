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

// Envy graphs and the payments that remove envy.
//
// The envy graph of an allocation A is the complete digraph on agents with
// arc weight w(i, j) = v_i(A_j) - v_i(A_i). A is envy-freeable (some payment
// vector removes all envy) exactly when no directed cycle has positive
// weight, and exactly when no permutation of its bundles raises utilitarian
// welfare. The minimum subsidy of agent i is the heaviest path leaving i.

#ifndef FAIRPAY_ENVY_H_
#define FAIRPAY_ENVY_H_

#include <optional>
#include <vector>

#include "fairpay/model.h"

namespace fairpay {

struct EnvyGraph {
  int agents = 0;
  std::vector<Number> weights;  // row-major, weights[i * agents + j]
  Allocation allocation;        // the generating allocation

  const Number& weight(int i, int j) const { return weights[i * agents + j]; }
};

EnvyGraph build_envy_graph(const Instance& inst, const Allocation& a);

struct EnvyFreeabilityCertificate {
  bool envy_freeable = false;
  // Simple positive cycle (agents in order, starting at its lowest index)
  // and its weight, when not envy-freeable.
  std::vector<int> cycle;
  Number cycle_weight;
  // Heaviest-path values l(i) >= 0, when envy-freeable.
  std::vector<Number> longest_path;
};

EnvyFreeabilityCertificate is_envy_freeable(const EnvyGraph& g);
EnvyFreeabilityCertificate is_envy_freeable(const Instance& inst, const Allocation& a);

// Independent route: A is envy-freeable iff sum_i v_i(A_i) >= sum_i
// v_i(A_pi(i)) for every permutation pi. Throws PreconditionError for n > 10.
bool is_envy_freeable_by_permutation(const Instance& inst, const Allocation& a);

// Path values after exactly `rounds` relaxation rounds, with no cycle
// detection. With rounds = n - 1 this equals l(.) whenever A is
// envy-freeable.
std::vector<Number> relax_longest_paths(const EnvyGraph& g, int rounds);

// s_i = l(i). Throws NotEnvyFreeableError carrying the cycle witness.
PaymentVector min_subsidies(const Instance& inst, const Allocation& a);
PaymentVector min_subsidies(const EnvyGraph& g);

// t_i = s_i - mean(s).
PaymentVector natural_transfers(const PaymentVector& subsidies);

struct EnvyFreeCheck {
  bool envy_free = true;
  // Most violated pair (envier, envied) and the amount v_i(A_j) + p_j -
  // v_i(A_i) - p_i > 0, when not envy-free.
  int envier = -1;
  int envied = -1;
  Number violation;
};

EnvyFreeCheck is_envy_free(const Instance& inst, const Allocation& a, const PaymentVector& p);

bool is_ef1(const Instance& inst, const Allocation& a);

// Smallest b >= 0 with v_i(A_j) - v_i(A_i) <= b for all i != j.
Number bounded_envy(const Instance& inst, const Allocation& a);

// Pair attaining bounded_envy, or nullopt when the allocation is envy-free.
std::optional<std::pair<int, int>> worst_envy_pair(const Instance& inst, const Allocation& a);

}  // namespace fairpay

#endif  // FAIRPAY_ENVY_H_
