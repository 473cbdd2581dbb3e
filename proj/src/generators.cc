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

#include "fairpay/generators.h"

#include <random>

#include "fairpay/errors.h"

namespace fairpay {
namespace {

void check_eps(const Rational& eps) {
  if (sgn(eps) <= 0 || eps >= 1) throw PreconditionError("eps must lie in (0, 1)");
}

int exact_sqrt(int n) {
  int r = 0;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r * r == n ? r : -1;
}

Rational draw_64ths(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dist(0, 64);
  Rational r(dist(rng), 64);
  r.canonicalize();
  return r;
}

TableValuation random_monotone_table(int m, std::mt19937_64& rng) {
  TableValuation t;
  t.entries.assign(std::size_t{1} << m, Rational(0));
  for (Bundle s = 1; s < (Bundle{1} << m); ++s) {
    Rational v = draw_64ths(rng) * bundle_size(s);
    for (int g = 0; g < m; ++g) {
      if (contains(s, g)) v = std::max(v, t.entries[s & ~singleton(g)]);
    }
    t.entries[s] = v;
  }
  return t;
}

TableValuation random_xos_table(int m, std::mt19937_64& rng) {
  std::vector<std::vector<Rational>> clauses(2, std::vector<Rational>(m));
  for (auto& c : clauses) {
    for (auto& x : c) x = draw_64ths(rng);
  }
  TableValuation t;
  t.entries.assign(std::size_t{1} << m, Rational(0));
  for (Bundle s = 1; s < (Bundle{1} << m); ++s) {
    for (const auto& c : clauses) {
      Rational sum = 0;
      for (int g = 0; g < m; ++g) {
        if (contains(s, g)) sum += c[g];
      }
      t.entries[s] = std::max(t.entries[s], sum);
    }
  }
  return t;
}

// Rank of the span of item vectors in GF(2)^dim.
TableValuation random_binary_matroid_table(int m, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim_dist(1, 3);
  const int dim = dim_dist(rng);
  std::uniform_int_distribution<unsigned> vec_dist(0, (1U << dim) - 1);
  std::vector<unsigned> vectors(m);
  for (auto& v : vectors) v = vec_dist(rng);
  TableValuation t;
  t.entries.assign(std::size_t{1} << m, Rational(0));
  for (Bundle s = 1; s < (Bundle{1} << m); ++s) {
    std::vector<unsigned> basis;
    for (int g = 0; g < m; ++g) {
      if (!contains(s, g)) continue;
      unsigned v = vectors[g];
      for (unsigned b : basis) v = std::min(v, v ^ b);
      if (v != 0) basis.push_back(v);
    }
    t.entries[s] = static_cast<long>(basis.size());
  }
  return t;
}

}  // namespace

Instance gen_bad_nsw(const Rational& eps) {
  check_eps(eps);
  std::vector<Valuation> v{AdditiveValuation{{Rational(1), Rational(1, 2)}},
                           AdditiveValuation{{Rational(1, 2), eps}}};
  return validate(Instance(2, 2, std::move(v), ValuationClass::kAdditive));
}

Instance gen_tightness(int n) {
  if (n < 1 || n > kMaxItems) throw PreconditionError("n must lie in [1, 63]");
  std::vector<Valuation> v;
  for (int i = 0; i < n; ++i) {
    AdditiveValuation add{std::vector<Rational>(n, Rational(0))};
    add.values[i] = 1;
    v.emplace_back(std::move(add));
  }
  return validate(Instance(n, n, std::move(v), ValuationClass::kAdditive));
}

Instance gen_imposs(int n, int m, const Rational& eps) {
  check_eps(eps);
  if (n < 2 || m < 1) throw PreconditionError("gen_imposs needs n >= 2 and m >= 1");
  std::vector<Valuation> v;
  for (int i = 0; i < n; ++i) {
    v.emplace_back(AdditiveValuation{std::vector<Rational>(m, i == n - 1 ? Rational(1) : eps)});
  }
  return validate(Instance(n, m, std::move(v), ValuationClass::kAdditive));
}

Instance gen_constant_sum(int n, int m) {
  const int root = exact_sqrt(n);
  if (root < 0) throw PreconditionError("sqrt(n) must be integral");
  if (m < 1 || m % root != 0) throw PreconditionError("m must be a positive multiple of sqrt(n)");
  const int block = m / root;
  std::vector<Valuation> v;
  for (int i = 0; i < n; ++i) {
    AdditiveValuation add{std::vector<Rational>(m, Rational(0))};
    for (int g = 0; g < m; ++g) {
      if (i < root) {
        add.values[g] = (g / block == i) ? 1 : 0;
      } else {
        add.values[g] = Rational(1, root);
      }
    }
    v.emplace_back(std::move(add));
  }
  return validate(Instance(n, m, std::move(v), ValuationClass::kAdditive));
}

Instance gen_sqrt(int m) {
  if (m < 1) throw PreconditionError("gen_sqrt needs m >= 1");
  std::vector<Valuation> v{AdditiveValuation{std::vector<Rational>(m, Rational(1))}, SqrtCardinalityValuation{}};
  return validate(Instance(2, m, std::move(v), ValuationClass::kSubadditive));
}

Instance gen_random(int n, int m, ValuationClass cls, std::uint64_t seed) {
  if (n < 1 || m < 0) throw PreconditionError("gen_random needs n >= 1 and m >= 0");
  if (cls != ValuationClass::kAdditive && m > kValidationCap) {
    throw PreconditionError("random table instances support at most " + std::to_string(kValidationCap) + " items");
  }
  std::mt19937_64 rng(seed);
  std::vector<Valuation> v;
  for (int i = 0; i < n; ++i) {
    switch (cls) {
      case ValuationClass::kAdditive: {
        AdditiveValuation add;
        for (int g = 0; g < m; ++g) add.values.push_back(draw_64ths(rng));
        v.emplace_back(std::move(add));
        break;
      }
      case ValuationClass::kMonotone: v.emplace_back(random_monotone_table(m, rng)); break;
      case ValuationClass::kSubadditive: v.emplace_back(random_xos_table(m, rng)); break;
      case ValuationClass::kMatroidRank: v.emplace_back(random_binary_matroid_table(m, rng)); break;
    }
  }
  return normalize(validate(Instance(n, m, std::move(v), cls), /*require_normalized=*/false));
}

}  // namespace fairpay
