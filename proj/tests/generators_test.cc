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

#include "doctest.h"
#include "fairpay/errors.h"
#include "fairpay/generators.h"
#include "test_support.h"

namespace fairpay {
namespace {

using testing::items;
using testing::q;

TEST_CASE("tightness and two-agent generators") {
  const Instance t = gen_tightness(3);
  for (int i = 0; i < 3; ++i) {
    for (int g = 0; g < 3; ++g) CHECK(t.item_value(i, g) == Rational(i == g ? 1 : 0));
  }
  const Instance e = gen_bad_nsw(q("1/100"));
  CHECK(std::get<AdditiveValuation>(e.valuation(0)).values == std::vector<Rational>{1, q("1/2")});
  CHECK(std::get<AdditiveValuation>(e.valuation(1)).values == std::vector<Rational>{q("1/2"), q("1/100")});
  CHECK_THROWS_AS(gen_bad_nsw(Rational(0)), PreconditionError);
}

TEST_CASE("lower-bound instance") {
  const Instance inst = gen_imposs(3, 6, q("1/10"));
  for (int g = 0; g < 6; ++g) {
    CHECK(inst.item_value(2, g) == 1);
    CHECK(inst.item_value(0, g) == q("1/10"));
    CHECK(inst.item_value(1, g) == q("1/10"));
  }
}

TEST_CASE("constant-sum instance") {
  const Instance inst = gen_constant_sum(4, 8);
  CHECK(inst.declared_class() == ValuationClass::kAdditive);
  int high = 0;
  int low = 0;
  Bundle blocks = 0;
  for (int i = 0; i < 4; ++i) {
    CHECK(inst.value(i, inst.all_items()) == Number(4));
    const auto& v = std::get<AdditiveValuation>(inst.valuation(i)).values;
    Bundle ones = 0;
    for (int g = 0; g < 8; ++g) {
      if (v[g] == 1) ones |= Bundle{1} << g;
    }
    if (bundle_size(ones) == 4) {
      ++high;
      CHECK((blocks & ones) == 0);
      blocks |= ones;
    } else {
      ++low;
      for (int g = 0; g < 8; ++g) CHECK(v[g] == q("1/2"));
    }
  }
  CHECK(high == 2);
  CHECK(low == 2);
  CHECK_THROWS_WITH_AS(gen_constant_sum(3, 3), "sqrt(n) must be integral", PreconditionError);
  CHECK_THROWS_AS(gen_constant_sum(4, 5), PreconditionError);
}

TEST_CASE("square-root instance") {
  const Instance s = gen_sqrt(9);
  CHECK(s.declared_class() == ValuationClass::kSubadditive);
  CHECK(s.value(0, items({0, 1, 2})) == Number(3));
  CHECK(s.value(1, items({0, 1, 2, 3})) == Number(2));
  CHECK(s.value(1, items({0, 1})) == Number::sqrt_of(2));
}

TEST_CASE("random instances are seeded, normalized and of their class") {
  for (ValuationClass cls : {ValuationClass::kAdditive, ValuationClass::kSubadditive, ValuationClass::kMatroidRank,
                             ValuationClass::kMonotone}) {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
      const Instance a = gen_random(3, 5, cls, seed);
      const Instance b = gen_random(3, 5, cls, seed);
      CHECK(a.class_verified());
      CHECK(a.declared_class() == cls);
      for (int i = 0; i < 3; ++i) {
        for (Bundle s = 0; s < 32; ++s) CHECK(a.value(i, s) == b.value(i, s));
      }
      const Number mu = max_marginal(a);
      CHECK((mu == Number(1) || mu.is_zero()));
    }
  }
  const Instance x = gen_random(3, 5, ValuationClass::kMonotone, 1);
  const Instance y = gen_random(3, 5, ValuationClass::kMonotone, 2);
  bool differ = false;
  for (Bundle s = 0; s < 32 && !differ; ++s) differ = x.value(0, s) != y.value(0, s);
  CHECK(differ);
  CHECK_THROWS_AS(gen_random(2, 17, ValuationClass::kMonotone, 1), PreconditionError);
}

}  // namespace
}  // namespace fairpay
