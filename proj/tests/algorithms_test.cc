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
#include "fairpay/algorithms.h"
#include "fairpay/envy.h"
#include "fairpay/errors.h"
#include "fairpay/generators.h"
#include "test_support.h"

namespace fairpay {
namespace {

using testing::additive;
using testing::alloc;
using testing::items;
using testing::num;
using testing::q;

void check_outcome(const Instance& inst, const SolveResult& r) {
  CHECK_NOTHROW(check_partition(inst, r.allocation));
  CHECK(r.transfers.total().is_zero());
  CHECK(is_envy_free(inst, r.allocation, r.transfers).envy_free);
  CHECK(r.all_hold());
  if (const Certificate* bad = r.first_failure()) FAIL_CHECK(bad->name << ": " << bad->lhs << " vs " << bad->rhs);
}

TEST_CASE("bounded envy to envy-free") {
  const Instance t = gen_tightness(3);
  const SolveResult free = make_envy_free_from_bounded(t, alloc({{0}, {1}, {2}}), Rational(0));
  CHECK(free.allocation == alloc({{0}, {1}, {2}}));
  CHECK(free.transfers.amounts == std::vector<Number>(3));

  const Instance e = gen_bad_nsw(q("1/100"));
  const SolveResult r = make_envy_free_from_bounded(e, alloc({{1}, {0}}), q("1/2"));
  CHECK(r.allocation == alloc({{0}, {1}}));
  CHECK(r.transfers.amounts == std::vector<Number>{num("-49/200"), num("49/200")});
  CHECK(r.certificates.front().lhs == "49/100");
  CHECK(r.certificates.front().rhs == "4");
  check_outcome(e, r);

  const SolveResult g = make_envy_free_from_bounded(t, alloc({{0, 1, 2}, {}, {}}), Rational(1));
  CHECK(g.transfers.amounts == std::vector<Number>{num("-2/3"), num("1/3"), num("1/3")});
  CHECK(g.transfers.total_absolute() == num("4/3"));
  CHECK(g.certificates.front().rhs == "18");
  check_outcome(t, g);

  CHECK_THROWS_AS(make_envy_free_from_bounded(e, alloc({{1}, {0}}), q("1/4")), PreconditionError);
}

TEST_CASE("envy cycles") {
  const Instance same = validate(additive({{"1", "1/2", "1/3", "1/4"}, {"1", "1/2", "1/3", "1/4"}}));
  const Allocation rr = envy_cycles(same, same.all_items(), empty_allocation(2));
  CHECK(is_ef1(same, rr));
  CHECK_NOTHROW(check_partition(same, rr));

  const Instance split = validate(additive({{"1", "0"}, {"0", "1"}}));
  const Allocation out = envy_cycles(split, split.all_items(), empty_allocation(2));
  CHECK(out == alloc({{0}, {1}}));
  CHECK(is_envy_free(split, out, zero_transfers(2)).envy_free);

  // Start with envy exactly 1/2, add one item.
  const Instance inst = validate(additive({{"1/2", "1", "1/2"}, {"1", "1", "1"}}));
  const Allocation start = alloc({{0}, {1}});
  CHECK(bounded_envy(inst, start) == num("1/2"));
  const Allocation grown = envy_cycles(inst, items({2}), start);
  CHECK(bounded_envy(inst, grown) <= num("3/2"));

  CHECK_THROWS_AS(envy_cycles(inst, items({1}), start), PreconditionError);
}

TEST_CASE("envy cycles stay EF1 and grow envy by at most one item") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const Instance inst = gen_random(3, 6, ValuationClass::kMonotone, seed);
    CHECK(is_ef1(inst, envy_cycles(inst, inst.all_items(), empty_allocation(3))));
    const Allocation start = envy_cycles(inst, items({0, 1, 2}), empty_allocation(3));
    const Allocation more = envy_cycles(inst, items({3, 4, 5}), start);
    CHECK(bounded_envy(inst, more) <= bounded_envy(inst, start) + Number(1));
  }
}

TEST_CASE("Nash reassignment") {
  const Instance t = gen_tightness(3);
  const SolveResult r = nsw_reassign(t, alloc({{0}, {1}, {2}}));
  CHECK(r.transfers.amounts == std::vector<Number>(3));
  check_outcome(t, r);
  const Instance same = validate(additive({{"1", "1"}, {"1", "1"}}));
  const SolveResult s = nsw_reassign(same, alloc({{0}, {1}}));
  CHECK(s.certificates.front().lhs == "1");
}

TEST_CASE("Nash pipeline, additive") {
  const Instance e = gen_bad_nsw(q("1/100"));
  const SolveResult r = nsw_pipeline_additive(e);
  CHECK(r.allocation == alloc({{0}, {1}}));
  CHECK(r.transfers.total_absolute() == num("49/100"));
  CHECK(r.certificates.front().rhs == "8");
  check_outcome(e, r);
  CHECK(std::stod(r.certificates.back().lhs) == doctest::Approx(0.8775534).epsilon(1e-6));

  const Instance one = validate(additive({{"1/2", "1"}}));
  const SolveResult solo = nsw_pipeline_additive(one);
  CHECK(solo.allocation == alloc({{0, 1}}));
  CHECK(solo.transfers.amounts == std::vector<Number>{Number()});

  NashPipelineOptions opts;
  opts.ef1_input = alloc({{0, 1}, {}});
  CHECK_THROWS_AS(nsw_pipeline_additive(e, opts), PreconditionError);
  opts.ef1_input = alloc({{0}, {1}});
  check_outcome(e, nsw_pipeline_additive(e, opts));
  CHECK_THROWS_AS(nsw_pipeline_additive(gen_sqrt(4)), PreconditionError);
}

TEST_CASE("Nash pipeline, matroid rank") {
  auto cap2 = [](Bundle s) { return Rational(std::min(bundle_size(s), 2)); };
  const Instance two = validate(testing::tables(3, {cap2, cap2}, ValuationClass::kMatroidRank), false);
  const SolveResult r = nsw_pipeline_matroid(two);
  const int k = bundle_size(r.allocation.bundles[0]);
  CHECK((k == 1 || k == 2));
  CHECK(is_ef1(two, r.allocation));
  check_outcome(two, r);

  auto zero = [](Bundle) { return Rational(0); };
  const Instance flat = validate(testing::tables(2, {zero, zero}, ValuationClass::kMatroidRank));
  CHECK(nsw_pipeline_matroid(flat).transfers.amounts == std::vector<Number>(2));

  auto own0 = [](Bundle s) { return Rational(contains(s, 0) ? 1 : 0); };
  auto own1 = [](Bundle s) { return Rational(contains(s, 1) ? 1 : 0); };
  const Instance mine = validate(testing::tables(2, {own0, own1}, ValuationClass::kMatroidRank));
  const SolveResult m = nsw_pipeline_matroid(mine);
  CHECK(m.allocation == alloc({{0}, {1}}));
  CHECK(m.transfers.amounts == std::vector<Number>(2));

  CHECK_THROWS_AS(nsw_pipeline_matroid(gen_tightness(2)), PreconditionError);
}

TEST_CASE("algorithm 1") {
  const Instance inst = validate(additive({{"1", "9/10", "1/10", "1/10"}, {"1/5", "1/5", "4/5", "7/10"}}));
  const SolveResult r = algorithm1_additive(inst, q("1/2"));
  CHECK(r.allocation == alloc({{0, 1}, {2, 3}}));
  CHECK(r.transfers.amounts == std::vector<Number>(2));
  CHECK(r.certificates[1].rhs == "59/10");
  check_outcome(inst, r);

  const SolveResult tiny = algorithm1_additive(inst, q("1/100"));
  check_outcome(inst, tiny);

  const Instance one = validate(additive({{"1/2", "1", "1/3"}}));
  const SolveResult solo = algorithm1_additive(one, q("1/3"));
  CHECK(solo.allocation == alloc({{0, 1, 2}}));
  CHECK(solo.transfers.amounts == std::vector<Number>{Number()});

  CHECK_THROWS_AS(algorithm1_additive(inst, Rational(0)), PreconditionError);
  CHECK_THROWS_AS(algorithm1_additive(inst, q("3/2")), PreconditionError);
  CHECK_THROWS_AS(algorithm1_additive(gen_sqrt(3), q("1/2")), PreconditionError);
}

TEST_CASE("algorithm 2") {
  const Instance imposs = gen_imposs(3, 6, q("1/10"));
  const SolveResult r = algorithm2_general(imposs, q("1/3"));
  check_outcome(imposs, r);
  CHECK(social_welfare(imposs, r.allocation) >= Number(2));

  const SolveResult greedy = algorithm2_general(imposs, q("1/3"), CandidateSearch::kGreedyAdditive);
  check_outcome(imposs, greedy);

  const SolveResult tiny = algorithm2_general(gen_random(3, 5, ValuationClass::kMonotone, 4), q("1/1000"));
  CHECK(tiny.all_hold());

  CHECK_THROWS_AS(algorithm2_general(imposs, q("1/2")), PreconditionError);
  CHECK_THROWS_AS(algorithm2_general(gen_random(2, 6, ValuationClass::kMonotone, 1), q("1/3"),
                                     CandidateSearch::kGreedyAdditive),
                  PreconditionError);
}

TEST_CASE("subadditive baseline") {
  const Instance same = validate(additive({{"1", "1/2", "1/3"}, {"1", "1/2", "1/3"}}));
  const SolveResult r = subadditive_baseline(same, q("1/2"));
  check_outcome(same, r);
  CHECK(r.report.rho_mean.has_value());

  const Instance one = validate(additive({{"1/2", "1"}}));
  const SolveResult solo = subadditive_baseline(one);
  CHECK(solo.allocation == alloc({{0, 1}}));

  check_outcome(gen_sqrt(6), subadditive_baseline(gen_sqrt(6)));
  CHECK_THROWS_AS(subadditive_baseline(gen_random(2, 3, ValuationClass::kMonotone, 1)), PreconditionError);
}

TEST_CASE("certificates compare exactly") {
  const Certificate c = certify_le("x", Number::sqrt_of(2), num("142/100"));
  CHECK(c.holds);
  CHECK(c.lhs == "1*sqrt(2)");
  CHECK_FALSE(certify_le("y", Number::sqrt_of(2), num("141/100")).holds);
}

}  // namespace
}  // namespace fairpay
