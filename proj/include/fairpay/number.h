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

#ifndef FAIRPAY_NUMBER_H_
#define FAIRPAY_NUMBER_H_

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fairpay {

// Arbitrary-precision rational, always canonical (lowest terms, q > 0).
using Rational = mpq_class;

// Accepts "p", "p/q", "-p/q". Throws ParseError on malformed text or q == 0.
Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// An exact element of the field Q(sqrt 2, sqrt 3, sqrt 5, ...):
//
//   x = r + c_1 sqrt(k_1) + ... + c_t sqrt(k_t)
//
// with rational r, c_i and distinct squarefree k_i > 1. Purely rational
// values take a fast path and never allocate. Signs are decided exactly by
// splitting off the largest prime p and recursing on a + b sqrt(p), so
// every comparison is exact; no floating point enters any operation other
// than to_double().
class Number {
 public:
  struct Term {
    std::uint64_t radicand;  // squarefree, > 1
    Rational coef;           // nonzero
    bool operator==(const Term&) const = default;
  };

  Number() = default;
  Number(const Rational& q) : rational_(q) { rational_.canonicalize(); }  // NOLINT: field embedding
  Number(Rational&& q) : rational_(std::move(q)) { rational_.canonicalize(); }  // NOLINT
  Number(long v) : rational_(v) {}                   // NOLINT
  Number(int v) : rational_(v) {}                    // NOLINT

  // Exact square root of a nonnegative integer.
  static Number sqrt_of(std::uint64_t k);

  // Inverse of to_string().
  static Number parse(std::string_view text);

  bool is_rational() const { return terms_.empty(); }
  const Rational& rational_part() const { return rational_; }
  const std::vector<Term>& surd_terms() const { return terms_; }

  int sign() const;
  bool is_zero() const { return terms_.empty() && sgn(rational_) == 0; }

  Number abs() const { return sign() < 0 ? -*this : *this; }
  Number inverse() const;

  double to_double() const;
  // "p/q" when rational, otherwise "r + c1*sqrt(k1) + c2*sqrt(k2)" with the
  // rational part omitted when it is zero.
  std::string to_string() const;

  Number operator-() const;
  Number& operator+=(const Number& o);
  Number& operator-=(const Number& o);
  Number& operator*=(const Number& o);
  Number& operator/=(const Number& o);

  friend Number operator+(Number a, const Number& b) { return a += b; }
  friend Number operator-(Number a, const Number& b) { return a -= b; }
  friend Number operator*(Number a, const Number& b) { return a *= b; }
  friend Number operator/(Number a, const Number& b) { return a /= b; }

  friend bool operator==(const Number& a, const Number& b) {
    return a.rational_ == b.rational_ && a.terms_ == b.terms_;
  }
  friend std::strong_ordering operator<=>(const Number& a, const Number& b);

 private:
  static int sign_of(const Rational& r, const std::vector<Term>& terms);
  void add_term(std::uint64_t radicand, const Rational& coef);

  Rational rational_;
  std::vector<Term> terms_;  // sorted by radicand
};

inline std::string to_string(const Number& x) { return x.to_string(); }

Number max(const Number& a, const Number& b);
Number min(const Number& a, const Number& b);

}  // namespace fairpay

#endif  // FAIRPAY_NUMBER_H_
