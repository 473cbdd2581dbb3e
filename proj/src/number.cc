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

#include "fairpay/number.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <sstream>

#include "fairpay/errors.h"

namespace fairpay {
namespace {

std::uint64_t largest_prime_factor(std::uint64_t k) {
  std::uint64_t largest = 1;
  for (std::uint64_t p = 2; p * p <= k; ++p) {
    while (k % p == 0) {
      largest = p;
      k /= p;
    }
  }
  return k > 1 ? k : largest;
}

std::uint64_t checked_product(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
  if (prod > UINT64_MAX) throw Error("surd radicand overflow");
  return static_cast<std::uint64_t>(prod);
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_integer_literal(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) {
    return std::isdigit(static_cast<unsigned char>(c));
  });
}

// x = a + b*sqrt(p), a and b free of the prime p.
struct Split {
  Number a;
  Number b;
};

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_integer_literal(num) || !is_integer_literal(den) || den.front() == '-' || den.front() == '+') {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  if (num.front() == '+') num.remove_prefix(1);
  mpz_class p(std::string(num), 10);
  mpz_class q(std::string(den), 10);
  if (q == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

Number Number::sqrt_of(std::uint64_t k) {
  if (k == 0) return Number();
  std::uint64_t square_part = 1;
  std::uint64_t free_part = 1;
  std::uint64_t rest = k;
  for (std::uint64_t p = 2; p * p <= rest; ++p) {
    int e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) square_part *= p;
    if (e % 2 == 1) free_part *= p;
  }
  free_part *= rest;
  Number out;
  Rational coef(static_cast<unsigned long>(square_part));
  if (free_part == 1) {
    out.rational_ = coef;
  } else {
    out.terms_.push_back({free_part, coef});
  }
  return out;
}

void Number::add_term(std::uint64_t radicand, const Rational& coef) {
  if (radicand == 1) {
    rational_ += coef;
    return;
  }
  auto it = std::lower_bound(terms_.begin(), terms_.end(), radicand,
                             [](const Term& t, std::uint64_t r) { return t.radicand < r; });
  if (it != terms_.end() && it->radicand == radicand) {
    it->coef += coef;
    if (sgn(it->coef) == 0) terms_.erase(it);
  } else if (sgn(coef) != 0) {
    terms_.insert(it, Term{radicand, coef});
  }
}

Number Number::operator-() const {
  Number out = *this;
  out.rational_ = -out.rational_;
  for (auto& t : out.terms_) t.coef = -t.coef;
  return out;
}

Number& Number::operator+=(const Number& o) {
  rational_ += o.rational_;
  for (const auto& t : o.terms_) add_term(t.radicand, t.coef);
  return *this;
}

Number& Number::operator-=(const Number& o) {
  rational_ -= o.rational_;
  for (const auto& t : o.terms_) add_term(t.radicand, -t.coef);
  return *this;
}

Number& Number::operator*=(const Number& o) {
  if (terms_.empty() && o.terms_.empty()) {
    rational_ *= o.rational_;
    return *this;
  }
  Number out;
  out.rational_ = rational_ * o.rational_;
  for (const auto& t : o.terms_) out.add_term(t.radicand, rational_ * t.coef);
  for (const auto& t : terms_) out.add_term(t.radicand, o.rational_ * t.coef);
  for (const auto& s : terms_) {
    for (const auto& t : o.terms_) {
      // sqrt(r) sqrt(s) = g sqrt((r/g)(s/g)) for squarefree r, s.
      std::uint64_t g = std::gcd(s.radicand, t.radicand);
      std::uint64_t radicand = checked_product(s.radicand / g, t.radicand / g);
      out.add_term(radicand, s.coef * t.coef * Rational(static_cast<unsigned long>(g)));
    }
  }
  *this = std::move(out);
  return *this;
}

Number Number::inverse() const {
  if (terms_.empty()) {
    if (sgn(rational_) == 0) throw Error("division by zero");
    return Number(Rational(1) / rational_);
  }
  std::uint64_t p = 1;
  for (const auto& t : terms_) p = std::max(p, largest_prime_factor(t.radicand));
  Number a(rational_);
  Number b;
  for (const auto& t : terms_) {
    if (t.radicand % p == 0) {
      b.add_term(t.radicand / p, t.coef);
    } else {
      a.add_term(t.radicand, t.coef);
    }
  }
  // 1 / (a + b sqrt p) = (a - b sqrt p) / (a^2 - p b^2)
  Number norm = a * a - b * b * Number(Rational(static_cast<unsigned long>(p)));
  Number conj = a - b * Number::sqrt_of(p);
  return conj * norm.inverse();
}

Number& Number::operator/=(const Number& o) {
  if (terms_.empty() && o.terms_.empty()) {
    if (sgn(o.rational_) == 0) throw Error("division by zero");
    rational_ /= o.rational_;
    return *this;
  }
  return *this *= o.inverse();
}

int Number::sign_of(const Rational& r, const std::vector<Term>& terms) {
  if (terms.empty()) return sgn(r);
  std::uint64_t p = 1;
  for (const auto& t : terms) p = std::max(p, largest_prime_factor(t.radicand));
  Number a(r);
  Number b;
  for (const auto& t : terms) {
    if (t.radicand % p == 0) {
      b.add_term(t.radicand / p, t.coef);
    } else {
      a.add_term(t.radicand, t.coef);
    }
  }
  int sa = a.sign();
  int sb = b.sign();
  if (sb == 0) return sa;
  if (sa == 0 || sa == sb) return sb;
  // Opposite signs: |a| vs |b| sqrt(p), decided by a^2 - p b^2.
  Number d = a * a - b * b * Number(Rational(static_cast<unsigned long>(p)));
  int sd = d.sign();
  if (sd > 0) return sa;
  if (sd < 0) return sb;
  return 0;
}

int Number::sign() const { return sign_of(rational_, terms_); }

std::strong_ordering operator<=>(const Number& a, const Number& b) {
  int s;
  if (a.terms_.empty() && b.terms_.empty()) {
    s = cmp(a.rational_, b.rational_);
  } else {
    s = (a - b).sign();
  }
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

double Number::to_double() const {
  double out = rational_.get_d();
  for (const auto& t : terms_) out += t.coef.get_d() * std::sqrt(static_cast<double>(t.radicand));
  return out;
}

std::string Number::to_string() const {
  if (terms_.empty()) return fairpay::to_string(rational_);
  std::ostringstream os;
  bool first = true;
  if (sgn(rational_) != 0) {
    os << fairpay::to_string(rational_);
    first = false;
  }
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    os << fairpay::to_string(t.coef) << "*sqrt(" << t.radicand << ")";
    first = false;
  }
  return os.str();
}

Number Number::parse(std::string_view text) {
  Number out;
  std::string_view rest = trim(text);
  if (rest.empty()) throw ParseError("empty number");
  while (true) {
    auto plus = rest.find(" + ");
    std::string_view piece = trim(rest.substr(0, plus));
    auto star = piece.find("*sqrt(");
    if (star == std::string_view::npos) {
      out += Number(parse_rational(piece));
    } else {
      if (piece.back() != ')') throw ParseError("malformed surd term '" + std::string(piece) + "'");
      Rational coef = parse_rational(piece.substr(0, star));
      std::string_view rad = piece.substr(star + 6, piece.size() - star - 7);
      if (!is_integer_literal(rad) || rad.front() == '-') {
        throw ParseError("malformed radicand '" + std::string(rad) + "'");
      }
      out += Number(coef) * Number::sqrt_of(std::stoull(std::string(rad)));
    }
    if (plus == std::string_view::npos) break;
    rest = rest.substr(plus + 3);
  }
  return out;
}

Number max(const Number& a, const Number& b) { return a < b ? b : a; }
Number min(const Number& a, const Number& b) { return b < a ? b : a; }

}  // namespace fairpay
