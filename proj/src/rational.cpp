// Copyright 2026 The stoqsym Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "stoqsym/rational.hpp"

#include <cctype>
#include <limits>
#include <numeric>

namespace stoqsym {
namespace {

__extension__ typedef __int128 i128;

std::int64_t narrow(i128 v) {
  if (v > std::numeric_limits<std::int64_t>::max() ||
      v < -std::numeric_limits<std::int64_t>::max()) {
    throw RationalOverflow("rational arithmetic overflow");
  }
  return static_cast<std::int64_t>(v);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Rational make(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  return Rational(narrow(num), narrow(den));
}

}  // namespace

Rational::Rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  i128 n = num, d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num_ = narrow(n);
  den_ = narrow(d);
}

Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed number '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational p = parse(text.substr(0, slash));
    Rational q = parse(text.substr(slash + 1));
    if (!p.is_integer() || !q.is_integer() || q.is_zero()) return fail();
    return Rational(p.num(), q.num());
  }

  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '+' || text[i] == '-') {
    negative = text[i] == '-';
    ++i;
  }
  i128 mantissa = 0;
  int scale = 0;  // value = mantissa * 10^scale
  bool any_digit = false;
  auto push_digit = [&](char c) {
    mantissa = mantissa * 10 + (c - '0');
    if (mantissa > (i128(1) << 100)) throw RationalOverflow("number too long");
  };
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    push_digit(text[i++]);
    any_digit = true;
  }
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      push_digit(text[i++]);
      --scale;
      any_digit = true;
    }
  }
  if (!any_digit) return fail();
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      exp_negative = text[i] == '-';
      ++i;
    }
    int exponent = 0;
    bool exp_digit = false;
    while (i < text.size() &&
           std::isdigit(static_cast<unsigned char>(text[i]))) {
      exponent = exponent * 10 + (text[i++] - '0');
      if (exponent > 40) throw RationalOverflow("exponent out of range");
      exp_digit = true;
    }
    if (!exp_digit) return fail();
    scale += exp_negative ? -exponent : exponent;
  }
  if (i != text.size()) return fail();

  i128 num = negative ? -mantissa : mantissa;
  i128 den = 1;
  for (; scale > 0; --scale) num *= 10;
  for (; scale < 0; ++scale) {
    den *= 10;
    if (den > (i128(1) << 100)) throw RationalOverflow("number too precise");
  }
  return make(num, den);
}

std::string Rational::to_string() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::string Rational::to_decimal_string() const {
  if (den_ == 1) return std::to_string(num_);
  std::int64_t d = den_;
  int twos = 0, fives = 0;
  while (d % 2 == 0) d /= 2, ++twos;
  while (d % 5 == 0) d /= 5, ++fives;
  if (d != 1) return to_string();
  int digits = std::max(twos, fives);
  // num/den == num * 2^(digits-twos) * 5^(digits-fives) / 10^digits
  i128 scaled = i128(num_);
  for (int k = twos; k < digits; ++k) scaled *= 2;
  for (int k = fives; k < digits; ++k) scaled *= 5;
  bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  std::string s;
  for (i128 v = scaled; v > 0 || s.empty(); v /= 10) {
    s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
  }
  while (static_cast<int>(s.size()) <= digits) s.insert(s.begin(), '0');
  s.insert(s.end() - digits, '.');
  return negative ? "-" + s : s;
}

Rational Rational::operator-() const {
  Rational r;
  r.num_ = narrow(-i128(num_));
  r.den_ = den_;
  return r;
}

Rational& Rational::operator+=(const Rational& o) {
  return *this = make(i128(num_) * o.den_ + i128(o.num_) * den_,
                      i128(den_) * o.den_);
}

Rational& Rational::operator-=(const Rational& o) {
  return *this = make(i128(num_) * o.den_ - i128(o.num_) * den_,
                      i128(den_) * o.den_);
}

Rational& Rational::operator*=(const Rational& o) {
  return *this = make(i128(num_) * o.num_, i128(den_) * o.den_);
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_ == 0) throw std::domain_error("rational division by zero");
  return *this = make(i128(num_) * o.den_, i128(den_) * o.num_);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = i128(a.num_) * b.den_;
  i128 rhs = i128(b.num_) * a.den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace stoqsym
