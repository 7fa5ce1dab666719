/*
Copyright 2026 the ksz authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

                http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "core/rational.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <stdexcept>

namespace ksz {

namespace {

using i128 = __int128;

std::int64_t narrow(i128 v) {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN)) {
    throw std::overflow_error("rational arithmetic overflow");
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

Rational normalized(i128 n, i128 d) {
  if (d == 0) throw std::invalid_argument("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  return Rational{narrow(n), narrow(d)};
}

}  // namespace

Rational Rational::of(std::int64_t n, std::int64_t d) { return normalized(n, d); }

std::optional<Rational> Rational::from_double(double x) {
  if (!std::isfinite(x)) return std::nullopt;
  if (x == 0.0) return Rational{0, 1};
  int exp = 0;
  double mant = std::frexp(x, &exp);           // x = mant * 2^exp, |mant| in [0.5, 1)
  auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));  // exact 53-bit integer
  exp -= 53;
  while (m % 2 == 0 && exp < 0) {
    m /= 2;
    ++exp;
  }
  if (exp >= 0) {
    if (exp > 62) return std::nullopt;
    i128 n = i128(m) << exp;
    if (n > i128(INT64_MAX) || n < i128(INT64_MIN)) return std::nullopt;
    return Rational{static_cast<std::int64_t>(n), 1};
  }
  if (-exp > 62) return std::nullopt;
  return Rational{m, std::int64_t(1) << (-exp)};
}

std::optional<Rational> Rational::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool neg = false;
  size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  i128 num = 0;
  i128 den = 1;
  bool any_digit = false;
  bool seen_point = false;
  bool seen_slash = false;
  i128 slash_den = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      if (seen_slash) {
        slash_den = slash_den * 10 + (c - '0');
        if (slash_den > i128(INT64_MAX)) return std::nullopt;
      } else {
        num = num * 10 + (c - '0');
        if (seen_point) den *= 10;
        if (num > i128(INT64_MAX) || den > i128(INT64_MAX)) return std::nullopt;
      }
    } else if (c == '.' && !seen_point && !seen_slash) {
      seen_point = true;
    } else if (c == '/' && !seen_slash && !seen_point && any_digit) {
      seen_slash = true;
      any_digit = false;
    } else {
      return std::nullopt;
    }
  }
  if (!any_digit) return std::nullopt;
  if (seen_slash) {
    if (slash_den == 0) return std::nullopt;
    den = slash_den;
  }
  if (neg) num = -num;
  return normalized(num, den);
}

std::string Rational::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rational Rational::reciprocal() const {
  if (num == 0) throw std::invalid_argument("reciprocal of zero");
  return normalized(den, num);
}

Rational operator+(const Rational& a, const Rational& b) {
  return normalized(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
}

Rational operator-(const Rational& a, const Rational& b) {
  return normalized(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
}

Rational operator*(const Rational& a, const Rational& b) {
  return normalized(i128(a.num) * b.num, i128(a.den) * b.den);
}

Rational operator/(const Rational& a, const Rational& b) {
  if (b.num == 0) throw std::invalid_argument("rational division by zero");
  return normalized(i128(a.num) * b.den, i128(a.den) * b.num);
}

std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
  i128 lhs = i128(a.num) * b.den;
  i128 rhs = i128(b.num) * a.den;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ksz
