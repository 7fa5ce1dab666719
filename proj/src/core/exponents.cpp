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

#include "core/exponents.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace ksz {

namespace {

const Rational kZero{0, 1};
const Rational kHalf{1, 2};
const Rational kOne{1, 1};

void require_nonempty(std::span<const Exponent> ps) {
  if (ps.empty()) throw std::invalid_argument("exponent list must be nonempty");
}

}  // namespace

Exponent Exponent::from_rational(const Rational& p) {
  if (p < kOne) throw std::invalid_argument("exponent must satisfy p >= 1, got " + p.str());
  return Exponent(p.reciprocal());
}

Exponent Exponent::from_reciprocal(const Rational& inv) {
  if (inv < kZero || kOne < inv) {
    throw std::invalid_argument("exponent reciprocal must lie in [0, 1], got " + inv.str());
  }
  return Exponent(inv);
}

Exponent Exponent::from_double(double p) {
  if (std::isinf(p) && p > 0) return infinity();
  auto r = Rational::from_double(p);
  if (!r) throw std::invalid_argument("exponent is not representable: " + std::to_string(p));
  return from_rational(*r);
}

Exponent Exponent::parse(std::string_view token) {
  std::string lowered(token);
  for (char& c : lowered) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (lowered == "inf") return infinity();
  auto r = Rational::parse(token);
  if (!r || *r < kOne) {
    throw std::invalid_argument("bad exponent token '" + std::string(token) +
                                "' (need a value in [1, inf] or 'inf')");
  }
  return from_rational(*r);
}

Rational Exponent::rational() const {
  if (is_infinite()) throw std::domain_error("infinite exponent has no rational value");
  return inv_.reciprocal();
}

double Exponent::value() const {
  if (is_infinite()) return std::numeric_limits<double>::infinity();
  return rational().value();
}

std::string Exponent::str() const { return is_infinite() ? "inf" : rational().str(); }

Exponent conjugate(const Exponent& p) { return p.conjugate(); }

Exponent rho_exponent(std::span<const Exponent> ps) {
  require_nonempty(ps);
  // reciprocal of max{2, p*} is min{1/2, 1/p*}; rho minimizes over k, so its
  // reciprocal is the max of those.
  Rational best = kZero;
  for (const auto& p : ps) {
    best = max(best, min(kHalf, p.conjugate().reciprocal()));
  }
  return Exponent::from_reciprocal(best);
}

Rational optimal_exponent(std::span<const Exponent> ps) {
  Rational total = rho_exponent(ps).reciprocal();
  for (const auto& p : ps) {
    total = total + max(kHalf - p.reciprocal(), kZero);
  }
  return total;
}

Exponent ar_gamma(std::span<const Exponent> ps) {
  require_nonempty(ps);
  // max{p_k : p_k <= 2} has reciprocal min{1/p_k : 1/p_k >= 1/2};
  // gamma = min{2, .} caps the reciprocal from below at 1/2.
  bool any_small = false;
  Rational inv_max = kOne;
  for (const auto& p : ps) {
    if (kHalf <= p.reciprocal()) {
      inv_max = any_small ? min(inv_max, p.reciprocal()) : p.reciprocal();
      any_small = true;
    }
  }
  if (!any_small) return Exponent::from_reciprocal(kHalf);  // gamma = 2
  return Exponent::from_reciprocal(max(inv_max, kHalf));
}

Rational ar_exponent(std::span<const Exponent> ps) {
  Rational inv_gamma = ar_gamma(ps).reciprocal();
  Rational total = kOne - inv_gamma;
  for (const auto& p : ps) {
    total = total + max(inv_gamma - p.reciprocal(), kZero);
  }
  return total;
}

Rational classical_ksz_exponent(std::span<const Exponent> ps) {
  require_nonempty(ps);
  Rational total = Rational::of(static_cast<std::int64_t>(ps.size()) + 1, 2);
  for (const auto& p : ps) {
    if (p.reciprocal() > kHalf) {
      throw std::domain_error("classical exponent requires p_k >= 2, got " + p.str());
    }
    total = total - p.reciprocal();
  }
  return total;
}

Rational bayart_exponent(std::span<const Exponent> ps) {
  require_nonempty(ps);
  Rational inv_max = kOne;
  for (const auto& p : ps) {
    if (p.reciprocal() < kHalf) {
      throw std::domain_error("this exponent requires p_k <= 2, got " + p.str());
    }
    inv_max = min(inv_max, p.reciprocal());
  }
  return kOne - inv_max;
}

double hl_lower_bound(std::span<const Exponent> ps, i64 n) {
  require_nonempty(ps);
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  Rational expo = kHalf;
  for (const auto& p : ps) {
    if (p.reciprocal() > kHalf) {
      throw std::domain_error("the lower bound requires p_k >= 2, got " + p.str());
    }
    expo = expo + (kHalf - p.reciprocal());
  }
  const double m = static_cast<double>(ps.size());
  return std::pow(std::sqrt(0.5), m - 1.0) * std::pow(static_cast<double>(n), expo.value());
}

std::string_view regime_name(Regime r) {
  switch (r) {
    case Regime::AllLarge: return "all-large";
    case Regime::AllSmall: return "all-small";
    case Regime::Mixed: return "mixed";
  }
  return "mixed";
}

ExponentProfile profile(std::span<const Exponent> ps) {
  require_nonempty(ps);
  ExponentProfile out;
  out.ps.assign(ps.begin(), ps.end());
  out.optimal = optimal_exponent(ps);
  out.albuquerque_rezende = ar_exponent(ps);
  out.gamma = ar_gamma(ps);
  out.rho = rho_exponent(ps);

  bool all_large = true;
  bool all_small = true;
  for (const auto& p : ps) {
    if (p.reciprocal() > kHalf) all_large = false;
    if (p.reciprocal() < kHalf) all_small = false;
  }
  out.regime = all_large ? Regime::AllLarge : (all_small ? Regime::AllSmall : Regime::Mixed);
  if (all_large) out.classical_ksz = classical_ksz_exponent(ps);
  if (all_small) out.bayart = bayart_exponent(ps);
  out.optimal_le_ar = !(out.albuquerque_rezende < out.optimal);
  return out;
}

std::vector<Exponent> parse_exponent_list(std::string_view csv) {
  std::vector<Exponent> out;
  size_t start = 0;
  while (start <= csv.size()) {
    size_t comma = csv.find(',', start);
    std::string_view token =
        csv.substr(start, comma == std::string_view::npos ? csv.size() - start : comma - start);
    out.push_back(Exponent::parse(token));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty exponent list");
  return out;
}

}  // namespace ksz
