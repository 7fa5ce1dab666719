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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "core/common.hpp"
#include "core/rational.hpp"

namespace ksz {

/// An extended exponent p in [1, inf]; inf is a first-class value, not a
/// large float. Internally the exact reciprocal 1/p in [0, 1] is stored,
/// which makes conjugation (1/p* = 1 - 1/p) and the inf conventions
/// (1/inf = 0) exact rational arithmetic.
class Exponent {
 public:
  Exponent() : inv_(Rational{1, 1}) {}  // p = 1

  static Exponent infinity() { return Exponent(Rational{0, 1}); }
  static Exponent from_rational(const Rational& p);
  static Exponent from_reciprocal(const Rational& inv);
  /// Exact: finite doubles convert via their binary expansion, +inf maps
  /// to the infinity value. Throws std::invalid_argument outside [1, inf].
  static Exponent from_double(double p);
  /// Accepts "inf" (case-insensitive), "3/2", "1.5", "2".
  static Exponent parse(std::string_view token);

  bool is_infinite() const { return inv_.num == 0; }
  bool is_two() const { return inv_ == Rational{1, 2}; }
  /// Exact 1/p; zero when p = inf.
  const Rational& reciprocal() const { return inv_; }
  /// Exact p; throws std::domain_error when infinite.
  Rational rational() const;
  double value() const;
  std::string str() const;  // "3/2", "2", "inf"

  Exponent conjugate() const { return Exponent(Rational{1, 1} - inv_); }

  friend bool operator==(const Exponent& a, const Exponent& b) = default;
  // natural order on [1, inf]: p < q iff 1/p > 1/q
  friend bool operator<(const Exponent& a, const Exponent& b) { return b.inv_ < a.inv_; }
  friend bool operator<=(const Exponent& a, const Exponent& b) { return !(b < a); }
  friend bool operator>(const Exponent& a, const Exponent& b) { return b < a; }
  friend bool operator>=(const Exponent& a, const Exponent& b) { return !(a < b); }

 private:
  explicit Exponent(const Rational& inv) : inv_(inv) {}
  Rational inv_;  // 1/p, exact, in [0, 1]
};

Exponent conjugate(const Exponent& p);

enum class Regime { AllLarge, AllSmall, Mixed };
std::string_view regime_name(Regime r);

/// Every exponent formula evaluated on one p-tuple, exact where defined.
struct ExponentProfile {
  std::vector<Exponent> ps;
  Rational optimal;                       // sharp exponent 1/rho + sum max{1/2 - 1/p_k, 0}
  Rational albuquerque_rezende;           // 1 - 1/gamma + sum max{1/gamma - 1/p_k, 0}
  std::optional<Rational> classical_ksz;  // (m+1)/2 - sum 1/p_k, defined when all p_k >= 2
  std::optional<Rational> bayart;         // 1 - 1/max p_k, defined when all p_k <= 2
  Exponent gamma;
  Exponent rho;
  Regime regime = Regime::Mixed;
  bool optimal_le_ar = false;  // dominance, holds for every tuple
};

/// rho = min_k max{2, p_k*}.
Exponent rho_exponent(std::span<const Exponent> ps);

/// The sharp mixed-regime exponent 1/rho + sum_k max{1/2 - 1/p_k, 0}.
Rational optimal_exponent(std::span<const Exponent> ps);

/// gamma = min{2, max{p_k : p_k <= 2}}; 2 when no p_k <= 2 (the regimes
/// coincide there and the formula degenerates otherwise).
Exponent ar_gamma(std::span<const Exponent> ps);
Rational ar_exponent(std::span<const Exponent> ps);

/// (m+1)/2 - sum_k 1/p_k. Requires all p_k >= 2 (std::domain_error).
Rational classical_ksz_exponent(std::span<const Exponent> ps);

/// 1 - 1/max_k p_k. Requires all p_k <= 2 (std::domain_error).
Rational bayart_exponent(std::span<const Exponent> ps);

/// Universal floor (1/sqrt 2)^{m-1} n^{1/2 + sum(1/2 - 1/p_k)} valid for
/// every unimodular form when all p_k >= 2 (std::domain_error otherwise).
double hl_lower_bound(std::span<const Exponent> ps, i64 n);

ExponentProfile profile(std::span<const Exponent> ps);

/// Parses "1.5,3,inf". Throws std::invalid_argument naming the bad token.
std::vector<Exponent> parse_exponent_list(std::string_view csv);

}  // namespace ksz
