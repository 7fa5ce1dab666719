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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "core/exponents.hpp"

using namespace ksz;

namespace {

Exponent exp_of(const char* tok) { return Exponent::parse(tok); }

std::vector<Exponent> tuple(std::initializer_list<const char*> toks) {
  std::vector<Exponent> out;
  for (const char* t : toks) out.push_back(exp_of(t));
  return out;
}

// Random rational exponent with small denominator; optionally infinite.
Exponent random_exponent(std::mt19937_64& gen, bool allow_inf, double lo, double hi) {
  if (allow_inf && gen() % 8 == 0) return Exponent::infinity();
  const std::int64_t den = 1 + static_cast<std::int64_t>(gen() % 12);
  const std::int64_t lo_num = static_cast<std::int64_t>(std::ceil(lo * static_cast<double>(den)));
  const std::int64_t hi_num = static_cast<std::int64_t>(std::floor(hi * static_cast<double>(den)));
  const std::int64_t num = lo_num + static_cast<std::int64_t>(gen() % static_cast<u64>(hi_num - lo_num + 1));
  return Exponent::from_rational(Rational::of(num, den));
}

}  // namespace

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rational::parse("3/2") == Rational::of(3, 2));
  CHECK(Rational::parse("1.5") == Rational::of(3, 2));
  CHECK(Rational::parse("7") == Rational::of(7));
  CHECK(Rational::parse("0.125") == Rational::of(1, 8));
  CHECK(!Rational::parse("abc").has_value());
  CHECK(!Rational::parse("1/0").has_value());
  CHECK(Rational::of(2, 4) == Rational::of(1, 2));
  CHECK(Rational::of(1, 2) + Rational::of(1, 3) == Rational::of(5, 6));
  CHECK(Rational::of(5, 6) < Rational::of(1, 1));
  CHECK(Rational::from_double(1.5) == Rational::of(3, 2));
  CHECK(Rational::from_double(0.1)->value() == 0.1);  // exact binary rational of the double
}

TEST_CASE("conjugation conventions") {
  CHECK(exp_of("2").conjugate() == exp_of("2"));
  CHECK(exp_of("1").conjugate().is_infinite());
  CHECK(exp_of("inf").conjugate() == exp_of("1"));
  CHECK(exp_of("3/2").conjugate() == exp_of("3"));
  CHECK(conjugate(exp_of("4")) == exp_of("4/3"));
}

TEST_CASE("conjugation is an involution, exactly on rationals") {
  std::mt19937_64 gen(11);
  for (int i = 0; i < 2000; ++i) {
    const Exponent p = random_exponent(gen, true, 1.0, 50.0);
    CHECK(p.conjugate().conjugate() == p);
  }
}

TEST_CASE("sharp exponent examples") {
  CHECK(optimal_exponent(tuple({"3/2", "3", "3"})) == Rational::of(5, 6));
  CHECK(optimal_exponent(tuple({"inf", "inf"})) == Rational::of(3, 2));
  CHECK(optimal_exponent(tuple({"1", "1", "1"})) == Rational::of(0));
  CHECK_THROWS_AS(optimal_exponent({}), std::invalid_argument);
}

TEST_CASE("albuquerque-rezende exponent examples") {
  auto ps = tuple({"3/2", "3", "3"});
  CHECK(ar_gamma(ps) == exp_of("3/2"));
  CHECK(ar_exponent(ps) == Rational::of(1));
  CHECK(ar_gamma(tuple({"2", "2"})) == exp_of("2"));
  CHECK(ar_exponent(tuple({"2", "2"})) == Rational::of(1, 2));
  CHECK(ar_gamma(tuple({"4/3", "4/3"})) == exp_of("4/3"));
  CHECK(ar_exponent(tuple({"4/3", "4/3"})) == Rational::of(1, 4));
  // gamma defaults to 2 when no p_k <= 2
  CHECK(ar_gamma(tuple({"3", "5"})) == exp_of("2"));
  CHECK_THROWS_AS(ar_exponent({}), std::invalid_argument);
}

TEST_CASE("classical exponent examples") {
  CHECK(classical_ksz_exponent(tuple({"2", "2"})) == Rational::of(1, 2));
  CHECK(classical_ksz_exponent(tuple({"inf", "inf", "inf"})) == Rational::of(2));
  // cross-checked against the sharp formula, which must agree on this regime
  CHECK(classical_ksz_exponent(tuple({"3", "3"})) == Rational::of(5, 6));
  CHECK(classical_ksz_exponent(tuple({"3", "3"})) == optimal_exponent(tuple({"3", "3"})));
  CHECK_THROWS_AS(classical_ksz_exponent(tuple({"3/2", "3"})), std::domain_error);
}

TEST_CASE("small-regime exponent examples") {
  CHECK(bayart_exponent(tuple({"3/2", "3/2"})) == Rational::of(1, 3));
  CHECK(bayart_exponent(tuple({"1", "1"})) == Rational::of(0));
  CHECK(bayart_exponent(tuple({"2", "1"})) == Rational::of(1, 2));
  CHECK_THROWS_AS(bayart_exponent(tuple({"3", "1"})), std::domain_error);
}

TEST_CASE("hardy-littlewood floor examples") {
  CHECK(hl_lower_bound(tuple({"inf", "inf"}), 2) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(hl_lower_bound(tuple({"2", "2"}), 5) ==
        doctest::Approx(std::sqrt(5.0) / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(hl_lower_bound(tuple({"inf", "inf"}), 4) ==
        doctest::Approx(4.0 * std::sqrt(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(hl_lower_bound(tuple({"3/2", "2"}), 4), std::domain_error);
}

TEST_CASE("profile examples") {
  {
    const ExponentProfile p = profile(tuple({"3/2", "3", "3"}));
    CHECK(p.optimal == Rational::of(5, 6));
    CHECK(p.albuquerque_rezende == Rational::of(1));
    CHECK(p.gamma == exp_of("3/2"));
    CHECK(p.rho == exp_of("2"));
    CHECK(p.regime == Regime::Mixed);
    CHECK(!p.classical_ksz.has_value());
    CHECK(!p.bayart.has_value());
    CHECK(p.optimal_le_ar);
  }
  {
    const ExponentProfile p = profile(tuple({"2", "2", "2"}));
    CHECK(p.optimal == Rational::of(1, 2));
    CHECK(p.albuquerque_rezende == Rational::of(1, 2));
    CHECK(p.regime == Regime::AllLarge);  // boundary counts as both; all-large wins the tag
    CHECK(p.classical_ksz == Rational::of(1, 2));
    CHECK(p.bayart == Rational::of(1, 2));
  }
  {
    const ExponentProfile p = profile(tuple({"1", "inf"}));
    CHECK(p.rho == exp_of("2"));
    CHECK(p.optimal == Rational::of(1));
    CHECK(p.albuquerque_rezende == Rational::of(1));
  }
}

TEST_CASE("regime coincidences hold exactly on random tuples") {
  std::mt19937_64 gen(2026);
  for (int i = 0; i < 1000; ++i) {
    const size_t m = 1 + gen() % 6;
    std::vector<Exponent> large, small;
    for (size_t k = 0; k < m; ++k) {
      large.push_back(random_exponent(gen, true, 2.0, 40.0));
      small.push_back(random_exponent(gen, false, 1.0, 2.0));
    }
    CHECK(optimal_exponent(large) == classical_ksz_exponent(large));
    CHECK(optimal_exponent(small) == bayart_exponent(small));
  }
}

TEST_CASE("sharp exponent never exceeds albuquerque-rezende; strict in the gap regime") {
  std::mt19937_64 gen(77);
  int strict_checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const size_t m = 1 + gen() % 6;
    std::vector<Exponent> ps;
    for (size_t k = 0; k < m; ++k) ps.push_back(random_exponent(gen, true, 1.0, 20.0));
    const Rational a = optimal_exponent(ps);
    const Rational b = ar_exponent(ps);
    CHECK(a <= b);
    int above = 0, below = 0;
    for (const auto& p : ps) {
      if (p > exp_of("2")) ++above;
      if (p < exp_of("2")) ++below;
    }
    const Exponent g = ar_gamma(ps);
    if (above >= 2 && below >= 1 && g < exp_of("2")) {
      CHECK(a < b);
      ++strict_checked;
    }
  }
  CHECK(strict_checked > 0);
}

TEST_CASE("sharp exponent is nondecreasing in each slot") {
  std::mt19937_64 gen(5150);
  for (int i = 0; i < 500; ++i) {
    const size_t m = 1 + gen() % 5;
    std::vector<Exponent> ps;
    for (size_t k = 0; k < m; ++k) ps.push_back(random_exponent(gen, true, 1.0, 20.0));
    const Rational base = optimal_exponent(ps);
    const size_t k = gen() % m;
    std::vector<Exponent> bumped = ps;
    if (bumped[k].is_infinite()) continue;
    bumped[k] = Exponent::from_rational(bumped[k].rational() + Rational::of(1, 3));
    CHECK(base <= optimal_exponent(bumped));
  }
}

TEST_CASE("exponent list parsing") {
  const auto ps = parse_exponent_list("1.5,3,inf");
  REQUIRE(ps.size() == 3);
  CHECK(ps[0] == exp_of("3/2"));
  CHECK(ps[1] == exp_of("3"));
  CHECK(ps[2].is_infinite());
  CHECK(Exponent::parse("Inf").is_infinite());
  CHECK(Exponent::parse("INF").is_infinite());
  try {
    parse_exponent_list("1.5,0.5");
    FAIL("expected an argument error");
  } catch (const std::invalid_argument& e) {
    CHECK(std::string(e.what()).find("0.5") != std::string::npos);  // names the bad token
  }
  CHECK_THROWS_AS(parse_exponent_list(""), std::invalid_argument);
  CHECK_THROWS_AS(Exponent::parse("0.99"), std::invalid_argument);
}
