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

#include "core/lp.hpp"
#include "core/rng.hpp"

using namespace ksz;

namespace {

Exponent exp_of(const char* tok) { return Exponent::parse(tok); }

CVec rvec(std::initializer_list<double> xs) {
  CVec out;
  for (double x : xs) out.emplace_back(x, 0.0);
  return out;
}

Exponent random_p(std::mt19937_64& gen) {
  switch (gen() % 6) {
    case 0: return exp_of("1");
    case 1: return exp_of("inf");
    case 2: return exp_of("2");
    default: {
      const std::int64_t den = 1 + static_cast<std::int64_t>(gen() % 8);
      const std::int64_t num = den + static_cast<std::int64_t>(gen() % (7 * den));
      return Exponent::from_rational(Rational::of(num, den));
    }
  }
}

CVec random_c(std::mt19937_64& gen, size_t n) {
  SeededRng rng(gen());
  CVec c(n);
  for (auto& e : c) e = Complex(rng.gaussian(), rng.gaussian());
  return c;
}

}  // namespace

TEST_CASE("lp norm basics") {
  CHECK(lp_norm(rvec({3, 4}), exp_of("2")) == doctest::Approx(5.0).epsilon(1e-14));
  CHECK(lp_norm(rvec({1, -1, 1}), exp_of("inf")) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(lp_norm(rvec({1, 1}), exp_of("3/2")) ==
        doctest::Approx(std::pow(2.0, 2.0 / 3.0)).epsilon(1e-14));
  CHECK(lp_norm(rvec({0, 0}), exp_of("3")) == 0.0);
}

TEST_CASE("duality maximizer closed forms") {
  {
    const auto [x, value] = duality_maximizer(rvec({3, 4}), exp_of("2"));
    CHECK(value == doctest::Approx(5.0).epsilon(1e-14));
    CHECK(std::abs(x[0] - Complex(0.6, 0.0)) <= 1e-12);
    CHECK(std::abs(x[1] - Complex(0.8, 0.0)) <= 1e-12);
  }
  {
    const auto [x, value] = duality_maximizer(rvec({1, -2}), exp_of("inf"));
    CHECK(value == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(std::abs(x[0] - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(x[1] - Complex(-1.0, 0.0)) <= 1e-12);
  }
  {
    // tie broken at the lowest index
    const auto [x, value] = duality_maximizer(rvec({2, -2, 1}), exp_of("1"));
    CHECK(value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(std::abs(x[0] - Complex(1.0, 0.0)) <= 1e-12);
    CHECK(std::abs(x[1]) == 0.0);
    CHECK(std::abs(x[2]) == 0.0);
  }
  {
    // all-zero coefficients: canonical witness, value 0
    const auto [x, value] = duality_maximizer(rvec({0, 0, 0}), exp_of("3/2"));
    CHECK(value == 0.0);
    CHECK(x[0] == Complex(1.0, 0.0));
  }
}

TEST_CASE("hoelder attainment on random instances") {
  std::mt19937_64 gen(99);
  for (int rep = 0; rep < 500; ++rep) {
    const Exponent p = random_p(gen);
    const CVec c = random_c(gen, 1 + gen() % 7);
    const auto [x, value] = duality_maximizer(c, p);
    CHECK(lp_norm(x, p) <= 1.0 + 1e-10);
    Complex pairing(0.0, 0.0);
    for (size_t j = 0; j < c.size(); ++j) pairing += c[j] * x[j];
    CHECK(std::abs(pairing.imag()) <= 1e-10 * std::max(1.0, value));
    const double dual = lp_norm(c, p.conjugate());
    CHECK(std::abs(pairing.real() - dual) <= 1e-10 * std::max(1.0, dual));
    CHECK(std::abs(value - dual) <= 1e-10 * std::max(1.0, dual));
  }
}

TEST_CASE("no feasible vector beats the maximizer") {
  std::mt19937_64 gen(431);
  for (int rep = 0; rep < 500; ++rep) {
    const Exponent p = random_p(gen);
    const size_t n = 1 + gen() % 6;
    const CVec c = random_c(gen, n);
    const auto [x, value] = duality_maximizer(c, p);
    for (int probe = 0; probe < 50; ++probe) {
      const CVec y = ball_sample(static_cast<i64>(n), p, gen()).coords;
      Complex pairing(0.0, 0.0);
      for (size_t j = 0; j < n; ++j) pairing += c[j] * y[j];
      CHECK(pairing.real() <= value + 1e-10 * std::max(1.0, value));
    }
  }
}

TEST_CASE("lp balls are nested: p <= q implies larger-norm smaller-ball") {
  std::mt19937_64 gen(88);
  for (int rep = 0; rep < 300; ++rep) {
    Exponent p = random_p(gen);
    Exponent q = random_p(gen);
    if (q < p) std::swap(p, q);
    const CVec x = random_c(gen, 1 + gen() % 6);
    CHECK(lp_norm(x, q) <= lp_norm(x, p) * (1.0 + 1e-12) + 1e-12);
  }
}

TEST_CASE("ball samples are unit and deterministic") {
  std::mt19937_64 gen(17);
  for (int rep = 0; rep < 200; ++rep) {
    const Exponent p = random_p(gen);
    const i64 n = 1 + static_cast<i64>(gen() % 9);
    const u64 seed = gen();
    const LpVector v = ball_sample(n, p, seed);
    CHECK(std::abs(v.norm() - 1.0) <= 1e-10);
    const LpVector again = ball_sample(n, p, seed);
    for (i64 j = 0; j < n; ++j) CHECK(v.coords[static_cast<size_t>(j)] == again.coords[static_cast<size_t>(j)]);
  }
  const LpVector scalar = ball_sample(1, exp_of("7/2"), 5);
  CHECK(std::abs(std::abs(scalar.coords[0]) - 1.0) <= 1e-12);
  // real-field samples stay real
  const LpVector real = ball_sample(4, exp_of("3"), 11, Field::RealSign);
  for (const auto& e : real.coords) CHECK(e.imag() == 0.0);
}
