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

#include "core/lp.hpp"

#include <cmath>
#include <stdexcept>

#include "core/rng.hpp"

namespace ksz {

double lp_norm(std::span<const Complex> v, const Exponent& p) {
  if (v.empty()) return 0.0;
  if (p.is_infinite()) {
    double best = 0.0;
    for (const Complex& e : v) best = std::max(best, std::abs(e));
    return best;
  }
  const double pd = p.value();
  double vmax = 0.0;
  for (const Complex& e : v) vmax = std::max(vmax, std::abs(e));
  if (vmax == 0.0) return 0.0;
  long double acc = 0.0L;
  if (pd == 1.0) {
    for (const Complex& e : v) acc += std::abs(e);
    return static_cast<double>(acc);
  }
  if (pd == 2.0) {
    // scaled to keep the squares in range for very small/large coords
    for (const Complex& e : v) {
      const long double re = e.real() / vmax, im = e.imag() / vmax;
      acc += re * re + im * im;
    }
    return vmax * static_cast<double>(std::sqrt(acc));
  }
  for (const Complex& e : v) {
    const double a = std::abs(e);
    if (a > 0.0) acc += std::pow(static_cast<long double>(a / vmax), static_cast<long double>(pd));
  }
  return vmax * static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(pd)));
}

DualityMax duality_maximizer(std::span<const Complex> c, const Exponent& p) {
  if (c.empty()) throw std::invalid_argument("duality maximizer needs a nonempty vector");
  DualityMax out;
  out.x.assign(c.size(), Complex(0.0, 0.0));

  bool all_zero = true;
  for (const Complex& e : c) {
    if (e != Complex(0.0, 0.0)) {
      all_zero = false;
      break;
    }
  }
  if (all_zero) {
    out.x[0] = Complex(1.0, 0.0);
    out.value = 0.0;
    return out;
  }

  if (p.reciprocal() == Rational{1, 1}) {  // p = 1: dual is l_inf, pick a vertex
    size_t j0 = 0;
    double best = -1.0;
    for (size_t j = 0; j < c.size(); ++j) {
      const double a = std::abs(c[j]);
      if (a > best) {
        best = a;
        j0 = j;
      }
    }
    out.x[j0] = std::conj(c[j0]) / best;
    out.value = best;
    return out;
  }

  if (p.is_infinite()) {  // dual is l_1: align every phase
    long double acc = 0.0L;
    for (size_t j = 0; j < c.size(); ++j) {
      const double a = std::abs(c[j]);
      if (a > 0.0) {
        out.x[j] = std::conj(c[j]) / a;
        acc += a;
      }
    }
    out.value = static_cast<double>(acc);
    return out;
  }

  const Exponent q = p.conjugate();  // 1 < p < inf
  const double dual = lp_norm(c, q);
  const double qd = q.value();
  for (size_t j = 0; j < c.size(); ++j) {
    const double a = std::abs(c[j]);
    if (a > 0.0) {
      out.x[j] = std::conj(c[j]) / a * std::pow(a / dual, qd - 1.0);
    }
  }
  out.value = dual;
  return out;
}

LpVector ball_sample(i64 n, const Exponent& p, u64 seed, Field field) {
  if (n < 1) throw std::invalid_argument("ball sample needs n >= 1");
  SeededRng rng(seed);
  CVec x(static_cast<size_t>(n));
  for (auto& e : x) {
    const double re = rng.gaussian();
    const double im = field == Field::ComplexUnimodular ? rng.gaussian() : 0.0;
    e = Complex(re, im);
  }
  const double norm = lp_norm(x, p);
  if (norm == 0.0) {
    x.assign(static_cast<size_t>(n), Complex(0.0, 0.0));
    x[0] = Complex(1.0, 0.0);
  } else {
    for (auto& e : x) e /= norm;
  }
  return LpVector{std::move(x), p};
}

}  // namespace ksz
