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

#include <span>

#include "core/common.hpp"
#include "core/exponents.hpp"
#include "core/tensor.hpp"

namespace ksz {

/// (sum |v_j|^p)^{1/p}; max_j |v_j| when p = inf. Accumulates in long
/// double so the acceptance tolerances are not eaten by summation error.
double lp_norm(std::span<const Complex> v, const Exponent& p);

/// A vector tagged with the exponent of the ball it is meant to live on.
struct LpVector {
  CVec coords;
  Exponent p;

  double norm() const { return lp_norm(coords, p); }
};

struct DualityMax {
  CVec x;       // ||x||_p = 1
  double value; // sum c_j x_j, real and equal to ||c||_{p*}
};

/// The extremal vector on the l_p ball: returns x with ||x||_p = 1 and
/// sum_j c_j x_j = ||c||_{p*} (real, nonnegative).
///   1 < p < inf : x_j = conj(c_j)/|c_j| * |c_j|^{p*-1} / ||c||_{p*}^{p*-1}
///   p = inf     : x_j = conj(c_j)/|c_j|, value ||c||_1
///   p = 1       : phase * e_{j0} at the smallest index attaining max |c_j|
/// Zero coordinates get zero weight; c = 0 returns x = e_1 with value 0
/// (documented convention, not an error).
DualityMax duality_maximizer(std::span<const Complex> c, const Exponent& p);

/// Unit vector on the l_p sphere: direction uniform on the Euclidean
/// sphere (real or complex per `field`), then p-normalized. Deterministic
/// in the seed.
LpVector ball_sample(i64 n, const Exponent& p, u64 seed,
                     Field field = Field::ComplexUnimodular);

}  // namespace ksz
