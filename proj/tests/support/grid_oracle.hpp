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

// Test-only reference for the norm of small REAL bilinear forms on
// l_p^{n1} x l_q^{n2}: a dense grid over the first slot's sphere with the
// second slot solved in closed form. Written against nothing but <cmath>
// on purpose: it must stay independent of the library code it checks.
//
// The grid is the p-normalized Euclidean-sphere lattice plus every +-e_i
// and every p-normalized sign vector, which makes the reference exact for
// p in {1, inf} (the maximum of a convex function over those balls sits
// at the included extreme points) and accurate to ~1e-5 relative
// otherwise at the default resolutions.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace grid_oracle {

// ||c||_{p*} for the conjugate of q (the second slot's exponent), real c.
inline double dual_norm(const double* c, int n, double q) {
  if (q == 1.0) {  // dual l_inf
    double best = 0.0;
    for (int j = 0; j < n; ++j) best = std::max(best, std::fabs(c[j]));
    return best;
  }
  if (std::isinf(q)) {  // dual l_1
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += std::fabs(c[j]);
    return acc;
  }
  const double qs = q / (q - 1.0);
  double acc = 0.0;
  if (qs == 2.0) {
    for (int j = 0; j < n; ++j) acc += c[j] * c[j];
    return std::sqrt(acc);
  }
  if (qs == 3.0) {
    for (int j = 0; j < n; ++j) acc += std::fabs(c[j]) * c[j] * c[j];
    return std::cbrt(acc);
  }
  if (qs == 1.5) {
    for (int j = 0; j < n; ++j) {
      const double a = std::fabs(c[j]);
      acc += a * std::sqrt(a);
    }
    return std::pow(acc, 2.0 / 3.0);
  }
  for (int j = 0; j < n; ++j) acc += std::pow(std::fabs(c[j]), qs);
  return std::pow(acc, 1.0 / qs);
}

inline double p_norm(const double* x, int n, double p) {
  if (std::isinf(p)) {
    double best = 0.0;
    for (int j = 0; j < n; ++j) best = std::max(best, std::fabs(x[j]));
    return best;
  }
  double acc = 0.0;
  for (int j = 0; j < n; ++j) acc += std::pow(std::fabs(x[j]), p);
  return std::pow(acc, 1.0 / p);
}

// Candidate first-slot points on the l_p sphere (n1 in {2, 3}).
inline std::vector<double> sphere_grid(int n1, double p, long budget) {
  std::vector<double> pts;
  auto push_normalized = [&](double a, double b, double c) {
    double x[3] = {a, b, c};
    const double norm = p_norm(x, n1, p);
    if (norm == 0.0) return;
    for (int j = 0; j < n1; ++j) pts.push_back(x[j] / norm);
  };
  if (n1 == 2) {
    const long steps = budget;
    for (long i = 0; i < steps; ++i) {
      const double th = M_PI * static_cast<double>(i) / static_cast<double>(steps);
      push_normalized(std::cos(th), std::sin(th), 0.0);
    }
  } else if (n1 == 3) {
    // antipodal symmetry: phi covers half a turn
    const long n_theta = static_cast<long>(std::sqrt(static_cast<double>(budget)));
    const long n_phi = n_theta == 0 ? 1 : budget / n_theta;
    for (long a = 0; a <= n_theta; ++a) {
      const double th = M_PI * static_cast<double>(a) / static_cast<double>(n_theta);
      for (long b = 0; b < n_phi; ++b) {
        const double ph = M_PI * static_cast<double>(b) / static_cast<double>(n_phi);
        push_normalized(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      }
    }
  } else {
    throw std::invalid_argument("grid oracle supports n1 in {2, 3}");
  }
  // extreme points: basis vectors and sign vertices
  for (int i = 0; i < n1; ++i) {
    double x[3] = {0.0, 0.0, 0.0};
    x[i] = 1.0;
    push_normalized(x[0], x[1], x[2]);
  }
  for (int mask = 0; mask < (1 << n1); ++mask) {
    double x[3] = {0.0, 0.0, 0.0};
    for (int i = 0; i < n1; ++i) x[i] = (mask >> i) & 1 ? -1.0 : 1.0;
    push_normalized(x[0], x[1], x[2]);
  }
  return pts;
}

// Reference norm of the real matrix M (n1 x n2 row-major, entries +-1 or
// anything real) on l_p^{n1} x l_q^{n2}. p, q as doubles with INFINITY.
inline double bilinear_norm(const std::vector<double>& M, int n1, int n2, double p, double q,
                            long budget = 100000) {
  const std::vector<double> grid = sphere_grid(n1, p, budget);
  const long count = static_cast<long>(grid.size()) / n1;
  double best = 0.0;
  std::vector<double> c(static_cast<size_t>(n2));
  for (long g = 0; g < count; ++g) {
    const double* x = grid.data() + g * n1;
    for (int j = 0; j < n2; ++j) {
      double acc = 0.0;
      for (int i = 0; i < n1; ++i) acc += M[static_cast<size_t>(i * n2 + j)] * x[i];
      c[static_cast<size_t>(j)] = acc;
    }
    best = std::max(best, dual_norm(c.data(), n2, q));
  }
  return best;
}

}  // namespace grid_oracle
