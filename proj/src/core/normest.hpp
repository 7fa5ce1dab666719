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
#include <string_view>
#include <vector>

#include "core/common.hpp"
#include "core/lp.hpp"
#include "core/tensor.hpp"

namespace ksz {

enum class Method { Alternating, VertexExact, SingularValue, BasisCertificate };
std::string_view method_name(Method m);

/// A certified lower bound for the operator norm, with the witness that
/// attains it; `upper` is present exactly when an exact oracle produced
/// the value. Everything claiming "the norm" carries its method tag.
struct NormEstimate {
  double lower = 0.0;
  std::vector<CVec> witness;
  std::optional<double> upper;
  Method method = Method::Alternating;
  i64 iterations = 0;
  bool converged = false;
};

struct AscentOptions {
  double tol = 1e-10;   // relative improvement per full cycle
  i64 max_cycles = 500;
};

/// Cyclic exact maximization over one slot at a time: slot k is replaced
/// by the duality maximizer of its partial coefficients, which makes the
/// objective |A(x_1,...,x_m)| nondecreasing step by step (this is checked
/// and a violation throws). Stops when one full cycle improves by less
/// than tol * value, or at max_cycles; the result is a valid lower bound
/// either way (converged reports which exit happened).
NormEstimate alternating_ascent(const FormInstance& f, std::vector<CVec> start,
                                const AscentOptions& opts = {});

struct MultiStartOptions {
  i64 num_starts = 16;
  u64 seed = 0;
  AscentOptions ascent;
};

/// Best of: the basis-certificate witness, the all-ones start, all basis
/// tuples over slots of dimension <= 8, and num_starts seeded ball
/// samples. The basis-certificate start makes lower >= basis_lower_bound
/// by construction. Deterministic in the seed.
NormEstimate multi_start_estimate(const FormInstance& f, const MultiStartOptions& opts = {});

struct VertexOptions {
  u64 max_assignments = u64(1) << 24;
};

bool vertex_norm_applicable(const FormInstance& f, const VertexOptions& opts = {});

/// Exact norm for real-sign forms where every slot but at most one has
/// p = inf: the maximum over products of balls is attained at extreme
/// points, so the inf slots are enumerated over sign vectors (the first
/// coordinate of the last enumerated slot is pinned by symmetry) and the
/// remaining slot is solved exactly by the duality maximizer. Returns
/// lower = upper. Throws capability_error when inapplicable or when the
/// enumeration exceeds the cap.
NormEstimate exact_vertex_norm(const FormInstance& f, const VertexOptions& opts = {});

/// Largest singular value of a bilinear form on l_2 x l_2 via power
/// iteration on A*A (relative tolerance 1e-10, cap 10^4 iterations), from
/// a seeded random start and the all-ones start. Returns lower = upper.
NormEstimate bilinear_l2_norm(const FormInstance& f, u64 seed = 0);

/// max over slot choices k of sup over basis indices of the other slots
/// of the l_{p_k*} norm of the coefficient fiber (each choice is a valid
/// lower bound; taking the best strengthens it).
double basis_lower_bound(const FormInstance& f);

/// Same bound packaged with its witness (basis vectors + dual vector).
NormEstimate basis_certificate(const FormInstance& f);

/// Norm estimate of the (m-1)-linear form obtained by freezing `slot` at
/// e_1; always <= the full norm.
double restriction_lower_bound(const FormInstance& f, size_t slot,
                               const MultiStartOptions& opts = {});

/// The n-dependent factor (sum n_k)^{1/rho} prod n_k^{max{1/2 - 1/p_k, 0}}
/// of the mixed-regime upper bound, with the universal constant omitted
/// (reported "modulo C(m)").
double optimal_bound_factor(const DomainSpec& domain);

enum class MethodRequest { Auto, Alternating, Vertex, SingularValue };
MethodRequest method_request_from_name(std::string_view name);

/// Auto picks the strongest applicable oracle: singular-value for l_2 x
/// l_2 bilinear, vertex enumeration for real signs with at most one
/// finite slot within the cap, multi-start ascent otherwise. Explicit
/// requests throw capability_error when the oracle does not apply.
NormEstimate estimate_norm(const FormInstance& f, MethodRequest request,
                           const MultiStartOptions& ms = {}, const VertexOptions& vx = {});

}  // namespace ksz
