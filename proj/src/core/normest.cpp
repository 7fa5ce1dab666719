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

#include "core/normest.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "core/rng.hpp"

namespace ksz {

namespace {

constexpr double kUnitLow = 1.0 - 1e-6;
constexpr double kUnitHigh = 1.0 + 1e-9;

void check_unit_start(const FormInstance& f, const std::vector<CVec>& start) {
  if (start.size() != f.domain.order()) {
    throw std::invalid_argument("ascent start needs one vector per slot");
  }
  for (size_t k = 0; k < start.size(); ++k) {
    if (static_cast<i64>(start[k].size()) != f.domain.factors[k].dim) {
      throw std::invalid_argument("ascent start vector length mismatch");
    }
    const double norm = lp_norm(start[k], f.domain.factors[k].p);
    if (norm < kUnitLow || norm > kUnitHigh) {
      throw std::invalid_argument("ascent start vectors must be unit in their l_p norms");
    }
  }
}

CVec normalized_ones(i64 n, const Exponent& p) {
  CVec v(static_cast<size_t>(n), Complex(1.0, 0.0));
  const double norm = lp_norm(v, p);
  for (auto& e : v) e /= norm;
  return v;
}

CVec basis_vector(i64 n, i64 j) {
  CVec v(static_cast<size_t>(n), Complex(0.0, 0.0));
  v[static_cast<size_t>(j)] = Complex(1.0, 0.0);
  return v;
}

double real_dual_norm(const std::vector<double>& c, const Exponent& q) {
  if (q.is_infinite()) {
    double best = 0.0;
    for (double e : c) best = std::max(best, std::abs(e));
    return best;
  }
  const double qd = q.value();
  long double acc = 0.0L;
  if (qd == 1.0) {
    for (double e : c) acc += std::abs(e);
    return static_cast<double>(acc);
  }
  if (qd == 2.0) {
    for (double e : c) acc += static_cast<long double>(e) * e;
    return static_cast<double>(std::sqrt(acc));
  }
  for (double e : c) {
    const double a = std::abs(e);
    if (a > 0.0) acc += std::pow(static_cast<long double>(a), static_cast<long double>(qd));
  }
  return static_cast<double>(std::pow(acc, 1.0L / static_cast<long double>(qd)));
}

struct BasisWitness {
  double value = -1.0;
  size_t slot = 0;
  std::vector<i64> others;  // indices for the slots != slot, in slot order
  CVec fiber;
};

BasisWitness best_basis_fiber(const FormInstance& f) {
  const auto& t = f.tensor;
  const size_t m = t.order();
  BasisWitness best;
  for (size_t k = 0; k < m; ++k) {
    const Exponent q = f.domain.factors[k].p.conjugate();
    const i64 nk = t.dims()[k];
    i64 inner = 1;
    for (size_t l = k + 1; l < m; ++l) inner *= t.dims()[l];
    i64 outer = 1;
    for (size_t l = 0; l < k; ++l) outer *= t.dims()[l];
    CVec fiber(static_cast<size_t>(nk));
    for (i64 pre = 0; pre < outer; ++pre) {
      for (i64 post = 0; post < inner; ++post) {
        for (i64 j = 0; j < nk; ++j) {
          fiber[static_cast<size_t>(j)] = t.entry((pre * nk + j) * inner + post);
        }
        const double v = lp_norm(fiber, q);
        if (v > best.value) {
          best.value = v;
          best.slot = k;
          best.fiber = fiber;
          best.others.clear();
          i64 rem_pre = pre;
          std::vector<i64> pre_idx(k);
          for (size_t l = k; l-- > 0;) {
            pre_idx[l] = rem_pre % t.dims()[l];
            rem_pre /= t.dims()[l];
          }
          i64 rem_post = post;
          std::vector<i64> post_idx(m - k - 1);
          for (size_t l = m - k - 1; l-- > 0;) {
            post_idx[l] = rem_post % t.dims()[k + 1 + l];
            rem_post /= t.dims()[k + 1 + l];
          }
          best.others.insert(best.others.end(), pre_idx.begin(), pre_idx.end());
          best.others.insert(best.others.end(), post_idx.begin(), post_idx.end());
        }
      }
    }
  }
  return best;
}

}  // namespace

std::string_view method_name(Method m) {
  switch (m) {
    case Method::Alternating: return "alternating";
    case Method::VertexExact: return "vertex-exact";
    case Method::SingularValue: return "singular-value";
    case Method::BasisCertificate: return "basis-certificate";
  }
  return "alternating";
}

NormEstimate alternating_ascent(const FormInstance& f, std::vector<CVec> start,
                                const AscentOptions& opts) {
  if (opts.tol <= 0.0) throw std::invalid_argument("ascent tol must be positive");
  if (opts.max_cycles < 1) throw std::invalid_argument("ascent needs max_cycles >= 1");
  check_unit_start(f, start);

  std::vector<CVec> xs = std::move(start);
  const size_t m = f.domain.order();

  // Rotate slot 1 so A(xs) starts real nonnegative; every slot update then
  // keeps the pairing real at exactly the dual norm.
  Complex a0 = evaluate(f, xs);
  double value = std::abs(a0);
  if (value > 0.0) {
    const Complex phase = std::conj(a0) / value;
    for (auto& e : xs[0]) e *= phase;
  }

  i64 cycles = 0;
  bool converged = false;
  for (i64 cycle = 1; cycle <= opts.max_cycles; ++cycle) {
    const double prev = value;
    for (size_t k = 0; k < m; ++k) {
      CVec c = partial_coefficients(f.tensor, xs, k);
      DualityMax dm = duality_maximizer(c, f.domain.factors[k].p);
      if (dm.value < value * (1.0 - 1e-9) - 1e-12) {
        throw std::logic_error("alternating ascent objective decreased");
      }
      xs[k] = std::move(dm.x);
      value = dm.value;
    }
    cycles = cycle;
    if (value - prev <= opts.tol * value) {
      converged = true;
      break;
    }
  }

  NormEstimate out;
  out.lower = std::abs(evaluate(f, xs));  // re-evaluated at the witness
  out.witness = std::move(xs);
  out.method = Method::Alternating;
  out.iterations = cycles;
  out.converged = converged;
  return out;
}

NormEstimate multi_start_estimate(const FormInstance& f, const MultiStartOptions& opts) {
  if (opts.num_starts < 1) throw std::invalid_argument("multi-start needs num_starts >= 1");
  const size_t m = f.domain.order();
  const auto dims = f.tensor.dims();

  std::vector<std::vector<CVec>> starts;
  starts.push_back(basis_certificate(f).witness);

  std::vector<CVec> ones(m);
  for (size_t k = 0; k < m; ++k) ones[k] = normalized_ones(dims[k], f.domain.factors[k].p);
  starts.push_back(std::move(ones));

  // Basis tuples over the small slots (all e_j for n_k <= 8, the all-ones
  // direction for larger slots), capped to keep the start list bounded.
  constexpr i64 kBasisTupleCap = 4096;
  i64 tuple_count = 1;
  for (size_t k = 0; k < m && tuple_count <= kBasisTupleCap; ++k) {
    tuple_count *= dims[k] <= 8 ? dims[k] : 1;
  }
  if (tuple_count <= kBasisTupleCap) {
    std::vector<i64> idx(m, 0);
    bool done = false;
    while (!done) {
      std::vector<CVec> tuple(m);
      for (size_t k = 0; k < m; ++k) {
        tuple[k] = dims[k] <= 8 ? basis_vector(dims[k], idx[k])
                                : normalized_ones(dims[k], f.domain.factors[k].p);
      }
      starts.push_back(std::move(tuple));
      done = true;
      for (size_t k = m; k-- > 0;) {
        if (dims[k] > 8) continue;
        if (++idx[k] < dims[k]) {
          done = false;
          break;
        }
        idx[k] = 0;
      }
    }
  }

  for (i64 i = 0; i < opts.num_starts; ++i) {
    std::vector<CVec> tuple(m);
    for (size_t k = 0; k < m; ++k) {
      tuple[k] = ball_sample(dims[k], f.domain.factors[k].p,
                             derive_seed(opts.seed, static_cast<u64>(i) + 1, k),
                             f.tensor.field())
                     .coords;
    }
    starts.push_back(std::move(tuple));
  }

  NormEstimate best;
  best.lower = -1.0;
  for (auto& s : starts) {
    NormEstimate run = alternating_ascent(f, std::move(s), opts.ascent);
    if (run.lower > best.lower) best = std::move(run);
  }
  return best;
}

namespace {

struct VertexPlan {
  size_t solved_slot = 0;
  std::vector<size_t> enumerated;           // slots walked over sign vectors
  std::vector<std::pair<size_t, i64>> bits; // (slot, coordinate) per Gray bit
  u64 assignments = 1;
};

// Builds the enumeration plan or the reason it cannot run.
std::optional<VertexPlan> plan_vertex(const FormInstance& f, const VertexOptions& opts,
                                      std::string* why) {
  const auto& t = f.tensor;
  if (t.field() != Field::RealSign) {
    if (why) *why = "vertex oracle requires real signs";
    return std::nullopt;
  }
  VertexPlan plan;
  std::vector<size_t> finite;
  for (size_t k = 0; k < f.domain.order(); ++k) {
    if (!f.domain.factors[k].p.is_infinite()) finite.push_back(k);
  }
  if (finite.size() > 1) {
    if (why) *why = "vertex oracle requires all but at most one slot at p = inf";
    return std::nullopt;
  }
  if (finite.size() == 1) {
    plan.solved_slot = finite[0];
  } else {
    size_t arg = 0;
    for (size_t k = 1; k < t.order(); ++k) {
      if (t.dims()[k] > t.dims()[arg]) arg = k;
    }
    plan.solved_slot = arg;
  }
  for (size_t k = 0; k < t.order(); ++k) {
    if (k != plan.solved_slot) plan.enumerated.push_back(k);
  }
  i64 bit_count = 0;
  for (size_t k : plan.enumerated) bit_count += t.dims()[k];
  if (!plan.enumerated.empty()) bit_count -= 1;  // last slot's first coordinate is pinned
  if (bit_count >= 62) {
    if (why) *why = "sign enumeration exceeds the configured cap";
    return std::nullopt;
  }
  plan.assignments = u64(1) << bit_count;
  if (plan.assignments > opts.max_assignments) {
    if (why) {
      *why = "sign enumeration needs " + std::to_string(plan.assignments) +
             " assignments, over the cap " + std::to_string(opts.max_assignments);
    }
    return std::nullopt;
  }
  for (size_t e = 0; e < plan.enumerated.size(); ++e) {
    const size_t k = plan.enumerated[e];
    const i64 first = (e + 1 == plan.enumerated.size()) ? 1 : 0;  // pin the last slot's coord 0
    for (i64 j = first; j < t.dims()[k]; ++j) plan.bits.emplace_back(k, j);
  }
  return plan;
}

}  // namespace

bool vertex_norm_applicable(const FormInstance& f, const VertexOptions& opts) {
  return plan_vertex(f, opts, nullptr).has_value();
}

NormEstimate exact_vertex_norm(const FormInstance& f, const VertexOptions& opts) {
  std::string why;
  auto plan = plan_vertex(f, opts, &why);
  if (!plan) throw capability_error(why);

  const auto& t = f.tensor;
  const size_t m = t.order();
  const Exponent q = f.domain.factors[plan->solved_slot].p.conjugate();

  std::vector<std::vector<double>> signs(m);
  for (size_t k = 0; k < m; ++k) signs[k].assign(static_cast<size_t>(t.dims()[k]), 1.0);

  double best = -1.0;
  u64 best_assignment = 0;

  const bool fast_bilinear = m == 2;
  if (fast_bilinear) {
    const size_t other = plan->enumerated.empty() ? 1 - plan->solved_slot : plan->enumerated[0];
    const size_t k0 = plan->solved_slot;
    const i64 n_other = t.dims()[other];
    const i64 n0 = t.dims()[k0];
    // real part view; entries are exact +-1
    std::vector<double> a(static_cast<size_t>(n_other * n0));
    for (i64 i = 0; i < n_other; ++i) {
      for (i64 j = 0; j < n0; ++j) {
        const i64 flat = other == 0 ? i * n0 + j : j * n_other + i;
        a[static_cast<size_t>(i * n0 + j)] = t.entry(flat).real();
      }
    }
    std::vector<double> c(static_cast<size_t>(n0), 0.0);
    for (i64 i = 0; i < n_other; ++i) {
      for (i64 j = 0; j < n0; ++j) c[static_cast<size_t>(j)] += a[static_cast<size_t>(i * n0 + j)];
    }
    best = real_dual_norm(c, q);
    best_assignment = 0;
    std::vector<double>& s = signs[other];
    u64 gray = 0;
    for (u64 g = 1; g < plan->assignments; ++g) {
      const u64 next_gray = g ^ (g >> 1);
      const u64 flipped = gray ^ next_gray;  // exactly one bit
      gray = next_gray;
      const int b = std::countr_zero(flipped);
      const i64 coord = plan->bits[static_cast<size_t>(b)].second;
      s[static_cast<size_t>(coord)] = -s[static_cast<size_t>(coord)];
      const double w = 2.0 * s[static_cast<size_t>(coord)];
      const double* row = a.data() + coord * n0;
      for (i64 j = 0; j < n0; ++j) c[static_cast<size_t>(j)] += w * row[j];
      const double v = real_dual_norm(c, q);
      if (v > best) {
        best = v;
        best_assignment = gray;
      }
    }
  } else {
    // General path: recompute the solved slot's coefficients per assignment.
    const u64 cost_guard = u64(1) << 28;
    if (plan->assignments > cost_guard / std::max<u64>(1, static_cast<u64>(t.size()))) {
      throw capability_error("sign enumeration cost exceeds the cap for this tensor size");
    }
    std::vector<CVec> frozen(m);
    auto rebuild = [&](u64 gray) {
      for (size_t k = 0; k < m; ++k) {
        signs[k].assign(static_cast<size_t>(t.dims()[k]), 1.0);
      }
      for (size_t b = 0; b < plan->bits.size(); ++b) {
        if (gray & (u64(1) << b)) {
          auto [slot, coord] = plan->bits[b];
          signs[slot][static_cast<size_t>(coord)] = -1.0;
        }
      }
      for (size_t k = 0; k < m; ++k) {
        frozen[k].assign(signs[k].begin(), signs[k].end());
      }
    };
    for (u64 g = 0; g < plan->assignments; ++g) {
      const u64 gray = g ^ (g >> 1);
      rebuild(gray);
      CVec c = partial_coefficients(t, frozen, plan->solved_slot);
      std::vector<double> cr(c.size());
      for (size_t j = 0; j < c.size(); ++j) cr[j] = c[j].real();
      const double v = real_dual_norm(cr, q);
      if (v > best) {
        best = v;
        best_assignment = gray;
      }
    }
  }

  // Rebuild the best assignment and its witness.
  for (size_t k = 0; k < m; ++k) signs[k].assign(static_cast<size_t>(t.dims()[k]), 1.0);
  for (size_t b = 0; b < plan->bits.size(); ++b) {
    if (best_assignment & (u64(1) << b)) {
      auto [slot, coord] = plan->bits[b];
      signs[slot][static_cast<size_t>(coord)] = -1.0;
    }
  }
  std::vector<CVec> witness(m);
  for (size_t k = 0; k < m; ++k) witness[k].assign(signs[k].begin(), signs[k].end());
  CVec c = partial_coefficients(t, witness, plan->solved_slot);
  DualityMax dm = duality_maximizer(c, f.domain.factors[plan->solved_slot].p);
  witness[plan->solved_slot] = std::move(dm.x);

  NormEstimate out;
  out.lower = dm.value;
  out.upper = dm.value;
  out.witness = std::move(witness);
  out.method = Method::VertexExact;
  out.iterations = static_cast<i64>(plan->assignments);
  out.converged = true;
  return out;
}

NormEstimate bilinear_l2_norm(const FormInstance& f, u64 seed) {
  if (f.domain.order() != 2 || !f.domain.factors[0].p.is_two() ||
      !f.domain.factors[1].p.is_two()) {
    throw std::invalid_argument("the singular-value oracle needs a bilinear form on l_2 x l_2");
  }
  const i64 n1 = f.tensor.dims()[0];
  const i64 n2 = f.tensor.dims()[1];
  const Complex* a = f.tensor.entries().data();
  const Exponent two = Exponent::parse("2");

  auto apply = [&](const CVec& v) {  // w = M v
    CVec w(static_cast<size_t>(n1), Complex(0.0, 0.0));
    for (i64 i = 0; i < n1; ++i) {
      Complex acc(0.0, 0.0);
      const Complex* row = a + i * n2;
      for (i64 j = 0; j < n2; ++j) acc += row[j] * v[static_cast<size_t>(j)];
      w[static_cast<size_t>(i)] = acc;
    }
    return w;
  };
  auto apply_adjoint = [&](const CVec& w) {  // u = M^H w
    CVec u(static_cast<size_t>(n2), Complex(0.0, 0.0));
    for (i64 i = 0; i < n1; ++i) {
      const Complex* row = a + i * n2;
      const Complex wi = w[static_cast<size_t>(i)];
      for (i64 j = 0; j < n2; ++j) u[static_cast<size_t>(j)] += std::conj(row[j]) * wi;
    }
    return u;
  };

  constexpr i64 kMaxIters = 10000;
  constexpr double kTol = 1e-10;

  i64 total_iters = 0;
  bool converged_any = false;
  double best_sigma = -1.0;
  CVec best_v;

  auto run = [&](CVec v) {
    const double vn = lp_norm(v, two);
    for (auto& e : v) e /= vn;
    double prev = -1.0;
    for (i64 it = 1; it <= kMaxIters; ++it) {
      ++total_iters;
      CVec w = apply(v);
      const double sigma = lp_norm(w, two);
      CVec u = apply_adjoint(w);
      const double un = lp_norm(u, two);
      if (un == 0.0) {  // v spans the null space; sigma is 0 along this run
        if (sigma > best_sigma) {
          best_sigma = sigma;
          best_v = v;
        }
        converged_any = true;
        return;
      }
      for (auto& e : u) e /= un;
      v = std::move(u);
      if (prev >= 0.0 && std::abs(sigma - prev) <= kTol * std::max(sigma, 1e-300)) {
        if (sigma > best_sigma) {
          best_sigma = sigma;
          best_v = std::move(v);
        }
        converged_any = true;
        return;
      }
      prev = sigma;
    }
    CVec w = apply(v);
    const double sigma = lp_norm(w, two);
    if (sigma > best_sigma) {
      best_sigma = sigma;
      best_v = std::move(v);
    }
  };

  run(CVec(static_cast<size_t>(n2), Complex(1.0, 0.0)));
  SeededRng rng(derive_seed(seed, 0x5175ULL));
  CVec rstart(static_cast<size_t>(n2));
  for (auto& e : rstart) {
    e = f.tensor.field() == Field::ComplexUnimodular ? Complex(rng.gaussian(), rng.gaussian())
                                                     : Complex(rng.gaussian(), 0.0);
  }
  run(std::move(rstart));

  CVec w = apply(best_v);
  const double sigma = lp_norm(w, two);
  CVec left(static_cast<size_t>(n1), Complex(0.0, 0.0));
  if (sigma > 0.0) {
    for (i64 i = 0; i < n1; ++i) left[static_cast<size_t>(i)] = std::conj(w[static_cast<size_t>(i)]) / sigma;
  } else {
    left[0] = Complex(1.0, 0.0);
  }

  NormEstimate out;
  out.lower = sigma;
  out.upper = sigma;
  out.witness = {std::move(left), std::move(best_v)};
  out.method = Method::SingularValue;
  out.iterations = total_iters;
  out.converged = converged_any;
  return out;
}

double basis_lower_bound(const FormInstance& f) { return best_basis_fiber(f).value; }

NormEstimate basis_certificate(const FormInstance& f) {
  BasisWitness bw = best_basis_fiber(f);
  const size_t m = f.domain.order();
  std::vector<CVec> witness(m);
  size_t pos = 0;
  for (size_t k = 0; k < m; ++k) {
    if (k == bw.slot) continue;
    witness[k] = basis_vector(f.tensor.dims()[k], bw.others[pos++]);
  }
  DualityMax dm = duality_maximizer(bw.fiber, f.domain.factors[bw.slot].p);
  witness[bw.slot] = std::move(dm.x);

  NormEstimate out;
  out.lower = dm.value;
  out.witness = std::move(witness);
  out.method = Method::BasisCertificate;
  out.iterations = 0;
  out.converged = true;
  return out;
}

double restriction_lower_bound(const FormInstance& f, size_t slot,
                               const MultiStartOptions& opts) {
  if (f.domain.order() < 2) {
    throw std::invalid_argument("restriction needs an m >= 2 linear form");
  }
  if (slot >= f.domain.order()) throw std::invalid_argument("slot out of range");
  std::vector<i64> new_dims(f.tensor.dims().begin(), f.tensor.dims().end());
  new_dims[slot] = 1;
  UnimodularTensor frozen = squeeze_axis(restrict_tensor(f.tensor, new_dims), slot);
  DomainSpec sub;
  for (size_t k = 0; k < f.domain.order(); ++k) {
    if (k != slot) sub.factors.push_back(f.domain.factors[k]);
  }
  return multi_start_estimate(FormInstance(std::move(frozen), std::move(sub)), opts).lower;
}

double optimal_bound_factor(const DomainSpec& domain) {
  const auto ps = domain.exponents();
  const Rational inv_rho = rho_exponent(ps).reciprocal();
  double sum = 0.0;
  for (const auto& fct : domain.factors) sum += static_cast<double>(fct.dim);
  double out = std::pow(sum, inv_rho.value());
  const Rational half{1, 2};
  for (const auto& fct : domain.factors) {
    const Rational e = max(half - fct.p.reciprocal(), Rational{0, 1});
    if (e.num != 0) out *= std::pow(static_cast<double>(fct.dim), e.value());
  }
  return out;
}

MethodRequest method_request_from_name(std::string_view name) {
  if (name == "auto") return MethodRequest::Auto;
  if (name == "alternating") return MethodRequest::Alternating;
  if (name == "vertex") return MethodRequest::Vertex;
  if (name == "sv") return MethodRequest::SingularValue;
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected auto|alternating|vertex|sv)");
}

NormEstimate estimate_norm(const FormInstance& f, MethodRequest request,
                           const MultiStartOptions& ms, const VertexOptions& vx) {
  const bool l2_bilinear = f.domain.order() == 2 && f.domain.factors[0].p.is_two() &&
                           f.domain.factors[1].p.is_two();
  switch (request) {
    case MethodRequest::Alternating:
      return multi_start_estimate(f, ms);
    case MethodRequest::Vertex:
      return exact_vertex_norm(f, vx);
    case MethodRequest::SingularValue:
      if (!l2_bilinear) {
        throw capability_error("the singular-value oracle needs a bilinear form on l_2 x l_2");
      }
      return bilinear_l2_norm(f, ms.seed);
    case MethodRequest::Auto:
      if (l2_bilinear) return bilinear_l2_norm(f, ms.seed);
      if (vertex_norm_applicable(f, vx)) return exact_vertex_norm(f, vx);
      return multi_start_estimate(f, ms);
  }
  throw std::logic_error("unreachable method request");
}

}  // namespace ksz
