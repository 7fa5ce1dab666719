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

#include "core/normest.hpp"
#include "core/rng.hpp"
#include "support/grid_oracle.hpp"

using namespace ksz;

namespace {

Exponent exp_of(const char* tok) { return Exponent::parse(tok); }

UnimodularTensor sign_matrix(std::initializer_list<double> entries, i64 n1, i64 n2) {
  CVec e;
  for (double v : entries) e.emplace_back(v, 0.0);
  return UnimodularTensor::create({n1, n2}, std::move(e), Field::RealSign,
                                  Provenance{"file", std::nullopt});
}

FormInstance on_domain(const UnimodularTensor& t, std::initializer_list<const char*> ps) {
  std::vector<Exponent> es;
  for (const char* p : ps) es.push_back(exp_of(p));
  return FormInstance(t, DomainSpec::of(t.dims(), es));
}

UnimodularTensor sign_matrix_from_mask(int mask, i64 n1, i64 n2) {
  CVec e(static_cast<size_t>(n1 * n2));
  for (i64 b = 0; b < n1 * n2; ++b) {
    e[static_cast<size_t>(b)] = Complex((mask >> b) & 1 ? -1.0 : 1.0, 0.0);
  }
  return UnimodularTensor::create({n1, n2}, std::move(e), Field::RealSign,
                                  Provenance{"file", std::nullopt});
}

double oracle_for(const FormInstance& f, u64 seed) {
  const double p1 = f.domain.factors[0].p.value();
  const double p2 = f.domain.factors[1].p.value();
  if (vertex_norm_applicable(f)) return exact_vertex_norm(f).lower;
  if (p1 == 2.0 && p2 == 2.0) return bilinear_l2_norm(f, seed).lower;
  std::vector<double> M(static_cast<size_t>(f.tensor.size()));
  for (i64 i = 0; i < f.tensor.size(); ++i) M[static_cast<size_t>(i)] = f.tensor.entry(i).real();
  return grid_oracle::bilinear_norm(M, static_cast<int>(f.tensor.dims()[0]),
                                    static_cast<int>(f.tensor.dims()[1]), p1, p2);
}

}  // namespace

TEST_CASE("alternating ascent on the 2x2 character matrix reaches sqrt(2)") {
  const auto f2 = fourier_matrix(2);
  const FormInstance f = on_domain(f2, {"2", "2"});
  std::vector<CVec> start{ball_sample(2, exp_of("2"), 1).coords,
                          ball_sample(2, exp_of("2"), 2).coords};
  const NormEstimate e = alternating_ascent(f, start);
  CHECK(e.lower == doctest::Approx(std::sqrt(2.0)).epsilon(1e-8));
  CHECK(e.converged);
  CHECK(std::string(method_name(e.method)) == "alternating");

  // restarting at the converged witness cannot decrease the value
  const NormEstimate again = alternating_ascent(f, e.witness);
  CHECK(again.lower >= e.lower - 1e-9 * e.lower);
}

TEST_CASE("ascent solves 1 x n forms in one pass") {
  const auto row = steinhaus({1, 9}, 4242);
  const FormInstance f = on_domain(row, {"5/2", "3"});
  const NormEstimate e = multi_start_estimate(f, {.num_starts = 2, .seed = 9});
  // value is n^{1 - 1/p2} for any unimodular row
  CHECK(e.lower == doctest::Approx(std::pow(9.0, 2.0 / 3.0)).epsilon(1e-10));
}

TEST_CASE("ascent rejects non-unit starts") {
  const auto f2 = fourier_matrix(2);
  const FormInstance f = on_domain(f2, {"2", "2"});
  std::vector<CVec> bad{CVec{{2.0, 0.0}, {0.0, 0.0}}, CVec{{1.0, 0.0}, {0.0, 0.0}}};
  CHECK_THROWS_AS(alternating_ascent(f, bad), std::invalid_argument);
}

TEST_CASE("ascent objective is monotone along the run") {
  // replay a run slot by slot and check the value sequence by hand
  std::mt19937_64 gen(31);
  for (int rep = 0; rep < 25; ++rep) {
    const auto t = rademacher({3, 3}, gen());
    const FormInstance f = on_domain(t, {"3/2", "4"});
    std::vector<CVec> xs{ball_sample(3, exp_of("3/2"), gen(), Field::RealSign).coords,
                         ball_sample(3, exp_of("4"), gen(), Field::RealSign).coords};
    double value = std::abs(evaluate(f, xs));
    for (int cycle = 0; cycle < 8; ++cycle) {
      for (size_t k = 0; k < 2; ++k) {
        const CVec c = partial_coefficients(f.tensor, xs, k);
        const DualityMax dm = duality_maximizer(c, f.domain.factors[k].p);
        CHECK(dm.value >= value - 1e-9 * std::max(1.0, value));
        xs[k] = dm.x;
        value = dm.value;
      }
    }
  }
}

TEST_CASE("multi-start dominates the basis certificate") {
  std::mt19937_64 gen(555);
  for (int rep = 0; rep < 30; ++rep) {
    const i64 n1 = 2 + static_cast<i64>(gen() % 3);
    const i64 n2 = 2 + static_cast<i64>(gen() % 3);
    const auto t = gen() % 2 ? rademacher({n1, n2}, gen()) : steinhaus({n1, n2}, gen());
    const char* p_opts[] = {"1", "3/2", "2", "3", "inf"};
    const FormInstance f = on_domain(t, {p_opts[gen() % 5], p_opts[gen() % 5]});
    const NormEstimate e = multi_start_estimate(f, {.num_starts = 4, .seed = gen()});
    CHECK(e.lower >= basis_lower_bound(f) - 1e-9);
  }
}

TEST_CASE("multi-start finds sqrt(n) for character matrices on l2 x l2") {
  for (i64 n : {2, 4, 8, 16, 64}) {
    const FormInstance f = on_domain(fourier_matrix(n), {"2", "2"});
    const NormEstimate e = multi_start_estimate(f, {.num_starts = 8, .seed = 3});
    CHECK(e.lower == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-6));
  }
}

TEST_CASE("vertex oracle on tiny instances") {
  const auto had = sign_matrix({1, 1, 1, -1}, 2, 2);
  {
    const NormEstimate e = exact_vertex_norm(on_domain(had, {"inf", "inf"}));
    CHECK(e.lower == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(e.upper.has_value());
    CHECK(*e.upper == e.lower);
    CHECK(std::string(method_name(e.method)) == "vertex-exact");
  }
  {
    const NormEstimate e = exact_vertex_norm(on_domain(had, {"inf", "2"}));
    CHECK(e.lower == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    // all-ones 3x3 on l_inf x l_inf attains n^2 at the all-ones vectors
    CVec ones(9, Complex(1.0, 0.0));
    const auto t = UnimodularTensor::create({3, 3}, std::move(ones), Field::RealSign,
                                            Provenance{"file", std::nullopt});
    const NormEstimate e = exact_vertex_norm(on_domain(t, {"inf", "inf"}));
    CHECK(e.lower == doctest::Approx(9.0).epsilon(1e-12));
  }
  // multi-start agrees on the Hadamard-type instance
  const NormEstimate ms = multi_start_estimate(on_domain(had, {"inf", "inf"}),
                                               {.num_starts = 8, .seed = 11});
  CHECK(ms.lower == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("vertex oracle capability errors") {
  const auto complex_t = steinhaus({2, 2}, 3);
  CHECK_THROWS_AS(exact_vertex_norm(on_domain(complex_t, {"inf", "inf"})), capability_error);

  const auto real_t = rademacher({2, 2}, 3);
  CHECK_THROWS_AS(exact_vertex_norm(on_domain(real_t, {"2", "3"})), capability_error);

  const auto big = rademacher({30, 2}, 3);
  VertexOptions small_cap;
  small_cap.max_assignments = 1 << 10;
  try {
    exact_vertex_norm(on_domain(big, {"inf", "2"}), small_cap);
    FAIL("expected a capability error");
  } catch (const capability_error& e) {
    CHECK(std::string(e.what()).find("1024") != std::string::npos);  // names the violated cap
  }
}

TEST_CASE("vertex oracle handles trilinear forms") {
  std::mt19937_64 gen(606);
  for (int rep = 0; rep < 10; ++rep) {
    const auto t = rademacher({2, 2, 2}, gen());
    // independent brute force: both enumerable slots over sign vectors, the
    // last solved by the l_1 sum
    double brute = 0.0;
    for (int xs = 0; xs < 4; ++xs) {
      for (int ys = 0; ys < 4; ++ys) {
        const double x[2] = {(xs & 1) ? -1.0 : 1.0, (xs & 2) ? -1.0 : 1.0};
        const double y[2] = {(ys & 1) ? -1.0 : 1.0, (ys & 2) ? -1.0 : 1.0};
        double total = 0.0;
        for (int k = 0; k < 2; ++k) {
          double c = 0.0;
          for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
              c += t.entry((i * 2 + j) * 2 + k).real() * x[i] * y[j];
            }
          }
          total += std::abs(c);
        }
        brute = std::max(brute, total);
      }
    }
    const FormInstance all_inf = on_domain(t, {"inf", "inf", "inf"});
    CHECK(exact_vertex_norm(all_inf).lower == doctest::Approx(brute).epsilon(1e-12));
    const NormEstimate ms = multi_start_estimate(all_inf, {.num_starts = 12, .seed = gen()});
    CHECK(std::abs(ms.lower - brute) <= 1e-6 * brute);

    // one finite slot, two enumerated inf slots
    const FormInstance mixed = on_domain(t, {"inf", "inf", "2"});
    const double exact = exact_vertex_norm(mixed).lower;
    const double est = multi_start_estimate(mixed, {.num_starts = 12, .seed = gen()}).lower;
    CHECK(std::abs(est - exact) <= 1e-6 * exact);
    CHECK(restriction_lower_bound(mixed, 0, {.num_starts = 4, .seed = 3}) <= exact + 1e-9);
  }
}

TEST_CASE("degenerate slots: 1 x n and n x 1 norms are the dual fiber norms") {
  std::mt19937_64 gen(70);
  const char* p_opts[] = {"1", "3/2", "2", "3", "inf"};
  for (int rep = 0; rep < 8; ++rep) {
    const auto row = rademacher({1, 3}, gen());
    const auto col = rademacher({3, 1}, gen());
    for (const char* p1 : p_opts) {
      for (const char* p2 : p_opts) {
        const FormInstance fr = on_domain(row, {p1, p2});
        const double want_r = lp_norm(row.entries(), exp_of(p2).conjugate());
        CHECK(multi_start_estimate(fr, {.num_starts = 4, .seed = gen()}).lower ==
              doctest::Approx(want_r).epsilon(1e-9));
        const FormInstance fc = on_domain(col, {p1, p2});
        const double want_c = lp_norm(col.entries(), exp_of(p1).conjugate());
        CHECK(multi_start_estimate(fc, {.num_starts = 4, .seed = gen()}).lower ==
              doctest::Approx(want_c).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("vertex oracle matches brute force over all 2x2 sign matrices") {
  // independent check: level-by-level maximum over the 4 sign-vertex pairs
  for (int mask = 0; mask < 16; ++mask) {
    const auto t = sign_matrix_from_mask(mask, 2, 2);
    double brute = 0.0;
    for (int xs = 0; xs < 2; ++xs) {
      for (int ys = 0; ys < 4; ++ys) {
        const double x0 = 1.0, x1 = xs ? -1.0 : 1.0;
        const double y0 = (ys & 1) ? -1.0 : 1.0, y1 = (ys & 2) ? -1.0 : 1.0;
        const double v = std::abs(x0 * (t.entry(0).real() * y0 + t.entry(1).real() * y1) +
                                  x1 * (t.entry(2).real() * y0 + t.entry(3).real() * y1));
        brute = std::max(brute, v);
      }
    }
    const NormEstimate e = exact_vertex_norm(on_domain(t, {"inf", "inf"}));
    CHECK(e.lower == doctest::Approx(brute).epsilon(1e-12));
  }
}

TEST_CASE("singular value oracle") {
  for (i64 n : {1, 2, 3, 8, 32, 64}) {
    const FormInstance f = on_domain(fourier_matrix(n), {"2", "2"});
    const NormEstimate e = bilinear_l2_norm(f);
    CHECK(e.lower == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-10));
    CHECK(e.upper.has_value());
  }
  const auto had = sign_matrix({1, 1, 1, -1}, 2, 2);
  CHECK(bilinear_l2_norm(on_domain(had, {"2", "2"})).lower ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));

  CHECK_THROWS_AS(bilinear_l2_norm(on_domain(had, {"2", "3"})), std::invalid_argument);
  const auto cube = rademacher({2, 2, 2}, 4);
  CHECK_THROWS_AS(bilinear_l2_norm(on_domain(cube, {"2", "2", "2"})), std::invalid_argument);

  // oracle agreement with the generic estimator
  std::mt19937_64 gen(8);
  for (int rep = 0; rep < 10; ++rep) {
    const i64 n = 2 + static_cast<i64>(gen() % 4);
    const auto t = rademacher({n, n}, gen());
    const FormInstance f = on_domain(t, {"2", "2"});
    const double sv = bilinear_l2_norm(f).lower;
    const double ms = multi_start_estimate(f, {.num_starts = 8, .seed = gen()}).lower;
    CHECK(std::abs(sv - ms) <= 1e-6 * sv);
  }
}

TEST_CASE("basis lower bound") {
  {
    // slot with (n, p) = (8, 3/2) certifies 8^{1/3} = 2
    const auto t = rademacher({2, 8}, 21);
    const FormInstance f = on_domain(t, {"1", "3/2"});
    CHECK(basis_lower_bound(f) == doctest::Approx(2.0).epsilon(1e-12));
  }
  {
    // unimodular n x n on l_p x l_p with p < 2 gives n^{(p-1)/p}
    const auto t = steinhaus({5, 5}, 3);
    const FormInstance f = on_domain(t, {"4/3", "4/3"});
    CHECK(basis_lower_bound(f) == doctest::Approx(std::pow(5.0, 0.25)).epsilon(1e-12));
  }
  {
    std::mt19937_64 gen(40);
    for (int rep = 0; rep < 20; ++rep) {
      const auto t = rademacher({3, 3}, gen());
      const char* p_opts[] = {"1", "3/2", "2", "3", "inf"};
      const FormInstance f = on_domain(t, {p_opts[gen() % 5], p_opts[gen() % 5]});
      const NormEstimate e = multi_start_estimate(f, {.num_starts = 6, .seed = gen()});
      CHECK(basis_lower_bound(f) <= e.lower + 1e-9);
      // the certificate value is attained by its witness
      const NormEstimate cert = basis_certificate(f);
      CHECK(std::abs(evaluate(f, cert.witness)) ==
            doctest::Approx(cert.lower).epsilon(1e-9));
    }
  }
}

TEST_CASE("restriction lower bound") {
  {
    CVec ones(4, Complex(1.0, 0.0));
    const auto t = UnimodularTensor::create({2, 2}, std::move(ones), Field::RealSign,
                                            Provenance{"file", std::nullopt});
    const FormInstance f = on_domain(t, {"inf", "inf"});
    const double r = restriction_lower_bound(f, 1, {.num_starts = 2, .seed = 5});
    CHECK(r == doctest::Approx(2.0).epsilon(1e-10));  // linear form (1,1) on l_inf
    CHECK(r <= exact_vertex_norm(f).lower + 1e-9);
  }
  for (i64 n : {2, 4, 8}) {
    const FormInstance f = on_domain(fourier_matrix(n), {"2", "2"});
    const double r = restriction_lower_bound(f, 1, {.num_starts = 2, .seed = 5});
    CHECK(r == doctest::Approx(std::sqrt(static_cast<double>(n))).epsilon(1e-9));  // tight
  }
  {
    std::mt19937_64 gen(41);
    for (int rep = 0; rep < 15; ++rep) {
      const auto t = rademacher({3, 3}, gen());
      const FormInstance f = on_domain(t, {"3/2", "3"});
      const double full = multi_start_estimate(f, {.num_starts = 8, .seed = gen()}).lower;
      for (size_t k = 0; k < 2; ++k) {
        CHECK(restriction_lower_bound(f, k, {.num_starts = 4, .seed = gen()}) <= full + 1e-9);
      }
    }
  }
  const auto vec = rademacher({3}, 2);
  std::vector<Exponent> one_p{exp_of("2")};
  CHECK_THROWS_AS(
      restriction_lower_bound(FormInstance(vec, DomainSpec::of(vec.dims(), one_p)), 0, {}),
      std::invalid_argument);
}

TEST_CASE("upper bound factor") {
  {
    std::vector<i64> dims{3, 5, 7};
    const auto ps = parse_exponent_list("3/2,3,3");
    const double expect = std::sqrt(15.0) * std::pow(5.0, 1.0 / 6.0) * std::pow(7.0, 1.0 / 6.0);
    CHECK(optimal_bound_factor(DomainSpec::of(dims, ps)) ==
          doctest::Approx(expect).epsilon(1e-12));
  }
  {
    std::vector<i64> dims{6, 6, 6, 6};
    const auto ps = parse_exponent_list("2,2,2,2");
    CHECK(optimal_bound_factor(DomainSpec::of(dims, ps)) ==
          doctest::Approx(std::sqrt(24.0)).epsilon(1e-12));
  }
  {
    std::vector<i64> dims{9, 9};
    const auto ps = parse_exponent_list("inf,inf");
    CHECK(optimal_bound_factor(DomainSpec::of(dims, ps)) ==
          doctest::Approx(std::sqrt(2.0) * 27.0).epsilon(1e-12));
  }
}

TEST_CASE("estimates agree with independent references on 3x3 sign forms") {
  // scaled-down version of the acceptance sweep: random masks, all pairs
  std::mt19937_64 gen(616);
  const char* p_opts[] = {"1", "3/2", "2", "3", "inf"};
  for (int rep = 0; rep < 12; ++rep) {
    const int mask = static_cast<int>(gen() % 512);
    const auto t = sign_matrix_from_mask(mask, 3, 3);
    for (const char* p1 : p_opts) {
      for (const char* p2 : p_opts) {
        const FormInstance f = on_domain(t, {p1, p2});
        const double est = multi_start_estimate(f, {.num_starts = 32, .seed = gen()}).lower;
        const double ref = oracle_for(f, 7);
        CHECK(std::abs(est - ref) <= 1e-4 * std::max(est, ref));
      }
    }
  }
}

TEST_CASE("estimates agree with independent references on every 2x2 and sampled 2x3 form") {
  const char* p_opts[] = {"1", "3/2", "2", "3", "inf"};
  for (int mask = 0; mask < 16; ++mask) {
    const auto t = sign_matrix_from_mask(mask, 2, 2);
    for (const char* p1 : p_opts) {
      for (const char* p2 : p_opts) {
        const FormInstance f = on_domain(t, {p1, p2});
        const double est =
            multi_start_estimate(f, {.num_starts = 16, .seed = static_cast<u64>(mask)}).lower;
        const double ref = oracle_for(f, 3);
        CHECK(std::abs(est - ref) <= 1e-4 * std::max(est, ref));
      }
    }
  }
  std::mt19937_64 gen(77);
  for (int rep = 0; rep < 6; ++rep) {
    const auto t = sign_matrix_from_mask(static_cast<int>(gen() % 64), 2, 3);
    for (const char* p1 : p_opts) {
      for (const char* p2 : p_opts) {
        const FormInstance f = on_domain(t, {p1, p2});
        const double est = multi_start_estimate(f, {.num_starts = 16, .seed = gen()}).lower;
        const double ref = oracle_for(f, 3);
        CHECK(std::abs(est - ref) <= 1e-4 * std::max(est, ref));
      }
    }
  }
}

TEST_CASE("domain monotonicity of estimates") {
  std::mt19937_64 gen(2024);
  const char* small_opts[] = {"1", "3/2", "2"};
  const char* big_opts[] = {"2", "3", "inf"};
  for (int rep = 0; rep < 15; ++rep) {
    const auto t = rademacher({3, 3}, gen());
    const size_t a = gen() % 3, b = gen() % 3;
    const FormInstance f_small = on_domain(t, {small_opts[a], small_opts[b]});
    const FormInstance f_big = on_domain(t, {big_opts[a], big_opts[b]});
    const NormEstimate lo = multi_start_estimate(f_small, {.num_starts = 8, .seed = gen()});
    NormEstimate hi = multi_start_estimate(f_big, {.num_starts = 8, .seed = gen()});
    // refine the big-ball run from the small-ball witness (feasible there)
    std::vector<CVec> start = lo.witness;
    for (size_t k = 0; k < start.size(); ++k) {
      const double norm = lp_norm(start[k], f_big.domain.factors[k].p);
      if (norm > 0.0) {
        for (auto& e : start[k]) e /= norm;
      }
    }
    const NormEstimate refined = alternating_ascent(f_big, start);
    const double big_est = std::max(hi.lower, refined.lower);
    CHECK(lo.lower <= big_est + 1e-8);
  }
}

TEST_CASE("hardy-littlewood floor holds for exactly solvable sign forms") {
  const auto ps = parse_exponent_list("inf,inf");
  // every 2x2 and 3x3 sign matrix on l_inf x l_inf
  for (int mask = 0; mask < 16; ++mask) {
    const auto t = sign_matrix_from_mask(mask, 2, 2);
    const FormInstance f(t, DomainSpec::of(t.dims(), ps));
    CHECK(exact_vertex_norm(f).lower >= hl_lower_bound(ps, 2) - 1e-9);
  }
  for (int mask = 0; mask < 512; ++mask) {
    const auto t = sign_matrix_from_mask(mask, 3, 3);
    const FormInstance f(t, DomainSpec::of(t.dims(), ps));
    CHECK(exact_vertex_norm(f).lower >= hl_lower_bound(ps, 3) - 1e-9);
  }
  {
    // every 4x4 sign matrix, exactly solvable on l_inf x l_inf
    const double floor4 = hl_lower_bound(ps, 4);
    double min_norm = 1e300;
    for (int mask = 0; mask < (1 << 16); ++mask) {
      const auto t = sign_matrix_from_mask(mask, 4, 4);
      const FormInstance f(t, DomainSpec::of(t.dims(), ps));
      min_norm = std::min(min_norm, exact_vertex_norm(f).lower);
    }
    CHECK(min_norm >= floor4 - 1e-9);
  }
  // sampled finite exponents with the multi-start estimator
  std::mt19937_64 gen(11);
  const auto finite = parse_exponent_list("3,4");
  for (int rep = 0; rep < 40; ++rep) {
    const auto t = rademacher({3, 3}, gen());
    const FormInstance f(t, DomainSpec::of(t.dims(), finite));
    const double est = multi_start_estimate(f, {.num_starts = 16, .seed = gen()}).lower;
    CHECK(est >= hl_lower_bound(finite, 3) - 1e-9);
  }
}

TEST_CASE("forms on l_1 x l_inf have norm exactly n, matching the exponent 1") {
  // every unimodular n x n form on l_1 x l_inf attains max_i sum_j |a_ij| = n,
  // which is the n^1 predicted by the sharp exponent at p = (1, inf)
  CHECK(optimal_exponent(parse_exponent_list("1,inf")) == Rational::of(1));
  std::mt19937_64 gen(12);
  for (i64 n : {2, 3, 5}) {
    for (int rep = 0; rep < 5; ++rep) {
      const auto t = rademacher({n, n}, gen());
      const FormInstance f = on_domain(t, {"1", "inf"});
      const NormEstimate e = exact_vertex_norm(f);
      CHECK(e.lower == doctest::Approx(static_cast<double>(n)).epsilon(1e-12));
    }
  }
}

TEST_CASE("method dispatch picks the strongest oracle") {
  const auto had = sign_matrix({1, 1, 1, -1}, 2, 2);
  CHECK(estimate_norm(on_domain(had, {"2", "2"}), MethodRequest::Auto).method ==
        Method::SingularValue);
  CHECK(estimate_norm(on_domain(had, {"inf", "inf"}), MethodRequest::Auto).method ==
        Method::VertexExact);
  CHECK(estimate_norm(on_domain(had, {"3/2", "3"}), MethodRequest::Auto).method ==
        Method::Alternating);
  CHECK_THROWS_AS(estimate_norm(on_domain(had, {"3/2", "3"}), MethodRequest::SingularValue),
                  capability_error);
  const auto complex_t = steinhaus({2, 2}, 1);
  try {
    estimate_norm(on_domain(complex_t, {"inf", "inf"}), MethodRequest::Vertex);
    FAIL("expected a capability error");
  } catch (const capability_error& e) {
    CHECK(std::string(e.what()).find("real signs") != std::string::npos);
  }
  CHECK_THROWS_AS(method_request_from_name("newton"), std::invalid_argument);
}

TEST_CASE("estimate invariants: witness feasibility and attainment") {
  std::mt19937_64 gen(700);
  for (int rep = 0; rep < 20; ++rep) {
    const i64 n1 = 2 + static_cast<i64>(gen() % 3);
    const i64 n2 = 2 + static_cast<i64>(gen() % 3);
    const auto t = gen() % 2 ? rademacher({n1, n2}, gen()) : steinhaus({n1, n2}, gen());
    const char* p_opts[] = {"1", "3/2", "2", "3", "inf"};
    const FormInstance f = on_domain(t, {p_opts[gen() % 5], p_opts[gen() % 5]});
    const NormEstimate e = estimate_norm(f, MethodRequest::Auto, {.num_starts = 6, .seed = gen()});
    REQUIRE(e.witness.size() == 2);
    for (size_t k = 0; k < 2; ++k) {
      CHECK(lp_norm(e.witness[k], f.domain.factors[k].p) <= 1.0 + 1e-10);
    }
    CHECK(std::abs(std::abs(evaluate(f, e.witness)) - e.lower) <= 1e-9 * std::max(1.0, e.lower));
    if (e.upper) CHECK(*e.upper >= e.lower - 1e-9 * e.lower);
  }
}
