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

#include "ksz/ksz.h"

#include <cstring>
#include <new>
#include <string>

#include <json.hpp>

#include "core/experiments.hpp"
#include "core/exponents.hpp"
#include "core/lp.hpp"
#include "core/normest.hpp"
#include "core/parallel.hpp"
#include "core/tensor.hpp"

struct ksz_tensor {
  ksz::UnimodularTensor t;
};

struct ksz_estimate {
  ksz::NormEstimate e;
  ksz::Field field;
};

struct ksz_record {
  ksz::RunRecord r;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
ksz_status wrap(Fn&& fn) {
  try {
    fn();
    return KSZ_OK;
  } catch (const std::invalid_argument& e) {
    g_last_error = e.what();
    return KSZ_ERROR_ARGUMENT;
  } catch (const std::domain_error& e) {
    g_last_error = e.what();
    return KSZ_ERROR_DOMAIN;
  } catch (const ksz::capability_error& e) {
    g_last_error = e.what();
    return KSZ_ERROR_CAPABILITY;
  } catch (const ksz::schema_error& e) {
    g_last_error = e.what();
    return KSZ_ERROR_SCHEMA;
  } catch (const ksz::io_error& e) {
    g_last_error = e.what();
    return KSZ_ERROR_IO;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return KSZ_ERROR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return KSZ_ERROR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::vector<ksz::i64> parse_dims(std::string_view text) {
  std::vector<ksz::i64> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t sep = std::string_view::npos;
    for (size_t i = start; i < text.size(); ++i) {
      if (text[i] == 'x' || text[i] == 'X') {
        sep = i;
        break;
      }
    }
    const std::string_view tok =
        text.substr(start, sep == std::string_view::npos ? text.size() - start : sep - start);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("malformed dimension token '" + std::string(tok) +
                                  "' (expected e.g. \"4x4\")");
    }
    out.push_back(std::stoll(std::string(tok)));
    if (sep == std::string_view::npos) break;
    start = sep + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty dimension list");
  return out;
}

std::vector<ksz::i64> parse_int_list(std::string_view text) {
  std::vector<ksz::i64> out;
  size_t start = 0;
  while (start <= text.size()) {
    const size_t comma = text.find(',', start);
    const std::string_view tok =
        text.substr(start, comma == std::string_view::npos ? text.size() - start : comma - start);
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string_view::npos) {
      throw std::invalid_argument("malformed integer token '" + std::string(tok) + "'");
    }
    out.push_back(std::stoll(std::string(tok)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (out.empty()) throw std::invalid_argument("empty integer list");
  return out;
}

ksz::ojson rational_json(const ksz::Rational& r) {
  return ksz::ojson{{"exact", r.str()}, {"value", r.value()}};
}

ksz::ojson exponent_json(const ksz::Exponent& p) {
  if (p.is_infinite()) return ksz::ojson{{"exact", "inf"}, {"value", "inf"}};
  return ksz::ojson{{"exact", p.str()}, {"value", p.value()}};
}

ksz::EstimatorSettings estimator_settings(int num_starts, double tol, int max_cycles,
                                          ksz_method method) {
  ksz::EstimatorSettings est;
  switch (method) {
    case KSZ_METHOD_AUTO: est.method = "auto"; break;
    case KSZ_METHOD_ALTERNATING: est.method = "alternating"; break;
    case KSZ_METHOD_VERTEX: est.method = "vertex"; break;
    case KSZ_METHOD_SV: est.method = "sv"; break;
    default: throw std::invalid_argument("unknown method code");
  }
  if (num_starts > 0) est.starts = num_starts;
  if (tol > 0.0) est.tol = tol;
  if (max_cycles > 0) est.max_cycles = max_cycles;
  return est;
}

ksz::MultiStartOptions multi_start_options(const ksz::EstimatorSettings& est, ksz::u64 seed) {
  ksz::MultiStartOptions ms;
  ms.num_starts = est.starts;
  ms.seed = seed;
  ms.ascent.tol = est.tol;
  ms.ascent.max_cycles = est.max_cycles;
  return ms;
}

ksz::ojson estimate_to_json(const ksz_estimate& h) {
  ksz::ojson j;
  j["lower"] = h.e.lower;
  if (h.e.upper) {
    j["upper"] = *h.e.upper;
  } else {
    j["upper"] = nullptr;
  }
  j["method"] = std::string(ksz::method_name(h.e.method));
  j["iterations"] = h.e.iterations;
  j["converged"] = h.e.converged;
  ksz::ojson witness = ksz::ojson::array();
  for (const auto& vec : h.e.witness) {
    ksz::ojson v = ksz::ojson::array();
    for (const auto& e : vec) {
      if (h.field == ksz::Field::RealSign) {
        v.push_back(e.real());
      } else {
        v.push_back(ksz::ojson::array({e.real(), e.imag()}));
      }
    }
    witness.push_back(std::move(v));
  }
  j["witness"] = std::move(witness);
  return j;
}

}  // namespace

extern "C" {

const char* ksz_version(void) { return KSZ_VERSION_STRING; }

const char* ksz_last_error(void) { return g_last_error.c_str(); }

void ksz_string_free(char* s) { delete[] s; }

ksz_status ksz_set_threads(int n) {
  return wrap([&] { ksz::set_thread_count(n); });
}

ksz_status ksz_profile_json(const char* p_list, char** out_json) {
  return wrap([&] {
    require(p_list && out_json, "null argument");
    const auto ps = ksz::parse_exponent_list(p_list);
    const ksz::ExponentProfile prof = ksz::profile(ps);
    ksz::ojson j;
    ksz::ojson toks = ksz::ojson::array();
    ksz::ojson conj = ksz::ojson::array();
    for (const auto& p : prof.ps) {
      toks.push_back(p.str());
      conj.push_back(p.conjugate().str());
    }
    j["ps"] = std::move(toks);
    j["conjugates"] = std::move(conj);
    j["m"] = prof.ps.size();
    j["optimal"] = rational_json(prof.optimal);
    j["albuquerque_rezende"] = rational_json(prof.albuquerque_rezende);
    j["classical_ksz"] = prof.classical_ksz ? rational_json(*prof.classical_ksz) : ksz::ojson(nullptr);
    j["bayart"] = prof.bayart ? rational_json(*prof.bayart) : ksz::ojson(nullptr);
    j["gamma"] = exponent_json(prof.gamma);
    j["rho"] = exponent_json(prof.rho);
    j["regime"] = std::string(ksz::regime_name(prof.regime));
    j["optimal_le_ar"] = prof.optimal_le_ar;
    *out_json = dup_string(j.dump());
  });
}

ksz_status ksz_conjugate(double p, double* out) {
  return wrap([&] {
    require(out != nullptr, "null argument");
    *out = ksz::Exponent::from_double(p).conjugate().value();
  });
}

#define KSZ_EXPONENT_FN(c_name, core_name)                         \
  ksz_status c_name(const char* p_list, double* out) {             \
    return wrap([&] {                                              \
      require(p_list && out, "null argument");                     \
      const auto ps = ksz::parse_exponent_list(p_list);            \
      *out = ksz::core_name(ps).value();                           \
    });                                                            \
  }

KSZ_EXPONENT_FN(ksz_optimal_exponent, optimal_exponent)
KSZ_EXPONENT_FN(ksz_ar_exponent, ar_exponent)
KSZ_EXPONENT_FN(ksz_classical_ksz_exponent, classical_ksz_exponent)
KSZ_EXPONENT_FN(ksz_bayart_exponent, bayart_exponent)

#undef KSZ_EXPONENT_FN

ksz_status ksz_hl_lower_bound(const char* p_list, int64_t n, double* out) {
  return wrap([&] {
    require(p_list && out, "null argument");
    const auto ps = ksz::parse_exponent_list(p_list);
    *out = ksz::hl_lower_bound(ps, n);
  });
}

ksz_status ksz_tensor_rademacher(const char* dims, uint64_t seed, ksz_tensor** out) {
  return wrap([&] {
    require(dims && out, "null argument");
    *out = new ksz_tensor{ksz::rademacher(parse_dims(dims), seed)};
  });
}

ksz_status ksz_tensor_steinhaus(const char* dims, uint64_t seed, ksz_tensor** out) {
  return wrap([&] {
    require(dims && out, "null argument");
    *out = new ksz_tensor{ksz::steinhaus(parse_dims(dims), seed)};
  });
}

ksz_status ksz_tensor_fourier(int64_t n, ksz_tensor** out) {
  return wrap([&] {
    require(out != nullptr, "null argument");
    *out = new ksz_tensor{ksz::fourier_matrix(n)};
  });
}

ksz_status ksz_tensor_read(const char* path, ksz_tensor** out) {
  return wrap([&] {
    require(path && out, "null argument");
    *out = new ksz_tensor{ksz::read_tensor(path)};
  });
}

ksz_status ksz_tensor_write(const ksz_tensor* t, const char* path) {
  return wrap([&] {
    require(t && path, "null argument");
    ksz::write_tensor(t->t, path);
  });
}

ksz_status ksz_tensor_json(const ksz_tensor* t, char** out_json) {
  return wrap([&] {
    require(t && out_json, "null argument");
    *out_json = dup_string(ksz::tensor_to_json(t->t));
  });
}

ksz_status ksz_tensor_restrict(const ksz_tensor* t, const char* dims, ksz_tensor** out) {
  return wrap([&] {
    require(t && dims && out, "null argument");
    *out = new ksz_tensor{ksz::restrict_tensor(t->t, parse_dims(dims))};
  });
}

ksz_status ksz_tensor_order(const ksz_tensor* t, size_t* out) {
  return wrap([&] {
    require(t && out, "null argument");
    *out = t->t.order();
  });
}

ksz_status ksz_tensor_dims(const ksz_tensor* t, int64_t* buf, size_t buflen) {
  return wrap([&] {
    require(t && buf, "null argument");
    require(buflen >= t->t.order(), "dims buffer too small");
    for (size_t k = 0; k < t->t.order(); ++k) buf[k] = t->t.dims()[k];
  });
}

ksz_status ksz_tensor_is_real(const ksz_tensor* t, int* out) {
  return wrap([&] {
    require(t && out, "null argument");
    *out = t->t.field() == ksz::Field::RealSign ? 1 : 0;
  });
}

ksz_status ksz_tensor_orthogonality_defect(const ksz_tensor* t, double* out) {
  return wrap([&] {
    require(t && out, "null argument");
    *out = ksz::orthogonality_defect(t->t);
  });
}

void ksz_tensor_free(ksz_tensor* t) { delete t; }

ksz_status ksz_norm_estimate(const ksz_tensor* t, const char* p_list, ksz_method method,
                             int num_starts, uint64_t seed, double tol, int max_cycles,
                             ksz_estimate** out) {
  return wrap([&] {
    require(t && p_list && out, "null argument");
    const auto ps = ksz::parse_exponent_list(p_list);
    const ksz::EstimatorSettings est = estimator_settings(num_starts, tol, max_cycles, method);
    ksz::FormInstance f(t->t, ksz::DomainSpec::of(t->t.dims(), ps));
    ksz::NormEstimate e = ksz::estimate_norm(f, ksz::method_request_from_name(est.method),
                                             multi_start_options(est, seed));
    *out = new ksz_estimate{std::move(e), t->t.field()};
  });
}

ksz_status ksz_estimate_lower(const ksz_estimate* e, double* out) {
  return wrap([&] {
    require(e && out, "null argument");
    *out = e->e.lower;
  });
}

ksz_status ksz_estimate_upper(const ksz_estimate* e, int* has_upper, double* out) {
  return wrap([&] {
    require(e && has_upper && out, "null argument");
    *has_upper = e->e.upper.has_value() ? 1 : 0;
    *out = e->e.upper.value_or(0.0);
  });
}

ksz_status ksz_estimate_method(const ksz_estimate* e, const char** out) {
  return wrap([&] {
    require(e && out, "null argument");
    *out = ksz::method_name(e->e.method).data();
  });
}

ksz_status ksz_estimate_iterations(const ksz_estimate* e, int64_t* out) {
  return wrap([&] {
    require(e && out, "null argument");
    *out = e->e.iterations;
  });
}

ksz_status ksz_estimate_converged(const ksz_estimate* e, int* out) {
  return wrap([&] {
    require(e && out, "null argument");
    *out = e->e.converged ? 1 : 0;
  });
}

ksz_status ksz_estimate_json(const ksz_estimate* e, char** out_json) {
  return wrap([&] {
    require(e && out_json, "null argument");
    *out_json = dup_string(estimate_to_json(*e).dump());
  });
}

void ksz_estimate_free(ksz_estimate* e) { delete e; }

ksz_status ksz_basis_lower_bound(const ksz_tensor* t, const char* p_list, double* out) {
  return wrap([&] {
    require(t && p_list && out, "null argument");
    const auto ps = ksz::parse_exponent_list(p_list);
    ksz::FormInstance f(t->t, ksz::DomainSpec::of(t->t.dims(), ps));
    *out = ksz::basis_lower_bound(f);
  });
}

ksz_status ksz_restriction_lower_bound(const ksz_tensor* t, const char* p_list, size_t slot,
                                       int num_starts, uint64_t seed, double* out) {
  return wrap([&] {
    require(t && p_list && out, "null argument");
    const auto ps = ksz::parse_exponent_list(p_list);
    ksz::FormInstance f(t->t, ksz::DomainSpec::of(t->t.dims(), ps));
    ksz::EstimatorSettings est;
    if (num_starts > 0) est.starts = num_starts;
    *out = ksz::restriction_lower_bound(f, slot, multi_start_options(est, seed));
  });
}

ksz_status ksz_upper_bound_factor(const char* dims, const char* p_list, double* out) {
  return wrap([&] {
    require(dims && p_list && out, "null argument");
    const auto dd = parse_dims(dims);
    const auto ps = ksz::parse_exponent_list(p_list);
    *out = ksz::optimal_bound_factor(ksz::DomainSpec::of(dd, ps));
  });
}

ksz_status ksz_search_run(const char* p_list, int64_t n, int64_t trials, int exhaustive,
                          uint64_t seed, int num_starts, double tol, int max_cycles,
                          ksz_record** out_record, ksz_tensor** out_best) {
  return wrap([&] {
    require(p_list && out_record, "null argument");
    const auto ps = ksz::parse_exponent_list(p_list);
    const ksz::EstimatorSettings est =
        estimator_settings(num_starts, tol, max_cycles, KSZ_METHOD_AUTO);
    ksz::SearchOutcome outcome =
        ksz::min_norm_search(ps, n, trials, seed, est, exhaustive != 0);
    *out_record = new ksz_record{std::move(outcome.record)};
    if (out_best) *out_best = new ksz_tensor{std::move(outcome.best)};
  });
}

ksz_status ksz_slope_run(const char* p_list, const char* n_list, int64_t trials, uint64_t seed,
                         int num_starts, double tol, int max_cycles, ksz_record** out_record) {
  return wrap([&] {
    require(p_list && n_list && out_record, "null argument");
    const auto ps = ksz::parse_exponent_list(p_list);
    const auto ns = parse_int_list(n_list);
    const ksz::EstimatorSettings est =
        estimator_settings(num_starts, tol, max_cycles, KSZ_METHOD_AUTO);
    *out_record = new ksz_record{ksz::slope_experiment(ps, ns, trials, seed, est)};
  });
}

ksz_status ksz_conjecture_ratio(int64_t n1, int64_t n2, int64_t n3, double* out) {
  return wrap([&] {
    require(out != nullptr, "null argument");
    *out = ksz::conjecture_ratio(n1, n2, n3);
  });
}

ksz_status ksz_conjecture_run(const char* n_list, ksz_record** out_record) {
  return wrap([&] {
    require(n_list && out_record, "null argument");
    const auto ns = parse_int_list(n_list);
    *out_record = new ksz_record{ksz::conjecture_series(ns)};
  });
}

ksz_status ksz_fourier_scan_run(const char* n1_list, const char* n2_list, const char* p_list,
                                int num_starts, uint64_t seed, double tol, int max_cycles,
                                ksz_record** out_record) {
  return wrap([&] {
    require(n1_list && n2_list && p_list && out_record, "null argument");
    const auto n1s = parse_int_list(n1_list);
    const auto n2s = parse_int_list(n2_list);
    const auto ps = ksz::parse_exponent_list(p_list);
    const ksz::EstimatorSettings est =
        estimator_settings(num_starts, tol, max_cycles, KSZ_METHOD_AUTO);
    *out_record = new ksz_record{ksz::fourier_scan(n1s, n2s, ps, est, seed)};
  });
}

ksz_status ksz_constant_one_run(const char* n1_list, const char* n2_list, const char* p_list,
                                int num_starts, uint64_t seed, double tol, int max_cycles,
                                ksz_record** out_record) {
  return wrap([&] {
    require(n1_list && n2_list && p_list && out_record, "null argument");
    const auto n1s = parse_int_list(n1_list);
    const auto n2s = parse_int_list(n2_list);
    const auto ps = ksz::parse_exponent_list(p_list);
    const ksz::EstimatorSettings est =
        estimator_settings(num_starts, tol, max_cycles, KSZ_METHOD_AUTO);
    *out_record = new ksz_record{ksz::constant_comparison(n1s, n2s, ps, est, seed)};
  });
}

ksz_status ksz_record_json(const ksz_record* r, char** out_json) {
  return wrap([&] {
    require(r && out_json, "null argument");
    *out_json = dup_string(ksz::record_to_json(r->r).dump(2));
  });
}

ksz_status ksz_record_rows(const ksz_record* r, char** out_text) {
  return wrap([&] {
    require(r && out_text, "null argument");
    *out_text = dup_string(r->r.rows_dump());
  });
}

ksz_status ksz_record_csv(const ksz_record* r, char** out_text) {
  return wrap([&] {
    require(r && out_text, "null argument");
    *out_text = dup_string(ksz::record_csv(r->r));
  });
}

ksz_status ksz_record_write(const ksz_record* r, const char* path) {
  return wrap([&] {
    require(r && path, "null argument");
    ksz::write_record(r->r, path);
  });
}

ksz_status ksz_record_load(const char* path, ksz_record** out_record) {
  return wrap([&] {
    require(path && out_record, "null argument");
    *out_record = new ksz_record{ksz::load_record(path)};
  });
}

ksz_status ksz_csv_describe(const char* kind, char** out_text) {
  return wrap([&] {
    require(kind && out_text, "null argument");
    *out_text = dup_string(ksz::csv_describe(ksz::kind_from_name(kind)));
  });
}

void ksz_record_free(ksz_record* r) { delete r; }

}  // extern "C"
