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

#include "core/tensor.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace ksz {

namespace {

constexpr double kLoadDefectTol = 1e-9;

i64 checked_volume(std::span<const i64> dims) {
  if (dims.empty()) throw std::invalid_argument("tensor needs at least one dimension");
  i64 total = 1;
  for (i64 d : dims) {
    if (d < 1) throw std::invalid_argument("tensor dimensions must be positive");
    if (total > (i64(1) << 40) / d) throw std::invalid_argument("tensor too large");
    total *= d;
  }
  return total;
}

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

UnimodularTensor UnimodularTensor::create(std::vector<i64> dims, CVec entries, Field field,
                                          Provenance provenance) {
  const i64 total = checked_volume(dims);
  if (total != static_cast<i64>(entries.size())) {
    throw std::invalid_argument("entry count does not match dimensions");
  }
  for (const Complex& e : entries) {
    if (field == Field::RealSign) {
      if (e.imag() != 0.0 || (e.real() != 1.0 && e.real() != -1.0)) {
        throw std::invalid_argument("real-sign tensor entries must be exactly +-1");
      }
    } else if (std::abs(std::abs(e) - 1.0) > kLoadDefectTol) {
      throw std::invalid_argument("tensor entry is not unimodular");
    }
  }
  return UnimodularTensor(std::move(dims), std::move(entries), field, std::move(provenance));
}

UnimodularTensor rademacher(std::span<const i64> dims, u64 seed) {
  const i64 total = checked_volume(dims);
  SeededRng rng(seed);
  CVec entries(static_cast<size_t>(total));
  for (auto& e : entries) e = Complex(rng.sign(), 0.0);
  return UnimodularTensor::create({dims.begin(), dims.end()}, std::move(entries), Field::RealSign,
                                  Provenance{"rademacher", seed});
}

UnimodularTensor steinhaus(std::span<const i64> dims, u64 seed) {
  const i64 total = checked_volume(dims);
  SeededRng rng(seed);
  CVec entries(static_cast<size_t>(total));
  for (auto& e : entries) e = rng.unit_phase();
  return UnimodularTensor::create({dims.begin(), dims.end()}, std::move(entries),
                                  Field::ComplexUnimodular, Provenance{"steinhaus", seed});
}

UnimodularTensor fourier_matrix(i64 n) {
  if (n < 1) throw std::invalid_argument("fourier matrix needs n >= 1");
  // n-th roots of unity; the product ij is reduced mod n before the table
  // lookup so the angle never loses precision to a large argument.
  CVec roots(static_cast<size_t>(n));
  for (i64 t = 0; t < n; ++t) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(t) / static_cast<double>(n);
    roots[static_cast<size_t>(t)] = Complex(std::cos(a), std::sin(a));
  }
  CVec entries(static_cast<size_t>(n * n));
  for (i64 i = 1; i <= n; ++i) {
    for (i64 j = 1; j <= n; ++j) {
      entries[static_cast<size_t>((i - 1) * n + (j - 1))] =
          roots[static_cast<size_t>((i * j) % n)];
    }
  }
  return UnimodularTensor::create({n, n}, std::move(entries), Field::ComplexUnimodular,
                                  Provenance{"fourier", std::nullopt});
}

double orthogonality_defect(const UnimodularTensor& t) {
  if (t.order() != 2 || t.dims()[0] != t.dims()[1]) {
    throw std::invalid_argument("orthogonality defect requires a square matrix tensor");
  }
  const i64 n = t.dims()[0];
  const Complex* a = t.entries().data();
  std::vector<double> row_defect(static_cast<size_t>(n), 0.0);
  parallel_for(n, [&](i64 r) {
    double defect = 0.0;
    for (i64 s = r; s < n; ++s) {
      const Complex* ar = a + r * n;
      const Complex* as = a + s * n;
      double re = 0.0, im = 0.0;
      for (i64 k = 0; k < n; ++k) {
        // a_rt * conj(a_st)
        re += ar[k].real() * as[k].real() + ar[k].imag() * as[k].imag();
        im += ar[k].imag() * as[k].real() - ar[k].real() * as[k].imag();
      }
      if (r == s) re -= static_cast<double>(n);
      defect = std::max(defect, std::hypot(re, im));
    }
    row_defect[static_cast<size_t>(r)] = defect;
  });
  double defect = 0.0;
  for (double d : row_defect) defect = std::max(defect, d);
  return defect;
}

UnimodularTensor restrict_tensor(const UnimodularTensor& t, std::span<const i64> new_dims) {
  if (new_dims.size() != t.order()) {
    throw std::invalid_argument("restriction must keep the tensor order");
  }
  for (size_t k = 0; k < new_dims.size(); ++k) {
    if (new_dims[k] < 1 || new_dims[k] > t.dims()[k]) {
      throw std::invalid_argument("restriction dims must satisfy 1 <= new <= old");
    }
  }
  const i64 total = checked_volume(new_dims);
  const size_t m = t.order();
  CVec entries(static_cast<size_t>(total));
  std::vector<i64> idx(m, 0);
  for (i64 flat = 0; flat < total; ++flat) {
    i64 src = 0;
    for (size_t k = 0; k < m; ++k) src = src * t.dims()[k] + idx[k];
    entries[static_cast<size_t>(flat)] = t.entry(src);
    for (size_t k = m; k-- > 0;) {
      if (++idx[k] < new_dims[k]) break;
      idx[k] = 0;
    }
  }
  return UnimodularTensor::create({new_dims.begin(), new_dims.end()}, std::move(entries),
                                  t.field(), t.provenance());
}

UnimodularTensor squeeze_axis(const UnimodularTensor& t, size_t axis) {
  if (axis >= t.order() || t.dims()[axis] != 1) {
    throw std::invalid_argument("squeeze needs an axis of size 1");
  }
  if (t.order() == 1) throw std::invalid_argument("cannot squeeze a vector to order 0");
  std::vector<i64> dims(t.dims().begin(), t.dims().end());
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(axis));
  return UnimodularTensor::create(std::move(dims), {t.entries().begin(), t.entries().end()},
                                  t.field(), t.provenance());
}

std::string tensor_to_json(const UnimodularTensor& t) {
  // Hand-rolled writer: the format pins 17 significant digits per number,
  // which a generic serializer does not guarantee.
  std::ostringstream out;
  out << "{\"dims\":[";
  for (size_t k = 0; k < t.order(); ++k) out << (k ? "," : "") << t.dims()[k];
  out << "],\"field\":\"" << (t.field() == Field::RealSign ? "real" : "complex")
      << "\",\"entries\":[";
  bool first = true;
  for (const Complex& e : t.entries()) {
    if (!first) out << ",";
    first = false;
    if (t.field() == Field::RealSign) {
      out << format_number(e.real());
    } else {
      out << "[" << format_number(e.real()) << "," << format_number(e.imag()) << "]";
    }
  }
  out << "],\"provenance\":{\"kind\":\"" << t.provenance().kind << "\",\"seed\":";
  if (t.provenance().seed) {
    out << *t.provenance().seed;
  } else {
    out << "null";
  }
  out << "}}";
  return out.str();
}

UnimodularTensor tensor_from_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw schema_error(std::string("tensor file is not valid JSON: ") + e.what());
  }
  try {
    if (!doc.is_object()) throw schema_error("tensor file must hold a JSON object");
    std::vector<i64> dims = doc.at("dims").get<std::vector<i64>>();
    const std::string field_name = doc.at("field").get<std::string>();
    Field field;
    if (field_name == "real") {
      field = Field::RealSign;
    } else if (field_name == "complex") {
      field = Field::ComplexUnimodular;
    } else {
      throw schema_error("unknown tensor field '" + field_name + "'");
    }
    const auto& raw = doc.at("entries");
    CVec entries;
    entries.reserve(raw.size());
    for (const auto& v : raw) {
      if (field == Field::RealSign) {
        const double x = v.get<double>();
        if (std::abs(std::abs(x) - 1.0) > kLoadDefectTol) {
          throw schema_error("real tensor entry is not unimodular");
        }
        entries.emplace_back(x < 0 ? -1.0 : 1.0, 0.0);  // snap to an exact sign
      } else {
        if (!v.is_array() || v.size() != 2) {
          throw schema_error("complex entries must be [re, im] pairs");
        }
        Complex e(v[0].get<double>(), v[1].get<double>());
        if (std::abs(std::abs(e) - 1.0) > kLoadDefectTol) {
          throw schema_error("complex tensor entry is not unimodular");
        }
        entries.push_back(e);
      }
    }
    Provenance prov;
    if (doc.contains("provenance")) {
      const auto& p = doc.at("provenance");
      prov.kind = p.value("kind", std::string("file"));
      if (p.contains("seed") && !p.at("seed").is_null()) {
        prov.seed = p.at("seed").get<u64>();
      }
    }
    try {
      return UnimodularTensor::create(std::move(dims), std::move(entries), field, std::move(prov));
    } catch (const std::invalid_argument& e) {
      throw schema_error(e.what());
    }
  } catch (const nlohmann::json::exception& e) {
    throw schema_error(std::string("malformed tensor file: ") + e.what());
  }
}

void write_tensor(const UnimodularTensor& t, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << tensor_to_json(t) << "\n";
  if (!out) throw io_error("failed writing '" + path + "'");
}

UnimodularTensor read_tensor(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("failed reading '" + path + "'");
  return tensor_from_json(buf.str());
}

DomainSpec DomainSpec::of(std::span<const i64> dims, std::span<const Exponent> ps) {
  if (dims.empty() || dims.size() != ps.size()) {
    throw std::invalid_argument("domain needs matching nonempty dims and exponents");
  }
  DomainSpec d;
  d.factors.reserve(dims.size());
  for (size_t k = 0; k < dims.size(); ++k) {
    if (dims[k] < 1) throw std::invalid_argument("domain dimensions must be positive");
    d.factors.push_back({dims[k], ps[k]});
  }
  return d;
}

std::vector<i64> DomainSpec::dims() const {
  std::vector<i64> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.dim);
  return out;
}

std::vector<Exponent> DomainSpec::exponents() const {
  std::vector<Exponent> out;
  out.reserve(factors.size());
  for (const auto& f : factors) out.push_back(f.p);
  return out;
}

FormInstance::FormInstance(UnimodularTensor t, DomainSpec d)
    : tensor(std::move(t)), domain(std::move(d)) {
  if (tensor.order() != domain.order()) {
    throw std::invalid_argument("tensor order does not match domain");
  }
  for (size_t k = 0; k < domain.order(); ++k) {
    if (tensor.dims()[k] != domain.factors[k].dim) {
      throw std::invalid_argument("tensor dimensions do not match domain");
    }
  }
}

namespace {

// out[p, s] = sum_j in[p, j, s] * v[j], removing `axis` from dims.
CVec contract_axis(const CVec& data, std::vector<i64>& dims, size_t axis, const CVec& v) {
  const i64 na = dims[axis];
  i64 inner = 1;
  for (size_t k = axis + 1; k < dims.size(); ++k) inner *= dims[k];
  i64 outer = 1;
  for (size_t k = 0; k < axis; ++k) outer *= dims[k];
  CVec out(static_cast<size_t>(outer * inner), Complex(0.0, 0.0));
  for (i64 p = 0; p < outer; ++p) {
    for (i64 j = 0; j < na; ++j) {
      const Complex w = v[static_cast<size_t>(j)];
      const Complex* src = data.data() + (p * na + j) * inner;
      Complex* dst = out.data() + p * inner;
      for (i64 s = 0; s < inner; ++s) dst[s] += src[s] * w;
    }
  }
  dims.erase(dims.begin() + static_cast<std::ptrdiff_t>(axis));
  return out;
}

void check_vectors(const UnimodularTensor& t, std::span<const CVec> vectors, size_t skip) {
  if (vectors.size() != t.order()) {
    throw std::invalid_argument("one vector per tensor slot required");
  }
  for (size_t k = 0; k < vectors.size(); ++k) {
    if (k == skip) continue;
    if (static_cast<i64>(vectors[k].size()) != t.dims()[k]) {
      throw std::invalid_argument("vector length does not match slot dimension");
    }
  }
}

}  // namespace

Complex evaluate(const UnimodularTensor& t, std::span<const CVec> vectors) {
  check_vectors(t, vectors, t.order());
  std::vector<i64> dims(t.dims().begin(), t.dims().end());
  CVec cur(t.entries().begin(), t.entries().end());
  for (size_t k = t.order(); k-- > 0;) {
    cur = contract_axis(cur, dims, k, vectors[k]);
  }
  return cur[0];
}

Complex evaluate(const FormInstance& f, std::span<const CVec> vectors) {
  return evaluate(f.tensor, vectors);
}

CVec partial_coefficients(const UnimodularTensor& t, std::span<const CVec> vectors, size_t slot) {
  if (slot >= t.order()) throw std::invalid_argument("slot out of range");
  check_vectors(t, vectors, slot);
  std::vector<i64> dims(t.dims().begin(), t.dims().end());
  CVec cur(t.entries().begin(), t.entries().end());
  for (size_t k = t.order(); k-- > 0;) {
    if (k == slot) continue;
    cur = contract_axis(cur, dims, k, vectors[k]);
  }
  return cur;
}

CVec partial_coefficients(const FormInstance& f, std::span<const CVec> vectors, size_t slot) {
  return partial_coefficients(f.tensor, vectors, slot);
}

}  // namespace ksz
