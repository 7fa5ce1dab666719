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

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/common.hpp"
#include "core/exponents.hpp"

namespace ksz {

enum class Field { RealSign, ComplexUnimodular };

struct Provenance {
  std::string kind = "file";  // "rademacher" | "steinhaus" | "fourier" | "file"
  std::optional<u64> seed;
};

/// Dense coefficient tensor with every entry of modulus 1. Real-sign
/// tensors hold exact +-1 (imaginary part exactly zero); entries are stored
/// row-major and the tensor is immutable after construction.
class UnimodularTensor {
 public:
  static UnimodularTensor create(std::vector<i64> dims, CVec entries, Field field,
                                 Provenance provenance);

  size_t order() const { return dims_.size(); }
  std::span<const i64> dims() const { return dims_; }
  i64 size() const { return static_cast<i64>(entries_.size()); }
  Field field() const { return field_; }
  const Provenance& provenance() const { return prov_; }
  std::span<const Complex> entries() const { return entries_; }
  const Complex& entry(i64 flat) const { return entries_[static_cast<size_t>(flat)]; }

 private:
  UnimodularTensor(std::vector<i64> dims, CVec entries, Field field, Provenance prov)
      : dims_(std::move(dims)), entries_(std::move(entries)), field_(field),
        prov_(std::move(prov)) {}

  std::vector<i64> dims_;
  CVec entries_;
  Field field_;
  Provenance prov_;
};

/// i.i.d. uniform signs from mt19937_64(seed): +1 when the top bit of the
/// next output is 0, -1 otherwise, filled in row-major order.
UnimodularTensor rademacher(std::span<const i64> dims, u64 seed);

/// i.i.d. uniform unit-circle entries, e^{2 pi i u} with u the 53-bit
/// uniform draw from mt19937_64(seed), row-major.
UnimodularTensor steinhaus(std::span<const i64> dims, u64 seed);

inline UnimodularTensor rademacher(std::initializer_list<i64> dims, u64 seed) {
  return rademacher(std::span<const i64>(dims.begin(), dims.size()), seed);
}
inline UnimodularTensor steinhaus(std::initializer_list<i64> dims, u64 seed) {
  return steinhaus(std::span<const i64>(dims.begin(), dims.size()), seed);
}

/// The n x n character matrix with entry (i, j) = e^{2 pi i * ij / n} for
/// 1-based i, j (storage itself is 0-based row-major). Rows are mutually
/// orthogonal with squared length n.
UnimodularTensor fourier_matrix(i64 n);

/// max over (r, s) of |sum_t a_rt conj(a_st) - n delta_rs| for a square
/// matrix tensor; 0 for an exactly orthogonal scaled matrix.
double orthogonality_defect(const UnimodularTensor& t);

/// Leading sub-tensor with the given dims (new_dims[k] <= dims[k]).
UnimodularTensor restrict_tensor(const UnimodularTensor& t, std::span<const i64> new_dims);

inline UnimodularTensor restrict_tensor(const UnimodularTensor& t,
                                        std::initializer_list<i64> new_dims) {
  return restrict_tensor(t, std::span<const i64>(new_dims.begin(), new_dims.size()));
}

/// Drops a size-1 axis. Plumbing for slot freezing.
UnimodularTensor squeeze_axis(const UnimodularTensor& t, size_t axis);

std::string tensor_to_json(const UnimodularTensor& t);
UnimodularTensor tensor_from_json(std::string_view text);
void write_tensor(const UnimodularTensor& t, const std::string& path);
UnimodularTensor read_tensor(const std::string& path);

/// The domain l_{p_1}^{n_1} x ... x l_{p_m}^{n_m}.
struct DomainSpec {
  struct Factor {
    i64 dim;
    Exponent p;
  };
  std::vector<Factor> factors;

  static DomainSpec of(std::span<const i64> dims, std::span<const Exponent> ps);
  size_t order() const { return factors.size(); }
  std::vector<i64> dims() const;
  std::vector<Exponent> exponents() const;
};

/// A coefficient tensor paired with the domain it acts on; dimensions are
/// validated to match position by position.
struct FormInstance {
  UnimodularTensor tensor;
  DomainSpec domain;

  FormInstance(UnimodularTensor t, DomainSpec d);
};

/// Full contraction sum_j entry(j) prod_k vectors[k][j_k].
Complex evaluate(const UnimodularTensor& t, std::span<const CVec> vectors);
Complex evaluate(const FormInstance& f, std::span<const CVec> vectors);

/// The coefficient vector of the linear functional obtained by freezing
/// every slot except `slot` at the given vectors (vectors[slot] ignored):
/// result[j] = evaluate with e_j in that slot.
CVec partial_coefficients(const UnimodularTensor& t, std::span<const CVec> vectors, size_t slot);
CVec partial_coefficients(const FormInstance& f, std::span<const CVec> vectors, size_t slot);

}  // namespace ksz
