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

#include <cmath>
#include <numbers>
#include <random>

#include "core/common.hpp"

namespace ksz {

/// splitmix64 step; used only to derive independent child seeds from a
/// root seed (per trial, per start, per slot), never to draw samples.
inline u64 splitmix64(u64& state) {
  state += 0x9e3779b97f4a7c15ULL;
  u64 z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline u64 derive_seed(u64 root, u64 a, u64 b = 0) {
  u64 s = root;
  (void)splitmix64(s);
  s ^= a * 0xd6e8feb86659fd93ULL + 0x2545f4914f6cdd1dULL;
  (void)splitmix64(s);
  s ^= b * 0xa0761d6478bd642fULL + 0xe7037ed1a0b428dbULL;
  return splitmix64(s);
}

/// All randomness in the library flows through this wrapper: mt19937_64
/// seeded with a caller-provided 64-bit value, with the fixed extraction
/// rules below. std::random distributions are avoided on purpose (their
/// output is implementation-defined), so identical seeds reproduce
/// identical streams everywhere.
class SeededRng {
 public:
  explicit SeededRng(u64 seed) : gen_(seed) {}

  u64 raw() { return gen_(); }

  /// 53-bit uniform in [0, 1).
  double uniform01() { return static_cast<double>(raw() >> 11) * 0x1.0p-53; }

  /// Uniform in (0, 1]; safe under log.
  double uniform01_open() { return static_cast<double>((raw() >> 11) + 1) * 0x1.0p-53; }

  /// +1 when the top bit of the next word is 0, else -1.
  double sign() { return (raw() >> 63) ? -1.0 : 1.0; }

  /// Standard normal via Box-Muller; pairs are drawn eagerly and cached.
  double gaussian() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u = uniform01_open();
    const double v = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u));
    const double a = 2.0 * std::numbers::pi * v;
    spare_ = r * std::sin(a);
    has_spare_ = true;
    return r * std::cos(a);
  }

  /// Uniform point on the complex unit circle.
  Complex unit_phase() {
    const double a = 2.0 * std::numbers::pi * uniform01();
    return Complex(std::cos(a), std::sin(a));
  }

 private:
  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace ksz
