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

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ksz {

#define KSZ_VERSION_STRING "0.1.0"

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;
using i64 = std::int64_t;
using u64 = std::uint64_t;

/// Raised when an operation is well-formed but outside what this build can
/// do (oracle inapplicable, enumeration over the configured cap, ...).
class capability_error : public std::runtime_error {
 public:
  explicit capability_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when persisted data fails structural validation (bad schema
/// version, unknown kind, non-unimodular entries, ...). Distinct from
/// io_error so callers can tell "file unreadable" from "file wrong".
class schema_error : public std::runtime_error {
 public:
  explicit schema_error(const std::string& what) : std::runtime_error(what) {}
};

class io_error : public std::runtime_error {
 public:
  explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ksz
