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
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "core/common.hpp"
#include "core/exponents.hpp"
#include "core/normest.hpp"
#include "core/tensor.hpp"

namespace ksz {

using ojson = nlohmann::ordered_json;

enum class ExperimentKind { MinNormSearch, Slope, ConjectureRatio, FourierScan, ConstantOne };
std::string_view kind_name(ExperimentKind k);
ExperimentKind kind_from_name(std::string_view name);  // schema_error on unknown

struct EstimatorSettings {
  std::string method = "auto";  // auto | alternating | vertex | sv
  i64 starts = 16;
  double tol = 1e-10;
  i64 max_cycles = 500;
};

struct ExperimentConfig {
  ExperimentKind kind = ExperimentKind::MinNormSearch;
  std::vector<Exponent> ps;    // domain exponents; the scan grid for fourier kinds
  std::vector<i64> schedule;   // n values (search: single entry; slope/conjecture: the path)
  std::vector<i64> n1s, n2s;   // fourier grids
  i64 trials = 1;
  u64 seed = 0;
  bool exhaustive = false;
  EstimatorSettings estimator;
};

ojson config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const ojson& j);

/// One experiments run: the echoed fully-resolved config, one JSON row per
/// aggregated observation, derived statistics, and metadata (timestamps
/// live only in the metadata and are excluded from determinism contracts).
struct RunRecord {
  ExperimentConfig config;
  std::vector<ojson> rows;
  ojson derived = ojson::object();
  std::string created_at;    // ISO 8601 UTC
  std::string code_version = KSZ_VERSION_STRING;

  std::string rows_dump() const;  // canonical serialization of the rows alone
};

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double max_residual = 0.0;
};

/// Least squares of log(value) against log(n). Needs >= 2 distinct n and
/// positive values (std::invalid_argument otherwise).
SlopeFit slope_fit(std::span<const std::pair<double, double>> points);

struct SearchOutcome {
  UnimodularTensor best;
  NormEstimate estimate;
  RunRecord record;
};

/// Smallest estimated norm among `trials` seeded sign draws on the
/// symmetric domain l_{p_1}^n x ... x l_{p_m}^n, or over the full sign
/// enumeration when exhaustive is set (allowed while 2^(n^m) <= 2^20).
/// Minimum over trials, matching the existential statement being probed.
SearchOutcome min_norm_search(std::span<const Exponent> ps, i64 n, i64 trials, u64 seed,
                              const EstimatorSettings& est, bool exhaustive = false);

/// min_norm_search across a strictly increasing dimension schedule plus a
/// log-log slope fit of the minima.
RunRecord slope_experiment(std::span<const Exponent> ps, std::span<const i64> ns, i64 trials,
                           u64 seed, const EstimatorSettings& est);

/// Ratio of the mixed-regime upper bound to the conjectured two-sided
/// envelope at p = (3/2, 3, 3), constants set to 1:
///   (n1+n2+n3)^{1/2} n2^{1/6} n3^{1/6} / ((n1^{1/3}+n2^{1/3}+n3^{1/3}) n2^{1/3} n3^{1/3}).
/// Unbounded below along n1 = 1, n2 = n3 -> inf, which is what refutes a
/// two-sided envelope.
double conjecture_ratio(i64 n1, i64 n2, i64 n3);

/// The ratio along the path n1 = 1, n2 = n3 = N for the given Ns, with the
/// fitted decay slope in the path parameter N.
RunRecord conjecture_series(std::span<const i64> Ns);

/// Character-matrix scan: for each (n1, n2, p1, p2) builds the n x n
/// matrix with n = max(n1, n2), restricts to n1 x n2, estimates the norm
/// on l_{p1}^{n1} x l_{p2}^{n2} and records estimate / bound against
/// n^{1/2} n1^{1/2 - 1/p1} n2^{1/2 - 1/p2}. Requires p >= 2.
RunRecord fourier_scan(std::span<const i64> n1s, std::span<const i64> n2s,
                       std::span<const Exponent> ps, const EstimatorSettings& est, u64 seed);

/// fourier_scan grid plus the real-case reference constant 8 sqrt(2 ln 9)
/// the measured complex ratios are compared against.
RunRecord constant_comparison(std::span<const i64> n1s, std::span<const i64> n2s,
                              std::span<const Exponent> ps, const EstimatorSettings& est,
                              u64 seed);

void write_record(const RunRecord& r, const std::string& path);
RunRecord load_record(const std::string& path);
ojson record_to_json(const RunRecord& r);
RunRecord record_from_json(const ojson& j);

std::string record_csv(const RunRecord& r);
std::string csv_describe(ExperimentKind kind);

}  // namespace ksz
