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

#include "core/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <ctime>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "core/parallel.hpp"
#include "core/rng.hpp"

namespace ksz {

namespace {

constexpr int kSchemaVersion = 1;

std::string now_utc_iso8601() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

NormEstimate run_estimator(const FormInstance& f, const EstimatorSettings& est, u64 seed) {
  MultiStartOptions ms;
  ms.num_starts = est.starts;
  ms.seed = seed;
  ms.ascent.tol = est.tol;
  ms.ascent.max_cycles = est.max_cycles;
  return estimate_norm(f, method_request_from_name(est.method), ms);
}

ojson estimator_json(const EstimatorSettings& e) {
  return ojson{{"method", e.method}, {"starts", e.starts}, {"tol", e.tol},
               {"max_cycles", e.max_cycles}};
}

std::vector<std::string> exponent_tokens(std::span<const Exponent> ps) {
  std::vector<std::string> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(p.str());
  return out;
}

}  // namespace

std::string_view kind_name(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::MinNormSearch: return "min-norm-search";
    case ExperimentKind::Slope: return "slope";
    case ExperimentKind::ConjectureRatio: return "conjecture-ratio";
    case ExperimentKind::FourierScan: return "fourier-scan";
    case ExperimentKind::ConstantOne: return "constant-one";
  }
  return "min-norm-search";
}

ExperimentKind kind_from_name(std::string_view name) {
  if (name == "min-norm-search") return ExperimentKind::MinNormSearch;
  if (name == "slope") return ExperimentKind::Slope;
  if (name == "conjecture-ratio") return ExperimentKind::ConjectureRatio;
  if (name == "fourier-scan") return ExperimentKind::FourierScan;
  if (name == "constant-one") return ExperimentKind::ConstantOne;
  throw schema_error("unknown experiment kind '" + std::string(name) + "'");
}

ojson config_to_json(const ExperimentConfig& c) {
  ojson j;
  j["kind"] = std::string(kind_name(c.kind));
  j["ps"] = exponent_tokens(c.ps);
  j["schedule"] = c.schedule;
  j["n1s"] = c.n1s;
  j["n2s"] = c.n2s;
  j["trials"] = c.trials;
  j["seed"] = c.seed;
  j["exhaustive"] = c.exhaustive;
  j["estimator"] = estimator_json(c.estimator);
  return j;
}

ExperimentConfig config_from_json(const ojson& j) {
  ExperimentConfig c;
  try {
    c.kind = kind_from_name(j.at("kind").get<std::string>());
    for (const auto& tok : j.at("ps")) {
      c.ps.push_back(Exponent::parse(tok.get<std::string>()));
    }
    c.schedule = j.value("schedule", std::vector<i64>{});
    c.n1s = j.value("n1s", std::vector<i64>{});
    c.n2s = j.value("n2s", std::vector<i64>{});
    c.trials = j.value("trials", i64{1});
    c.seed = j.value("seed", u64{0});
    c.exhaustive = j.value("exhaustive", false);
    if (j.contains("estimator")) {
      const auto& e = j.at("estimator");
      c.estimator.method = e.value("method", std::string("auto"));
      c.estimator.starts = e.value("starts", i64{16});
      c.estimator.tol = e.value("tol", 1e-10);
      c.estimator.max_cycles = e.value("max_cycles", i64{500});
    }
  } catch (const nlohmann::json::exception& e) {
    throw schema_error(std::string("malformed experiment config: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw schema_error(std::string("malformed experiment config: ") + e.what());
  }
  return c;
}

std::string RunRecord::rows_dump() const {
  std::string out;
  for (const auto& row : rows) {
    out += row.dump();
    out += '\n';
  }
  return out;
}

SlopeFit slope_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 2) throw std::invalid_argument("slope fit needs at least two points");
  std::vector<double> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const auto& [n, v] : points) {
    if (!(n > 0.0)) throw std::invalid_argument("slope fit needs positive n");
    if (!(v > 0.0)) throw std::invalid_argument("slope fit needs positive values");
    xs.push_back(std::log(n));
    ys.push_back(std::log(v));
  }
  const auto distinct = std::set<double>(xs.begin(), xs.end()).size();
  if (distinct < 2) throw std::invalid_argument("slope fit needs at least two distinct n");
  const double count = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= count;
  my /= count;
  double cov = 0.0, var = 0.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    cov += (xs[i] - mx) * (ys[i] - my);
    var += (xs[i] - mx) * (xs[i] - mx);
  }
  SlopeFit fit;
  fit.slope = cov / var;
  fit.intercept = my - fit.slope * mx;
  for (size_t i = 0; i < xs.size(); ++i) {
    fit.max_residual =
        std::max(fit.max_residual, std::abs(ys[i] - (fit.intercept + fit.slope * xs[i])));
  }
  return fit;
}

SearchOutcome min_norm_search(std::span<const Exponent> ps, i64 n, i64 trials, u64 seed,
                              const EstimatorSettings& est, bool exhaustive) {
  if (ps.empty()) throw std::invalid_argument("search needs a nonempty exponent list");
  if (n < 1) throw std::invalid_argument("search needs n >= 1");
  const size_t m = ps.size();
  std::vector<i64> dims(m, n);
  DomainSpec domain = DomainSpec::of(dims, ps);

  i64 count = 0;
  std::string mode;
  if (exhaustive) {
    i64 cells = 1;
    for (i64 d : dims) cells *= d;
    if (cells > 20) {
      throw capability_error("exhaustive search needs 2^(n^m) <= 2^20 sign tensors, got n^m = " +
                             std::to_string(cells));
    }
    mode = "exhaustive";
    count = i64(1) << cells;
  } else {
    if (trials < 1) throw std::invalid_argument("search needs trials >= 1");
    mode = "random";
    count = trials;
  }

  auto draw = [&](i64 index) {
    if (!exhaustive) return rademacher(dims, derive_seed(seed, static_cast<u64>(index)));
    i64 cells = 1;
    for (i64 d : dims) cells *= d;
    CVec entries(static_cast<size_t>(cells), Complex(1.0, 0.0));
    for (i64 b = 0; b < cells; ++b) {
      if ((index >> b) & 1) entries[static_cast<size_t>(b)] = Complex(-1.0, 0.0);
    }
    return UnimodularTensor::create(dims, std::move(entries), Field::RealSign,
                                    Provenance{"file", std::nullopt});
  };
  auto estimate_one = [&](i64 index) {
    return run_estimator(FormInstance(draw(index), domain), est,
                         derive_seed(seed, static_cast<u64>(index), 0xe57));
  };

  std::vector<double> values(static_cast<size_t>(count), 0.0);
  std::vector<std::string> methods(static_cast<size_t>(count));
  parallel_for(count, [&](i64 index) {
    const NormEstimate e = estimate_one(index);
    values[static_cast<size_t>(index)] = e.lower;
    methods[static_cast<size_t>(index)] = std::string(method_name(e.method));
  });

  i64 argmin = 0;
  for (i64 i = 1; i < count; ++i) {
    if (values[static_cast<size_t>(i)] < values[static_cast<size_t>(argmin)]) argmin = i;
  }
  UnimodularTensor best_tensor = draw(argmin);
  NormEstimate best_estimate = estimate_one(argmin);

  RunRecord record;
  record.config.kind = ExperimentKind::MinNormSearch;
  record.config.ps.assign(ps.begin(), ps.end());
  record.config.schedule = {n};
  record.config.trials = trials;
  record.config.seed = seed;
  record.config.exhaustive = exhaustive;
  record.config.estimator = est;
  record.created_at = now_utc_iso8601();

  ojson row;
  row["n"] = n;
  row["m"] = static_cast<i64>(m);
  row["mode"] = mode;
  row["count"] = count;
  row["min_norm"] = values[static_cast<size_t>(argmin)];
  row["argmin"] = argmin;
  row["method"] = methods[static_cast<size_t>(argmin)];
  record.rows.push_back(std::move(row));

  bool all_large = true;
  for (const auto& p : ps) {
    if (p.reciprocal() > Rational{1, 2}) all_large = false;
  }
  record.derived["hl_lower_bound"] =
      all_large ? ojson(hl_lower_bound(ps, n)) : ojson(nullptr);

  return SearchOutcome{std::move(best_tensor), std::move(best_estimate), std::move(record)};
}

RunRecord slope_experiment(std::span<const Exponent> ps, std::span<const i64> ns, i64 trials,
                           u64 seed, const EstimatorSettings& est) {
  if (ns.size() < 2) throw std::invalid_argument("slope experiment needs at least two sizes");
  for (size_t i = 1; i < ns.size(); ++i) {
    if (ns[i] <= ns[i - 1]) {
      throw std::invalid_argument("slope experiment schedule must be strictly increasing");
    }
  }
  RunRecord record;
  record.config.kind = ExperimentKind::Slope;
  record.config.ps.assign(ps.begin(), ps.end());
  record.config.schedule.assign(ns.begin(), ns.end());
  record.config.trials = trials;
  record.config.seed = seed;
  record.config.estimator = est;
  record.created_at = now_utc_iso8601();

  std::vector<std::pair<double, double>> points;
  for (size_t i = 0; i < ns.size(); ++i) {
    SearchOutcome out =
        min_norm_search(ps, ns[i], trials, derive_seed(seed, 0x510be, i), est, false);
    const auto& row = out.record.rows.front();
    ojson r;
    r["n"] = ns[i];
    r["trials"] = trials;
    r["min_norm"] = row.at("min_norm");
    r["argmin_trial"] = row.at("argmin");
    record.rows.push_back(std::move(r));
    points.emplace_back(static_cast<double>(ns[i]), row.at("min_norm").get<double>());
  }
  const SlopeFit fit = slope_fit(points);
  record.derived["slope"] = fit.slope;
  record.derived["intercept"] = fit.intercept;
  record.derived["max_residual"] = fit.max_residual;
  return record;
}

double conjecture_ratio(i64 n1, i64 n2, i64 n3) {
  if (n1 < 1 || n2 < 1 || n3 < 1) throw std::invalid_argument("dimensions must be positive");
  const double d1 = static_cast<double>(n1), d2 = static_cast<double>(n2),
               d3 = static_cast<double>(n3);
  const double num = std::sqrt(d1 + d2 + d3) * std::sqrt(std::cbrt(d2)) * std::sqrt(std::cbrt(d3));
  const double den = (std::cbrt(d1) + std::cbrt(d2) + std::cbrt(d3)) * std::cbrt(d2) * std::cbrt(d3);
  return num / den;
}

RunRecord conjecture_series(std::span<const i64> Ns) {
  if (Ns.empty()) throw std::invalid_argument("conjecture series needs at least one N");
  RunRecord record;
  record.config.kind = ExperimentKind::ConjectureRatio;
  record.config.ps = {Exponent::parse("3/2"), Exponent::parse("3"), Exponent::parse("3")};
  record.config.schedule.assign(Ns.begin(), Ns.end());
  record.created_at = now_utc_iso8601();

  std::vector<std::pair<double, double>> points;
  bool decreasing = true;
  double prev = 0.0;
  for (size_t k = 0; k < Ns.size(); ++k) {
    const double r = conjecture_ratio(1, Ns[k], Ns[k]);
    ojson row;
    row["k"] = static_cast<i64>(k);
    row["n1"] = 1;
    row["n2"] = Ns[k];
    row["n3"] = Ns[k];
    row["ratio"] = r;
    record.rows.push_back(std::move(row));
    if (k > 0 && r >= prev) decreasing = false;
    prev = r;
    points.emplace_back(static_cast<double>(Ns[k]), r);
  }
  record.derived["strictly_decreasing"] = decreasing;
  if (points.size() >= 2) {
    const SlopeFit fit = slope_fit(points);
    record.derived["slope"] = fit.slope;
    record.derived["intercept"] = fit.intercept;
    record.derived["max_residual"] = fit.max_residual;
  }
  return record;
}

namespace {

RunRecord fourier_scan_impl(ExperimentKind kind, std::span<const i64> n1s,
                            std::span<const i64> n2s, std::span<const Exponent> ps,
                            const EstimatorSettings& est, u64 seed) {
  if (n1s.empty() || n2s.empty() || ps.empty()) {
    throw std::invalid_argument("fourier scan needs nonempty dimension and exponent grids");
  }
  for (i64 v : n1s) {
    if (v < 1) throw std::invalid_argument("fourier scan dimensions must be >= 1");
  }
  for (i64 v : n2s) {
    if (v < 1) throw std::invalid_argument("fourier scan dimensions must be >= 1");
  }
  for (const auto& p : ps) {
    if (p.reciprocal() > Rational{1, 2}) {
      throw std::domain_error("fourier scan requires p >= 2, got " + p.str());
    }
  }

  RunRecord record;
  record.config.kind = kind;
  record.config.ps.assign(ps.begin(), ps.end());
  record.config.n1s.assign(n1s.begin(), n1s.end());
  record.config.n2s.assign(n2s.begin(), n2s.end());
  record.config.seed = seed;
  record.config.estimator = est;
  record.created_at = now_utc_iso8601();

  // One shared character matrix per distinct size; read-only afterwards.
  std::map<i64, UnimodularTensor> cache;
  for (i64 a : n1s) {
    for (i64 b : n2s) {
      const i64 n = std::max(a, b);
      if (!cache.contains(n)) cache.emplace(n, fourier_matrix(n));
    }
  }

  const i64 total = static_cast<i64>(n1s.size() * n2s.size() * ps.size() * ps.size());
  std::vector<ojson> rows(static_cast<size_t>(total));
  parallel_for(total, [&](i64 index) {
    i64 rem = index;
    const size_t j2 = static_cast<size_t>(rem % static_cast<i64>(ps.size()));
    rem /= static_cast<i64>(ps.size());
    const size_t j1 = static_cast<size_t>(rem % static_cast<i64>(ps.size()));
    rem /= static_cast<i64>(ps.size());
    const size_t i2 = static_cast<size_t>(rem % static_cast<i64>(n2s.size()));
    rem /= static_cast<i64>(n2s.size());
    const size_t i1 = static_cast<size_t>(rem);

    const i64 n1 = n1s[i1], n2 = n2s[i2];
    const Exponent p1 = ps[j1], p2 = ps[j2];
    const i64 n = std::max(n1, n2);
    const UnimodularTensor& full = cache.at(n);
    const std::vector<i64> sub_dims{n1, n2};
    UnimodularTensor sub =
        (n1 == n && n2 == n) ? full : restrict_tensor(full, sub_dims);
    const std::vector<Exponent> pp{p1, p2};
    FormInstance f(std::move(sub), DomainSpec::of(sub_dims, pp));
    NormEstimate e = run_estimator(f, est, derive_seed(seed, 0xf0c5, static_cast<u64>(index)));

    const Rational half{1, 2};
    const double bound = std::sqrt(static_cast<double>(n)) *
                         std::pow(static_cast<double>(n1), (half - p1.reciprocal()).value()) *
                         std::pow(static_cast<double>(n2), (half - p2.reciprocal()).value());
    ojson row;
    row["n1"] = n1;
    row["n2"] = n2;
    row["p1"] = p1.str();
    row["p2"] = p2.str();
    row["n"] = n;
    row["estimate"] = e.lower;
    row["bound"] = bound;
    row["ratio"] = e.lower / bound;
    row["method"] = std::string(method_name(e.method));
    row["converged"] = e.converged;
    rows[static_cast<size_t>(index)] = std::move(row);
  });
  record.rows = std::move(rows);

  double max_ratio = 0.0, min_ratio = std::numeric_limits<double>::infinity();
  double n1_one_dev = 0.0;
  for (const auto& row : record.rows) {
    const double r = row.at("ratio").get<double>();
    max_ratio = std::max(max_ratio, r);
    min_ratio = std::min(min_ratio, r);
    if (row.at("n1").get<i64>() == 1) n1_one_dev = std::max(n1_one_dev, std::abs(r - 1.0));
  }
  record.derived["max_ratio"] = max_ratio;
  record.derived["min_ratio"] = min_ratio;
  record.derived["n1_one_max_deviation"] = n1_one_dev;
  return record;
}

}  // namespace

RunRecord fourier_scan(std::span<const i64> n1s, std::span<const i64> n2s,
                       std::span<const Exponent> ps, const EstimatorSettings& est, u64 seed) {
  return fourier_scan_impl(ExperimentKind::FourierScan, n1s, n2s, ps, est, seed);
}

RunRecord constant_comparison(std::span<const i64> n1s, std::span<const i64> n2s,
                              std::span<const Exponent> ps, const EstimatorSettings& est,
                              u64 seed) {
  RunRecord record = fourier_scan_impl(ExperimentKind::ConstantOne, n1s, n2s, ps, est, seed);
  // Real-scalar reference level for the same envelope; the complex
  // construction is compared against 1.
  record.derived["reference_constant"] = 8.0 * std::sqrt(2.0 * std::log(9.0));
  return record;
}

ojson record_to_json(const RunRecord& r) {
  ojson j;
  j["schema_version"] = kSchemaVersion;
  j["config"] = config_to_json(r.config);
  j["rows"] = r.rows;
  j["derived"] = r.derived;
  j["meta"] = ojson{{"created_at", r.created_at}, {"code_version", r.code_version}};
  return j;
}

RunRecord record_from_json(const ojson& j) {
  RunRecord r;
  try {
    if (!j.contains("schema_version") || !j.at("schema_version").is_number_integer()) {
      throw schema_error("run record is missing schema_version");
    }
    const int version = j.at("schema_version").get<int>();
    if (version != kSchemaVersion) {
      throw schema_error("unsupported schema_version " + std::to_string(version) + " (expected " +
                         std::to_string(kSchemaVersion) + ")");
    }
    r.config = config_from_json(j.at("config"));
    for (const auto& row : j.at("rows")) r.rows.push_back(row);
    r.derived = j.value("derived", ojson::object());
    if (j.contains("meta")) {
      r.created_at = j.at("meta").value("created_at", std::string());
      r.code_version = j.at("meta").value("code_version", std::string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw schema_error(std::string("malformed run record: ") + e.what());
  }
  return r;
}

void write_record(const RunRecord& r, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_error("cannot open '" + path + "' for writing");
  out << record_to_json(r).dump(2) << "\n";
  if (!out) throw io_error("failed writing '" + path + "'");
}

RunRecord load_record(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw io_error("failed reading '" + path + "'");
  ojson j;
  try {
    j = ojson::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    throw schema_error(std::string("run record is not valid JSON: ") + e.what());
  }
  return record_from_json(j);
}

namespace {

const std::vector<std::string>& csv_columns(ExperimentKind kind) {
  static const std::vector<std::string> search{"n", "m", "mode", "count", "min_norm",
                                               "argmin", "method"};
  static const std::vector<std::string> slope{"n", "trials", "min_norm", "argmin_trial"};
  static const std::vector<std::string> conjecture{"k", "n1", "n2", "n3", "ratio"};
  static const std::vector<std::string> fourier{"n1", "n2", "p1", "p2", "n", "estimate",
                                                "bound", "ratio", "method", "converged"};
  switch (kind) {
    case ExperimentKind::MinNormSearch: return search;
    case ExperimentKind::Slope: return slope;
    case ExperimentKind::ConjectureRatio: return conjecture;
    case ExperimentKind::FourierScan: return fourier;
    case ExperimentKind::ConstantOne: return fourier;
  }
  return search;
}

}  // namespace

std::string record_csv(const RunRecord& r) {
  const auto& cols = csv_columns(r.config.kind);
  std::string out;
  for (size_t i = 0; i < cols.size(); ++i) {
    out += (i ? "," : "") + cols[i];
  }
  out += '\n';
  for (const auto& row : r.rows) {
    for (size_t i = 0; i < cols.size(); ++i) {
      if (i) out += ',';
      const auto& v = row.at(cols[i]);
      if (v.is_string()) {
        out += v.get<std::string>();
      } else {
        out += v.dump();
      }
    }
    out += '\n';
  }
  return out;
}

std::string csv_describe(ExperimentKind kind) {
  std::string out = "CSV columns for '" + std::string(kind_name(kind)) + "':\n";
  switch (kind) {
    case ExperimentKind::MinNormSearch:
      out += "  n          slot dimension (every slot)\n"
             "  m          number of slots\n"
             "  mode       random | exhaustive\n"
             "  count      draws estimated (trials, or 2^(n^m) when exhaustive)\n"
             "  min_norm   smallest norm estimate across the draws\n"
             "  argmin     index of the minimizing draw\n"
             "  method     estimator tag of the minimizing draw\n";
      break;
    case ExperimentKind::Slope:
      out += "  n             slot dimension for this schedule point\n"
             "  trials        random draws at this n\n"
             "  min_norm      smallest norm estimate across the draws\n"
             "  argmin_trial  index of the minimizing draw\n";
      break;
    case ExperimentKind::ConjectureRatio:
      out += "  k        path index\n"
             "  n1,n2,n3 dimensions along the path (n1 = 1, n2 = n3 = N)\n"
             "  ratio    upper-bound factor / conjectured envelope, constants 1\n";
      break;
    case ExperimentKind::FourierScan:
    case ExperimentKind::ConstantOne:
      out += "  n1,n2      restricted matrix dimensions\n"
             "  p1,p2      domain exponents (>= 2; 'inf' allowed)\n"
             "  n          character matrix size, max(n1, n2)\n"
             "  estimate   norm estimate of the restricted matrix\n"
             "  bound      n^{1/2} n1^{1/2-1/p1} n2^{1/2-1/p2}\n"
             "  ratio      estimate / bound\n"
             "  method     estimator tag\n"
             "  converged  estimator convergence flag\n";
      break;
  }
  return out;
}

}  // namespace ksz
