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

// Command-line front end over the ksz C API. Exit codes: 0 success,
// 2 usage/domain, 3 capability, 4 IO/schema.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ksz/ksz.h"

namespace {

using ojson = nlohmann::ordered_json;

struct StringDeleter {
  void operator()(char* s) const { ksz_string_free(s); }
};
using ApiString = std::unique_ptr<char, StringDeleter>;

struct TensorDeleter {
  void operator()(ksz_tensor* t) const { ksz_tensor_free(t); }
};
using TensorHandle = std::unique_ptr<ksz_tensor, TensorDeleter>;

struct EstimateDeleter {
  void operator()(ksz_estimate* e) const { ksz_estimate_free(e); }
};
using EstimateHandle = std::unique_ptr<ksz_estimate, EstimateDeleter>;

struct RecordDeleter {
  void operator()(ksz_record* r) const { ksz_record_free(r); }
};
using RecordHandle = std::unique_ptr<ksz_record, RecordDeleter>;

int exit_code_for(ksz_status s) {
  switch (s) {
    case KSZ_OK: return 0;
    case KSZ_ERROR_ARGUMENT:
    case KSZ_ERROR_DOMAIN: return 2;
    case KSZ_ERROR_CAPABILITY: return 3;
    case KSZ_ERROR_IO:
    case KSZ_ERROR_SCHEMA: return 4;
    case KSZ_ERROR_INTERNAL: return 1;
  }
  return 1;
}

// Nonzero statuses unwind to main through this exception.
struct ApiFailure {
  ksz_status status;
  std::string message;
};

void check(ksz_status s) {
  if (s != KSZ_OK) throw ApiFailure{s, ksz_last_error()};
}

struct CommonFlags {
  std::string format = "human";
  int threads = 0;
};

void add_common(CLI::App* cmd, CommonFlags& common) {
  cmd->add_option("--format", common.format, "Output format: json | csv | human")
      ->check(CLI::IsMember({"json", "csv", "human"}))
      ->capture_default_str();
  cmd->add_option("--threads", common.threads,
                  "Worker threads (0 = hardware default; overrides KSZ_THREADS)");
}

void apply_threads(const CommonFlags& common) {
  int threads = common.threads;
  if (threads == 0) {
    if (const char* env = std::getenv("KSZ_THREADS")) threads = std::atoi(env);
  }
  check(ksz_set_threads(threads));
}

ksz_method method_from_name(const std::string& name) {
  if (name == "auto") return KSZ_METHOD_AUTO;
  if (name == "alternating") return KSZ_METHOD_ALTERNATING;
  if (name == "vertex") return KSZ_METHOD_VERTEX;
  if (name == "sv") return KSZ_METHOD_SV;
  throw ApiFailure{KSZ_ERROR_ARGUMENT, "unknown method '" + name + "'"};
}

void emit(const ojson& out, const CommonFlags& common) {
  if (common.format == "csv") {
    throw ApiFailure{KSZ_ERROR_ARGUMENT,
                     "csv output is only available for experiment subcommands"};
  }
  std::cout << out.dump(2) << "\n";
}

// Prints a record-producing run in the requested format and persists it
// when --out was given.
void emit_record(const ojson& config_echo, const RecordHandle& record, const std::string& out_path,
                 const CommonFlags& common) {
  if (!out_path.empty()) check(ksz_record_write(record.get(), out_path.c_str()));
  if (common.format == "csv") {
    ApiString csv;
    {
      char* raw = nullptr;
      check(ksz_record_csv(record.get(), &raw));
      csv.reset(raw);
    }
    std::cout << csv.get();
    return;
  }
  char* raw = nullptr;
  check(ksz_record_json(record.get(), &raw));
  ApiString text(raw);
  const ojson rec = ojson::parse(text.get());
  if (common.format == "json") {
    ojson out;
    out["config"] = config_echo;
    out["record"] = rec;
    std::cout << out.dump(2) << "\n";
    return;
  }
  // human: a compact table of rows plus the derived block
  std::cout << "config: " << config_echo.dump() << "\n";
  for (const auto& row : rec.at("rows")) std::cout << "  " << row.dump() << "\n";
  std::cout << "derived: " << rec.at("derived").dump() << "\n";
  if (!out_path.empty()) std::cout << "record written to " << out_path << "\n";
}

int run_cli(int argc, char** argv) {
  CLI::App app{"unimodular multilinear forms: generators, exponents, norms, experiments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ksz_version()));

  // exponents ------------------------------------------------------------
  auto* cmd_exp = app.add_subcommand("exponents", "Evaluate every exponent formula for a p-tuple");
  CommonFlags exp_common;
  std::string exp_p;
  cmd_exp->add_option("--p", exp_p, "Comma-separated exponents in [1, inf]; 'inf' allowed")
      ->required();
  add_common(cmd_exp, exp_common);
  cmd_exp->footer(
      "JSON output: {config: {p}, profile: {ps, conjugates, m, optimal, albuquerque_rezende,\n"
      "classical_ksz, bayart, gamma, rho, regime, optimal_le_ar}}; each exponent is\n"
      "{exact: \"5/6\"|\"inf\", value: number|\"inf\"}; classical_ksz/bayart are null\n"
      "outside their regimes.");

  // generate ---------------------------------------------------------------
  auto* cmd_gen = app.add_subcommand("generate", "Generate a unimodular coefficient tensor");
  CommonFlags gen_common;
  std::string gen_kind = "rademacher", gen_dims, gen_out;
  std::uint64_t gen_seed = 0;
  cmd_gen->add_option("--kind", gen_kind, "rademacher | steinhaus | fourier")
      ->check(CLI::IsMember({"rademacher", "steinhaus", "fourier"}))
      ->capture_default_str();
  cmd_gen->add_option("--dims", gen_dims, "Dimensions, e.g. 4x4x2 (fourier: square NxN)")
      ->required();
  cmd_gen->add_option("--seed", gen_seed, "Generator seed (unused for fourier)")
      ->capture_default_str();
  cmd_gen->add_option("--out", gen_out, "Write the tensor JSON here instead of stdout");
  add_common(cmd_gen, gen_common);
  cmd_gen->footer(
      "Tensor file schema: {dims: [n1,...], field: \"real\"|\"complex\", entries: [+-1...] or\n"
      "[[re,im]...] at 17 significant digits, provenance: {kind, seed}}. Readers reject\n"
      "entries whose modulus strays from 1 by more than 1e-9.");

  // norm -------------------------------------------------------------------
  auto* cmd_norm = app.add_subcommand("norm", "Estimate the operator norm of a stored tensor");
  CommonFlags norm_common;
  std::string norm_input, norm_p, norm_method = "auto";
  int norm_starts = 16, norm_max_iter = 500;
  double norm_tol = 1e-10;
  std::uint64_t norm_seed = 0;
  cmd_norm->add_option("--input", norm_input, "Tensor JSON file")->required();
  cmd_norm->add_option("--p", norm_p, "Domain exponents, one per slot")->required();
  cmd_norm->add_option("--method", norm_method, "auto | alternating | vertex | sv")
      ->check(CLI::IsMember({"auto", "alternating", "vertex", "sv"}))
      ->capture_default_str();
  cmd_norm->add_option("--starts", norm_starts, "Random multi-start count")->capture_default_str();
  cmd_norm->add_option("--seed", norm_seed, "Multi-start seed")->capture_default_str();
  cmd_norm->add_option("--tol", norm_tol, "Relative improvement tolerance per cycle")
      ->capture_default_str();
  cmd_norm->add_option("--max-iter", norm_max_iter, "Ascent cycle cap")->capture_default_str();
  add_common(cmd_norm, norm_common);
  cmd_norm->footer(
      "JSON output: {config, estimate: {lower, upper (null unless an exact oracle ran),\n"
      "method: alternating|vertex-exact|singular-value, iterations, converged, witness}};\n"
      "witness vectors use the tensor number conventions. Exit 3 when the requested\n"
      "oracle does not apply.");

  // search -------------------------------------------------------------------
  auto* cmd_search = app.add_subcommand("search", "Minimize the norm over random sign draws");
  CommonFlags search_common;
  std::string search_p, search_out, search_save;
  std::int64_t search_n = 2, search_trials = 1;
  bool search_exhaustive = false;
  int search_starts = 16, search_max_iter = 500;
  double search_tol = 1e-10;
  std::uint64_t search_seed = 0;
  cmd_search->add_option("--p", search_p, "Domain exponents (their count sets m)")->required();
  cmd_search->add_option("--n", search_n, "Dimension of every slot")->capture_default_str();
  cmd_search->add_option("--trials", search_trials, "Random draws")->capture_default_str();
  cmd_search->add_flag("--exhaustive", search_exhaustive,
                       "Enumerate all sign tensors (needs n^m <= 20)");
  cmd_search->add_option("--seed", search_seed, "Draw seed")->capture_default_str();
  cmd_search->add_option("--starts", search_starts, "Estimator starts")->capture_default_str();
  cmd_search->add_option("--tol", search_tol, "Estimator tolerance")->capture_default_str();
  cmd_search->add_option("--max-iter", search_max_iter, "Estimator cycle cap")
      ->capture_default_str();
  cmd_search->add_option("--out", search_out, "Persist the run record here");
  cmd_search->add_option("--save-tensor", search_save, "Write the minimizing tensor here");
  add_common(cmd_search, search_common);
  cmd_search->footer(
      "JSON output: {config, record: {schema_version, config, rows, derived, meta}}; rows\n"
      "carry n, m, mode, count, min_norm, argmin, method (see --format csv). meta holds\n"
      "the only timestamps; everything else is byte-deterministic given --seed.");

  // slope ---------------------------------------------------------------------
  auto* cmd_slope = app.add_subcommand("slope", "Fit the scaling exponent of minimal norms");
  CommonFlags slope_common;
  std::string slope_p, slope_ns = "4,8,16,32", slope_out;
  std::int64_t slope_trials = 200;
  int slope_starts = 16, slope_max_iter = 500;
  double slope_tol = 1e-10;
  std::uint64_t slope_seed = 0;
  bool slope_describe = false;
  cmd_slope->add_option("--p", slope_p, "Domain exponents (required unless --describe)");
  cmd_slope->add_option("--ns", slope_ns, "Strictly increasing dimension schedule")
      ->capture_default_str();
  cmd_slope->add_option("--trials", slope_trials, "Random draws per size")->capture_default_str();
  cmd_slope->add_option("--seed", slope_seed, "Draw seed")->capture_default_str();
  cmd_slope->add_option("--starts", slope_starts, "Estimator starts")->capture_default_str();
  cmd_slope->add_option("--tol", slope_tol, "Estimator tolerance")->capture_default_str();
  cmd_slope->add_option("--max-iter", slope_max_iter, "Estimator cycle cap")
      ->capture_default_str();
  cmd_slope->add_option("--out", slope_out, "Persist the run record here");
  cmd_slope->add_flag("--describe", slope_describe, "Print the CSV column documentation");
  add_common(cmd_slope, slope_common);
  cmd_slope->footer(
      "JSON output: a run record whose rows carry n, trials, min_norm, argmin_trial and\n"
      "whose derived block carries slope, intercept, max_residual of the log-log fit\n"
      "(--describe prints the CSV column documentation).");

  // conjecture -------------------------------------------------------------
  auto* cmd_conj = app.add_subcommand(
      "conjecture", "Ratio of the sharp upper bound to the conjectured envelope at p=(3/2,3,3)");
  CommonFlags conj_common;
  std::string conj_dims, conj_ns = "1,4,16,64,256,1024,4096", conj_out;
  bool conj_describe = false;
  cmd_conj->add_option("--dims", conj_dims, "Single ratio at dims n1xn2xn3");
  cmd_conj->add_option("--ns", conj_ns, "Series path n1=1, n2=n3=N for these N")
      ->capture_default_str();
  cmd_conj->add_option("--out", conj_out, "Persist the run record here");
  cmd_conj->add_flag("--describe", conj_describe, "Print the CSV column documentation");
  add_common(cmd_conj, conj_common);
  cmd_conj->footer(
      "JSON output: with --dims, {config, ratio}; otherwise a run record whose rows carry\n"
      "k, n1, n2, n3, ratio along the path n1=1, n2=n3=N, with derived slope and the\n"
      "strictly_decreasing flag.");

  // fourier-scan -------------------------------------------------------------
  auto* cmd_fs = app.add_subcommand("fourier-scan",
                                    "Character-matrix norms against the closed-form bound");
  CommonFlags fs_common;
  std::string fs_n1s = "1,2,4,8,16", fs_n2s = "1,2,4,8,16", fs_ps = "2,3,4,inf", fs_out;
  int fs_starts = 16, fs_max_iter = 500;
  double fs_tol = 1e-10;
  std::uint64_t fs_seed = 0;
  bool fs_describe = false;
  cmd_fs->add_option("--n1s", fs_n1s, "First-slot dimensions")->capture_default_str();
  cmd_fs->add_option("--n2s", fs_n2s, "Second-slot dimensions")->capture_default_str();
  cmd_fs->add_option("--ps", fs_ps, "Exponent grid (every p >= 2)")->capture_default_str();
  cmd_fs->add_option("--starts", fs_starts, "Estimator starts")->capture_default_str();
  cmd_fs->add_option("--seed", fs_seed, "Estimator seed")->capture_default_str();
  cmd_fs->add_option("--tol", fs_tol, "Estimator tolerance")->capture_default_str();
  cmd_fs->add_option("--max-iter", fs_max_iter, "Estimator cycle cap")->capture_default_str();
  cmd_fs->add_option("--out", fs_out, "Persist the run record here");
  cmd_fs->add_flag("--describe", fs_describe, "Print the CSV column documentation");
  add_common(cmd_fs, fs_common);
  cmd_fs->footer(
      "JSON output: a run record, one row per (n1, n2, p1, p2) cell with n, estimate,\n"
      "bound, ratio, method, converged; derived carries max_ratio, min_ratio and the\n"
      "largest |ratio - 1| over n1 = 1 rows.");

  // constant-one --------------------------------------------------------------
  auto* cmd_c1 = app.add_subcommand(
      "constant-one", "Fourier scan with the real-case reference constant 8*sqrt(2 ln 9)");
  CommonFlags c1_common;
  std::string c1_n1s = "1,2,4,8,16", c1_n2s = "1,2,4,8,16", c1_ps = "2,3,4,inf", c1_out;
  int c1_starts = 16, c1_max_iter = 500;
  double c1_tol = 1e-10;
  std::uint64_t c1_seed = 0;
  bool c1_describe = false;
  cmd_c1->add_option("--n1s", c1_n1s, "First-slot dimensions")->capture_default_str();
  cmd_c1->add_option("--n2s", c1_n2s, "Second-slot dimensions")->capture_default_str();
  cmd_c1->add_option("--ps", c1_ps, "Exponent grid (every p >= 2)")->capture_default_str();
  cmd_c1->add_option("--starts", c1_starts, "Estimator starts")->capture_default_str();
  cmd_c1->add_option("--seed", c1_seed, "Estimator seed")->capture_default_str();
  cmd_c1->add_option("--tol", c1_tol, "Estimator tolerance")->capture_default_str();
  cmd_c1->add_option("--max-iter", c1_max_iter, "Estimator cycle cap")->capture_default_str();
  cmd_c1->add_option("--out", c1_out, "Persist the run record here");
  cmd_c1->add_flag("--describe", c1_describe, "Print the CSV column documentation");
  add_common(cmd_c1, c1_common);
  cmd_c1->footer(
      "JSON output: the fourier-scan record plus derived.reference_constant =\n"
      "8*sqrt(2 ln 9), the real-coefficient level the complex ratios sit under.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // every flag-level problem is a usage error
  }

  if (app.got_subcommand(cmd_exp)) {
    apply_threads(exp_common);
    char* raw = nullptr;
    check(ksz_profile_json(exp_p.c_str(), &raw));
    ApiString text(raw);
    const ojson prof = ojson::parse(text.get());
    if (exp_common.format == "human") {
      std::cout << "config: " << ojson{{"p", exp_p}}.dump() << "\n";
      std::cout << "p = [" << exp_p << "]  regime: " << prof.at("regime").get<std::string>()
                << "\n";
      auto show = [&](const char* name) {
        const auto& v = prof.at(name);
        std::cout << "  " << name << ": "
                  << (v.is_null() ? std::string("n/a")
                                  : v.at("exact").get<std::string>() + " = " +
                                        v.at("value").dump())
                  << "\n";
      };
      show("optimal");
      show("albuquerque_rezende");
      show("classical_ksz");
      show("bayart");
      std::cout << "  gamma: " << prof.at("gamma").at("exact").get<std::string>()
                << "  rho: " << prof.at("rho").at("exact").get<std::string>() << "\n";
      return 0;
    }
    ojson out;
    out["config"] = ojson{{"p", exp_p}};
    out["profile"] = prof;
    emit(out, exp_common);
    return 0;
  }

  if (app.got_subcommand(cmd_gen)) {
    apply_threads(gen_common);
    TensorHandle tensor;
    {
      ksz_tensor* raw = nullptr;
      if (gen_kind == "rademacher") {
        check(ksz_tensor_rademacher(gen_dims.c_str(), gen_seed, &raw));
      } else if (gen_kind == "steinhaus") {
        check(ksz_tensor_steinhaus(gen_dims.c_str(), gen_seed, &raw));
      } else {
        // fourier wants a square NxN dims string
        size_t order = 0;
        std::int64_t nn[2] = {0, 0};
        {
          ksz_tensor* probe = nullptr;
          check(ksz_tensor_rademacher(gen_dims.c_str(), 0, &probe));
          TensorHandle probe_handle(probe);
          check(ksz_tensor_order(probe, &order));
          if (order != 2) throw ApiFailure{KSZ_ERROR_ARGUMENT, "fourier needs square dims NxN"};
          check(ksz_tensor_dims(probe, nn, 2));
        }
        if (nn[0] != nn[1]) throw ApiFailure{KSZ_ERROR_ARGUMENT, "fourier needs square dims NxN"};
        check(ksz_tensor_fourier(nn[0], &raw));
      }
      tensor.reset(raw);
    }
    ojson config{{"kind", gen_kind}, {"dims", gen_dims}, {"seed", gen_seed}};
    if (!gen_out.empty()) {
      check(ksz_tensor_write(tensor.get(), gen_out.c_str()));
      if (gen_common.format == "json") {
        ojson out;
        out["config"] = config;
        out["written"] = gen_out;
        emit(out, gen_common);
      } else {
        std::cout << "config: " << config.dump() << "\n";
        std::cout << "tensor written to " << gen_out << "\n";
      }
      return 0;
    }
    char* raw_json = nullptr;
    check(ksz_tensor_json(tensor.get(), &raw_json));
    ApiString text(raw_json);
    if (gen_common.format == "json") {
      ojson out;
      out["config"] = config;
      out["tensor"] = ojson::parse(text.get());
      emit(out, gen_common);
    } else {
      std::cout << text.get() << "\n";
    }
    return 0;
  }

  if (app.got_subcommand(cmd_norm)) {
    apply_threads(norm_common);
    TensorHandle tensor;
    {
      ksz_tensor* raw = nullptr;
      check(ksz_tensor_read(norm_input.c_str(), &raw));
      tensor.reset(raw);
    }
    EstimateHandle estimate;
    {
      ksz_estimate* raw = nullptr;
      check(ksz_norm_estimate(tensor.get(), norm_p.c_str(), method_from_name(norm_method),
                              norm_starts, norm_seed, norm_tol, norm_max_iter, &raw));
      estimate.reset(raw);
    }
    char* raw_json = nullptr;
    check(ksz_estimate_json(estimate.get(), &raw_json));
    ApiString text(raw_json);
    const ojson est = ojson::parse(text.get());
    ojson config{{"input", norm_input}, {"p", norm_p},       {"method", norm_method},
                 {"starts", norm_starts}, {"seed", norm_seed}, {"tol", norm_tol},
                 {"max_iter", norm_max_iter}};
    if (norm_common.format == "human") {
      std::cout << "config: " << config.dump() << "\n";
      std::cout << "lower bound: " << est.at("lower").dump()
                << "  method: " << est.at("method").get<std::string>() << "\n";
      if (!est.at("upper").is_null()) {
        std::cout << "exact value: " << est.at("upper").dump() << "\n";
      }
      std::cout << "iterations: " << est.at("iterations").dump()
                << "  converged: " << est.at("converged").dump() << "\n";
      return 0;
    }
    ojson out;
    out["config"] = config;
    out["estimate"] = est;
    emit(out, norm_common);
    return 0;
  }

  if (app.got_subcommand(cmd_search)) {
    apply_threads(search_common);
    RecordHandle record;
    TensorHandle best;
    {
      ksz_record* raw_rec = nullptr;
      ksz_tensor* raw_best = nullptr;
      check(ksz_search_run(search_p.c_str(), search_n, search_trials, search_exhaustive ? 1 : 0,
                           search_seed, search_starts, search_tol, search_max_iter, &raw_rec,
                           &raw_best));
      record.reset(raw_rec);
      best.reset(raw_best);
    }
    if (!search_save.empty()) check(ksz_tensor_write(best.get(), search_save.c_str()));
    ojson config{{"p", search_p},       {"n", search_n},
                 {"trials", search_trials}, {"exhaustive", search_exhaustive},
                 {"seed", search_seed},   {"starts", search_starts},
                 {"tol", search_tol},     {"max_iter", search_max_iter}};
    emit_record(config, record, search_out, search_common);
    return 0;
  }

  if (app.got_subcommand(cmd_slope)) {
    if (slope_describe) {
      char* raw = nullptr;
      check(ksz_csv_describe("slope", &raw));
      ApiString text(raw);
      std::cout << text.get();
      return 0;
    }
    apply_threads(slope_common);
    if (slope_p.empty()) throw ApiFailure{KSZ_ERROR_ARGUMENT, "slope requires --p"};
    RecordHandle record;
    {
      ksz_record* raw = nullptr;
      check(ksz_slope_run(slope_p.c_str(), slope_ns.c_str(), slope_trials, slope_seed,
                          slope_starts, slope_tol, slope_max_iter, &raw));
      record.reset(raw);
    }
    ojson config{{"p", slope_p},       {"ns", slope_ns},   {"trials", slope_trials},
                 {"seed", slope_seed}, {"starts", slope_starts}, {"tol", slope_tol},
                 {"max_iter", slope_max_iter}};
    emit_record(config, record, slope_out, slope_common);
    return 0;
  }

  if (app.got_subcommand(cmd_conj)) {
    if (conj_describe) {
      char* raw = nullptr;
      check(ksz_csv_describe("conjecture-ratio", &raw));
      ApiString text(raw);
      std::cout << text.get();
      return 0;
    }
    apply_threads(conj_common);
    if (!conj_dims.empty()) {
      // single ratio at explicit dims: parse n1xn2xn3 through the library
      ksz_tensor* probe = nullptr;
      check(ksz_tensor_rademacher(conj_dims.c_str(), 0, &probe));
      TensorHandle probe_handle(probe);
      size_t order = 0;
      check(ksz_tensor_order(probe, &order));
      if (order != 3) throw ApiFailure{KSZ_ERROR_ARGUMENT, "conjecture --dims needs n1xn2xn3"};
      std::int64_t d[3] = {0, 0, 0};
      check(ksz_tensor_dims(probe, d, 3));
      double ratio = 0.0;
      check(ksz_conjecture_ratio(d[0], d[1], d[2], &ratio));
      ojson out;
      out["config"] = ojson{{"dims", conj_dims}};
      out["ratio"] = ratio;
      if (conj_common.format == "human") {
        std::cout << "ratio(" << conj_dims << ") = " << ojson(ratio).dump() << "\n";
      } else {
        emit(out, conj_common);
      }
      return 0;
    }
    RecordHandle record;
    {
      ksz_record* raw = nullptr;
      check(ksz_conjecture_run(conj_ns.c_str(), &raw));
      record.reset(raw);
    }
    emit_record(ojson{{"ns", conj_ns}}, record, conj_out, conj_common);
    return 0;
  }

  auto run_scan = [&](bool constant_one, const std::string& n1s, const std::string& n2s,
                      const std::string& ps, int starts, std::uint64_t seed, double tol,
                      int max_iter, const std::string& out_path, const CommonFlags& common,
                      bool describe) {
    if (describe) {
      char* raw = nullptr;
      check(ksz_csv_describe(constant_one ? "constant-one" : "fourier-scan", &raw));
      ApiString text(raw);
      std::cout << text.get();
      return;
    }
    apply_threads(common);
    RecordHandle record;
    {
      ksz_record* raw = nullptr;
      if (constant_one) {
        check(ksz_constant_one_run(n1s.c_str(), n2s.c_str(), ps.c_str(), starts, seed, tol,
                                   max_iter, &raw));
      } else {
        check(ksz_fourier_scan_run(n1s.c_str(), n2s.c_str(), ps.c_str(), starts, seed, tol,
                                   max_iter, &raw));
      }
      record.reset(raw);
    }
    ojson config{{"n1s", n1s}, {"n2s", n2s},   {"ps", ps},         {"starts", starts},
                 {"seed", seed}, {"tol", tol}, {"max_iter", max_iter}};
    emit_record(config, record, out_path, common);
  };

  if (app.got_subcommand(cmd_fs)) {
    run_scan(false, fs_n1s, fs_n2s, fs_ps, fs_starts, fs_seed, fs_tol, fs_max_iter, fs_out,
             fs_common, fs_describe);
    return 0;
  }
  if (app.got_subcommand(cmd_c1)) {
    run_scan(true, c1_n1s, c1_n2s, c1_ps, c1_starts, c1_seed, c1_tol, c1_max_iter, c1_out,
             c1_common, c1_describe);
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const ApiFailure& e) {
    std::cerr << "error: " << e.message << "\n";
    return exit_code_for(e.status);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
