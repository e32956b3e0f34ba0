/*
   Copyright 2026 the bpverify developers

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

// Command-line front end. All numerics live behind the C API in
// libbpverify; this binary only parses arguments, forwards them, and maps
// statuses to exit codes: 0 pass, 1 verification fail, 2 usage or
// configuration error.

#include <bpverify.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

[[noreturn]] void die_usage(const std::string& message) {
  std::cerr << "error: " << message << "\n";
  std::exit(kExitUsage);
}

void check(bpv_status status) {
  if (status != BPV_OK) die_usage(bpv_last_error());
}

/// Expands "3", "2:5", and "2-5" tokens into integer lists.
std::vector<int> expand_range(const std::vector<std::string>& tokens, const std::string& flag) {
  std::vector<int> out;
  for (const std::string& tok : tokens) {
    auto sep = tok.find(':');
    if (sep == std::string::npos) sep = tok.find('-', 1);
    try {
      if (sep == std::string::npos) {
        out.push_back(std::stoi(tok));
      } else {
        const int lo = std::stoi(tok.substr(0, sep));
        const int hi = std::stoi(tok.substr(sep + 1));
        if (hi < lo) throw std::invalid_argument("descending");
        for (int v = lo; v <= hi; ++v) out.push_back(v);
      }
    } catch (const std::exception&) {
      die_usage("bad value '" + tok + "' for " + flag + " (expected an integer or lo:hi)");
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) die_usage("cannot open output file '" + out_path + "'");
  out << text;
  if (!out) die_usage("failed writing output file '" + out_path + "'");
}

std::uint64_t default_seed() {
  const char* env = std::getenv("BPVERIFY_SEED");
  if (!env || !*env) return 0;
  try {
    return static_cast<std::uint64_t>(std::stoull(env));
  } catch (const std::exception&) {
    die_usage("BPVERIFY_SEED is not an integer");
  }
}

struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { bpv_string_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical certification of subspace-measure decomposition identities"};
  app.require_subcommand(1);
  app.fallthrough();  // --format/--out/--no-timestamp may follow the subcommand
  app.set_version_flag("--version", bpv_version());

  std::string format = "human";
  std::string out_path;
  bool no_timestamp = false;
  app.add_option("--format", format, "Output format: json, csv, or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  app.add_option("--out", out_path, "Write the report to this file instead of stdout");
  app.add_flag("--no-timestamp", no_timestamp,
               "Omit timestamp/runtime fields (reports become byte-identical across reruns)");

  // constants ------------------------------------------------------------
  auto* constants = app.add_subcommand("constants", "Print the special-constants table");
  std::vector<std::string> n_tokens{"3"}, k_tokens{"1"}, q_tokens{"1"};
  constants->add_option("--n", n_tokens, "Ambient dimensions (value or lo:hi)");
  constants->add_option("--k", k_tokens, "Subspace dimensions (value or lo:hi)");
  constants->add_option("--q", q_tokens, "Point counts (value or lo:hi)");

  // verify ---------------------------------------------------------------
  auto* verify = app.add_subcommand("verify", "Run one identity verification");
  std::string identity;
  verify
      ->add_option("identity", identity,
                   "polar | bp | affine-bp | bp-dual | affine-dual | multilinear | drury | riesz")
      ->required();
  int n = 2, k = -1, q = -1, ell = -1;
  std::optional<double> alpha, scale, offset_scale;
  std::string fspec = "gaussian:a=1";
  std::uint64_t samples = 1000000;
  std::optional<std::uint64_t> seed;
  int workers = 0;
  double rel_tol = 0.02, z_max = 3.0, constant_scale = 1.0;
  verify->add_option("--n", n, "Ambient dimension");
  verify->add_option("--k", k, "Subspace/plane dimension");
  verify->add_option("--q", q, "Point count");
  verify->add_option("--ell", ell, "Extra transform-factor count (drury)");
  verify->add_option("--alpha", alpha, "Riesz exponent");
  verify->add_option("--f", fspec,
                     "Test function spec: gaussian:a=..., ball:R=..., "
                     "shifted-gaussian:a=...,c=...; ';'-joined for products");
  verify->add_option("--samples", samples, "Monte Carlo samples per estimator (>= 1000)");
  verify->add_option("--seed", seed, "RNG seed (default: BPVERIFY_SEED or 0)");
  verify->add_option("--workers", workers, "Worker threads (0 = hardware; never affects results)");
  verify->add_option("--rel-tol", rel_tol, "Relative-gap pass threshold");
  verify->add_option("--z-max", z_max, "z-score pass threshold");
  verify->add_option("--scale", scale, "Proposal scale for point draws (default: matched)");
  verify->add_option("--offset-scale", offset_scale, "Proposal scale for plane offsets");
  verify->add_option("--constant-scale", constant_scale,
                     "Diagnostic: multiply the identity constant (sensitivity checks)");

  // suite ----------------------------------------------------------------
  auto* suite = app.add_subcommand("suite", "Run a declared battery of verifications");
  std::string suite_path;
  int suite_workers = 0;
  suite->add_option("file", suite_path, "Suite file")->required();
  suite->add_option("--workers", suite_workers, "Worker threads for every entry");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help / --version
    app.exit(e);
    return kExitUsage;
  }

  if (constants->parsed()) {
    const std::vector<int> ns = expand_range(n_tokens, "--n");
    const std::vector<int> ks = expand_range(k_tokens, "--k");
    const std::vector<int> qs = expand_range(q_tokens, "--q");
    OwnedString text;
    check(bpv_constants_table(ns.data(), ns.size(), ks.data(), ks.size(), qs.data(), qs.size(),
                              format.c_str(), &text.ptr));
    emit(text.ptr, out_path);
    return kExitPass;
  }

  if (verify->parsed()) {
    bpv_run* run = bpv_run_new(identity.c_str());
    if (!run) die_usage(bpv_last_error());
    check(bpv_run_set_int(run, "n", n));
    if (k >= 0) check(bpv_run_set_int(run, "k", k));
    if (q >= 0) check(bpv_run_set_int(run, "q", q));
    if (ell >= 0) check(bpv_run_set_int(run, "ell", ell));
    if (alpha) check(bpv_run_set_double(run, "alpha", *alpha));
    check(bpv_run_set_string(run, "f", fspec.c_str()));
    check(bpv_run_set_int(run, "samples", static_cast<int64_t>(samples)));
    check(bpv_run_set_int(run, "seed", static_cast<int64_t>(seed ? *seed : default_seed())));
    check(bpv_run_set_int(run, "workers", workers));
    check(bpv_run_set_double(run, "rel_tol", rel_tol));
    check(bpv_run_set_double(run, "z_max", z_max));
    if (scale) check(bpv_run_set_double(run, "scale", *scale));
    if (offset_scale) check(bpv_run_set_double(run, "offset_scale", *offset_scale));
    check(bpv_run_set_double(run, "constant_scale", constant_scale));

    bpv_report* report = nullptr;
    const bpv_status status = bpv_run_execute(run, &report);
    bpv_run_free(run);
    if (status != BPV_OK) die_usage(bpv_last_error());

    OwnedString text;
    check(bpv_report_render(report, format.c_str(), no_timestamp ? 1 : 0, &text.ptr));
    emit(text.ptr, out_path);
    const int pass = bpv_report_pass(report);
    bpv_report_free(report);
    return pass ? kExitPass : kExitFail;
  }

  // suite
  OwnedString text;
  int all_pass = 0;
  check(bpv_suite_run(suite_path.c_str(), format.c_str(), no_timestamp ? 1 : 0, suite_workers,
                      &text.ptr, &all_pass));
  emit(text.ptr, out_path);
  return all_pass ? kExitPass : kExitFail;
}
