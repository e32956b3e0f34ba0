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

#include "bpverify.h"

#include "bpv/constants.hpp"
#include "bpv/report.hpp"
#include "bpv/runner.hpp"
#include "bpv/suite.hpp"

#include <cstring>
#include <string>

namespace {

thread_local std::string g_last_error;

bpv_status set_error(bpv_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

/// Runs `fn`, translating the library's exception taxonomy to status codes.
template <typename Fn>
bpv_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return BPV_OK;
  } catch (const bpv::ParseError& e) {
    return set_error(BPV_ERR_PARSE, e.what());
  } catch (const bpv::OutOfDomain& e) {
    return set_error(BPV_ERR_OUT_OF_DOMAIN, e.what());
  } catch (const bpv::SingularConfiguration& e) {
    return set_error(BPV_ERR_SINGULAR, e.what());
  } catch (const bpv::UnsupportedConfiguration& e) {
    return set_error(BPV_ERR_UNSUPPORTED, e.what());
  } catch (const bpv::InvalidArgument& e) {
    return set_error(BPV_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return set_error(BPV_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(BPV_ERR_INTERNAL, "unknown error");
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct bpv_run {
  bpv::RunConfig config;
};

struct bpv_report {
  bpv::VerificationReport report;
};

extern "C" {

const char* bpv_version(void) { return bpv::kVersion; }

const char* bpv_last_error(void) { return g_last_error.c_str(); }

bpv_status bpv_siegel_gamma(int k, double alpha, double* out) {
  if (!out) return set_error(BPV_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] { *out = bpv::siegel_gamma(k, alpha); });
}

bpv_status bpv_siegel_gamma_quad(int k, double alpha, double* out, double* error_bound) {
  if (!out) return set_error(BPV_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] {
    double err = 0.0;
    *out = bpv::siegel_gamma_integral_check(k, alpha, &err);
    if (error_bound) *error_bound = err;
  });
}

bpv_status bpv_stiefel_volume(int n, int k, double* out) {
  if (!out) return set_error(BPV_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] { *out = bpv::stiefel_volume(n, k); });
}

bpv_status bpv_bp_constant(int n, int k, int q, double* out) {
  if (!out) return set_error(BPV_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] { *out = bpv::bp_constant(n, k, q); });
}

bpv_status bpv_bp_affine_constant(int n, int k, int q, double* out) {
  if (!out) return set_error(BPV_ERR_INVALID_ARGUMENT, "out is NULL");
  return guarded([&] { *out = bpv::bp_affine_constant(n, k, q); });
}

bpv_status bpv_constants_table(const int* n_values, size_t n_count, const int* k_values,
                               size_t k_count, const int* q_values, size_t q_count,
                               const char* format, char** out) {
  if (!out || !n_values || !k_values || !q_values || !format) {
    return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const std::vector<int> ns(n_values, n_values + n_count);
    const std::vector<int> ks(k_values, k_values + k_count);
    const std::vector<int> qs(q_values, q_values + q_count);
    const std::string text =
        bpv::render_constants_table(ns, ks, qs, bpv::report_format_from_name(format));
    *out = dup_string(text);
  });
}

bpv_run* bpv_run_new(const char* identity) {
  if (!identity || !bpv::identity_from_name(identity)) {
    set_error(BPV_ERR_INVALID_ARGUMENT,
              std::string("unknown identity '") + (identity ? identity : "(null)") + "'");
    return nullptr;
  }
  auto* run = new bpv_run;
  run->config.identity = identity;
  return run;
}

void bpv_run_free(bpv_run* run) { delete run; }

bpv_status bpv_run_set_int(bpv_run* run, const char* key, int64_t value) {
  if (!run || !key) return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::string k(key);
    auto& c = run->config;
    if (k == "n") c.n = static_cast<int>(value);
    else if (k == "k") c.k = static_cast<int>(value);
    else if (k == "q") c.q = static_cast<int>(value);
    else if (k == "ell") c.ell = static_cast<int>(value);
    else if (k == "samples") c.samples = static_cast<std::uint64_t>(value);
    else if (k == "seed") c.seed = static_cast<std::uint64_t>(value);
    else if (k == "workers") c.workers = static_cast<int>(value);
    else throw bpv::InvalidArgument("unknown integer key '" + k + "'");
  });
}

bpv_status bpv_run_set_double(bpv_run* run, const char* key, double value) {
  if (!run || !key) return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::string k(key);
    auto& c = run->config;
    if (k == "alpha") c.alpha = value;
    else if (k == "rel_tol") c.rel_tol = value;
    else if (k == "z_max") c.z_max = value;
    else if (k == "scale") c.scale = value;
    else if (k == "offset_scale") c.offset_scale = value;
    else if (k == "constant_scale") c.constant_scale = value;
    else throw bpv::InvalidArgument("unknown double key '" + k + "'");
  });
}

bpv_status bpv_run_set_string(bpv_run* run, const char* key, const char* value) {
  if (!run || !key || !value) return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::string k(key);
    if (k == "f") run->config.function_spec = value;
    else throw bpv::InvalidArgument("unknown string key '" + k + "'");
  });
}

bpv_status bpv_run_execute(const bpv_run* run, bpv_report** out) {
  if (!run || !out) return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    auto* report = new bpv_report{bpv::execute_run(run->config)};
    *out = report;
  });
}

int bpv_report_pass(const bpv_report* report) { return report && report->report.pass ? 1 : 0; }

bpv_status bpv_report_value(const bpv_report* report, const char* field, double* out) {
  if (!report || !field || !out) return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::string f(field);
    const auto& r = report->report;
    auto side_field = [&](const bpv::SideEstimate& s, const std::string& name) -> double {
      if (name == "mean") return s.mean;
      if (name == "stderr") return s.stderr_;
      if (name == "samples") return static_cast<double>(s.samples);
      if (name == "rejected") return static_cast<double>(s.rejected);
      throw bpv::InvalidArgument("unknown report field '" + f + "'");
    };
    if (f.rfind("lhs_mc.", 0) == 0) {
      if (!r.lhs_check) throw bpv::InvalidArgument("report has no lhs_mc side");
      *out = side_field(*r.lhs_check, f.substr(7));
    } else if (f.rfind("lhs.", 0) == 0) {
      *out = side_field(r.lhs, f.substr(4));
    } else if (f.rfind("rhs.", 0) == 0) {
      *out = side_field(r.rhs, f.substr(4));
    } else if (f == "closed_form") {
      if (!r.closed_form) throw bpv::InvalidArgument("report has no closed form");
      *out = *r.closed_form;
    } else if (f == "z") {
      *out = r.z;
    } else if (f == "rel_gap") {
      *out = r.rel_gap;
    } else {
      throw bpv::InvalidArgument("unknown report field '" + f + "'");
    }
  });
}

bpv_status bpv_report_render(const bpv_report* report, const char* format, int no_timestamp,
                             char** out) {
  if (!report || !format || !out) return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] {
    const std::string text = bpv::render_report(
        report->report, bpv::report_format_from_name(format), no_timestamp != 0);
    *out = dup_string(text);
  });
}

void bpv_report_free(bpv_report* report) { delete report; }

bpv_status bpv_suite_run(const char* path, const char* format, int no_timestamp, int workers,
                         char** report_out, int* all_pass) {
  if (!path || !format || !report_out || !all_pass) {
    return set_error(BPV_ERR_INVALID_ARGUMENT, "NULL argument");
  }
  return guarded([&] {
    const bpv::SuiteOutcome outcome = bpv::run_suite_file(
        path, workers, bpv::report_format_from_name(format), no_timestamp != 0);
    *report_out = dup_string(outcome.rendered);
    *all_pass = outcome.all_pass ? 1 : 0;
  });
}

void bpv_string_free(char* s) { std::free(s); }

}  // extern "C"
