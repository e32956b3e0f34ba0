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

#include "bpv/report.hpp"

#include "bpv/constants.hpp"

#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <sstream>

namespace bpv {

using ordered_json = nlohmann::ordered_json;

ReportFormat report_format_from_name(const std::string& name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  if (name == "human") return ReportFormat::Human;
  throw InvalidArgument("unknown output format '" + name + "' (expected json, csv, or human)");
}

namespace {

ordered_json side_json(const SideEstimate& s) {
  ordered_json j;
  j["mean"] = s.mean;
  j["stderr"] = s.stderr_;
  j["samples"] = s.samples;
  j["rejected"] = s.rejected;
  j["exact"] = s.exact;
  return j;
}

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

ordered_json report_json(const VerificationReport& r, bool no_timestamp) {
  ordered_json j;
  j["identity"] = identity_name(r.identity);
  ordered_json params;
  params["n"] = r.n;
  params["k"] = r.k >= 0 ? ordered_json(r.k) : ordered_json(nullptr);
  params["q"] = r.q >= 0 ? ordered_json(r.q) : ordered_json(nullptr);
  params["ell"] = r.ell >= 0 ? ordered_json(r.ell) : ordered_json(nullptr);
  params["alpha"] = r.alpha ? ordered_json(*r.alpha) : ordered_json(nullptr);
  params["f"] = r.function_spec;
  j["params"] = params;
  j["lhs"] = side_json(r.lhs);
  if (r.lhs_check) j["lhs_mc"] = side_json(*r.lhs_check);
  j["rhs"] = side_json(r.rhs);
  j["closed_form"] = r.closed_form ? ordered_json(*r.closed_form) : ordered_json(nullptr);
  j["z"] = r.z;
  j["rel_gap"] = r.rel_gap;
  j["pass"] = r.pass;
  j["path"] = r.path;
  j["rel_tol"] = r.rel_tol;
  j["z_max"] = r.z_max;
  j["constant_scale"] = r.constant_scale;
  j["seed"] = r.seed;
  if (!no_timestamp) {
    j["runtime_ms"] = r.runtime_ms;
    j["timestamp"] = iso_timestamp();
  }
  j["version"] = kVersion;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += "\"";
  return out;
}

std::string number(double v) {
  ordered_json j = v;
  return j.dump();
}

std::string report_csv(const VerificationReport& r, bool no_timestamp) {
  std::ostringstream head, row;
  auto col = [&](const std::string& name, const std::string& value) {
    if (head.tellp() > 0) {
      head << ",";
      row << ",";
    }
    head << name;
    row << value;
  };
  auto opt_int = [](int v) { return v >= 0 ? std::to_string(v) : std::string(); };
  col("identity", identity_name(r.identity));
  col("n", std::to_string(r.n));
  col("k", opt_int(r.k));
  col("q", opt_int(r.q));
  col("ell", opt_int(r.ell));
  col("alpha", r.alpha ? number(*r.alpha) : std::string());
  col("f", csv_escape(r.function_spec));
  col("lhs_mean", number(r.lhs.mean));
  col("lhs_stderr", number(r.lhs.stderr_));
  col("lhs_samples", std::to_string(r.lhs.samples));
  col("lhs_rejected", std::to_string(r.lhs.rejected));
  col("rhs_mean", number(r.rhs.mean));
  col("rhs_stderr", number(r.rhs.stderr_));
  col("rhs_samples", std::to_string(r.rhs.samples));
  col("rhs_rejected", std::to_string(r.rhs.rejected));
  col("closed_form", r.closed_form ? number(*r.closed_form) : std::string());
  col("z", number(r.z));
  col("rel_gap", number(r.rel_gap));
  col("pass", r.pass ? "true" : "false");
  col("path", r.path);
  col("constant_scale", number(r.constant_scale));
  col("seed", std::to_string(r.seed));
  if (!no_timestamp) col("runtime_ms", number(r.runtime_ms));
  col("version", kVersion);
  return head.str() + "\n" + row.str() + "\n";
}

std::string side_human(const char* label, const SideEstimate& s) {
  std::ostringstream os;
  os << "  " << std::left << std::setw(8) << label << std::setprecision(10) << std::setw(18)
     << s.mean;
  if (s.exact) {
    os << (s.stderr_ > 0 ? " (exact, err bound " + number(s.stderr_) + ")" : " (exact)");
  } else {
    os << " +/- " << std::setprecision(3) << s.stderr_ << "  [" << s.samples << " samples, "
       << s.rejected << " rejected]";
  }
  os << "\n";
  return os.str();
}

std::string report_human(const VerificationReport& r, bool no_timestamp) {
  std::ostringstream os;
  os << "identity: " << identity_name(r.identity) << "  (n=" << r.n;
  if (r.k >= 0) os << ", k=" << r.k;
  if (r.q >= 0) os << ", q=" << r.q;
  if (r.ell >= 0) os << ", ell=" << r.ell;
  if (r.alpha) os << ", alpha=" << *r.alpha;
  os << ")\n";
  os << "f: " << r.function_spec << "\n";
  os << side_human("lhs", r.lhs);
  if (r.lhs_check) os << side_human("lhs_mc", *r.lhs_check);
  os << side_human("rhs", r.rhs);
  if (r.closed_form) {
    os << "  closed  " << std::setprecision(10) << *r.closed_form << "\n";
  }
  os << "  z = " << std::setprecision(4) << r.z << ", rel gap = " << r.rel_gap
     << ", path = " << r.path;
  if (r.constant_scale != 1.0) os << ", constant scale = " << r.constant_scale;
  os << "\n";
  if (!no_timestamp) os << "  runtime: " << std::setprecision(4) << r.runtime_ms << " ms\n";
  os << (r.pass ? "PASS" : "FAIL") << " (seed " << r.seed << ")\n";
  return os.str();
}

}  // namespace

std::string render_report(const VerificationReport& r, ReportFormat format, bool no_timestamp) {
  switch (format) {
    case ReportFormat::Json:
      return report_json(r, no_timestamp).dump(2) + "\n";
    case ReportFormat::Csv:
      return report_csv(r, no_timestamp);
    case ReportFormat::Human:
      return report_human(r, no_timestamp);
  }
  return {};
}

std::string render_constants_table(const std::vector<int>& n_values,
                                   const std::vector<int>& k_values,
                                   const std::vector<int>& q_values, ReportFormat format) {
  require(!n_values.empty() && !k_values.empty() && !q_values.empty(),
          "constants table: empty parameter range");
  struct Row {
    int n, k, q;
    double sigma, gamma, bp, bp_affine;
  };
  std::vector<Row> rows;
  for (int n : n_values) {
    for (int k : k_values) {
      for (int q : q_values) {
        if (!(1 <= q && q <= k && k <= n)) continue;
        const auto reports = constant_rows(n, k, q);
        rows.push_back(
            {n, k, q, reports[0].value, reports[1].value, reports[2].value, reports[3].value});
      }
    }
  }
  require(!rows.empty(), "constants table: no triple in range satisfies 1 <= q <= k <= n");

  switch (format) {
    case ReportFormat::Json: {
      ordered_json j;
      j["rows"] = ordered_json::array();
      for (const Row& r : rows) {
        ordered_json row;
        row["n"] = r.n;
        row["k"] = r.k;
        row["q"] = r.q;
        row["stiefel_volume"] = r.sigma;
        row["siegel_gamma_half_n"] = r.gamma;
        row["bp_constant"] = r.bp;
        row["bp_affine_constant"] = r.bp_affine;
        j["rows"].push_back(row);
      }
      j["version"] = kVersion;
      return j.dump(2) + "\n";
    }
    case ReportFormat::Csv: {
      std::ostringstream os;
      os << "n,k,q,stiefel_volume,siegel_gamma_half_n,bp_constant,bp_affine_constant\n";
      for (const Row& r : rows) {
        os << r.n << "," << r.k << "," << r.q << "," << number(r.sigma) << "," << number(r.gamma)
           << "," << number(r.bp) << "," << number(r.bp_affine) << "\n";
      }
      return os.str();
    }
    case ReportFormat::Human: {
      std::ostringstream os;
      os << std::left << std::setw(4) << "n" << std::setw(4) << "k" << std::setw(4) << "q"
         << std::setw(18) << "sigma_{n,k}" << std::setw(18) << "Gamma_k(n/2)" << std::setw(18)
         << "bp_constant" << std::setw(18) << "bp_affine" << "\n";
      for (const Row& r : rows) {
        os << std::left << std::setw(4) << r.n << std::setw(4) << r.k << std::setw(4) << r.q
           << std::setprecision(10) << std::setw(18) << r.sigma << std::setw(18) << r.gamma
           << std::setw(18) << r.bp << std::setw(18) << r.bp_affine << "\n";
      }
      return os.str();
    }
  }
  return {};
}

}  // namespace bpv
