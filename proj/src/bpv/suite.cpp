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

#include "bpv/suite.hpp"

#include "bpv/constants.hpp"
#include "bpv/sampling.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

namespace bpv {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg, int column = 0) {
  std::string where = "suite line " + std::to_string(line);
  if (column > 0) where += ", col " + std::to_string(column);
  throw ParseError(where + ": " + msg);
}

// Parse position bookkeeping: the value's column within the current line,
// so malformed values are reported as line/column.
thread_local int g_value_column = 0;

long long to_int(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const long long x = std::stoll(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    fail(line, "key '" + key + "' needs an integer, got '" + v + "'", g_value_column);
  }
}

double to_double(const std::string& v, int line, const std::string& key) {
  try {
    std::size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument("trailing");
    return x;
  } catch (const std::exception&) {
    fail(line, "key '" + key + "' needs a number, got '" + v + "'", g_value_column);
  }
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : v) {
    if (c == ' ' || c == '\t' || c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

void apply_key(SuiteEntry& entry, const std::string& key, const std::string& value, int line) {
  switch (entry.kind) {
    case SuiteEntry::Kind::Constants:
      fail(line, "[constants] takes no keys, got '" + key + "'");
    case SuiteEntry::Kind::Invariants: {
      if (key == "trials") entry.trials = static_cast<int>(to_int(value, line, key));
      else if (key == "seed") entry.seed = static_cast<std::uint64_t>(to_int(value, line, key));
      else fail(line, "unknown [invariants] key '" + key + "'");
      return;
    }
    case SuiteEntry::Kind::SiegelQuadrature: {
      if (key == "k") {
        entry.k_values.clear();
        for (const auto& v : split_list(value)) {
          entry.k_values.push_back(static_cast<int>(to_int(v, line, key)));
        }
      } else if (key == "alpha") {
        entry.alpha_values.clear();
        for (const auto& v : split_list(value)) {
          entry.alpha_values.push_back(to_double(v, line, key));
        }
      } else if (key == "rel_tol") {
        entry.quad_rel_tol = to_double(value, line, key);
      } else {
        fail(line, "unknown [siegel-quadrature] key '" + key + "'");
      }
      return;
    }
    case SuiteEntry::Kind::Verify:
    case SuiteEntry::Kind::Reproducibility: {
      RunConfig& run = entry.run;
      if (key == "expect") {
        if (value == "pass") entry.expect_pass = true;
        else if (value == "fail") entry.expect_pass = false;
        else fail(line, "key 'expect' needs pass or fail, got '" + value + "'");
      }
      else if (key == "identity") run.identity = value;
      else if (key == "n") run.n = static_cast<int>(to_int(value, line, key));
      else if (key == "k") run.k = static_cast<int>(to_int(value, line, key));
      else if (key == "q") run.q = static_cast<int>(to_int(value, line, key));
      else if (key == "ell") run.ell = static_cast<int>(to_int(value, line, key));
      else if (key == "alpha") run.alpha = to_double(value, line, key);
      else if (key == "f") run.function_spec = value;
      else if (key == "samples") run.samples = static_cast<std::uint64_t>(to_int(value, line, key));
      else if (key == "seed") run.seed = static_cast<std::uint64_t>(to_int(value, line, key));
      else if (key == "rel_tol") run.rel_tol = to_double(value, line, key);
      else if (key == "z_max") run.z_max = to_double(value, line, key);
      else if (key == "scale") run.scale = to_double(value, line, key);
      else if (key == "offset_scale") run.offset_scale = to_double(value, line, key);
      else if (key == "constant_scale") run.constant_scale = to_double(value, line, key);
      else fail(line, "unknown [verify] key '" + key + "'");
      return;
    }
  }
}

}  // namespace

std::vector<SuiteEntry> parse_suite(const std::string& text) {
  std::vector<SuiteEntry> entries;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  bool in_entry = false;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    // strip comments (full-line or trailing)
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') fail(line_no, "unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      SuiteEntry entry;
      entry.line = line_no;
      if (name == "constants") entry.kind = SuiteEntry::Kind::Constants;
      else if (name == "siegel-quadrature") entry.kind = SuiteEntry::Kind::SiegelQuadrature;
      else if (name == "verify") entry.kind = SuiteEntry::Kind::Verify;
      else if (name == "reproducibility") entry.kind = SuiteEntry::Kind::Reproducibility;
      else if (name == "invariants") entry.kind = SuiteEntry::Kind::Invariants;
      else fail(line_no, "unknown section [" + name + "]");
      entries.push_back(std::move(entry));
      in_entry = true;
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(line_no, "expected 'key = value' or a [section] header", 1);
    if (!in_entry) fail(line_no, "key outside any [section]", 1);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail(line_no, "empty key", 1);
    if (value.empty()) fail(line_no, "empty value for key '" + key + "'", static_cast<int>(eq) + 2);
    const auto value_at = raw.find(value, raw.find('=') + 1);
    g_value_column = value_at == std::string::npos ? 0 : static_cast<int>(value_at) + 1;
    apply_key(entries.back(), key, value, line_no);
  }
  if (entries.empty()) throw ParseError("suite line 1: suite contains no entries");
  return entries;
}

namespace {

struct Check {
  std::string label;
  double value = 0.0;
  double expected = 0.0;
  double rel_err = 0.0;
  bool pass = false;
};

Check make_check(const std::string& label, double value, double expected, double tol) {
  Check c;
  c.label = label;
  c.value = value;
  c.expected = expected;
  c.rel_err = std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
  c.pass = c.rel_err <= tol;
  return c;
}

std::vector<Check> constants_checks() {
  std::vector<Check> checks;
  const double tol = 1e-12;
  checks.push_back(make_check("sigma_{3,1} = 4 pi", stiefel_volume(3, 1), 4.0 * M_PI, tol));
  checks.push_back(make_check("sigma_{2,1} = 2 pi", stiefel_volume(2, 1), 2.0 * M_PI, tol));
  checks.push_back(make_check("sigma_{2,2} = 4 pi", stiefel_volume(2, 2), 4.0 * M_PI, tol));
  checks.push_back(make_check("Gamma_1(1) = 1", siegel_gamma(1, 1.0), 1.0, tol));
  checks.push_back(
      make_check("Gamma_1(2.5) = Gamma(2.5)", siegel_gamma(1, 2.5), std::tgamma(2.5), tol));
  checks.push_back(make_check("Gamma_2(2) = pi/2", siegel_gamma(2, 2.0), 0.5 * M_PI, tol));
  return checks;
}

std::vector<Check> siegel_quadrature_checks(const SuiteEntry& entry) {
  std::vector<Check> checks;
  for (int k : entry.k_values) {
    for (double alpha : entry.alpha_values) {
      std::ostringstream label;
      label << "Gamma_" << k << "(" << alpha << ") cone quadrature";
      checks.push_back(make_check(label.str(), siegel_gamma_integral_check(k, alpha),
                                  siegel_gamma(k, alpha), entry.quad_rel_tol));
    }
  }
  return checks;
}

Check make_bound_check(const std::string& label, double worst, double bound) {
  Check c;
  c.label = label;
  c.value = worst;
  c.expected = bound;
  c.rel_err = worst;
  c.pass = worst <= bound;
  return c;
}

std::vector<Check> invariant_checks(const SuiteEntry& entry) {
  std::vector<Check> checks;
  RngStream rng(entry.seed, 0);
  const int trials = std::max(entry.trials, 10);

  double worst_gram = 0.0, worst_simplex = 0.0;
  for (int t = 0; t < trials; ++t) {
    const int n = 2 + static_cast<int>(rng.next_u32() % 3);
    const int q = 1 + static_cast<int>(rng.next_u32() % n);
    const Matrix x = sample_gaussian_matrix(n, q, rng);
    const Matrix g = sample_stiefel(n, n, rng).matrix();
    const double base = gram_volume(x);
    worst_gram = std::max(worst_gram, std::abs(gram_volume(g * x) - base) / std::max(base, 1e-300));
    const Matrix xt = sample_gaussian_matrix(n, q + 1, rng);
    Matrix shifted = xt;
    const Vector tr = sample_gaussian_matrix(n, 1, rng).col(0);
    for (int j = 0; j <= q; ++j) shifted.col(j) += tr;
    const double sbase = simplex_volume(xt);
    worst_simplex = std::max(
        worst_simplex, std::abs(simplex_volume(shifted) - sbase) / std::max(sbase, 1e-300));
  }
  checks.push_back(make_bound_check("gram volume rotation invariance", worst_gram, 1e-9));
  checks.push_back(make_bound_check("simplex volume translation invariance", worst_simplex, 1e-9));

  double worst_frame = 0.0, worst_proj = 0.0;
  for (int t = 0; t < trials; ++t) {
    const Frame v = sample_stiefel(4, 2, rng);
    worst_frame = std::max(worst_frame, (v.matrix().transpose() * v.matrix() -
                                         Matrix::Identity(2, 2)).cwiseAbs().maxCoeff());
    const Subspace s = sample_grassmann(3, 2, rng);
    const Matrix& p = s.projector();
    worst_proj = std::max(worst_proj, (p * p - p).cwiseAbs().maxCoeff());
  }
  checks.push_back(make_bound_check("sampled frame orthonormality", worst_frame, 1e-10));
  checks.push_back(make_bound_check("sampled projector idempotency", worst_proj, 1e-10));

  const int moment_draws = 20000;
  Matrix sum = Matrix::Zero(3, 3);
  for (int i = 0; i < moment_draws; ++i) sum += sample_grassmann(3, 1, rng).projector();
  const Matrix mean = sum / moment_draws;
  const double se = 0.5 / std::sqrt(static_cast<double>(moment_draws));
  const double dev =
      (mean - (1.0 / 3.0) * Matrix::Identity(3, 3)).cwiseAbs().maxCoeff();
  checks.push_back(make_bound_check("grassmann first-moment invariance (4 se)", dev, 4.0 * se));
  return checks;
}

ordered_json checks_json(const std::vector<Check>& checks) {
  ordered_json arr = ordered_json::array();
  for (const Check& c : checks) {
    ordered_json j;
    j["label"] = c.label;
    j["value"] = c.value;
    j["expected"] = c.expected;
    j["rel_err"] = c.rel_err;
    j["pass"] = c.pass;
    arr.push_back(j);
  }
  return arr;
}

ordered_json report_as_json(const VerificationReport& r, bool no_timestamp) {
  return ordered_json::parse(render_report(r, ReportFormat::Json, no_timestamp));
}

}  // namespace

SuiteOutcome run_suite_file(const std::string& path, int workers, ReportFormat format,
                            bool no_timestamp) {
  std::ifstream in(path);
  if (!in) throw ParseError("suite: cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::vector<SuiteEntry> entries = parse_suite(buffer.str());

  SuiteOutcome outcome;
  ordered_json out;
  out["suite"] = path;
  out["entries"] = ordered_json::array();
  std::ostringstream human;
  std::ostringstream csv;
  csv << "entry,kind,label,value,expected,pass\n";

  int index = 0;
  for (const SuiteEntry& entry : entries) {
    ++index;
    bool entry_pass = true;
    ordered_json je;
    switch (entry.kind) {
      case SuiteEntry::Kind::Constants:
      case SuiteEntry::Kind::SiegelQuadrature:
      case SuiteEntry::Kind::Invariants: {
        const char* kind_name = entry.kind == SuiteEntry::Kind::Constants ? "constants"
                                : entry.kind == SuiteEntry::Kind::SiegelQuadrature
                                    ? "siegel-quadrature"
                                    : "invariants";
        const std::vector<Check> checks = entry.kind == SuiteEntry::Kind::Constants
                                              ? constants_checks()
                                          : entry.kind == SuiteEntry::Kind::SiegelQuadrature
                                              ? siegel_quadrature_checks(entry)
                                              : invariant_checks(entry);
        for (const Check& c : checks) {
          entry_pass = entry_pass && c.pass;
          csv << index << "," << kind_name << "," << c.label << "," << c.value << ","
              << c.expected << "," << (c.pass ? "true" : "false") << "\n";
          human << "  " << (c.pass ? "pass" : "FAIL") << "  " << c.label << " (rel err "
                << c.rel_err << ")\n";
        }
        je["kind"] = kind_name;
        je["checks"] = checks_json(checks);
        je["pass"] = entry_pass;
        break;
      }
      case SuiteEntry::Kind::Verify: {
        RunConfig run = entry.run;
        if (workers > 0) run.workers = workers;
        const VerificationReport report = execute_run(run);
        entry_pass = report.pass == entry.expect_pass;
        je["kind"] = "verify";
        je["expect"] = entry.expect_pass ? "pass" : "fail";
        je["report"] = report_as_json(report, no_timestamp);
        je["pass"] = entry_pass;
        csv << index << ",verify," << identity_name(report.identity) << "," << report.lhs.mean
            << "," << report.rhs.mean << "," << (entry_pass ? "true" : "false") << "\n";
        human << "  " << (entry_pass ? "pass" : "FAIL") << "  verify "
              << identity_name(report.identity) << " (n=" << report.n << ", z=" << report.z
              << ", rel gap=" << report.rel_gap
              << (entry.expect_pass ? ")" : "; expected to fail and did)") << "\n";
        break;
      }
      case SuiteEntry::Kind::Reproducibility: {
        // Same configuration, reran and spread across worker counts: the
        // rendered reports must agree byte for byte.
        RunConfig run = entry.run;
        run.workers = 1;
        const std::string first =
            render_report(execute_run(run), ReportFormat::Json, /*no_timestamp=*/true);
        const std::string again =
            render_report(execute_run(run), ReportFormat::Json, /*no_timestamp=*/true);
        run.workers = 4;
        const std::string spread =
            render_report(execute_run(run), ReportFormat::Json, /*no_timestamp=*/true);
        entry_pass = first == again && first == spread && !first.empty();
        je["kind"] = "reproducibility";
        je["identity"] = run.identity;
        je["byte_identical"] = entry_pass;
        je["pass"] = entry_pass;
        csv << index << ",reproducibility," << run.identity << ",,,"
            << (entry_pass ? "true" : "false") << "\n";
        human << "  " << (entry_pass ? "pass" : "FAIL") << "  reproducibility " << run.identity
              << " (rerun and workers 1 vs 4 byte-identical)\n";
        break;
      }
    }
    if (entry_pass) ++outcome.passed;
    else ++outcome.failed;
    out["entries"].push_back(je);
  }

  outcome.all_pass = outcome.failed == 0;
  out["passed"] = outcome.passed;
  out["failed"] = outcome.failed;
  out["pass"] = outcome.all_pass;
  out["version"] = kVersion;

  switch (format) {
    case ReportFormat::Json:
      outcome.rendered = out.dump(2) + "\n";
      break;
    case ReportFormat::Csv:
      outcome.rendered = csv.str();
      break;
    case ReportFormat::Human: {
      std::ostringstream os;
      os << "suite: " << path << "\n" << human.str();
      os << (outcome.all_pass ? "PASS" : "FAIL") << " (" << outcome.passed << " passed, "
         << outcome.failed << " failed)\n";
      outcome.rendered = os.str();
      break;
    }
  }
  return outcome;
}

}  // namespace bpv
