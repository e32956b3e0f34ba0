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

#pragma once

#include "bpv/report.hpp"
#include "bpv/runner.hpp"

#include <string>
#include <vector>

namespace bpv {

/// A declared battery of checks. Entry kinds:
///   [constants]          exact-value checks of the special constants
///   [siegel-quadrature]  product formula vs cone-integral quadrature
///   [verify]             one identity verification (RunConfig keys, plus
///                        `expect = pass|fail` for sensitivity rows)
///   [reproducibility]    one verification run twice and across worker
///                        counts; rendered reports must be byte-identical
///   [invariants]         geometry invariant battery (volumes, frames,
///                        projectors, sampler moments)
struct SuiteEntry {
  enum class Kind { Constants, SiegelQuadrature, Verify, Reproducibility, Invariants };
  Kind kind = Kind::Verify;
  int line = 0;

  // siegel-quadrature parameters
  std::vector<int> k_values = {1, 2};
  std::vector<double> alpha_values = {1.0, 1.5, 2.0, 3.0};
  double quad_rel_tol = 1e-6;

  // verify / reproducibility parameters
  RunConfig run;
  bool expect_pass = true;

  // invariants parameters
  int trials = 200;
  std::uint64_t seed = 0;
};

/// Parses suite text. Throws ParseError with the offending line number.
std::vector<SuiteEntry> parse_suite(const std::string& text);

struct SuiteOutcome {
  bool all_pass = false;
  int passed = 0;
  int failed = 0;
  std::string rendered;
};

/// Runs every entry of a suite file and renders an aggregate report.
/// `workers` overrides the per-entry worker counts when positive.
SuiteOutcome run_suite_file(const std::string& path, int workers, ReportFormat format,
                            bool no_timestamp);

}  // namespace bpv
