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

#include "bpv/verify.hpp"

#include <optional>
#include <string>

namespace bpv {

/// One verification request as it arrives from the CLI, the C API, or a
/// suite file. Validated and dispatched by execute_run.
struct RunConfig {
  std::string identity;
  int n = 2;
  int k = -1;
  int q = -1;
  int ell = -1;
  std::optional<double> alpha;
  std::string function_spec = "gaussian:a=1";
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 0;
  double rel_tol = 0.02;
  double z_max = 3.0;
  std::optional<double> scale;
  std::optional<double> offset_scale;
  double constant_scale = 1.0;
};

/// Validates the configuration (ordering constraints, samples >= 1000,
/// factor counts) and runs the named identity verifier.
VerificationReport execute_run(const RunConfig& config);

}  // namespace bpv
