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

#include <string>
#include <vector>

namespace bpv {

enum class ReportFormat { Json, Csv, Human };

ReportFormat report_format_from_name(const std::string& name);

/// Stable, machine-diffable rendering. With no_timestamp the timestamp
/// and runtime fields are omitted, making identical runs byte-identical.
std::string render_report(const VerificationReport& report, ReportFormat format,
                          bool no_timestamp);

/// Constants table over the cartesian product of the given parameter
/// values; triples violating 1 <= q <= k <= n are skipped.
std::string render_constants_table(const std::vector<int>& n_values,
                                   const std::vector<int>& k_values,
                                   const std::vector<int>& q_values, ReportFormat format);

}  // namespace bpv
