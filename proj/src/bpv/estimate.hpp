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

#include "bpv/rng.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace bpv {

/// One Monte Carlo estimate: sample mean, its standard error (sample
/// standard deviation / sqrt(count)), and the accepted/rejected counts.
/// Rejected draws are probability-zero degeneracies; a run with more than
/// kMaxRejectFraction of them signals a bug and is flagged by the caller.
struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;
};

inline constexpr double kMaxRejectFraction = 1e-4;

/// Work layout for one estimator. Samples are split into fixed-size chunks
/// (kMcChunkSize); chunk c draws from RngStream(seed, stream_base + c).
/// Partial sums are merged in chunk order, so the result is bit-identical
/// for any worker count — workers control physical parallelism only.
struct McRunSpec {
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream_base = 0;
  int workers = 0;  // 0: hardware concurrency
};

inline constexpr std::uint64_t kMcChunkSize = 1u << 16;

/// Draw one estimator value; nullopt counts the draw as rejected.
using SampleFn = std::function<std::optional<double>(RngStream&)>;

McEstimate run_weighted_mc(const McRunSpec& spec, const SampleFn& draw);

/// Stream-id namespaces for the estimator roles inside one verification,
/// so the two sides never share random numbers.
inline constexpr std::uint64_t kStreamLhs = std::uint64_t(1) << 32;
inline constexpr std::uint64_t kStreamRhs = std::uint64_t(2) << 32;
inline constexpr std::uint64_t kStreamLhsCheck = std::uint64_t(3) << 32;

}  // namespace bpv
