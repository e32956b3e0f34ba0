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

#include <array>
#include <cstdint>

namespace bpv {

/// Counter-based random stream (Philox4x32-10).
///
/// A stream is fully determined by (seed, stream_id): the same pair yields
/// the same draw sequence on every run and platform, and distinct
/// stream_ids give statistically independent streams. Parallel Monte Carlo
/// partitions work by stream_id, never by thread, so results depend only on
/// the (seed, stream layout) and not on scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_id_(stream_id) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform draw strictly inside (0, 1); 53-bit resolution.
  double next_uniform();

  /// Standard normal via Box-Muller; consumes exactly two uniforms per
  /// pair of draws.
  double next_normal();

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint32_t, 4> buf_{};
  int buf_pos_ = 4;  // empty
  double cached_normal_ = 0.0;
  bool have_cached_normal_ = false;
};

}  // namespace bpv
