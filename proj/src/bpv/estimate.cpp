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

#include "bpv/estimate.hpp"

#include "bpv/common.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

namespace bpv {

namespace {

struct Partial {
  double sum = 0.0;
  double sum_sq = 0.0;
  std::uint64_t accepted = 0;
  std::uint64_t rejected = 0;
};

}  // namespace

McEstimate run_weighted_mc(const McRunSpec& spec, const SampleFn& draw) {
  require(spec.samples >= 1, "run_weighted_mc: needs at least one sample");

  const std::uint64_t chunks = (spec.samples + kMcChunkSize - 1) / kMcChunkSize;
  std::vector<Partial> partials(chunks);

  auto run_chunk = [&](std::uint64_t c) {
    RngStream rng(spec.seed, spec.stream_base + c);
    const std::uint64_t begin = c * kMcChunkSize;
    const std::uint64_t end = std::min(begin + kMcChunkSize, spec.samples);
    Partial p;
    for (std::uint64_t i = begin; i < end; ++i) {
      const std::optional<double> v = draw(rng);
      if (!v) {
        ++p.rejected;
        continue;
      }
      p.sum += *v;
      p.sum_sq += *v * *v;
      ++p.accepted;
    }
    partials[c] = p;
  };

  int workers = spec.workers > 0 ? spec.workers
                                 : static_cast<int>(std::thread::hardware_concurrency());
  if (workers < 1) workers = 1;
  if (static_cast<std::uint64_t>(workers) > chunks) workers = static_cast<int>(chunks);

  if (workers == 1) {
    for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
  } else {
    std::atomic<std::uint64_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (;;) {
          const std::uint64_t c = next.fetch_add(1);
          if (c >= chunks) return;
          run_chunk(c);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  // Sequential merge in chunk order keeps the reduction independent of
  // thread scheduling.
  Partial total;
  for (const Partial& p : partials) {
    total.sum += p.sum;
    total.sum_sq += p.sum_sq;
    total.accepted += p.accepted;
    total.rejected += p.rejected;
  }

  McEstimate est;
  est.samples = total.accepted;
  est.rejected = total.rejected;
  if (total.accepted == 0) {
    throw SingularConfiguration("run_weighted_mc: every draw was rejected");
  }
  const double n = static_cast<double>(total.accepted);
  est.mean = total.sum / n;
  if (total.accepted > 1) {
    const double var = std::max(total.sum_sq - n * est.mean * est.mean, 0.0) / (n - 1.0);
    est.stderr_ = std::sqrt(var / n);
  }
  return est;
}

}  // namespace bpv
