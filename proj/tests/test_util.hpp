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

#include "bpv/linalg.hpp"
#include "bpv/rng.hpp"
#include "bpv/sampling.hpp"

#include <cmath>

namespace bpv::test {

inline double rel_err(double value, double expected) {
  return std::abs(value - expected) / std::max(std::abs(expected), 1e-300);
}

inline Matrix random_matrix(int n, int q, RngStream& rng) {
  return sample_gaussian_matrix(n, q, rng);
}

/// Deterministic orthogonal matrix for invariance tests.
inline Matrix random_orthogonal(int n, RngStream& rng) {
  return sample_stiefel(n, n, rng).matrix();
}

struct Moments {
  double mean = 0.0;
  double se = 0.0;
};

/// Mean and standard error of f over N draws.
template <typename Fn>
Moments sample_moments(std::uint64_t count, RngStream& rng, Fn&& f) {
  double sum = 0.0, sum_sq = 0.0;
  for (std::uint64_t i = 0; i < count; ++i) {
    const double v = f(rng);
    sum += v;
    sum_sq += v * v;
  }
  const double n = static_cast<double>(count);
  Moments m;
  m.mean = sum / n;
  const double var = std::max(sum_sq - n * m.mean * m.mean, 0.0) / (n - 1.0);
  m.se = std::sqrt(var / n);
  return m;
}

}  // namespace bpv::test
