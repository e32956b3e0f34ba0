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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "bpv/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

using bpv::RngStream;

TEST_CASE("golden first draws pin the generator") {
  // Frozen output of this repository's generator for (seed=1, stream=0).
  // Any change to the stream algorithm must be deliberate and re-pinned.
  const std::uint64_t expected[10] = {
      0xe50a0ebce3e80670ull, 0xb615aa2795f222c0ull, 0xdfc5ccbeac08141bull,
      0xa7f6609379c07a47ull, 0x8e76cc9d3f55b3f0ull, 0xebed3676b68faa8eull,
      0x095aef64c1f3cfa1ull, 0x0dc9abaa24b41299ull, 0xa9cc4c003f6d6908ull,
      0xd57c8b9ca7e35a81ull};
  RngStream rng(1, 0);
  for (std::uint64_t e : expected) {
    CHECK(rng.next_u64() == e);
  }
}

TEST_CASE("identical (seed, stream) replays identically") {
  RngStream a(123456789, 42);
  RngStream b(123456789, 42);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  RngStream c(123456789, 42);
  RngStream d(123456789, 42);
  for (int i = 0; i < 100; ++i) {
    CHECK(c.next_normal() == d.next_normal());
  }
}

TEST_CASE("distinct streams decorrelate") {
  const int N = 100000;
  RngStream a(7, 0);
  RngStream b(7, 1);
  double sum_a = 0, sum_b = 0, sum_ab = 0, sum_a2 = 0, sum_b2 = 0;
  for (int i = 0; i < N; ++i) {
    const double x = a.next_uniform();
    const double y = b.next_uniform();
    sum_a += x;
    sum_b += y;
    sum_ab += x * y;
    sum_a2 += x * x;
    sum_b2 += y * y;
  }
  const double ma = sum_a / N, mb = sum_b / N;
  const double cov = sum_ab / N - ma * mb;
  const double va = sum_a2 / N - ma * ma;
  const double vb = sum_b2 / N - mb * mb;
  const double corr = cov / std::sqrt(va * vb);
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(N)));
}

TEST_CASE("uniforms live strictly inside (0,1)") {
  RngStream rng(99, 3);
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_uniform();
    CHECK(u > 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("normal moments") {
  const int N = 200000;
  RngStream rng(5, 0);
  double sum = 0, sum2 = 0, sum3 = 0;
  for (int i = 0; i < N; ++i) {
    const double z = rng.next_normal();
    sum += z;
    sum2 += z * z;
    sum3 += z * z * z;
  }
  const double mean = sum / N;
  const double var = sum2 / N - mean * mean;
  const double skew = sum3 / N;
  // 4-standard-error bands: se(mean) = 1/sqrt(N), se(var) ~ sqrt(2/N),
  // se(third moment) ~ sqrt(15/N).
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(N)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / N));
  CHECK(std::abs(skew) < 4.0 * std::sqrt(15.0 / N));
}
