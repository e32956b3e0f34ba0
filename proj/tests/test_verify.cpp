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

#include "bpv/constants.hpp"
#include "bpv/verify.hpp"
#include "test_util.hpp"

#include <cmath>

using namespace bpv;
using test::rel_err;

namespace {

VerifyOptions fast(std::uint64_t seed, std::uint64_t samples = 100000) {
  VerifyOptions opts;
  opts.samples = samples;
  opts.seed = seed;
  opts.workers = 2;
  return opts;
}

MultiPointFunction gaussians(int dim, int count, double a = 1.0) {
  return MultiPointFunction(std::vector<TestFunction>(static_cast<std::size_t>(count),
                                                      TestFunction::gaussian(dim, a)));
}

MultiPointFunction balls(int dim, int count, double radius = 1.0) {
  return MultiPointFunction(std::vector<TestFunction>(static_cast<std::size_t>(count),
                                                      TestFunction::ball(dim, radius)));
}

}  // namespace

TEST_CASE("polar identity: gaussian and ball") {
  auto r = verify_polar(2, 1, gaussians(2, 1), fast(1));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, M_PI) <= 1e-12);

  r = verify_polar(3, 2, gaussians(3, 2), fast(2));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, std::pow(M_PI, 3)) <= 1e-12);

  // scalar case: the identity degenerates to splitting the real line
  r = verify_polar(1, 1, gaussians(1, 1), fast(3));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, std::sqrt(M_PI)) <= 1e-12);

  r = verify_polar(2, 1, balls(2, 1), fast(4));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, M_PI) <= 1e-12);

  CHECK_THROWS_AS(verify_polar(2, 3, gaussians(2, 3), fast(5)), InvalidArgument);
}

TEST_CASE("linear decomposition identity") {
  auto r = verify_bp(2, 1, 1, gaussians(2, 1), fast(1));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, M_PI) <= 1e-12);
  CHECK(rel_err(bp_constant(2, 1, 1), 0.5 * stiefel_volume(2, 1)) <= 1e-14);

  r = verify_bp(3, 2, 1, gaussians(3, 1), fast(2));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, std::pow(M_PI, 1.5)) <= 1e-12);

  r = verify_bp(3, 2, 2, gaussians(3, 2), fast(3));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, std::pow(M_PI, 3)) <= 1e-12);

  // k = n: the weight is 1 and the identity is plain Fubini
  r = verify_bp(2, 2, 1, gaussians(2, 1), fast(4));
  CHECK(r.pass);

  // bounded support goes through the Monte Carlo left side
  r = verify_bp(3, 2, 1, balls(3, 1), fast(5));
  CHECK(r.pass);
  CHECK(!r.lhs.exact);

  CHECK_THROWS_AS(verify_bp(2, 3, 1, gaussians(2, 1), fast(6)), InvalidArgument);
}

TEST_CASE("affine decomposition identity") {
  auto r = verify_affine_bp(2, 1, 1, gaussians(2, 2), fast(1));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, M_PI * M_PI) <= 1e-12);

  r = verify_affine_bp(3, 2, 1, gaussians(3, 2), fast(2));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, std::pow(M_PI, 3)) <= 1e-12);

  // k = n degenerates to Fubini
  r = verify_affine_bp(2, 2, 1, gaussians(2, 2), fast(3));
  CHECK(r.pass);
  CHECK(r.path == "fubini-degenerate");
}

TEST_CASE("affine identity is translation invariant") {
  // Shifting every factor center leaves the closed left side unchanged
  // and the verification passing.
  Vector c(2);
  c << 0.4, -0.9;
  std::vector<TestFunction> shifted(2, TestFunction::shifted(TestFunction::gaussian(2, 1.0), c));
  auto r = verify_affine_bp(2, 1, 1, MultiPointFunction(std::move(shifted)), fast(4));
  CHECK(r.pass);
  CHECK(*r.closed_form == M_PI * M_PI);
}

TEST_CASE("dual identities in regularized form") {
  auto r = verify_bp_dual(3, 2, 1, gaussians(3, 1), fast(1));
  CHECK(r.pass);
  CHECK(r.path == "regularized");
  CHECK(rel_err(*r.closed_form, std::pow(M_PI, 1.5) / bp_constant(3, 2, 1)) <= 1e-12);

  // k = n: both sides are the same expression
  r = verify_bp_dual(2, 2, 1, gaussians(2, 1), fast(2));
  CHECK(r.pass);

  r = verify_affine_dual(3, 2, 1, gaussians(3, 2), fast(3));
  CHECK(r.pass);
  CHECK(rel_err(*r.closed_form, std::pow(M_PI, 3) / bp_affine_constant(3, 2, 1)) <= 1e-12);

  // the dual agrees with the primal on the same configuration and seed
  const auto primal = verify_bp(3, 2, 1, gaussians(3, 1), fast(7));
  const auto dual = verify_bp_dual(3, 2, 1, gaussians(3, 1), fast(7));
  CHECK(primal.pass == dual.pass);
}

TEST_CASE("multilinear plane-transform identity") {
  // quadrature path (n (q+1) <= 6)
  auto r = verify_multilinear(2, 1, 1, gaussians(2, 2), fast(1));
  CHECK(r.pass);
  CHECK(r.path == "quadrature");
  CHECK(rel_err(*r.closed_form, M_PI * std::sqrt(0.5 * M_PI)) <= 1e-12);
  CHECK(rel_err(r.rhs.mean, M_PI * std::sqrt(0.5 * M_PI)) <= 1e-6);

  r = verify_multilinear(3, 2, 1, gaussians(3, 2), fast(2));
  CHECK(r.pass);
  CHECK(r.path == "quadrature");

  // restated path (dimension too high for quadrature)
  r = verify_multilinear(3, 2, 2, gaussians(3, 3), fast(3));
  CHECK(r.pass);
  CHECK(r.path == "bp2-restated");

  // mixed rates exercise the non-symmetric closed form
  MultiPointFunction mixed({TestFunction::gaussian(2, 1.0), TestFunction::gaussian(2, 2.0)});
  r = verify_multilinear(2, 1, 1, mixed, fast(4));
  CHECK(r.pass);

  // the left side is symmetric in the factor list: same seed, same value
  MultiPointFunction swapped({TestFunction::gaussian(2, 2.0), TestFunction::gaussian(2, 1.0)});
  auto r2 = verify_multilinear(2, 1, 1, swapped, fast(4));
  CHECK(r.lhs.mean == r2.lhs.mean);

  CHECK_THROWS_AS(verify_multilinear(2, 1, 1, balls(2, 2), fast(5)), UnsupportedConfiguration);
  CHECK_THROWS_AS(verify_multilinear(2, 2, 1, gaussians(2, 2), fast(6)), InvalidArgument);
}

TEST_CASE("power identity for the plane transform") {
  // the classical exponent case k + ell + 1 = n at (2, 1, 0)
  auto r = verify_drury(2, 1, 0, 1.0, fast(1));
  CHECK(r.pass);
  CHECK(r.path == "quadrature");
  CHECK(rel_err(*r.closed_form, M_PI * std::sqrt(0.5 * M_PI)) <= 1e-12);
  CHECK(rel_err(r.rhs.mean, *r.closed_form) <= 1e-6);
  REQUIRE(r.lhs_check.has_value());
  CHECK(std::abs(r.lhs_check->mean - *r.closed_form) <= 3.0 * r.lhs_check->stderr_);

  // (3, 1, 1): quadrature with an inner transform factor
  r = verify_drury(3, 1, 1, 1.0, fast(2));
  CHECK(r.pass);
  CHECK(r.path == "quadrature");
  CHECK(rel_err(*r.closed_form, std::pow(M_PI, 1.5) * M_PI / 3.0) <= 1e-12);

  // k = 2 forces the restated path (with inner factors for ell > 0)
  r = verify_drury(3, 2, 0, 1.0, fast(3));
  CHECK(r.pass);
  CHECK(r.path == "bp2-restated");

  r = verify_drury(4, 2, 1, 1.0, fast(4, 200000));
  CHECK(r.pass);
  CHECK(r.path == "bp2-restated");

  // non-unit rate
  r = verify_drury(2, 1, 2, 0.5, fast(5));
  CHECK(r.pass);

  CHECK_THROWS_AS(verify_drury(2, 2, 0, 1.0, fast(6)), InvalidArgument);
  CHECK_THROWS_AS(verify_drury(2, 1, -1, 1.0, fast(7)), InvalidArgument);
}

TEST_CASE("riesz functional") {
  VerifyOptions opts = fast(1);

  // alpha = n: exact, equal to the full integral as computed
  auto est = riesz_functional(2, 1, 2.0, gaussians(2, 1), opts);
  CHECK(est.mean == gaussians(2, 1).full_integral());
  CHECK(est.stderr_ == 0.0);

  // alpha < n, q = 1: radial quadrature gives pi^{3/2}
  est = riesz_functional(2, 1, 1.0, gaussians(2, 1), opts);
  CHECK(rel_err(est.mean, std::pow(M_PI, 1.5)) <= 1e-8);

  // alpha > n: Monte Carlo against the closed form 2 pi for (3, 1, 2)...
  // here (n, q, alpha) = (3, 1, 4): zeta = 2^{-1} sigma_{3,1} Gamma(2) = 2 pi
  auto report = verify_riesz(3, 1, 4.0, gaussians(3, 1), opts);
  CHECK(report.pass);
  CHECK(rel_err(*report.closed_form, 2.0 * M_PI) <= 1e-12);

  // (3, 1, 2) via quadrature: also 2 pi
  report = verify_riesz(3, 1, 2.0, gaussians(3, 1), opts);
  CHECK(report.pass);
  CHECK(rel_err(report.lhs.mean, 2.0 * M_PI) <= 1e-7);

  // centered ball with q = 1
  report = verify_riesz(3, 1, 1.5, balls(3, 1), opts);
  CHECK(report.pass);

  // domain errors
  CHECK_THROWS_AS(riesz_functional(2, 1, 0.0, gaussians(2, 1), opts), OutOfDomain);
  CHECK_THROWS_AS(riesz_functional(3, 2, 1.5, gaussians(3, 2), opts), OutOfDomain);
  Vector c(2);
  c << 1.0, 0.0;
  MultiPointFunction shifted({TestFunction::shifted(TestFunction::gaussian(2, 1.0), c)});
  CHECK_THROWS_AS(riesz_functional(2, 1, 1.0, shifted, opts), OutOfDomain);
}

TEST_CASE("estimator rejection accounting") {
  McRunSpec spec{200000, 3, 0, 2};
  int dummy = 0;
  (void)dummy;
  const McEstimate est = run_weighted_mc(spec, [](RngStream& rng) -> std::optional<double> {
    const double u = rng.next_uniform();
    if (u < 0.25) return std::nullopt;
    return 1.0;
  });
  CHECK(est.samples + est.rejected == 200000);
  CHECK(std::abs(static_cast<double>(est.rejected) / 200000.0 - 0.25) < 0.01);
  CHECK(est.mean == 1.0);
}

TEST_CASE("reports are deterministic and independent of worker count") {
  VerifyOptions one = fast(42);
  one.workers = 1;
  VerifyOptions four = fast(42);
  four.workers = 4;
  const auto a = verify_bp(3, 2, 1, gaussians(3, 1), one);
  const auto b = verify_bp(3, 2, 1, gaussians(3, 1), four);
  CHECK(a.rhs.mean == b.rhs.mean);
  CHECK(a.rhs.stderr_ == b.rhs.stderr_);
  CHECK(a.rhs.samples == b.rhs.samples);
  CHECK(a.z == b.z);

  const auto c = verify_bp(3, 2, 1, gaussians(3, 1), fast(43));
  CHECK(c.rhs.mean != a.rhs.mean);  // seeds matter
}

TEST_CASE("constant sensitivity: a wrong constant is detected") {
  VerifyOptions opts = fast(7, 200000);
  auto r = verify_bp(3, 2, 1, gaussians(3, 1), opts);
  CHECK(r.pass);

  opts.constant_scale = 1.05;
  r = verify_bp(3, 2, 1, gaussians(3, 1), opts);
  CHECK(!r.pass);

  opts.constant_scale = 0.95;
  r = verify_bp(3, 2, 1, gaussians(3, 1), opts);
  CHECK(!r.pass);
}

TEST_CASE("scaling consistency of the linear identity") {
  // Dilating space by lambda multiplies both sides by lambda^{nq}; with
  // Gaussian rate a / lambda^2 the estimators must reproduce that ratio.
  const double lambda = 2.0;
  const int n = 2, k = 1, q = 1;
  const auto base = verify_bp(n, k, q, gaussians(n, q, 1.0), fast(11));
  const auto scaled = verify_bp(n, k, q, gaussians(n, q, 1.0 / (lambda * lambda)), fast(11));
  const double expected = std::pow(lambda, n * q);
  CHECK(rel_err(scaled.lhs.mean / base.lhs.mean, expected) <= 1e-12);  // closed forms
  CHECK(rel_err(scaled.rhs.mean / base.rhs.mean, expected) <= 1e-2);
}

TEST_CASE("rotation metamorphic: rotated centers change nothing statistically") {
  RngStream grng(99, 0);
  const Matrix rot = test::random_orthogonal(3, grng);
  Vector c(3);
  c << 0.3, -0.2, 0.1;
  const Vector rc = rot * c;

  double sum_plain = 0.0, sum_rot = 0.0, sum_sq = 0.0;
  const int seeds = 20;
  for (int s = 0; s < seeds; ++s) {
    std::vector<TestFunction> f1(1, TestFunction::shifted(TestFunction::gaussian(3, 1.0), c));
    std::vector<TestFunction> f2(1, TestFunction::shifted(TestFunction::gaussian(3, 1.0), rc));
    const auto r1 = verify_bp(3, 2, 1, MultiPointFunction(f1), fast(1000 + s, 20000));
    const auto r2 = verify_bp(3, 2, 1, MultiPointFunction(f2), fast(2000 + s, 20000));
    CHECK(r1.lhs.mean == r2.lhs.mean);  // closed form is rotation invariant
    const double d = r1.rhs.mean - r2.rhs.mean;
    sum_plain += r1.rhs.mean;
    sum_rot += r2.rhs.mean;
    sum_sq += d * d;
  }
  const double mean_diff = (sum_plain - sum_rot) / seeds;
  const double se_diff = std::sqrt(sum_sq / seeds / seeds);
  CHECK(std::abs(mean_diff) <= 4.0 * se_diff);
}

TEST_CASE("100-seed coverage: the 3-sigma band holds") {
  // Deterministic battery: for seeds 1..100 on a fast configuration the
  // Monte Carlo side must sit within 3 combined standard errors of the
  // closed form in at least 99 runs.
  int within = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    const auto r = verify_bp(2, 1, 1, gaussians(2, 1), fast(seed, 10000));
    const double diff = std::abs(r.rhs.mean - *r.closed_form);
    if (diff <= 3.0 * r.rhs.stderr_) ++within;
  }
  CHECK(within >= 99);
}
