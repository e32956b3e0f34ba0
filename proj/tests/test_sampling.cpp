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

#include "bpv/quadrature.hpp"
#include "test_util.hpp"

#include <utility>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace bpv;
using test::rel_err;

TEST_CASE("gaussian matrix sampler") {
  RngStream a(1, 0);
  RngStream b(1, 0);
  const Matrix x = sample_gaussian_matrix(3, 2, a);
  const Matrix y = sample_gaussian_matrix(3, 2, b);
  CHECK(x == y);  // determinism contract

  const int N = 100000;
  RngStream rng(2, 0);
  double sum = 0, sum2 = 0;
  for (int i = 0; i < N; ++i) {
    const Matrix m = sample_gaussian_matrix(2, 2, rng);
    sum += m.sum();
    sum2 += m.squaredNorm();
  }
  const double entries = 4.0 * N;
  CHECK(std::abs(sum / entries) < 4.0 / std::sqrt(entries));
  CHECK(std::abs(sum2 / entries - 1.0) < 4.0 * std::sqrt(2.0 / entries));
}

TEST_CASE("stiefel sampler: frames and uniform angle in the plane") {
  RngStream rng(3, 0);
  for (int i = 0; i < 200; ++i) {
    const Frame v = sample_stiefel(4, 2, rng);
    const Matrix gram = v.matrix().transpose() * v.matrix();
    CHECK((gram - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() <= 1e-10);
  }

  // (n, k) = (2, 1): the frame angle must be uniform on the circle.
  // Kolmogorov-Smirnov test at the 0.1% level: D < 1.9495 / sqrt(N).
  const int N = 100000;
  std::vector<double> u(N);
  RngStream krng(4, 0);
  for (int i = 0; i < N; ++i) {
    const Frame v = sample_stiefel(2, 1, krng);
    const double angle = std::atan2(v.matrix()(1, 0), v.matrix()(0, 0));
    u[static_cast<std::size_t>(i)] = (angle + M_PI) / (2.0 * M_PI);
  }
  std::sort(u.begin(), u.end());
  double d = 0.0;
  for (int i = 0; i < N; ++i) {
    const double hi = (i + 1.0) / N - u[static_cast<std::size_t>(i)];
    const double lo = u[static_cast<std::size_t>(i)] - static_cast<double>(i) / N;
    d = std::max({d, hi, lo});
  }
  CHECK(d < 1.9495 / std::sqrt(static_cast<double>(N)));
}

TEST_CASE("stiefel sampler: second moment forced by invariance") {
  // E[v v^T] = (k/n) I entrywise within 4 standard errors.
  const int n = 4, k = 2, N = 100000;
  RngStream rng(5, 0);
  Matrix sum = Matrix::Zero(n, n);
  Matrix sum2 = Matrix::Zero(n, n);
  for (int i = 0; i < N; ++i) {
    const Frame v = sample_stiefel(n, k, rng);
    const Matrix p = v.matrix() * v.matrix().transpose();
    sum += p;
    sum2 += p.cwiseProduct(p);
  }
  const Matrix mean = sum / N;
  const Matrix expected = (static_cast<double>(k) / n) * Matrix::Identity(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double var = std::max(sum2(i, j) / N - mean(i, j) * mean(i, j), 0.0);
      const double se = std::sqrt(var / N);
      CHECK(std::abs(mean(i, j) - expected(i, j)) <= 4.0 * se + 1e-12);
    }
  }
}

TEST_CASE("stiefel sampler: distribution is rotation invariant") {
  // Comparing mean projectors of {v} and {g v} across independent streams.
  const int n = 3, k = 1, N = 100000;
  RngStream grng(6, 999);
  const Matrix g = test::random_orthogonal(n, grng);

  Matrix mean_plain = Matrix::Zero(n, n);
  Matrix mean_rot = Matrix::Zero(n, n);
  Matrix m2_plain = Matrix::Zero(n, n);
  Matrix m2_rot = Matrix::Zero(n, n);
  RngStream r1(6, 0);
  RngStream r2(6, 1);
  for (int i = 0; i < N; ++i) {
    const Matrix v1 = sample_stiefel(n, k, r1).matrix();
    const Matrix p1 = v1 * v1.transpose();
    mean_plain += p1;
    m2_plain += p1.cwiseProduct(p1);
    const Matrix v2 = g * sample_stiefel(n, k, r2).matrix();
    const Matrix p2 = v2 * v2.transpose();
    mean_rot += p2;
    m2_rot += p2.cwiseProduct(p2);
  }
  mean_plain /= N;
  mean_rot /= N;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double v1 = std::max(m2_plain(i, j) / N - mean_plain(i, j) * mean_plain(i, j), 0.0);
      const double v2 = std::max(m2_rot(i, j) / N - mean_rot(i, j) * mean_rot(i, j), 0.0);
      const double se = std::sqrt((v1 + v2) / N);
      CHECK(std::abs(mean_plain(i, j) - mean_rot(i, j)) <= 4.0 * se + 1e-12);
      // second moments of the projector entries likewise agree (their
      // entries lie in [0,1], so entry variance is bounded by 1/4)
      const double se2 = 0.5 / std::sqrt(static_cast<double>(N));
      CHECK(std::abs(m2_plain(i, j) / N - m2_rot(i, j) / N) <= 4.0 * std::sqrt(2.0) * se2);
    }
  }
}

TEST_CASE("grassmann sampler") {
  const int n = 3, k = 2, N = 100000;
  RngStream rng(7, 0);
  Matrix sum = Matrix::Zero(n, n);
  for (int i = 0; i < N; ++i) {
    const Subspace s = sample_grassmann(n, k, rng);
    if (i < 100) {
      const Matrix& p = s.projector();
      CHECK((p * p - p).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(std::abs(p.trace() - k) <= 1e-8);
    }
    sum += s.projector();
  }
  const Matrix mean = sum / N;
  const Matrix expected = (static_cast<double>(k) / n) * Matrix::Identity(n, n);
  // entry variance of a projector entry is bounded by 1/4
  const double se = 0.5 / std::sqrt(static_cast<double>(N));
  CHECK((mean - expected).cwiseAbs().maxCoeff() <= 4.0 * se);

  // (2,1): the (0,0) projector entry is cos^2(theta) with uniform theta
  RngStream rng21(8, 0);
  const auto m = test::sample_moments(100000, rng21, [&](RngStream& r) {
    return sample_grassmann(2, 1, r).projector()(0, 0);
  });
  CHECK(std::abs(m.mean - 0.5) <= 4.0 * m.se);
}

TEST_CASE("weighted point-in-subspace sampler") {
  RngStream setup(9, 0);
  const Subspace xi = sample_grassmann(3, 2, setup);

  // membership
  RngStream rng(9, 1);
  for (int i = 0; i < 100; ++i) {
    auto ws = sample_point_in_subspace(xi, 0.9, rng);
    CHECK((xi.projector() * ws.value - ws.value).cwiseAbs().maxCoeff() <= 1e-10);
    CHECK(ws.weight > 0.0);
  }

  // definitional weight: weight * proposal density = 1
  auto ws = sample_point_in_subspace(xi, 0.7, rng);
  const Vector g = xi.basis().matrix().transpose() * ws.value;
  CHECK(rel_err(ws.weight, std::exp(-gaussian_log_pdf(g, 0.7))) <= 1e-12);

  // Lebesgue integral over the subspace of exp(-|y|^2) is pi^{k/2}
  RngStream mrng(9, 2);
  const auto m = test::sample_moments(100000, mrng, [&](RngStream& r) {
    auto s = sample_point_in_subspace(xi, M_SQRT1_2, r);
    return s.weight * std::exp(-s.value.squaredNorm());
  });
  CHECK(std::abs(m.mean - M_PI) <= 4.0 * m.se + 1e-9);
}

TEST_CASE("weighted affine plane sampler") {
  const int n = 3, k = 1;
  RngStream rng(10, 0);
  for (int i = 0; i < 100; ++i) {
    auto ws = sample_affine_plane(n, k, M_SQRT1_2, rng);
    const AffinePlane& tau = ws.value;
    CHECK((tau.direction().projector() * tau.offset()).cwiseAbs().maxCoeff() <= 1e-10);
  }

  // E_w[exp(-m |z|^2)] = (pi/m)^{(n-k)/2} for m = 1, 2
  for (double mfac : {1.0, 2.0}) {
    RngStream mrng(10, 17 + static_cast<std::uint64_t>(mfac));
    const auto m = test::sample_moments(100000, mrng, [&](RngStream& r) {
      auto s = sample_affine_plane(n, k, M_SQRT1_2, r);
      return s.weight * std::exp(-mfac * s.value.offset().squaredNorm());
    });
    CHECK(std::abs(m.mean - std::pow(M_PI / mfac, 0.5 * (n - k))) <= 4.0 * m.se);
  }

  // determinism
  RngStream d1(11, 0), d2(11, 0);
  auto p1 = sample_affine_plane(3, 2, 1.0, d1);
  auto p2 = sample_affine_plane(3, 2, 1.0, d2);
  CHECK(p1.weight == p2.weight);
  CHECK(p1.value.offset() == p2.value.offset());
  CHECK(p1.value.direction().projector() == p2.value.direction().projector());

  CHECK_THROWS_AS(sample_affine_plane(3, 3, 1.0, d1), InvalidArgument);
}

TEST_CASE("weighted estimators vs deterministic quadrature on bounded support") {
  // Unbiasedness against an independent 1-D radial quadrature oracle:
  // for g(y) = (1 + |y|^2)^{-2} on |y| <= 2 inside a k-subspace,
  //   Int_xi g = |S^{k-1}| Int_0^2 r^{k-1} (1 + r^2)^{-2} dr.
  auto profile = [](double r) { return std::pow(1.0 + r * r, -2.0); };
  RngStream setup(20, 0);
  for (const auto& [n, k] : std::vector<std::pair<int, int>>{{2, 1}, {3, 1}, {3, 2}}) {
    const Subspace xi = sample_grassmann(n, k, setup);
    const auto oracle = quad::integrate_1d(
        [&](double r) { return std::pow(r, k - 1) * profile(r); }, 0.0, 2.0, 1e-10);
    const double target = quad::unit_sphere_area(k) * oracle.value;

    RngStream rng(20, 1 + static_cast<std::uint64_t>(10 * n + k));
    const auto m = test::sample_moments(100000, rng, [&](RngStream& r) {
      auto ws = sample_point_in_subspace(xi, 0.9, r);
      const double rad = ws.value.norm();
      return rad <= 2.0 ? ws.weight * profile(rad) : 0.0;
    });
    CHECK(std::abs(m.mean - target) <= 4.0 * m.se + 1e-8);
  }

  // Same for the affine-plane offset: a ball indicator on the offset has
  // the (n-k)-ball volume as its Lebesgue integral over xi-perp.
  RngStream rng(21, 0);
  const auto m = test::sample_moments(100000, rng, [&](RngStream& r) {
    auto ws = sample_affine_plane(3, 1, M_SQRT1_2, r);
    return ws.value.offset().norm() <= 1.2 ? ws.weight : 0.0;
  });
  const double disc = M_PI * 1.2 * 1.2;
  CHECK(std::abs(m.mean - disc) <= 4.0 * m.se);
}

TEST_CASE("plane through points") {
  Matrix pts(2, 2);
  pts.col(0) << 0.0, 0.0;
  pts.col(1) << 1.0, 0.0;
  const AffinePlane line = plane_through_points(pts);
  CHECK(line.offset().norm() <= 1e-12);
  CHECK(std::abs(line.direction().projector()(0, 0) - 1.0) <= 1e-12);

  Matrix pts2(2, 2);
  pts2.col(0) << 0.0, 1.0;
  pts2.col(1) << 1.0, 1.0;
  const AffinePlane shifted = plane_through_points(pts2);
  CHECK(std::abs(shifted.offset()(1) - 1.0) <= 1e-12);
  CHECK(std::abs(shifted.direction().projector()(0, 0) - 1.0) <= 1e-12);

  RngStream rng(12, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const Matrix xt = test::random_matrix(3, 3, rng);
    const AffinePlane tau = plane_through_points(xt);
    const double scale = 1.0 + xt.cwiseAbs().maxCoeff();
    for (int j = 0; j < 3; ++j) {
      CHECK(tau.distance_to(xt.col(j)) <= 1e-8 * scale);
    }
  }

  Matrix collinear(3, 3);
  collinear.col(0) << 0.0, 0.0, 0.0;
  collinear.col(1) << 1.0, 0.0, 0.0;
  collinear.col(2) << 2.0, 0.0, 0.0;
  CHECK_THROWS_AS(plane_through_points(collinear), SingularConfiguration);
}

TEST_CASE("wishart draws and density") {
  // k = 1 with m degrees of freedom and scale s^2 is Gamma(m/2, 2 s^2).
  const int m = 3;
  const double s = 0.8;
  Vector scales(1);
  scales << s;
  RngStream rng(13, 0);
  const auto mom = test::sample_moments(100000, rng, [&](RngStream& r) {
    return sample_wishart(1, m, scales, r).matrix()(0, 0);
  });
  CHECK(std::abs(mom.mean - m * s * s) <= 4.0 * mom.se);

  for (double rho : {0.3, 1.0, 2.7}) {
    Matrix mat(1, 1);
    mat << rho;
    const double log_pdf = wishart_log_pdf(PosDefMatrix(mat), m, scales);
    const double shape = 0.5 * m;
    const double scale2 = 2.0 * s * s;
    const double expected = (shape - 1.0) * std::log(rho) - rho / scale2 -
                            std::lgamma(shape) - shape * std::log(scale2);
    CHECK(rel_err(log_pdf, expected) <= 1e-12);
  }

  // k = 2: the density integrates to 1 over the cone (via the Cholesky
  // substitution with Jacobian 4 x^2 z), and E[trace] = m * tr(Sigma).
  Vector scales2(2);
  scales2 << 0.9, 0.6;
  auto density = [&](double x, double y, double z) {
    Matrix l = Matrix::Zero(2, 2);
    l(0, 0) = x;
    l(1, 0) = y;
    l(1, 1) = z;
    Matrix rho = l * l.transpose();
    rho = 0.5 * (rho + rho.transpose());
    return 4.0 * x * x * z * std::exp(wishart_log_pdf(PosDefMatrix(rho), 4, scales2));
  };
  const double cut = 12.0;
  const auto total = quad::integrate_box3(density, 1e-9, cut, -cut, cut, 1e-9, cut, 1e-7, 4, 16);
  CHECK(rel_err(total.value, 1.0) <= 1e-5);

  RngStream trng(14, 0);
  const auto tr = test::sample_moments(50000, trng, [&](RngStream& r) {
    return sample_wishart(2, 4, scales2, r).matrix().trace();
  });
  const double expected_tr = 4.0 * (0.81 + 0.36);
  CHECK(std::abs(tr.mean - expected_tr) <= 4.0 * tr.se);

  CHECK_THROWS_AS(sample_wishart(2, 1, scales2, trng), InvalidArgument);
}
