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

#include "bpv/sampling.hpp"

#include "bpv/constants.hpp"

#include <cmath>

namespace bpv {

Matrix sample_gaussian_matrix(int n, int q, RngStream& rng) {
  require(n >= 1 && q >= 1, "sample_gaussian_matrix: dimensions must be positive");
  Matrix x(n, q);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < q; ++j) {
      x(i, j) = rng.next_normal();
    }
  }
  return x;
}

Frame sample_stiefel(int n, int k, RngStream& rng) {
  require(1 <= k && k <= n, "sample_stiefel: requires 1 <= k <= n");
  constexpr int kMaxRetries = 8;
  for (int attempt = 0; attempt < kMaxRetries; ++attempt) {
    const Matrix x = sample_gaussian_matrix(n, k, rng);
    try {
      return polar_decompose(x).first;
    } catch (const SingularConfiguration&) {
      // Rejecting on conditioning only conditions on the cone factor,
      // which is independent of the frame factor, so the frame law stays
      // exactly invariant. Probability-zero-adjacent event; fresh draw.
      continue;
    }
  }
  throw SingularConfiguration("sample_stiefel: repeated rank-deficient Gaussian draws");
}

Subspace sample_grassmann(int n, int k, RngStream& rng) {
  return Subspace(sample_stiefel(n, k, rng));
}

double gaussian_log_pdf(const Vector& g, double scale, const Vector* mean) {
  const double d = static_cast<double>(g.size());
  const double q2 = mean ? (g - *mean).squaredNorm() : g.squaredNorm();
  return -0.5 * d * std::log(2.0 * M_PI * scale * scale) - 0.5 * q2 / (scale * scale);
}

WeightedSample<Vector> sample_point_in_subspace(const Subspace& s, double scale, RngStream& rng,
                                                const Vector* mean_in_span) {
  require(scale > 0.0, "sample_point_in_subspace: scale must be positive");
  const int k = s.dim();
  Vector g(k);
  for (int i = 0; i < k; ++i) g(i) = rng.next_normal();
  g *= scale;
  if (mean_in_span) {
    require(mean_in_span->size() == k, "sample_point_in_subspace: mean dimension mismatch");
    g += *mean_in_span;
  }
  // The basis is orthonormal, so Lebesgue measure on the subspace matches
  // Lebesgue measure in the g coordinates and the weight is 1/proposal.
  const double weight = std::exp(-gaussian_log_pdf(g, scale, mean_in_span));
  return {s.basis().matrix() * g, weight};
}

WeightedSample<AffinePlane> sample_affine_plane(int n, int k, double offset_scale, RngStream& rng,
                                                const Vector* offset_center) {
  require(1 <= k && k < n, "sample_affine_plane: requires 1 <= k < n");
  require(offset_scale > 0.0, "sample_affine_plane: offset scale must be positive");
  Subspace xi = sample_grassmann(n, k, rng);
  const Frame comp = orthogonal_complement(xi);
  Vector h(n - k);
  for (int i = 0; i < n - k; ++i) h(i) = rng.next_normal();
  h *= offset_scale;
  double weight;
  if (offset_center) {
    require(offset_center->size() == n, "sample_affine_plane: offset center dimension mismatch");
    const Vector mean = comp.matrix().transpose() * *offset_center;
    h += mean;
    weight = std::exp(-gaussian_log_pdf(h, offset_scale, &mean));
  } else {
    weight = std::exp(-gaussian_log_pdf(h, offset_scale));
  }
  return {AffinePlane(std::move(xi), comp.matrix() * h), weight};
}

AffinePlane plane_through_points(const Matrix& xt) {
  require(xt.cols() >= 2, "plane_through_points: needs at least two points");
  const Eigen::Index k = xt.cols() - 1;
  require(xt.rows() > k, "plane_through_points: needs k < n");
  Matrix diffs(xt.rows(), k);
  for (Eigen::Index j = 0; j < k; ++j) {
    diffs.col(j) = xt.col(j + 1) - xt.col(0);
  }
  Subspace direction(orthonormalize(diffs));  // throws on affine dependence
  const Vector offset = xt.col(0) - direction.projector() * xt.col(0);
  return AffinePlane(std::move(direction), offset);
}

PosDefMatrix sample_wishart(int k, int m, const Vector& column_scales, RngStream& rng) {
  require(k >= 1, "sample_wishart: k must be positive");
  require(m >= k, "sample_wishart: needs at least k degrees of freedom");
  require(column_scales.size() == k, "sample_wishart: scale count mismatch");
  require(column_scales.minCoeff() > 0.0, "sample_wishart: scales must be positive");
  Matrix g(m, k);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < k; ++j) {
      g(i, j) = column_scales(j) * rng.next_normal();
    }
  }
  Matrix rho = g.transpose() * g;
  rho = 0.5 * (rho + rho.transpose());  // exact symmetry
  return PosDefMatrix(std::move(rho));
}

double wishart_log_pdf(const PosDefMatrix& rho, int m, const Vector& column_scales) {
  const int k = rho.dim();
  require(m >= k, "wishart_log_pdf: needs at least k degrees of freedom");
  require(column_scales.size() == k, "wishart_log_pdf: scale count mismatch");
  double log_det_sigma = 0.0;
  double tr_solve = 0.0;
  for (int j = 0; j < k; ++j) {
    const double s2 = column_scales(j) * column_scales(j);
    log_det_sigma += std::log(s2);
    tr_solve += rho.matrix()(j, j) / s2;
  }
  const double log_det_rho = std::log(std::max(rho.det(), 1e-300));
  return 0.5 * (m - k - 1) * log_det_rho - 0.5 * tr_solve -
         0.5 * m * k * std::log(2.0) - 0.5 * m * log_det_sigma - siegel_log_gamma(k, 0.5 * m);
}

}  // namespace bpv
