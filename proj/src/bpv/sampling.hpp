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

#include "bpv/common.hpp"
#include "bpv/linalg.hpp"
#include "bpv/rng.hpp"

namespace bpv {

/// Sample with an importance weight: reference measure density divided by
/// proposal density, so weighted averages estimate integrals against the
/// (generally non-probability) reference measure.
template <typename T>
struct WeightedSample {
  T value;
  double weight;
};

/// n x q matrix of independent standard normal entries, consumed in
/// row-major order (fixed order is part of the stream contract).
Matrix sample_gaussian_matrix(int n, int q, RngStream& rng);

/// Haar-distributed orthonormal k-frame in R^n: the polar factor of a
/// Gaussian matrix. The polar factor is unique, so there is no sign
/// convention to pin down. Rank-deficient draws (probability zero) are
/// resampled a bounded number of times.
Frame sample_stiefel(int n, int k, RngStream& rng);

/// Invariantly distributed k-dimensional subspace of R^n.
Subspace sample_grassmann(int n, int k, RngStream& rng);

/// Point y = B g in the subspace, g ~ N(mean_in_span, scale^2 I_k), with a
/// weight that converts the expectation to Lebesgue integration over the
/// subspace. mean_in_span is expressed in the basis coordinates.
WeightedSample<Vector> sample_point_in_subspace(const Subspace& s, double scale, RngStream& rng,
                                                const Vector* mean_in_span = nullptr);

/// Affine k-plane tau = xi + z: xi invariant on subspaces, z Gaussian in
/// the orthogonal complement with the weight converting to Lebesgue
/// measure on the complement. The plane measure is thus
/// (probability on subspaces) x (Lebesgue on offsets). Requires k < n.
/// A non-null offset_center recenters the offset proposal on that point's
/// component perpendicular to the sampled subspace (importance shift for
/// integrands concentrated away from the origin).
WeightedSample<AffinePlane> sample_affine_plane(int n, int k, double offset_scale, RngStream& rng,
                                                const Vector* offset_center = nullptr);

/// The unique affine k-plane through the k+1 points given as the columns
/// of xt (throws SingularConfiguration when the points are affinely
/// dependent at rank tolerance).
AffinePlane plane_through_points(const Matrix& xt);

/// Wishart draw rho = G^T G, G an m x k matrix with column j entries
/// N(0, sigma_j^2); rho then follows the Wishart law with m degrees of
/// freedom and diagonal scale. Requires m >= k.
PosDefMatrix sample_wishart(int k, int m, const Vector& column_scales, RngStream& rng);

/// Log density of that Wishart law at rho, with respect to Lebesgue
/// measure on the upper-triangle coordinates of the symmetric matrix.
double wishart_log_pdf(const PosDefMatrix& rho, int m, const Vector& column_scales);

/// Log density of the N(mean, scale^2 I) proposal at g.
double gaussian_log_pdf(const Vector& g, double scale, const Vector* mean = nullptr);

}  // namespace bpv
