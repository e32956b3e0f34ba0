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

#include <utility>

namespace bpv {

// Numerical gates shared across the geometry types. The rank tolerance is
// on singular-value ratios (sigma_min / sigma_max).
inline constexpr double kRankTolerance = 1e-12;
inline constexpr double kFrameOrthoTol = 1e-10;
inline constexpr double kSymmetryTol = 1e-12;
inline constexpr double kProjectorTol = 1e-10;
inline constexpr double kOffsetOrthoTol = 1e-10;
inline constexpr double kMembershipTol = 1e-8;

/// Matrix with orthonormal columns: a point of the Stiefel manifold V_{n,k}.
class Frame {
 public:
  /// Validates columnwise orthonormality to kFrameOrthoTol.
  explicit Frame(Matrix m);

  int ambient_dim() const { return static_cast<int>(m_.rows()); }
  int rank() const { return static_cast<int>(m_.cols()); }
  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

/// Symmetric positive definite k x k matrix (a point of the cone P_k).
class PosDefMatrix {
 public:
  /// Validates symmetry to kSymmetryTol and positive definiteness
  /// (via Cholesky).
  explicit PosDefMatrix(Matrix m);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Matrix& matrix() const { return m_; }

  double det() const { return m_.determinant(); }

  /// Symmetric square root via eigendecomposition.
  Matrix sqrt() const;
  /// Symmetric inverse square root via eigendecomposition.
  Matrix inv_sqrt() const;

 private:
  Matrix m_;
};

/// k-dimensional linear subspace of R^n (a point of G_{n,k}).
///
/// The basis is a representative only; identity is the orthogonal
/// projector, which is computed eagerly so the value is safe to share
/// across threads.
class Subspace {
 public:
  explicit Subspace(Frame basis);

  int ambient_dim() const { return basis_.ambient_dim(); }
  int dim() const { return basis_.rank(); }
  const Frame& basis() const { return basis_; }
  const Matrix& projector() const { return projector_; }

  /// Projector distance in max-abs norm; two subspaces are equal iff this
  /// is within tolerance.
  double distance(const Subspace& other) const;
  bool approx_equal(const Subspace& other, double tol = kProjectorTol) const;

 private:
  Frame basis_;
  Matrix projector_;
};

/// Affine k-plane tau = xi + z with direction xi in G_{n,k} and offset
/// z in xi-perp. k = n is admitted with a zero offset (the plane is R^n).
class AffinePlane {
 public:
  AffinePlane(Subspace direction, Vector offset);

  const Subspace& direction() const { return direction_; }
  const Vector& offset() const { return offset_; }
  int ambient_dim() const { return direction_.ambient_dim(); }
  int dim() const { return direction_.dim(); }

  /// Distance from a point to the plane.
  double distance_to(const Vector& point) const;

 private:
  Subspace direction_;
  Vector offset_;
};

/// |x|_q = sqrt(det(x^T x)): the volume of the parallelepiped spanned by
/// the columns of x. Zero (never NaN) on rank-deficient input.
double gram_volume(const Matrix& x);

/// Volume of the simplex with the columns of xt (n rows, q+1 columns) as
/// vertices: gram volume of the difference vectors divided by q!.
double simplex_volume(const Matrix& xt);

/// Unique polar decomposition x = v rho^{1/2} of a full-rank n x k matrix:
/// rho = x^T x and v = x rho^{-1/2}, computed through the symmetric
/// eigendecomposition of rho. Throws SingularConfiguration when
/// sigma_min/sigma_max <= kRankTolerance.
std::pair<Frame, PosDefMatrix> polar_decompose(const Matrix& x);

/// Orthonormal basis of the column space of a full-column-rank matrix.
Frame orthonormalize(const Matrix& x);

/// Orthonormal basis of the orthogonal complement of a subspace
/// (n x (n-k)). k = n is an error.
Frame orthogonal_complement(const Subspace& s);

}  // namespace bpv
