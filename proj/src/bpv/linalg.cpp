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

#include "bpv/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

#include <cmath>

namespace bpv {

Frame::Frame(Matrix m) : m_(std::move(m)) {
  require(m_.rows() >= 1 && m_.cols() >= 1, "Frame: empty matrix");
  require(m_.rows() >= m_.cols(), "Frame: more columns than rows");
  require(all_finite(m_), "Frame: non-finite entries");
  const Matrix gram = m_.transpose() * m_;
  const double err = (gram - Matrix::Identity(m_.cols(), m_.cols())).cwiseAbs().maxCoeff();
  require(err <= kFrameOrthoTol, "Frame: columns not orthonormal (residual " + std::to_string(err) + ")");
}

PosDefMatrix::PosDefMatrix(Matrix m) : m_(std::move(m)) {
  require(m_.rows() == m_.cols() && m_.rows() >= 1, "PosDefMatrix: not square");
  require(all_finite(m_), "PosDefMatrix: non-finite entries");
  const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  require(asym <= kSymmetryTol * scale, "PosDefMatrix: not symmetric");
  Eigen::LLT<Matrix> llt(m_);
  require(llt.info() == Eigen::Success, "PosDefMatrix: not positive definite");
}

namespace {

Matrix sym_power(const Matrix& m, double exponent) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(m);
  Vector lam = es.eigenvalues();
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    lam(i) = std::pow(std::max(lam(i), 0.0), exponent);
  }
  return es.eigenvectors() * lam.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Matrix PosDefMatrix::sqrt() const { return sym_power(m_, 0.5); }

Matrix PosDefMatrix::inv_sqrt() const { return sym_power(m_, -0.5); }

Subspace::Subspace(Frame basis)
    : basis_(std::move(basis)), projector_(basis_.matrix() * basis_.matrix().transpose()) {}

double Subspace::distance(const Subspace& other) const {
  require(ambient_dim() == other.ambient_dim(), "Subspace: ambient dimension mismatch");
  return (projector_ - other.projector()).cwiseAbs().maxCoeff();
}

bool Subspace::approx_equal(const Subspace& other, double tol) const {
  return dim() == other.dim() && distance(other) <= tol;
}

AffinePlane::AffinePlane(Subspace direction, Vector offset)
    : direction_(std::move(direction)), offset_(std::move(offset)) {
  require(offset_.size() == direction_.ambient_dim(), "AffinePlane: offset dimension mismatch");
  require(offset_.allFinite(), "AffinePlane: non-finite offset");
  const double leak = (direction_.projector() * offset_).cwiseAbs().maxCoeff();
  const double scale = std::max(1.0, offset_.cwiseAbs().maxCoeff());
  require(leak <= kOffsetOrthoTol * scale, "AffinePlane: offset not orthogonal to direction");
}

double AffinePlane::distance_to(const Vector& point) const {
  require(point.size() == ambient_dim(), "AffinePlane: point dimension mismatch");
  const Vector perp = point - direction_.projector() * point;
  return (perp - offset_).norm();
}

double gram_volume(const Matrix& x) {
  require(x.rows() >= x.cols() && x.cols() >= 1, "gram_volume: needs n >= q >= 1");
  require(all_finite(x), "gram_volume: non-finite entries");
  const Matrix gram = x.transpose() * x;
  // Rounding can push the determinant of a (near-)singular Gram matrix
  // slightly negative; clamp before the square root.
  const double det = std::max(gram.determinant(), 0.0);
  return std::sqrt(det);
}

double simplex_volume(const Matrix& xt) {
  require(xt.cols() >= 2, "simplex_volume: needs at least two points");
  const Eigen::Index q = xt.cols() - 1;
  require(xt.rows() >= q, "simplex_volume: needs n >= q");
  Matrix diffs(xt.rows(), q);
  for (Eigen::Index j = 0; j < q; ++j) {
    diffs.col(j) = xt.col(j + 1) - xt.col(0);
  }
  double factorial = 1.0;
  for (Eigen::Index j = 2; j <= q; ++j) factorial *= static_cast<double>(j);
  return gram_volume(diffs) / factorial;
}

std::pair<Frame, PosDefMatrix> polar_decompose(const Matrix& x) {
  require(x.rows() >= x.cols() && x.cols() >= 1, "polar_decompose: needs n >= k >= 1");
  require(all_finite(x), "polar_decompose: non-finite entries");
  const Matrix rho = x.transpose() * x;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  const Vector lam = es.eigenvalues();  // ascending
  const double lam_max = lam(lam.size() - 1);
  if (lam_max <= 0.0 || std::sqrt(std::max(lam(0), 0.0) / lam_max) <= kRankTolerance) {
    throw SingularConfiguration("polar_decompose: rank-deficient input");
  }
  Vector inv_sqrt = lam;
  for (Eigen::Index i = 0; i < inv_sqrt.size(); ++i) {
    inv_sqrt(i) = 1.0 / std::sqrt(inv_sqrt(i));
  }
  Matrix v = x * (es.eigenvectors() * inv_sqrt.asDiagonal() * es.eigenvectors().transpose());
  // Poor conditioning degrades the computed frame's orthonormality by
  // roughly eps * cond(x)^2; Newton-Schulz iterations restore the limit
  // value (a no-op for well-conditioned inputs).
  const Eigen::Index k = x.cols();
  double residual = 0.0;
  for (int polish = 0; polish < 8; ++polish) {
    const Matrix gram = v.transpose() * v;
    residual = (gram - Matrix::Identity(k, k)).cwiseAbs().maxCoeff();
    if (residual <= 1e-13) break;
    v = 0.5 * v * (3.0 * Matrix::Identity(k, k) - gram);
  }
  if (residual > kFrameOrthoTol) {
    throw SingularConfiguration("polar_decompose: frame factor unrecoverable at this conditioning");
  }
  return {Frame(std::move(v)), PosDefMatrix(rho)};
}

Frame orthonormalize(const Matrix& x) {
  require(x.rows() >= x.cols() && x.cols() >= 1, "orthonormalize: needs n >= k >= 1");
  require(all_finite(x), "orthonormalize: non-finite entries");
  Eigen::JacobiSVD<Matrix> svd(x, Eigen::ComputeThinU);
  const Vector sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(sv.size() - 1) / sv(0) <= kRankTolerance) {
    throw SingularConfiguration("orthonormalize: rank-deficient input");
  }
  return Frame(svd.matrixU());
}

Frame orthogonal_complement(const Subspace& s) {
  const int n = s.ambient_dim();
  const int k = s.dim();
  require(k < n, "orthogonal_complement: subspace already fills the ambient space");
  Eigen::HouseholderQR<Matrix> qr(s.basis().matrix());
  const Matrix q = qr.householderQ();
  return Frame(q.rightCols(n - k));
}

}  // namespace bpv
