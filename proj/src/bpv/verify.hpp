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

#include "bpv/estimate.hpp"
#include "bpv/test_functions.hpp"

#include <optional>
#include <string>

namespace bpv {

enum class Identity { Polar, BP, AffineBP, BPDual, AffineDual, Multilinear, Drury, Riesz };

std::string identity_name(Identity id);
std::optional<Identity> identity_from_name(const std::string& name);

/// One side of a verification: either a Monte Carlo estimate or an exact
/// value (closed form or deterministic quadrature, where stderr_ carries
/// the quadrature error bound and samples counts integrand evaluations as
/// zero).
struct SideEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t rejected = 0;
  bool exact = false;

  static SideEstimate from_mc(const McEstimate& e) {
    return {e.mean, e.stderr_, e.samples, e.rejected, false};
  }
  static SideEstimate from_exact(double value, double error_bound = 0.0) {
    return {value, error_bound, 0, 0, true};
  }
};

struct VerifyOptions {
  std::uint64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  int workers = 0;  // 0: hardware concurrency; never affects results
  double rel_tol = 0.02;
  double z_max = 3.0;
  std::optional<double> scale;         // proposal scale for point draws
  std::optional<double> offset_scale;  // proposal scale for plane offsets
  double constant_scale = 1.0;         // diagnostic: perturb the identity constant
};

/// Outcome of one identity verification. Pass requires, for every
/// comparison the identity defines: |difference| <= z_max combined
/// standard errors AND a relative gap <= rel_tol (against the closed form
/// when one exists), plus a rejected-draw fraction below
/// kMaxRejectFraction on each Monte Carlo side.
struct VerificationReport {
  Identity identity = Identity::BP;
  int n = 0;
  int k = -1;
  int q = -1;
  int ell = -1;
  std::optional<double> alpha;
  std::string function_spec;

  SideEstimate lhs;
  SideEstimate rhs;
  std::optional<SideEstimate> lhs_check;  // independent re-estimate of the lhs
  std::optional<double> closed_form;

  double z = 0.0;
  double rel_gap = 0.0;
  bool pass = false;
  std::string path;  // evaluation route of the rhs

  std::uint64_t seed = 0;
  double rel_tol = 0.02;
  double z_max = 3.0;
  double constant_scale = 1.0;
  double runtime_ms = 0.0;
};

/// Matrix polar-decomposition measure identity on M_{n,k}: Lebesgue
/// integration equals 2^{-k} (frame measure) x (cone measure with density
/// det(rho)^{(n-k-1)/2}). F has k factors.
VerificationReport verify_polar(int n, int k, const MultiPointFunction& F,
                                const VerifyOptions& opts);

/// Linear subspace-measure decomposition on M_{n,q} (1 <= q <= k <= n):
/// the Lebesgue integral equals sigma_{n,q}/sigma_{k,q} times the integral
/// over k-subspaces of F weighted by the Gram volume to the power n-k.
VerificationReport verify_bp(int n, int k, int q, const MultiPointFunction& F,
                             const VerifyOptions& opts);

/// Affine version on M_{n,q+1} with the simplex-volume weight and constant
/// (q!)^{n-k} sigma_{n,q}/sigma_{k,q}. F has q+1 factors.
VerificationReport verify_affine_bp(int n, int k, int q, const MultiPointFunction& F,
                                    const VerifyOptions& opts);

/// Dual (negative-power) form of the linear identity, verified in the
/// regularized arrangement: the singular weight is cancelled into the test
/// function so both estimators have finite variance.
VerificationReport verify_bp_dual(int n, int k, int q, const MultiPointFunction& G,
                                  const VerifyOptions& opts);

/// Dual form of the affine identity, regularized the same way.
VerificationReport verify_affine_dual(int n, int k, int q, const MultiPointFunction& G,
                                      const VerifyOptions& opts);

/// Multilinear plane-transform form: the plane integral of a product of
/// 1..q+1 transformed factors against the affine plane measure. All
/// factors must be Gaussian. The singular right-hand side is evaluated by
/// deterministic quadrature when n(q+1) <= 6, otherwise through the
/// finite-variance affine restatement.
VerificationReport verify_multilinear(int n, int k, int q, const MultiPointFunction& f_list,
                                      const VerifyOptions& opts);

/// Power identity for the Gaussian plane transform (m = k + ell + 1
/// factors): closed-form and Monte Carlo left sides against the
/// singular-weight right side (quadrature for k = 1, n <= 3; regularized
/// restatement otherwise).
VerificationReport verify_drury(int n, int k, int ell, double a, const VerifyOptions& opts);

/// Riesz functional: integral over M_{n,q} of G(x) |x|_q^{alpha - n},
/// absolutely convergent for alpha > q-1. Monte Carlo for alpha >= n;
/// radial quadrature for q = 1 below that; exact at alpha = n.
McEstimate riesz_functional(int n, int q, double alpha, const MultiPointFunction& G,
                            const VerifyOptions& opts);

/// Report wrapper comparing riesz_functional against its closed form
/// (all-Gaussian products, or a single centered ball with q = 1).
VerificationReport verify_riesz(int n, int q, double alpha, const MultiPointFunction& G,
                                const VerifyOptions& opts);

}  // namespace bpv
