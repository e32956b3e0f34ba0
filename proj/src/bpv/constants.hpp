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

#include <string>
#include <vector>

namespace bpv {

/// Multivariate (Siegel) gamma function of the positive definite cone P_k,
///   Gamma_k(alpha) = pi^{k(k-1)/4} prod_{j=0}^{k-1} Gamma(alpha - j/2),
/// defined for alpha > (k-1)/2 — the domain where the underlying cone
/// integral converges absolutely. Out-of-domain alpha is an error, never a
/// continuation value.
double siegel_gamma(int k, double alpha);
double siegel_log_gamma(int k, double alpha);

/// Deterministic cross-check of siegel_gamma against the cone integral
/// (k <= 2). Returns the quadrature value; error bound through *error_out
/// when non-null.
double siegel_gamma_integral_check(int k, double alpha, double* error_out = nullptr);

/// Total mass sigma_{n,k} = 2^k pi^{nk/2} / Gamma_k(n/2) of the invariant
/// measure on the Stiefel manifold V_{n,k}. Accumulated in log space so
/// large n stays finite.
double stiefel_volume(int n, int k);
double stiefel_log_volume(int n, int k);

/// sigma_{n,q} / sigma_{k,q}: the constant of the linear subspace-measure
/// decomposition. Requires 1 <= q <= k <= n.
double bp_constant(int n, int k, int q);

/// (q!)^{n-k} sigma_{n,q} / sigma_{k,q}: the constant of the affine
/// decomposition. Requires 1 <= q <= k <= n.
double bp_affine_constant(int n, int k, int q);

double log_factorial(int m);

/// One row of the CLI constants table.
struct ConstantReport {
  std::string name;
  std::vector<double> parameters;
  double value = 0.0;
  std::string formula_citation;
};

/// All four constants for one (n, k, q) triple.
std::vector<ConstantReport> constant_rows(int n, int k, int q);

}  // namespace bpv
