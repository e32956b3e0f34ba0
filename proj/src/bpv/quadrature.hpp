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

#include <functional>

namespace bpv::quad {

struct QuadResult {
  double value = 0.0;
  double error_bound = 0.0;  // conservative absolute error estimate
};

/// Adaptive 1-D quadrature (bisection on a Gauss-Legendre 8/16 pair).
/// Deterministic: interval selection depends only on the integrand values.
QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_intervals = 4000);

/// Tensor-product composite Gauss-Legendre over a box, with panel-doubling
/// refinement until the relative change is below rel_tol. Intended for
/// integrands that are smooth on the closed box.
QuadResult integrate_box3(const std::function<double(double, double, double)>& f,
                          double ax, double bx, double ay, double by, double az, double bz,
                          double rel_tol, int initial_panels = 4, int max_panels = 16);

/// Siegel cone integral over P_k of exp(-tr(rho)) det(rho)^{alpha-(k+1)/2},
/// evaluated through the Cholesky substitution rho = L L^T with positive
/// diagonal, whose Jacobian is 2^k prod_i l_ii^{k-i+1}. Supports k in
/// {1, 2}; this is the deterministic cross-check for the Siegel gamma
/// product formula and therefore must not call it.
QuadResult siegel_cone_integral(int k, double alpha, double rel_tol = 1e-9);

/// Two-point singular-weight integral over (R^n)^2:
///
///   I = Int Int exp(-a0|x0|^2) exp(-a1|x1|^2)
///             * [sqrt(pi/line_rate) exp(-line_rate d^2)]^line_factors
///             * |x1 - x0|^power  dx0 dx1,
///
/// where d is the distance from the origin to the line through x0 and x1.
/// Both point factors must be centered and radial; the integral then
/// reduces exactly to three dimensions:
///   x1 = x0 + r w (polar, which absorbs the |x1-x0|^power singularity),
///   x0 = t w + y with y orthogonal to w, |y| = s = d,
/// and the w-sphere integrates to its surface area. Requires
/// power > -n for integrability.
struct PairIntegralSpec {
  int n = 2;              // ambient dimension (2n <= 6)
  double a0 = 1.0;        // Gaussian rate of the x0 factor
  double a1 = 1.0;        // Gaussian rate of the x1 factor
  double power = 0.0;     // exponent of |x1 - x0|
  int line_factors = 0;   // count of 1-plane-transform factors
  double line_rate = 1.0; // their Gaussian rate
};
QuadResult pair_point_integral(const PairIntegralSpec& spec, double rel_tol = 1e-8);

/// Radial moment integral over R^n of exp(-a |x|^2) |x|^{alpha-n} dx
/// = |S^{n-1}| Int_0^inf exp(-a r^2) r^{alpha-1} dr, for alpha > 0.
/// The r^{alpha-1} endpoint singularity (alpha < 1) is removed by the
/// substitution r = u^{1/alpha}.
QuadResult gaussian_radial_moment(int n, double alpha, double rate, double rel_tol = 1e-9);

/// Surface area of the unit sphere S^{d-1}, computed locally from
/// lgamma so the quadrature oracles stay independent of the constants
/// module they are used to certify.
double unit_sphere_area(int d);

}  // namespace bpv::quad
