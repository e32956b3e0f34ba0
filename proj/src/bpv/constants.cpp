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

#include "bpv/constants.hpp"

#include "bpv/quadrature.hpp"

#include <cmath>

namespace bpv {

double siegel_log_gamma(int k, double alpha) {
  require(k >= 1, "siegel_gamma: k must be positive");
  if (!(alpha > 0.5 * (k - 1))) {
    throw OutOfDomain("siegel_gamma: requires alpha > (k-1)/2, got alpha = " +
                      std::to_string(alpha) + " for k = " + std::to_string(k));
  }
  double sum = 0.25 * k * (k - 1) * std::log(M_PI);
  for (int j = 0; j < k; ++j) {
    sum += std::lgamma(alpha - 0.5 * j);
  }
  return sum;
}

double siegel_gamma(int k, double alpha) { return std::exp(siegel_log_gamma(k, alpha)); }

double siegel_gamma_integral_check(int k, double alpha, double* error_out) {
  if (k != 1 && k != 2) {
    throw InvalidArgument("siegel_gamma_integral_check: only k in {1,2} is supported");
  }
  const quad::QuadResult r = quad::siegel_cone_integral(k, alpha, 1e-9);
  if (error_out) *error_out = r.error_bound;
  return r.value;
}

double stiefel_log_volume(int n, int k) {
  require(k >= 1, "stiefel_volume: k must be positive");
  require(k <= n, "stiefel_volume: requires k <= n");
  return k * std::log(2.0) + 0.5 * n * k * std::log(M_PI) - siegel_log_gamma(k, 0.5 * n);
}

double stiefel_volume(int n, int k) { return std::exp(stiefel_log_volume(n, k)); }

namespace {

void check_ordering(int n, int k, int q, const char* who) {
  if (!(1 <= q && q <= k && k <= n)) {
    throw InvalidArgument(std::string(who) + ": requires 1 <= q <= k <= n, got (n,k,q) = (" +
                          std::to_string(n) + "," + std::to_string(k) + "," + std::to_string(q) +
                          ")");
  }
}

}  // namespace

double bp_constant(int n, int k, int q) {
  check_ordering(n, k, q, "bp_constant");
  return std::exp(stiefel_log_volume(n, q) - stiefel_log_volume(k, q));
}

double log_factorial(int m) {
  require(m >= 0, "log_factorial: negative argument");
  return std::lgamma(static_cast<double>(m) + 1.0);
}

double bp_affine_constant(int n, int k, int q) {
  check_ordering(n, k, q, "bp_affine_constant");
  return std::exp((n - k) * log_factorial(q) + stiefel_log_volume(n, q) - stiefel_log_volume(k, q));
}

std::vector<ConstantReport> constant_rows(int n, int k, int q) {
  check_ordering(n, k, q, "constant_rows");
  std::vector<ConstantReport> rows;
  rows.push_back({"stiefel_volume",
                  {static_cast<double>(n), static_cast<double>(k)},
                  stiefel_volume(n, k),
                  "2^k pi^{nk/2} / Gamma_k(n/2)"});
  rows.push_back({"siegel_gamma",
                  {static_cast<double>(k), 0.5 * n},
                  siegel_gamma(k, 0.5 * n),
                  "pi^{k(k-1)/4} prod_j Gamma(n/2 - j/2)"});
  rows.push_back({"bp_constant",
                  {static_cast<double>(n), static_cast<double>(k), static_cast<double>(q)},
                  bp_constant(n, k, q),
                  "sigma_{n,q} / sigma_{k,q}"});
  rows.push_back({"bp_affine_constant",
                  {static_cast<double>(n), static_cast<double>(k), static_cast<double>(q)},
                  bp_affine_constant(n, k, q),
                  "(q!)^{n-k} sigma_{n,q} / sigma_{k,q}"});
  return rows;
}

}  // namespace bpv
