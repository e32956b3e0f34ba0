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

#include "bpv/verify.hpp"

#include "bpv/constants.hpp"
#include "bpv/quadrature.hpp"
#include "bpv/sampling.hpp"

#include <chrono>
#include <cmath>

namespace bpv {

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::Polar: return "polar";
    case Identity::BP: return "bp";
    case Identity::AffineBP: return "affine-bp";
    case Identity::BPDual: return "bp-dual";
    case Identity::AffineDual: return "affine-dual";
    case Identity::Multilinear: return "multilinear";
    case Identity::Drury: return "drury";
    case Identity::Riesz: return "riesz";
  }
  return "?";
}

std::optional<Identity> identity_from_name(const std::string& name) {
  if (name == "polar") return Identity::Polar;
  if (name == "bp") return Identity::BP;
  if (name == "affine-bp") return Identity::AffineBP;
  if (name == "bp-dual") return Identity::BPDual;
  if (name == "affine-dual") return Identity::AffineDual;
  if (name == "multilinear") return Identity::Multilinear;
  if (name == "drury") return Identity::Drury;
  if (name == "riesz") return Identity::Riesz;
  return std::nullopt;
}

namespace {

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

bool reject_fraction_ok(const SideEstimate& s) {
  if (s.exact) return true;
  const double attempts = static_cast<double>(s.samples + s.rejected);
  return attempts == 0.0 ||
         static_cast<double>(s.rejected) <= kMaxRejectFraction * attempts;
}

/// Two-sided agreement: within z_max combined standard errors AND within
/// rel_tol of the reference magnitude. A zero combined stderr (exact vs
/// exact) leaves only the relative criterion.
bool sides_agree(const SideEstimate& a, const SideEstimate& b, double reference, double rel_tol,
                 double z_max, double* z_out = nullptr, double* rel_out = nullptr) {
  const double diff = std::abs(a.mean - b.mean);
  const double combined = std::hypot(a.stderr_, b.stderr_);
  const double z = combined > 0.0 ? diff / combined : 0.0;
  const double rel = diff / std::max(std::abs(reference), 1e-300);
  if (z_out) *z_out = z;
  if (rel_out) *rel_out = rel;
  const bool z_ok = combined > 0.0 ? z <= z_max : true;
  return z_ok && rel <= rel_tol;
}

double reference_value(const VerificationReport& r) {
  if (r.closed_form) return *r.closed_form;
  return 0.5 * (std::abs(r.lhs.mean) + std::abs(r.rhs.mean));
}

/// Fill z/rel_gap from lhs-vs-rhs and fold in all pass conditions.
void finalize(VerificationReport& r) {
  const double ref = reference_value(r);
  bool ok = sides_agree(r.lhs, r.rhs, ref, r.rel_tol, r.z_max, &r.z, &r.rel_gap);
  if (r.closed_form) {
    const SideEstimate cf = SideEstimate::from_exact(*r.closed_form);
    ok = sides_agree(r.lhs, cf, ref, r.rel_tol, r.z_max) && ok;
    ok = sides_agree(r.rhs, cf, ref, r.rel_tol, r.z_max) && ok;
    if (r.lhs_check) ok = sides_agree(*r.lhs_check, cf, ref, r.rel_tol, r.z_max) && ok;
  } else if (r.lhs_check) {
    ok = sides_agree(*r.lhs_check, r.lhs, ref, r.rel_tol, r.z_max) && ok;
  }
  ok = ok && reject_fraction_ok(r.lhs) && reject_fraction_ok(r.rhs);
  if (r.lhs_check) ok = ok && reject_fraction_ok(*r.lhs_check);
  r.pass = ok;
}

double scale_for(const TestFunction& f, const VerifyOptions& opts) {
  return opts.scale ? *opts.scale : f.proposal_scale();
}

/// Default plane-offset proposal scale: matched to the combined Gaussian
/// decay seen by the offset when every factor is Gaussian, 1/sqrt(2)
/// otherwise.
double offset_scale_for(const MultiPointFunction& F, const VerifyOptions& opts) {
  if (opts.offset_scale) return *opts.offset_scale;
  if (F.all_gaussian()) {
    double total_rate = 0.0;
    for (const auto& f : F.factors()) total_rate += f.rate();
    return 1.0 / std::sqrt(2.0 * total_rate);
  }
  return M_SQRT1_2;
}

/// Weighted Monte Carlo estimate of the Lebesgue integral of F over
/// M_{n,m}: column j is drawn from N(center_j, s_j^2 I_n) and weighted by
/// the reciprocal proposal density.
SideEstimate mc_matrix_space_integral(const MultiPointFunction& F, int n,
                                      const VerifyOptions& opts, std::uint64_t stream_base) {
  const int m = F.count();
  std::vector<double> scales;
  scales.reserve(static_cast<std::size_t>(m));
  for (const auto& f : F.factors()) scales.push_back(scale_for(f, opts));

  McRunSpec spec{opts.samples, opts.seed, stream_base, opts.workers};
  McEstimate est = run_weighted_mc(spec, [&](RngStream& rng) -> std::optional<double> {
    Matrix x(n, m);
    double log_w = 0.0;
    for (int j = 0; j < m; ++j) {
      Vector g(n);
      for (int i = 0; i < n; ++i) g(i) = rng.next_normal();
      g *= scales[static_cast<std::size_t>(j)];
      log_w -= gaussian_log_pdf(g, scales[static_cast<std::size_t>(j)]);
      x.col(j) = g + F.factors()[static_cast<std::size_t>(j)].center();
    }
    const double value = F.value(x);
    return value == 0.0 ? 0.0 : value * std::exp(log_w);
  });
  return SideEstimate::from_mc(est);
}

/// Left-hand side of every identity over matrix space: the closed-form
/// product for Gaussian factors, otherwise Monte Carlo.
SideEstimate lhs_matrix_space(const MultiPointFunction& F, int n, const VerifyOptions& opts,
                              bool* exact_out = nullptr) {
  if (F.all_gaussian() && F.volume_power() == 0.0) {
    if (exact_out) *exact_out = true;
    return SideEstimate::from_exact(F.full_integral());
  }
  if (exact_out) *exact_out = false;
  return mc_matrix_space_integral(F, n, opts, kStreamLhs);
}

std::optional<double> closed_form_product(const MultiPointFunction& F) {
  if (F.volume_power() != 0.0) return std::nullopt;
  return F.full_integral();
}

/// Draw q points in the subspace, one per factor, shifted toward each
/// factor's in-span center; returns the point matrix and accumulated log
/// weight.
Matrix points_in_subspace(const Subspace& xi, const MultiPointFunction& F,
                          const std::vector<double>& scales, RngStream& rng, double& log_w) {
  const int n = xi.ambient_dim();
  const int m = F.count();
  Matrix x(n, m);
  for (int j = 0; j < m; ++j) {
    const TestFunction& f = F.factors()[static_cast<std::size_t>(j)];
    const double s = scales[static_cast<std::size_t>(j)];
    if (f.is_centered()) {
      auto ws = sample_point_in_subspace(xi, s, rng);
      log_w += std::log(ws.weight);
      x.col(j) = ws.value;
    } else {
      const Vector mean = xi.basis().matrix().transpose() * f.center();
      auto ws = sample_point_in_subspace(xi, s, rng, &mean);
      log_w += std::log(ws.weight);
      x.col(j) = ws.value;
    }
  }
  return x;
}

/// Same, on an affine plane: points are offset + (point in the direction
/// subspace), centers projected into the plane's coordinates.
Matrix points_on_plane(const AffinePlane& tau, const MultiPointFunction& F,
                       const std::vector<double>& scales, RngStream& rng, double& log_w) {
  const int n = tau.ambient_dim();
  const int m = F.count();
  const Matrix& basis = tau.direction().basis().matrix();
  Matrix x(n, m);
  for (int j = 0; j < m; ++j) {
    const TestFunction& f = F.factors()[static_cast<std::size_t>(j)];
    const double s = scales[static_cast<std::size_t>(j)];
    Vector g(tau.dim());
    for (int i = 0; i < tau.dim(); ++i) g(i) = rng.next_normal();
    g *= s;
    if (!f.is_centered()) {
      const Vector mean = basis.transpose() * f.center();
      g += mean;
      log_w -= gaussian_log_pdf(g, s, &mean);
    } else {
      log_w -= gaussian_log_pdf(g, s);
    }
    x.col(j) = tau.offset() + basis * g;
  }
  return x;
}

std::vector<double> factor_scales(const MultiPointFunction& F, const VerifyOptions& opts) {
  std::vector<double> scales;
  scales.reserve(F.factors().size());
  for (const auto& f : F.factors()) scales.push_back(scale_for(f, opts));
  return scales;
}

/// Precision-weighted mean of the factor centers; the point the product
/// integrand concentrates around, used to recenter offset proposals.
std::optional<Vector> effective_center(const MultiPointFunction& F) {
  if (F.all_centered()) return std::nullopt;
  Vector center = Vector::Zero(F.dim());
  double total = 0.0;
  for (const auto& f : F.factors()) {
    const double w = f.is_gaussian() ? f.rate() : 1.0;
    center += w * f.center();
    total += w;
  }
  center /= total;
  return center;
}

}  // namespace

VerificationReport verify_polar(int n, int k, const MultiPointFunction& F,
                                const VerifyOptions& opts) {
  require(1 <= k && k <= n, "verify_polar: requires 1 <= k <= n");
  require(F.dim() == n, "verify_polar: factor dimension must equal n");
  require(F.count() == k, "verify_polar: needs one factor per column (k)");
  Timer timer;

  VerificationReport r;
  r.identity = Identity::Polar;
  r.n = n;
  r.k = k;
  r.function_spec = F.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  r.lhs = mc_matrix_space_integral(F, n, opts, kStreamLhs);
  r.closed_form = closed_form_product(F);

  // Right side: uniform frame x Wishart-proposal cone point. The Wishart
  // column scales are matched to the factors so the Gaussian case has
  // vanishing variance.
  Vector wishart_scales(k);
  const auto scales = factor_scales(F, opts);
  for (int j = 0; j < k; ++j) wishart_scales(j) = scales[static_cast<std::size_t>(j)];
  const double frame_mass = stiefel_volume(n, k) * opts.constant_scale;
  const double half_power = 0.5 * (n - k - 1);
  const double two_pow = std::pow(2.0, -k);

  McRunSpec spec{opts.samples, opts.seed, kStreamRhs, opts.workers};
  McEstimate rhs = run_weighted_mc(spec, [&](RngStream& rng) -> std::optional<double> {
    try {
      const Frame v = sample_stiefel(n, k, rng);
      const PosDefMatrix rho = sample_wishart(k, n, wishart_scales, rng);
      const Matrix x = v.matrix() * rho.sqrt();
      const double value = F.value(x);
      if (value == 0.0) return 0.0;  // keep 0 * exp(large) away from NaN
      const double log_det = std::log(std::max(rho.det(), 1e-300));
      const double log_w = half_power * log_det - wishart_log_pdf(rho, n, wishart_scales);
      return two_pow * frame_mass * value * std::exp(log_w);
    } catch (const SingularConfiguration&) {
      return std::nullopt;
    }
  });
  r.rhs = SideEstimate::from_mc(rhs);
  r.path = "frame-cone-mc";

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport verify_bp(int n, int k, int q, const MultiPointFunction& F,
                             const VerifyOptions& opts) {
  require(1 <= q && q <= k && k <= n, "verify_bp: requires 1 <= q <= k <= n");
  require(F.dim() == n, "verify_bp: factor dimension must equal n");
  require(F.count() == q, "verify_bp: needs one factor per column (q)");
  Timer timer;

  VerificationReport r;
  r.identity = Identity::BP;
  r.n = n;
  r.k = k;
  r.q = q;
  r.function_spec = F.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  bool lhs_exact = false;
  r.lhs = lhs_matrix_space(F, n, opts, &lhs_exact);
  r.closed_form = closed_form_product(F);

  const double constant = bp_constant(n, k, q) * opts.constant_scale;
  const auto scales = factor_scales(F, opts);
  const double gram_power = static_cast<double>(n - k);

  McRunSpec spec{opts.samples, opts.seed, kStreamRhs, opts.workers};
  McEstimate rhs = run_weighted_mc(spec, [&](RngStream& rng) -> std::optional<double> {
    try {
      const Subspace xi = sample_grassmann(n, k, rng);
      double log_w = 0.0;
      const Matrix x = points_in_subspace(xi, F, scales, rng, log_w);
      double value = F.value(x);
      if (value == 0.0) return 0.0;
      if (gram_power != 0.0) value *= std::pow(gram_volume(x), gram_power);
      return constant * value * std::exp(log_w);
    } catch (const SingularConfiguration&) {
      return std::nullopt;
    }
  });
  r.rhs = SideEstimate::from_mc(rhs);
  r.path = lhs_exact ? "subspace-mc/closed-lhs" : "subspace-mc";

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

namespace {

/// Shared engine for the affine-plane point integrals: estimates
///   E over planes/points of [ F(points) * Delta^simplex_power * weights ]
/// times `constant`. k = n degenerates to the full space as a single
/// "plane" through the origin with unit weight.
SideEstimate affine_point_estimate(int n, int k, const MultiPointFunction& F, double constant,
                                   double simplex_power, const VerifyOptions& opts,
                                   std::uint64_t stream_base, int line_factors = 0,
                                   const TestFunction* line_function = nullptr) {
  const auto scales = factor_scales(F, opts);
  const double offset_scale = offset_scale_for(F, opts);
  const std::optional<Vector> center = effective_center(F);

  McRunSpec spec{opts.samples, opts.seed, stream_base, opts.workers};
  McEstimate est = run_weighted_mc(spec, [&](RngStream& rng) -> std::optional<double> {
    try {
      double log_w = 0.0;
      Matrix x;
      std::optional<AffinePlane> tau;
      if (k == n) {
        Subspace full(Frame(Matrix::Identity(n, n)));
        x = points_in_subspace(full, F, scales, rng, log_w);
      } else {
        auto plane = sample_affine_plane(n, k, offset_scale, rng, center ? &*center : nullptr);
        log_w += std::log(plane.weight);
        x = points_on_plane(plane.value, F, scales, rng, log_w);
        tau = std::move(plane.value);
      }
      double value = F.value(x);
      if (value == 0.0) return 0.0;
      if (simplex_power != 0.0) value *= std::pow(simplex_volume(x), simplex_power);
      if (value != 0.0 && line_factors > 0) {
        // Inner plane-transform factors are evaluated exactly on the
        // plane through the sampled points (no nested estimation).
        const AffinePlane through = plane_through_points(x);
        value *= std::pow(line_function->plane_transform(through), line_factors);
      }
      return constant * value * std::exp(log_w);
    } catch (const SingularConfiguration&) {
      return std::nullopt;
    }
  });
  return SideEstimate::from_mc(est);
}

}  // namespace

VerificationReport verify_affine_bp(int n, int k, int q, const MultiPointFunction& F,
                                    const VerifyOptions& opts) {
  require(1 <= q && q <= k && k <= n, "verify_affine_bp: requires 1 <= q <= k <= n");
  require(F.dim() == n, "verify_affine_bp: factor dimension must equal n");
  require(F.count() == q + 1, "verify_affine_bp: needs one factor per column (q+1)");
  Timer timer;

  VerificationReport r;
  r.identity = Identity::AffineBP;
  r.n = n;
  r.k = k;
  r.q = q;
  r.function_spec = F.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  r.lhs = lhs_matrix_space(F, n, opts);
  r.closed_form = closed_form_product(F);

  const double constant = bp_affine_constant(n, k, q) * opts.constant_scale;
  r.rhs = affine_point_estimate(n, k, F, constant, static_cast<double>(n - k), opts, kStreamRhs);
  r.path = k == n ? "fubini-degenerate" : "plane-mc";

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport verify_bp_dual(int n, int k, int q, const MultiPointFunction& G,
                                  const VerifyOptions& opts) {
  require(1 <= q && q <= k && k <= n, "verify_bp_dual: requires 1 <= q <= k <= n");
  require(G.dim() == n, "verify_bp_dual: factor dimension must equal n");
  require(G.count() == q, "verify_bp_dual: needs one factor per column (q)");
  Timer timer;

  VerificationReport r;
  r.identity = Identity::BPDual;
  r.n = n;
  r.k = k;
  r.q = q;
  r.function_spec = G.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  // Regularized arrangement: with F = G |x|^{n-k}, the dual identity reads
  //   (subspace side of G with the positive-power weight)
  //     = sigma_{k,q}/sigma_{n,q} * (full-space integral of G),
  // so the negative power never enters an estimator.
  const double dual_constant = opts.constant_scale / bp_constant(n, k, q);
  const auto scales = factor_scales(G, opts);
  const double gram_power = static_cast<double>(n - k);

  McRunSpec spec{opts.samples, opts.seed, kStreamLhs, opts.workers};
  McEstimate lhs = run_weighted_mc(spec, [&](RngStream& rng) -> std::optional<double> {
    try {
      const Subspace xi = sample_grassmann(n, k, rng);
      double log_w = 0.0;
      const Matrix x = points_in_subspace(xi, G, scales, rng, log_w);
      double value = G.value(x);
      if (value == 0.0) return 0.0;
      if (gram_power != 0.0) value *= std::pow(gram_volume(x), gram_power);
      return value * std::exp(log_w);
    } catch (const SingularConfiguration&) {
      return std::nullopt;
    }
  });
  r.lhs = SideEstimate::from_mc(lhs);

  if (G.volume_power() == 0.0) {
    r.rhs = SideEstimate::from_exact(dual_constant * G.full_integral());
    r.closed_form = r.rhs.mean;
  } else {
    const SideEstimate full = mc_matrix_space_integral(G, n, opts, kStreamRhs);
    r.rhs = SideEstimate{dual_constant * full.mean, dual_constant * full.stderr_, full.samples,
                         full.rejected, false};
  }
  r.path = "regularized";

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport verify_affine_dual(int n, int k, int q, const MultiPointFunction& G,
                                      const VerifyOptions& opts) {
  require(1 <= q && q <= k && k <= n, "verify_affine_dual: requires 1 <= q <= k <= n");
  require(G.dim() == n, "verify_affine_dual: factor dimension must equal n");
  require(G.count() == q + 1, "verify_affine_dual: needs one factor per column (q+1)");
  Timer timer;

  VerificationReport r;
  r.identity = Identity::AffineDual;
  r.n = n;
  r.k = k;
  r.q = q;
  r.function_spec = G.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  // Same regularization as the linear dual, with the simplex-volume weight.
  r.lhs = affine_point_estimate(n, k, G, 1.0, static_cast<double>(n - k), opts, kStreamLhs);
  const double dual_constant = opts.constant_scale / bp_affine_constant(n, k, q);
  if (G.volume_power() == 0.0) {
    r.rhs = SideEstimate::from_exact(dual_constant * G.full_integral());
    r.closed_form = r.rhs.mean;
  } else {
    const SideEstimate full = mc_matrix_space_integral(G, n, opts, kStreamRhs);
    r.rhs = SideEstimate{dual_constant * full.mean, dual_constant * full.stderr_, full.samples,
                         full.rejected, false};
  }
  r.path = "regularized";

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport verify_multilinear(int n, int k, int q, const MultiPointFunction& f_list,
                                      const VerifyOptions& opts) {
  require(1 <= q && q <= k && k < n, "verify_multilinear: requires 1 <= q <= k < n");
  require(f_list.dim() == n, "verify_multilinear: factor dimension must equal n");
  require(f_list.count() == q + 1, "verify_multilinear: needs q+1 factors");
  require(f_list.volume_power() == 0.0, "verify_multilinear: no volume weight allowed");
  if (!f_list.all_gaussian()) {
    throw UnsupportedConfiguration(
        "verify_multilinear: only Gaussian factors have closed-form plane transforms");
  }
  Timer timer;

  VerificationReport r;
  r.identity = Identity::Multilinear;
  r.n = n;
  r.k = k;
  r.q = q;
  r.function_spec = f_list.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  // Left side: Monte Carlo over weighted affine planes of the product of
  // closed-form plane transforms.
  const double offset_scale = opts.offset_scale ? *opts.offset_scale : M_SQRT1_2;
  const std::optional<Vector> center = effective_center(f_list);
  McRunSpec lhs_spec{opts.samples, opts.seed, kStreamLhs, opts.workers};
  McEstimate lhs = run_weighted_mc(lhs_spec, [&](RngStream& rng) -> std::optional<double> {
    auto plane = sample_affine_plane(n, k, offset_scale, rng, center ? &*center : nullptr);
    double value = plane.weight;
    for (const auto& f : f_list.factors()) {
      value *= f.plane_transform(plane.value);
    }
    return value;
  });
  r.lhs = SideEstimate::from_mc(lhs);

  if (f_list.all_centered()) {
    // Product of transforms at offset distance |z|, integrated over
    // offsets: prod_j (pi/a_j)^{k/2} * (pi / sum_j a_j)^{(n-k)/2}.
    double amp = 1.0;
    double total_rate = 0.0;
    for (const auto& f : f_list.factors()) {
      amp *= std::pow(M_PI / f.rate(), 0.5 * k);
      total_rate += f.rate();
    }
    r.closed_form = amp * std::pow(M_PI / total_rate, 0.5 * (n - k));
  }

  // Right side: the singular-weight point integral.
  const double dual_constant =
      std::exp((k - n) * log_factorial(q) - stiefel_log_volume(n, q) + stiefel_log_volume(k, q)) *
      opts.constant_scale;
  if (q == 1 && 2 * n <= 6 && f_list.all_centered()) {
    quad::PairIntegralSpec pspec;
    pspec.n = n;
    pspec.a0 = f_list.factors()[0].rate();
    pspec.a1 = f_list.factors()[1].rate();
    pspec.power = static_cast<double>(k - n);
    const quad::QuadResult qr = quad::pair_point_integral(pspec, 1e-8);
    r.rhs = SideEstimate::from_exact(dual_constant * qr.value, dual_constant * qr.error_bound);
    r.path = "quadrature";
  } else {
    // Finite-variance restatement through the affine decomposition: the
    // negative simplex power cancels and only in-plane point sampling
    // remains.
    const double constant = dual_constant * bp_affine_constant(n, k, q);
    r.rhs = affine_point_estimate(n, k, f_list, constant, 0.0, opts, kStreamRhs);
    r.path = "bp2-restated";
  }

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

VerificationReport verify_drury(int n, int k, int ell, double a, const VerifyOptions& opts) {
  require(1 <= k && k < n, "verify_drury: requires 1 <= k < n");
  require(ell >= 0, "verify_drury: requires ell >= 0");
  require(a > 0.0, "verify_drury: Gaussian rate must be positive");
  Timer timer;

  const int m = k + ell + 1;
  const TestFunction f = TestFunction::gaussian(n, a);

  VerificationReport r;
  r.identity = Identity::Drury;
  r.n = n;
  r.k = k;
  r.ell = ell;
  r.function_spec = f.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  r.lhs = SideEstimate::from_exact(drury_lhs_closed(n, k, ell, a));
  r.closed_form = r.lhs.mean;

  // Independent Monte Carlo of the same plane integral.
  const double offset_scale = opts.offset_scale ? *opts.offset_scale : M_SQRT1_2;
  McRunSpec check_spec{opts.samples, opts.seed, kStreamLhsCheck, opts.workers};
  McEstimate check = run_weighted_mc(check_spec, [&](RngStream& rng) -> std::optional<double> {
    auto plane = sample_affine_plane(n, k, offset_scale, rng);
    return plane.weight * std::pow(f.plane_transform(plane.value), m);
  });
  r.lhs_check = SideEstimate::from_mc(check);

  const double dual_constant =
      std::exp((k - n) * log_factorial(k) + stiefel_log_volume(k, k) - stiefel_log_volume(n, k)) *
      opts.constant_scale;

  if (k == 1 && 2 * n <= 6) {
    quad::PairIntegralSpec pspec;
    pspec.n = n;
    pspec.a0 = a;
    pspec.a1 = a;
    pspec.power = static_cast<double>(k - n);
    pspec.line_factors = ell;
    pspec.line_rate = a;
    const quad::QuadResult qr = quad::pair_point_integral(pspec, 1e-8);
    r.rhs = SideEstimate::from_exact(dual_constant * qr.value, dual_constant * qr.error_bound);
    r.path = "quadrature";
  } else {
    // Restated through the affine decomposition; the inner transform
    // factors are evaluated exactly on the plane through the sampled
    // points.
    std::vector<TestFunction> copies(static_cast<std::size_t>(k) + 1, f);
    const MultiPointFunction F(std::move(copies));
    const double constant = dual_constant * bp_affine_constant(n, k, k);
    r.rhs = affine_point_estimate(n, k, F, constant, 0.0, opts, kStreamRhs, ell, &f);
    r.path = "bp2-restated";
  }

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

McEstimate riesz_functional(int n, int q, double alpha, const MultiPointFunction& G,
                            const VerifyOptions& opts) {
  require(1 <= q && q <= n, "riesz_functional: requires 1 <= q <= n");
  require(G.dim() == n, "riesz_functional: factor dimension must equal n");
  require(G.count() == q, "riesz_functional: needs one factor per column (q)");
  require(G.volume_power() == 0.0, "riesz_functional: no volume weight allowed");
  if (!(alpha > q - 1)) {
    throw OutOfDomain("riesz_functional: absolutely convergent only for alpha > q-1, got " +
                      std::to_string(alpha));
  }

  if (alpha == static_cast<double>(n)) {
    // Weight |x|^0: the functional is the plain integral, exactly.
    McEstimate exact;
    exact.mean = G.full_integral();
    return exact;
  }

  if (alpha >= static_cast<double>(n)) {
    const double power = alpha - n;
    const auto scales = factor_scales(G, opts);
    McRunSpec spec{opts.samples, opts.seed, kStreamLhs, opts.workers};
    return run_weighted_mc(spec, [&](RngStream& rng) -> std::optional<double> {
      Matrix x(n, q);
      double log_w = 0.0;
      for (int j = 0; j < q; ++j) {
        Vector g(n);
        for (int i = 0; i < n; ++i) g(i) = rng.next_normal();
        g *= scales[static_cast<std::size_t>(j)];
        log_w -= gaussian_log_pdf(g, scales[static_cast<std::size_t>(j)]);
        x.col(j) = g + G.factors()[static_cast<std::size_t>(j)].center();
      }
      double value = G.value(x);
      if (value == 0.0) return 0.0;
      value *= std::pow(gram_volume(x), power);
      return value * std::exp(log_w);
    });
  }

  // alpha < n: a Gaussian-proposal estimator has heavy tails near the
  // rank-deficient set; only the deterministic radial path is offered.
  if (q == 1 && G.factors()[0].is_centered()) {
    const TestFunction& f = G.factors()[0];
    McEstimate est;
    if (f.is_gaussian()) {
      const quad::QuadResult qr = quad::gaussian_radial_moment(n, alpha, f.rate(), 1e-9);
      est.mean = qr.value;
      est.stderr_ = qr.error_bound;
    } else {
      // Ball of radius R: |S^{n-1}| Int_0^R r^{alpha-1} dr, exactly.
      est.mean = quad::unit_sphere_area(n) * std::pow(f.radius(), alpha) / alpha;
    }
    return est;
  }
  throw OutOfDomain(
      "riesz_functional: alpha in (q-1, n) is convergent but heavy-tailed for Monte Carlo; "
      "supported paths are alpha >= n (Monte Carlo) or q = 1 with a centered factor "
      "(radial quadrature)");
}

VerificationReport verify_riesz(int n, int q, double alpha, const MultiPointFunction& G,
                                const VerifyOptions& opts) {
  Timer timer;

  VerificationReport r;
  r.identity = Identity::Riesz;
  r.n = n;
  r.q = q;
  r.alpha = alpha;
  r.function_spec = G.spec_string();
  r.seed = opts.seed;
  r.rel_tol = opts.rel_tol;
  r.z_max = opts.z_max;
  r.constant_scale = opts.constant_scale;

  // Closed form: 2^{-q} sigma_{n,q} Gamma_q(alpha/2) prod_j a_j^{-alpha/2}
  // for centered Gaussian products; ball and alpha = n cases as in
  // riesz_functional.
  if (G.all_gaussian() && G.all_centered() && G.volume_power() == 0.0) {
    double log_rates = 0.0;
    for (const auto& f : G.factors()) log_rates += std::log(f.rate());
    r.closed_form = std::exp(-q * std::log(2.0) + stiefel_log_volume(n, q) +
                             siegel_log_gamma(q, 0.5 * alpha) - 0.5 * alpha * log_rates) *
                    opts.constant_scale;
  } else if (alpha == static_cast<double>(n) && G.volume_power() == 0.0) {
    r.closed_form = G.full_integral() * opts.constant_scale;
  } else if (q == 1 && !G.factors()[0].is_gaussian() && G.factors()[0].is_centered()) {
    r.closed_form = quad::unit_sphere_area(n) * std::pow(G.factors()[0].radius(), alpha) / alpha *
                    opts.constant_scale;
  } else {
    throw UnsupportedConfiguration(
        "verify_riesz: closed form known only for centered Gaussian products, centered balls "
        "with q = 1, or alpha = n");
  }

  const McEstimate est = riesz_functional(n, q, alpha, G, opts);
  r.lhs = est.samples > 0 ? SideEstimate::from_mc(est)
                          : SideEstimate::from_exact(est.mean, est.stderr_);
  r.rhs = SideEstimate::from_exact(*r.closed_form);
  r.path = est.samples > 0 ? "mc" : (alpha == static_cast<double>(n) ? "exact" : "quadrature");

  finalize(r);
  r.runtime_ms = timer.ms();
  return r;
}

}  // namespace bpv
