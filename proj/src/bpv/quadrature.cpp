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

#include "bpv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace bpv::quad {

namespace {

// Gauss-Legendre nodes/weights on [-1, 1], computed once by Newton
// iteration on the Legendre recurrence.
struct GlRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GlRule make_gl_rule(int m) {
  GlRule rule;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (m + 0.5));
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= m; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1.0, p1 = x;
    for (int j = 2; j <= m; ++j) {
      const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    const double dp = m * (x * p1 - p0) / (x * x - 1.0);
    rule.nodes[m - 1 - i] = x;
    rule.weights[m - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

const GlRule& gl8() {
  static const GlRule rule = make_gl_rule(8);
  return rule;
}

const GlRule& gl16() {
  static const GlRule rule = make_gl_rule(16);
  return rule;
}

double apply_rule(const GlRule& rule, const std::function<double(double)>& f, double a, double b) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

struct Interval {
  double a, b, value, error;
};

}  // namespace

QuadResult integrate_1d(const std::function<double(double)>& f, double a, double b,
                        double rel_tol, int max_intervals) {
  require(b > a, "integrate_1d: empty interval");
  auto estimate = [&](double lo, double hi) {
    Interval iv;
    iv.a = lo;
    iv.b = hi;
    iv.value = apply_rule(gl16(), f, lo, hi);
    iv.error = std::abs(iv.value - apply_rule(gl8(), f, lo, hi));
    return iv;
  };

  auto worse = [](const Interval& x, const Interval& y) { return x.error < y.error; };
  std::priority_queue<Interval, std::vector<Interval>, decltype(worse)> queue(worse);
  queue.push(estimate(a, b));
  double total = queue.top().value;
  double total_err = queue.top().error;
  int count = 1;

  while (count < max_intervals) {
    if (total_err <= rel_tol * std::max(std::abs(total), 1e-300)) break;
    Interval top = queue.top();
    queue.pop();
    const double mid = 0.5 * (top.a + top.b);
    if (mid <= top.a || mid >= top.b) {  // interval at rounding resolution
      queue.push(top);
      break;
    }
    const Interval left = estimate(top.a, mid);
    const Interval right = estimate(mid, top.b);
    total += left.value + right.value - top.value;
    total_err += left.error + right.error - top.error;
    queue.push(left);
    queue.push(right);
    ++count;
  }
  return {total, std::max(total_err, 0.0) + 1e-15 * std::abs(total)};
}

QuadResult integrate_box3(const std::function<double(double, double, double)>& f,
                          double ax, double bx, double ay, double by, double az, double bz,
                          double rel_tol, int initial_panels, int max_panels) {
  require(bx > ax && by > ay && bz > az, "integrate_box3: empty box");
  const GlRule& rule = gl16();
  const int m = static_cast<int>(rule.nodes.size());

  auto tensor = [&](int panels) {
    // Precompute per-axis nodes/weights for the composite rule.
    auto axis = [&](double lo, double hi, std::vector<double>& xs, std::vector<double>& ws) {
      const double h = (hi - lo) / panels;
      xs.resize(static_cast<std::size_t>(panels) * m);
      ws.resize(xs.size());
      for (int p = 0; p < panels; ++p) {
        const double pa = lo + p * h;
        const double half = 0.5 * h;
        const double mid = pa + half;
        for (int i = 0; i < m; ++i) {
          xs[static_cast<std::size_t>(p) * m + i] = mid + half * rule.nodes[i];
          ws[static_cast<std::size_t>(p) * m + i] = half * rule.weights[i];
        }
      }
    };
    std::vector<double> xs, wxs, ys, wys, zs, wzs;
    axis(ax, bx, xs, wxs);
    axis(ay, by, ys, wys);
    axis(az, bz, zs, wzs);
    double sum = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      double sum_i = 0.0;
      for (std::size_t j = 0; j < ys.size(); ++j) {
        double sum_j = 0.0;
        for (std::size_t k = 0; k < zs.size(); ++k) {
          sum_j += wzs[k] * f(xs[i], ys[j], zs[k]);
        }
        sum_i += wys[j] * sum_j;
      }
      sum += wxs[i] * sum_i;
    }
    return sum;
  };

  double coarse = tensor(initial_panels);
  for (int panels = initial_panels * 2; panels <= max_panels; panels *= 2) {
    const double fine = tensor(panels);
    const double diff = std::abs(fine - coarse);
    if (diff <= rel_tol * std::max(std::abs(fine), 1e-300) || panels == max_panels) {
      return {fine, diff + 1e-15 * std::abs(fine)};
    }
    coarse = fine;
  }
  return {coarse, std::abs(coarse) * rel_tol};
}

QuadResult siegel_cone_integral(int k, double alpha, double rel_tol) {
  require(k == 1 || k == 2, "siegel_cone_integral: only k in {1,2} is supported");
  if (alpha <= 0.5 * (k - 1)) {
    throw OutOfDomain("siegel_cone_integral: requires alpha > (k-1)/2");
  }
  const double cut = 12.0;  // exp(-144) tail, far below any requested tolerance

  if (k == 1) {
    // Gamma(alpha) = 2 Int_0^inf exp(-l^2) l^{2 alpha - 1} dl.
    auto f = [alpha](double l) { return 2.0 * std::exp(-l * l) * std::pow(l, 2.0 * alpha - 1.0); };
    return integrate_1d(f, 0.0, cut, rel_tol);
  }

  // k = 2: rho = L L^T with L = [[x, 0], [y, z]], x, z > 0.
  //   tr(rho) = x^2 + y^2 + z^2, det(rho) = (x z)^2,
  //   d(rho) = 4 x^2 z dL,
  // so the integrand is 4 x^{2 alpha - 1} z^{2 alpha - 2} exp(-x^2-y^2-z^2).
  const double px = 2.0 * alpha - 1.0;
  const double pz = 2.0 * alpha - 2.0;
  auto f = [px, pz](double x, double y, double z) {
    return 4.0 * std::pow(x, px) * std::pow(z, pz) * std::exp(-(x * x + y * y + z * z));
  };
  return integrate_box3(f, 0.0, cut, -cut, cut, 0.0, cut, rel_tol, 4, 16);
}

double unit_sphere_area(int d) {
  require(d >= 1, "unit_sphere_area: dimension must be positive");
  return 2.0 * std::exp(0.5 * d * std::log(M_PI) - std::lgamma(0.5 * d));
}

QuadResult pair_point_integral(const PairIntegralSpec& spec, double rel_tol) {
  require(spec.n >= 2, "pair_point_integral: ambient dimension must be >= 2");
  require(2 * spec.n <= 6, "pair_point_integral: total dimension 2n exceeds 6");
  require(spec.a0 > 0 && spec.a1 > 0, "pair_point_integral: Gaussian rates must be positive");
  require(spec.line_factors >= 0, "pair_point_integral: negative factor count");
  if (spec.line_factors > 0) {
    require(spec.line_rate > 0, "pair_point_integral: line factor rate must be positive");
  }
  if (spec.power <= -static_cast<double>(spec.n)) {
    throw UnsupportedConfiguration(
        "pair_point_integral: |x1-x0|^p is not integrable for p <= -n");
  }

  const int n = spec.n;
  const double r_exp = n - 1 + spec.power;
  const double s_exp = n - 2;
  const double line_amp =
      spec.line_factors > 0
          ? std::pow(std::sqrt(M_PI / spec.line_rate), spec.line_factors)
          : 1.0;
  const double line_rate_total = spec.line_factors * spec.line_rate;

  // Truncation radii: the slowest Gaussian decays are min(a0,a1) in t,
  // a0 a1/(a0+a1) in r, and a0+a1 in s. A 12-sigma-like box keeps the
  // discarded tail below 1e-10 of the value.
  const double rt = 12.0 / std::sqrt(std::min(spec.a0, spec.a1));
  const double rr = 12.0 / std::sqrt(spec.a0 * spec.a1 / (spec.a0 + spec.a1));
  const double rs = 12.0 / std::sqrt(spec.a0 + spec.a1);

  auto f = [&](double r, double t, double s) {
    const double q0 = t * t + s * s;
    const double tr = t + r;
    const double q1 = tr * tr + s * s;
    double v = std::exp(-spec.a0 * q0 - spec.a1 * q1 - line_rate_total * s * s);
    if (r_exp != 0.0) v *= std::pow(r, r_exp);
    if (s_exp != 0.0) v *= std::pow(s, s_exp);
    return v;
  };

  QuadResult inner = integrate_box3(f, 0.0, rr, -rt, rt, 0.0, rs, rel_tol, 4, 32);
  const double outer = unit_sphere_area(n) * unit_sphere_area(n - 1) * line_amp;
  return {outer * inner.value, outer * inner.error_bound};
}

QuadResult gaussian_radial_moment(int n, double alpha, double rate, double rel_tol) {
  require(n >= 1, "gaussian_radial_moment: dimension must be positive");
  require(rate > 0, "gaussian_radial_moment: rate must be positive");
  if (alpha <= 0) {
    throw OutOfDomain("gaussian_radial_moment: requires alpha > 0");
  }
  const double cut = 12.0 / std::sqrt(rate);
  QuadResult radial;
  if (alpha >= 1.0) {
    auto f = [alpha, rate](double r) {
      return std::exp(-rate * r * r) * std::pow(r, alpha - 1.0);
    };
    radial = integrate_1d(f, 0.0, cut, rel_tol);
  } else {
    // r = u^{1/alpha} turns r^{alpha-1} dr into du/alpha, removing the
    // endpoint singularity.
    auto f = [alpha, rate](double u) {
      const double r = std::pow(u, 1.0 / alpha);
      return std::exp(-rate * r * r) / alpha;
    };
    radial = integrate_1d(f, 0.0, std::pow(cut, alpha), rel_tol);
  }
  const double area = unit_sphere_area(n);
  return {area * radial.value, area * radial.error_bound};
}

}  // namespace bpv::quad
