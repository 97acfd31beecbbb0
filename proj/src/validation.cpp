// Copyright 2026 The Tailrisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tailrisk/validation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace tailrisk {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double adaptive_simpson_rec(const std::function<double(double)>& f, double a, double b,
                            double fa, double fm, double fb, double whole, double tol,
                            int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive_simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

// Integral over (0, b] of a function with an integrable power singularity at
// 0: geometric refinement towards the origin.
double integrate_from_zero(const std::function<double(double)>& f, double b, double tol) {
  double total = 0.0;
  double hi = b;
  for (int j = 0; j < 60; ++j) {
    const double lo = hi * 0.5;
    total += adaptive_simpson(f, lo, hi, tol * 0.1);
    hi = lo;
  }
  return total;
}

struct Cell {
  double lo, hi;  // lo == 0 marks the first cell
};

// integral over (lo, hi] of s^power dnu(s), density part by quadrature and
// atoms exactly.
double power_integral(const SignedMeasure& nu, double power, const Cell& c, double tol) {
  double total = 0.0;
  if (nu.density) {
    auto f = [&](double s) { return nu.density(s) * std::pow(s, power); };
    total += (c.lo == 0.0) ? integrate_from_zero(f, c.hi, tol)
                           : adaptive_simpson(f, c.lo, c.hi, tol);
  }
  for (const auto& [x, w] : nu.atoms)
    if (x > c.lo && x <= c.hi) total += w * std::pow(x, power);
  return total;
}

// Brownian-bridge kernel of a cell: (min(s,t) - lo)(hi - max(s,t)).
double bridge_kernel(double s, double t, const Cell& c) {
  return (std::min(s, t) - c.lo) * (c.hi - std::max(s, t));
}

// integral integral over the cell of (st)^{-(gamma+1)} kernel dnu_a(s) dnu_b(t).
double cell_double_integral(const SignedMeasure& nu_a, const SignedMeasure& nu_b,
                            double gamma, const Cell& c, double tol) {
  const double p = -(gamma + 1.0);
  double total = 0.0;

  if (nu_a.density && nu_b.density) {
    // Split at the diagonal so both iterated integrands are smooth.
    auto inner_below = [&](double t) {
      auto g = [&](double s) {
        return nu_a.density(s) * std::pow(s, p) * (s - c.lo);
      };
      return (c.lo == 0.0) ? integrate_from_zero(g, t, tol)
                           : adaptive_simpson(g, c.lo, t, tol);
    };
    auto outer = [&](double t) {
      return nu_b.density(t) * std::pow(t, p) * (c.hi - t) * inner_below(t);
    };
    const double lower_tri = (c.lo == 0.0) ? integrate_from_zero(outer, c.hi, tol)
                                           : adaptive_simpson(outer, c.lo, c.hi, tol);
    // and the transposed triangle with the roles of the measures swapped
    auto inner_below_b = [&](double t) {
      auto g = [&](double s) {
        return nu_b.density(s) * std::pow(s, p) * (s - c.lo);
      };
      return (c.lo == 0.0) ? integrate_from_zero(g, t, tol)
                           : adaptive_simpson(g, c.lo, t, tol);
    };
    auto outer_b = [&](double t) {
      return nu_a.density(t) * std::pow(t, p) * (c.hi - t) * inner_below_b(t);
    };
    const double upper_tri = (c.lo == 0.0) ? integrate_from_zero(outer_b, c.hi, tol)
                                           : adaptive_simpson(outer_b, c.lo, c.hi, tol);
    total += lower_tri + upper_tri;
  }

  if (nu_b.density) {
    for (const auto& [x, w] : nu_a.atoms) {
      if (!(x > c.lo && x <= c.hi)) continue;
      auto f = [&, x = x](double t) {
        return nu_b.density(t) * std::pow(t, p) * bridge_kernel(x, t, c);
      };
      const double v = (c.lo == 0.0) ? integrate_from_zero(f, c.hi, tol)
                                     : adaptive_simpson(f, c.lo, c.hi, tol);
      total += w * std::pow(x, p) * v;
    }
  }
  if (nu_a.density) {
    for (const auto& [x, w] : nu_b.atoms) {
      if (!(x > c.lo && x <= c.hi)) continue;
      auto f = [&, x = x](double t) {
        return nu_a.density(t) * std::pow(t, p) * bridge_kernel(x, t, c);
      };
      const double v = (c.lo == 0.0) ? integrate_from_zero(f, c.hi, tol)
                                     : adaptive_simpson(f, c.lo, c.hi, tol);
      total += w * std::pow(x, p) * v;
    }
  }
  for (const auto& [xa, wa] : nu_a.atoms) {
    if (!(xa > c.lo && xa <= c.hi)) continue;
    for (const auto& [xb, wb] : nu_b.atoms) {
      if (!(xb > c.lo && xb <= c.hi)) continue;
      total += wa * wb * std::pow(xa * xb, p) * bridge_kernel(xa, xb, c);
    }
  }
  return total;
}

}  // namespace

SignedMeasure SignedMeasure::hill_tail(double gamma) {
  SignedMeasure nu;
  nu.kind = Kind::HillTail;
  nu.hill_gamma = gamma;
  nu.density = [gamma](double s) { return gamma * std::pow(s, gamma); };
  nu.atoms = {{1.0, -gamma}};
  return nu;
}

SignedMeasure SignedMeasure::hill_scale(double gamma) {
  SignedMeasure nu;
  nu.kind = Kind::HillScale;
  nu.hill_gamma = gamma;
  nu.density = [gamma](double s) { return std::pow(s, gamma); };
  nu.atoms = {{1.0, gamma - 1.0}};
  return nu;
}

SignedMeasure SignedMeasure::general(std::function<double(double)> density,
                                     std::vector<std::pair<double, double>> atoms) {
  SignedMeasure nu;
  nu.kind = Kind::General;
  nu.density = std::move(density);
  nu.atoms = std::move(atoms);
  for (const auto& [x, w] : nu.atoms) {
    (void)w;
    if (!(x > 0.0 && x <= 1.0))
      throw ConfigError("SignedMeasure: atom locations must lie in (0,1]");
  }
  return nu;
}

WeightFunction WeightFunction::plain_power(double eps) {
  if (!(eps > 0.0)) throw ConfigError("WeightFunction: eps must be > 0");
  WeightFunction h;
  h.form = Form::PlainPower;
  h.eps = eps;
  return h;
}

WeightFunction WeightFunction::sigma_normalized(double a) {
  WeightFunction h;
  h.form = Form::SigmaNormalized;
  h.sigma_exponent = a;
  return h;
}

WeightFunction WeightFunction::custom(std::function<double(double)> fn) {
  WeightFunction h;
  h.form = Form::Custom;
  h.fn = std::move(fn);
  return h;
}

double WeightFunction::operator()(double t) const {
  switch (form) {
    case Form::PlainPower:
      return std::pow(t, 0.5 + eps);
    case Form::SigmaNormalized: {
      const double lt = std::log(t);
      const double s2 = 1.0 / t - 1.0 - lt * lt;
      if (!(s2 > 0.0)) return kInf;  // t = 1 (or rounding right next to it)
      return std::pow(t * (1.0 - t), sigma_exponent) / std::sqrt(s2);
    }
    case Form::Custom:
      return fn(t);
  }
  return kInf;
}

HillMoments hill_integral_moments(std::size_t m) {
  if (m < 1) throw DomainError("hill_integral_moments: m must be >= 1");
  HillMoments hm;
  hm.mean_coeffs.resize(m);
  const double md = static_cast<double>(m);
  hm.mean_coeffs[0] = 1.0 + std::log(md);
  for (std::size_t i = 2; i <= m; ++i) {
    const double id = static_cast<double>(i);
    hm.mean_coeffs[i - 1] =
        std::log(md / id) + 1.0 - (id - 1.0) * std::log(id / (id - 1.0));
  }
  double acc = 0.0;
  for (std::size_t i = 1; i + 1 <= m; ++i) {
    const double id = static_cast<double>(i);
    const double l = std::log((id + 1.0) / id);
    acc += id * (id + 1.0) * l * l;
  }
  hm.variance = 1.0 - acc / md;
  return hm;
}

IntegralMoments integral_moments(const SignedMeasure& nu, double gamma, std::size_t m) {
  IntegralMoments im;
  im.delta_coeffs.assign(m, 0.0);

  if (nu.kind == SignedMeasure::Kind::HillTail || nu.kind == SignedMeasure::Kind::HillScale) {
    const HillMoments hm = hill_integral_moments(m);
    const double g = nu.hill_gamma;
    if (nu.kind == SignedMeasure::Kind::HillTail) {
      // I = g * (Ihat - W(1))
      for (std::size_t i = 0; i < m; ++i)
        im.delta_coeffs[i] = g * (hm.mean_coeffs[i] - 1.0);
      im.cond_var = g * g * hm.variance;
    } else {
      // I = Ihat + (g - 1) W(1)
      for (std::size_t i = 0; i < m; ++i)
        im.delta_coeffs[i] = hm.mean_coeffs[i] + (g - 1.0);
      im.cond_var = hm.variance;
    }
    return im;
  }

  const double md = static_cast<double>(m);
  const double tol = 1e-10;
  std::vector<double> a(m), b(m, 0.0);
  for (std::size_t i = 1; i <= m; ++i) {
    Cell c{(static_cast<double>(i) - 1.0) / md, static_cast<double>(i) / md};
    a[i - 1] = power_integral(nu, -gamma, c, tol);
    if (i >= 2) b[i - 1] = power_integral(nu, -(gamma + 1.0), c, tol);
    if (!std::isfinite(a[i - 1]) || !std::isfinite(b[i - 1]))
      throw ConfigError("integral_moments: measure not integrable for this gamma");
  }
  double b_suffix = 0.0;
  for (std::size_t j = m; j >= 1; --j) {
    im.delta_coeffs[j - 1] =
        md * a[j - 1] - (static_cast<double>(j) - 1.0) * b[j - 1] + b_suffix;
    b_suffix += b[j - 1];
  }
  double var = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    Cell c{(static_cast<double>(i) - 1.0) / md, static_cast<double>(i) / md};
    var += md * cell_double_integral(nu, nu, gamma, c, tol);
  }
  if (!std::isfinite(var) || var < -1e-9)
    throw ConfigError("integral_moments: conditional variance not computable");
  im.cond_var = std::max(var, 0.0);
  return im;
}

double integral_cond_cov(const SignedMeasure& nu_a, const SignedMeasure& nu_b,
                         double gamma, std::size_t m) {
  const bool a_hill = nu_a.kind != SignedMeasure::Kind::General;
  const bool b_hill = nu_b.kind != SignedMeasure::Kind::General;
  if (a_hill && b_hill) {
    // Both bridge parts are multiples of the same integral Ihat.
    const HillMoments hm = hill_integral_moments(m);
    const double fa = (nu_a.kind == SignedMeasure::Kind::HillTail) ? nu_a.hill_gamma : 1.0;
    const double fb = (nu_b.kind == SignedMeasure::Kind::HillTail) ? nu_b.hill_gamma : 1.0;
    return fa * fb * hm.variance;
  }
  const double md = static_cast<double>(m);
  double cov = 0.0;
  for (std::size_t i = 1; i <= m; ++i) {
    Cell c{(static_cast<double>(i) - 1.0) / md, static_cast<double>(i) / md};
    cov += md * cell_double_integral(nu_a, nu_b, gamma, c, 1e-10);
  }
  return cov;
}

double integral_total_var(const SignedMeasure& nu, double gamma) {
  const double p = -(gamma + 1.0);
  const double tol = 1e-10;
  double total = 0.0;
  if (nu.density) {
    auto inner = [&](double t) {
      auto g = [&](double s) { return nu.density(s) * std::pow(s, -gamma); };
      return integrate_from_zero(g, t, tol);
    };
    auto outer = [&](double t) { return nu.density(t) * std::pow(t, p) * inner(t); };
    total += 2.0 * integrate_from_zero(outer, 1.0, tol);
    for (const auto& [x, w] : nu.atoms) {
      auto f = [&, x = x](double t) {
        return nu.density(t) * std::pow(t, p) * std::pow(x, p) * std::min(x, t);
      };
      total += 2.0 * w * integrate_from_zero(f, 1.0, tol);
    }
  }
  for (const auto& [xa, wa] : nu.atoms)
    for (const auto& [xb, wb] : nu.atoms)
      total += wa * wb * std::pow(xa * xb, p) * std::min(xa, xb);
  if (!std::isfinite(total))
    throw ConfigError("integral_total_var: measure not integrable for this gamma");
  return total;
}

std::vector<double> hill_process_path(const HillMoments& moments, std::size_t m, Rng& rng) {
  const double md = static_cast<double>(m);
  const double sd_delta = std::sqrt(1.0 / md);
  double w = 0.0, mean_i = 0.0;
  std::vector<double> wpath(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double d = sd_delta * rng.next_normal();
    w += d;
    wpath[i] = w;
    mean_i += moments.mean_coeffs[i] * d;
  }
  const double ihat = mean_i + std::sqrt(moments.variance) * rng.next_normal();
  const double wm = wpath[m - 1];
  std::vector<double> z(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const double t = static_cast<double>(i) / md;
    z[i - 1] = wpath[i - 1] / t - wm + (ihat - wm) * std::log(t);
  }
  return z;
}

namespace {

struct GridPrecomp {
  std::vector<double> h;        // weight at t_i, +inf entries excluded from sup
  std::vector<double> inv_t;
  std::vector<double> log_t;
};

GridPrecomp precompute_grid(const WeightFunction& h, std::size_t m) {
  GridPrecomp g;
  g.h.resize(m);
  g.inv_t.resize(m);
  g.log_t.resize(m);
  const double md = static_cast<double>(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const double t = static_cast<double>(i) / md;
    const double hv = h(t);
    if (i < m && !(hv > 0.0 && std::isfinite(hv)))
      throw ConfigError("weight function must be positive and finite on the grid interior");
    g.h[i - 1] = hv;
    g.inv_t[i - 1] = 1.0 / t;
    g.log_t[i - 1] = std::log(t);
  }
  return g;
}

}  // namespace

std::vector<double> simulate_sup_distribution(double gamma, const SignedMeasure& nu,
                                              const WeightFunction& h, std::size_t m,
                                              std::size_t n_sims, std::uint64_t seed) {
  if (m < 10) throw ConfigError("simulate_sup_distribution: require m >= 10");
  if (n_sims < 1000) throw ConfigError("simulate_sup_distribution: require n_sims >= 1000");
  const IntegralMoments im = integral_moments(nu, gamma, m);
  const GridPrecomp grid = precompute_grid(h, m);
  const double md = static_cast<double>(m);
  const double sd_delta = std::sqrt(1.0 / md);
  const double sd_cond = std::sqrt(im.cond_var);

  std::vector<double> sups(n_sims);
  std::vector<double> wpath(m);
  for (std::size_t rep = 0; rep < n_sims; ++rep) {
    Rng rng = Rng::derive(seed, rep);
    double w = 0.0, mean_i = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = sd_delta * rng.next_normal();
      w += d;
      wpath[i] = w;
      mean_i += im.delta_coeffs[i] * d;
    }
    const double integral = mean_i + sd_cond * rng.next_normal();
    const double wm = wpath[m - 1];
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {  // Z(t_m) = 0 identically
      const double z = gamma * (wpath[i] * grid.inv_t[i] - wm) + integral * grid.log_t[i];
      const double v = grid.h[i] * std::abs(z);
      if (v > sup) sup = v;
    }
    sups[rep] = sup;
  }
  std::sort(sups.begin(), sups.end());
  return sups;
}

double critical_value(const std::vector<double>& sorted_sups, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw DomainError("critical_value: alpha must lie in (0,1)");
  if (sorted_sups.empty()) throw DomainError("critical_value: empty distribution");
  const auto n = sorted_sups.size();
  const auto idx = static_cast<std::size_t>(
      std::floor((1.0 - alpha) * static_cast<double>(n))) + 1;
  return sorted_sups[std::min(idx, n) - 1];
}

BandResult qq_band(const Sample& sample, std::size_t k, const WeightFunction& h,
                   double alpha, std::size_t m, std::size_t n_sims, std::uint64_t seed) {
  // The limit process scaled by the Hill estimate is free of gamma; it equals
  // the general process at gamma = 1 with the matching Hill measure.
  const auto sups =
      simulate_sup_distribution(1.0, SignedMeasure::hill_tail(1.0), h, m, n_sims, seed);
  return qq_band_with_critical(sample, k, h, alpha, critical_value(sups, alpha));
}

BandResult qq_band_with_critical(const Sample& sample, std::size_t k,
                                 const WeightFunction& h, double alpha, double c_alpha) {
  const TailView view = tail_view(sample, k);
  const double gamma_hat = hill(view);
  if (!(gamma_hat > 0.0))
    throw DomainError("qq_band: Hill estimate must be positive");

  BandResult band;
  band.slope = gamma_hat;
  band.c_alpha = c_alpha;
  band.alpha = alpha;
  band.k = k;
  band.threshold = view.threshold();
  band.all_inside = true;
  const double kd = static_cast<double>(k);
  const double sqrt_k = std::sqrt(kd);
  const double log_u = std::log(view.threshold());
  for (std::size_t i = 1; i <= k; ++i) {
    const double t = (static_cast<double>(i) - 0.5) / (kd + 0.5);
    const double hv = h(t);
    if (!(hv > 0.0 && std::isfinite(hv)))
      throw ConfigError("qq_band: weight not usable at a plotting position");
    const double x = -std::log(t);
    const double y = std::log(view.order_stats[i - 1]) - log_u;
    const double center = gamma_hat * x;
    const double half = gamma_hat * c_alpha / (sqrt_k * hv);
    band.t.push_back(t);
    band.x.push_back(x);
    band.y.push_back(y);
    band.center.push_back(center);
    band.lower.push_back(center - half);
    band.upper.push_back(center + half);
    if (y < center - half || y > center + half) band.all_inside = false;
  }
  return band;
}

double gpd_band_shape_coeff(double gamma, double t) {
  const double l = std::log(t);
  if (std::abs(gamma) < 1e-5) return 0.5 * l * l - gamma * l * l * l / 3.0;
  return (1.0 - std::pow(t, -gamma) * (1.0 + gamma * l)) / (gamma * gamma);
}

double gpd_band_scale_coeff(double gamma, double t) {
  const double l = std::log(t);
  if (gamma == 0.0) return -l;
  return std::expm1(-gamma * l) / gamma;
}

BandResult gpd_band(const Sample& sample, const GpdFit& fit, const SignedMeasure& nu_T,
                    const SignedMeasure& nu_S, double alpha, std::size_t m,
                    std::size_t n_sims, std::uint64_t seed) {
  if (m < 10) throw ConfigError("gpd_band: require m >= 10");
  if (n_sims < 1000) throw ConfigError("gpd_band: require n_sims >= 1000");
  const double gamma = fit.gamma_hat;
  const std::size_t k = fit.k;
  const WeightFunction h =
      WeightFunction::custom([gamma](double t) { return std::pow(t, gamma + 0.6); });

  const IntegralMoments im_t = integral_moments(nu_T, gamma, m);
  const IntegralMoments im_s = integral_moments(nu_S, gamma, m);
  const double cov_ts = integral_cond_cov(nu_T, nu_S, gamma, m);
  const double sd_t = std::sqrt(im_t.cond_var);
  // Conditional draw of (I_T, I_S): Cholesky factor of the 2x2 residual
  // covariance; the bridge residuals are perfectly correlated for the Hill
  // pair and the second factor degenerates to 0.
  double chol_st = 0.0, chol_ss = 0.0;
  if (sd_t > 0.0) {
    chol_st = cov_ts / sd_t;
    chol_ss = std::sqrt(std::max(im_s.cond_var - chol_st * chol_st, 0.0));
  } else {
    chol_ss = std::sqrt(std::max(im_s.cond_var, 0.0));
  }

  const double md = static_cast<double>(m);
  std::vector<double> tpow(m), ct(m), cs(m), hval(m);
  for (std::size_t i = 1; i <= m; ++i) {
    const double t = static_cast<double>(i) / md;
    tpow[i - 1] = std::pow(t, -(gamma + 1.0));
    ct[i - 1] = gpd_band_shape_coeff(gamma, t);
    cs[i - 1] = gpd_band_scale_coeff(gamma, t);
    hval[i - 1] = h(t);
  }

  const double sd_delta = std::sqrt(1.0 / md);
  std::vector<double> sups(n_sims);
  std::vector<double> wpath(m);
  for (std::size_t rep = 0; rep < n_sims; ++rep) {
    Rng rng = Rng::derive(seed, rep);
    double w = 0.0, mt = 0.0, ms = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      const double d = sd_delta * rng.next_normal();
      w += d;
      wpath[i] = w;
      mt += im_t.delta_coeffs[i] * d;
      ms += im_s.delta_coeffs[i] * d;
    }
    const double xi1 = rng.next_normal();
    const double xi2 = rng.next_normal();
    const double i_t = mt + sd_t * xi1;
    const double i_s = ms + chol_st * xi1 + chol_ss * xi2;
    const double wm = wpath[m - 1];
    double sup = 0.0;
    for (std::size_t i = 0; i + 1 < m; ++i) {  // V(t_m) = 0 identically
      const double v = wpath[i] * tpow[i] - wm - i_t * ct[i] - i_s * cs[i];
      const double val = hval[i] * std::abs(v);
      if (val > sup) sup = val;
    }
    sups[rep] = sup;
  }
  std::sort(sups.begin(), sups.end());
  const double c_alpha = critical_value(sups, alpha);

  const TailView view = tail_view(sample, k);
  BandResult band;
  band.slope = gamma;
  band.c_alpha = c_alpha;
  band.alpha = alpha;
  band.k = k;
  band.threshold = fit.threshold;
  band.all_inside = true;
  const double kd = static_cast<double>(k);
  const double sqrt_k = std::sqrt(kd);
  for (std::size_t i = 1; i <= k; ++i) {
    const double t = (static_cast<double>(i) - 0.5) / (kd + 0.5);
    const double y = view.order_stats[i - 1];
    const double center = fit.threshold + fit.sigma_hat * gpd_band_scale_coeff(gamma, t);
    const double half = fit.sigma_hat * c_alpha / (sqrt_k * h(t));
    band.t.push_back(t);
    band.x.push_back(t);
    band.y.push_back(y);
    band.center.push_back(center);
    band.lower.push_back(center - half);
    band.upper.push_back(center + half);
    if (y < center - half || y > center + half) band.all_inside = false;
  }
  return band;
}

}  // namespace tailrisk
