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

#ifndef TAILRISK_VALIDATION_HPP_
#define TAILRISK_VALIDATION_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "tailrisk/rng.hpp"
#include "tailrisk/sample.hpp"
#include "tailrisk/tail_estimators.hpp"

namespace tailrisk {

// Signed measure nu on (0,1] with a density part and finitely many atoms.
// These measures encode the linearization of a tail functional: the
// fluctuation of the estimator is integral s^{-(gamma+1)} W(s) nu(ds) for a
// Brownian motion W. The Hill functional has nu = gamma (s^gamma ds - eps_1),
// its scale companion S(z) = T(z) z(1) has nu = s^gamma ds + (gamma-1) eps_1
// (eps_1 the unit mass at 1). Those two carry closed-form grid moments; any
// other measure goes through numerical quadrature.
struct SignedMeasure {
  enum class Kind { General, HillTail, HillScale };
  Kind kind = Kind::General;
  double hill_gamma = 0.0;
  std::function<double(double)> density;              // may be empty
  std::vector<std::pair<double, double>> atoms;       // (location in (0,1], weight)

  static SignedMeasure hill_tail(double gamma);
  static SignedMeasure hill_scale(double gamma);
  static SignedMeasure general(std::function<double(double)> density,
                               std::vector<std::pair<double, double>> atoms);
};

// Weight function h shaping where the qq-band is narrow. PlainPower is
// h(t) = t^(1/2+eps), the minimal choice keeping the weighted supremum of the
// limit process finite; SigmaNormalized is h(t) = (t(1-t))^a / sigma(t) with
// sigma^2(t) = t^{-1} - 1 - log^2 t, the variance function of the Hill limit
// process, which keeps the band tight near t = 1 as well.
struct WeightFunction {
  enum class Form { PlainPower, SigmaNormalized, Custom };
  Form form = Form::SigmaNormalized;
  double eps = 0.1;
  double sigma_exponent = 0.1;
  std::function<double(double)> fn;

  static WeightFunction plain_power(double eps);
  static WeightFunction sigma_normalized(double a);
  static WeightFunction custom(std::function<double(double)> fn);

  // Evaluate h(t) for t in (0,1); may return +inf at t = 1 for the
  // SigmaNormalized form.
  double operator()(double t) const;
};

// Closed-form grid moments for the Hill measure on the equidistant grid
// t_i = i/m: conditionally on the Brownian increments Delta_i, the integral
// I = integral_0^1 s^{-1} W(s) ds is normal with mean sum_i c_i Delta_i and
// the returned variance, where
//   c_1 = 1 + log m,
//   c_i = log(m/i) + 1 - (i-1) log(i/(i-1)),     2 <= i <= m,
//   variance = 1 - (1/m) sum_{i=1}^{m-1} i (i+1) log^2((i+1)/i).
struct HillMoments {
  std::vector<double> mean_coeffs;
  double variance;
};
HillMoments hill_integral_moments(std::size_t m);

// Grid reduction of I = integral s^{-(gamma+1)} W(s) nu(ds): coefficients of
// the increments in the conditional mean, plus the conditional variance.
struct IntegralMoments {
  std::vector<double> delta_coeffs;
  double cond_var = 0.0;
};
IntegralMoments integral_moments(const SignedMeasure& nu, double gamma, std::size_t m);

// Conditional covariance between two integrals driven by the same Brownian
// path (needed to draw the shape and scale fluctuations jointly).
double integral_cond_cov(const SignedMeasure& nu_a, const SignedMeasure& nu_b,
                         double gamma, std::size_t m);

// Unconditional variance integral integral integral (st)^{-(gamma+1)}
// min(s,t) nu(ds) nu(dt) of I, evaluated by quadrature; equals gamma^2 for
// the Hill measure.
double integral_total_var(const SignedMeasure& nu, double gamma);

// One replicate of the scale-free Hill limit process
//   Z0(t_i) = t_i^{-1} W(t_i) - W(1) + (I - W(1)) log t_i
// on the grid t_i = i/m (Z0(1) = 0 identically). Exposed for diagnostics and
// tests.
std::vector<double> hill_process_path(const HillMoments& moments, std::size_t m, Rng& rng);

// Distribution of sup_i h(t_i) |Z(t_i)| for the limit process
//   Z(t_i) = gamma (t_i^{-1} W(t_i) - W(t_m)) + I log t_i,
// I being the nu-integral above, over n_sims independent replicates; returns
// the sups sorted ascending. Replicate r draws from the stream derived from
// (seed, r), so the distribution does not depend on evaluation order.
std::vector<double> simulate_sup_distribution(double gamma, const SignedMeasure& nu,
                                              const WeightFunction& h, std::size_t m,
                                              std::size_t n_sims, std::uint64_t seed);

// Empirical (1-alpha) critical value: the (floor((1-alpha) N) + 1)-th order
// statistic of the simulated sups (capped at the maximum), which never
// understates the target quantile.
double critical_value(const std::vector<double>& sorted_sups, double alpha);

// Pareto qq-plot with simultaneous Monte-Carlo band. x = -log t against
// y = log(X_{n-i+1:n}/X_{n-k:n}) at plotting positions t = (i-1/2)/(k+1/2)
// should follow the line with slope gamma_hat through the origin; the test
// rejects GPD adequacy at level alpha iff some point leaves the band
//   center +- gamma_hat c_alpha / (sqrt(k) h(t)).
struct BandResult {
  std::vector<double> t;       // plotting positions
  std::vector<double> x;       // abscissa (-log t for the qq band, t for the GPD band)
  std::vector<double> y;       // ordinate (log spacings, or raw order statistics)
  std::vector<double> center;
  std::vector<double> lower;
  std::vector<double> upper;
  double slope = 0.0;          // gamma_hat
  double c_alpha = 0.0;
  double alpha = 0.0;
  std::size_t k = 0;
  double threshold = 0.0;
  bool all_inside = false;
};

BandResult qq_band(const Sample& sample, std::size_t k, const WeightFunction& h,
                   double alpha, std::size_t m, std::size_t n_sims, std::uint64_t seed);

// Same band with a critical value computed elsewhere. The scale-free limit
// process does not depend on the data, so c_alpha can be simulated once and
// reused across samples sharing (h, m, alpha).
BandResult qq_band_with_critical(const Sample& sample, std::size_t k,
                                 const WeightFunction& h, double alpha, double c_alpha);

// Coefficients of the shape and scale fluctuations in the limit process of
// the fitted GPD quantile function:
//   shape: (1 - t^{-gamma}(1 + gamma log t)) / gamma^2   -> (log^2 t)/2 as gamma -> 0
//   scale: (t^{-gamma} - 1) / gamma                      -> -log t      as gamma -> 0
double gpd_band_shape_coeff(double gamma, double t);
double gpd_band_scale_coeff(double gamma, double t);

// Band around the fitted GPD quantile function
//   center(t) = threshold + sigma_hat (t^{-gamma_hat} - 1)/gamma_hat
// for the raw order statistics, with limit process
//   V(t) = t^{-(gamma+1)} W(t) - W(1) - I_T shape(t) - I_S scale(t),
// I_T and I_S being the nu_T / nu_S integrals drawn jointly. The caller
// supplies the measures matching the fitting functionals; hill_tail /
// hill_scale cover the Pareto fit (slope = Hill, scale = slope * threshold).
// The sup weight is t^{gamma_hat + 1/2 + 1/10}.
BandResult gpd_band(const Sample& sample, const GpdFit& fit, const SignedMeasure& nu_T,
                    const SignedMeasure& nu_S, double alpha, std::size_t m,
                    std::size_t n_sims, std::uint64_t seed);

}  // namespace tailrisk

#endif  // TAILRISK_VALIDATION_HPP_
