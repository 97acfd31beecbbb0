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

#include "tailrisk/tail_estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace tailrisk {

namespace {
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
}

double TailView::quantile(double t) const {
  if (!(t > 0.0 && t <= 1.0)) throw DomainError("TailView::quantile: t must lie in (0,1]");
  const auto idx = static_cast<std::size_t>(std::floor(static_cast<double>(k) * t));
  return order_stats[std::min(idx, k)];
}

TailView tail_view(const Sample& sample, std::size_t k) {
  const std::size_t n = sample.size();
  if (k < 1 || k > n - 1) throw DomainError("tail_view: require 1 <= k <= n-1");
  TailView view;
  view.k = k;
  view.n = n;
  view.order_stats.resize(k + 1);
  for (std::size_t i = 0; i <= k; ++i) view.order_stats[i] = sample[n - 1 - i];
  return view;
}

double hill(const TailView& view) {
  const double threshold = view.threshold();
  if (!(threshold > 0.0))
    throw DomainError("hill: threshold order statistic must be positive");
  const double log_u = std::log(threshold);
  double acc = 0.0;
  for (std::size_t i = 0; i < view.k; ++i) acc += std::log(view.order_stats[i]) - log_u;
  return acc / static_cast<double>(view.k);
}

double m_nk(const TailView& view) {
  const double threshold = view.threshold();
  if (!(threshold > 0.0))
    throw DomainError("m_nk: threshold order statistic must be positive");
  const double log_u = std::log(threshold);
  double acc = 0.0;
  for (std::size_t i = 0; i < view.k; ++i) {
    const double d = std::log(view.order_stats[i]) - log_u;
    acc += d * d;
  }
  return acc / static_cast<double>(view.k);
}

Matrix2 asymptotic_cov(double gamma) {
  const double g1 = 1.0 + gamma;
  return Matrix2{{{g1 * g1, -g1}, {-g1, 2.0 + 2.0 * gamma + gamma * gamma}}};
}

namespace {

// Profile log-likelihood in theta = gamma/sigma. For theta != 0,
//   gamma(theta) = (1/k) sum log(1 + theta E_i),  sigma = gamma/theta,
//   l(theta) = -k (1 + gamma(theta) + log(gamma(theta)/theta)),
// and the theta -> 0 limit is the exponential fit with sigma = mean(E).
struct ProfiledLik {
  const std::vector<double>& excess;  // descending, excess.back() may be 0
  double mean_excess;

  double gamma_at(double theta) const {
    double acc = 0.0;
    for (double e : excess) acc += std::log1p(theta * e);
    return acc / static_cast<double>(excess.size());
  }

  double value(double theta) const {
    const double k = static_cast<double>(excess.size());
    if (theta == 0.0) return -k * (1.0 + std::log(mean_excess));
    const double g = gamma_at(theta);
    // gamma(theta)/theta -> mean_excess as theta -> 0; guard the ratio there.
    const double ratio = (std::abs(g) < 1e-12) ? mean_excess : g / theta;
    if (!(ratio > 0.0)) return -std::numeric_limits<double>::infinity();
    return -k * (1.0 + g + std::log(ratio));
  }
};

}  // namespace

GpdFit gpd_ml_fit(const TailView& view) {
  const std::size_t k = view.k;
  if (k < 2) throw DomainError("gpd_ml_fit: require k >= 2");
  std::vector<double> excess(k);
  const double u = view.threshold();
  for (std::size_t i = 0; i < k; ++i) excess[i] = view.order_stats[i] - u;
  const double emax = excess.front();
  const double emin = excess.back();
  if (!(emax > 0.0))
    throw DegenerateInputError("gpd_ml_fit: no positive excess over the threshold");
  if (emax == emin) throw DegenerateInputError("gpd_ml_fit: all excesses equal");

  double mean_excess = 0.0;
  for (double e : excess) mean_excess += e;
  mean_excess /= static_cast<double>(k);

  ProfiledLik lik{excess, mean_excess};

  // The admissible range of theta is (-1/emax, inf). Towards the left end the
  // profiled gamma diverges to -inf and the likelihood is unbounded; we stop
  // the search where gamma(theta) hits -1 + delta, the boundary of the
  // parameter set {gamma > -1}.
  double theta_left = 0.0;
  {
    double lo = -1.0 / emax;           // excluded
    double hi = 0.0;                   // gamma(0) = 0 > -1
    for (int it = 0; it < 200; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (lik.gamma_at(mid) > -1.0 + 1e-6) hi = mid; else lo = mid;
    }
    theta_left = hi;
  }
  const double theta_right = 1e8 / mean_excess;

  // Documented coarse grid: 0 plus +-logarithmically spaced points filling
  // (theta_left, theta_right). The final answer dominates this grid by
  // construction.
  std::vector<double> grid;
  grid.push_back(0.0);
  const int half = 120;
  for (int j = 0; j <= half; ++j) {
    const double f = static_cast<double>(j) / half;
    grid.push_back(theta_right * std::pow(1e-10, 1.0 - f));   // positive branch
    if (theta_left < 0.0)
      grid.push_back(theta_left * std::pow(1e-10, 1.0 - f));  // negative branch
  }
  std::sort(grid.begin(), grid.end());

  std::size_t best = 0;
  double best_val = -std::numeric_limits<double>::infinity();
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = lik.value(grid[i]);
    if (vals[i] > best_val) { best_val = vals[i]; best = i; }
  }

  // Golden-section refinement inside the bracketing grid cells.
  double a = grid[best > 0 ? best - 1 : best];
  double b = grid[std::min(best + 1, grid.size() - 1)];
  const double gr = 0.6180339887498949;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = lik.value(x1), f2 = lik.value(x2);
  int iter = 0;
  const int max_iter = 500;
  while (b - a > 1e-13 * (1.0 + std::abs(a) + std::abs(b)) && iter < max_iter) {
    if (f1 >= f2) { b = x2; x2 = x1; f2 = f1; x1 = b - gr * (b - a); f1 = lik.value(x1); }
    else          { a = x1; x1 = x2; f1 = f2; x2 = a + gr * (b - a); f2 = lik.value(x2); }
    ++iter;
  }
  double theta_hat = (f1 >= f2) ? x1 : x2;
  double val_hat = std::max(f1, f2);
  if (best_val > val_hat) { theta_hat = grid[best]; val_hat = best_val; }

  double gamma_hat, sigma_hat;
  if (theta_hat == 0.0 || std::abs(lik.gamma_at(theta_hat)) < 1e-12) {
    gamma_hat = (theta_hat == 0.0) ? 0.0 : lik.gamma_at(theta_hat);
    sigma_hat = mean_excess;
  } else {
    gamma_hat = lik.gamma_at(theta_hat);
    sigma_hat = gamma_hat / theta_hat;
  }

  if (!std::isfinite(val_hat) || !std::isfinite(gamma_hat) || !(sigma_hat > 0.0) ||
      iter >= max_iter) {
    throw ConvergenceError("gpd_ml_fit: profile maximization did not converge",
                           gamma_hat, sigma_hat);
  }

  GpdFit fit;
  fit.gamma_hat = gamma_hat;
  fit.sigma_hat = sigma_hat;
  fit.k = k;
  fit.n = view.n;
  fit.threshold = u;
  fit.loglik = val_hat;
  fit.cov = asymptotic_cov(gamma_hat);
  return fit;
}

std::vector<double> hill_trace_all(const Sample& sample, std::size_t k_max) {
  const std::size_t n = sample.size();
  if (k_max > n - 1) throw DomainError("hill_trace_all: k_max out of range");
  std::vector<double> out(k_max, kNaN);
  double prefix = 0.0;  // sum of log X_{n-i+1:n}, i = 1..k
  for (std::size_t kk = 1; kk <= k_max; ++kk) {
    const double top = sample[n - kk];        // X_{n-k+1:n}
    const double thresh = sample[n - kk - 1]; // X_{n-k:n}
    if (!(top > 0.0)) break;                  // all later thresholds fail too
    prefix += std::log(top);
    if (thresh > 0.0)
      out[kk - 1] = prefix / static_cast<double>(kk) - std::log(thresh);
  }
  return out;
}

EstimatorTrace trace(const Sample& sample, TailEstimator estimator,
                     std::size_t k_min, std::size_t k_max) {
  const std::size_t n = sample.size();
  if (k_min < 1 || k_min > k_max || k_max > n - 1)
    throw DomainError("trace: require 1 <= k_min <= k_max <= n-1");
  EstimatorTrace tr;
  tr.ks.reserve(k_max - k_min + 1);
  tr.estimates.reserve(k_max - k_min + 1);
  if (estimator == TailEstimator::Hill) {
    const auto all = hill_trace_all(sample, k_max);
    for (std::size_t kk = k_min; kk <= k_max; ++kk) {
      tr.ks.push_back(kk);
      tr.estimates.push_back(all[kk - 1]);
    }
    return tr;
  }
  for (std::size_t kk = k_min; kk <= k_max; ++kk) {
    tr.ks.push_back(kk);
    double est = kNaN;
    if (kk >= 2) {
      try {
        est = gpd_ml_fit(tail_view(sample, kk)).gamma_hat;
      } catch (const Error&) {
        // recorded as missing
      }
    }
    tr.estimates.push_back(est);
  }
  return tr;
}

}  // namespace tailrisk
