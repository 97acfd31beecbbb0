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

#ifndef TAILRISK_TAIL_ESTIMATORS_HPP_
#define TAILRISK_TAIL_ESTIMATORS_HPP_

#include <array>
#include <cstddef>
#include <vector>

#include "tailrisk/sample.hpp"

namespace tailrisk {

// The top k+1 order statistics of a sample, realizing the tail empirical
// quantile function Q_n(t) = X_{n-[kt]:n}. order_stats is non-increasing with
// order_stats[0] = X_{n:n} and order_stats[k] = X_{n-k:n} (the threshold).
struct TailView {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<double> order_stats;  // length k+1, descending

  double threshold() const { return order_stats[k]; }

  // Q_n(t) for t in (0,1]: the step function is constant on [i/k,(i+1)/k)
  // and Q_n(1) = X_{n-k:n} exactly.
  double quantile(double t) const;
};

TailView tail_view(const Sample& sample, std::size_t k);

// Hill estimator (1/k) sum_{i=1..k} log(X_{n-i+1:n}/X_{n-k:n}). Requires a
// strictly positive threshold; ties among the top order statistics are
// computed as written.
double hill(const TailView& view);

// Second log-moment (1/k) sum log^2(X_{n-i+1:n}/X_{n-k:n}), the auxiliary
// statistic behind the bootstrap choice of k.
double m_nk(const TailView& view);

using Matrix2 = std::array<std::array<double, 2>, 2>;

// Asymptotic covariance of sqrt(k) * (gamma_hat - gamma, sigma_hat/a - 1) for
// the maximum likelihood estimator in the approximating GPD model:
//
//   Sigma = [ (1+gamma)^2      -(1+gamma)        ]
//           [ -(1+gamma)       2 + 2 gamma + gamma^2 ]
//
// Stated for gamma >= 0; the same expression extends to gamma in (-1/2, 0)
// but this library's contracts only exercise the nonnegative range.
Matrix2 asymptotic_cov(double gamma);

// Result of the GPD maximum likelihood fit to the excesses over X_{n-k:n}.
struct GpdFit {
  double gamma_hat = 0.0;
  double sigma_hat = 0.0;
  std::size_t k = 0;
  std::size_t n = 0;
  double threshold = 0.0;
  double loglik = 0.0;
  Matrix2 cov{};  // asymptotic_cov(gamma_hat)
};

// Maximizes the GPD excess log-likelihood
//
//   -(1/gamma + 1) sum_i log(1 + gamma E_i / sigma) - k log sigma
//
// over {gamma > -1, sigma > -gamma * max E_i} for the excesses E_i over the
// threshold X_{n-k:n}, via the usual one-parameter profile in theta =
// gamma/sigma (a coarse log-spaced theta grid followed by golden-section
// refinement). The theta = 0 ray is the exponential fit and is handled as the
// |gamma| -> 0 limit of the profile. Throws DegenerateInputError when all
// excesses coincide and ConvergenceError (carrying the best iterate) when the
// refinement stalls.
GpdFit gpd_ml_fit(const TailView& view);

enum class TailEstimator { Hill, GpdMl };

// Estimator-versus-k trace used by the diagnostic plots. Failures of the ML
// fit at individual k are recorded as NaN, not raised.
struct EstimatorTrace {
  std::vector<std::size_t> ks;
  std::vector<double> estimates;
};

EstimatorTrace trace(const Sample& sample, TailEstimator estimator,
                     std::size_t k_min, std::size_t k_max);

// Hill estimates for every k in 1..k_max, computed in one pass over prefix
// sums. hill_all[k-1] is the Hill estimator with k + 1 top order statistics;
// entries with a non-positive threshold are NaN.
std::vector<double> hill_trace_all(const Sample& sample, std::size_t k_max);

}  // namespace tailrisk

#endif  // TAILRISK_TAIL_ESTIMATORS_HPP_
