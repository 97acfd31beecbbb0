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

#ifndef TAILRISK_RISK_MEASURES_HPP_
#define TAILRISK_RISK_MEASURES_HPP_

#include <cstddef>
#include <limits>
#include <optional>

#include "tailrisk/sample.hpp"

namespace tailrisk {

// Excess-of-loss layer: the reinsurer pays min((X - retention)^+, cover) per
// claim. cover may be +inf for an unlimited layer.
struct XlContract {
  double retention;
  double cover;

  XlContract(double retention, double cover) : retention(retention), cover(cover) {
    if (!(retention >= 0.0)) throw DomainError("XlContract: retention must be >= 0");
    if (!(cover > 0.0)) throw DomainError("XlContract: cover must be > 0");
  }
};

struct CiBounds {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 0.0;
};

// Net premium per claim, estimated by plugging the GPD-ML tail fit into the
// layer expectation:
//   value = (k/n) sigma_hat [ psi((t+c-u)/sigma_hat; gamma_hat)
//                             - psi((t-u)/sigma_hat; gamma_hat) ]
// with u the threshold order statistic X_{n-k:n}.
struct PremiumEstimate {
  double value = 0.0;
  std::size_t k = 0;
  std::size_t n = 0;
  double gamma_hat = 0.0;
  double sigma_hat = 0.0;
  double threshold = 0.0;
  double retention = 0.0;
  double cover = 0.0;
  std::optional<CiBounds> ci;
  std::optional<double> tau_hat;
  bool retention_below_threshold = false;  // permitted, flagged
};

// Fits the tail at level k and prices the layer. The retention should lie at
// or above the fitted threshold; below it the estimate is still returned with
// retention_below_threshold set. Throws DomainError when the layer leaves the
// support of the fitted GPD (1 + gamma (t+c-u)/sigma <= 0).
PremiumEstimate xl_premium(const Sample& sample, std::size_t k, const XlContract& contract);

// Same pricing with externally supplied tail parameters (oracle tests, what-if
// evaluation against a fixed fit).
PremiumEstimate xl_premium_with_params(double gamma, double sigma, double threshold,
                                       std::size_t k, std::size_t n,
                                       const XlContract& contract);

// Asymptotic confidence interval for the true layer expectation, built from
// the self-normalized ratio statistic: with tau_hat = log(t/u) / gamma_hat^2
// and sigma_T = 1 + gamma_hat,
//   Pi_true in value * (1 +- z_{1-alpha/2} tau_hat sigma_T / sqrt(k)).
// Requires gamma_hat > 0 and a retention above the threshold.
CiBounds premium_ci(const PremiumEstimate& estimate, double alpha);

// Extreme value-at-risk (the (1-alpha)-quantile of the loss distribution):
//   VaR = u + sigma_hat ((n alpha / k)^{-gamma_hat} - 1)/gamma_hat,
// the gamma = 0 limit being -sigma_hat log(n alpha / k). alpha >= k/n leaves
// the extrapolation regime; the estimate is still returned.
double var_estimate(const Sample& sample, std::size_t k, double alpha);
double var_estimate_with_params(double gamma, double sigma, double threshold,
                                std::size_t k, std::size_t n, double alpha);

}  // namespace tailrisk

#endif  // TAILRISK_RISK_MEASURES_HPP_
