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

#include "tailrisk/risk_measures.hpp"

#include <cmath>
#include <string>

#include "tailrisk/distributions.hpp"
#include "tailrisk/normal.hpp"
#include "tailrisk/tail_estimators.hpp"

namespace tailrisk {

namespace {

// psi at the layer end, honoring an unlimited cover: the limit of psi(t) as
// t -> inf is 1/(1-gamma) for gamma < 1 and +inf otherwise.
double psi_at(double x, double gamma) {
  if (std::isinf(x)) {
    if (gamma < 1.0) return 1.0 / (1.0 - gamma);
    return std::numeric_limits<double>::infinity();
  }
  return psi(x, gamma);
}

}  // namespace

PremiumEstimate xl_premium_with_params(double gamma, double sigma, double threshold,
                                       std::size_t k, std::size_t n,
                                       const XlContract& contract) {
  if (!(sigma > 0.0)) throw DomainError("xl_premium: sigma must be > 0");
  const double t = contract.retention;
  const double c = contract.cover;
  const double lo = (t - threshold) / sigma;
  const double hi = (t + c - threshold) / sigma;
  if (std::isfinite(hi) && 1.0 + gamma * hi <= 0.0)
    throw DomainError("xl_premium: layer end t+c leaves the fitted support "
                      "(1 + gamma (t+c-u)/sigma <= 0)");
  if (1.0 + gamma * lo <= 0.0)
    throw DomainError("xl_premium: retention t leaves the fitted support "
                      "(1 + gamma (t-u)/sigma <= 0)");

  PremiumEstimate est;
  est.k = k;
  est.n = n;
  est.gamma_hat = gamma;
  est.sigma_hat = sigma;
  est.threshold = threshold;
  est.retention = t;
  est.cover = c;
  est.retention_below_threshold = t < threshold;
  const double rate = static_cast<double>(k) / static_cast<double>(n);
  est.value = rate * sigma * (psi_at(hi, gamma) - psi_at(lo, gamma));
  if (est.value < 0.0) est.value = 0.0;  // guard tiny negative rounding
  return est;
}

PremiumEstimate xl_premium(const Sample& sample, std::size_t k, const XlContract& contract) {
  const GpdFit fit = gpd_ml_fit(tail_view(sample, k));
  return xl_premium_with_params(fit.gamma_hat, fit.sigma_hat, fit.threshold, k,
                                sample.size(), contract);
}

CiBounds premium_ci(const PremiumEstimate& estimate, double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw DomainError("premium_ci: alpha must lie in (0,1]");
  if (!(estimate.gamma_hat > 0.0))
    throw DomainError("premium_ci: stated for gamma_hat > 0 only");
  if (!(estimate.retention > estimate.threshold))
    throw DomainError("premium_ci: requires a retention above the fitted threshold");
  const double tau = std::log(estimate.retention / estimate.threshold) /
                     (estimate.gamma_hat * estimate.gamma_hat);
  const double sigma_t = 1.0 + estimate.gamma_hat;
  const double z = (alpha == 1.0) ? 0.0 : normal_quantile(1.0 - 0.5 * alpha);
  const double rel = z * tau * sigma_t / std::sqrt(static_cast<double>(estimate.k));
  CiBounds ci;
  ci.alpha = alpha;
  ci.lower = std::max(0.0, estimate.value * (1.0 - rel));
  ci.upper = estimate.value * (1.0 + rel);
  return ci;
}

double var_estimate_with_params(double gamma, double sigma, double threshold,
                                std::size_t k, std::size_t n, double alpha) {
  if (!(alpha > 0.0)) throw DomainError("var_estimate: alpha must be > 0");
  const double ratio = static_cast<double>(n) * alpha / static_cast<double>(k);
  // (1)^{-gamma} - 1 = 0: at alpha = k/n the estimate is the threshold itself.
  if (std::abs(ratio - 1.0) < 4e-16) return threshold;
  const double l = std::log(ratio);
  const double factor =
      (std::abs(gamma) < 1e-8) ? -l * (1.0 - 0.5 * gamma * l) : std::expm1(-gamma * l) / gamma;
  return threshold + sigma * factor;
}

double var_estimate(const Sample& sample, std::size_t k, double alpha) {
  const GpdFit fit = gpd_ml_fit(tail_view(sample, k));
  return var_estimate_with_params(fit.gamma_hat, fit.sigma_hat, fit.threshold, k,
                                  sample.size(), alpha);
}

}  // namespace tailrisk
