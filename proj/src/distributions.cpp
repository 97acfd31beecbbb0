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

#include "tailrisk/distributions.hpp"

#include <cmath>
#include <vector>

#include "tailrisk/rng.hpp"

namespace tailrisk {

namespace {
constexpr double kGammaZeroSwitch = 1e-8;
constexpr double kGammaOneSwitch = 1e-8;
}  // namespace

double gpd_cdf(double x, const GpdParams& p) {
  if (x <= 0.0) return 0.0;
  const double h = x / p.sigma;
  const double gh = p.gamma * h;
  if (std::abs(p.gamma) < kGammaZeroSwitch && std::abs(gh) < 1e-4) {
    // exp branch with first-order gamma correction of the exponent
    return -std::expm1(-h + 0.5 * p.gamma * h * h);
  }
  if (1.0 + gh <= 0.0) return 1.0;  // upper endpoint, only reachable for gamma < 0
  return -std::expm1(-std::log1p(gh) / p.gamma);
}

double gpd_quantile(double q, const GpdParams& p) {
  if (!(q >= 0.0 && q < 1.0)) throw DomainError("gpd_quantile: q must lie in [0,1)");
  const double l = std::log1p(-q);  // log(1-q) <= 0
  const double gl = p.gamma * l;
  if (p.gamma == 0.0 || (std::abs(p.gamma) < kGammaZeroSwitch && std::abs(gl) < 1e-4)) {
    return -p.sigma * l * (1.0 - 0.5 * p.gamma * l);
  }
  // ((1-q)^(-gamma) - 1)/gamma, evaluated through expm1 for stability
  return p.sigma * std::expm1(-gl) / p.gamma;
}

double psi(double t, double gamma) {
  if (t == 0.0) return 0.0;
  if (1.0 + gamma * t <= 0.0)
    throw DomainError("psi: 1 + gamma*t must be positive");
  if (std::abs(gamma) < kGammaZeroSwitch) {
    // psi(t;0) + gamma * d/dgamma psi(t;0), the derivative being
    // integral_0^t x^2 e^{-x} dx / 2 = 1 - (t^2/2 + t + 1) e^{-t}
    const double base = -std::expm1(-t);
    const double deriv = 1.0 - (0.5 * t * t + t + 1.0) * std::exp(-t);
    return base + gamma * deriv;
  }
  if (std::abs(gamma - 1.0) < kGammaOneSwitch) {
    const double l = std::log1p(t);
    return l + (gamma - 1.0) * (0.5 * l * l - l + t / (1.0 + t));
  }
  const double pow_term = std::exp((1.0 - 1.0 / gamma) * std::log1p(gamma * t));
  return (1.0 - pow_term) / (1.0 - gamma);
}

Sample sample(const SyntheticSpec& spec) {
  if (spec.n < 1) throw DomainError("sample: n must be >= 1");
  if ((spec.family == Family::Frechet || spec.family == Family::LogDisturbedPareto) &&
      !(spec.gamma > 0.0)) {
    throw DomainError("sample: this family requires gamma > 0");
  }
  std::vector<double> v(spec.n);
  switch (spec.family) {
    case Family::Frechet: {
      Rng rng(spec.seed);
      for (auto& x : v) x = std::pow(-std::log(rng.next_uniform()), -spec.gamma);
      break;
    }
    case Family::LogDisturbedPareto: {
      Rng rng(spec.seed);
      for (auto& x : v) {
        const double u = rng.next_uniform();
        x = std::pow(u / std::abs(std::log(u)), -spec.gamma);
      }
      break;
    }
    case Family::ExactPareto: {
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(spec.n);
        v[i] = std::pow(t, -spec.gamma);
      }
      break;
    }
    case Family::ExactGpd: {
      for (std::size_t i = 0; i < spec.n; ++i) {
        const double t = (static_cast<double>(i) + 0.5) / static_cast<double>(spec.n);
        v[i] = gpd_quantile(1.0 - t, GpdParams(spec.gamma, 1.0));
      }
      break;
    }
    case Family::UnitExponential: {
      Rng rng(spec.seed);
      for (auto& x : v) x = -std::log(rng.next_uniform());
      break;
    }
  }
  return Sample(std::move(v));
}

}  // namespace tailrisk
