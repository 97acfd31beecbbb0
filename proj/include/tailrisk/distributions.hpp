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

#ifndef TAILRISK_DISTRIBUTIONS_HPP_
#define TAILRISK_DISTRIBUTIONS_HPP_

#include <cstdint>

#include "tailrisk/errors.hpp"
#include "tailrisk/sample.hpp"

namespace tailrisk {

// Parameters of the generalized Pareto distribution
//
//   H(x) = 1 - (1 + gamma * x / sigma)^(-1/gamma),   x > 0, 1 + gamma x/sigma > 0,
//
// with the exponential cdf 1 - exp(-x/sigma) as the gamma -> 0 limit. The
// support is [0, inf) for gamma >= 0 and [0, -sigma/gamma] for gamma < 0.
struct GpdParams {
  double gamma;
  double sigma;

  GpdParams(double gamma, double sigma) : gamma(gamma), sigma(sigma) {
    if (!(sigma > 0.0)) throw DomainError("GpdParams: sigma must be > 0");
  }
};

// GPD cdf; clamps to {0,1} outside the support. Continuous in gamma at 0.
double gpd_cdf(double x, const GpdParams& p);

// GPD quantile function for q in [0,1); inverse of gpd_cdf up to 1e-12
// relative accuracy on the supported range.
double gpd_quantile(double q, const GpdParams& p);

// psi(t; gamma) = integral_0^t (1 + gamma x)^(-1/gamma) dx, the building block
// of excess-of-loss layer expectations. Closed forms:
//   (1 - (1 + gamma t)^(1 - 1/gamma)) / (1 - gamma)   gamma not in {0, 1}
//   1 - exp(-t)                                        gamma = 0
//   log(1 + t)                                         gamma = 1
// Series expansions take over for |gamma| < 1e-8 and |gamma - 1| < 1e-8 to
// avoid catastrophic cancellation. Requires 1 + gamma t > 0.
double psi(double t, double gamma);

// Synthetic data families. The two "Exact*" families are deterministic
// quantile grids (levels (i - 1/2)/n, matching the qq-plot plotting
// positions) intended as noise-free oracles; the other three draw iid
// variates through the SplitMix64 generator, so output is a pure function of
// the spec.
enum class Family {
  Frechet,             // cdf exp(-x^(-1/gamma)), drawn as (-log U)^(-gamma)
  LogDisturbedPareto,  // quantile F^{-1}(1-t) = (t/|log t|)^(-gamma)
  ExactPareto,         // deterministic grid ((i-1/2)/n)^(-gamma)
  ExactGpd,            // deterministic grid (((i-1/2)/n)^(-gamma) - 1)/gamma, sigma = 1
  UnitExponential,     // iid -log U
};

struct SyntheticSpec {
  Family family;
  double gamma = 0.0;
  std::size_t n = 0;
  std::uint64_t seed = 0;
};

// Draw (or lay out) a sample according to the spec. Frechet uses the quantile
// transform (-log U)^(-gamma); LogDisturbedPareto uses (U/|log U|)^(-gamma).
// Frechet and LogDisturbedPareto require gamma > 0, and n >= 1 always.
Sample sample(const SyntheticSpec& spec);

}  // namespace tailrisk

#endif  // TAILRISK_DISTRIBUTIONS_HPP_
