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

#ifndef TAILRISK_TAIL_DEPENDENCE_HPP_
#define TAILRISK_TAIL_DEPENDENCE_HPP_

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "tailrisk/risk_measures.hpp"
#include "tailrisk/sample.hpp"
#include "tailrisk/tail_estimators.hpp"

namespace tailrisk {

struct BivariateSample {
  std::vector<std::array<double, 2>> pairs;

  explicit BivariateSample(std::vector<std::array<double, 2>> p) : pairs(std::move(p)) {
    if (pairs.size() < 2) throw DomainError("BivariateSample: need at least two pairs");
  }
};

// Marginal rank standardization y_hat_{i,l} = (n+1)/(n+1-R_{i,l}) mapping
// each coordinate to an approximate standard Pareto scale, and the joint
// minima T_i = min(y_hat_{i,1}, y_hat_{i,2}) whose tail index is the
// coefficient of tail dependence eta. Ranks are ordinal (1 = smallest) with
// ties broken by input order, keeping y_hat <= n+1.
struct RankTransformed {
  std::vector<std::array<double, 2>> y;
  std::vector<double> t;
};

RankTransformed rank_transform(const BivariateSample& b);

// eta estimate by applying the Hill or GPD-ML estimator to the T sample. The
// confidence interval uses the iid asymptotic variance (eta^2 for Hill,
// (1+eta)^2 for ML), valid under asymptotic independence; model_violation is
// set when the point estimate exceeds 1 (outside the model range (0,1]).
struct TailDepFit {
  double eta_hat = 0.0;
  std::size_t k = 0;
  CiBounds ci;
  TailEstimator estimator = TailEstimator::Hill;
  bool model_violation = false;
};

TailDepFit eta_fit(const BivariateSample& b, std::size_t k, TailEstimator estimator,
                   double alpha = 0.05);

// Counting estimator of the limit function d:
//   d_hat(y1,y2) = (1/m) sum_i 1{y_hat_{i,1} > T_{n-m:n} y1, y_hat_{i,2} > T_{n-m:n} y2}
// with T_{n-m:n} the (n-m)-th ascending order statistic of the T sample.
double d_estimate(const RankTransformed& rt, std::size_t m, double y1, double y2);
double d_estimate(const BivariateSample& b, std::size_t m, double y1, double y2);

// Extends a boundary section of d (given on the rays max(y1,y2) = 1, i.e.
// rescaled arguments with min = 1) to arbitrary positive arguments through
// homogeneity of order -1/eta:
//   d(y1,y2) = min(y1,y2)^{-1/eta} d(y1/min, y2/min).
double d_extend(const std::function<double(double, double)>& d_boundary, double eta,
                double y1, double y2);

// Profile x -> d_hat(1/x, 1) on (0,1] and x -> d_hat(1, 1/(2-x)) on [1,2),
// with pointwise normal-approximation intervals of half-width
// z_{1-alpha/2} sqrt(d(1-d)/m) (approximate; the effective sample size is m).
struct DProfile {
  std::vector<double> x;
  std::vector<double> d;
  std::vector<double> lower;
  std::vector<double> upper;
  std::size_t m = 0;
};

DProfile d_profile(const BivariateSample& b, std::size_t m, std::size_t grid,
                   double alpha = 0.05);

}  // namespace tailrisk

#endif  // TAILRISK_TAIL_DEPENDENCE_HPP_
