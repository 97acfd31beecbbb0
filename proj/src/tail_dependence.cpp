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

#include "tailrisk/tail_dependence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "tailrisk/normal.hpp"

namespace tailrisk {

namespace {

// Ordinal ranks (1 = smallest), stable in input order on ties.
std::vector<std::size_t> ordinal_ranks(const BivariateSample& b, std::size_t col) {
  const std::size_t n = b.pairs.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
    return b.pairs[i][col] < b.pairs[j][col];
  });
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[idx[r]] = r + 1;
  return rank;
}

}  // namespace

RankTransformed rank_transform(const BivariateSample& b) {
  const std::size_t n = b.pairs.size();
  const auto r1 = ordinal_ranks(b, 0);
  const auto r2 = ordinal_ranks(b, 1);
  RankTransformed rt;
  rt.y.resize(n);
  rt.t.resize(n);
  const double np1 = static_cast<double>(n) + 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    rt.y[i][0] = np1 / (np1 - static_cast<double>(r1[i]));
    rt.y[i][1] = np1 / (np1 - static_cast<double>(r2[i]));
    rt.t[i] = std::min(rt.y[i][0], rt.y[i][1]);
  }
  return rt;
}

TailDepFit eta_fit(const BivariateSample& b, std::size_t k, TailEstimator estimator,
                   double alpha) {
  const RankTransformed rt = rank_transform(b);
  const Sample t_sample{std::vector<double>(rt.t)};
  const TailView view = tail_view(t_sample, k);

  TailDepFit fit;
  fit.k = k;
  fit.estimator = estimator;
  double sd;  // asymptotic sd of sqrt(k) (eta_hat - eta) under asy. independence
  if (estimator == TailEstimator::Hill) {
    fit.eta_hat = hill(view);
    sd = fit.eta_hat;
  } else {
    fit.eta_hat = gpd_ml_fit(view).gamma_hat;
    sd = 1.0 + fit.eta_hat;
  }
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  const double half = z * sd / std::sqrt(static_cast<double>(k));
  fit.ci = CiBounds{fit.eta_hat - half, fit.eta_hat + half, alpha};
  fit.model_violation = fit.eta_hat > 1.0;
  return fit;
}

double d_estimate(const RankTransformed& rt, std::size_t m, double y1, double y2) {
  const std::size_t n = rt.t.size();
  if (m < 1 || m > n - 1) throw DomainError("d_estimate: require 1 <= m <= n-1");
  if (!(y1 > 0.0 && y2 > 0.0)) throw DomainError("d_estimate: arguments must be positive");
  std::vector<double> t_sorted(rt.t);
  std::nth_element(t_sorted.begin(), t_sorted.begin() + (n - m - 1), t_sorted.end());
  const double t_nm = t_sorted[n - m - 1];  // T_{n-m:n}, ascending convention
  const double c1 = t_nm * y1;
  const double c2 = t_nm * y2;
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (rt.y[i][0] > c1 && rt.y[i][1] > c2) ++count;
  return static_cast<double>(count) / static_cast<double>(m);
}

double d_estimate(const BivariateSample& b, std::size_t m, double y1, double y2) {
  return d_estimate(rank_transform(b), m, y1, y2);
}

double d_extend(const std::function<double(double, double)>& d_boundary, double eta,
                double y1, double y2) {
  if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("d_extend: eta must lie in (0,1]");
  const double mn = std::min(y1, y2);
  if (!(mn > 0.0)) throw DomainError("d_extend: min(y1,y2) must be positive");
  return std::pow(mn, -1.0 / eta) * d_boundary(y1 / mn, y2 / mn);
}

DProfile d_profile(const BivariateSample& b, std::size_t m, std::size_t grid,
                   double alpha) {
  if (grid < 2) throw DomainError("d_profile: require grid >= 2");
  const RankTransformed rt = rank_transform(b);
  const double z = normal_quantile(1.0 - 0.5 * alpha);
  DProfile prof;
  prof.m = m;
  auto push = [&](double x, double d) {
    const double half = z * std::sqrt(d * (1.0 - d) / static_cast<double>(m));
    prof.x.push_back(x);
    prof.d.push_back(d);
    prof.lower.push_back(std::max(0.0, d - half));
    prof.upper.push_back(std::min(1.0, d + half));
  };
  const double g = static_cast<double>(grid);
  for (std::size_t j = 1; j <= grid; ++j) {
    const double x = static_cast<double>(j) / g;  // (0,1]
    push(x, d_estimate(rt, m, 1.0 / x, 1.0));
  }
  for (std::size_t j = 1; j < grid; ++j) {
    const double x = 1.0 + static_cast<double>(j) / g;  // (1,2)
    push(x, d_estimate(rt, m, 1.0, 1.0 / (2.0 - x)));
  }
  return prof;
}

}  // namespace tailrisk
