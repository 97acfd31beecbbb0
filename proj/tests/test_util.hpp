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

// Independent oracles used across the test suites. Everything here is
// deliberately naive (nested Simpson quadrature, brute-force scans, dense
// grid searches) and must stay independent of the library code paths it
// checks.

#ifndef TAILRISK_TESTS_TEST_UTIL_HPP_
#define TAILRISK_TESTS_TEST_UTIL_HPP_

#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <vector>

namespace oracle {

inline double simpson_rec(const std::function<double(double)>& f, double a, double b,
                          double fa, double fm, double fb, double whole, double tol,
                          int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  return simpson_rec(f, a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), tol, 40);
}

// GPD survival function (1 + gamma x)^(-1/gamma), exp(-x) at gamma = 0.
inline double gpd_survival(double x, double gamma) {
  if (x <= 0.0) return 1.0;
  if (gamma == 0.0) return std::exp(-x);
  const double a = 1.0 + gamma * x;
  if (a <= 0.0) return 0.0;
  return std::pow(a, -1.0 / gamma);
}

// GPD excess log-likelihood at (gamma, sigma); -inf outside the admissible set.
inline double gpd_loglik(const std::vector<double>& excess, double gamma, double sigma) {
  if (!(sigma > 0.0)) return -std::numeric_limits<double>::infinity();
  double acc = 0.0;
  for (double e : excess) {
    const double z = 1.0 + gamma * e / sigma;
    if (z <= 0.0) return -std::numeric_limits<double>::infinity();
    if (gamma == 0.0)
      acc += -e / sigma;
    else
      acc += -(1.0 / gamma + 1.0) * std::log(z);
  }
  return acc - static_cast<double>(excess.size()) * std::log(sigma);
}

struct GridMax {
  double gamma = 0.0;
  double sigma = 0.0;
  double value = -std::numeric_limits<double>::infinity();
};

// Dense grid maximization of the same likelihood (independent of the
// library's profile optimizer).
inline GridMax gpd_loglik_grid_max(const std::vector<double>& excess, double g_lo,
                                   double g_hi, double s_lo, double s_hi,
                                   std::size_t ng = 161, std::size_t ns = 161) {
  GridMax best;
  for (std::size_t i = 0; i < ng; ++i) {
    const double g = g_lo + (g_hi - g_lo) * static_cast<double>(i) / (ng - 1);
    for (std::size_t j = 0; j < ns; ++j) {
      const double s =
          s_lo * std::pow(s_hi / s_lo, static_cast<double>(j) / (ns - 1));
      const double v = gpd_loglik(excess, g, s);
      if (v > best.value) best = {g, s, v};
    }
  }
  return best;
}

// Brute-force evaluation of the stopping rule min{k : max_i sqrt(i)
// |g_i - g_k| > r} by the O(n^2) double loop.
inline std::pair<std::size_t, bool> kbar_brute(const std::vector<double>& tr, double r) {
  for (std::size_t k = 1; k <= tr.size(); ++k) {
    if (std::isnan(tr[k - 1])) continue;
    double mx = 0.0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (std::isnan(tr[i - 1])) continue;
      mx = std::max(mx, std::sqrt(static_cast<double>(i)) * std::abs(tr[i - 1] - tr[k - 1]));
    }
    if (mx > r) return {k, true};
  }
  return {tr.size(), false};
}

// Sample variance.
inline double variance(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  m /= static_cast<double>(v.size());
  double s = 0.0;
  for (double x : v) s += (x - m) * (x - m);
  return s / static_cast<double>(v.size() - 1);
}

inline double mean(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m += x;
  return m / static_cast<double>(v.size());
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return (n % 2 == 1) ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace oracle

#endif  // TAILRISK_TESTS_TEST_UTIL_HPP_
