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

#include "tailrisk/threshold_selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "tailrisk/rng.hpp"
#include "tailrisk/tail_estimators.hpp"

namespace tailrisk {

namespace {

// max_{1<=i<=k} sqrt(i) |gamma_i - gamma_k| over the non-NaN entries.
double max_deviation(const std::vector<double>& tr, std::size_t k) {
  const double gk = tr[k - 1];
  double best = 0.0;
  for (std::size_t i = 1; i <= k; ++i) {
    if (std::isnan(tr[i - 1])) continue;
    const double d = std::sqrt(static_cast<double>(i)) * std::abs(tr[i - 1] - gk);
    if (d > best) best = d;
  }
  return best;
}

}  // namespace

KbarResult kbar(const std::vector<double>& hill_trace, double r) {
  if (!(r > 0.0)) throw DomainError("kbar: r must be positive");
  if (hill_trace.size() < 2) throw DomainError("kbar: trace too short");
  for (std::size_t k = 1; k <= hill_trace.size(); ++k) {
    if (std::isnan(hill_trace[k - 1])) continue;
    if (max_deviation(hill_trace, k) > r) return {k, true};
  }
  return {hill_trace.size(), false};
}

KbarResult kbar(const Sample& sample, double r) {
  if (sample.size() < 3) throw DomainError("kbar: sample too small");
  return kbar(hill_trace_all(sample, sample.size() - 1), r);
}

double rho_estimate(const std::vector<double>& hill_trace, std::size_t kbar_k, double lambda) {
  if (kbar_k < 2 || kbar_k > hill_trace.size())
    throw DomainError("rho_estimate: kbar out of range");
  if (!(lambda > 0.0 && lambda < 1.0))
    throw DomainError("rho_estimate: lambda must lie in (0,1)");
  const auto k_lam = static_cast<std::size_t>(lambda * static_cast<double>(kbar_k));
  if (k_lam < 1) throw DomainError("rho_estimate: [lambda kbar] must be >= 1");
  const double num = max_deviation(hill_trace, k_lam);
  const double den = max_deviation(hill_trace, kbar_k);
  return std::log(num / den) / std::log(lambda) - 0.5;
}

SequentialSelection select_k_sequential(const Sample& sample, const SequentialConfig& cfg) {
  const std::size_t n = sample.size();
  if (n < 50) throw DomainError("select_k_sequential: require n >= 50");
  if (!(cfg.xi > 0.0 && cfg.xi < 1.0 && cfg.lambda > 0.0 && cfg.lambda < 1.0))
    throw ConfigError("select_k_sequential: xi and lambda must lie in (0,1)");

  std::size_t n_pos = 0;
  for (double x : sample.values())
    if (x > 0.0) ++n_pos;
  const auto pilot_k = static_cast<std::size_t>(2.0 * std::sqrt(static_cast<double>(n_pos)));
  const std::size_t pilot = std::clamp<std::size_t>(pilot_k, 1, n - 1);

  const auto tr = hill_trace_all(sample, n - 1);
  const double pilot_gamma = tr[pilot - 1];
  if (std::isnan(pilot_gamma))
    throw DomainError("select_k_sequential: pilot Hill estimate undefined (non-positive threshold)");

  const double r = cfg.r_factor * pilot_gamma * std::pow(static_cast<double>(n), 0.25);
  if (!(r > 0.0))
    throw SelectionError("select_k_sequential: nonpositive stopping threshold (pilot Hill estimate is 0)");

  const KbarResult kb_r = kbar(tr, r);
  const KbarResult kb_rxi = kbar(tr, std::pow(r, cfg.xi));
  if (!kb_r.found || !kb_rxi.found)
    throw SelectionError("select_k_sequential: stopping rule never fired");

  SequentialSelection sel;
  sel.pilot_gamma = pilot_gamma;
  sel.r = r;
  sel.kbar_r = kb_r.k;
  sel.kbar_r_xi = kb_rxi.k;

  const auto k_lam = static_cast<std::size_t>(cfg.lambda * static_cast<double>(kb_r.k));
  double rho = std::numeric_limits<double>::quiet_NaN();
  if (k_lam >= 1 && kb_r.k <= n / 2) {
    // Past n/2 the stopping index is no longer an intermediate sequence and
    // the log-ratio reading of the deviation maxima loses its power-law
    // basis, so the estimate is not attempted there.
    rho = rho_estimate(tr, kb_r.k, cfg.lambda);
  }
  if (!std::isfinite(rho) || rho <= 0.0) {
    // The selector's order of magnitude does not depend on rho; a fixed
    // rho = 1 still yields reasonable estimates when misspecified.
    rho = 1.0;
    sel.rho_fallback = true;
  }
  sel.rho = rho;

  const double ratio = static_cast<double>(kb_rxi.k) /
                       std::pow(static_cast<double>(kb_r.k), cfg.xi);
  const double k_hat = std::pow(2.0 * rho + 1.0, -1.0 / rho) *
                       std::pow(2.0 * pilot_gamma * rho, 1.0 / (2.0 * rho + 1.0)) *
                       std::pow(ratio, 1.0 / (1.0 - cfg.xi));
  if (!std::isfinite(k_hat))
    throw SelectionError("select_k_sequential: selector formula not finite");
  const auto truncated = static_cast<std::size_t>(k_hat);
  sel.k = std::clamp<std::size_t>(truncated, 2, n - 1);
  return sel;
}

namespace {

struct MseCurve {
  std::size_t k_lo = 0, k_hi = 0;      // candidate range, inclusive
  std::vector<double> q;               // mean of A over replicates, index k - k_lo
  std::size_t argmin = 0;              // first global minimizer (smallest k)
  double minval = 0.0;
};

// Averages A*_{m,k} = (M* - 2 gamma*^2)^2 over B resamples of size m drawn
// with replacement. Resamples whose deepest threshold is non-positive are
// redrawn on a fresh stream.
MseCurve bootstrap_curve(const std::vector<double>& data, std::size_t m,
                         std::size_t B, std::uint64_t seed, std::uint64_t stream_base) {
  MseCurve curve;
  const double logm = std::log(static_cast<double>(m));
  curve.k_lo = std::max<std::size_t>(2, static_cast<std::size_t>(logm));
  curve.k_hi = std::min<std::size_t>(m - 1, static_cast<std::size_t>(static_cast<double>(m) / logm));
  if (curve.k_lo > curve.k_hi)
    throw SelectionError("select_k_bootstrap: empty candidate k-range");
  const std::size_t width = curve.k_hi - curve.k_lo + 1;
  curve.q.assign(width, 0.0);

  std::vector<double> resample(m);
  std::vector<double> logx(curve.k_hi + 1);
  const std::size_t n = data.size();

  for (std::size_t b = 0; b < B; ++b) {
    bool ok = false;
    for (std::uint64_t attempt = 0; attempt < 100 && !ok; ++attempt) {
      Rng rng = Rng::derive(seed, stream_base + (static_cast<std::uint64_t>(b) << 8) + attempt);
      for (std::size_t i = 0; i < m; ++i) {
        const auto j = static_cast<std::size_t>(rng.next_u64() % n);
        resample[i] = data[j];
      }
      std::partial_sort(resample.begin(), resample.begin() + curve.k_hi + 1,
                        resample.end(), std::greater<double>());
      if (resample[curve.k_hi] > 0.0) ok = true;
    }
    if (!ok)
      throw SelectionError("select_k_bootstrap: degenerate resamples (non-positive tail)");

    for (std::size_t i = 0; i <= curve.k_hi; ++i) logx[i] = std::log(resample[i]);
    double p1 = 0.0, p2 = 0.0;
    for (std::size_t k = 1; k <= curve.k_hi; ++k) {
      p1 += logx[k - 1];
      p2 += logx[k - 1] * logx[k - 1];
      if (k < curve.k_lo) continue;
      const double kk = static_cast<double>(k);
      const double lu = logx[k];
      const double g = p1 / kk - lu;
      const double m2 = p2 / kk - 2.0 * lu * p1 / kk + lu * lu;
      const double a = m2 - 2.0 * g * g;
      curve.q[k - curve.k_lo] += a * a;
    }
  }

  curve.minval = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < width; ++i) {
    curve.q[i] /= static_cast<double>(B);
    if (curve.q[i] < curve.minval) {
      curve.minval = curve.q[i];
      curve.argmin = curve.k_lo + i;
    }
  }
  return curve;
}

}  // namespace

BootstrapSelection select_k_bootstrap(const Sample& sample, const BootstrapConfig& cfg) {
  const std::size_t n = sample.size();
  if (!(cfg.epsilon > 0.0 && cfg.epsilon < 0.5))
    throw ConfigError("select_k_bootstrap: epsilon must lie in (0, 1/2)");
  if (cfg.replicates < 100)
    throw ConfigError("select_k_bootstrap: require at least 100 replicates");

  std::vector<std::size_t> candidates = cfg.n1_candidates;
  if (candidates.empty()) {
    for (double e : {0.95, 0.9, 0.85, 0.8}) {
      const auto n1 = static_cast<std::size_t>(
          std::ceil(std::pow(static_cast<double>(n), e)));
      if (n1 < n) candidates.push_back(n1);
    }
  }
  if (candidates.empty())
    throw ConfigError("select_k_bootstrap: no usable n1 candidate");

  BootstrapSelection best;
  double best_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    const std::size_t n1 = candidates[c];
    if (n1 >= n) throw ConfigError("select_k_bootstrap: n1 must be < n");
    const auto n2 = static_cast<std::size_t>(
        static_cast<double>(n1) * static_cast<double>(n1) / static_cast<double>(n));
    if (n2 < 10) throw ConfigError("select_k_bootstrap: n2 = [n1^2/n] below the minimum of 10");

    const std::uint64_t base1 = (static_cast<std::uint64_t>(2 * c) << 40);
    const std::uint64_t base2 = (static_cast<std::uint64_t>(2 * c + 1) << 40);
    const MseCurve c1 = bootstrap_curve(sample.values(), n1, cfg.replicates, cfg.seed, base1);
    const MseCurve c2 = bootstrap_curve(sample.values(), n2, cfg.replicates, cfg.seed, base2);

    const double ratio = c1.minval * c1.minval / c2.minval;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best.n1 = n1;
      best.n2 = n2;
      best.k0_n1 = c1.argmin;
      best.k0_n2 = c2.argmin;
      best.q_ratio = ratio;
    }
  }

  const double k01 = static_cast<double>(best.k0_n1);
  const double k02 = static_cast<double>(best.k0_n2);
  const double ln1 = std::log(static_cast<double>(best.n1));
  const double lk1 = std::log(k01);
  const double k_hat = k01 * k01 / k02 *
                       std::pow(2.0 * ln1 / lk1 - 1.0, 2.0 * (lk1 / ln1 - 1.0));
  if (!std::isfinite(k_hat))
    throw SelectionError("select_k_bootstrap: selector formula not finite");
  best.k = std::clamp<std::size_t>(static_cast<std::size_t>(k_hat), 2, n - 1);
  return best;
}

}  // namespace tailrisk
