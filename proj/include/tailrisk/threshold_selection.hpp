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

#ifndef TAILRISK_THRESHOLD_SELECTION_HPP_
#define TAILRISK_THRESHOLD_SELECTION_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "tailrisk/sample.hpp"

namespace tailrisk {

// Sequential selector tuning constants; defaults follow the recommendation
// r_n = 2.5 gamma_hat n^(1/4), xi = 0.7, lambda = 0.8.
struct SequentialConfig {
  double r_factor = 2.5;
  double xi = 0.7;
  double lambda = 0.8;
};

struct KbarResult {
  std::size_t k = 0;  // n-1 when not found
  bool found = false;
};

// Smallest k in {1,..,n-1} such that max_{1<=i<=k} sqrt(i) |gamma_i - gamma_k|
// exceeds r, where gamma_i is the Hill estimator with i+1 top order
// statistics. The trace overload evaluates the same definition on a given
// estimator path (hill_trace[i-1] = gamma_i); entries that are NaN are
// skipped.
KbarResult kbar(const std::vector<double>& hill_trace, double r);
KbarResult kbar(const Sample& sample, double r);

// Log-ratio estimate of the second-order rate from the deviation maxima of a
// Hill path, read at [lambda * kbar] against kbar:
//   rho = log(maxdev([lambda kbar]) / maxdev(kbar)) / log(lambda) - 1/2.
// The sequential selector applies this internally; exposed as a diagnostic.
double rho_estimate(const std::vector<double>& hill_trace, std::size_t kbar_k, double lambda);

struct SequentialSelection {
  std::size_t k = 0;
  double pilot_gamma = 0.0;  // Hill at [2 sqrt(n+)]
  double r = 0.0;            // threshold r_n actually used
  double rho = 0.0;          // second-order rate estimate (1 after fallback)
  bool rho_fallback = false;
  std::size_t kbar_r = 0;
  std::size_t kbar_r_xi = 0;
};

// Drees-Kaufmann sequential choice of the number of top order statistics
// minimizing the asymptotic MSE of the Hill estimator. Throws SelectionError
// when the stopping rule never fires; falls back to rho = 1 when the
// second-order rate estimate is nonpositive or non-finite. The result is
// clamped to [2, n-1].
SequentialSelection select_k_sequential(const Sample& sample,
                                        const SequentialConfig& cfg = {});

struct BootstrapConfig {
  double epsilon = 0.05;                    // n1 = O(n^(1-epsilon))
  std::vector<std::size_t> n1_candidates;   // empty: ceil(n^e), e in {.95,.9,.85,.8}
  std::size_t replicates = 500;             // B; not fixed by the method itself
  std::uint64_t seed = 0;
};

struct BootstrapSelection {
  std::size_t k = 0;
  std::size_t n1 = 0, n2 = 0;
  std::size_t k0_n1 = 0, k0_n2 = 0;
  double q_ratio = 0.0;  // Q(n1,k0*(n1))^2 / Q(n2,k0*(n2)) at the chosen n1
};

// Danielsson et al. bootstrap choice of k: for each candidate subsample size
// n1 (and n2 = [n1^2/n]) it estimates E*[(M* - 2 gamma*^2)^2 | data] over B
// resamples drawn with replacement, minimizes over k in {[log n_i],..,
// [n_i/log n_i]}, picks the n1 minimizing Q(n1)^2/Q(n2) and plugs the two
// minimizers into the closed-form expression for the MSE-optimal k. Each
// replicate owns an RNG stream derived from (seed, candidate, replicate), so
// the outcome is independent of evaluation order. Clamped to [2, n-1].
BootstrapSelection select_k_bootstrap(const Sample& sample, const BootstrapConfig& cfg);

}  // namespace tailrisk

#endif  // TAILRISK_THRESHOLD_SELECTION_HPP_
