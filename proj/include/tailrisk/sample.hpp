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

#ifndef TAILRISK_SAMPLE_HPP_
#define TAILRISK_SAMPLE_HPP_

#include <algorithm>
#include <cstddef>
#include <utility>
#include <vector>

#include "tailrisk/errors.hpp"

namespace tailrisk {

// Immutable univariate sample kept in ascending order. All tail statistics
// index order statistics out of this container; values are safe to share
// across threads once constructed.
class Sample {
 public:
  explicit Sample(std::vector<double> values) : sorted_(std::move(values)) {
    if (sorted_.empty()) throw DomainError("Sample: empty input");
    std::sort(sorted_.begin(), sorted_.end());
  }

  static Sample from_sorted(std::vector<double> values) {
    Sample s;
    s.sorted_ = std::move(values);
    if (s.sorted_.empty()) throw DomainError("Sample: empty input");
    return s;
  }

  std::size_t size() const { return sorted_.size(); }

  // i-th ascending order statistic, zero based (operator[](0) is the minimum).
  double operator[](std::size_t i) const { return sorted_[i]; }

  const std::vector<double>& values() const { return sorted_; }

 private:
  Sample() = default;
  std::vector<double> sorted_;
};

}  // namespace tailrisk

#endif  // TAILRISK_SAMPLE_HPP_
