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

#ifndef TAILRISK_NORMAL_HPP_
#define TAILRISK_NORMAL_HPP_

namespace tailrisk {

// Standard normal cdf.
double normal_cdf(double x);

// Standard normal quantile for p in (0,1); normal_quantile(0.5) == 0 exactly.
// Acklam's rational approximation polished by one Halley step on erfc, good
// to full double precision for practical p.
double normal_quantile(double p);

}  // namespace tailrisk

#endif  // TAILRISK_NORMAL_HPP_
