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

#ifndef TAILRISK_RNG_HPP_
#define TAILRISK_RNG_HPP_

#include <cmath>
#include <cstdint>

namespace tailrisk {

// SplitMix64 generator (Steele, Lea & Flood 2014). Chosen because it is a
// tiny, well-known, splittable 64-bit generator: independent streams are
// derived by hashing (seed, stream) through the output function, so
// Monte-Carlo replicates can each own a stream and results do not depend on
// evaluation order or worker count. Identical seeds produce bit-identical
// draws within one build; cross-platform bit-exactness of downstream doubles
// is not promised.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  // Stream derivation: mixes the stream index into the seed through two
  // rounds of the output function. Streams with distinct indices are
  // statistically independent for practical purposes.
  static Rng derive(std::uint64_t seed, std::uint64_t stream) {
    Rng mixer(seed);
    std::uint64_t a = mixer.next_u64();
    mixer.state_ = a ^ (stream * 0x9e3779b97f4a7c15ULL);
    mixer.next_u64();
    return mixer;
  }

  std::uint64_t next_u64() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform on the open interval (0,1); never returns 0 or 1, so logs and
  // negative powers of the result are always finite.
  double next_uniform() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // Standard normal via Box-Muller; the second variate of each pair is
  // cached, keeping the stream consumption deterministic.
  double next_normal() {
    if (have_cached_) {
      have_cached_ = false;
      return cached_;
    }
    double u1 = next_uniform();
    double u2 = next_uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double a = 6.283185307179586476925286766559 * u2;
    cached_ = r * std::sin(a);
    have_cached_ = true;
    return r * std::cos(a);
  }

 private:
  std::uint64_t state_;
  double cached_ = 0.0;
  bool have_cached_ = false;
};

}  // namespace tailrisk

#endif  // TAILRISK_RNG_HPP_
