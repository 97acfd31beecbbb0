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

#ifndef TAILRISK_EMISSION_HPP_
#define TAILRISK_EMISSION_HPP_

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace tailrisk {

// Plot-ready output: named numeric series of equal length plus the metadata
// needed to reproduce the figure (seed, k, alpha, ...). CSV carries metadata
// as '#'-prefixed header comments and prints doubles with 17 significant
// digits, so a re-parse restores the values bit for bit; JSON mirrors the
// same content for automation.
class PlotEmission {
 public:
  enum class Format { Csv, Json };

  void meta(const std::string& key, const std::string& value);
  void meta(const std::string& key, double value);
  void meta(const std::string& key, std::size_t value);
  void series(const std::string& name, std::vector<double> values);

  void write(std::ostream& os, Format format) const;

 private:
  std::vector<std::pair<std::string, std::string>> metadata_;
  std::vector<std::pair<std::string, std::vector<double>>> series_;
};

// 17-significant-digit representation; round-trips through strtod.
std::string format_double(double v);

}  // namespace tailrisk

#endif  // TAILRISK_EMISSION_HPP_
