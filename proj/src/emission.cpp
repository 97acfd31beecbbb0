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

#include "tailrisk/emission.hpp"

#include <cstdio>

#include "tailrisk/errors.hpp"

#include <json.hpp>

namespace tailrisk {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void PlotEmission::meta(const std::string& key, const std::string& value) {
  metadata_.emplace_back(key, value);
}

void PlotEmission::meta(const std::string& key, double value) {
  metadata_.emplace_back(key, format_double(value));
}

void PlotEmission::meta(const std::string& key, std::size_t value) {
  metadata_.emplace_back(key, std::to_string(value));
}

void PlotEmission::series(const std::string& name, std::vector<double> values) {
  if (!series_.empty() && values.size() != series_.front().second.size())
    throw ConfigError("PlotEmission: series lengths differ");
  series_.emplace_back(name, std::move(values));
}

void PlotEmission::write(std::ostream& os, Format format) const {
  if (format == Format::Csv) {
    for (const auto& [k, v] : metadata_) os << "# " << k << "=" << v << "\n";
    for (std::size_t c = 0; c < series_.size(); ++c)
      os << (c ? "," : "") << series_[c].first;
    os << "\n";
    const std::size_t rows = series_.empty() ? 0 : series_.front().second.size();
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < series_.size(); ++c)
        os << (c ? "," : "") << format_double(series_[c].second[r]);
      os << "\n";
    }
    return;
  }
  nlohmann::ordered_json j;
  j["metadata"] = nlohmann::ordered_json::object();
  for (const auto& [k, v] : metadata_) j["metadata"][k] = v;
  j["series"] = nlohmann::ordered_json::object();
  for (const auto& [name, vals] : series_) j["series"][name] = vals;
  os << j.dump(2) << "\n";
}

}  // namespace tailrisk
