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

#ifndef TAILRISK_DATASET_HPP_
#define TAILRISK_DATASET_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tailrisk/sample.hpp"
#include "tailrisk/tail_dependence.hpp"

namespace tailrisk {

// CSV ingestion configuration. Columns are addressed by header name first; a
// selector that matches no header but parses as a nonnegative integer is
// treated as a 0-based column index. Order of operations per row: row_filters
// (string equality), then min_filters on the selected numeric columns, then
// shifts. Rows whose selected cells fail to parse as numbers are dropped and
// counted.
struct DatasetConfig {
  std::string path;
  std::vector<std::string> columns;                          // 1 (univariate) or 2
  std::vector<std::optional<double>> min_filters;            // per selected column
  std::vector<std::pair<std::string, std::string>> row_filters;
  std::vector<double> shifts;                                // per selected column
};

struct LoadReport {
  std::size_t rows_read = 0;
  std::size_t rows_kept = 0;
  std::size_t dropped_by_filter = 0;
  std::size_t dropped_non_numeric = 0;
};

Sample load_univariate(const DatasetConfig& cfg, LoadReport* report = nullptr);
BivariateSample load_bivariate(const DatasetConfig& cfg, LoadReport* report = nullptr);

// RFC-style CSV: comma separated, double-quote quoting with "" escapes,
// header row required. Exposed for tests.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace tailrisk

#endif  // TAILRISK_DATASET_HPP_
