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

#include "tailrisk/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace tailrisk {

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool row_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (in_quotes) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.push_back(ch);
      }
      continue;
    }
    switch (ch) {
      case '"':
        in_quotes = true;
        row_started = true;
        break;
      case ',':
        row.push_back(std::move(field));
        field.clear();
        row_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (row_started || !field.empty()) {
          row.push_back(std::move(field));
          field.clear();
          rows.push_back(std::move(row));
          row.clear();
        }
        row_started = false;
        break;
      default:
        field.push_back(ch);
        row_started = true;
        break;
    }
  }
  if (in_quotes) throw IoError("parse_csv: unterminated quoted field");
  if (row_started || !field.empty()) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

std::size_t resolve_column(const std::vector<std::string>& header, const std::string& sel) {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == sel) return i;
  // fall back to a 0-based index
  if (!sel.empty() && std::all_of(sel.begin(), sel.end(),
                                  [](unsigned char c) { return std::isdigit(c); })) {
    const std::size_t idx = std::stoul(sel);
    if (idx < header.size()) return idx;
  }
  throw IoError("column '" + sel + "' not found in header");
}

bool parse_number(const std::string& s, double* out) {
  if (s.empty()) return false;
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end != '\0' && std::isspace(static_cast<unsigned char>(*end))) ++end;
  if (end == begin || (end && *end != '\0')) return false;
  *out = v;
  return true;
}

std::vector<std::vector<double>> load_columns(const DatasetConfig& cfg,
                                              std::size_t n_cols, LoadReport* report) {
  std::ifstream in(cfg.path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + cfg.path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  const auto rows = parse_csv(buf.str());
  if (rows.empty()) throw IoError("'" + cfg.path + "': empty file");
  const auto& header = rows.front();

  if (cfg.columns.size() != n_cols)
    throw IoError("expected " + std::to_string(n_cols) + " column selector(s)");
  std::vector<std::size_t> cols;
  for (const auto& sel : cfg.columns) cols.push_back(resolve_column(header, sel));
  std::vector<std::size_t> filter_cols;
  for (const auto& [sel, value] : cfg.row_filters) {
    (void)value;
    filter_cols.push_back(resolve_column(header, sel));
  }

  LoadReport rep;
  std::vector<std::vector<double>> out(n_cols);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    ++rep.rows_read;

    bool keep = true;
    for (std::size_t f = 0; f < filter_cols.size(); ++f) {
      if (filter_cols[f] >= row.size() || row[filter_cols[f]] != cfg.row_filters[f].second) {
        keep = false;
        break;
      }
    }
    if (!keep) {
      ++rep.dropped_by_filter;
      continue;
    }

    std::vector<double> vals(n_cols);
    bool numeric = true;
    for (std::size_t c = 0; c < n_cols; ++c) {
      if (cols[c] >= row.size() || !parse_number(row[cols[c]], &vals[c])) {
        numeric = false;
        break;
      }
    }
    if (!numeric) {
      ++rep.dropped_non_numeric;
      continue;
    }

    for (std::size_t c = 0; c < n_cols && keep; ++c) {
      if (c < cfg.min_filters.size() && cfg.min_filters[c] && vals[c] < *cfg.min_filters[c])
        keep = false;
    }
    if (!keep) {
      ++rep.dropped_by_filter;
      continue;
    }

    for (std::size_t c = 0; c < n_cols; ++c) {
      if (c < cfg.shifts.size()) vals[c] += cfg.shifts[c];
      out[c].push_back(vals[c]);
    }
    ++rep.rows_kept;
  }
  if (rep.rows_kept == 0) throw IoError("'" + cfg.path + "': no rows left after filtering");
  if (report) *report = rep;
  return out;
}

}  // namespace

Sample load_univariate(const DatasetConfig& cfg, LoadReport* report) {
  auto cols = load_columns(cfg, 1, report);
  return Sample(std::move(cols[0]));
}

BivariateSample load_bivariate(const DatasetConfig& cfg, LoadReport* report) {
  auto cols = load_columns(cfg, 2, report);
  std::vector<std::array<double, 2>> pairs(cols[0].size());
  for (std::size_t i = 0; i < pairs.size(); ++i) pairs[i] = {cols[0][i], cols[1][i]};
  return BivariateSample(std::move(pairs));
}

}  // namespace tailrisk
