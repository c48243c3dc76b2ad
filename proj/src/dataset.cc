/*
 * Copyright 2026 The clustrec Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "clustrec/dataset.hpp"

#include <cassert>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_map>

#include "clustrec/error.hpp"

namespace clustrec {
namespace {

std::string Trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) {
    --e;
  }
  return std::string(s.substr(b, e - b));
}

// Splits one CSV record. Double quotes group a field; "" inside quotes is a
// literal quote.
std::vector<std::string> SplitRecord(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
      was_quoted = true;
    } else if (c == ',') {
      fields.push_back(was_quoted ? current : Trim(current));
      current.clear();
      was_quoted = false;
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(was_quoted ? current : Trim(current));
  return fields;
}

bool IsMissingToken(const std::string& s) {
  return s.empty() || s == "NaN" || s == "nan" || s == "?";
}

std::optional<double> ParseNumber(const std::string& s) {
  double v = 0.0;
  const char* begin = s.data();
  const char* end = s.data() + s.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

}  // namespace

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string Provenance::ToText() const {
  std::ostringstream out;
  out << "# provenance\n";
  for (const auto& a : actions) {
    out << a.column << '\t' << a.action << '\t' << a.detail << '\n';
  }
  return out.str();
}

RawDataset ParseCsv(const std::string& name, const std::string& text,
                    const SchemaOverrides& schema) {
  RawDataset raw;
  raw.name = name;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  std::size_t data_row = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (Trim(line).empty()) continue;
    auto fields = SplitRecord(line);
    if (!have_header) {
      for (auto& f : fields) raw.columns.push_back({f, ColumnKind::kNumeric});
      have_header = true;
      continue;
    }
    if (fields.size() != raw.columns.size()) {
      throw ParseError(data_row, std::min(fields.size(), raw.columns.size()),
                       "expected " + std::to_string(raw.columns.size()) +
                           " fields, found " + std::to_string(fields.size()));
    }
    std::vector<Cell> row;
    row.reserve(fields.size());
    for (auto& f : fields) {
      if (IsMissingToken(f)) {
        row.emplace_back(std::nullopt);
      } else {
        row.emplace_back(std::move(f));
      }
    }
    raw.rows.push_back(std::move(row));
    ++data_row;
  }
  if (!have_header) {
    throw Error(ErrorCode::kParse, name + ": missing header row");
  }
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    auto& col = raw.columns[c];
    if (auto it = schema.find(col.name); it != schema.end()) {
      col.kind = it->second;
      continue;
    }
    bool numeric = true;
    for (const auto& row : raw.rows) {
      if (row[c] && !ParseNumber(*row[c])) {
        numeric = false;
        break;
      }
    }
    col.kind = numeric ? ColumnKind::kNumeric : ColumnKind::kNominal;
  }
  return raw;
}

RawDataset LoadCsv(const std::string& path, const SchemaOverrides& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIo, "read failed: " + path);
  return ParseCsv(std::filesystem::path(path).stem().string(), buffer.str(),
                  schema);
}

std::vector<int> EncodeNominal(const std::vector<std::string>& values) {
  std::unordered_map<std::string, int> codes;
  std::vector<int> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    auto [it, inserted] = codes.emplace(v, static_cast<int>(codes.size()));
    out.push_back(it->second);
  }
  return out;
}

NumericDataset Preprocess(const RawDataset& raw) {
  const std::size_t n = raw.num_rows();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidParams,
                raw.name + ": preprocessing needs at least two rows");
  }
  NumericDataset out;
  out.name = raw.name;
  std::vector<std::vector<double>> kept_columns;

  for (std::size_t c = 0; c < raw.num_columns(); ++c) {
    const auto& spec = raw.columns[c];
    if (spec.kind == ColumnKind::kLabel) {
      out.provenance.dropped.push_back(spec.name);
      out.provenance.actions.push_back({spec.name, "dropped_label", ""});
      continue;
    }

    std::vector<std::optional<double>> values(n);
    std::size_t missing = 0;
    std::set<std::string> distinct_raw;
    std::set<double> distinct_num;
    bool all_integer = true;

    if (spec.kind == ColumnKind::kNominal) {
      std::vector<std::string> present;
      for (const auto& row : raw.rows) {
        if (row[c]) present.push_back(*row[c]);
      }
      const auto codes = EncodeNominal(present);
      std::size_t next = 0;
      for (std::size_t r = 0; r < n; ++r) {
        if (raw.rows[r][c]) {
          values[r] = codes[next++];
          distinct_raw.insert(*raw.rows[r][c]);
        } else {
          ++missing;
        }
      }
      out.provenance.actions.push_back(
          {spec.name, "encoded_nominal",
           std::to_string(distinct_raw.size()) + " symbols"});
    } else {
      for (std::size_t r = 0; r < n; ++r) {
        const auto& cell = raw.rows[r][c];
        if (!cell) {
          ++missing;
          continue;
        }
        auto v = ParseNumber(*cell);
        if (!v) {
          throw ParseError(r, c, "non-numeric value '" + *cell +
                                     "' in numeric column " + spec.name);
        }
        values[r] = *v;
        distinct_num.insert(*v);
        if (std::floor(*v) != *v) all_integer = false;
      }
    }

    const std::size_t distinct = spec.kind == ColumnKind::kNominal
                                     ? distinct_raw.size()
                                     : distinct_num.size();
    auto drop = [&](const char* action, std::string detail) {
      out.provenance.dropped.push_back(spec.name);
      out.provenance.actions.push_back({spec.name, action, std::move(detail)});
    };

    if (distinct <= 1) {
      drop("dropped_constant", "");
      continue;
    }
    // Identifier-like columns: one distinct value per instance. Real-valued
    // measurements are exempt, otherwise every continuous feature would go.
    const bool identifier_kind =
        spec.kind == ColumnKind::kNominal || (all_integer && n > 2);
    if (missing == 0 && distinct == n && identifier_kind) {
      drop("dropped_distinct", "");
      continue;
    }
    const double missing_fraction =
        static_cast<double>(missing) / static_cast<double>(n);
    if (missing_fraction > kMaxMissingFraction) {
      drop("dropped_missing", FormatDouble(missing_fraction));
      continue;
    }

    std::vector<double> column(n);
    if (missing > 0) {
      double sum = 0.0;
      for (const auto& v : values) {
        if (v) sum += *v;
      }
      const double mean = sum / static_cast<double>(n - missing);
      for (std::size_t r = 0; r < n; ++r) column[r] = values[r].value_or(mean);
      out.provenance.actions.push_back(
          {spec.name, "imputed_mean",
           std::to_string(missing) + " cells with " + FormatDouble(mean)});
    } else {
      for (std::size_t r = 0; r < n; ++r) column[r] = *values[r];
    }

    double lo = column[0], hi = column[0];
    for (double v : column) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    assert(hi > lo);
    const double span = hi - lo;
    for (double& v : column) v = (v - lo) / span;

    out.provenance.kept.push_back(spec.name);
    out.provenance.actions.push_back(
        {spec.name, "kept",
         "min=" + FormatDouble(lo) + " max=" + FormatDouble(hi)});
    out.feature_names.push_back(spec.name);
    kept_columns.push_back(std::move(column));
  }

  if (kept_columns.empty()) {
    throw Error(ErrorCode::kEmptyAfterPreprocess,
                raw.name + ": no column survived preprocessing");
  }
  out.matrix.resize(static_cast<Eigen::Index>(n),
                    static_cast<Eigen::Index>(kept_columns.size()));
  for (std::size_t c = 0; c < kept_columns.size(); ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      out.matrix(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          kept_columns[c][r];
    }
  }
  return out;
}

RawDataset AsRaw(const NumericDataset& d) {
  RawDataset raw;
  raw.name = d.name;
  for (const auto& f : d.feature_names) {
    raw.columns.push_back({f, ColumnKind::kNumeric});
  }
  for (Eigen::Index r = 0; r < d.n(); ++r) {
    std::vector<Cell> row;
    for (Eigen::Index c = 0; c < d.m(); ++c) {
      row.emplace_back(FormatDouble(d.matrix(r, c)));
    }
    raw.rows.push_back(std::move(row));
  }
  return raw;
}

}  // namespace clustrec
