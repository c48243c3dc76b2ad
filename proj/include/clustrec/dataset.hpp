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

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace clustrec {

enum class ColumnKind { kNumeric, kNominal, kLabel };

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::kNumeric;
};

// A cell is either missing (nullopt) or the raw text of the value.
using Cell = std::optional<std::string>;

struct RawDataset {
  std::string name;
  std::vector<ColumnSpec> columns;
  std::vector<std::vector<Cell>> rows;  // row-major, each of columns.size()

  std::size_t num_rows() const { return rows.size(); }
  std::size_t num_columns() const { return columns.size(); }
};

struct ColumnAction {
  std::string column;
  // One of: dropped_label, dropped_constant, dropped_distinct,
  // dropped_missing, encoded_nominal, imputed_mean, kept.
  std::string action;
  std::string detail;
};

struct Provenance {
  std::vector<std::string> kept;
  std::vector<std::string> dropped;
  std::vector<ColumnAction> actions;

  // Structured text record, one "column<TAB>action<TAB>detail" line per action.
  std::string ToText() const;
};

struct NumericDataset {
  std::string name;
  Eigen::MatrixXd matrix;  // n x m, every entry in [0, 1]
  std::vector<std::string> feature_names;
  Provenance provenance;

  Eigen::Index n() const { return matrix.rows(); }
  Eigen::Index m() const { return matrix.cols(); }
};

using SchemaOverrides = std::map<std::string, ColumnKind>;

// Reads a comma-separated file with a mandatory header row. Empty cells and
// the literals "NaN" and "?" are missing. Column kinds are inferred (every
// non-missing value parses as a number => numeric) unless overridden.
RawDataset LoadCsv(const std::string& path,
                   const SchemaOverrides& schema = {});

// Same as LoadCsv over an in-memory document.
RawDataset ParseCsv(const std::string& name, const std::string& text,
                    const SchemaOverrides& schema = {});

// First distinct symbol maps to 0, the next new one to 1, and so on.
std::vector<int> EncodeNominal(const std::vector<std::string>& values);

// Fraction of missing cells above which a column is dropped.
inline constexpr double kMaxMissingFraction = 0.4;

// Label removal, nominal encoding, constant / identifier / mostly-missing
// column removal, mean imputation and min-max scaling, in that order.
NumericDataset Preprocess(const RawDataset& raw);

// Wraps an already preprocessed dataset back into raw form (all columns
// numeric). Preprocess(AsRaw(x)) reproduces x.
RawDataset AsRaw(const NumericDataset& d);

// Shortest round-trip decimal form of a double.
std::string FormatDouble(double v);

}  // namespace clustrec
