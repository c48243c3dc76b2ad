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

#include <stdexcept>
#include <string>
#include <string_view>

namespace clustrec {

enum class ErrorCode {
  kIo,
  kParse,
  kEmptyAfterPreprocess,
  kInvalidParams,
  kAllNoise,
  kNoValidConfiguration,
  kDimensionMismatch,
  kLengthMismatch,
  kMismatchedAxes,
  kSingleClassCorpus,
  kDegenerateGroups,
  kMissingEmbedding,
  kTooFewPairs,
  kTooFewSamples,
  kCorruptArtifact,
  kConfig,
  kMissingArtifact,
  kInternal,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure surfaced by the library. The code is the machine-readable
// part; what() carries the human-readable context.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the CSV reader; row and column are zero-based data coordinates
// (the header is not counted).
class ParseError : public Error {
 public:
  ParseError(std::size_t row, std::size_t col, const std::string& message)
      : Error(ErrorCode::kParse, "row " + std::to_string(row) + ", column " +
                                     std::to_string(col) + ": " + message),
        row_(row),
        col_(col) {}

  std::size_t row() const { return row_; }
  std::size_t col() const { return col_; }

 private:
  std::size_t row_;
  std::size_t col_;
};

}  // namespace clustrec
