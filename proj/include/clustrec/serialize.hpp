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

// Shared helpers for the artifact formats.
//
// Dense matrix block (little-endian):
//   bytes 0..7    magic "CRMATRIX"
//   bytes 8..15   rows, uint64
//   bytes 16..23  cols, uint64
//   then rows*cols IEEE-754 binary64 values, row-major.
// Text documents keep doubles in shortest round-trip decimal form, so every
// format reproduces its values bit for bit.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace clustrec {

std::vector<std::string> Split(std::string_view s, char sep);
// Splits on '\n'; a trailing newline does not produce an empty last line.
std::vector<std::string> SplitLines(std::string_view s);

// Strict parsers; throw CorruptArtifact on malformed or partial input.
double ParseDouble(std::string_view s);
long long ParseInt(std::string_view s);
std::uint64_t ParseU64(std::string_view s);

// Returns s, or throws InvalidParams if it contains a tab, newline or '|'.
const std::string& CheckField(const std::string& s);

void AppendMatrix(std::string& out, const Eigen::MatrixXd& m);
// Reads a block at `pos` and advances it.
Eigen::MatrixXd ReadMatrix(std::string_view data, std::size_t& pos);

std::string Sha256Hex(std::string_view data);

}  // namespace clustrec
