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

#include "clustrec/serialize.hpp"

#include <openssl/evp.h>

#include <bit>
#include <charconv>
#include <cstring>
#include <limits>

#include "clustrec/error.hpp"

namespace clustrec {
namespace {

constexpr char kMatrixMagic[8] = {'C', 'R', 'M', 'A', 'T', 'R', 'I', 'X'};

void PutU64(std::string& out, std::uint64_t v) {
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::uint64_t GetU64(std::string_view data, std::size_t& pos) {
  if (pos > data.size() || data.size() - pos < 8) {
    throw Error(ErrorCode::kCorruptArtifact, "matrix block truncated");
  }
  std::uint64_t v = 0;
  for (int b = 0; b < 8; ++b) {
    v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data[pos + b]))
         << (8 * b);
  }
  pos += 8;
  return v;
}

template <typename T>
T ParseNumber(std::string_view s, const char* what) {
  T v{};
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || end != s.data() + s.size()) {
    throw Error(ErrorCode::kCorruptArtifact,
                std::string("malformed ") + what + " '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

std::vector<std::string> Split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.emplace_back(s.substr(start));
      return parts;
    }
    parts.emplace_back(s.substr(start, at - start));
    start = at + 1;
  }
}

std::vector<std::string> SplitLines(std::string_view s) {
  if (!s.empty() && s.back() == '\n') s.remove_suffix(1);
  if (s.empty()) return {};
  return Split(s, '\n');
}

double ParseDouble(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  return ParseNumber<double>(s, "number");
}

long long ParseInt(std::string_view s) {
  return ParseNumber<long long>(s, "integer");
}

std::uint64_t ParseU64(std::string_view s) {
  return ParseNumber<std::uint64_t>(s, "unsigned integer");
}

const std::string& CheckField(const std::string& s) {
  if (s.find_first_of("\t\n|") != std::string::npos) {
    throw Error(ErrorCode::kInvalidParams,
                "name '" + s + "' contains a tab, newline or '|'");
  }
  return s;
}

void AppendMatrix(std::string& out, const Eigen::MatrixXd& m) {
  out.append(kMatrixMagic, sizeof(kMatrixMagic));
  PutU64(out, static_cast<std::uint64_t>(m.rows()));
  PutU64(out, static_cast<std::uint64_t>(m.cols()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      PutU64(out, std::bit_cast<std::uint64_t>(m(i, j)));
    }
  }
}

Eigen::MatrixXd ReadMatrix(std::string_view data, std::size_t& pos) {
  if (pos > data.size() || data.size() - pos < sizeof(kMatrixMagic) ||
      std::memcmp(data.data() + pos, kMatrixMagic, sizeof(kMatrixMagic)) != 0) {
    throw Error(ErrorCode::kCorruptArtifact, "missing matrix block");
  }
  pos += sizeof(kMatrixMagic);
  const std::uint64_t rows = GetU64(data, pos);
  const std::uint64_t cols = GetU64(data, pos);
  if (cols != 0 && rows > (data.size() - pos) / 8 / cols) {
    throw Error(ErrorCode::kCorruptArtifact, "matrix block truncated");
  }
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows),
                    static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      m(i, j) = std::bit_cast<double>(GetU64(data, pos));
    }
  }
  return m;
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw Error(ErrorCode::kInternal, "SHA-256 failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    hex.push_back(kHex[digest[i] >> 4]);
    hex.push_back(kHex[digest[i] & 0xf]);
  }
  return hex;
}

}  // namespace clustrec
