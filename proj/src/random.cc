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

#include "clustrec/random.hpp"

#include <cmath>

#include "clustrec/error.hpp"

namespace clustrec {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kIo: return "IoError";
    case ErrorCode::kParse: return "ParseError";
    case ErrorCode::kEmptyAfterPreprocess: return "EmptyAfterPreprocess";
    case ErrorCode::kInvalidParams: return "InvalidParams";
    case ErrorCode::kAllNoise: return "AllNoise";
    case ErrorCode::kNoValidConfiguration: return "NoValidConfiguration";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kLengthMismatch: return "LengthMismatch";
    case ErrorCode::kMismatchedAxes: return "MismatchedAxes";
    case ErrorCode::kSingleClassCorpus: return "SingleClassCorpus";
    case ErrorCode::kDegenerateGroups: return "DegenerateGroups";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kTooFewPairs: return "TooFewPairs";
    case ErrorCode::kTooFewSamples: return "TooFewSamples";
    case ErrorCode::kCorruptArtifact: return "CorruptArtifact";
    case ErrorCode::kConfig: return "ConfigError";
    case ErrorCode::kMissingArtifact: return "MissingArtifact";
    case ErrorCode::kInternal: return "InternalError";
  }
  return "UnknownError";
}

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t HashString(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b) {
  return SplitMix64(a ^ (SplitMix64(b) + 0x632be59bd9b4e019ULL + (a << 6) +
                         (a >> 2)));
}

std::size_t Rng::UniformInt(std::size_t n) {
  // Lemire's multiply-shift with rejection; unbiased.
  const std::uint64_t range = n;
  unsigned __int128 m = static_cast<unsigned __int128>(engine_()) * range;
  std::uint64_t low = static_cast<std::uint64_t>(m);
  if (low < range) {
    const std::uint64_t threshold = (0 - range) % range;
    while (low < threshold) {
      m = static_cast<unsigned __int128>(engine_()) * range;
      low = static_cast<std::uint64_t>(m);
    }
  }
  return static_cast<std::size_t>(m >> 64);
}

double Rng::Normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  while (u <= 0.0) u = Uniform();
  const double v = Uniform();
  const double r = std::sqrt(-2.0 * std::log(u));
  spare_ = r * std::sin(2.0 * M_PI * v);
  has_spare_ = true;
  return r * std::cos(2.0 * M_PI * v);
}

std::size_t Rng::Categorical(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) total += w;
  const double target = Uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    acc += weights[i];
    if (target < acc) return i;
  }
  // Rounding at the top end: return the last index with positive weight.
  for (std::size_t i = weights.size(); i > 0; --i) {
    if (weights[i - 1] > 0.0) return i - 1;
  }
  return 0;
}

}  // namespace clustrec
