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

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>
#include <vector>

namespace clustrec {

// Seed derivation. All stochastic components take a 64-bit seed and derive
// sub-seeds through MixSeed so that results are reproducible across runs and
// platforms.
std::uint64_t SplitMix64(std::uint64_t x);
std::uint64_t HashString(std::string_view s);  // FNV-1a, 64 bit.
std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b);

template <typename... Rest>
std::uint64_t MixSeed(std::uint64_t a, std::uint64_t b, Rest... rest) {
  return MixSeed(MixSeed(a, b), static_cast<std::uint64_t>(rest)...);
}

// mt19937_64 is fully specified by the standard; the distributions in <random>
// are not, so the conversions below are written out to keep sampled values
// identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(SplitMix64(seed)) {}

  std::uint64_t NextU64() { return engine_(); }

  // Uniform in [0, 1).
  double Uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }
  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform(); }

  // Uniform integer in [0, n).
  std::size_t UniformInt(std::size_t n);

  double Normal();

  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[UniformInt(i)]);
    }
  }

  // Index sampled with probability proportional to weights[i] (non-negative,
  // positive total).
  std::size_t Categorical(std::span<const double> weights);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace clustrec
