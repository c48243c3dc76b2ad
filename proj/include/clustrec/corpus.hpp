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
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "clustrec/dataset.hpp"

namespace clustrec {

enum class Regime {
  kBlobs,      // separated isotropic Gaussian blobs
  kElongated,  // stretched clusters and chains of touching blobs
  kNoisy,      // dense clusters over uniform background noise
};

std::string_view RegimeName(Regime r);

struct CorpusSpec {
  int datasets = 36;
  int min_rows = 60;
  int max_rows = 120;
  int min_dims = 2;
  int max_dims = 5;
  int min_clusters = 2;
  int max_clusters = 5;
  std::uint64_t seed = 7;
};

struct GeneratedDataset {
  RawDataset raw;  // numeric features x0..x{m-1} plus a "class" label column
  Regime regime;
};

// Dataset i uses regime i mod 3 and Rng(MixSeed(seed, i)).
std::vector<GeneratedDataset> GenerateCorpus(const CorpusSpec& spec);

// Writes every dataset as <dir>/<name>.csv.
void WriteCorpus(const std::vector<GeneratedDataset>& corpus,
                 const std::filesystem::path& dir);

std::string ToCsv(const RawDataset& raw);

// Every *.csv in `dir`, sorted by file name.
std::vector<std::filesystem::path> ListCsvFiles(const std::filesystem::path& dir);

}  // namespace clustrec
