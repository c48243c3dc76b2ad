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

// On-disk artifact cache.
//
// Layout: <root>/<kind>/<identifier>/<config-hash>.art
// Each file is a header line
//   clustrec-artifact<TAB>1<TAB><payload bytes><TAB><sha256 of payload hex>
// followed by the payload. Files are written to a temporary name in the same
// directory and renamed into place.

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace clustrec {

inline constexpr std::string_view kArtifactKinds[] = {
    "perf_table", "graph",        "node_features", "embedding",
    "gcnn_model", "ranker_model", "report",
};

struct ArtifactKey {
  std::string kind;
  std::string identifier;   // dataset and/or measure, [A-Za-z0-9._-]+
  std::string config_hash;  // hex

  // "<kind>/<identifier>/<config_hash>"
  std::string ToString() const;
  void Validate() const;
};

class ArtifactStore {
 public:
  explicit ArtifactStore(std::filesystem::path root);

  // CLUSTREC_STORE when set, else `fallback`.
  static std::filesystem::path ResolveRoot(const std::filesystem::path& fallback);

  const std::filesystem::path& root() const { return root_; }

  std::filesystem::path Put(const ArtifactKey& key, std::string_view payload) const;
  // Absent when the key was never stored; CorruptArtifact on checksum or
  // size mismatch.
  std::optional<std::string> Get(const ArtifactKey& key) const;
  bool Contains(const ArtifactKey& key) const;

  // Removes every artifact whose key string starts with `prefix`.
  int Invalidate(std::string_view prefix) const;
  // Sorted key strings.
  std::vector<std::string> List() const;

 private:
  std::filesystem::path PathOf(const ArtifactKey& key) const;

  std::filesystem::path root_;
};

}  // namespace clustrec
