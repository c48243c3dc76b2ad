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

#include "clustrec/store.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include "clustrec/error.hpp"
#include "clustrec/serialize.hpp"

namespace fs = std::filesystem;

namespace clustrec {
namespace {

constexpr std::string_view kMagic = "clustrec-artifact\t1\t";
constexpr std::string_view kExtension = ".art";

bool ValidComponent(std::string_view s) {
  if (s.empty() || s == "." || s == "..") return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
           (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
  });
}

std::string ReadFile(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

std::string ArtifactKey::ToString() const {
  return kind + "/" + identifier + "/" + config_hash;
}

void ArtifactKey::Validate() const {
  if (std::find(std::begin(kArtifactKinds), std::end(kArtifactKinds), kind) ==
      std::end(kArtifactKinds)) {
    throw Error(ErrorCode::kInvalidParams, "unknown artifact kind '" + kind + "'");
  }
  if (!ValidComponent(identifier) || !ValidComponent(config_hash)) {
    throw Error(ErrorCode::kInvalidParams,
                "artifact key component must match [A-Za-z0-9._-]+: " + ToString());
  }
}

ArtifactStore::ArtifactStore(fs::path root) : root_(std::move(root)) {}

fs::path ArtifactStore::ResolveRoot(const fs::path& fallback) {
  if (const char* env = std::getenv("CLUSTREC_STORE"); env && *env) return env;
  return fallback;
}

fs::path ArtifactStore::PathOf(const ArtifactKey& key) const {
  key.Validate();
  return root_ / key.kind / key.identifier /
         (key.config_hash + std::string(kExtension));
}

fs::path ArtifactStore::Put(const ArtifactKey& key,
                            std::string_view payload) const {
  const fs::path target = PathOf(key);
  std::error_code ec;
  fs::create_directories(target.parent_path(), ec);
  if (ec) {
    throw Error(ErrorCode::kIo, "cannot create " + target.parent_path().string() +
                                    ": " + ec.message());
  }
  static std::atomic<unsigned long> counter{0};
  std::ostringstream tmp_name;
  tmp_name << ".tmp." << ::getpid() << "."
           << std::hash<std::thread::id>{}(std::this_thread::get_id()) << "."
           << counter++;
  const fs::path tmp = target.parent_path() / tmp_name.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << kMagic << payload.size() << '\t' << Sha256Hex(payload) << '\n';
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    out.flush();
    if (!out) {
      fs::remove(tmp, ec);
      throw Error(ErrorCode::kIo, "cannot write " + tmp.string());
    }
  }
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::kIo, "cannot rename into " + target.string());
  }
  return target;
}

std::optional<std::string> ArtifactStore::Get(const ArtifactKey& key) const {
  const fs::path p = PathOf(key);
  if (!fs::exists(p)) return std::nullopt;
  const std::string data = ReadFile(p);
  auto corrupt = [&](const std::string& why) {
    return Error(ErrorCode::kCorruptArtifact, key.ToString() + ": " + why);
  };
  const std::size_t eol = data.find('\n');
  if (eol == std::string::npos || data.compare(0, kMagic.size(), kMagic) != 0) {
    throw corrupt("bad header");
  }
  const auto fields =
      Split(std::string_view(data).substr(kMagic.size(), eol - kMagic.size()), '\t');
  if (fields.size() != 2) throw corrupt("bad header");
  std::uint64_t size = 0;
  try {
    size = ParseU64(fields[0]);
  } catch (const Error&) {
    throw corrupt("bad size");
  }
  std::string payload = data.substr(eol + 1);
  if (payload.size() != size) throw corrupt("size mismatch (truncated?)");
  if (Sha256Hex(payload) != fields[1]) throw corrupt("checksum mismatch");
  return payload;
}

bool ArtifactStore::Contains(const ArtifactKey& key) const {
  return fs::exists(PathOf(key));
}

std::vector<std::string> ArtifactStore::List() const {
  std::vector<std::string> keys;
  if (!fs::exists(root_)) return keys;
  for (const auto& entry : fs::recursive_directory_iterator(root_)) {
    if (!entry.is_regular_file() || entry.path().extension() != kExtension) continue;
    const fs::path rel = fs::relative(entry.path(), root_);
    std::string s = rel.generic_string();
    s.resize(s.size() - kExtension.size());
    keys.push_back(std::move(s));
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

int ArtifactStore::Invalidate(std::string_view prefix) const {
  int removed = 0;
  for (const std::string& key : List()) {
    if (key.compare(0, prefix.size(), prefix) != 0) continue;
    std::error_code ec;
    if (fs::remove(root_ / (key + std::string(kExtension)), ec)) {
      ++removed;
    } else if (ec) {
      throw Error(ErrorCode::kIo, "cannot remove " + key + ": " + ec.message());
    }
  }
  return removed;
}

}  // namespace clustrec
