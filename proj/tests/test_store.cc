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

#include <cstdlib>

#include "doctest.h"

#include "clustrec/error.hpp"
#include "clustrec/serialize.hpp"
#include "clustrec/store.hpp"
#include "support.hpp"

using namespace clustrec;

TEST_CASE("put, get and list") {
  testing::TempDir dir("store");
  const ArtifactStore store(dir.path());
  const ArtifactKey key{"graph", "iris", "abc123"};
  CHECK_FALSE(store.Get(key).has_value());
  CHECK_FALSE(store.Contains(key));
  const std::string payload("binary\0\n\tbytes", 14);
  const auto path = store.Put(key, payload);
  CHECK(path == dir.path() / "graph" / "iris" / "abc123.art");
  CHECK(store.Contains(key));
  CHECK(*store.Get(key) == payload);
  store.Put(key, "replaced");
  CHECK(*store.Get(key) == "replaced");
  store.Put({"report", "x.Silhouette", "00"}, "r");
  CHECK(store.List() == std::vector<std::string>{"graph/iris/abc123", "report/x.Silhouette/00"});
  const std::string header = testing::ReadText(path).substr(0, testing::ReadText(path).find('\n'));
  CHECK(header == "clustrec-artifact\t1\t8\t" + Sha256Hex("replaced"));
}

TEST_CASE("truncated or edited artifacts are corrupt") {
  testing::TempDir dir("store");
  const ArtifactStore store(dir.path());
  const ArtifactKey key{"embedding", "Silhouette.d1", "ff"};
  const auto path = store.Put(key, "0123456789");
  const std::string full = testing::ReadText(path);
  for (const std::string& bad :
       {full.substr(0, full.size() - 3), full.substr(0, full.size() - 1) + "X",
        std::string("junk"), std::string()}) {
    testing::WriteText(path, bad);
    try {
      store.Get(key);
      FAIL("expected CorruptArtifact");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::kCorruptArtifact);
    }
  }
}

TEST_CASE("invalidate by prefix") {
  testing::TempDir dir("store");
  const ArtifactStore store(dir.path());
  store.Put({"graph", "a", "1"}, "x");
  store.Put({"graph", "b", "1"}, "x");
  store.Put({"node_features", "a", "1"}, "x");
  CHECK(store.Invalidate("graph/a") == 1);
  CHECK(store.List().size() == 2);
  CHECK(store.Invalidate("") == 2);
  CHECK(store.List().empty());
}

TEST_CASE("key validation") {
  testing::TempDir dir("store");
  const ArtifactStore store(dir.path());
  CHECK_THROWS_AS(store.Put({"nonsense", "a", "1"}, "x"), Error);
  CHECK_THROWS_AS(store.Put({"graph", "../up", "1"}, "x"), Error);
  CHECK_THROWS_AS(store.Put({"graph", "a", ""}, "x"), Error);
  CHECK(ArtifactKey{"graph", "a", "1"}.ToString() == "graph/a/1");
}

TEST_CASE("store root from the environment") {
  ::setenv("CLUSTREC_STORE", "/tmp/elsewhere", 1);
  CHECK(ArtifactStore::ResolveRoot("fallback") == "/tmp/elsewhere");
  ::unsetenv("CLUSTREC_STORE");
  CHECK(ArtifactStore::ResolveRoot("fallback") == "fallback");
}

TEST_CASE("serialization helpers") {
  Eigen::MatrixXd m(2, 3);
  m << 1, -0.0, 1e-300, 3.141592653589793, -2, 7;
  std::string buf = "prefix";
  AppendMatrix(buf, m);
  std::size_t pos = 6;
  const Eigen::MatrixXd back = ReadMatrix(buf, pos);
  CHECK(pos == buf.size());
  CHECK(back == m);
  CHECK(std::signbit(back(0, 1)));
  pos = 6;
  CHECK_THROWS_AS(ReadMatrix(std::string_view(buf).substr(0, buf.size() - 1), pos), Error);
  CHECK(ParseDouble("0.1") == 0.1);
  CHECK_THROWS_AS(ParseDouble("0.1x"), Error);
  CHECK_THROWS_AS(ParseInt(""), Error);
  CHECK(ParseU64("18446744073709551615") == 18446744073709551615ull);
  CHECK(SplitLines("a\nb\n") == std::vector<std::string>{"a", "b"});
  CHECK(Split("a\t\tb", '\t') == std::vector<std::string>{"a", "", "b"});
  CHECK_THROWS_AS(CheckField("a|b"), Error);
  CHECK(Sha256Hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
