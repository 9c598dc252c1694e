#include <doctest.h>

#include <filesystem>

#include "proxproj/errors.hpp"
#include "proxproj/io.hpp"
#include "proxproj/manifest.hpp"

using namespace proxproj;

TEST_CASE("git blob hash golden values") {
  CHECK(git_blob_hash("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
  CHECK(git_blob_hash("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  const std::string path =
      (std::filesystem::temp_directory_path() / "proxproj_hash.txt").string();
  write_file(path, "hello\n");
  CHECK(git_blob_hash_file(path) == git_blob_hash("hello\n"));
}

TEST_CASE("manifest serializes sorted key = value lines") {
  RunManifest m;
  m.set("seed", 3L);
  m.set("app", "bp");
  m.set("alpha", 0.1);
  m.set("count", 7ULL);
  CHECK(m.serialize() == "alpha = 0.1\napp = bp\ncount = 7\nseed = 3\n");
  CHECK(m.get("app") == "bp");
  CHECK(m.has("seed"));
  CHECK_FALSE(m.has("eps"));
  CHECK_THROWS_AS(m.get("eps"), ConfigError);
}

TEST_CASE("parse inverts serialize") {
  RunManifest m;
  m.set("a.b", "x y");
  m.set("tol", 1e-10);
  m.set("path", "/tmp/a=b");
  const RunManifest back = RunManifest::parse(m.serialize());
  CHECK(back.entries() == m.entries());
  const RunManifest loose =
      RunManifest::parse("# comment\n\n  key =  value \r\nempty =\n");
  CHECK(loose.get("key") == "value");
  CHECK(loose.get("empty").empty());
}

TEST_CASE("invalid manifest content") {
  RunManifest m;
  CHECK_THROWS_AS(m.set("", "x"), ConfigError);
  CHECK_THROWS_AS(m.set("a=b", "x"), ConfigError);
  CHECK_THROWS_AS(m.set("a", "two\nlines"), ConfigError);
  try {
    RunManifest::parse("ok = 1\nbroken line\n");
    FAIL("expected FormatError");
  } catch (const FormatError& e) {
    CHECK(e.offset() == 7);
  }
}
