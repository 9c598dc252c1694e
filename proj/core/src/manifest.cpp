#include "proxproj/manifest.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <sstream>

#include "proxproj/errors.hpp"
#include "proxproj/io.hpp"

namespace proxproj {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

void RunManifest::set(const std::string& key, const std::string& value) {
  if (key.empty() || key.find_first_of("=\n") != std::string::npos ||
      value.find('\n') != std::string::npos) {
    throw ConfigError("manifest: invalid key or value for '" + key + "'");
  }
  entries_[key] = value;
}

void RunManifest::set(const std::string& key, const char* value) {
  set(key, std::string(value));
}

void RunManifest::set(const std::string& key, double value) {
  set(key, format_double(value));
}

void RunManifest::set(const std::string& key, long value) {
  set(key, std::to_string(value));
}

void RunManifest::set(const std::string& key, unsigned long long value) {
  set(key, std::to_string(value));
}

const std::string& RunManifest::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) throw ConfigError("manifest: no key '" + key + "'");
  return it->second;
}

std::string RunManifest::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries_) out += k + " = " + v + "\n";
  return out;
}

RunManifest RunManifest::parse(const std::string& text) {
  RunManifest m;
  std::istringstream in(text);
  std::string line;
  std::size_t offset = 0;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (!t.empty() && t[0] != '#') {
      const auto eq = t.find('=');
      if (eq == std::string::npos) {
        throw FormatError("manifest line without '='", offset);
      }
      m.set(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    offset += line.size() + 1;
  }
  return m;
}

void RunManifest::write(const std::string& path) const {
  write_file(path, serialize());
}

std::string git_blob_hash(const std::string& bytes) {
  const std::string header = "blob " + std::to_string(bytes.size());
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  const bool ok = ctx != nullptr &&
                  EVP_DigestInit_ex(ctx, EVP_sha1(), nullptr) == 1 &&
                  // The header's terminating NUL is part of the hashed bytes.
                  EVP_DigestUpdate(ctx, header.data(), header.size() + 1) == 1 &&
                  EVP_DigestUpdate(ctx, bytes.data(), bytes.size()) == 1 &&
                  EVP_DigestFinal_ex(ctx, digest, &len) == 1;
  EVP_MD_CTX_free(ctx);
  if (!ok) throw Error("git_blob_hash: SHA-1 digest failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    const unsigned char c = digest[i];
    std::snprintf(buf, sizeof buf, "%02x", c);
    hex += buf;
  }
  return hex;
}

std::string git_blob_hash_file(const std::string& path) {
  return git_blob_hash(read_file(path));
}

}  // namespace proxproj
