#pragma once

#include <map>
#include <string>

namespace proxproj {

/// Flat `key = value` record describing one run. Keys serialize in sorted
/// order, one per line.
class RunManifest {
 public:
  void set(const std::string& key, const std::string& value);
  void set(const std::string& key, const char* value);
  void set(const std::string& key, double value);
  void set(const std::string& key, long value);
  void set(const std::string& key, unsigned long long value);

  bool has(const std::string& key) const { return entries_.count(key) > 0; }
  const std::string& get(const std::string& key) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }

  std::string serialize() const;
  /// Inverse of serialize. Blank lines and lines starting with '#' are
  /// skipped. Throws FormatError on a line without '='.
  static RunManifest parse(const std::string& text);

  void write(const std::string& path) const;

 private:
  std::map<std::string, std::string> entries_;
};

/// SHA-1 of "blob <size>\0" followed by the bytes, as lower-case hex; the
/// same digest git assigns to a file with this content.
std::string git_blob_hash(const std::string& bytes);
std::string git_blob_hash_file(const std::string& path);

}  // namespace proxproj
