#pragma once

// Persistent memo of per-group scan results: an append-only JSON-lines file
// where every line carries a checksum. Lines that fail the checksum are
// dropped and the file is rewritten without them.

#include <cstddef>
#include <filesystem>
#include <mutex>
#include <optional>
#include <string>
#include <unordered_map>

#include "pgdeg/exceptional.hpp"

namespace pgdeg {

class ResultCache {
 public:
  /// Opens (creating if needed) `dir`/results.jsonl. Throws InputError if the
  /// directory cannot be created or the file cannot be written.
  explicit ResultCache(const std::filesystem::path& dir);

  std::optional<ExceptionalReport> lookup(const std::string& key) const;
  void store(const std::string& key, const ExceptionalReport& value);

  std::size_t size() const;
  /// Lines discarded as corrupt when the store was opened.
  std::size_t dropped() const { return dropped_; }
  const std::filesystem::path& file() const { return file_; }

  /// Directory from PGDEG_CACHE_DIR, if set.
  static std::optional<std::filesystem::path> default_dir();

 private:
  std::filesystem::path file_;
  mutable std::mutex mu_;
  std::unordered_map<std::string, std::string> entries_;  // key -> value JSON
  std::size_t dropped_ = 0;
};

}  // namespace pgdeg
