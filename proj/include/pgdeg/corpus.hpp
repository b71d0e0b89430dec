#pragma once

// Corpus manifests and whole-corpus scans.
//
// Manifest format, one directive per line ('#' starts a comment):
//
//   corpus <id>
//   prime <p>
//   order_exponent <k>
//   expected_count <n>          (optional)
//   source <free text>          (optional)
//   entry <group_id> <path> [family=<label>] [params=<bindings>]
//
// Entry paths are relative to the manifest's directory.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pgdeg/exceptional.hpp"

namespace pgdeg {

struct CorpusEntry {
  std::string group_id;
  std::filesystem::path path;  // resolved
  std::string family;
  std::string params;
};

struct CorpusManifest {
  std::string corpus_id;
  std::uint32_t prime = 2;
  std::uint32_t order_exponent = 0;
  std::optional<std::size_t> expected_count;
  std::string source;
  std::vector<CorpusEntry> entries;
  /// FNV-1a digest of the manifest bytes.
  std::string hash;
};

/// Parses and validates: unique ids, expected_count, the order-p^6 count
/// formula when p >= 5, and (when check_files) that every file parses with
/// the declared prime and rank. Throws InputError / ParseError.
CorpusManifest load_manifest(const std::filesystem::path& path, bool check_files = true);

struct ScanReport {
  std::string corpus_id;
  std::uint32_t prime = 2;
  std::uint32_t order_exponent = 0;
  std::size_t total_groups = 0;
  std::size_t scanned = 0;
  std::size_t exceptional_count = 0;
  std::size_t failures = 0;
  /// Failures, timeouts or a limited scan.
  bool partial = false;
  std::vector<ExceptionalReport> per_group;  // sorted by group_id
  double seconds = 0;
  std::string engine_version;
  std::string manifest_hash;
};

class ResultCache;

struct ScanConfig {
  std::size_t jobs = 1;
  ScanOptions options;
  /// Results are stored here when set, and reused when `resume` is on.
  ResultCache* cache = nullptr;
  bool resume = false;
  /// Scan only the first `limit` entries (the report is then partial).
  std::optional<std::size_t> limit;
  /// Called after each group, from worker threads, serialised.
  std::function<void(const ExceptionalReport&)> progress;
};

ScanReport scan_corpus(const CorpusManifest& manifest, const ScanConfig& config = {});

/// Cache key for one group under the given options.
std::string cache_key(const PcPresentation& pres, const ScanOptions& opts);

}  // namespace pgdeg
