#include "pgdeg/cache.hpp"

#include <cstdlib>
#include <fstream>
#include <vector>

#include "json.hpp"
#include "pgdeg/error.hpp"
#include "pgdeg/pcp_io.hpp"
#include "pgdeg/report.hpp"

namespace pgdeg {

namespace fs = std::filesystem;

namespace {

std::string checksum(const std::string& key, const std::string& value) { return fnv1a_hex(key + '\n' + value); }

std::string line_for(const std::string& key, const std::string& value) {
  nlohmann::json j;
  j["key"] = key;
  j["value"] = nlohmann::json::parse(value);
  j["sum"] = checksum(key, value);
  return j.dump();
}

}  // namespace

ResultCache::ResultCache(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw InputError("cannot create cache directory " + dir.string() + ": " + ec.message());
  file_ = dir / "results.jsonl";

  std::vector<std::string> good;
  if (std::ifstream in(file_); in) {
    for (std::string line; std::getline(in, line);) {
      if (line.empty()) continue;
      try {
        const auto j = nlohmann::json::parse(line);
        const std::string key = j.at("key").get<std::string>();
        const std::string value = j.at("value").dump();
        if (j.at("sum").get<std::string>() != checksum(key, value)) throw std::runtime_error("checksum");
        exceptional_from_json(j.at("value"));
        entries_[key] = value;
        good.push_back(line);
      } catch (const std::exception&) {
        ++dropped_;
      }
    }
  }
  if (dropped_ > 0) {
    std::ofstream out(file_, std::ios::trunc);
    for (const auto& line : good) out << line << '\n';
    if (!out) throw InputError("cannot rewrite cache file " + file_.string());
  } else {
    std::ofstream touch(file_, std::ios::app);
    if (!touch) throw InputError("cache file " + file_.string() + " is not writable");
  }
}

std::optional<ExceptionalReport> ResultCache::lookup(const std::string& key) const {
  std::lock_guard lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return exceptional_from_json(nlohmann::json::parse(it->second));
}

void ResultCache::store(const std::string& key, const ExceptionalReport& value) {
  const std::string v = to_json(value).dump();
  std::lock_guard lock(mu_);
  entries_[key] = v;
  std::ofstream out(file_, std::ios::app);
  out << line_for(key, v) << '\n';
  out.flush();
  if (!out) throw InputError("cannot append to cache file " + file_.string());
}

std::size_t ResultCache::size() const {
  std::lock_guard lock(mu_);
  return entries_.size();
}

std::optional<fs::path> ResultCache::default_dir() {
  if (const char* d = std::getenv("PGDEG_CACHE_DIR"); d && *d) return fs::path(d);
  return std::nullopt;
}

}  // namespace pgdeg
