#include "pgdeg/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "pgdeg/cache.hpp"
#include "pgdeg/counting.hpp"
#include "pgdeg/error.hpp"
#include "pgdeg/pcp_io.hpp"
#include "pgdeg/version.hpp"

namespace pgdeg {

namespace fs = std::filesystem;

namespace {

std::uint64_t parse_number(const std::string& tok, std::size_t line, const std::string& what) {
  std::size_t used = 0;
  std::uint64_t v = 0;
  try {
    v = std::stoull(tok, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != tok.size() || tok.empty() || tok[0] == '-')
    throw ParseError(line, 1, what + " must be a non-negative integer, got '" + tok + "'");
  return v;
}

}  // namespace

CorpusManifest load_manifest(const fs::path& path, bool check_files) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open manifest " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  CorpusManifest m;
  m.hash = fnv1a_hex(text);
  bool have_id = false, have_prime = false, have_k = false;
  std::set<std::string> ids;
  std::istringstream lines(text);
  std::string raw;
  std::size_t number = 0;
  while (std::getline(lines, raw)) {
    ++number;
    if (const auto h = raw.find('#'); h != std::string::npos) raw.resize(h);
    std::istringstream ls(raw);
    std::string kw;
    if (!(ls >> kw)) continue;
    std::vector<std::string> args;
    for (std::string t; ls >> t;) args.push_back(t);
    auto need = [&](std::size_t k) {
      if (args.size() != k)
        throw ParseError(number, 1, "'" + kw + "' takes " + std::to_string(k) + " argument(s)");
    };
    if (kw == "corpus") {
      need(1);
      m.corpus_id = args[0];
      have_id = true;
    } else if (kw == "prime") {
      need(1);
      const auto p = parse_number(args[0], number, "prime");
      if (!is_prime(p) || p > 0xffffffffULL) throw ParseError(number, 1, "p must be prime");
      m.prime = static_cast<std::uint32_t>(p);
      have_prime = true;
    } else if (kw == "order_exponent") {
      need(1);
      m.order_exponent = static_cast<std::uint32_t>(parse_number(args[0], number, "order_exponent"));
      have_k = true;
    } else if (kw == "expected_count") {
      need(1);
      m.expected_count = parse_number(args[0], number, "expected_count");
    } else if (kw == "source") {
      const auto at = raw.find("source") + 6;
      m.source = raw.substr(std::min(raw.size(), at + 1));
    } else if (kw == "entry") {
      if (args.size() < 2) throw ParseError(number, 1, "entry needs a group id and a path");
      CorpusEntry e;
      e.group_id = args[0];
      e.path = path.parent_path() / args[1];
      for (std::size_t k = 2; k < args.size(); ++k) {
        if (args[k].rfind("family=", 0) == 0)
          e.family = args[k].substr(7);
        else if (args[k].rfind("params=", 0) == 0)
          e.params = args[k].substr(7);
        else
          throw ParseError(number, 1, "unknown entry option '" + args[k] + "'");
      }
      if (!ids.insert(e.group_id).second) throw ParseError(number, 1, "duplicate group id '" + e.group_id + "'");
      m.entries.push_back(std::move(e));
    } else {
      throw ParseError(number, 1, "unknown manifest directive '" + kw + "'");
    }
  }
  if (!have_id || !have_prime || !have_k)
    throw InputError(path.string() + ": manifest needs corpus, prime and order_exponent lines");
  if (m.expected_count && *m.expected_count != m.entries.size())
    throw InputError(path.string() + ": expected_count " + std::to_string(*m.expected_count) + " but " +
                     std::to_string(m.entries.size()) + " entries");
  if (m.prime >= 5 && m.order_exponent == 6) {
    const auto want = static_cast<std::size_t>(group_count_p6(m.prime));
    if (m.entries.size() != want)
      throw InputError(path.string() + ": a complete corpus of order p^6 for p = " + std::to_string(m.prime) +
                       " has " + std::to_string(want) + " groups, manifest lists " +
                       std::to_string(m.entries.size()));
  }
  if (check_files) {
    for (const auto& e : m.entries) {
      const PcPresentation pres = read_pcp_file(e.path);
      if (pres.prime() != m.prime || pres.rank() != m.order_exponent)
        throw InputError(e.path.string() + ": prime or rank differs from the manifest");
      if (pres.name() != e.group_id)
        throw InputError(e.path.string() + ": group id '" + pres.name() + "' differs from manifest id '" +
                         e.group_id + "'");
    }
  }
  return m;
}

std::string cache_key(const PcPresentation& pres, const ScanOptions& opts) {
  return fingerprint(pres) + ":" + (opts.cyclic_skip ? "c" : "-") + (opts.abelian_fast_path ? "a" : "-") + ":" +
         to_string(opts.route) + ":" + kEngineVersion;
}

ScanReport scan_corpus(const CorpusManifest& manifest, const ScanConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  ScanReport rep;
  rep.corpus_id = manifest.corpus_id;
  rep.prime = manifest.prime;
  rep.order_exponent = manifest.order_exponent;
  rep.total_groups = manifest.entries.size();
  rep.engine_version = kEngineVersion;
  rep.manifest_hash = manifest.hash;

  const std::size_t count = std::min(manifest.entries.size(), config.limit.value_or(manifest.entries.size()));
  std::vector<ExceptionalReport> results(count);
  std::atomic<std::size_t> next{0};
  std::mutex progress_mu;

  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      const CorpusEntry& e = manifest.entries[i];
      ExceptionalReport r;
      r.group_id = e.group_id;
      r.prime = manifest.prime;
      r.order_exponent = manifest.order_exponent;
      try {
        const PcPresentation pres = read_pcp_file(e.path);
        const std::string key = cache_key(pres, config.options);
        std::optional<ExceptionalReport> hit;
        if (config.cache && config.resume) hit = config.cache->lookup(key);
        if (hit) {
          r = *hit;
          r.group_id = e.group_id;
        } else {
          r = distinguished_quotients(pres, config.options);
          r.group_id = e.group_id;
          if (config.cache && r.ok()) config.cache->store(key, r);
        }
      } catch (const std::exception& ex) {
        r.status = "error";
        r.error = ex.what();
        r.entries.clear();
        r.exceptional = false;
      }
      if (config.progress) {
        std::lock_guard lock(progress_mu);
        config.progress(r);
      }
      results[i] = std::move(r);
    }
  };
  const std::size_t jobs = std::max<std::size_t>(1, std::min(config.jobs, std::max<std::size_t>(count, 1)));
  if (jobs == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
  }

  std::sort(results.begin(), results.end(),
            [](const ExceptionalReport& a, const ExceptionalReport& b) { return a.group_id < b.group_id; });
  rep.scanned = results.size();
  for (const auto& r : results) {
    if (!r.ok()) ++rep.failures;
    if (r.exceptional) ++rep.exceptional_count;
  }
  rep.partial = rep.failures > 0 || rep.scanned < rep.total_groups;
  rep.per_group = std::move(results);
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

}  // namespace pgdeg
