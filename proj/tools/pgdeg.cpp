// Command-line front end: mu, check, exceptional, scan, bounds, make.
//
// Exit codes: 0 success, 1 input error, 2 partial scan, 3 internal invariant
// violation.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "pgdeg/builtins.hpp"
#include "pgdeg/cache.hpp"
#include "pgdeg/corpus.hpp"
#include "pgdeg/counting.hpp"
#include "pgdeg/error.hpp"
#include "pgdeg/exceptional.hpp"
#include "pgdeg/mindeg.hpp"
#include "pgdeg/pcp_io.hpp"
#include "pgdeg/report.hpp"
#include "pgdeg/version.hpp"

namespace {

using namespace pgdeg;

constexpr int kOk = 0;
constexpr int kInput = 1;
constexpr int kPartial = 2;
constexpr int kInternal = 3;

void emit(const std::string& text, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << text;
  else
    write_text(out, text);
}

struct ScanFlags {
  bool no_cyclic_skip = false;
  bool no_abelian = false;
  std::string route = "interval";
  double timeout = 0;

  ScanOptions options() const {
    ScanOptions o;
    o.cyclic_skip = !no_cyclic_skip;
    o.abelian_fast_path = !no_abelian;
    o.route = parse_route(route);
    if (timeout > 0) o.timeout = std::chrono::milliseconds(static_cast<long long>(timeout * 1000));
    return o;
  }

  void attach(CLI::App* cmd) {
    cmd->add_flag("--no-cyclic-skip", no_cyclic_skip, "Compute mu(G/N) for cyclic quotients too");
    cmd->add_flag("--no-abelian-fast-path", no_abelian, "Search abelian quotients instead of using the formula");
    cmd->add_option("--route", route, "How mu(G/N) is computed: interval or quotient")->capture_default_str();
    cmd->add_option("--timeout", timeout, "Per-group time limit in seconds (0 = none)");
  }
};

int run(int argc, char** argv) {
  CLI::App app{"Minimal faithful permutation degrees and exceptional p-groups", "pgdeg"};
  app.set_version_flag("--version", std::string(kEngineVersion));
  app.require_subcommand(1);

  std::string file, out, format = "text", cert_out, cert_format = "json";
  bool verify = false, check_first = false;

  auto* mu = app.add_subcommand("mu", "Minimal faithful permutation degree of a group");
  mu->add_option("file", file, "PCP file")->required();
  mu->add_option("--certificate", cert_out, "Write the witnessing collection and permutations here");
  mu->add_option("--certificate-format", cert_format, "json, csv or text")->capture_default_str();
  mu->add_flag("--check", check_first, "Run the consistency check first");
  mu->add_flag("--verify", verify, "Re-verify the certificate before writing it");

  auto* check = app.add_subcommand("check", "Consistency check of a presentation");
  check->add_option("file", file, "PCP file")->required();

  ScanFlags single;
  auto* exc = app.add_subcommand("exceptional", "Distinguished quotients of one group");
  exc->add_option("file", file, "PCP file")->required();
  exc->add_option("--report", out, "Output file (default stdout)");
  exc->add_option("--format", format, "json, csv or text")->capture_default_str();
  single.attach(exc);

  ScanFlags flags;
  std::string manifest, cache_dir;
  std::size_t jobs = 1, limit = 0;
  bool resume = false, timing = false, quiet = false, skip_files = false;
  auto* scan = app.add_subcommand("scan", "Scan every group of a corpus manifest");
  scan->add_option("manifest", manifest, "Manifest file")->required();
  scan->add_option("--jobs", jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  scan->add_option("--cache", cache_dir, "Result cache directory (default $PGDEG_CACHE_DIR)");
  scan->add_flag("--resume", resume, "Reuse cached results");
  scan->add_option("--report", out, "Report file (default stdout)");
  scan->add_option("--format", format, "json, csv or text")->capture_default_str();
  scan->add_option("--limit", limit, "Scan only the first N entries");
  scan->add_flag("--timing", timing, "Include wall-clock seconds in the report");
  scan->add_flag("--quiet", quiet, "No per-group progress on stderr");
  scan->add_flag("--skip-file-check", skip_files, "Do not pre-parse every corpus file");
  flags.attach(scan);

  std::int64_t prime = 0;
  auto* bounds = app.add_subcommand("bounds", "Closed-form counts for groups of order p^6");
  bounds->add_option("p", prime, "Prime >= 5")->required();

  std::string spec, name;
  auto* make = app.add_subcommand("make", "Write a built-in presentation");
  make->add_option("spec", spec, "e.g. cyclic(3,2), abelian(5,2,1), heisenberg(3), direct_product(A,B)")
      ->required();
  make->add_option("-o,--output", out, "Output file (default stdout)");
  make->add_option("--id", name, "Group id written to the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  if (*mu) {
    const PcPresentation pres = read_pcp_file(file);
    if (check_first) {
      const auto v = consistency_check(pres);
      if (!v.consistent) throw InputError("inconsistent presentation: overlap " + v.failure->label + " fails");
    }
    const PcGroup g(pres);
    const MuCertificate cert = minimal_degree(g);
    if (verify) {
      const auto c = verify_certificate(pres, cert);
      if (!c) throw InvariantViolation("certificate check failed: " + to_string(c.status) + ": " + c.detail);
    }
    std::cout << pres.name() << " mu " << cert.mu << "\n";
    if (!cert_out.empty()) emit(render(g, cert, parse_format(cert_format)), cert_out);
    return kOk;
  }
  if (*check) {
    const PcPresentation pres = read_pcp_file(file);
    const auto v = consistency_check(pres);
    if (v.consistent) {
      std::cout << pres.name() << ": consistent, order " << pres.order() << "\n";
      return kOk;
    }
    std::cout << pres.name() << ": inconsistent, overlap " << v.failure->label << " fails\n";
    return kInput;
  }
  if (*exc) {
    const PcPresentation pres = read_pcp_file(file);
    const ReportFormat f = parse_format(format);
    const ExceptionalReport r = distinguished_quotients(pres, single.options());
    emit(render(r, f), out);
    return r.ok() ? kOk : kPartial;
  }
  if (*scan) {
    const ReportFormat f = parse_format(format);
    const ScanOptions opts = flags.options();
    const CorpusManifest m = load_manifest(manifest, !skip_files);
    std::optional<ResultCache> cache;
    std::optional<std::filesystem::path> dir;
    if (!cache_dir.empty()) dir = cache_dir;
    else dir = ResultCache::default_dir();
    if (resume && !dir) throw InputError("--resume needs --cache or PGDEG_CACHE_DIR");
    if (dir) {
      cache.emplace(*dir);
      if (cache->dropped() > 0)
        std::cerr << "cache: dropped " << cache->dropped() << " corrupt line(s) from " << cache->file() << "\n";
    }
    ScanConfig cfg;
    cfg.jobs = jobs;
    cfg.options = opts;
    cfg.cache = cache ? &*cache : nullptr;
    cfg.resume = resume;
    if (limit > 0) cfg.limit = limit;
    std::size_t done = 0;
    if (!quiet)
      cfg.progress = [&](const ExceptionalReport& r) {
        ++done;
        std::cerr << "[" << done << "/" << (cfg.limit ? std::min(*cfg.limit, m.entries.size()) : m.entries.size())
                  << "] " << r.group_id << " " << r.status << (r.exceptional ? " exceptional" : "") << "\n";
      };
    const ScanReport rep = scan_corpus(m, cfg);
    emit(render(rep, f, timing), out);
    if (!out.empty() && out != "-")
      std::cerr << rep.corpus_id << ": " << rep.exceptional_count << " exceptional of " << rep.scanned << " scanned ("
                << rep.total_groups << " total)\n";
    return rep.partial ? kPartial : kOk;
  }
  if (*bounds) {
    const auto b = exceptional_bounds(prime);
    const auto pc = omega_nu(static_cast<std::uint32_t>(prime));
    std::cout << "p " << prime << "\n"
              << "groups_of_order_p6 " << group_count_p6(prime) << "\n"
              << "exceptional_upper " << b.upper << "\n"
              << "exceptional_conjectured " << b.conjectured << "\n"
              << "nonexceptional_lower " << b.nonexceptional_lower << "\n"
              << "omega " << pc.omega << "\n"
              << "nu " << pc.nu << "\n";
    return kOk;
  }
  if (*make) {
    PcPresentation pres = builtin_group(spec);
    if (!name.empty()) pres.set_name(name);
    emit(write_pcp(pres), out);
    return kOk;
  }
  return kInput;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const pgdeg::InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const pgdeg::InvariantViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
