#include <filesystem>
#include <fstream>
#include <numeric>
#include <set>
#include <string>

#include "doctest.h"
#include "pgdeg/builtins.hpp"
#include "pgdeg/cache.hpp"
#include "pgdeg/corpus.hpp"
#include "pgdeg/counting.hpp"
#include "pgdeg/error.hpp"
#include "pgdeg/pcp_io.hpp"
#include "pgdeg/report.hpp"
#include "pgdeg/subgroup.hpp"

using namespace pgdeg;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pgdeg_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void put(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

int parse_error_line(const std::string& text) {
  try {
    parse_pcp(text);
  } catch (const ParseError& e) {
    return static_cast<int>(e.line());
  }
  return 0;
}

bool is_prime_slow(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d < n; ++d)
    if (n % d == 0) return false;
  return true;
}

const char* kHeisenberg3 =
    "group H3\n"
    "prime 3\n"
    "rank 3\n"
    "comm 2 1 : 0 0 1\n"
    "end\n";

}  // namespace

TEST_CASE("pcp round trip") {
  const PcPresentation h = parse_pcp(kHeisenberg3);
  CHECK(h.rank() == 3);
  CHECK(h.prime() == 3);
  CHECK_FALSE(h.commutator_trivial(1, 0));
  CHECK(h.commutator_trivial(2, 0));
  CHECK(write_pcp(h) == kHeisenberg3);
  CHECK(write_pcp(parse_pcp(write_pcp(h))) == kHeisenberg3);

  const std::string noisy =
      "# exported by hand\n"
      "group H3\n"
      "prime 3   \n"
      "\n"
      "rank 3 # three generators\n"
      "comm 2 1 : 0 0 1\n"
      "end\n";
  CHECK(write_pcp(parse_pcp(noisy)) == kHeisenberg3);

  for (const char* spec : {"cyclic(3,2)", "abelian(2,3,1,1)", "heisenberg(5)", "direct_product(heisenberg(2),cyclic(2,2))"}) {
    const PcPresentation p = builtin_group(spec);
    CHECK(write_pcp(parse_pcp(write_pcp(p))) == write_pcp(p));
  }
}

TEST_CASE("pcp errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_pcp("group X\nprime 4\nrank 1\nend\n"), doctest::Contains("p must be prime"), ParseError);
  CHECK(parse_error_line("group X\nprime 4\nrank 1\nend\n") == 2);
  // comm 2 1 may only involve generators after g2
  CHECK(parse_error_line("group X\nprime 3\nrank 3\ncomm 2 1 : 0 1 0\nend\n") == 4);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\npow 1 : 0 1\npow 1 : 0 2\nend\n") == 5);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\ncomm 1 2 : 0 0\nend\n") == 4);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\npow 1 : 0 3\nend\n") == 4);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\npow 1 :  0 1\nend\n") == 4);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\npow 1 : 0\nend\n") == 4);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\npow 1 : 0 x\nend\n") == 4);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\nend\npow 1 : 0 1\n") == 5);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\n") != 0);
  CHECK(parse_error_line("group X\nprime 3\nrank 2\nfoo\nend\n") == 4);
  try {
    parse_pcp("group X\nprime 3\nrank 2\npow 1 : 0 7\nend\n");
  } catch (const ParseError& e) {
    CHECK(e.column() == 11);
  }
  CHECK_THROWS_AS(read_pcp_file("/nonexistent/file.pcp"), InputError);
}

TEST_CASE("fingerprints") {
  PcPresentation a = parse_pcp(kHeisenberg3);
  PcPresentation b = a;
  b.set_name("renamed");
  CHECK(fingerprint(a) == fingerprint(b));
  b.set_power(0, {0, 0, 1});
  CHECK(fingerprint(a) != fingerprint(b));
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("builtin constructors") {
  const PcPresentation c9 = builtin_group("cyclic(3,2)");
  CHECK(c9.order() == 9);
  CHECK(c9.power(0) == Exponents{0, 1});
  CHECK(abelian_invariants(c9) == std::vector<std::uint32_t>{2});

  const PcPresentation a = builtin_group("abelian(5,2,1)");
  CHECK(a.order() == 125);
  CHECK(abelian_invariants(a) == std::vector<std::uint32_t>{2, 1});

  const PcPresentation h = builtin_group("heisenberg(3)");
  CHECK(consistency_check(h).consistent);
  CHECK(center(PcGroup(h)).order == 3);

  const PcPresentation d = builtin_group("direct_product(cyclic(2,1), elementary(2,2))");
  CHECK(d.order() == 8);
  CHECK(abelian_invariants(d) == std::vector<std::uint32_t>{1, 1, 1});

  for (const char* bad : {"cyclic(4,2)", "abelian(3,0,1)", "direct_product(cyclic(2,1),cyclic(3,1))", "heisenberg(3",
                          "mystery(2)", "cyclic(3,2) x", "elementary(-1,2)"})
    CHECK_THROWS_AS(builtin_group(bad), InputError);
}

TEST_CASE("partition constructors round trip through abelian invariants") {
  const std::size_t expected_counts[] = {1, 1, 2, 3, 5, 7, 11};
  for (std::uint32_t k = 0; k <= 6; ++k) {
    const auto parts = partitions(k);
    CHECK(parts.size() == expected_counts[k]);
    for (std::uint32_t p : {2u, 3u, 5u})
      for (const auto& part : parts) {
        const PcPresentation g = abelian(p, part);
        CHECK(consistency_check(g).consistent);
        CHECK(abelian_invariants(g) == part);
      }
  }
}

TEST_CASE("closed-form counts") {
  CHECK(group_count_p6(5) == 684);
  CHECK(group_count_p6(7) == 860);
  CHECK(group_count_p6(11) == 1192);
  const auto b5 = exceptional_bounds(5);
  CHECK(b5.upper == 334);
  CHECK(b5.conjectured == 81);
  CHECK(b5.nonexceptional_lower == 350);
  CHECK(exceptional_bounds(7).conjectured == 92);
  CHECK(exceptional_bounds(11).conjectured == 114);
  CHECK(exceptional_bounds(13).conjectured == 125);
  for (std::int64_t p : {2, 3, 4, 9, 25, 0, -5}) {
    CHECK_THROWS_AS(group_count_p6(p), InputError);
    CHECK_THROWS_AS(exceptional_bounds(p), InputError);
  }
}

TEST_CASE("count identity and bound sanity for 5 <= p <= 97") {
  for (std::int64_t p = 5; p <= 97; ++p) {
    if (!is_prime_slow(static_cast<std::uint32_t>(p))) continue;
    CAPTURE(p);
    // Direct evaluation, independent of the library's arithmetic.
    const std::int64_t g3 = std::gcd(p - 1, std::int64_t{3}), g4 = std::gcd(p - 1, std::int64_t{4}),
                       g5 = std::gcd(p - 1, std::int64_t{5});
    const std::int64_t count = 3 * p * p + 39 * p + 344 + 24 * g3 + 11 * g4 + 2 * g5;
    const std::int64_t upper2 = 33 * p + 467 + 12 * g3 + 6 * g4;
    const std::int64_t lower2 = 6 * p * p + 45 * p + 221 + 36 * g3 + 16 * g4 + 4 * g5;
    const auto b = exceptional_bounds(p);
    CHECK(group_count_p6(p) == count);
    CHECK(2 * b.upper == upper2);
    CHECK(2 * b.nonexceptional_lower == lower2);
    CHECK(2 * b.conjectured == 11 * p + 107);
    CHECK(group_count_p6(p) - b.nonexceptional_lower == b.upper);
    CHECK(b.conjectured <= b.upper);
  }
}

TEST_CASE("omega and nu agree with definition checks for odd primes below 1000") {
  CHECK(omega_nu(5).omega == 2);
  CHECK(omega_nu(5).nu == 2);
  CHECK(omega_nu(7).omega == 3);
  CHECK(omega_nu(7).nu == 3);
  CHECK(omega_nu(11).omega == 2);
  CHECK(omega_nu(11).nu == 2);
  CHECK_THROWS_AS(omega_nu(2), InputError);
  CHECK_THROWS_AS(omega_nu(9), InputError);
  for (std::uint32_t p = 3; p < 1000; ++p) {
    if (!is_prime_slow(p)) continue;
    CAPTURE(p);
    std::set<std::uint32_t> squares;
    for (std::uint32_t x = 1; x < p; ++x) squares.insert(x * x % p);
    std::uint32_t omega = 0;
    for (std::uint32_t c = 1; c < p && omega == 0; ++c) {
      std::set<std::uint32_t> powers;
      std::uint32_t v = 1;
      for (std::uint32_t k = 0; k + 1 < p; ++k) {
        powers.insert(v);
        v = v * c % p;
      }
      if (powers.size() == p - 1) omega = c;
    }
    std::uint32_t nu = 1;
    while (squares.count(nu)) ++nu;
    const ParamContext ctx = omega_nu(p);
    CHECK(ctx.p == p);
    CHECK(ctx.omega == omega);
    CHECK(ctx.nu == nu);
  }
}

TEST_CASE("manifest validation") {
  const fs::path dir = scratch("manifest");
  fs::create_directories(dir / "g");
  write_pcp_file(dir / "g" / "A.pcp", [] {
    PcPresentation p = cyclic(3, 2);
    p.set_name("A");
    return p;
  }());
  write_pcp_file(dir / "g" / "B.pcp", [] {
    PcPresentation p = elementary(3, 2);
    p.set_name("B");
    return p;
  }());
  const std::string head = "corpus tiny\nprime 3\norder_exponent 2\nsource hand made\n";
  put(dir / "ok.manifest", head + "expected_count 2\nentry A g/A.pcp family=cyc params=r=1\nentry B g/B.pcp\n");
  const CorpusManifest m = load_manifest(dir / "ok.manifest");
  CHECK(m.corpus_id == "tiny");
  CHECK(m.source == "hand made");
  CHECK(m.entries.size() == 2);
  CHECK(m.entries[0].family == "cyc");
  CHECK(m.entries[0].params == "r=1");
  CHECK(m.hash == fnv1a_hex(slurp(dir / "ok.manifest")));

  put(dir / "dup.manifest", head + "entry A g/A.pcp\nentry A g/B.pcp\n");
  CHECK_THROWS_AS(load_manifest(dir / "dup.manifest"), ParseError);
  put(dir / "count.manifest", head + "expected_count 3\nentry A g/A.pcp\nentry B g/B.pcp\n");
  CHECK_THROWS_AS(load_manifest(dir / "count.manifest"), InputError);
  put(dir / "missing.manifest", head + "entry C g/C.pcp\n");
  CHECK_THROWS_AS(load_manifest(dir / "missing.manifest"), InputError);
  CHECK_NOTHROW(load_manifest(dir / "missing.manifest", false));
  put(dir / "prime.manifest", "corpus tiny\nprime 2\norder_exponent 2\nentry A g/A.pcp\n");
  CHECK_THROWS_AS(load_manifest(dir / "prime.manifest"), InputError);
  put(dir / "bare.manifest", "prime 3\norder_exponent 2\n");
  CHECK_THROWS_AS(load_manifest(dir / "bare.manifest"), InputError);
  CHECK_THROWS_AS(load_manifest(dir / "absent.manifest"), InputError);

  // The p^6 count is a completeness gate before any file is read.
  put(dir / "p6.manifest", "corpus o15625\nprime 5\norder_exponent 6\nentry A g/A.pcp\n");
  CHECK_THROWS_WITH_AS(load_manifest(dir / "p6.manifest", false), doctest::Contains("684"), InputError);
}

TEST_CASE("result cache") {
  const fs::path dir = scratch("cache");
  ExceptionalReport r;
  r.group_id = "G";
  r.prime = 3;
  r.order_exponent = 3;
  r.mu = 9;
  r.entries.push_back({{{0, 0, 1}}, 3, 9, 6, false, "abelian"});
  const PcPresentation h = heisenberg(3);
  const std::string key = cache_key(h, {});
  {
    ResultCache cache(dir);
    CHECK_FALSE(cache.lookup(key).has_value());
    cache.store(key, r);
    const auto hit = cache.lookup(key);
    REQUIRE(hit.has_value());
    CHECK(to_json(*hit) == to_json(r));
  }
  {
    ResultCache reopened(dir);
    CHECK(reopened.size() == 1);
    CHECK(reopened.dropped() == 0);
    REQUIRE(reopened.lookup(key).has_value());
    CHECK(to_json(*reopened.lookup(key)) == to_json(r));

    PcPresentation edited = h;
    edited.set_power(0, {0, 0, 1});
    CHECK_FALSE(reopened.lookup(cache_key(edited, {})).has_value());
    ScanOptions other;
    other.cyclic_skip = false;
    CHECK(cache_key(h, other) != key);
  }
  // Flip one byte inside the stored value: the checksum no longer matches.
  std::string text = slurp(dir / "results.jsonl");
  const auto at = text.find("\"mu\":9");
  REQUIRE(at != std::string::npos);
  text[at + 5] = '7';
  put(dir / "results.jsonl", text + "not json at all\n");
  {
    ResultCache repaired(dir);
    CHECK(repaired.dropped() == 2);
    CHECK(repaired.size() == 0);
    CHECK_FALSE(repaired.lookup(key).has_value());
  }
  CHECK(slurp(dir / "results.jsonl").empty());
}

TEST_CASE("reports") {
  ScanReport empty;
  empty.corpus_id = "none";
  CHECK(render(empty, ReportFormat::Csv) == "group_id,status,mu,quotients,distinguished,exceptional\n");
  CHECK(render(empty, ReportFormat::Json) == render(empty, ReportFormat::Json));
  CHECK(parse_format("json") == ReportFormat::Json);
  CHECK_THROWS_AS(parse_format("xml"), InputError);

  const PcGroup c9(cyclic(3, 2));
  MuCertificate cert;
  cert.mu = 9;
  cert.collection.push_back(trivial_subgroup());
  cert.perms = {{3, 4, 5, 6, 7, 8, 1, 2, 0}, {1, 2, 0, 4, 5, 3, 7, 8, 6}};
  const std::string text = render(c9, cert, ReportFormat::Text);
  CHECK(text.find("degree 9 with 1 coset block\n") != std::string::npos);
  const auto j = to_json(c9, cert);
  CHECK(j["mu"] == 9);
  CHECK(j["blocks"].size() == 1);
  CHECK(j["blocks"][0]["index"] == 9);

  ExceptionalReport r;
  r.group_id = "X";
  r.status = "timeout";
  r.error = "time limit exceeded";
  r.seconds = 1.5;
  CHECK(to_json(r).contains("seconds") == false);
  CHECK(to_json(r, true)["seconds"] == 1.5);
  CHECK(to_json(exceptional_from_json(to_json(r, true)), true) == to_json(r, true));

  const fs::path dir = scratch("report");
  CHECK_THROWS_AS(write_text(dir / "no" / "such" / "dir" / "r.csv", "x"), InputError);
  write_text(dir / "r.csv", "x\n");
  CHECK(slurp(dir / "r.csv") == "x\n");
}
