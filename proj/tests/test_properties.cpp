#include <fstream>
#include <map>
#include <string>

#include "corpus_util.hpp"
#include "doctest.h"
#include "pgdeg/cache.hpp"
#include "pgdeg/exceptional.hpp"
#include "pgdeg/mindeg.hpp"
#include "pgdeg/report.hpp"

using namespace pgdeg;

// Exhaustive over every corpus group of order at most 243.

TEST_CASE("socle law") {
  for (std::uint64_t order : testing_corpus::small_orders())
    for (const auto& pres : testing_corpus::load(order)) {
      CAPTURE(pres.name());
      const PcGroup g(pres);
      const Subgroup s = socle(g);
      const Subgroup z = center(g);
      CHECK(is_subgroup_of(g, s, z));
      for (Elem x : elements(g, s)) CHECK(g.pow(x, g.prime()) == 0);
      CHECK(s.order > 1);
      for (const Subgroup& n : normal_subgroups(g))
        if (n.order > 1) CHECK(intersect(g, n, s).order > 1);
    }
}

TEST_CASE("Lagrange and core maximality") {
  for (std::uint64_t order : testing_corpus::small_orders())
    for (const auto& pres : testing_corpus::load(order)) {
      CAPTURE(pres.name());
      const PcGroup g(pres);
      const auto normals = normal_subgroups(g);
      std::uint64_t total = 0;
      for (const auto& c : subgroup_classes(g)) {
        const Subgroup& h = c.representative;
        total += c.size;
        CHECK(g.order() % h.order == 0);
        CHECK(elements(g, h).size() == h.order);
        CHECK(g.order() % c.size == 0);
        const Subgroup core = normal_core(g, h);
        CHECK(is_normal(g, core));
        CHECK(is_subgroup_of(g, core, h));
        for (const Subgroup& n : normals)
          if (is_subgroup_of(g, n, h)) CHECK(is_subgroup_of(g, n, core));
      }
      CHECK(total == all_subgroups(g).size());
      for (const Subgroup& n : normals) {
        const auto q = quotient(g, n);
        CHECK(q.pres.order() * n.order == g.order());
      }
    }
}

TEST_CASE("certificates are faithful permutation representations") {
  for (std::uint64_t order : testing_corpus::small_orders())
    for (const auto& pres : testing_corpus::load(order)) {
      CAPTURE(pres.name());
      const PcGroup g(pres);
      const MuCertificate cert = minimal_degree(g);
      const auto check = verify_certificate(pres, cert);
      CHECK_MESSAGE(static_cast<bool>(check), check.detail);
      // Image of every element by its normal form; distinct elements must
      // act differently and products must be respected.
      std::vector<Permutation> image(g.order());
      image[0].resize(cert.mu);
      for (std::uint32_t i = 0; i < cert.mu; ++i) image[0][i] = i;
      std::map<Permutation, Elem> seen{{image[0], 0}};
      for (Elem x = 1; x < g.order(); ++x) {
        const std::size_t i = g.rank() - 1 - [&] {
          std::size_t t = 0;
          while (g.digit(x, g.rank() - 1 - t) == 0) ++t;
          return t;
        }();
        const Elem prev = g.mul(x, g.inv(g.generator(i)));
        REQUIRE(prev < x);
        Permutation p(cert.mu);
        for (std::uint32_t pt = 0; pt < cert.mu; ++pt) p[pt] = cert.perms[i][image[prev][pt]];
        image[x] = p;
        CHECK(seen.emplace(p, x).second);
      }
      for (Elem a = 0; a < g.order(); a += 7)
        for (Elem b = 0; b < g.order(); b += 5) {
          const Permutation& pa = image[a];
          const Permutation& pb = image[b];
          Permutation ab(cert.mu);
          for (std::uint32_t pt = 0; pt < cert.mu; ++pt) ab[pt] = pb[pa[pt]];
          CHECK(ab == image[g.mul(a, b)]);
        }
    }
}

TEST_CASE("cyclic skip soundness") {
  for (std::uint64_t order : testing_corpus::small_orders())
    for (const auto& pres : testing_corpus::load(order)) {
      CAPTURE(pres.name());
      ScanOptions off;
      off.cyclic_skip = false;
      auto a = to_json(distinguished_quotients(pres));
      auto b = to_json(distinguished_quotients(pres, off));
      for (auto* j : {&a, &b})
        for (auto& q : (*j)["quotients"]) q.erase("method");
      CHECK(a == b);
    }
}

TEST_CASE("scan reports do not depend on parallelism") {
  for (std::uint64_t order : testing_corpus::small_orders()) {
    const CorpusManifest m = load_manifest(testing_corpus::manifest_path(order));
    ScanConfig one;
    ScanConfig many;
    many.jobs = 4;
    const std::string a = render(scan_corpus(m, one), ReportFormat::Json);
    const std::string b = render(scan_corpus(m, many), ReportFormat::Json);
    CHECK(a == b);
    CHECK(render(scan_corpus(m, one), ReportFormat::Csv) == render(scan_corpus(m, many), ReportFormat::Csv));
  }
}

TEST_CASE("partial scans resume from the cache") {
  const auto dir = std::filesystem::temp_directory_path() / "pgdeg_test_resume";
  std::filesystem::remove_all(dir);
  const CorpusManifest m = load_manifest(testing_corpus::manifest_path(243));
  ResultCache cache(dir);
  ScanConfig first;
  first.cache = &cache;
  first.limit = 20;
  const ScanReport part = scan_corpus(m, first);
  CHECK(part.partial);
  CHECK(part.scanned == 20);
  CHECK(part.total_groups == m.entries.size());
  CHECK(cache.size() == 20);

  ScanConfig again;
  again.cache = &cache;
  again.resume = true;
  again.jobs = 3;
  const ScanReport full = scan_corpus(m, again);
  // Only the missing groups were computed and appended.
  std::ifstream lines(cache.file());
  std::size_t stored = 0;
  for (std::string line; std::getline(lines, line);) ++stored;
  CHECK(stored == m.entries.size());
  CHECK_FALSE(full.partial);
  CHECK(cache.size() == m.entries.size());
  CHECK(render(full, ReportFormat::Json) == render(scan_corpus(m), ReportFormat::Json));

  // The first 20 per-group reports are unchanged by the resumed run.
  for (std::size_t i = 0; i < part.per_group.size(); ++i)
    CHECK(to_json(part.per_group[i]) == to_json(full.per_group[i]));

  ResultCache reopened(dir);
  CHECK(reopened.size() == m.entries.size());
}
