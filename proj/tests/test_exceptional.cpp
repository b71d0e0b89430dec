#include <chrono>
#include <set>

#include "corpus_util.hpp"
#include "doctest.h"
#include "oracle.hpp"
#include "pgdeg/builtins.hpp"
#include "pgdeg/error.hpp"
#include "pgdeg/exceptional.hpp"
#include "pgdeg/report.hpp"

using namespace pgdeg;

namespace {

// Everything but the method label, which records how a value was obtained.
nlohmann::json verdicts(const ExceptionalReport& r) {
  nlohmann::json j = to_json(r);
  for (auto& q : j["quotients"]) q.erase("method");
  return j;
}

void check_shape(const PcPresentation& pres, const ExceptionalReport& r) {
  const PcGroup g(pres);
  const auto normals = normal_subgroups(g);
  CHECK(r.entries.size() + 2 == normals.size());
  std::set<std::vector<Exponents>> seen;
  bool any = false;
  for (const auto& e : r.entries) {
    CHECK(seen.insert(e.subgroup).second);
    CHECK(e.subgroup_order > 1);
    CHECK(e.subgroup_order < g.order());
    CHECK(e.subgroup_order * e.quotient_order == g.order());
    CHECK(e.distinguished == (e.mu_quotient > r.mu));
    any = any || e.distinguished;
  }
  CHECK(r.exceptional == any);
  CHECK(r.exceptional == (r.distinguished_count() > 0));
}

}  // namespace

TEST_CASE("Heisenberg(3) is not exceptional") {
  const ExceptionalReport r = distinguished_quotients(heisenberg(3));
  CHECK(r.mu == 9);
  CHECK_FALSE(r.exceptional);
  for (const auto& e : r.entries) {
    CHECK(e.quotient_order <= 9);
    CHECK(e.mu_quotient <= 6);
  }
  check_shape(heisenberg(3), r);
  CHECK_FALSE(is_exceptional(heisenberg(3)));
}

TEST_CASE("abelian groups are never exceptional") {
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::uint32_t k = 1; k <= 6; ++k) {
      std::uint64_t order = 1;
      for (std::uint32_t i = 0; i < k; ++i) order *= p;
      if (order > 729) continue;
      for (const auto& part : partitions(k)) {
        const PcPresentation a = abelian(p, part);
        CAPTURE(a.name());
        const ExceptionalReport r = distinguished_quotients(a);
        CHECK(r.ok());
        CHECK_FALSE(r.exceptional);
      }
    }
}

TEST_CASE("no exceptional groups of order dividing p^4") {
  for (std::uint64_t order : {2, 4, 8, 16, 3, 9, 27, 81, 5, 25, 125}) {
    for (const auto& pres : testing_corpus::load(order)) {
      CAPTURE(pres.name());
      const auto r = distinguished_quotients(pres);
      check_shape(pres, r);
      CHECK_FALSE(r.exceptional);
    }
  }
}

TEST_CASE("order 32 verdicts agree with the Cayley-table oracle") {
  std::size_t exceptional = 0;
  for (const auto& pres : testing_corpus::load(32)) {
    CAPTURE(pres.name());
    const auto r = distinguished_quotients(pres);
    check_shape(pres, r);
    const auto table = oracle::from_presentation(pres);
    CHECK(r.mu == oracle::mu(table));
    CHECK(r.distinguished_count() == oracle::distinguished_count(table));
    if (r.exceptional) ++exceptional;
  }
  CHECK(exceptional >= 1);
  CHECK(exceptional == 2);
}

TEST_CASE("routes and shortcuts agree") {
  for (std::uint64_t order : {16, 32, 27, 81, 243, 125}) {
    for (const auto& pres : testing_corpus::load(order)) {
      CAPTURE(pres.name());
      const auto base = distinguished_quotients(pres);
      ScanOptions quotient_route;
      quotient_route.route = QuotientRoute::Quotient;
      quotient_route.abelian_fast_path = false;
      quotient_route.cyclic_skip = false;
      CHECK(verdicts(distinguished_quotients(pres, quotient_route)) == verdicts(base));
      ScanOptions no_skip;
      no_skip.cyclic_skip = false;
      no_skip.abelian_fast_path = false;
      CHECK(verdicts(distinguished_quotients(pres, no_skip)) == verdicts(base));
    }
  }
}

TEST_CASE("timeouts and bad input") {
  ScanOptions tight;
  tight.timeout = std::chrono::milliseconds(0);
  const auto big = builtin_group("elementary(3,6)");
  ScanOptions slow = tight;
  slow.abelian_fast_path = false;
  const auto r = distinguished_quotients(big, slow);
  CHECK(r.status == "timeout");
  CHECK_FALSE(r.ok());
  CHECK_FALSE(r.exceptional);
  CHECK_THROWS_AS(is_exceptional(big, slow), Timeout);

  PcPresentation bad("bad", 3, 3);
  bad.set_power(0, {0, 1, 0});
  bad.set_commutator(1, 0, {0, 0, 1});
  CHECK_THROWS_AS(distinguished_quotients(bad), InputError);

  CHECK(parse_route("quotient") == QuotientRoute::Quotient);
  CHECK(to_string(QuotientRoute::Interval) == "interval");
  CHECK_THROWS_AS(parse_route("fast"), InputError);
}
