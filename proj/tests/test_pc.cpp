#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "pgdeg/builtins.hpp"
#include "pgdeg/error.hpp"
#include "pgdeg/group.hpp"
#include "pgdeg/pc.hpp"

using namespace pgdeg;

namespace {

GroupElement el(std::initializer_list<std::uint32_t> e) { return {Exponents(e)}; }

}  // namespace

TEST_CASE("Heisenberg(3) collector agrees with the matrix model") {
  const auto pres = heisenberg(3);
  CHECK(multiply(pres, el({0, 1, 0}), el({1, 0, 0})) == el({1, 1, 1}));
  const auto model = oracle::heisenberg_matrices(3);
  REQUIRE(model.size() == 27);
  CHECK(oracle::from_presentation(pres).mul == model.mul);
}

TEST_CASE("C9 collector agrees with Z/9") {
  const auto pres = cyclic(3, 2);
  CHECK(multiply(pres, el({1, 0}), el({2, 0})) == el({0, 1}));
  CHECK(inverse(pres, el({1, 0})) == el({2, 2}));
  CHECK(element_order(pres, el({1, 0})) == 9);
  CHECK(oracle::from_presentation(pres).mul == oracle::residues_mod9().mul);
}

TEST_CASE("Q8 and D4 collectors agree with their models") {
  CHECK(oracle::from_presentation(oracle::q8_presentation()).mul == oracle::quaternion_units().mul);
  CHECK(oracle::from_presentation(oracle::d4_presentation()).mul == oracle::square_symmetries().mul);
  CHECK(oracle::from_presentation(heisenberg(2)).mul == oracle::heisenberg_matrices(2).mul);
}

TEST_CASE("identity, inverse and element order") {
  const auto h = heisenberg(3);
  CHECK(multiply(h, identity(h), el({2, 1, 0})) == el({2, 1, 0}));
  CHECK(inverse(h, identity(h)) == identity(h));
  CHECK(inverse(h, el({1, 0, 0})) == el({2, 0, 0}));
  CHECK(element_order(h, identity(h)) == 1);
  CHECK(element_order(h, el({1, 1, 0})) == 3);
}

TEST_CASE("dimension mismatch is rejected") {
  const auto h = heisenberg(3);
  CHECK_THROWS_AS(multiply(h, el({1, 0}), el({1, 0, 0})), InputError);
  CHECK_THROWS_AS(inverse(h, el({1})), InputError);
  CHECK_THROWS_AS(element_order(h, el({3, 0, 0})), InputError);
}

TEST_CASE("consistency check") {
  CHECK(consistency_check(heisenberg(3)).consistent);
  CHECK(consistency_check(abelian(5, {3, 2, 1})).consistent);
  PcPresentation bad("bad", 3, 3);
  bad.set_power(0, {0, 1, 0});
  bad.set_commutator(1, 0, {0, 0, 1});
  const auto v = consistency_check(bad);
  CHECK_FALSE(v.consistent);
  REQUIRE(v.failure.has_value());
  CHECK(v.failure->lhs != v.failure->rhs);
}

TEST_CASE("support constraint and range checks") {
  PcPresentation p("x", 3, 3);
  CHECK_THROWS_AS(p.set_power(1, {0, 1, 0}), InputError);
  CHECK_THROWS_AS(p.set_commutator(1, 0, {0, 1, 0}), InputError);
  CHECK_THROWS_AS(p.set_commutator(2, 1, {0, 0, 1}), InputError);
  CHECK_THROWS_AS(p.set_power(0, {0, 3, 0}), InputError);
  CHECK_THROWS_AS(PcPresentation("y", 4, 2), InputError);
}

TEST_CASE("associativity on random triples") {
  std::mt19937 rng(7);
  for (const auto& pres : {heisenberg(3), oracle::q8_presentation(), direct_product(heisenberg(5), cyclic(5, 2))}) {
    std::uniform_int_distribution<std::uint32_t> digit(0, pres.prime() - 1);
    auto random = [&] {
      GroupElement x{Exponents(pres.rank())};
      for (auto& e : x.exps) e = digit(rng);
      return x;
    };
    for (int t = 0; t < 1000; ++t) {
      const auto a = random(), b = random(), c = random();
      REQUIRE(multiply(pres, multiply(pres, a, b), c) == multiply(pres, a, multiply(pres, b, c)));
      // Normal forms are fixed points of collection.
      REQUIRE(collect(pres, letters_of(a)) == a);
    }
  }
}

TEST_CASE("dense group matches the collector") {
  const auto pres = direct_product(heisenberg(3), cyclic(3, 2));
  const PcGroup g(pres);
  REQUIRE(g.order() == 243);
  for (Elem a = 0; a < g.order(); a += 7)
    for (Elem b = 0; b < g.order(); b += 5)
      REQUIRE(g.to_element(g.mul(a, b)) == multiply(pres, g.to_element(a), g.to_element(b)));
  for (Elem a = 0; a < g.order(); ++a) {
    REQUIRE(g.mul(a, g.inv(a)) == 0);
    REQUIRE(g.element_order(a) == element_order(pres, g.to_element(a)));
  }
}
