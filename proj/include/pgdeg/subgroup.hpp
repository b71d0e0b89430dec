#pragma once

// Subgroups in canonical induced-generating-sequence form, and the structural
// operations built on them: closure, membership, intersection, cores, the
// center and socle, normal-subgroup and subgroup-class enumeration, quotient
// presentations and abelian invariants.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

#include "pgdeg/group.hpp"
#include "pgdeg/pc.hpp"

namespace pgdeg {

/// Canonical form: generators have strictly increasing depth, leading
/// exponent 1, and zero exponent at the depth of every later generator.
/// Equal subgroups therefore have identical `gens`.
struct Subgroup {
  std::vector<Elem> gens;
  std::uint64_t order = 1;

  std::size_t order_exponent() const { return gens.size(); }
  bool operator==(const Subgroup& o) const { return gens == o.gens; }
  /// (order, lexicographic key) ordering used for every listing.
  bool operator<(const Subgroup& o) const {
    if (gens.size() != o.gens.size()) return gens.size() < o.gens.size();
    return gens < o.gens;
  }
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& h) const;
};

Subgroup trivial_subgroup();
Subgroup whole_group(const PcGroup& g);

Subgroup closure(const PcGroup& g, const std::vector<Elem>& seed);
Subgroup closure(const PcGroup& g, const std::vector<GroupElement>& seed);
inline Subgroup closure(const PcGroup& g, std::initializer_list<Elem> seed) {
  return closure(g, std::vector<Elem>(seed));
}
bool contains(const PcGroup& g, const Subgroup& h, Elem a);
/// All elements of h, in the order of their exponent vectors over h.gens.
std::vector<Elem> elements(const PcGroup& g, const Subgroup& h);

Subgroup intersect(const PcGroup& g, const Subgroup& h, const Subgroup& k);
Subgroup conjugate(const PcGroup& g, const Subgroup& h, Elem x);
bool is_normal(const PcGroup& g, const Subgroup& h);
bool is_subgroup_of(const PcGroup& g, const Subgroup& h, const Subgroup& k);
Subgroup normal_core(const PcGroup& g, const Subgroup& h);

Subgroup center(const PcGroup& g);
/// Omega_1(Z(G)).
Subgroup socle(const PcGroup& g);
/// [G, G]
Subgroup derived_subgroup(const PcGroup& g);

/// All normal subgroups, sorted by (order, canonical key).
std::vector<Subgroup> normal_subgroups(const PcGroup& g);
/// Every subgroup, sorted by (order, canonical key).
std::vector<Subgroup> all_subgroups(const PcGroup& g);

struct SubgroupClass {
  Subgroup representative;
  std::uint64_t size = 1;
};

/// One representative (the least canonical key) per conjugacy class, sorted by
/// (index ascending, canonical key).
std::vector<SubgroupClass> subgroup_classes(const PcGroup& g);

struct QuotientPresentation {
  PcPresentation pres;
  /// Image of each generator of G in G/N.
  std::vector<GroupElement> proj;
  /// Generators of G that survive as pc generators of G/N, in order.
  std::vector<std::size_t> kept;
};

/// Presentation of G/N. Throws InputError if n is not normal.
QuotientPresentation quotient(const PcGroup& g, const Subgroup& n);
/// Image of a in G/N, as an exponent vector over `q.kept`.
GroupElement project(const PcGroup& g, const Subgroup& n, const QuotientPresentation& q, Elem a);

/// Invariants {n_1 >= ... >= n_k} with G = C_{p^n_1} x ... x C_{p^n_k}.
/// Throws InputError if the presentation is not abelian.
std::vector<std::uint32_t> abelian_invariants(const PcPresentation& pres);

/// A basis x_1..x_k of an abelian group with |x_i| = p^{n_i} and
/// G = <x_1> x ... x <x_k>, matching abelian_invariants order.
std::vector<Elem> abelian_basis(const PcGroup& g);

}  // namespace pgdeg
