#pragma once

// Minimal faithful permutation degree.
//
// mu(G) is the least sum of indices [G : H_i] over collections of subgroups
// whose normal cores intersect trivially. Every nontrivial normal subgroup of a
// p-group meets the socle Omega_1(Z(G)), so only the trace of each core on the
// socle matters; the search runs over that small subspace lattice.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "pgdeg/group.hpp"
#include "pgdeg/lattice.hpp"
#include "pgdeg/subgroup.hpp"

namespace pgdeg {

using Permutation = std::vector<std::uint32_t>;

struct MuCertificate {
  std::uint64_t mu = 1;
  std::vector<Subgroup> collection;
  /// perms[i] is the action of pc generator g_{i+1} on all mu points; the
  /// cosets of collection[0] come first, then collection[1], and so on.
  std::vector<Permutation> perms;
};

/// What counts as a faithful collection during the search.
enum class FaithfulCriterion {
  /// The intersection of cores meets the socle trivially.
  Socle,
  /// The intersection of cores is trivial.
  FullCore,
};

struct DegreeSearchResult {
  std::uint64_t mu = 1;
  /// Class indices into SubgroupLattice::classes().
  std::vector<std::uint32_t> chosen;
};

/// mu(G/N) computed on the lattice of G: the collection ranges over classes of
/// subgroups containing the normal subgroup `n`. Returns mu = 1 when n = G.
DegreeSearchResult interval_minimal_degree(const SubgroupLattice& lattice, const ElemSet& n,
                                           FaithfulCriterion criterion = FaithfulCriterion::Socle,
                                           const Deadline* deadline = nullptr);

/// Preimage in G of the socle of G/N.
ElemSet socle_preimage(const PcGroup& g, const ElemSet& n);

struct DegreeOptions {
  bool abelian_fast_path = true;
  FaithfulCriterion criterion = FaithfulCriterion::Socle;
  const Deadline* deadline = nullptr;
};

MuCertificate minimal_degree(const PcGroup& g, const DegreeOptions& opts = {});
/// Throws InputError if the presentation is inconsistent.
MuCertificate minimal_degree(const PcPresentation& pres, const DegreeOptions& opts = {});

/// Exhaustive reference for small groups: dynamic programming over the
/// intersections of cores of all subgroup classes, using only the
/// canonical-form backend. Refuses groups larger than `max_order`.
std::uint64_t brute_force_minimal_degree(const PcPresentation& pres, std::uint64_t max_order = 64);

/// Right-coset action of each pc generator on the cosets of h, numbered by
/// least element.
std::vector<Permutation> coset_action(const PcGroup& g, const Subgroup& h);

enum class CertificateStatus {
  Ok,
  MalformedSubgroup,
  DegreeMismatch,
  CoreNotTrivial,
  MalformedPermutation,
  PermutationMismatch,
};

struct CertificateCheck {
  CertificateStatus status = CertificateStatus::Ok;
  std::string detail;
  explicit operator bool() const { return status == CertificateStatus::Ok; }
};

std::string to_string(CertificateStatus s);

/// Checks the degree sum, faithfulness and the permutations; minimality is not
/// re-verified.
CertificateCheck verify_certificate(const PcPresentation& pres, const MuCertificate& cert);

/// Sum of p^{n_i}; the degree of an abelian p-group with these invariants.
std::uint64_t abelian_degree(std::uint32_t p, const std::vector<std::uint32_t>& invariants);

}  // namespace pgdeg
