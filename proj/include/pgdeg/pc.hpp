#pragma once

// Power-commutator presentations of finite p-groups and the word collector.
//
// Generators g_1..g_n are stored 0-based. A presentation fixes, for every i,
// the normal form of g_i^p and, for every pair j > i, the normal form of the
// commutator [g_j, g_i] = g_j^-1 g_i^-1 g_j g_i. Right-hand sides must be
// supported strictly above the defining index, which makes
// G_k = <g_k, ..., g_n> a central series and collection terminate.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace pgdeg {

using Exponents = std::vector<std::uint32_t>;

bool is_prime(std::uint64_t n);

/// Normal form g_1^{e_1} ... g_n^{e_n} with 0 <= e_i < p.
struct GroupElement {
  Exponents exps;

  bool is_identity() const;
  bool operator==(const GroupElement&) const = default;
  auto operator<=>(const GroupElement&) const = default;
};

class PcPresentation {
 public:
  PcPresentation() = default;
  /// All relations trivial: the elementary abelian group of rank `rank`.
  PcPresentation(std::string name, std::uint32_t prime, std::size_t rank);

  const std::string& name() const { return name_; }
  void set_name(std::string name) { name_ = std::move(name); }
  std::uint32_t prime() const { return p_; }
  std::size_t rank() const { return n_; }
  /// log_p |G| for a consistent presentation.
  std::size_t order_exponent() const { return n_; }
  /// |G| = p^n, saturating at UINT64_MAX.
  std::uint64_t order() const;

  /// Sets g_i^p. Throws InputError on range or support violations.
  void set_power(std::size_t i, Exponents rhs);
  /// Sets [g_j, g_i] for j > i. Throws InputError on range or support violations.
  void set_commutator(std::size_t j, std::size_t i, Exponents rhs);

  const Exponents& power(std::size_t i) const { return pow_[i]; }
  const Exponents& commutator(std::size_t j, std::size_t i) const;

  bool power_trivial(std::size_t i) const;
  bool commutator_trivial(std::size_t j, std::size_t i) const;
  /// True when every commutator relation is trivial.
  bool is_abelian() const;

  bool operator==(const PcPresentation&) const = default;

 private:
  void check_rhs(const Exponents& rhs, std::size_t above, const char* what) const;
  std::size_t comm_slot(std::size_t j, std::size_t i) const { return j * (j - 1) / 2 + i; }

  std::string name_;
  std::uint32_t p_ = 2;
  std::size_t n_ = 0;
  std::vector<Exponents> pow_;
  std::vector<Exponents> comm_;
};

/// A generator letter with multiplicity, g_gen^count.
struct Letter {
  std::uint32_t gen;
  std::uint32_t count;
};

GroupElement identity(const PcPresentation& pres);
GroupElement generator(const PcPresentation& pres, std::size_t i);

/// Letters spelling a normal form left to right.
std::vector<Letter> letters_of(const GroupElement& a);

/// Collects an arbitrary word into normal form.
GroupElement collect(const PcPresentation& pres, const std::vector<Letter>& word);

GroupElement multiply(const PcPresentation& pres, const GroupElement& a, const GroupElement& b);
GroupElement inverse(const PcPresentation& pres, const GroupElement& a);
GroupElement power(const PcPresentation& pres, const GroupElement& a, std::uint64_t k);
std::uint64_t element_order(const PcPresentation& pres, const GroupElement& a);

/// One associativity test word evaluated in two ways.
struct OverlapResult {
  std::string label;  // e.g. "g3 g2 g1", "g2^p g1"
  GroupElement lhs;
  GroupElement rhs;
};

/// Evaluates the standard overlap test words; the presentation is consistent
/// iff lhs == rhs for all of them.
std::vector<OverlapResult> evaluate_overlaps(const PcPresentation& pres);

struct ConsistencyVerdict {
  bool consistent = true;
  std::optional<OverlapResult> failure;
};

ConsistencyVerdict consistency_check(const PcPresentation& pres);

}  // namespace pgdeg
