#pragma once

// Dense subgroup lattice: every subgroup is an element bitset over the
// enumerated group. Used by the degree search and the quotient scanner; the
// canonical-form routines in subgroup.hpp are the reference it is tested
// against.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "pgdeg/group.hpp"
#include "pgdeg/subgroup.hpp"

namespace pgdeg {

class ElemSet {
 public:
  ElemSet() = default;
  explicit ElemSet(std::size_t universe) : words_((universe + 63) / 64, 0) {}

  void set(Elem x) { words_[x >> 6] |= std::uint64_t{1} << (x & 63); }
  bool test(Elem x) const { return (words_[x >> 6] >> (x & 63)) & 1U; }
  std::size_t count() const;
  bool subset_of(const ElemSet& o) const;
  ElemSet& operator&=(const ElemSet& o);
  ElemSet operator&(const ElemSet& o) const {
    ElemSet r = *this;
    r &= o;
    return r;
  }
  bool operator==(const ElemSet&) const = default;
  std::size_t hash() const;

  template <typename F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w)
      for (std::uint64_t bits = words_[w]; bits != 0; bits &= bits - 1)
        f(static_cast<Elem>(w * 64 + static_cast<std::size_t>(__builtin_ctzll(bits))));
  }

 private:
  std::vector<std::uint64_t> words_;
};

/// Cooperative time limit checked inside long loops.
class Deadline {
 public:
  Deadline() = default;
  explicit Deadline(std::chrono::steady_clock::duration budget)
      : end_(std::chrono::steady_clock::now() + budget) {}
  bool active() const { return end_.has_value(); }
  /// Throws Timeout once the budget is spent.
  void check() const;

 private:
  std::optional<std::chrono::steady_clock::time_point> end_;
};

ElemSet to_set(const PcGroup& g, const Subgroup& h);
/// Canonical form of the subgroup whose elements are `s`.
Subgroup to_subgroup(const PcGroup& g, const ElemSet& s);

class SubgroupLattice {
 public:
  enum class Scope { All, Normal };

  struct Node {
    ElemSet elems;
    Subgroup canonical;
    std::uint32_t order_exp = 0;
    std::uint32_t class_id = 0;
  };

  struct Class {
    std::uint32_t rep = 0;  // node id with the least canonical key
    std::uint64_t size = 1;
    std::uint64_t index = 1;  // [G : H]
    ElemSet core;
  };

  SubgroupLattice(const PcGroup& g, Scope scope, const Deadline* deadline = nullptr);

  const PcGroup& group() const { return g_; }
  Scope scope() const { return scope_; }
  const std::vector<Node>& nodes() const { return nodes_; }
  /// Sorted by (index ascending, canonical key). Empty for Scope::Normal.
  const std::vector<Class>& classes() const { return classes_; }
  /// Node ids of normal subgroups, sorted by (order, canonical key).
  const std::vector<std::uint32_t>& normal() const { return normal_; }
  std::optional<std::uint32_t> find(const ElemSet& s) const;

 private:
  /// Returns (id, inserted).
  std::pair<std::uint32_t, bool> insert(ElemSet s, const std::vector<Elem>& seed);
  void build(const Deadline* deadline);
  void build_classes(const Deadline* deadline);

  const PcGroup& g_;
  Scope scope_;
  std::vector<Node> nodes_;
  std::vector<Class> classes_;
  std::vector<std::uint32_t> normal_;
  std::unordered_map<std::size_t, std::vector<std::uint32_t>> buckets_;
};

}  // namespace pgdeg
