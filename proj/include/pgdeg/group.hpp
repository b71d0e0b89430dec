#pragma once

// Dense realisation of a consistent pc presentation: elements are integers
// whose base-p digits are the normal-form exponents (g_1 most significant), so
// the subgroup G_k = <g_k, ..., g_n> is exactly the index range [0, p^{n-k+1}).

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "pgdeg/pc.hpp"

namespace pgdeg {

using Elem = std::uint32_t;

class PcGroup {
 public:
  /// Largest order accepted by the dense backend.
  static constexpr std::uint64_t kMaxOrder = std::uint64_t{1} << 24;
  /// Groups up to this order also get a full multiplication table.
  static constexpr std::uint64_t kFullTableLimit = 4096;

  explicit PcGroup(PcPresentation pres);

  const PcPresentation& presentation() const { return pres_; }
  std::uint32_t prime() const { return p_; }
  std::size_t rank() const { return n_; }
  Elem order() const { return size_; }

  Elem identity() const { return 0; }
  Elem generator(std::size_t i) const { return place_[i]; }

  Elem mul(Elem a, Elem b) const {
    if (!table_.empty()) return table_[static_cast<std::size_t>(a) * size_ + b];
    return mul_slow(a, b);
  }
  Elem inv(Elem a) const { return inv_[a]; }
  Elem pow(Elem a, std::uint64_t k) const;
  /// g^-1 a g
  Elem conj(Elem a, Elem g) const { return mul(inv_[g], mul(a, g)); }
  /// [a, b] = a^-1 b^-1 a b
  Elem comm(Elem a, Elem b) const { return mul(mul(inv_[a], inv_[b]), mul(a, b)); }
  /// a * g_i
  Elem mul_gen(Elem a, std::size_t i) const { return rmul_[static_cast<std::size_t>(a) * n_ + i]; }
  std::uint64_t element_order(Elem a) const;

  std::uint32_t digit(Elem a, std::size_t i) const { return (a / place_[i]) % p_; }
  /// Index of the first nonzero exponent, or rank() for the identity.
  std::size_t depth(Elem a) const;
  /// Exponent at depth(a).
  std::uint32_t leading(Elem a) const { return digit(a, depth(a)); }
  /// p^{n-1-i}: the index weight of generator i.
  Elem place(std::size_t i) const { return place_[i]; }

  GroupElement to_element(Elem a) const;
  Elem from_element(const GroupElement& g) const;

 private:
  Elem mul_slow(Elem a, Elem b) const;
  Elem mul_from(Elem a, Elem b, std::size_t from) const;

  PcPresentation pres_;
  std::uint32_t p_;
  std::size_t n_;
  Elem size_;
  std::vector<Elem> place_;
  std::vector<Elem> rmul_;
  std::vector<Elem> inv_;
  std::vector<Elem> table_;
};

}  // namespace pgdeg
