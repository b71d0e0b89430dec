#include "pgdeg/group.hpp"

#include "pgdeg/error.hpp"

namespace pgdeg {

PcGroup::PcGroup(PcPresentation pres) : pres_(std::move(pres)), p_(pres_.prime()), n_(pres_.rank()) {
  const std::uint64_t order = pres_.order();
  if (order > kMaxOrder)
    throw InputError("group of order " + std::to_string(order) + " exceeds the dense backend limit");
  size_ = static_cast<Elem>(order);
  place_.assign(n_, 1);
  for (std::size_t i = n_; i-- > 1;) place_[i - 1] = place_[i] * p_;

  auto index_of = [&](const Exponents& e) {
    Elem x = 0;
    for (std::size_t k = 0; k < n_; ++k) x += e[k] * place_[k];
    return x;
  };

  rmul_.assign(static_cast<std::size_t>(size_) * n_, 0);
  // Column i only needs products inside G_{i+1}, whose columns are already
  // filled when generators are processed from the bottom up.
  for (std::size_t i = n_; i-- > 0;) {
    const Elem sub = place_[i];
    std::vector<Elem> conj_gen(n_, 0);
    for (std::size_t k = i + 1; k < n_; ++k) {
      Exponents e = pres_.commutator(k, i);
      e[k] = 1;  // g_k^{g_i} = g_k [g_k, g_i]; the commutator lives strictly below k
      conj_gen[k] = index_of(e);
    }
    const Elem pow_i = index_of(pres_.power(i));
    // conj[s] = s^{g_i} for s in G_{i+1}
    std::vector<Elem> conj(sub, 0);
    for (Elem s = 1; s < sub; ++s) {
      std::size_t last = n_ - 1;
      while (digit(s, last) == 0) --last;
      conj[s] = mul_from(conj[s - place_[last]], conj_gen[last], i + 1);
    }
    for (Elem r = 0; r < size_; ++r) {
      const Elem s = r % sub;
      const std::uint32_t ri = (r / sub) % p_;
      const Elem prefix = r - s - ri * sub;
      Elem out;
      if (ri + 1 < p_)
        out = prefix + (ri + 1) * sub + conj[s];
      else
        out = prefix + mul_from(pow_i, conj[s], i + 1);
      rmul_[static_cast<std::size_t>(r) * n_ + i] = out;
    }
  }

  inv_.assign(size_, 0);
  for (Elem x = 1; x < size_; ++x) {
    const std::size_t i = depth(x);
    const std::uint32_t e = digit(x, i);
    Elem y = inv_[x - e * place_[i]];
    // g_i^{-e} = g_i^{p-e} (g_i^p)^-1, and g_i^p lies in G_{i+1} below x.
    for (std::uint32_t t = 0; t < p_ - e; ++t) y = mul_gen(y, i);
    inv_[x] = mul_slow(y, inv_[index_of(pres_.power(i))]);
  }

  if (size_ <= kFullTableLimit) {
    table_.resize(static_cast<std::size_t>(size_) * size_);
    for (Elem a = 0; a < size_; ++a)
      for (Elem b = 0; b < size_; ++b) table_[static_cast<std::size_t>(a) * size_ + b] = mul_slow(a, b);
  }
}

Elem PcGroup::mul_from(Elem a, Elem b, std::size_t from) const {
  for (std::size_t k = from; k < n_ && b != 0; ++k) {
    const std::uint32_t d = digit(b, k);
    for (std::uint32_t t = 0; t < d; ++t) a = rmul_[static_cast<std::size_t>(a) * n_ + k];
    b -= d * place_[k];
  }
  return a;
}

Elem PcGroup::mul_slow(Elem a, Elem b) const { return mul_from(a, b, 0); }

Elem PcGroup::pow(Elem a, std::uint64_t k) const {
  Elem result = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    k >>= 1U;
    if (k > 0) base = mul(base, base);
  }
  return result;
}

std::uint64_t PcGroup::element_order(Elem a) const {
  std::uint64_t ord = 1;
  while (a != 0) {
    a = pow(a, p_);
    ord *= p_;
  }
  return ord;
}

std::size_t PcGroup::depth(Elem a) const {
  if (a == 0) return n_;
  std::size_t i = 0;
  while (a < place_[i]) ++i;
  return i;
}

GroupElement PcGroup::to_element(Elem a) const {
  GroupElement g{Exponents(n_, 0)};
  for (std::size_t k = 0; k < n_; ++k) g.exps[k] = digit(a, k);
  return g;
}

Elem PcGroup::from_element(const GroupElement& g) const {
  if (g.exps.size() != n_) throw InputError("element dimension does not match the group");
  Elem x = 0;
  for (std::size_t k = 0; k < n_; ++k) {
    if (g.exps[k] >= p_) throw InputError("exponent out of range");
    x += g.exps[k] * place_[k];
  }
  return x;
}

}  // namespace pgdeg
