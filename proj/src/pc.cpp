#include "pgdeg/pc.hpp"

#include <algorithm>
#include <limits>

#include "pgdeg/error.hpp"

namespace pgdeg {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

bool GroupElement::is_identity() const {
  return std::all_of(exps.begin(), exps.end(), [](std::uint32_t e) { return e == 0; });
}

PcPresentation::PcPresentation(std::string name, std::uint32_t prime, std::size_t rank)
    : name_(std::move(name)), p_(prime), n_(rank) {
  if (!is_prime(prime)) throw InputError("p must be prime (got " + std::to_string(prime) + ")");
  pow_.assign(n_, Exponents(n_, 0));
  comm_.assign(n_ * (n_ == 0 ? 0 : n_ - 1) / 2, Exponents(n_, 0));
}

std::uint64_t PcPresentation::order() const {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < n_; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / p_)
      return std::numeric_limits<std::uint64_t>::max();
    r *= p_;
  }
  return r;
}

void PcPresentation::check_rhs(const Exponents& rhs, std::size_t above, const char* what) const {
  if (rhs.size() != n_)
    throw InputError(std::string(what) + ": expected " + std::to_string(n_) + " exponents, got " +
                     std::to_string(rhs.size()));
  for (std::size_t k = 0; k < n_; ++k) {
    if (rhs[k] >= p_)
      throw InputError(std::string(what) + ": exponent " + std::to_string(rhs[k]) +
                       " out of range [0, " + std::to_string(p_) + ")");
    if (k <= above && rhs[k] != 0)
      throw InputError(std::string(what) + ": support constraint violated at generator " +
                       std::to_string(k + 1));
  }
}

void PcPresentation::set_power(std::size_t i, Exponents rhs) {
  if (i >= n_) throw InputError("power relation index out of range");
  check_rhs(rhs, i, "power relation");
  pow_[i] = std::move(rhs);
}

void PcPresentation::set_commutator(std::size_t j, std::size_t i, Exponents rhs) {
  if (j >= n_ || i >= j) throw InputError("commutator relation requires n >= j > i >= 1");
  check_rhs(rhs, j, "commutator relation");
  comm_[comm_slot(j, i)] = std::move(rhs);
}

const Exponents& PcPresentation::commutator(std::size_t j, std::size_t i) const {
  return comm_[comm_slot(j, i)];
}

bool PcPresentation::power_trivial(std::size_t i) const {
  return std::all_of(pow_[i].begin(), pow_[i].end(), [](std::uint32_t e) { return e == 0; });
}

bool PcPresentation::commutator_trivial(std::size_t j, std::size_t i) const {
  const auto& c = commutator(j, i);
  return std::all_of(c.begin(), c.end(), [](std::uint32_t e) { return e == 0; });
}

bool PcPresentation::is_abelian() const {
  for (std::size_t j = 1; j < n_; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!commutator_trivial(j, i)) return false;
  return true;
}

GroupElement identity(const PcPresentation& pres) { return {Exponents(pres.rank(), 0)}; }

GroupElement generator(const PcPresentation& pres, std::size_t i) {
  GroupElement g = identity(pres);
  g.exps.at(i) = 1;
  return g;
}

std::vector<Letter> letters_of(const GroupElement& a) {
  std::vector<Letter> w;
  for (std::size_t k = 0; k < a.exps.size(); ++k)
    if (a.exps[k] != 0) w.push_back({static_cast<std::uint32_t>(k), a.exps[k]});
  return w;
}

namespace {

void check_dims(const PcPresentation& pres, const GroupElement& a) {
  if (a.exps.size() != pres.rank())
    throw InputError("element has " + std::to_string(a.exps.size()) +
                     " exponents but the presentation has rank " + std::to_string(pres.rank()));
  for (std::uint32_t e : a.exps)
    if (e >= pres.prime()) throw InputError("exponent " + std::to_string(e) + " out of range [0, p)");
}

// Collection from the left. The collected prefix is kept as an exponent
// vector; pending letters sit on a stack. Multiplying by g_i moves it past
// the collected tail using t g_i = g_i t^{g_i}, with g_k^{g_i} = g_k [g_k, g_i].
class Collector {
 public:
  Collector(const PcPresentation& pres, Exponents start)
      : pres_(pres), p_(pres.prime()), n_(pres.rank()), r_(std::move(start)) {}

  void push_word(const std::vector<Letter>& w) {
    for (auto it = w.rbegin(); it != w.rend(); ++it) stack_.push_back(*it);
  }

  Exponents run() {
    while (!stack_.empty()) {
      Letter& top = stack_.back();
      const std::uint32_t gen = top.gen;
      if (--top.count == 0) stack_.pop_back();
      step(gen);
    }
    return std::move(r_);
  }

 private:
  void push_normal(const Exponents& w) {
    for (std::size_t k = n_; k-- > 0;)
      if (w[k] != 0) stack_.push_back({static_cast<std::uint32_t>(k), w[k]});
  }

  void step(std::size_t i) {
    bool tail_empty = true;
    for (std::size_t k = i + 1; k < n_; ++k)
      if (r_[k] != 0) {
        tail_empty = false;
        break;
      }
    if (!tail_empty) {
      Exponents tail(r_.begin() + static_cast<std::ptrdiff_t>(i) + 1, r_.end());
      std::fill(r_.begin() + static_cast<std::ptrdiff_t>(i) + 1, r_.end(), 0);
      // Pending order: (g_i^p rhs if overflowing) then tail^{g_i}.
      for (std::size_t k = n_; k-- > i + 1;) {
        const std::uint32_t t = tail[k - i - 1];
        for (std::uint32_t rep = 0; rep < t; ++rep) {
          push_normal(pres_.commutator(k, i));
          stack_.push_back({static_cast<std::uint32_t>(k), 1});
        }
      }
    }
    if (++r_[i] == p_) {
      r_[i] = 0;
      push_normal(pres_.power(i));
    }
  }

  const PcPresentation& pres_;
  std::uint32_t p_;
  std::size_t n_;
  Exponents r_;
  std::vector<Letter> stack_;
};

GroupElement collect_from(const PcPresentation& pres, Exponents start,
                          const std::vector<Letter>& word) {
  Collector c(pres, std::move(start));
  c.push_word(word);
  return {c.run()};
}

std::vector<Letter> cat(std::vector<Letter> a, const std::vector<Letter>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string gname(std::size_t i) { return "g" + std::to_string(i + 1); }

}  // namespace

GroupElement collect(const PcPresentation& pres, const std::vector<Letter>& word) {
  for (const auto& l : word)
    if (l.gen >= pres.rank()) throw InputError("letter refers to a generator outside the presentation");
  return collect_from(pres, Exponents(pres.rank(), 0), word);
}

GroupElement multiply(const PcPresentation& pres, const GroupElement& a, const GroupElement& b) {
  check_dims(pres, a);
  check_dims(pres, b);
  return collect_from(pres, a.exps, letters_of(b));
}

GroupElement power(const PcPresentation& pres, const GroupElement& a, std::uint64_t k) {
  check_dims(pres, a);
  GroupElement result = identity(pres);
  GroupElement base = a;
  while (k > 0) {
    if (k & 1U) result = multiply(pres, result, base);
    k >>= 1U;
    if (k > 0) base = multiply(pres, base, base);
  }
  return result;
}

std::uint64_t element_order(const PcPresentation& pres, const GroupElement& a) {
  check_dims(pres, a);
  std::uint64_t ord = 1;
  GroupElement x = a;
  while (!x.is_identity()) {
    x = power(pres, x, pres.prime());
    ord *= pres.prime();
  }
  return ord;
}

GroupElement inverse(const PcPresentation& pres, const GroupElement& a) {
  check_dims(pres, a);
  // Peel generators from the left: (g_i^e r)^-1 = r^-1 g_i^{-e}, where
  // g_i^{-e} = g_i^{p-e} (g_i^p)^-1.
  std::size_t i = 0;
  while (i < a.exps.size() && a.exps[i] == 0) ++i;
  if (i == a.exps.size()) return a;
  GroupElement rest = a;
  const std::uint32_t e = rest.exps[i];
  rest.exps[i] = 0;
  GroupElement inv_rest = inverse(pres, rest);
  std::vector<Letter> word{{static_cast<std::uint32_t>(i), pres.prime() - e}};
  for (const Letter& l : letters_of(inverse(pres, {pres.power(i)}))) word.push_back(l);
  return collect_from(pres, inv_rest.exps, word);
}

std::vector<OverlapResult> evaluate_overlaps(const PcPresentation& pres) {
  const std::size_t n = pres.rank();
  const std::uint32_t p = pres.prime();
  std::vector<OverlapResult> out;
  auto word = [&](const GroupElement& g) { return letters_of(g); };
  auto gen = [](std::size_t i, std::uint32_t c = 1) {
    return std::vector<Letter>{{static_cast<std::uint32_t>(i), c}};
  };
  auto pw = [&](std::size_t i) { return letters_of({pres.power(i)}); };

  // (g_k g_j) g_i = g_k (g_j g_i), k > j > i
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        GroupElement kj = collect(pres, cat(gen(k), gen(j)));
        GroupElement ji = collect(pres, cat(gen(j), gen(i)));
        out.push_back({gname(k) + " " + gname(j) + " " + gname(i),
                       collect(pres, cat(word(kj), gen(i))),
                       collect(pres, cat(gen(k), word(ji)))});
      }
  // (g_j^p) g_i = g_j^{p-1} (g_j g_i), j > i
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      GroupElement ji = collect(pres, cat(gen(j), gen(i)));
      out.push_back({gname(j) + "^p " + gname(i), collect(pres, cat(pw(j), gen(i))),
                     collect(pres, cat(gen(j, p - 1), word(ji)))});
    }
  // g_j (g_i^p) = (g_j g_i) g_i^{p-1}, j > i
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      GroupElement ji = collect(pres, cat(gen(j), gen(i)));
      out.push_back({gname(j) + " " + gname(i) + "^p", collect(pres, cat(gen(j), pw(i))),
                     collect(pres, cat(word(ji), gen(i, p - 1)))});
    }
  // g_i (g_i^p) = (g_i^p) g_i
  for (std::size_t i = 0; i < n; ++i)
    out.push_back({gname(i) + " " + gname(i) + "^p", collect(pres, cat(gen(i), pw(i))),
                   collect(pres, cat(pw(i), gen(i)))});
  return out;
}

ConsistencyVerdict consistency_check(const PcPresentation& pres) {
  for (auto& o : evaluate_overlaps(pres))
    if (o.lhs != o.rhs) return {false, std::move(o)};
  return {true, std::nullopt};
}

}  // namespace pgdeg
