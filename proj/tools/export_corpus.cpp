// Builds corpora of all groups of order p^k, k = 1..K, as pc presentations.
//
// Every group G of order p^{n+1} has a central subgroup Z of order p, so it is
// a central extension of C_p by H = G/Z of order p^n. Extensions of a pc
// presentation of H append z = g_{n+1} to every relation:
//
//   g_i^p = w_i z^{c_i},   [g_j, g_i] = w_ji z^{c_ji}.
//
// The consistent choices of c form the cocycle space Z^2; substituting
// g_k -> g_k z^{t_k} moves c inside a coboundary coset, and rescaling z or
// applying an automorphism of H gives isomorphic groups. The tool enumerates
// orbit representatives of the projective classes (plus the split class),
// builds each group and drops it if an isomorphism to an earlier group with
// the same colour-refinement invariant exists.
// The per-order counts are checked against the known numbers of groups.

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "CLI11.hpp"
#include "pgdeg/group.hpp"
#include "pgdeg/lattice.hpp"
#include "pgdeg/pc.hpp"
#include "pgdeg/pcp_io.hpp"
#include "pgdeg/subgroup.hpp"

using namespace pgdeg;
namespace fs = std::filesystem;

namespace {

using Vec = std::vector<std::uint32_t>;

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  for (std::uint32_t e = p - 2, b = a; e; e >>= 1, b = b * b % p)
    if (e & 1) r = r * b % p;
  return r;
}

// Row space over F_p in reduced echelon form. Each stored row remembers its
// coefficients over the vectors passed to add(), so membership tests can
// also return coordinates.
class Span {
 public:
  Span(std::size_t dim, std::uint32_t p) : dim_(dim), p_(p) {}

  /// Returns true if v was independent of the current rows.
  bool add(const Vec& v) {
    Vec coeff(inputs_ + 1, 0);
    coeff[inputs_] = 1;
    ++inputs_;
    for (auto& c : coeffs_) c.push_back(0);
    Vec r = v;
    reduce(r, coeff);
    auto piv = std::find_if(r.begin(), r.end(), [](std::uint32_t x) { return x != 0; });
    if (piv == r.end()) return false;
    const std::size_t col = static_cast<std::size_t>(piv - r.begin());
    const std::uint32_t s = inv_mod(*piv, p_);
    for (auto& x : r) x = x * s % p_;
    for (auto& x : coeff) x = x * s % p_;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::uint32_t f = rows_[k][col];
      if (!f) continue;
      for (std::size_t c = 0; c < dim_; ++c) rows_[k][c] = (rows_[k][c] + (p_ - f) * r[c]) % p_;
      for (std::size_t c = 0; c < inputs_; ++c) coeffs_[k][c] = (coeffs_[k][c] + (p_ - f) * coeff[c]) % p_;
    }
    rows_.push_back(r);
    coeffs_.push_back(coeff);
    pivots_.push_back(col);
    return true;
  }

  /// Coefficients of v over the inputs, or false if v is not in the span.
  bool express(const Vec& v, Vec& out) const {
    Vec coeff(inputs_, 0);
    Vec r = v;
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::uint32_t f = r[pivots_[k]];
      if (!f) continue;
      for (std::size_t c = 0; c < dim_; ++c) r[c] = (r[c] + (p_ - f) * rows_[k][c]) % p_;
      for (std::size_t c = 0; c < inputs_; ++c) coeff[c] = (coeff[c] + f * coeffs_[k][c]) % p_;
    }
    if (std::any_of(r.begin(), r.end(), [](std::uint32_t x) { return x != 0; })) return false;
    out = coeff;
    return true;
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  void reduce(Vec& r, Vec& coeff) const {
    for (std::size_t k = 0; k < rows_.size(); ++k) {
      const std::uint32_t f = r[pivots_[k]];
      if (!f) continue;
      for (std::size_t c = 0; c < dim_; ++c) r[c] = (r[c] + (p_ - f) * rows_[k][c]) % p_;
      for (std::size_t c = 0; c < coeffs_[k].size(); ++c) coeff[c] = (coeff[c] + (p_ - f) * coeffs_[k][c]) % p_;
    }
  }

  std::size_t dim_;
  std::uint32_t p_;
  std::size_t inputs_ = 0;
  std::vector<Vec> rows_;
  std::vector<Vec> coeffs_;
  std::vector<std::size_t> pivots_;
};

/// Basis of {x : M x = 0} for M given by rows of length dim.
std::vector<Vec> nullspace(const std::vector<Vec>& rows, std::size_t dim, std::uint32_t p) {
  std::vector<Vec> m = rows;
  std::vector<std::size_t> pivcol;
  std::size_t r = 0;
  for (std::size_t c = 0; c < dim && r < m.size(); ++c) {
    std::size_t k = r;
    while (k < m.size() && m[k][c] == 0) ++k;
    if (k == m.size()) continue;
    std::swap(m[k], m[r]);
    const std::uint32_t s = inv_mod(m[r][c], p);
    for (auto& x : m[r]) x = x * s % p;
    for (std::size_t q = 0; q < m.size(); ++q) {
      if (q == r || m[q][c] == 0) continue;
      const std::uint32_t f = m[q][c];
      for (std::size_t d = 0; d < dim; ++d) m[q][d] = (m[q][d] + (p - f) * m[r][d]) % p;
    }
    pivcol.push_back(c);
    ++r;
  }
  std::vector<bool> is_piv(dim, false);
  for (auto c : pivcol) is_piv[c] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < dim; ++free) {
    if (is_piv[free]) continue;
    Vec v(dim, 0);
    v[free] = 1;
    for (std::size_t k = 0; k < pivcol.size(); ++k) v[pivcol[k]] = (p - m[k][free]) % p;
    basis.push_back(v);
  }
  return basis;
}

struct Relation {
  bool is_pow;
  std::size_t j, i;  // pow: i == j
};

std::vector<Relation> relations_of(std::size_t n) {
  std::vector<Relation> rel;
  for (std::size_t i = 0; i < n; ++i) rel.push_back({true, i, i});
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) rel.push_back({false, j, i});
  return rel;
}

const Exponents& rhs_of(const PcPresentation& h, const Relation& r) {
  return r.is_pow ? h.power(r.i) : h.commutator(r.j, r.i);
}

/// H with one extra central generator z_t per relation, appended to it.
PcPresentation universal(const PcPresentation& h, const std::vector<Relation>& rel) {
  const std::size_t n = h.rank(), N = n + rel.size();
  PcPresentation u("u", h.prime(), N);
  for (std::size_t t = 0; t < rel.size(); ++t) {
    Exponents e(N, 0);
    const Exponents& w = rhs_of(h, rel[t]);
    std::copy(w.begin(), w.end(), e.begin());
    e[n + t] = 1;
    if (rel[t].is_pow)
      u.set_power(rel[t].i, e);
    else
      u.set_commutator(rel[t].j, rel[t].i, e);
  }
  return u;
}

/// The extension of H with parameters c.
PcPresentation extension(const PcPresentation& h, const std::vector<Relation>& rel, const Vec& c) {
  const std::size_t n = h.rank();
  PcPresentation g("g", h.prime(), n + 1);
  for (std::size_t t = 0; t < rel.size(); ++t) {
    Exponents e(n + 1, 0);
    const Exponents& w = rhs_of(h, rel[t]);
    std::copy(w.begin(), w.end(), e.begin());
    e[n] = c[t];
    if (std::all_of(e.begin(), e.end(), [](std::uint32_t x) { return x == 0; })) continue;
    if (rel[t].is_pow)
      g.set_power(rel[t].i, e);
    else
      g.set_commutator(rel[t].j, rel[t].i, e);
  }
  return g;
}

bool same_head(const GroupElement& a, const GroupElement& b, std::size_t n) {
  return std::equal(a.exps.begin(), a.exps.begin() + static_cast<std::ptrdiff_t>(n), b.exps.begin());
}

std::vector<Letter> word_in(const std::vector<GroupElement>& gens, const Exponents& e, std::size_t n) {
  std::vector<Letter> w;
  for (std::size_t k = 0; k < n; ++k)
    for (std::uint32_t a = 0; a < e[k]; ++a)
      for (const Letter& l : letters_of(gens[k])) w.push_back(l);
  return w;
}

// --- isomorphism invariant --------------------------------------------------

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 12) + (h >> 4);
  return h * 0x100000001b3ULL;
}

/// Stable colouring of the elements: starts from element order, centraliser
/// size, normaliser size of <x> and the number of p-th roots, then refines by
/// the colours of y, xy and [x, y] over all y. Isomorphisms preserve colours.
struct Colouring {
  std::uint64_t key = 0;
  std::vector<std::uint64_t> colour;
};

Colouring refine(const PcGroup& g, const std::vector<std::uint64_t>* seed = nullptr) {
  const Elem N = g.order();
  std::vector<Elem> stamp(N, 0);
  auto mark_cyclic = [&](Elem x) {
    Elem y = x;
    do {
      stamp[y] = x + 1;
      y = g.mul(y, x);
    } while (y != x);
  };
  std::vector<std::uint64_t> col(N);
  for (Elem x = 0; x < N; ++x) {
    mark_cyclic(x);
    std::uint64_t cent = 0, norm = 0, roots = 0;
    for (Elem y = 0; y < N; ++y) {
      cent += g.mul(x, y) == g.mul(y, x);
      norm += stamp[g.conj(x, y)] == x + 1;
      roots += g.pow(y, g.prime()) == x;
    }
    col[x] = mix(mix(mix(mix(1, g.element_order(x)), cent), norm), roots);
    if (seed) col[x] = mix(col[x], (*seed)[x]);
  }
  auto distinct = [](std::vector<std::uint64_t> v) {
    std::sort(v.begin(), v.end());
    return static_cast<std::size_t>(std::unique(v.begin(), v.end()) - v.begin());
  };
  std::size_t classes = distinct(col);
  std::vector<std::uint64_t> pairs(N);
  for (int round = 0; round < 6; ++round) {
    std::vector<std::uint64_t> next(N);
    for (Elem x = 0; x < N; ++x) {
      mark_cyclic(x);
      for (Elem y = 0; y < N; ++y) {
        const Elem xy = g.mul(x, y);
        const Elem c = g.mul(g.inv(g.mul(y, x)), xy);
        const std::uint64_t flags = (stamp[y] == x + 1) * 1U + (stamp[g.conj(x, y)] == x + 1) * 2U;
        pairs[y] = mix(mix(mix(mix(7, col[y]), col[xy]), col[c]), flags);
      }
      std::sort(pairs.begin(), pairs.end());
      std::uint64_t h = mix(11, col[x]);
      for (std::uint64_t v : pairs) h = mix(h, v);
      next[x] = h;
    }
    col.swap(next);
    const std::size_t now = distinct(col);
    if (now == classes && round > 0) break;
    classes = now;
  }
  Colouring out;
  out.colour = col;
  std::sort(col.begin(), col.end());
  out.key = mix(13, N);
  for (std::uint64_t v : col) out.key = mix(out.key, v);
  return out;
}

/// Second-stage invariant for groups that share a colouring key: the
/// colourings of quotients by characteristic subgroups, and a colouring of G
/// seeded with membership in them.
std::uint64_t deep_key(const PcGroup& g) {
  const Elem N = g.order();
  const Subgroup z = center(g);
  const Subgroup d = derived_subgroup(g);
  std::vector<Elem> seed = d.gens;
  for (std::size_t i = 0; i < g.rank(); ++i) seed.push_back(g.pow(g.generator(i), g.prime()));
  const Subgroup phi = closure(g, seed);
  std::vector<Elem> low, powers;
  for (Elem x = 1; x < N; ++x) {
    if (g.pow(x, g.prime()) == 0) low.push_back(x);
    powers.push_back(g.pow(x, g.prime()));
  }
  const Subgroup omega = closure(g, low);
  const Subgroup agemo = closure(g, powers);
  std::vector<Elem> gamma3_seed;
  for (Elem a : elements(g, d))
    for (Elem x = 0; x < N; ++x) gamma3_seed.push_back(g.comm(a, x));
  const Subgroup gamma3 = closure(g, gamma3_seed);
  std::vector<Elem> cent_d;
  const std::vector<Elem> d_elems = elements(g, d);
  for (Elem x = 0; x < N; ++x)
    if (std::all_of(d_elems.begin(), d_elems.end(), [&](Elem a) { return g.mul(a, x) == g.mul(x, a); }))
      cent_d.push_back(x);
  const Subgroup cd = closure(g, cent_d);

  std::uint64_t key = mix(17, N);
  std::vector<std::uint64_t> flags(N, 0);
  std::uint64_t bit = 1;
  for (const Subgroup* c : {&z, &d, &phi, &omega, &agemo, &gamma3, &cd}) {
    key = mix(key, c->order);
    if (c->order > 1 && c->order < N) key = mix(key, refine(PcGroup(quotient(g, *c).pres)).key);
    for (Elem x : elements(g, *c)) flags[x] |= bit;
    bit <<= 1;
  }
  return mix(key, refine(g, &flags).key);
}

// --- homomorphism search ----------------------------------------------------

/// Searches for bijective maps A -> B given by images of the pc generators of
/// A that satisfy the relations of A. Images are chosen from the last
/// generator upward so every relation can be checked as soon as its letters
/// are fixed; colours and injectivity prune candidates.
class IsoSearch {
 public:
  IsoSearch(const PcGroup& a, const std::vector<std::uint64_t>& ca, const PcGroup& b,
            const std::vector<std::uint64_t>& cb)
      : a_(a), b_(b), ca_(ca), cb_(cb), powp_(b.order()) {
    for (Elem x = 1; x < b.order(); ++x) {
      by_colour_[cb[x]].push_back(x);
      powp_[x] = b.pow(x, b.prime());
    }
  }

  /// Exhaustive: true iff A and B are isomorphic.
  bool exists() {
    rng_ = nullptr;
    return run();
  }

  /// Random bijection found by a capped search, or empty.
  std::vector<Elem> random(std::mt19937_64& rng, int attempts = 50, long budget = 20000) {
    rng_ = &rng;
    budget_cap_ = budget;
    for (int attempt = 0; attempt < attempts; ++attempt)
      if (run()) return img_;
    return {};
  }

 private:
  bool run() {
    if (a_.order() != b_.order() || a_.rank() != b_.rank()) return false;
    img_.assign(a_.rank(), 0);
    budget_ = budget_cap_;
    used_.assign(b_.order(), 0);
    used_[0] = 1;
    return dfs(a_.rank(), {0}, {0});
  }

  Elem eval(const Exponents& e, std::size_t from) const {
    Elem x = 0;
    for (std::size_t k = from; k < b_.rank(); ++k) x = b_.mul(x, b_.pow(img_[k], e[k]));
    return x;
  }

  // ka lists <g_level, ..., g_n> in A and kb their images, so the partial map
  // is checked for colour and injectivity on every element it reaches.
  bool dfs(std::size_t level, const std::vector<Elem>& ka, const std::vector<Elem>& kb) {
    if (level == 0) return true;
    if (rng_ && budget_-- <= 0) return false;
    const std::size_t i = level - 1;
    const PcPresentation& pres = a_.presentation();
    const Elem target_pow = eval(pres.power(i), i + 1);
    std::vector<Elem> target_comm(b_.rank(), 0);
    for (std::size_t j = i + 1; j < b_.rank(); ++j) target_comm[j] = eval(pres.commutator(j, i), j + 1);
    const Elem g = a_.generator(i);
    const auto same = by_colour_.find(ca_[g]);
    if (same == by_colour_.end()) return false;
    std::vector<Elem> cands;
    for (Elem x : same->second) {
      if (used_[x] || powp_[x] != target_pow) continue;
      bool ok = true;
      for (std::size_t j = i + 1; j < b_.rank() && ok; ++j) ok = b_.comm(img_[j], x) == target_comm[j];
      if (ok) cands.push_back(x);
    }
    if (rng_) {
      std::shuffle(cands.begin(), cands.end(), *rng_);
      if (cands.size() > 8) cands.resize(8);
    }
    std::vector<Elem> na, nb;
    for (Elem x : cands) {
      img_[i] = x;
      na = ka;
      nb = kb;
      bool ok = true;
      Elem ga = g, xa = x;
      for (std::uint32_t a = 1; a < b_.prime() && ok; ++a, ga = a_.mul(ga, g), xa = b_.mul(xa, x))
        for (std::size_t t = 0; t < ka.size(); ++t) {
          const Elem za = a_.mul(ga, ka[t]);
          const Elem zb = b_.mul(xa, kb[t]);
          if (used_[zb] || cb_[zb] != ca_[za]) {
            ok = false;
            break;
          }
          used_[zb] = 1;
          na.push_back(za);
          nb.push_back(zb);
        }
      if (ok && dfs(level - 1, na, nb)) return true;
      for (std::size_t t = ka.size(); t < nb.size(); ++t) used_[nb[t]] = 0;
      if (rng_ && budget_ <= 0) return false;
    }
    return false;
  }

  const PcGroup& a_;
  const PcGroup& b_;
  const std::vector<std::uint64_t>& ca_;
  const std::vector<std::uint64_t>& cb_;
  std::unordered_map<std::uint64_t, std::vector<Elem>> by_colour_;
  std::vector<Elem> powp_;
  std::mt19937_64* rng_ = nullptr;
  std::vector<Elem> img_;
  std::vector<char> used_;
  long budget_ = 0;
  long budget_cap_ = 20000;
};

/// Exhaustive isomorphism test by images of a minimal generating set of A,
/// for groups with few generators: a tuple is accepted when the induced map
/// on a spanning tree of the Cayley graph is a colour-preserving bijection
/// that respects right multiplication by every generator.
class TupleSearch {
 public:
  TupleSearch(const PcGroup& a, const std::vector<std::uint64_t>& ca, const PcGroup& b,
              const std::vector<std::uint64_t>& cb)
      : a_(a), b_(b), ca_(ca), cb_(cb) {
    std::vector<Elem> seed = derived_subgroup(a).gens;
    for (std::size_t i = 0; i < a.rank(); ++i) seed.push_back(a.pow(a.generator(i), a.prime()));
    Subgroup span = closure(a, seed);
    for (std::size_t i = 0; i < a.rank(); ++i) {
      const Elem x = a.generator(i);
      if (contains(a, span, x)) continue;
      gens_.push_back(x);
      seed.push_back(x);
      span = closure(a, seed);
    }
    // Breadth-first spanning tree: x = parent * gens_[via].
    const Elem n = a.order();
    parent_.assign(n, 0);
    via_.assign(n, 0);
    std::vector<bool> seen(n, false);
    seen[0] = true;
    order_.push_back(0);
    for (std::size_t q = 0; q < order_.size(); ++q)
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        const Elem y = a.mul(order_[q], gens_[j]);
        if (seen[y]) continue;
        seen[y] = true;
        parent_[y] = order_[q];
        via_[y] = static_cast<std::uint32_t>(j);
        order_.push_back(y);
      }
    for (Elem x = 1; x < b.order(); ++x) by_colour_[cb[x]].push_back(x);
    for (Elem g : gens_) ginv_.push_back(a.inv(g));
  }

  /// Number of colour-compatible tuples, capped.
  double tuples() const {
    double t = 1;
    for (Elem g : gens_) {
      const auto it = by_colour_.find(ca_[g]);
      t *= it == by_colour_.end() ? 0 : static_cast<double>(it->second.size());
    }
    return t;
  }

  bool exists() {
    if (a_.order() != b_.order() || order_.size() != a_.order()) return false;
    img_.assign(gens_.size(), 0);
    phi_.assign(a_.order(), 0);
    used_.assign(b_.order(), 0);
    defined_.assign(a_.order(), 0);
    stamp_ = 0;
    return choose(0);
  }

 private:
  bool choose(std::size_t i) {
    if (i == gens_.size()) return verify();
    const auto it = by_colour_.find(ca_[gens_[i]]);
    if (it == by_colour_.end()) return false;
    for (Elem x : it->second) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = cb_[b_.mul(img_[j], x)] == ca_[a_.mul(gens_[j], gens_[i])] &&
             cb_[b_.comm(x, img_[j])] == ca_[a_.comm(gens_[i], gens_[j])];
      if (!ok) continue;
      img_[i] = x;
      if (choose(i + 1)) return true;
    }
    return false;
  }

  // Defines phi along the tree and checks every edge as soon as both ends
  // are mapped, so a wrong tuple fails when its first relation closes.
  bool verify() {
    ++stamp_;
    used_[0] = stamp_;
    defined_[0] = stamp_;
    for (std::size_t q = 1; q < order_.size(); ++q) {
      const Elem x = order_[q];
      const Elem y = b_.mul(phi_[parent_[x]], img_[via_[x]]);
      if (used_[y] == stamp_ || cb_[y] != ca_[x]) return false;
      used_[y] = stamp_;
      defined_[x] = stamp_;
      phi_[x] = y;
      for (std::size_t j = 0; j < gens_.size(); ++j) {
        const Elem out = a_.mul(x, gens_[j]);
        if (defined_[out] == stamp_ && phi_[out] != b_.mul(y, img_[j])) return false;
        const Elem in = a_.mul(x, ginv_[j]);
        if (defined_[in] == stamp_ && b_.mul(phi_[in], img_[j]) != y) return false;
      }
    }
    return true;
  }

  const PcGroup& a_;
  const PcGroup& b_;
  const std::vector<std::uint64_t>& ca_;
  const std::vector<std::uint64_t>& cb_;
  std::vector<Elem> gens_;
  std::vector<Elem> order_;
  std::vector<Elem> parent_;
  std::vector<std::uint32_t> via_;
  std::unordered_map<std::uint64_t, std::vector<Elem>> by_colour_;
  std::vector<Elem> img_;
  std::vector<Elem> phi_;
  std::vector<std::uint32_t> used_;
  std::vector<std::uint32_t> defined_;
  std::vector<Elem> ginv_;
  std::uint32_t stamp_ = 0;
};

bool isomorphic(const PcGroup& a, const std::vector<std::uint64_t>& ca, const PcGroup& b,
                const std::vector<std::uint64_t>& cb) {
  TupleSearch tuples(a, ca, b, cb);
  if (tuples.tuples() <= 2e6) return tuples.exists();
  return IsoSearch(a, ca, b, cb).exists();
}

// --- enumeration -------------------------------------------------------------

struct Found {
  PcPresentation pres;
  std::vector<std::uint64_t> colour;
  std::optional<std::uint64_t> deep;
};

using Buckets = std::map<std::uint64_t, std::vector<Found>>;

/// Keeps `pres` unless it is isomorphic to a group already in its bucket.
/// Only groups sharing the deep invariant are compared: a cheap randomised
/// search catches most duplicates, then an exhaustive search decides.
void add_candidate(const PcPresentation& pres, Buckets& out, std::mt19937_64& rng) {
  if (!consistency_check(pres).consistent) throw std::runtime_error("internal: inconsistent extension");
  static std::size_t calls = 0;
  if (++calls % 500 == 0) std::cerr << "progress: " << calls << " candidates\n";
  const PcGroup g(pres);
  Colouring c = refine(g);
  auto& bucket = out[c.key];
  if (bucket.empty()) {
    bucket.push_back({pres, std::move(c.colour), std::nullopt});
    return;
  }
  const std::uint64_t deep = deep_key(g);
  std::vector<std::pair<const Found*, PcGroup>> peers;
  for (Found& f : bucket) {
    PcGroup other(f.pres);
    if (!f.deep) f.deep = deep_key(other);
    if (*f.deep == deep) peers.emplace_back(&f, std::move(other));
  }
  // The pc series of either side may suit the bottom-up search better.
  for (const auto& [f, other] : peers)
    if (!IsoSearch(g, c.colour, other, f->colour).random(rng, 4, 4000).empty() ||
        !IsoSearch(other, f->colour, g, c.colour).random(rng, 4, 4000).empty())
      return;
  for (const auto& [f, other] : peers) {
    const auto t0 = std::chrono::steady_clock::now();
    const bool iso = isomorphic(g, c.colour, other, f->colour);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > 5)
      std::cerr << "slow isomorphism test (" << secs << " s, " << (iso ? "isomorphic" : "not isomorphic")
                << ", " << TupleSearch(g, c.colour, other, f->colour).tuples() << " tuples)\n"
                << write_pcp(pres) << write_pcp(f->pres);
    if (iso) return;
  }
  bucket.push_back({pres, std::move(c.colour), deep});
}

bool is_elementary(const PcPresentation& h) {
  for (std::size_t i = 0; i < h.rank(); ++i) {
    if (!h.power_trivial(i)) return false;
    for (std::size_t j = i + 1; j < h.rank(); ++j)
      if (!h.commutator_trivial(j, i)) return false;
  }
  return true;
}

/// Extensions of C_p^n with a nontrivial class, one per orbit under GL(n, p).
std::vector<Vec> elementary_classes(std::size_t n, std::uint32_t p, const std::vector<Relation>& rel) {
  auto index = [&](bool is_pow, std::size_t j, std::size_t i) {
    for (std::size_t t = 0; t < rel.size(); ++t)
      if (rel[t].is_pow == is_pow && rel[t].j == j && rel[t].i == i) return t;
    throw std::logic_error("relation index");
  };
  std::vector<Vec> out;
  for (std::size_t r = 0; 2 * r <= n; ++r) {
    Vec beta(rel.size(), 0);
    for (std::size_t k = 0; k < r; ++k) beta[index(false, 2 * k + 1, 2 * k)] = 1;
    const bool has_radical = 2 * r < n;
    if (has_radical) {  // the power map is nonzero on the radical
      Vec c = beta;
      c[index(true, n - 1, n - 1)] = 1;
      out.push_back(c);
    }
    if (r == 0) continue;
    out.push_back(beta);  // power map zero (p odd) / Arf invariant 0 (p = 2)
    Vec c = beta;
    c[index(true, 0, 0)] = 1;  // p odd: nonzero, vanishing on the radical
    if (p == 2) c[index(true, 1, 1)] = 1;  // Arf invariant 1
    out.push_back(c);
  }
  return out;
}

void extend(const PcPresentation& h, std::mt19937_64& rng, Buckets& out,
            std::size_t& candidates) {
  const std::size_t n = h.rank();
  const std::uint32_t p = h.prime();
  const auto rel = relations_of(n);
  const std::size_t T = rel.size();
  add_candidate(extension(h, rel, Vec(T, 0)), out, rng);
  ++candidates;
  if (is_elementary(h)) {
    for (const Vec& c : elementary_classes(n, p, rel)) {
      add_candidate(extension(h, rel, c), out, rng);
      ++candidates;
    }
    return;
  }

  const PcPresentation u = universal(h, rel);
  std::vector<Vec> eqs;
  for (const auto& ov : evaluate_overlaps(u)) {
    if (!same_head(ov.lhs, ov.rhs, n)) throw std::runtime_error("internal: base presentation inconsistent");
    Vec d(T);
    for (std::size_t t = 0; t < T; ++t) d[t] = (ov.lhs.exps[n + t] + p - ov.rhs.exps[n + t]) % p;
    if (std::any_of(d.begin(), d.end(), [](std::uint32_t x) { return x; })) eqs.push_back(d);
  }
  const std::vector<Vec> zbasis = nullspace(eqs, T, p);

  // Coboundaries, then a complement inside Z^2.
  Span span(T, p);
  for (std::size_t k = 0; k < n; ++k) {
    Vec d(T, 0);
    for (std::size_t t = 0; t < T; ++t) d[t] = (p - rhs_of(h, rel[t])[k]) % p;
    span.add(d);
  }
  std::vector<Vec> comp;
  std::size_t inputs = n;  // every add() call registers one input
  std::vector<std::size_t> comp_input;
  for (const Vec& z : zbasis) {
    if (span.add(z)) {
      comp.push_back(z);
      comp_input.push_back(inputs);
    }
    ++inputs;
  }
  const std::size_t m = comp.size();
  if (m == 0) return;
  if (static_cast<double>(std::pow(static_cast<double>(p), static_cast<double>(m))) > 6e7)
    throw std::runtime_error("second cohomology too large for orbit enumeration");

  auto coords = [&](const Vec& v) {
    Vec all;
    if (!span.express(v, all)) throw std::runtime_error("internal: image is not a cocycle");
    Vec y(m);
    for (std::size_t l = 0; l < m; ++l) y[l] = all[comp_input[l]];
    return y;
  };

  // Induced action of random automorphisms on H^2.
  const PcGroup hg(h);
  const Colouring hc = refine(hg);
  IsoSearch search(hg, hc.colour, hg, hc.colour);
  std::vector<std::vector<Vec>> mats;  // mats[a][l] = image of basis vector l
  const std::size_t want = std::getenv("EXPORT_NO_AUT") ? 0 : std::min<std::size_t>(4 + m, 12);
  for (std::size_t a = 0; a < want; ++a) {
    const auto img = search.random(rng);
    if (img.empty()) break;
    std::vector<GroupElement> lifts;
    for (Elem x : img) {
      GroupElement e{Exponents(u.rank(), 0)};
      for (std::size_t k = 0; k < n; ++k) e.exps[k] = hg.digit(x, k);
      lifts.push_back(e);
    }
    // Row t of the matrix: z-exponents picked up by relation t in the new
    // generators, as a linear form in the old parameters.
    std::vector<Vec> rows(T);
    for (std::size_t t = 0; t < T; ++t) {
      const Relation& r = rel[t];
      std::vector<Letter> lhs, rhs;
      if (r.is_pow) {
        for (std::uint32_t k = 0; k < p; ++k)
          for (const Letter& l : letters_of(lifts[r.i])) lhs.push_back(l);
      } else {
        for (const Letter& l : letters_of(lifts[r.j])) lhs.push_back(l);
        for (const Letter& l : letters_of(lifts[r.i])) lhs.push_back(l);
        for (const Letter& l : letters_of(lifts[r.i])) rhs.push_back(l);
        for (const Letter& l : letters_of(lifts[r.j])) rhs.push_back(l);
      }
      for (const Letter& l : word_in(lifts, rhs_of(h, r), n)) rhs.push_back(l);
      const GroupElement x = collect(u, lhs), y = collect(u, rhs);
      if (!same_head(x, y, n)) throw std::runtime_error("internal: automorphism search returned a non-automorphism");
      rows[t].resize(T);
      for (std::size_t s = 0; s < T; ++s) rows[t][s] = (x.exps[n + s] + p - y.exps[n + s]) % p;
    }
    std::vector<Vec> cols;
    for (const Vec& b : comp) {
      Vec w(T, 0);
      for (std::size_t t = 0; t < T; ++t) {
        std::uint64_t acc = 0;
        for (std::size_t s = 0; s < T; ++s) acc += static_cast<std::uint64_t>(rows[t][s]) * b[s];
        w[t] = static_cast<std::uint32_t>(acc % p);
      }
      cols.push_back(coords(w));
    }
    mats.push_back(cols);
  }

  // Union-find over normalised vectors of F_p^m.
  std::uint64_t total = 1;
  for (std::size_t l = 0; l < m; ++l) total *= p;
  std::vector<std::uint32_t> parent(total);
  std::iota(parent.begin(), parent.end(), 0U);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto decode = [&](std::uint64_t code) {
    Vec v(m);
    for (std::size_t l = m; l-- > 0;) {
      v[l] = static_cast<std::uint32_t>(code % p);
      code /= p;
    }
    return v;
  };
  auto encode_normalised = [&](Vec v) {
    auto it = std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x; });
    const std::uint32_t s = inv_mod(*it, p);
    std::uint64_t code = 0;
    for (std::uint32_t x : v) code = code * p + x * s % p;
    return static_cast<std::uint32_t>(code);
  };
  std::vector<std::uint32_t> points;
  for (std::uint64_t code = 1; code < total; ++code) {
    const Vec v = decode(code);
    if (*std::find_if(v.begin(), v.end(), [](std::uint32_t x) { return x; }) != 1) continue;
    points.push_back(static_cast<std::uint32_t>(code));
    for (const auto& a : mats) {
      Vec w(m, 0);
      for (std::size_t l = 0; l < m; ++l)
        if (v[l])
          for (std::size_t q = 0; q < m; ++q) w[q] = (w[q] + v[l] * a[l][q]) % p;
      const std::uint32_t ra = root(static_cast<std::uint32_t>(code)), rb = root(encode_normalised(w));
      if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    }
  }
  for (std::uint32_t code : points) {
    if (root(code) != code) continue;
    const Vec y = decode(code);
    Vec c(T, 0);
    for (std::size_t l = 0; l < m; ++l)
      for (std::size_t t = 0; t < T; ++t) c[t] = (c[t] + y[l] * comp[l][t]) % p;
    add_candidate(extension(h, rel, c), out, rng);
    ++candidates;
  }
}

struct Summary {
  std::size_t rank;        // d(G)
  std::size_t center_exp;  // log_p |Z(G)|
  std::size_t derived_exp;
  std::uint64_t exponent;
  std::uint64_t key;
  bool operator<(const Summary& o) const {
    return std::tie(rank, exponent, center_exp, derived_exp, key) <
           std::tie(o.rank, o.exponent, o.center_exp, o.derived_exp, o.key);
  }
};

Summary summarise(const PcPresentation& pres, std::uint64_t key) {
  const PcGroup g(pres);
  std::vector<Elem> phi_seed = derived_subgroup(g).gens;
  std::uint64_t exponent = 1;
  for (Elem x = 0; x < g.order(); ++x) exponent = std::max(exponent, g.element_order(x));
  for (std::size_t i = 0; i < g.rank(); ++i) phi_seed.push_back(g.pow(g.generator(i), g.prime()));
  const std::size_t phi = closure(g, phi_seed).order_exponent();
  return {g.rank() - phi, center(g).order_exponent(), derived_subgroup(g).order_exponent(), exponent, key};
}

const std::map<std::uint32_t, std::vector<std::size_t>> kKnownCounts = {
    {2, {1, 1, 2, 5, 14, 51, 267}},
    {3, {1, 1, 2, 5, 15, 67, 504}},
    {5, {1, 1, 2, 5, 15, 77, 684}},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Export all groups of order p^k as pc presentations"};
  std::uint32_t p = 2;
  std::size_t max_k = 6;
  std::string out_dir = "data/corpus";
  std::uint64_t seed = 1;
  app.add_option("--prime", p, "prime")->required();
  app.add_option("--max-exponent", max_k, "largest k");
  app.add_option("--out", out_dir, "output directory");
  app.add_option("--seed", seed, "automorphism search seed");
  CLI11_PARSE(app, argc, argv);
  if (!is_prime(p)) {
    std::cerr << "p must be prime\n";
    return 1;
  }

  std::mt19937_64 rng(seed);
  std::vector<PcPresentation> level{PcPresentation("g", p, 0)};
  for (std::size_t k = 1; k <= max_k; ++k) {
    const auto t0 = std::chrono::steady_clock::now();
    Buckets found;
    std::size_t candidates = 0;
    for (const auto& h : level) extend(h, rng, found, candidates);

    std::vector<std::pair<Summary, PcPresentation>> sorted;
    for (auto& [key, list] : found)
      for (auto& f : list) sorted.push_back({summarise(f.pres, key), f.pres});
    std::stable_sort(sorted.begin(), sorted.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });

    std::uint64_t order = 1;
    for (std::size_t e = 0; e < k; ++e) order *= p;
    const std::string corpus = "order_" + std::to_string(order);
    const fs::path dir = fs::path(out_dir) / corpus;
    fs::create_directories(dir);
    std::ofstream manifest(fs::path(out_dir) / (corpus + ".manifest"));
    manifest << "corpus " << corpus << "\nprime " << p << "\norder_exponent " << k << "\n";
    const auto known = kKnownCounts.find(p);
    if (known != kKnownCounts.end() && k < known->second.size())
      manifest << "expected_count " << known->second[k] << "\n";
    manifest << "source export_corpus --prime " << p << " --seed " << seed
             << " (central extensions of all groups of order p^" << k - 1 << ", deduplicated up to isomorphism)\n";
    level.clear();
    for (std::size_t idx = 0; idx < sorted.size(); ++idx) {
      char id[64];
      std::snprintf(id, sizeof id, "G%llu_%03zu", static_cast<unsigned long long>(order), idx + 1);
      PcPresentation pres = sorted[idx].second;
      pres.set_name(id);
      write_pcp_file(dir / (std::string(id) + ".pcp"), pres);
      manifest << "entry " << id << " " << corpus << "/" << id << ".pcp\n";
      level.push_back(pres);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << "order " << p << "^" << k << ": " << sorted.size() << " groups from " << candidates
              << " candidates in " << secs << " s";
    if (known != kKnownCounts.end() && k < known->second.size()) {
      const bool ok = sorted.size() == known->second[k];
      std::cout << (ok ? " (matches known count)" : " (MISMATCH, known " + std::to_string(known->second[k]) + ")");
      if (!ok) {
        std::cout << std::endl;
        return 2;
      }
    }
    std::cout << std::endl;
  }
  return 0;
}
