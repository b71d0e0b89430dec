#include "pgdeg/subgroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "pgdeg/error.hpp"

namespace pgdeg {

std::size_t SubgroupHash::operator()(const Subgroup& h) const {
  std::size_t x = 0x9e3779b97f4a7c15ULL;
  for (Elem e : h.gens) x = (x ^ e) * 0x100000001b3ULL + (x >> 29);
  return x;
}

namespace {

std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
  std::uint32_t r = 1;
  for (std::uint32_t e = p - 2, b = a; e > 0; e >>= 1, b = static_cast<std::uint32_t>(
                                                        (static_cast<std::uint64_t>(b) * b) % p))
    if (e & 1U) r = static_cast<std::uint32_t>((static_cast<std::uint64_t>(r) * b) % p);
  return r;
}

// Induced generating sequence under construction: one slot per depth.
class IgsBuilder {
 public:
  explicit IgsBuilder(const PcGroup& g) : g_(g), slot_(g.rank(), 0) {}

  explicit IgsBuilder(const PcGroup& g, const Subgroup& h) : IgsBuilder(g) {
    for (Elem x : h.gens) slot_[g_.depth(x)] = x;
  }

  Elem sift(Elem x) const {
    while (x != 0) {
      const std::size_t d = g_.depth(x);
      if (slot_[d] == 0) return x;
      x = g_.mul(x, g_.pow(slot_[d], g_.prime() - g_.digit(x, d)));
    }
    return 0;
  }

  void add(Elem x) {
    queue_.push_back(x);
    while (!queue_.empty()) {
      Elem y = queue_.front();
      queue_.pop_front();
      Elem r = sift(y);
      if (r == 0) continue;
      const std::size_t d = g_.depth(r);
      r = g_.pow(r, inv_mod(g_.digit(r, d), g_.prime()));
      slot_[d] = r;
      queue_.push_back(g_.pow(r, g_.prime()));
      for (Elem s : slot_)
        if (s != 0 && s != r) queue_.push_back(g_.comm(r, s));
    }
  }

  Subgroup canonical() const {
    Subgroup h;
    for (Elem s : slot_)
      if (s != 0) h.gens.push_back(s);
    const std::uint32_t p = g_.prime();
    for (std::size_t i = 0; i < h.gens.size(); ++i)
      for (std::size_t j = i + 1; j < h.gens.size(); ++j) {
        const std::uint32_t e = g_.digit(h.gens[i], g_.depth(h.gens[j]));
        if (e != 0) h.gens[i] = g_.mul(h.gens[i], g_.pow(h.gens[j], p - e));
      }
    h.order = 1;
    for (std::size_t i = 0; i < h.gens.size(); ++i) h.order *= p;
    return h;
  }

 private:
  const PcGroup& g_;
  std::vector<Elem> slot_;
  std::deque<Elem> queue_;
};

}  // namespace

Subgroup trivial_subgroup() { return {}; }

Subgroup whole_group(const PcGroup& g) {
  std::vector<Elem> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(g.generator(i));
  return closure(g, gens);
}

Subgroup closure(const PcGroup& g, const std::vector<Elem>& seed) {
  IgsBuilder b(g);
  for (Elem x : seed) b.add(x);
  return b.canonical();
}

Subgroup closure(const PcGroup& g, const std::vector<GroupElement>& seed) {
  std::vector<Elem> xs;
  xs.reserve(seed.size());
  for (const auto& s : seed) xs.push_back(g.from_element(s));
  return closure(g, xs);
}

bool contains(const PcGroup& g, const Subgroup& h, Elem a) {
  const std::uint32_t p = g.prime();
  for (Elem s : h.gens) {
    if (a == 0) return true;
    const std::size_t ds = g.depth(s);
    const std::size_t da = g.depth(a);
    if (da < ds) return false;
    if (da > ds) continue;
    a = g.mul(a, g.pow(s, p - g.digit(a, ds)));
  }
  return a == 0;
}

std::vector<Elem> elements(const PcGroup& g, const Subgroup& h) {
  std::vector<Elem> out{0};
  for (std::size_t i = h.gens.size(); i-- > 0;) {
    const Elem x = h.gens[i];
    std::vector<Elem> next;
    next.reserve(out.size() * g.prime());
    Elem xt = 0;
    for (std::uint32_t t = 0; t < g.prime(); ++t) {
      for (Elem y : out) next.push_back(g.mul(xt, y));
      xt = g.mul(xt, x);
    }
    out = std::move(next);
  }
  return out;
}

Subgroup intersect(const PcGroup& g, const Subgroup& h, const Subgroup& k) {
  const Subgroup& small = h.order <= k.order ? h : k;
  const Subgroup& big = h.order <= k.order ? k : h;
  if (is_subgroup_of(g, small, big)) return small;
  IgsBuilder b(g);
  for (Elem x : elements(g, small))
    if (x != 0 && contains(g, big, x) && b.sift(x) != 0) b.add(x);
  return b.canonical();
}

Subgroup conjugate(const PcGroup& g, const Subgroup& h, Elem x) {
  std::vector<Elem> seed;
  seed.reserve(h.gens.size());
  for (Elem s : h.gens) seed.push_back(g.conj(s, x));
  return closure(g, seed);
}

bool is_subgroup_of(const PcGroup& g, const Subgroup& h, const Subgroup& k) {
  if (h.order > k.order) return false;
  return std::all_of(h.gens.begin(), h.gens.end(), [&](Elem s) { return contains(g, k, s); });
}

bool is_normal(const PcGroup& g, const Subgroup& h) {
  for (Elem s : h.gens)
    for (std::size_t i = 0; i < g.rank(); ++i)
      if (!contains(g, h, g.conj(s, g.generator(i)))) return false;
  return true;
}

Subgroup normal_core(const PcGroup& g, const Subgroup& h) {
  Subgroup core = h;
  while (true) {
    Subgroup next = core;
    for (std::size_t i = 0; i < g.rank(); ++i)
      next = intersect(g, next, conjugate(g, core, g.generator(i)));
    if (next == core) return core;
    core = std::move(next);
  }
}

Subgroup center(const PcGroup& g) {
  IgsBuilder b(g);
  for (Elem z = 1; z < g.order(); ++z) {
    bool central = true;
    for (std::size_t i = 0; i < g.rank() && central; ++i)
      central = g.mul(z, g.generator(i)) == g.mul(g.generator(i), z);
    if (central && b.sift(z) != 0) b.add(z);
  }
  return b.canonical();
}

Subgroup socle(const PcGroup& g) {
  const Subgroup z = center(g);
  IgsBuilder b(g);
  for (Elem x : elements(g, z))
    if (x != 0 && g.pow(x, g.prime()) == 0 && b.sift(x) != 0) b.add(x);
  return b.canonical();
}

Subgroup derived_subgroup(const PcGroup& g) {
  // The normal closure of the generator commutators is G'.
  IgsBuilder b(g);
  for (std::size_t j = 0; j < g.rank(); ++j)
    for (std::size_t i = 0; i < j; ++i) b.add(g.comm(g.generator(j), g.generator(i)));
  Subgroup d = b.canonical();
  while (!is_normal(g, d)) {
    IgsBuilder nb(g, d);
    for (Elem s : d.gens)
      for (std::size_t i = 0; i < g.rank(); ++i) nb.add(g.conj(s, g.generator(i)));
    d = nb.canonical();
  }
  return d;
}

std::vector<Subgroup> normal_subgroups(const PcGroup& g) {
  // A normal subgroup of order p^{k+1} contains a G-normal subgroup K of
  // index p; it is <K, x> with xK central of order p in G/K.
  std::vector<Subgroup> all{trivial_subgroup()};
  std::vector<Subgroup> layer{trivial_subgroup()};
  const std::uint32_t p = g.prime();
  while (!layer.empty()) {
    std::unordered_set<Subgroup, SubgroupHash> next;
    for (const Subgroup& k : layer) {
      for (Elem x = 1; x < g.order(); ++x) {
        if (contains(g, k, x) || !contains(g, k, g.pow(x, p))) continue;
        bool central = true;
        for (std::size_t i = 0; i < g.rank() && central; ++i)
          central = contains(g, k, g.comm(x, g.generator(i)));
        if (!central) continue;
        IgsBuilder b(g, k);
        b.add(x);
        next.insert(b.canonical());
      }
    }
    layer.assign(next.begin(), next.end());
    std::sort(layer.begin(), layer.end());
    all.insert(all.end(), layer.begin(), layer.end());
  }
  return all;
}

std::vector<Subgroup> all_subgroups(const PcGroup& g) {
  // Cyclic extension: every subgroup of order p^{k+1} is <K, x> for some
  // K of order p^k normalised by x with x^p in K.
  std::vector<Subgroup> all{trivial_subgroup()};
  std::vector<Subgroup> layer{trivial_subgroup()};
  const std::uint32_t p = g.prime();
  while (!layer.empty()) {
    std::unordered_set<Subgroup, SubgroupHash> next;
    for (const Subgroup& k : layer) {
      for (Elem x = 1; x < g.order(); ++x) {
        if (contains(g, k, x) || !contains(g, k, g.pow(x, p))) continue;
        bool normalises = true;
        for (std::size_t i = 0; i < k.gens.size() && normalises; ++i)
          normalises = contains(g, k, g.conj(k.gens[i], x));
        if (!normalises) continue;
        IgsBuilder b(g, k);
        b.add(x);
        next.insert(b.canonical());
      }
    }
    layer.assign(next.begin(), next.end());
    std::sort(layer.begin(), layer.end());
    all.insert(all.end(), layer.begin(), layer.end());
  }
  return all;
}

std::vector<SubgroupClass> subgroup_classes(const PcGroup& g) {
  const std::vector<Subgroup> subs = all_subgroups(g);
  std::unordered_map<Subgroup, std::size_t, SubgroupHash> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i], i);
  std::vector<bool> seen(subs.size(), false);
  std::vector<SubgroupClass> classes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (seen[i]) continue;
    // subs is sorted, so the first unseen member is the least key of its class.
    std::vector<std::size_t> orbit{i};
    seen[i] = true;
    for (std::size_t t = 0; t < orbit.size(); ++t)
      for (std::size_t k = 0; k < g.rank(); ++k) {
        const std::size_t j = index.at(conjugate(g, subs[orbit[t]], g.generator(k)));
        if (!seen[j]) {
          seen[j] = true;
          orbit.push_back(j);
        }
      }
    classes.push_back({subs[i], orbit.size()});
  }
  std::stable_sort(classes.begin(), classes.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
    if (a.representative.order != b.representative.order)
      return a.representative.order > b.representative.order;
    return a.representative.gens < b.representative.gens;
  });
  return classes;
}

namespace {

// Coset representative of aN with zero exponent at every depth of N.
Elem reduce_mod(const PcGroup& g, const Subgroup& n, Elem a) {
  for (Elem s : n.gens) {
    const std::uint32_t e = g.digit(a, g.depth(s));
    if (e != 0) a = g.mul(a, g.pow(s, g.prime() - e));
  }
  return a;
}

}  // namespace

GroupElement project(const PcGroup& g, const Subgroup& n, const QuotientPresentation& q, Elem a) {
  const Elem r = reduce_mod(g, n, a);
  GroupElement out{Exponents(q.kept.size(), 0)};
  for (std::size_t t = 0; t < q.kept.size(); ++t) out.exps[t] = g.digit(r, q.kept[t]);
  return out;
}

QuotientPresentation quotient(const PcGroup& g, const Subgroup& n) {
  if (!is_normal(g, n)) throw InputError("quotient requires a normal subgroup");
  std::vector<bool> in_n(g.rank(), false);
  for (Elem s : n.gens) in_n[g.depth(s)] = true;
  QuotientPresentation q;
  for (std::size_t i = 0; i < g.rank(); ++i)
    if (!in_n[i]) q.kept.push_back(i);
  const std::string name = g.presentation().name().empty() ? "G/N" : g.presentation().name() + "/N";
  q.pres = PcPresentation(name, g.prime(), q.kept.size());
  for (std::size_t a = 0; a < q.kept.size(); ++a) {
    const std::size_t i = q.kept[a];
    q.pres.set_power(a, project(g, n, q, g.pow(g.generator(i), g.prime())).exps);
    for (std::size_t b = a + 1; b < q.kept.size(); ++b) {
      const std::size_t j = q.kept[b];
      q.pres.set_commutator(b, a, project(g, n, q, g.comm(g.generator(j), g.generator(i))).exps);
    }
  }
  for (std::size_t i = 0; i < g.rank(); ++i) q.proj.push_back(project(g, n, q, g.generator(i)));
  return q;
}

namespace {

using Matrix = std::vector<std::vector<std::int64_t>>;

struct Diagonalised {
  std::vector<std::int64_t> diag;
  Matrix vinv;  // rows: new basis in terms of the old generators
};

// Diagonalises the relation matrix with unimodular row and column operations,
// tracking the inverse of the accumulated column transform.
Diagonalised diagonalise(Matrix m) {
  const std::size_t n = m.size();
  Matrix vinv(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) vinv[i][i] = 1;
  auto col_add = [&](std::size_t dst, std::size_t src, std::int64_t c) {  // col dst += c col src
    for (std::size_t r = 0; r < n; ++r) m[r][dst] += c * m[r][src];
    for (std::size_t k = 0; k < n; ++k) vinv[src][k] -= c * vinv[dst][k];
  };
  auto col_swap = [&](std::size_t a, std::size_t b) {
    for (std::size_t r = 0; r < n; ++r) std::swap(m[r][a], m[r][b]);
    std::swap(vinv[a], vinv[b]);
  };
  auto row_add = [&](std::size_t dst, std::size_t src, std::int64_t c) {
    for (std::size_t k = 0; k < n; ++k) m[dst][k] += c * m[src][k];
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      std::size_t pr = n, pc = n;
      for (std::size_t r = t; r < n; ++r)
        for (std::size_t c = t; c < n; ++c)
          if (m[r][c] != 0 && (pr == n || std::llabs(m[r][c]) < std::llabs(m[pr][pc]))) {
            pr = r;
            pc = c;
          }
      if (pr == n) break;
      std::swap(m[t], m[pr]);
      if (pc != t) col_swap(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < n; ++r) {
        const std::int64_t q = m[r][t] / m[t][t];
        if (q != 0) row_add(r, t, -q);
        if (m[r][t] != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < n; ++c) {
        const std::int64_t q = m[t][c] / m[t][t];
        if (q != 0) col_add(c, t, -q);
        if (m[t][c] != 0) clean = false;
      }
      if (clean) break;
    }
  }
  Diagonalised out;
  for (std::size_t i = 0; i < n; ++i) out.diag.push_back(std::llabs(m[i][i]));
  out.vinv = std::move(vinv);
  return out;
}

Matrix relation_matrix(const PcPresentation& pres) {
  const std::size_t n = pres.rank();
  Matrix m(n, std::vector<std::int64_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][i] = pres.prime();
    for (std::size_t k = 0; k < n; ++k) m[i][k] -= pres.power(i)[k];
  }
  return m;
}

std::uint32_t log_p(std::int64_t d, std::uint32_t p) {
  std::uint32_t e = 0;
  while (d > 1) {
    if (d % p != 0) throw InvariantViolation("abelian invariant is not a prime power");
    d /= p;
    ++e;
  }
  return e;
}

}  // namespace

std::vector<std::uint32_t> abelian_invariants(const PcPresentation& pres) {
  if (!pres.is_abelian()) throw InputError("abelian_invariants requires an abelian presentation");
  const Diagonalised d = diagonalise(relation_matrix(pres));
  std::vector<std::uint32_t> inv;
  for (std::int64_t x : d.diag)
    if (x > 1) inv.push_back(log_p(x, pres.prime()));
  std::sort(inv.rbegin(), inv.rend());
  return inv;
}

std::vector<Elem> abelian_basis(const PcGroup& g) {
  const PcPresentation& pres = g.presentation();
  if (!pres.is_abelian()) throw InputError("abelian_basis requires an abelian presentation");
  const Diagonalised d = diagonalise(relation_matrix(pres));
  const std::int64_t modulus = g.order();
  std::vector<std::pair<std::uint32_t, Elem>> basis;
  for (std::size_t j = 0; j < d.diag.size(); ++j) {
    if (d.diag[j] <= 1) continue;
    Elem y = 0;
    for (std::size_t k = 0; k < g.rank(); ++k) {
      const std::int64_t c = ((d.vinv[j][k] % modulus) + modulus) % modulus;
      y = g.mul(y, g.pow(g.generator(k), static_cast<std::uint64_t>(c)));
    }
    basis.emplace_back(log_p(d.diag[j], g.prime()), y);
  }
  std::stable_sort(basis.begin(), basis.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
  std::vector<Elem> out;
  for (const auto& [e, y] : basis) out.push_back(y);
  return out;
}

}  // namespace pgdeg
