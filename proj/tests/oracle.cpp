#include "oracle.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace oracle {

std::uint32_t CayleyGroup::inv(std::uint32_t a) const {
  for (std::uint32_t b = 0; b < size(); ++b)
    if (mul[a][b] == 0) return b;
  return 0;
}

CayleyGroup from_presentation(const pgdeg::PcPresentation& pres) {
  const std::uint32_t order = static_cast<std::uint32_t>(pres.order());
  const std::uint32_t p = pres.prime();
  std::vector<pgdeg::GroupElement> elems(order);
  for (std::uint32_t k = 0; k < order; ++k) {
    pgdeg::Exponents e(pres.rank());
    std::uint32_t rest = k;
    for (std::size_t i = pres.rank(); i-- > 0;) {
      e[i] = rest % p;
      rest /= p;
    }
    elems[k] = {e};
  }
  auto code = [&](const pgdeg::GroupElement& x) {
    std::uint32_t k = 0;
    for (std::uint32_t e : x.exps) k = k * p + e;
    return k;
  };
  CayleyGroup g;
  g.mul.assign(order, std::vector<std::uint32_t>(order));
  for (std::uint32_t a = 0; a < order; ++a)
    for (std::uint32_t b = 0; b < order; ++b) g.mul[a][b] = code(pgdeg::multiply(pres, elems[a], elems[b]));
  return g;
}

std::size_t count(const Set& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), true)); }

namespace {

Set close(const CayleyGroup& g, Set s) {
  std::vector<std::uint32_t> members;
  for (std::uint32_t x = 0; x < g.size(); ++x)
    if (s[x]) members.push_back(x);
  if (!s[0]) {
    s[0] = true;
    members.push_back(0);
  }
  for (std::size_t i = 0; i < members.size(); ++i)
    for (std::size_t j = 0; j <= i; ++j)
      for (auto [a, b] : {std::pair{members[i], members[j]}, std::pair{members[j], members[i]}}) {
        const std::uint32_t c = g.mul[a][b];
        if (!s[c]) {
          s[c] = true;
          members.push_back(c);
        }
      }
  return s;
}

Set conjugate(const CayleyGroup& g, const Set& h, std::uint32_t x) {
  Set out(g.size(), false);
  const std::uint32_t xi = g.inv(x);
  for (std::uint32_t y = 0; y < g.size(); ++y)
    if (h[y]) out[g.mul[g.mul[xi][y]][x]] = true;
  return out;
}

}  // namespace

std::vector<Set> all_subgroups(const CayleyGroup& g) {
  std::vector<Set> subs{close(g, Set(g.size(), false))};
  for (std::size_t i = 0; i < subs.size(); ++i)
    for (std::uint32_t x = 0; x < g.size(); ++x) {
      if (subs[i][x]) continue;
      Set s = subs[i];
      s[x] = true;
      s = close(g, s);
      if (std::find(subs.begin(), subs.end(), s) == subs.end()) subs.push_back(s);
    }
  return subs;
}

Set normal_core(const CayleyGroup& g, const Set& h) {
  Set core = h;
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    const Set c = conjugate(g, h, x);
    for (std::uint32_t y = 0; y < g.size(); ++y) core[y] = core[y] && c[y];
  }
  return core;
}

bool is_normal(const CayleyGroup& g, const Set& h) { return normal_core(g, h) == h; }

std::size_t subgroup_class_count(const CayleyGroup& g) {
  const auto subs = all_subgroups(g);
  std::vector<bool> seen(subs.size(), false);
  std::size_t classes = 0;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (seen[i]) continue;
    ++classes;
    for (std::uint32_t x = 0; x < g.size(); ++x) {
      const Set c = conjugate(g, subs[i], x);
      for (std::size_t j = 0; j < subs.size(); ++j)
        if (subs[j] == c) seen[j] = true;
    }
  }
  return classes;
}

std::uint64_t mu(const CayleyGroup& g) {
  if (g.size() == 1) return 1;
  const auto subs = all_subgroups(g);
  std::vector<Set> cores;
  std::vector<std::uint64_t> index;
  for (const Set& h : subs) {
    cores.push_back(normal_core(g, h));
    index.push_back(g.size() / count(h));
  }
  // Dijkstra-free DP: states are core intersections, reached by shrinking.
  std::map<Set, std::uint64_t> best;
  const Set whole(g.size(), true);
  best[whole] = 0;
  std::vector<Set> frontier{whole};
  std::uint64_t answer = std::numeric_limits<std::uint64_t>::max();
  while (!frontier.empty()) {
    std::vector<Set> next;
    for (const Set& k : frontier) {
      const std::uint64_t c = best[k];
      for (std::size_t i = 0; i < subs.size(); ++i) {
        Set m = k;
        for (std::uint32_t y = 0; y < g.size(); ++y) m[y] = m[y] && cores[i][y];
        if (m == k) continue;
        const std::uint64_t cost = c + index[i];
        auto it = best.find(m);
        if (it == best.end() || cost < it->second) {
          best[m] = cost;
          next.push_back(m);
        }
      }
    }
    frontier = std::move(next);
  }
  Set trivial(g.size(), false);
  trivial[0] = true;
  answer = best.at(trivial);
  return answer;
}

CayleyGroup quotient(const CayleyGroup& g, const Set& n) {
  std::vector<std::uint32_t> coset(g.size(), g.size());
  std::vector<std::uint32_t> reps;
  for (std::uint32_t x = 0; x < g.size(); ++x) {
    if (coset[x] != g.size()) continue;
    for (std::uint32_t y = 0; y < g.size(); ++y)
      if (n[y]) coset[g.mul[x][y]] = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
  }
  CayleyGroup q;
  q.mul.assign(reps.size(), std::vector<std::uint32_t>(reps.size()));
  for (std::size_t a = 0; a < reps.size(); ++a)
    for (std::size_t b = 0; b < reps.size(); ++b) q.mul[a][b] = coset[g.mul[reps[a]][reps[b]]];
  return q;
}

std::size_t distinguished_count(const CayleyGroup& g) {
  const std::uint64_t m = mu(g);
  std::size_t k = 0;
  for (const Set& n : all_subgroups(g)) {
    const std::size_t c = count(n);
    if (c == 1 || c == g.size() || !is_normal(g, n)) continue;
    if (mu(quotient(g, n)) > m) ++k;
  }
  return k;
}

CayleyGroup heisenberg_matrices(std::uint32_t p) {
  using M = std::array<std::uint32_t, 3>;  // (a, b, c) for [[1,a,c],[0,1,b],[0,0,1]]
  Model<M> m;
  m.mul = [p](const M& x, const M& y) {
    return M{(x[0] + y[0]) % p, (x[1] + y[1]) % p, (x[2] + y[2] + x[0] * y[1]) % p};
  };
  m.one = {0, 0, 0};
  m.gens = {{1, 0, 0}, {0, 1, 0}, {0, 0, p - 1}};
  return from_model(m, p);
}

CayleyGroup residues_mod9() {
  Model<std::uint32_t> m;
  m.mul = [](std::uint32_t a, std::uint32_t b) { return (a + b) % 9; };
  m.one = 0;
  m.gens = {1, 3};
  return from_model(m, 3);
}

CayleyGroup quaternion_units() {
  using Q = std::array<int, 4>;  // a + bi + cj + dk
  Model<Q> m;
  m.mul = [](const Q& x, const Q& y) {
    return Q{x[0] * y[0] - x[1] * y[1] - x[2] * y[2] - x[3] * y[3],
             x[0] * y[1] + x[1] * y[0] + x[2] * y[3] - x[3] * y[2],
             x[0] * y[2] - x[1] * y[3] + x[2] * y[0] + x[3] * y[1],
             x[0] * y[3] + x[1] * y[2] - x[2] * y[1] + x[3] * y[0]};
  };
  m.one = {1, 0, 0, 0};
  m.gens = {{0, 1, 0, 0}, {0, 0, 1, 0}, {-1, 0, 0, 0}};
  return from_model(m, 2);
}

CayleyGroup square_symmetries() {
  using P = std::array<int, 4>;  // image of each vertex; product applies left factor first
  Model<P> m;
  m.mul = [](const P& x, const P& y) { return P{y[x[0]], y[x[1]], y[x[2]], y[x[3]]}; };
  m.one = {0, 1, 2, 3};
  m.gens = {{0, 3, 2, 1}, {1, 2, 3, 0}, {2, 3, 0, 1}};
  return from_model(m, 2);
}

pgdeg::PcPresentation q8_presentation() {
  pgdeg::PcPresentation q("Q8", 2, 3);
  q.set_power(0, {0, 0, 1});
  q.set_power(1, {0, 0, 1});
  q.set_commutator(1, 0, {0, 0, 1});
  return q;
}

pgdeg::PcPresentation d4_presentation() {
  pgdeg::PcPresentation d("D4", 2, 3);
  d.set_power(1, {0, 0, 1});
  d.set_commutator(1, 0, {0, 0, 1});
  return d;
}

}  // namespace oracle
