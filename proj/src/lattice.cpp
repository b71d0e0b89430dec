#include "pgdeg/lattice.hpp"

#include <algorithm>
#include <numeric>

#include "pgdeg/error.hpp"

namespace pgdeg {

std::size_t ElemSet::count() const {
  std::size_t c = 0;
  for (std::uint64_t w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
  return c;
}

bool ElemSet::subset_of(const ElemSet& o) const {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~o.words_[i]) return false;
  return true;
}

ElemSet& ElemSet::operator&=(const ElemSet& o) {
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
  return *this;
}

std::size_t ElemSet::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (std::uint64_t w : words_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0x100000001b3ULL;
  }
  return static_cast<std::size_t>(h);
}

void Deadline::check() const {
  if (end_ && std::chrono::steady_clock::now() > *end_) throw Timeout();
}

ElemSet to_set(const PcGroup& g, const Subgroup& h) {
  ElemSet s(g.order());
  for (Elem x : elements(g, h)) s.set(x);
  return s;
}

Subgroup to_subgroup(const PcGroup& g, const ElemSet& s) {
  std::vector<Elem> xs;
  s.for_each([&](Elem x) {
    if (x != 0) xs.push_back(x);
  });
  // Sifting is cheap once the sequence is complete; closure() skips members.
  return closure(g, xs);
}

SubgroupLattice::SubgroupLattice(const PcGroup& g, Scope scope, const Deadline* deadline)
    : g_(g), scope_(scope) {
  build(deadline);
  build_classes(deadline);
}

std::optional<std::uint32_t> SubgroupLattice::find(const ElemSet& s) const {
  auto it = buckets_.find(s.hash());
  if (it == buckets_.end()) return std::nullopt;
  for (std::uint32_t id : it->second)
    if (nodes_[id].elems == s) return id;
  return std::nullopt;
}

std::pair<std::uint32_t, bool> SubgroupLattice::insert(ElemSet s, const std::vector<Elem>& seed) {
  auto& bucket = buckets_[s.hash()];
  for (std::uint32_t id : bucket)
    if (nodes_[id].elems == s) return {id, false};
  Node node;
  node.canonical = closure(g_, seed);
  node.order_exp = static_cast<std::uint32_t>(node.canonical.gens.size());
  node.elems = std::move(s);
  const auto id = static_cast<std::uint32_t>(nodes_.size());
  nodes_.push_back(std::move(node));
  bucket.push_back(id);
  return {id, true};
}

void SubgroupLattice::build(const Deadline* deadline) {
  const std::uint32_t p = g_.prime();
  const Elem order = g_.order();
  ElemSet trivial(order);
  trivial.set(0);
  insert(std::move(trivial), {});
  std::vector<std::uint32_t> layer{0};
  std::vector<Elem> kelems;
  while (!layer.empty()) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t kid : layer) {
      if (deadline) deadline->check();
      kelems.clear();
      nodes_[kid].elems.for_each([&](Elem x) { kelems.push_back(x); });
      ElemSet covered = nodes_[kid].elems;
      const std::vector<Elem> kgens = nodes_[kid].canonical.gens;
      for (Elem x = 1; x < order; ++x) {
        if (covered.test(x)) continue;
        // The tests below depend only on the coset xK.
        {
          const ElemSet& kset = nodes_[kid].elems;
          bool ok = kset.test(g_.pow(x, p));
          if (ok && scope_ == Scope::Normal) {
            for (std::size_t i = 0; i < g_.rank() && ok; ++i) ok = kset.test(g_.comm(x, g_.generator(i)));
          } else if (ok) {
            for (std::size_t i = 0; i < kgens.size() && ok; ++i) ok = kset.test(g_.conj(kgens[i], x));
          }
          if (!ok) {
            for (Elem k : kelems) covered.set(g_.mul(x, k));
            continue;
          }
        }
        ElemSet h = nodes_[kid].elems;
        Elem y = x;
        for (std::uint32_t j = 1; j < p; ++j) {
          for (Elem k : kelems) {
            const Elem z = g_.mul(k, y);
            h.set(z);
            covered.set(z);
          }
          y = g_.mul(y, x);
        }
        std::vector<Elem> seed = kgens;
        seed.push_back(x);
        auto [id, fresh] = insert(std::move(h), seed);
        if (fresh) next.push_back(id);
      }
    }
    layer = std::move(next);
  }
}

void SubgroupLattice::build_classes(const Deadline* deadline) {
  const std::size_t count = nodes_.size();
  auto key_less = [&](std::uint32_t a, std::uint32_t b) { return nodes_[a].canonical < nodes_[b].canonical; };

  if (scope_ == Scope::Normal) {
    normal_.resize(count);
    std::iota(normal_.begin(), normal_.end(), 0);
    std::sort(normal_.begin(), normal_.end(), key_less);
    return;
  }

  std::vector<std::uint32_t> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::uint32_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::uint32_t id = 0; id < count; ++id) {
    if (deadline && (id & 255U) == 0) deadline->check();
    for (std::size_t i = 0; i < g_.rank(); ++i) {
      const Elem gi = g_.generator(i);
      ElemSet c(g_.order());
      nodes_[id].elems.for_each([&](Elem h) { c.set(g_.conj(h, gi)); });
      if (c == nodes_[id].elems) continue;
      const auto other = find(c);
      if (!other) throw InvariantViolation("conjugate subgroup missing from the lattice");
      const std::uint32_t a = root(id), b = root(*other);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  }
  std::unordered_map<std::uint32_t, std::vector<std::uint32_t>> orbits;
  for (std::uint32_t id = 0; id < count; ++id) orbits[root(id)].push_back(id);
  for (auto& [r, members] : orbits) {
    Class cls;
    cls.rep = *std::min_element(members.begin(), members.end(), key_less);
    cls.size = members.size();
    std::uint64_t sub = 1;
    for (std::uint32_t k = 0; k < nodes_[cls.rep].order_exp; ++k) sub *= g_.prime();
    cls.index = g_.order() / sub;
    cls.core = nodes_[members.front()].elems;
    for (std::uint32_t m : members) cls.core &= nodes_[m].elems;
    classes_.push_back(std::move(cls));
  }
  std::sort(classes_.begin(), classes_.end(), [&](const Class& a, const Class& b) {
    if (a.index != b.index) return a.index < b.index;
    return nodes_[a.rep].canonical.gens < nodes_[b.rep].canonical.gens;
  });
  for (std::uint32_t c = 0; c < classes_.size(); ++c) {
    for (std::uint32_t m : orbits.at(root(classes_[c].rep))) nodes_[m].class_id = c;
    if (classes_[c].size == 1) normal_.push_back(classes_[c].rep);
  }
  std::sort(normal_.begin(), normal_.end(), key_less);
}

}  // namespace pgdeg
