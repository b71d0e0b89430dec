#include "pgdeg/mindeg.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "pgdeg/error.hpp"

namespace pgdeg {

std::uint64_t abelian_degree(std::uint32_t p, const std::vector<std::uint32_t>& invariants) {
  if (invariants.empty()) return 1;  // mu(1) = 1
  std::uint64_t sum = 0;
  for (std::uint32_t e : invariants) {
    std::uint64_t q = 1;
    for (std::uint32_t k = 0; k < e; ++k) q *= p;
    sum += q;
  }
  return sum;
}

ElemSet socle_preimage(const PcGroup& g, const ElemSet& n) {
  ElemSet s(g.order());
  for (Elem x = 0; x < g.order(); ++x) {
    if (!n.test(g.pow(x, g.prime()))) continue;
    bool central = true;
    for (std::size_t i = 0; i < g.rank() && central; ++i) central = n.test(g.comm(x, g.generator(i)));
    if (central) s.set(x);
  }
  return s;
}

namespace {

struct Candidate {
  std::uint32_t cls;
  std::uint64_t index;
  ElemSet trace;
};

class BranchAndBound {
 public:
  BranchAndBound(std::vector<Candidate> cands, const ElemSet& target, const Deadline* deadline)
      : cands_(std::move(cands)), target_(target), deadline_(deadline) {}

  DegreeSearchResult run(const ElemSet& start) {
    dfs(0, start, 0);
    if (best_ == kInf) throw InvariantViolation("no faithful collection found");
    return {best_, best_path_};
  }

 private:
  static constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();

  void dfs(std::size_t from, const ElemSet& x, std::uint64_t cost) {
    if (deadline_ && (++visits_ & 1023U) == 0) deadline_->check();
    for (std::size_t c = from; c < cands_.size(); ++c) {
      // Candidates are sorted by index, so this bound closes the whole level.
      if (best_ != kInf && cost + cands_[c].index >= best_) return;
      ElemSet y = x & cands_[c].trace;
      if (y == x) continue;
      path_.push_back(cands_[c].cls);
      if (y == target_) {
        best_ = cost + cands_[c].index;
        best_path_ = path_;
        path_.pop_back();
        return;
      }
      dfs(c + 1, y, cost + cands_[c].index);
      path_.pop_back();
    }
  }

  std::vector<Candidate> cands_;
  const ElemSet& target_;
  const Deadline* deadline_;
  std::uint64_t best_ = kInf;
  std::vector<std::uint32_t> best_path_;
  std::vector<std::uint32_t> path_;
  std::uint64_t visits_ = 0;
};

}  // namespace

DegreeSearchResult interval_minimal_degree(const SubgroupLattice& lattice, const ElemSet& n,
                                           FaithfulCriterion criterion, const Deadline* deadline) {
  if (lattice.scope() != SubgroupLattice::Scope::All)
    throw InvariantViolation("degree search needs the full subgroup lattice");
  const PcGroup& g = lattice.group();
  const auto& classes = lattice.classes();
  const auto& nodes = lattice.nodes();
  if (n.count() == g.order()) return {1, {0}};  // classes[0] is G itself

  ElemSet space(g.order());
  if (criterion == FaithfulCriterion::Socle) {
    space = socle_preimage(g, n);
  } else {
    for (Elem x = 0; x < g.order(); ++x) space.set(x);
  }

  std::vector<Candidate> cands;
  for (std::uint32_t c = 0; c < classes.size(); ++c) {
    if (!n.subset_of(nodes[classes[c].rep].elems)) continue;
    ElemSet trace = classes[c].core & space;
    if (trace == space) continue;
    // Same trace at no smaller index, or a smaller trace at no larger index,
    // can never improve a collection.
    bool dominated = false;
    for (const Candidate& k : cands)
      if (k.trace.subset_of(trace)) {
        dominated = true;
        break;
      }
    if (dominated) continue;
    cands.push_back({c, classes[c].index, std::move(trace)});
  }
  BranchAndBound bb(std::move(cands), n, deadline);
  return bb.run(space);
}

std::vector<Permutation> coset_action(const PcGroup& g, const Subgroup& h) {
  const std::vector<Elem> helems = elements(g, h);
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> coset(g.order(), kUnset);
  std::vector<Elem> reps;
  for (Elem x = 0; x < g.order(); ++x) {
    if (coset[x] != kUnset) continue;
    const auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (Elem y : helems) coset[g.mul(y, x)] = id;
  }
  std::vector<Permutation> perms(g.rank(), Permutation(reps.size()));
  for (std::size_t i = 0; i < g.rank(); ++i)
    for (std::uint32_t c = 0; c < reps.size(); ++c) perms[i][c] = coset[g.mul_gen(reps[c], i)];
  return perms;
}

namespace {

void append_blocks(const PcGroup& g, MuCertificate& cert) {
  cert.perms.assign(g.rank(), {});
  for (const Subgroup& h : cert.collection) {
    const auto block = coset_action(g, h);
    for (std::size_t i = 0; i < g.rank(); ++i) {
      const auto offset = static_cast<std::uint32_t>(cert.perms[i].size());
      for (std::uint32_t img : block[i]) cert.perms[i].push_back(offset + img);
    }
  }
}

}  // namespace

MuCertificate minimal_degree(const PcGroup& g, const DegreeOptions& opts) {
  MuCertificate cert;
  if (g.order() == 1) {
    cert.mu = 1;
    cert.collection.push_back(trivial_subgroup());
    append_blocks(g, cert);
    return cert;
  }
  if (opts.abelian_fast_path && g.presentation().is_abelian()) {
    const auto inv = abelian_invariants(g.presentation());
    const auto basis = abelian_basis(g);
    if (basis.size() != inv.size()) throw InvariantViolation("abelian basis does not match invariants");
    for (std::size_t i = 0; i < basis.size(); ++i) {
      std::vector<Elem> others;
      for (std::size_t j = 0; j < basis.size(); ++j)
        if (j != i) others.push_back(basis[j]);
      cert.collection.push_back(closure(g, others));
    }
    cert.mu = abelian_degree(g.prime(), inv);
    append_blocks(g, cert);
    return cert;
  }
  SubgroupLattice lattice(g, SubgroupLattice::Scope::All, opts.deadline);
  ElemSet trivial(g.order());
  trivial.set(0);
  const DegreeSearchResult r = interval_minimal_degree(lattice, trivial, opts.criterion, opts.deadline);
  cert.mu = r.mu;
  for (std::uint32_t c : r.chosen)
    cert.collection.push_back(lattice.nodes()[lattice.classes()[c].rep].canonical);
  const std::size_t socle_rank = socle(g).order_exponent();
  if (cert.collection.size() > socle_rank)
    throw InvariantViolation("faithful collection larger than the socle rank");
  append_blocks(g, cert);
  return cert;
}

MuCertificate minimal_degree(const PcPresentation& pres, const DegreeOptions& opts) {
  const auto verdict = consistency_check(pres);
  if (!verdict.consistent)
    throw InputError("inconsistent presentation: overlap " + verdict.failure->label + " fails");
  return minimal_degree(PcGroup(pres), opts);
}

std::uint64_t brute_force_minimal_degree(const PcPresentation& pres, std::uint64_t max_order) {
  if (pres.order() > max_order)
    throw InputError("brute force refuses groups of order " + std::to_string(pres.order()) +
                     " (bound " + std::to_string(max_order) + ")");
  const PcGroup g(pres);
  if (g.order() == 1) return 1;
  const auto classes = subgroup_classes(g);
  std::vector<Subgroup> cores;
  std::vector<std::uint64_t> index;
  for (const auto& c : classes) {
    cores.push_back(normal_core(g, c.representative));
    index.push_back(g.order() / c.representative.order);
  }
  std::unordered_map<Subgroup, std::uint64_t, SubgroupHash> memo;
  constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max();
  // cost(K) = least extra degree needed once the cores intersect in K.
  auto cost = [&](auto&& self, const Subgroup& k) -> std::uint64_t {
    if (k.order == 1) return 0;
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    std::uint64_t best = kInf;
    for (std::size_t c = 0; c < classes.size(); ++c) {
      Subgroup next = intersect(g, k, cores[c]);
      if (next == k) continue;
      const std::uint64_t rest = self(self, next);
      if (rest != kInf) best = std::min(best, index[c] + rest);
    }
    memo.emplace(k, best);
    return best;
  };
  return cost(cost, whole_group(g));
}

std::string to_string(CertificateStatus s) {
  switch (s) {
    case CertificateStatus::Ok: return "ok";
    case CertificateStatus::MalformedSubgroup: return "malformed-subgroup";
    case CertificateStatus::DegreeMismatch: return "degree-mismatch";
    case CertificateStatus::CoreNotTrivial: return "core-not-trivial";
    case CertificateStatus::MalformedPermutation: return "malformed-permutation";
    case CertificateStatus::PermutationMismatch: return "permutation-mismatch";
  }
  return "unknown";
}

CertificateCheck verify_certificate(const PcPresentation& pres, const MuCertificate& cert) {
  const PcGroup g(pres);
  std::uint64_t degree = 0;
  for (const Subgroup& h : cert.collection) {
    for (Elem x : h.gens)
      if (x == 0 || x >= g.order()) return {CertificateStatus::MalformedSubgroup, "generator out of range"};
    if (closure(g, h.gens) != h || h.order != closure(g, h.gens).order)
      return {CertificateStatus::MalformedSubgroup, "subgroup is not in canonical form"};
    degree += g.order() / h.order;
  }
  if (cert.collection.empty() || degree != cert.mu)
    return {CertificateStatus::DegreeMismatch,
            "indices sum to " + std::to_string(degree) + ", certificate claims " + std::to_string(cert.mu)};
  Subgroup meet = whole_group(g);
  for (const Subgroup& h : cert.collection) meet = intersect(g, meet, normal_core(g, h));
  if (meet.order != 1)
    return {CertificateStatus::CoreNotTrivial, "cores intersect in a subgroup of order " + std::to_string(meet.order)};
  if (cert.perms.size() != g.rank())
    return {CertificateStatus::MalformedPermutation, "one permutation per generator expected"};
  for (const Permutation& perm : cert.perms) {
    if (perm.size() != cert.mu) return {CertificateStatus::MalformedPermutation, "wrong permutation degree"};
    std::vector<bool> hit(perm.size(), false);
    for (std::uint32_t img : perm) {
      if (img >= perm.size() || hit[img]) return {CertificateStatus::MalformedPermutation, "not a bijection"};
      hit[img] = true;
    }
  }
  MuCertificate fresh;
  fresh.collection = cert.collection;
  append_blocks(g, fresh);
  if (fresh.perms != cert.perms)
    return {CertificateStatus::PermutationMismatch, "permutations differ from the coset actions"};
  return {};
}

}  // namespace pgdeg
