#include "pgdeg/exceptional.hpp"

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>

#include "pgdeg/error.hpp"
#include "pgdeg/group.hpp"
#include "pgdeg/lattice.hpp"
#include "pgdeg/mindeg.hpp"
#include "pgdeg/pcp_io.hpp"

namespace pgdeg {

std::size_t ExceptionalReport::distinguished_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const QuotientEntry& e) { return e.distinguished; }));
}

std::string to_string(QuotientRoute r) { return r == QuotientRoute::Interval ? "interval" : "quotient"; }

QuotientRoute parse_route(const std::string& s) {
  if (s == "interval") return QuotientRoute::Interval;
  if (s == "quotient") return QuotientRoute::Quotient;
  throw InputError("unknown quotient route '" + s + "' (expected interval or quotient)");
}

namespace {

std::uint32_t log_p(std::uint64_t x, std::uint32_t p) {
  std::uint32_t k = 0;
  while (x > 1) {
    x /= p;
    ++k;
  }
  return k;
}

/// Invariants of G/N when G' <= N, read off from |{x : x^{p^k} in N}|.
std::vector<std::uint32_t> quotient_invariants(const PcGroup& g, const ElemSet& n, std::size_t n_exp) {
  std::vector<Elem> y(g.order());
  for (Elem x = 0; x < g.order(); ++x) y[x] = x;
  std::vector<std::uint32_t> omega{0};  // omega[k] = log_p |Omega_k(G/N)|
  const std::uint32_t total = static_cast<std::uint32_t>(g.rank() - n_exp);
  while (omega.back() < total) {
    std::uint64_t hits = 0;
    for (Elem x = 0; x < g.order(); ++x) {
      y[x] = g.pow(y[x], g.prime());
      hits += n.test(y[x]);
    }
    omega.push_back(log_p(hits, g.prime()) - static_cast<std::uint32_t>(n_exp));
  }
  // omega[k] - omega[k-1] invariants are >= k.
  std::vector<std::uint32_t> inv;
  for (std::size_t k = omega.size() - 1; k >= 1; --k) {
    const std::uint32_t at_least_k = omega[k] - omega[k - 1];
    const std::uint32_t at_least_next = k + 1 < omega.size() ? omega[k + 1] - omega[k] : 0;
    for (std::uint32_t t = at_least_next; t < at_least_k; ++t) inv.push_back(static_cast<std::uint32_t>(k));
  }
  return inv;
}

std::vector<Exponents> describe(const PcGroup& g, const Subgroup& h) {
  std::vector<Exponents> out;
  for (Elem x : h.gens) out.push_back(g.to_element(x).exps);
  return out;
}

}  // namespace

ExceptionalReport distinguished_quotients(const PcPresentation& pres, const ScanOptions& opts) {
  const auto start = std::chrono::steady_clock::now();
  const auto verdict = consistency_check(pres);
  if (!verdict.consistent)
    throw InputError("inconsistent presentation: overlap " + verdict.failure->label + " fails");

  ExceptionalReport rep;
  rep.group_id = pres.name();
  rep.prime = pres.prime();
  rep.order_exponent = static_cast<std::uint32_t>(pres.rank());
  Deadline deadline;
  if (opts.timeout) deadline = Deadline(*opts.timeout);
  const Deadline* dl = opts.timeout ? &deadline : nullptr;

  try {
    const PcGroup g(pres);
    const bool abelian = pres.is_abelian();
    DegreeOptions dopts;
    dopts.abelian_fast_path = opts.abelian_fast_path;
    dopts.deadline = dl;

    std::unique_ptr<SubgroupLattice> lattice;
    const bool need_lattice = opts.route == QuotientRoute::Interval && !(abelian && opts.abelian_fast_path);
    if (need_lattice) lattice = std::make_unique<SubgroupLattice>(g, SubgroupLattice::Scope::All, dl);

    ElemSet trivial(g.order());
    trivial.set(0);
    if (abelian && opts.abelian_fast_path)
      rep.mu = abelian_degree(g.prime(), abelian_invariants(pres));
    else if (lattice)
      rep.mu = interval_minimal_degree(*lattice, trivial, FaithfulCriterion::Socle, dl).mu;
    else
      rep.mu = minimal_degree(g, dopts).mu;

    std::vector<Subgroup> normals;
    std::vector<ElemSet> normal_sets;
    if (lattice) {
      for (std::uint32_t id : lattice->normal()) {
        normals.push_back(lattice->nodes()[id].canonical);
        normal_sets.push_back(lattice->nodes()[id].elems);
      }
    } else {
      const SubgroupLattice nl(g, SubgroupLattice::Scope::Normal, dl);
      for (std::uint32_t id : nl.normal()) {
        normals.push_back(nl.nodes()[id].canonical);
        normal_sets.push_back(nl.nodes()[id].elems);
      }
    }

    const ElemSet derived = to_set(g, derived_subgroup(g));
    std::vector<Elem> phi_seed = derived_subgroup(g).gens;
    for (std::size_t i = 0; i < g.rank(); ++i) phi_seed.push_back(g.pow(g.generator(i), g.prime()));
    const Subgroup phi = closure(g, phi_seed);
    std::map<std::string, std::uint64_t> quotient_cache;

    for (std::size_t k = 0; k < normals.size(); ++k) {
      const Subgroup& n = normals[k];
      if (n.order == 1 || n.order == g.order()) continue;
      if (dl) dl->check();
      QuotientEntry e;
      e.subgroup = describe(g, n);
      e.subgroup_order = n.order;
      e.quotient_order = g.order() / n.order;
      std::vector<Elem> np = n.gens;
      np.insert(np.end(), phi.gens.begin(), phi.gens.end());
      const bool cyclic = closure(g, np).order * g.prime() >= g.order();
      const bool quotient_abelian = derived.subset_of(normal_sets[k]);
      if (opts.cyclic_skip && cyclic) {
        e.mu_quotient = e.quotient_order;
        e.method = "cyclic";
      } else if (opts.abelian_fast_path && quotient_abelian) {
        e.mu_quotient = abelian_degree(g.prime(), quotient_invariants(g, normal_sets[k], n.order_exponent()));
        e.method = "abelian";
      } else if (opts.route == QuotientRoute::Interval) {
        e.mu_quotient = interval_minimal_degree(*lattice, normal_sets[k], FaithfulCriterion::Socle, dl).mu;
        e.method = "interval";
      } else {
        const QuotientPresentation q = quotient(g, n);
        const std::string key = fingerprint(q.pres);
        auto it = quotient_cache.find(key);
        if (it == quotient_cache.end())
          it = quotient_cache.emplace(key, minimal_degree(PcGroup(q.pres), dopts).mu).first;
        e.mu_quotient = it->second;
        e.method = "quotient";
      }
      e.distinguished = e.mu_quotient > rep.mu;
      rep.entries.push_back(std::move(e));
    }
    rep.exceptional = rep.distinguished_count() > 0;
  } catch (const Timeout&) {
    rep.status = "timeout";
    rep.error = "time limit exceeded";
    rep.entries.clear();
    rep.exceptional = false;
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rep;
}

bool is_exceptional(const PcPresentation& pres, const ScanOptions& opts) {
  const ExceptionalReport r = distinguished_quotients(pres, opts);
  if (!r.ok()) throw Timeout();
  return r.exceptional;
}

}  // namespace pgdeg
