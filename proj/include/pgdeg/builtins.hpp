#pragma once

// Presentations of a few standard families, and a parser for the textual
// specs accepted by `pgdeg make`, e.g. "abelian(5,2,1)" or
// "direct_product(cyclic(3,2),heisenberg(3))".

#include <cstdint>
#include <string_view>
#include <vector>

#include "pgdeg/pc.hpp"

namespace pgdeg {

/// C_{p^k}.
PcPresentation cyclic(std::uint32_t p, std::uint32_t k);
/// C_p^k.
PcPresentation elementary(std::uint32_t p, std::uint32_t k);
/// C_{p^n_1} x ... x C_{p^n_r}; parts must be positive. Parts are listed in
/// the given order; abelian_invariants() returns them sorted descending.
PcPresentation abelian(std::uint32_t p, const std::vector<std::uint32_t>& partition);
/// Upper unitriangular 3x3 matrices over F_p: [g2, g1] = g3, g3 central.
/// For p = 2 this is the dihedral group of order 8.
PcPresentation heisenberg(std::uint32_t p);
/// A x B with the generators of B after those of A. Requires equal primes.
PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b);

/// Throws InputError on syntax errors or invalid parameters.
PcPresentation builtin_group(std::string_view spec);

/// All partitions of k into positive parts, each in descending order.
std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t k);

}  // namespace pgdeg
