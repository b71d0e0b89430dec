#pragma once

// Closed-form counts for groups of order p^6 (p >= 5) and the parameters
// omega, nu used by published presentations.

#include <cstdint>

namespace pgdeg {

/// Number of groups of order p^6. Throws InputError unless p is a prime >= 5.
std::int64_t group_count_p6(std::int64_t p);

struct ExceptionalBounds {
  std::int64_t upper = 0;                // at most this many exceptional groups
  std::int64_t conjectured = 0;          // (11p + 107) / 2
  std::int64_t nonexceptional_lower = 0; // at least this many are not exceptional
};

/// Throws InputError unless p is a prime >= 5; throws InvariantViolation if
/// group_count_p6(p) - nonexceptional_lower != upper.
ExceptionalBounds exceptional_bounds(std::int64_t p);

struct ParamContext {
  std::uint32_t p = 0;
  std::uint32_t omega = 0;  // least positive primitive root mod p
  std::uint32_t nu = 0;     // least positive quadratic non-residue mod p
};

/// Throws InputError unless p is an odd prime.
ParamContext omega_nu(std::uint32_t p);

/// b^e mod m.
std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m);

}  // namespace pgdeg
