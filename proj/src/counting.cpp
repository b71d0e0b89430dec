#include "pgdeg/counting.hpp"

#include <numeric>
#include <string>
#include <vector>

#include "pgdeg/error.hpp"
#include "pgdeg/pc.hpp"

namespace pgdeg {

namespace {

void require_large_prime(std::int64_t p) {
  if (p < 5 || !is_prime(static_cast<std::uint64_t>(p)))
    throw InputError("formula needs a prime p >= 5, got " + std::to_string(p));
}

std::int64_t g(std::int64_t p, std::int64_t k) { return std::gcd(p - 1, k); }

/// p odd, so every numerator below is even.
std::int64_t half(std::int64_t twice) {
  if (twice % 2 != 0) throw InvariantViolation("odd numerator in a halved formula");
  return twice / 2;
}

}  // namespace

std::int64_t group_count_p6(std::int64_t p) {
  require_large_prime(p);
  return 3 * p * p + 39 * p + 344 + 24 * g(p, 3) + 11 * g(p, 4) + 2 * g(p, 5);
}

ExceptionalBounds exceptional_bounds(std::int64_t p) {
  require_large_prime(p);
  ExceptionalBounds b;
  b.upper = half(33 * p + 467) + 6 * g(p, 3) + 3 * g(p, 4);
  b.conjectured = half(11 * p + 107);
  b.nonexceptional_lower = 3 * p * p + half(45 * p + 221) + 18 * g(p, 3) + 8 * g(p, 4) + 2 * g(p, 5);
  if (group_count_p6(p) - b.nonexceptional_lower != b.upper)
    throw InvariantViolation("count identity fails at p = " + std::to_string(p));
  return b;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1 % m, x = b % m;
  for (; e; e >>= 1) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
  }
  return static_cast<std::uint64_t>(r);
}

ParamContext omega_nu(std::uint32_t p) {
  if (p == 2 || !is_prime(p)) throw InputError("omega_nu needs an odd prime, got " + std::to_string(p));
  std::vector<std::uint32_t> factors;
  for (std::uint32_t m = p - 1, d = 2; m > 1; ++d) {
    if (static_cast<std::uint64_t>(d) * d > m) d = m;
    if (m % d == 0) {
      factors.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  ParamContext ctx{p, 0, 0};
  for (std::uint32_t a = 1; a < p && ctx.omega == 0; ++a) {
    bool primitive = true;
    for (std::uint32_t q : factors)
      if (primitive && pow_mod(a, (p - 1) / q, p) == 1) primitive = false;
    if (primitive) ctx.omega = a;
  }
  for (std::uint32_t a = 2; a < p && ctx.nu == 0; ++a)
    if (pow_mod(a, (p - 1) / 2, p) == p - 1) ctx.nu = a;
  return ctx;
}

}  // namespace pgdeg
