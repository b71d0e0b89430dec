#pragma once

// Exceptional groups: G is exceptional when some normal subgroup N has
// mu(G/N) > mu(G). Such N are distinguished.

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pgdeg/pc.hpp"
#include "pgdeg/subgroup.hpp"

namespace pgdeg {

/// How mu(G/N) is computed.
enum class QuotientRoute {
  /// Degree search over the subgroups of G that contain N.
  Interval,
  /// Explicit quotient presentation, then minimal_degree on it.
  Quotient,
};

struct ScanOptions {
  /// A cyclic quotient has mu = |G/N| <= mu(G) and is never distinguished.
  bool cyclic_skip = true;
  /// Abelian groups and quotients use the closed form.
  bool abelian_fast_path = true;
  QuotientRoute route = QuotientRoute::Interval;
  /// Per-group budget; a group that exceeds it is reported as timed out.
  std::optional<std::chrono::milliseconds> timeout;
};

struct QuotientEntry {
  /// Normal subgroup as the exponent vectors of its canonical generators.
  std::vector<Exponents> subgroup;
  std::uint64_t subgroup_order = 1;
  std::uint64_t quotient_order = 1;
  std::uint64_t mu_quotient = 1;
  bool distinguished = false;
  /// "cyclic", "abelian", "interval" or "quotient".
  std::string method;
};

struct ExceptionalReport {
  std::string group_id;
  std::uint32_t prime = 2;
  std::uint32_t order_exponent = 0;
  std::uint64_t mu = 1;
  /// Every N with 1 < N < G, sorted by (order, canonical key).
  std::vector<QuotientEntry> entries;
  bool exceptional = false;
  /// "ok", "timeout" or "error".
  std::string status = "ok";
  std::string error;
  double seconds = 0;

  std::size_t distinguished_count() const;
  bool ok() const { return status == "ok"; }
};

/// Throws InputError if the presentation is inconsistent.
ExceptionalReport distinguished_quotients(const PcPresentation& pres, const ScanOptions& opts = {});
bool is_exceptional(const PcPresentation& pres, const ScanOptions& opts = {});

std::string to_string(QuotientRoute r);
/// Throws InputError for unknown names.
QuotientRoute parse_route(const std::string& s);

}  // namespace pgdeg
