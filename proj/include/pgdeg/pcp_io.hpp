#pragma once

// PCP text format:
//
//   group <id>
//   prime <p>
//   rank <n>
//   pow <i> : e1 ... en          (zero or more, 1-based, g_i^p)
//   comm <j> <i> : e1 ... en     (zero or more, j > i, [g_j, g_i])
//   end
//
// Omitted relations are trivial, '#' starts a comment, tokens are separated by
// exactly one space. write_pcp emits only nontrivial relations, powers first
// by i, then commutators by (j, i).

#include <filesystem>
#include <string>
#include <string_view>

#include "pgdeg/pc.hpp"

namespace pgdeg {

/// Throws ParseError (with line/column) or InputError.
PcPresentation parse_pcp(std::string_view text);
std::string write_pcp(const PcPresentation& pres);

PcPresentation read_pcp_file(const std::filesystem::path& path);
void write_pcp_file(const std::filesystem::path& path, const PcPresentation& pres);

/// Stable 64-bit FNV-1a digest, as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);

/// Digest of the canonical text with the group name blanked, so renaming a
/// group keeps its fingerprint while any relation edit changes it.
std::string fingerprint(const PcPresentation& pres);

}  // namespace pgdeg
