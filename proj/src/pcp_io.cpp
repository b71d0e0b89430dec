#include "pgdeg/pcp_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "pgdeg/error.hpp"

namespace pgdeg {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

struct Line {
  std::size_t number;
  std::vector<Token> tokens;
};

std::vector<Line> tokenize(std::string_view text) {
  std::vector<Line> lines;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    ++number;
    pos = end + 1;
    if (!raw.empty() && raw.back() == '\r') raw.remove_suffix(1);
    if (const auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    while (!raw.empty() && (raw.back() == ' ' || raw.back() == '\t')) raw.remove_suffix(1);
    if (raw.empty()) {
      if (end == text.size()) break;
      continue;
    }
    Line line{number, {}};
    std::size_t col = 0;
    while (col < raw.size()) {
      if (raw[col] == ' ' || raw[col] == '\t')
        throw ParseError(number, col + 1, "tokens must be separated by exactly one space");
      std::size_t stop = raw.find(' ', col);
      if (stop == std::string_view::npos) stop = raw.size();
      line.tokens.push_back({raw.substr(col, stop - col), col + 1});
      col = stop == raw.size() ? stop : stop + 1;
      if (stop != raw.size() && col == raw.size())
        throw ParseError(number, col, "trailing separator");
    }
    lines.push_back(std::move(line));
    if (end == text.size()) break;
  }
  return lines;
}

std::uint64_t parse_uint(const Line& line, const Token& tok) {
  std::uint64_t v = 0;
  const char* first = tok.text.data();
  const char* last = first + tok.text.size();
  auto [ptr, ec] = std::from_chars(first, last, v, 10);
  if (ec != std::errc() || ptr != last || tok.text.empty())
    throw ParseError(line.number, tok.column, "expected a base-10 integer, got '" + std::string(tok.text) + "'");
  return v;
}

void expect_keyword(const Line& line, std::string_view kw, std::size_t arity) {
  if (line.tokens[0].text != kw)
    throw ParseError(line.number, 1, "expected '" + std::string(kw) + "'");
  if (line.tokens.size() != arity + 1)
    throw ParseError(line.number, line.tokens.back().column,
                     "'" + std::string(kw) + "' takes " + std::to_string(arity) + " argument(s)");
}

}  // namespace

PcPresentation parse_pcp(std::string_view text) {
  const std::vector<Line> lines = tokenize(text);
  if (lines.size() < 4) {
    const std::size_t at = lines.empty() ? 1 : lines.back().number;
    throw ParseError(at, 1, "incomplete presentation: expected group, prime, rank and end lines");
  }
  expect_keyword(lines[0], "group", 1);
  expect_keyword(lines[1], "prime", 1);
  expect_keyword(lines[2], "rank", 1);
  const std::string name(lines[0].tokens[1].text);
  const std::uint64_t p = parse_uint(lines[1], lines[1].tokens[1]);
  if (!is_prime(p) || p > 0xffffffffULL) throw ParseError(lines[1].number, lines[1].tokens[1].column, "p must be prime");
  const std::uint64_t n = parse_uint(lines[2], lines[2].tokens[1]);
  if (n > 64) throw ParseError(lines[2].number, lines[2].tokens[1].column, "rank too large");
  PcPresentation pres(name, static_cast<std::uint32_t>(p), static_cast<std::size_t>(n));

  std::set<std::size_t> seen_pow;
  std::set<std::pair<std::size_t, std::size_t>> seen_comm;
  bool ended = false;
  for (std::size_t li = 3; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string_view kw = line.tokens[0].text;
    if (ended) throw ParseError(line.number, 1, "content after 'end'");
    if (kw == "end") {
      if (line.tokens.size() != 1) throw ParseError(line.number, line.tokens[1].column, "'end' takes no arguments");
      ended = true;
      continue;
    }
    const std::size_t nidx = kw == "pow" ? 1 : kw == "comm" ? 2 : 0;
    if (nidx == 0) throw ParseError(line.number, 1, "unknown keyword '" + std::string(kw) + "'");
    if (line.tokens.size() != nidx + 2 + n)
      throw ParseError(line.number, line.tokens.back().column,
                       "expected " + std::to_string(nidx) + " index(es), ':' and " + std::to_string(n) + " exponents");
    const Token& colon = line.tokens[nidx + 1];
    if (colon.text != ":") throw ParseError(line.number, colon.column, "expected ':'");
    std::vector<std::size_t> idx;
    for (std::size_t t = 1; t <= nidx; ++t) {
      const std::uint64_t v = parse_uint(line, line.tokens[t]);
      if (v < 1 || v > n) throw ParseError(line.number, line.tokens[t].column, "generator index out of range");
      idx.push_back(static_cast<std::size_t>(v - 1));
    }
    Exponents rhs;
    for (std::size_t t = nidx + 2; t < line.tokens.size(); ++t) {
      const std::uint64_t v = parse_uint(line, line.tokens[t]);
      if (v >= p) throw ParseError(line.number, line.tokens[t].column, "exponent out of range [0, p)");
      rhs.push_back(static_cast<std::uint32_t>(v));
    }
    try {
      if (nidx == 1) {
        if (!seen_pow.insert(idx[0]).second) throw ParseError(line.number, 1, "duplicate relation");
        pres.set_power(idx[0], std::move(rhs));
      } else {
        if (idx[0] <= idx[1]) throw ParseError(line.number, line.tokens[1].column, "comm requires j > i");
        if (!seen_comm.insert({idx[0], idx[1]}).second) throw ParseError(line.number, 1, "duplicate relation");
        pres.set_commutator(idx[0], idx[1], std::move(rhs));
      }
    } catch (const ParseError&) {
      throw;
    } catch (const InputError& e) {
      throw ParseError(line.number, line.tokens[nidx + 2].column, e.what());
    }
  }
  if (!ended) throw ParseError(lines.back().number, 1, "missing 'end'");
  return pres;
}

std::string write_pcp(const PcPresentation& pres) {
  if (pres.name().empty() || pres.name().find_first_of(" \t\n#") != std::string::npos)
    throw InputError("group id must be a single non-empty token");
  std::ostringstream out;
  out << "group " << pres.name() << "\nprime " << pres.prime() << "\nrank " << pres.rank() << "\n";
  auto emit = [&](const Exponents& e) {
    out << " :";
    for (std::uint32_t x : e) out << ' ' << x;
    out << '\n';
  };
  for (std::size_t i = 0; i < pres.rank(); ++i)
    if (!pres.power_trivial(i)) {
      out << "pow " << i + 1;
      emit(pres.power(i));
    }
  for (std::size_t j = 1; j < pres.rank(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!pres.commutator_trivial(j, i)) {
        out << "comm " << j + 1 << ' ' << i + 1;
        emit(pres.commutator(j, i));
      }
  out << "end\n";
  return out.str();
}

PcPresentation read_pcp_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_pcp(buf.str());
  } catch (const ParseError& e) {
    throw ParseError(e.line(), e.column(), path.string() + ": " + e.what());
  }
}

void write_pcp_file(const std::filesystem::path& path, const PcPresentation& pres) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  out << write_pcp(pres);
  if (!out) throw InputError("write failed for " + path.string());
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string fingerprint(const PcPresentation& pres) {
  PcPresentation anon = pres;
  anon.set_name("_");
  return fnv1a_hex(write_pcp(anon));
}

}  // namespace pgdeg
