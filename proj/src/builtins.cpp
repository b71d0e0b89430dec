#include "pgdeg/builtins.hpp"

#include <cctype>
#include <charconv>
#include <functional>
#include <string>

#include "pgdeg/error.hpp"

namespace pgdeg {

namespace {

void require_prime(std::uint32_t p) {
  if (!is_prime(p)) throw InputError("p must be prime, got " + std::to_string(p));
}

std::string join(const std::vector<std::uint32_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "_" : "") + std::to_string(xs[i]);
  return s;
}

}  // namespace

PcPresentation cyclic(std::uint32_t p, std::uint32_t k) {
  if (k == 0) throw InputError("cyclic(p,k) needs k >= 1");
  PcPresentation pres = abelian(p, {k});
  pres.set_name("C" + std::to_string(p) + "^" + std::to_string(k));
  return pres;
}

PcPresentation elementary(std::uint32_t p, std::uint32_t k) {
  require_prime(p);
  return PcPresentation("E" + std::to_string(p) + "^" + std::to_string(k), p, k);
}

PcPresentation abelian(std::uint32_t p, const std::vector<std::uint32_t>& partition) {
  require_prime(p);
  std::size_t n = 0;
  for (std::uint32_t part : partition) {
    if (part == 0) throw InputError("partition parts must be positive");
    n += part;
  }
  PcPresentation pres("A" + std::to_string(p) + "_" + join(partition), p, n);
  std::size_t at = 0;
  for (std::uint32_t part : partition) {
    for (std::uint32_t k = 0; k + 1 < part; ++k) {
      Exponents rhs(n, 0);
      rhs[at + k + 1] = 1;
      pres.set_power(at + k, rhs);
    }
    at += part;
  }
  return pres;
}

PcPresentation heisenberg(std::uint32_t p) {
  require_prime(p);
  PcPresentation pres("H" + std::to_string(p), p, 3);
  pres.set_commutator(1, 0, {0, 0, 1});
  return pres;
}

PcPresentation direct_product(const PcPresentation& a, const PcPresentation& b) {
  if (a.prime() != b.prime()) throw InputError("direct_product needs equal primes");
  const std::size_t na = a.rank(), n = a.rank() + b.rank();
  PcPresentation pres(a.name() + "x" + b.name(), a.prime(), n);
  auto widen = [&](const Exponents& e, std::size_t shift) {
    Exponents out(n, 0);
    for (std::size_t i = 0; i < e.size(); ++i) out[shift + i] = e[i];
    return out;
  };
  for (std::size_t i = 0; i < a.rank(); ++i) {
    if (!a.power_trivial(i)) pres.set_power(i, widen(a.power(i), 0));
    for (std::size_t j = i + 1; j < a.rank(); ++j)
      if (!a.commutator_trivial(j, i)) pres.set_commutator(j, i, widen(a.commutator(j, i), 0));
  }
  for (std::size_t i = 0; i < b.rank(); ++i) {
    if (!b.power_trivial(i)) pres.set_power(na + i, widen(b.power(i), na));
    for (std::size_t j = i + 1; j < b.rank(); ++j)
      if (!b.commutator_trivial(j, i)) pres.set_commutator(na + j, na + i, widen(b.commutator(j, i), na));
  }
  return pres;
}

namespace {

class SpecParser {
 public:
  explicit SpecParser(std::string_view s) : s_(s) {}

  PcPresentation parse() {
    PcPresentation g = group();
    skip();
    if (pos_ != s_.size()) fail("unexpected trailing input");
    return g;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("bad group spec at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    skip();
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string ident() {
    skip();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
    if (start == pos_) fail("expected a constructor name");
    return std::string(s_.substr(start, pos_ - start));
  }
  std::uint32_t number() {
    skip();
    std::uint32_t v = 0;
    auto [ptr, ec] = std::from_chars(s_.data() + pos_, s_.data() + s_.size(), v);
    if (ec != std::errc()) fail("expected a number");
    pos_ = static_cast<std::size_t>(ptr - s_.data());
    return v;
  }
  std::vector<std::uint32_t> numbers() {
    std::vector<std::uint32_t> xs{number()};
    while (accept(',')) xs.push_back(number());
    expect(')');
    return xs;
  }
  void arity(const std::string& name, const std::vector<std::uint32_t>& xs, std::size_t k) {
    if (xs.size() != k) fail(name + " takes " + std::to_string(k) + " argument(s)");
  }

  PcPresentation group() {
    const std::string name = ident();
    expect('(');
    if (name == "direct_product") {
      PcPresentation g = group();
      while (accept(',')) g = direct_product(g, group());
      expect(')');
      return g;
    }
    const auto xs = numbers();
    if (name == "cyclic") {
      arity(name, xs, 2);
      return cyclic(xs[0], xs[1]);
    }
    if (name == "elementary") {
      arity(name, xs, 2);
      return elementary(xs[0], xs[1]);
    }
    if (name == "heisenberg") {
      arity(name, xs, 1);
      return heisenberg(xs[0]);
    }
    if (name == "abelian") {
      if (xs.size() < 2) fail("abelian takes p and at least one part");
      return abelian(xs[0], {xs.begin() + 1, xs.end()});
    }
    fail("unknown constructor '" + name + "'");
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace

PcPresentation builtin_group(std::string_view spec) { return SpecParser(spec).parse(); }

std::vector<std::vector<std::uint32_t>> partitions(std::uint32_t k) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::function<void(std::uint32_t, std::uint32_t)> rec = [&](std::uint32_t left, std::uint32_t cap) {
    if (left == 0) {
      out.push_back(cur);
      return;
    }
    for (std::uint32_t part = std::min(left, cap); part >= 1; --part) {
      cur.push_back(part);
      rec(left - part, part);
      cur.pop_back();
    }
  };
  rec(k, k);
  return out;
}

}  // namespace pgdeg
