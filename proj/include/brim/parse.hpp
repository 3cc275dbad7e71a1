#ifndef BRIM_PARSE_HPP
#define BRIM_PARSE_HPP

#include <cctype>
#include <string>
#include <string_view>

#include "brim/polynomial.hpp"

namespace brim {

namespace detail {

class PolyLexer {
 public:
  explicit PolyLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    return std::string(s_.substr(start, pos_ - start));
  }
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorKind::InvalidInput, "cannot parse polynomial '" + std::string(s_) + "' at offset " +
                                      std::to_string(pos_) + ": " + what);
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses the canonical text syntax: `term (("+"|"-") term)*` where a term
/// is an optional `a` or `a/b` coefficient followed by factors `x<i>` or
/// `t<j>` with optional `^n`; `*` between factors is optional.
template <FieldScalar K>
Polynomial<K> parse_polynomial(std::string_view text, const PolyRing& r) {
  detail::PolyLexer lex(text);
  std::vector<Term<K>> terms;
  if (lex.at_end()) lex.error("empty input");
  bool first = true;
  while (!lex.at_end()) {
    bool negative = false;
    if (lex.accept('+')) {
    } else if (lex.accept('-')) {
      negative = true;
    } else if (!first) {
      lex.error("expected '+' or '-'");
    }
    first = false;

    mpz_class num = 1, den = 1;
    bool have_factor = false;
    if (std::isdigit(static_cast<unsigned char>(lex.peek()))) {
      num = mpz_class(lex.digits());
      if (lex.accept('/')) {
        std::string d = lex.digits();
        if (d.empty()) lex.error("expected denominator");
        den = mpz_class(d);
        if (den == 0) lex.error("zero denominator");
      }
      have_factor = true;
    }
    Monomial m;
    for (;;) {
      char c = lex.peek();
      if (c == '*') {
        lex.accept('*');
        c = lex.peek();
        if (c != 'x' && c != 't') lex.error("expected a variable after '*'");
      }
      if (c != 'x' && c != 't') break;
      lex.accept(c);
      std::string idx = lex.digits();
      if (idx.empty()) lex.error("variable needs an index");
      int i = std::stoi(idx);
      int limit = c == 'x' ? r.nx : r.nt;
      if (i < 1 || i > limit) lex.error(std::string(1, c) + idx + " is not a variable of this ring");
      int slot = (c == 'x' ? 0 : r.nx) + i - 1;
      long power = 1;
      if (lex.accept('^')) {
        std::string e = lex.digits();
        if (e.empty()) lex.error("expected exponent");
        power = std::stol(e);
        if (power > 0xFFFF) lex.error("exponent too large");
      }
      m[slot] = static_cast<std::uint16_t>(m[slot] + power);
      have_factor = true;
    }
    if (!have_factor) lex.error("expected a coefficient or variable");
    if (negative) num = -num;
    terms.push_back({m, scalar_traits<K>::from_fraction(num, den, r.field)});
  }
  return Polynomial<K>(r, std::move(terms));
}

template <FieldScalar K>
std::string to_string(const Polynomial<K>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    K c = t.coeff;
    bool neg = c.is_negative();
    if (neg) c = -c;
    if (out.empty()) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    bool unit_mono = t.mono == Monomial{};
    std::string cs = c.to_string();
    if (unit_mono) {
      out += cs;
    } else {
      if (cs != "1") out += cs + "*";
      out += to_string(t.mono, f.ring());
    }
  }
  return out;
}

}  // namespace brim

#endif  // BRIM_PARSE_HPP
