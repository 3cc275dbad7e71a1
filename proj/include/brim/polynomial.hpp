#ifndef BRIM_POLYNOMIAL_HPP
#define BRIM_POLYNOMIAL_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brim/error.hpp"
#include "brim/monomial.hpp"
#include "brim/scalar.hpp"

namespace brim {

template <FieldScalar K>
struct Term {
  Monomial mono;
  K coeff;

  bool operator==(const Term&) const = default;
};

/// Sparse element of S = k[x, t].  Terms are kept strictly descending under
/// the ring's order with no zero coefficients.
template <FieldScalar K>
class Polynomial {
 public:
  using Scalar = K;

  Polynomial() = default;
  explicit Polynomial(const PolyRing& r) : ring_(r) {}

  /// Builds from arbitrary terms: sorts, merges duplicates, drops zeros.
  Polynomial(const PolyRing& r, std::vector<Term<K>> terms) : ring_(r), terms_(std::move(terms)) { normalize(); }

  static Polynomial constant(const PolyRing& r, long c) {
    return term(r, Monomial{}, scalar_traits<K>::from_int(c, r.field));
  }
  static Polynomial term(const PolyRing& r, const Monomial& m, const K& c) {
    Polynomial p(r);
    if (!c.is_zero()) p.terms_.push_back({m, c});
    return p;
  }

  const PolyRing& ring() const { return ring_; }
  const std::vector<Term<K>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  const Monomial& lead() const { return terms_.front().mono; }
  const K& lead_coeff() const { return terms_.front().coeff; }

  bool is_monomial() const { return terms_.size() == 1; }

  /// Same polynomial, reordered under a different monomial order.
  Polynomial reordered(const PolyRing& r) const {
    check_layout(r);
    return Polynomial(r, terms_);
  }

  Polynomial monic() const {
    if (is_zero()) return *this;
    return *this * lead_coeff().inverse();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) { return merge(a, b, false); }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return merge(a, b, true); }
  Polynomial operator-() const {
    Polynomial p = *this;
    for (auto& t : p.terms_) t.coeff = -t.coeff;
    return p;
  }
  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }

  friend Polynomial operator*(const Polynomial& a, const K& c) {
    if (c.is_zero()) return Polynomial(a.ring_);
    Polynomial p = a;
    for (auto& t : p.terms_) t.coeff = t.coeff * c;
    return p;
  }
  friend Polynomial operator*(const K& c, const Polynomial& a) { return a * c; }

  /// Multiplication by a single term; order is preserved because monomial
  /// orders are multiplicative.
  Polynomial times_term(const Monomial& m, const K& c) const {
    Polynomial p(ring_);
    if (c.is_zero()) return p;
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff * c});
    return p;
  }
  Polynomial times_monomial(const Monomial& m) const {
    Polynomial p(ring_);
    p.terms_.reserve(terms_.size());
    for (const auto& t : terms_) p.terms_.push_back({t.mono * m, t.coeff});
    return p;
  }

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    a.check_layout(b.ring_);
    if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_);
    if (b.is_monomial()) return a.times_term(b.lead(), b.lead_coeff());
    if (a.is_monomial()) return b.times_term(a.lead(), a.lead_coeff());
    std::vector<Term<K>> out;
    out.reserve(a.size() * b.size());
    for (const auto& s : a.terms_)
      for (const auto& t : b.terms_) out.push_back({s.mono * t.mono, s.coeff * t.coeff});
    return Polynomial(a.ring_, std::move(out));
  }

  /// this -= c * m * g, as a single merge pass.
  void sub_mul(const K& c, const Monomial& m, const Polynomial& g) {
    if (c.is_zero() || g.is_zero()) return;
    std::vector<Term<K>> out;
    out.reserve(terms_.size() + g.terms_.size());
    auto i = terms_.begin();
    auto j = g.terms_.begin();
    while (i != terms_.end() || j != g.terms_.end()) {
      if (j == g.terms_.end()) {
        out.push_back(std::move(*i++));
        continue;
      }
      Monomial gm = j->mono * m;
      int cmp = i == terms_.end() ? -1 : order_compare(i->mono, gm, ring_);
      if (cmp > 0) {
        out.push_back(std::move(*i++));
      } else if (cmp < 0) {
        out.push_back({gm, -(c * j->coeff)});
        ++j;
      } else {
        K v = i->coeff - c * j->coeff;
        if (!v.is_zero()) out.push_back({gm, std::move(v)});
        ++i;
        ++j;
      }
    }
    terms_ = std::move(out);
  }

  /// Removes and returns the leading term.
  Term<K> pop_lead() {
    Term<K> t = std::move(terms_.front());
    terms_.erase(terms_.begin());
    return t;
  }

  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.ring_.same_layout(b.ring_) && a.terms_ == b.terms_;
  }

  void check_layout(const PolyRing& r) const {
    require(ring_.same_layout(r), ErrorKind::InvalidInput, "polynomials over different rings");
  }

 private:
  static Polynomial merge(const Polynomial& a, const Polynomial& b, bool subtract) {
    a.check_layout(b.ring_);
    Polynomial p(a.ring_);
    p.terms_.reserve(a.size() + b.size());
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    while (i != a.terms_.end() || j != b.terms_.end()) {
      int cmp = i == a.terms_.end() ? -1 : j == b.terms_.end() ? 1 : order_compare(i->mono, j->mono, a.ring_);
      if (cmp > 0) {
        p.terms_.push_back(*i++);
      } else if (cmp < 0) {
        p.terms_.push_back({j->mono, subtract ? -j->coeff : j->coeff});
        ++j;
      } else {
        K v = subtract ? i->coeff - j->coeff : i->coeff + j->coeff;
        if (!v.is_zero()) p.terms_.push_back({i->mono, std::move(v)});
        ++i;
        ++j;
      }
    }
    return p;
  }

  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [&](const Term<K>& a, const Term<K>& b) { return order_compare(a.mono, b.mono, ring_) > 0; });
    std::vector<Term<K>> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = out.back().coeff + t.coeff;
      } else {
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }

  PolyRing ring_{};
  std::vector<Term<K>> terms_;
};

/// Per-block degree of a polynomial; `std::nullopt` marks a mixed block.
struct Bidegree {
  std::optional<int> xdeg;
  std::optional<int> tdeg;

  bool operator==(const Bidegree&) const = default;
};

template <FieldScalar K>
Bidegree bidegree(const Polynomial<K>& f) {
  require(!f.is_zero(), ErrorKind::Undefined, "bidegree of the zero polynomial");
  const auto& r = f.ring();
  Bidegree b{xdeg(f.lead(), r), tdeg(f.lead(), r)};
  for (const auto& t : f.terms()) {
    if (b.xdeg && *b.xdeg != xdeg(t.mono, r)) b.xdeg.reset();
    if (b.tdeg && *b.tdeg != tdeg(t.mono, r)) b.tdeg.reset();
  }
  return b;
}

template <FieldScalar K>
bool is_t_homogeneous(const Polynomial<K>& f, int e) {
  for (const auto& t : f.terms())
    if (tdeg(t.mono, f.ring()) != e) return false;
  return true;
}

template <FieldScalar K>
int max_xdeg(const Polynomial<K>& f) {
  int m = 0;
  for (const auto& t : f.terms()) m = std::max(m, xdeg(t.mono, f.ring()));
  return m;
}

}  // namespace brim

#endif  // BRIM_POLYNOMIAL_HPP
