#ifndef BRIM_MONOMIAL_HPP
#define BRIM_MONOMIAL_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "brim/error.hpp"
#include "brim/scalar.hpp"

namespace brim {

/// Upper bound on d + p: exponents are stored densely in a fixed array.
constexpr int kMaxVariables = 8;

enum class OrderKind {
  /// texp compared lexicographically first (positions), then degrevlex on x.
  PositionOverTerm,
  /// t-degree, then texp lex, then degrevlex on x.
  TotalBlock,
  /// degrevlex on x first, then texp lex.
  TermOverPosition,
};

inline std::string_view to_string(OrderKind k) {
  switch (k) {
    case OrderKind::PositionOverTerm: return "degrevlex-x";
    case OrderKind::TotalBlock: return "total-block";
    case OrderKind::TermOverPosition: return "term-over-position";
  }
  return "?";
}

inline OrderKind order_from_string(std::string_view s) {
  if (s == "degrevlex-x") return OrderKind::PositionOverTerm;
  if (s == "total-block") return OrderKind::TotalBlock;
  if (s == "term-over-position") return OrderKind::TermOverPosition;
  fail(ErrorKind::InvalidInput, "unknown monomial order '" + std::string(s) + "'");
}


/// Layout of S = k[x1..xd, t1..tp]: the x-block occupies exponent slots
/// [0, nx), the t-block [nx, nx + nt).
struct PolyRing {
  int nx = 1;
  int nt = 1;
  OrderKind order = OrderKind::PositionOverTerm;
  FieldSpec field{};

  PolyRing() = default;
  PolyRing(int d, int p, FieldSpec f = {}, OrderKind o = OrderKind::PositionOverTerm)
      : nx(d), nt(p), order(o), field(f) {
    require(d >= 1 && p >= 1 && d + p <= kMaxVariables, ErrorKind::InvalidInput,
            "ring needs d >= 1, p >= 1 and d + p <= 8");
  }

  int nvars() const { return nx + nt; }
  bool same_layout(const PolyRing& o) const { return nx == o.nx && nt == o.nt && field == o.field; }
  PolyRing with_order(OrderKind o) const {
    PolyRing r = *this;
    r.order = o;
    return r;
  }
};

struct Monomial {
  std::array<std::uint16_t, kMaxVariables> exp{};

  bool operator==(const Monomial&) const = default;

  std::uint16_t& operator[](int i) { return exp[static_cast<std::size_t>(i)]; }
  std::uint16_t operator[](int i) const { return exp[static_cast<std::size_t>(i)]; }
};

inline int xdeg(const Monomial& m, const PolyRing& r) {
  int s = 0;
  for (int i = 0; i < r.nx; ++i) s += m[i];
  return s;
}

inline int tdeg(const Monomial& m, const PolyRing& r) {
  int s = 0;
  for (int i = r.nx; i < r.nvars(); ++i) s += m[i];
  return s;
}

inline Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (int i = 0; i < kMaxVariables; ++i) {
    unsigned s = unsigned(a[i]) + unsigned(b[i]);
    require(s <= 0xFFFFu, ErrorKind::ResourceLimit, "exponent overflow");
    m[i] = static_cast<std::uint16_t>(s);
  }
  return m;
}

/// True when `a` divides `b` as module monomials: equal t-parts and the
/// x-part of `a` componentwise below that of `b`.
inline bool module_divides(const Monomial& a, const Monomial& b, const PolyRing& r) {
  for (int i = r.nx; i < r.nvars(); ++i)
    if (a[i] != b[i]) return false;
  for (int i = 0; i < r.nx; ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline bool same_position(const Monomial& a, const Monomial& b, const PolyRing& r) {
  for (int i = r.nx; i < r.nvars(); ++i)
    if (a[i] != b[i]) return false;
  return true;
}

/// x-part of b / a; caller guarantees module_divides(a, b).
inline Monomial x_quotient(const Monomial& b, const Monomial& a, const PolyRing& r) {
  Monomial q;
  for (int i = 0; i < r.nx; ++i) q[i] = static_cast<std::uint16_t>(b[i] - a[i]);
  return q;
}

/// lcm of two module monomials in the same position.
inline Monomial module_lcm(const Monomial& a, const Monomial& b, const PolyRing& r) {
  Monomial m = a;
  for (int i = 0; i < r.nx; ++i) m[i] = std::max(a[i], b[i]);
  return m;
}

inline bool x_coprime(const Monomial& a, const Monomial& b, const PolyRing& r) {
  for (int i = 0; i < r.nx; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

namespace detail {

inline int cmp_degrevlex_x(const Monomial& u, const Monomial& v, const PolyRing& r) {
  int du = xdeg(u, r), dv = xdeg(v, r);
  if (du != dv) return du < dv ? -1 : 1;
  for (int i = r.nx - 1; i >= 0; --i)
    if (u[i] != v[i]) return u[i] > v[i] ? -1 : 1;
  return 0;
}

inline int cmp_tlex(const Monomial& u, const Monomial& v, const PolyRing& r) {
  for (int i = r.nx; i < r.nvars(); ++i)
    if (u[i] != v[i]) return u[i] < v[i] ? -1 : 1;
  return 0;
}

}  // namespace detail

/// Three-way comparison under the ring's monomial order: -1, 0 or 1.
inline int order_compare(const Monomial& u, const Monomial& v, const PolyRing& r) {
  int c = 0;
  switch (r.order) {
    case OrderKind::PositionOverTerm:
      c = detail::cmp_tlex(u, v, r);
      return c ? c : detail::cmp_degrevlex_x(u, v, r);
    case OrderKind::TotalBlock: {
      int tu = tdeg(u, r), tv = tdeg(v, r);
      if (tu != tv) return tu < tv ? -1 : 1;
      c = detail::cmp_tlex(u, v, r);
      return c ? c : detail::cmp_degrevlex_x(u, v, r);
    }
    case OrderKind::TermOverPosition:
      c = detail::cmp_degrevlex_x(u, v, r);
      return c ? c : detail::cmp_tlex(u, v, r);
  }
  return 0;
}

/// All exponent vectors of total degree `deg` in `n` variables, in
/// lexicographically decreasing order.
inline std::vector<std::vector<int>> compositions(int n, int deg) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int left) {
    if (i == n - 1) {
      cur[static_cast<std::size_t>(i)] = left;
      out.push_back(cur);
      return;
    }
    for (int a = left; a >= 0; --a) {
      cur[static_cast<std::size_t>(i)] = a;
      rec(i + 1, left - a);
    }
  };
  if (n > 0 && deg >= 0) rec(0, deg);
  return out;
}

/// Degree-e monomials in the t-block (the positions of S_(.,e)), t-lex decreasing.
inline std::vector<Monomial> t_monomials(const PolyRing& r, int e) {
  std::vector<Monomial> out;
  for (const auto& c : compositions(r.nt, e)) {
    Monomial m;
    for (int i = 0; i < r.nt; ++i) m[r.nx + i] = static_cast<std::uint16_t>(c[static_cast<std::size_t>(i)]);
    out.push_back(m);
  }
  return out;
}

inline std::vector<Monomial> x_monomials(const PolyRing& r, int deg) {
  std::vector<Monomial> out;
  for (const auto& c : compositions(r.nx, deg)) {
    Monomial m;
    for (int i = 0; i < r.nx; ++i) m[i] = static_cast<std::uint16_t>(c[static_cast<std::size_t>(i)]);
    out.push_back(m);
  }
  return out;
}

inline Monomial variable(const PolyRing& r, int slot, int power = 1) {
  require(slot >= 0 && slot < r.nvars(), ErrorKind::InvalidInput, "variable index out of range");
  Monomial m;
  m[slot] = static_cast<std::uint16_t>(power);
  return m;
}

/// Number of monomials of x-degree `dx` and t-degree `dt` (zero if either is negative).
inline long long count_bidegree(const PolyRing& r, int dt, int dx) {
  auto binom = [](long long n, long long k) -> long long {
    if (k < 0 || n < 0 || k > n) return 0;
    long long b = 1;
    for (long long i = 1; i <= k; ++i) b = b * (n - k + i) / i;
    return b;
  };
  if (dt < 0 || dx < 0) return 0;
  return binom(dx + r.nx - 1, r.nx - 1) * binom(dt + r.nt - 1, r.nt - 1);
}

inline std::string to_string(const Monomial& m, const PolyRing& r) {
  std::string s;
  for (int i = 0; i < r.nvars(); ++i) {
    if (!m[i]) continue;
    if (!s.empty()) s += '*';
    s += (i < r.nx ? "x" + std::to_string(i + 1) : "t" + std::to_string(i - r.nx + 1));
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}


}  // namespace brim

#endif  // BRIM_MONOMIAL_HPP
