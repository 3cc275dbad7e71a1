#ifndef BRIM_TESTS_HELPERS_HPP
#define BRIM_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include <algorithm>

#include "brim/groebner.hpp"
#include "brim/rees.hpp"
#include "brim/parse.hpp"

namespace brim::testing {

using Q = Rational;
using PolyQ = Polynomial<Q>;

inline PolyRing ring(int d, int p, OrderKind o = OrderKind::PositionOverTerm) {
  return PolyRing(d, p, FieldSpec::rationals(), o);
}

template <FieldScalar K = Q>
Polynomial<K> P(const std::string& s, const PolyRing& r) {
  return parse_polynomial<K>(s, r);
}

template <FieldScalar K = Q>
GeneratorSet<K> gens(const PolyRing& r, int e, const std::vector<std::string>& gs) {
  std::vector<Polynomial<K>> v;
  for (const auto& g : gs) v.push_back(parse_polynomial<K>(g, r));
  return GeneratorSet<K>(r, e, std::move(v));
}

/// Random polynomial with small integer coefficients and bounded exponents.
template <FieldScalar K = Q>
Polynomial<K> random_poly(std::mt19937_64& rng, const PolyRing& r, int max_terms, int max_exp) {
  std::uniform_int_distribution<int> nterms(0, max_terms), ex(0, max_exp), co(-9, 9);
  std::vector<Term<K>> t;
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    Monomial m;
    for (int v = 0; v < r.nvars(); ++v) m[v] = static_cast<std::uint16_t>(ex(rng));
    t.push_back({m, scalar_traits<K>::from_int(co(rng), r.field)});
  }
  return Polynomial<K>(r, std::move(t));
}


/// Independent length oracle for monomial data: builds every product of
/// generators by brute force and counts lattice points outside the
/// resulting monomial module, growing the box until no standard point
/// touches its boundary.  Returns -1 if that never happens.
inline long long staircase_length(const PolyRing& r, const std::vector<std::vector<Monomial>>& mods,
                                  const std::vector<int>& n, int q) {
  std::vector<Monomial> cur{Monomial{}};
  for (std::size_t i = 0; i < mods.size(); ++i)
    for (int k = 0; k < n[i]; ++k) {
      std::vector<Monomial> nxt;
      for (const auto& a : cur)
        for (const auto& b : mods[i]) nxt.push_back(a * b);
      std::sort(nxt.begin(), nxt.end(), [](const Monomial& a, const Monomial& b) { return a.exp < b.exp; });
      nxt.erase(std::unique(nxt.begin(), nxt.end()), nxt.end());
      cur = std::move(nxt);
    }
  if (q > 0) {
    std::vector<Monomial> nxt;
    for (const auto& a : cur)
      for (const auto& mu : t_monomials(r, q)) nxt.push_back(a * mu);
    cur = std::move(nxt);
  }
  int ambient = tdeg(cur.front(), r);
  for (int box = 4; box <= 64; box *= 2) {
    long long count = 0;
    bool touches = false;
    for (const auto& pos : t_monomials(r, ambient)) {
      std::vector<int> e(static_cast<std::size_t>(r.nx), 0);
      for (;;) {
        Monomial m = pos;
        for (int i = 0; i < r.nx; ++i) m[i] = static_cast<std::uint16_t>(e[static_cast<std::size_t>(i)]);
        bool inside = false;
        for (const auto& g : cur)
          if (module_divides(g, m, r)) {
            inside = true;
            break;
          }
        if (!inside) {
          ++count;
          for (int i = 0; i < r.nx; ++i)
            if (e[static_cast<std::size_t>(i)] == box) touches = true;
        }
        int k = 0;
        while (k < r.nx && e[static_cast<std::size_t>(k)] == box) e[static_cast<std::size_t>(k++)] = 0;
        if (k == r.nx) break;
        ++e[static_cast<std::size_t>(k)];
      }
    }
    if (!touches) return count;
  }
  return -1;
}

inline std::vector<Monomial> monos(const PolyRing& r, const std::vector<std::string>& gs) {
  std::vector<Monomial> out;
  for (const auto& g : gs) out.push_back(parse_polynomial<Rational>(g, r).lead());
  return out;
}

template <FieldScalar K = Q>
GradedSubmodule<K> module(const PolyRing& r, int e, const std::vector<std::string>& gs) {
  return GradedSubmodule<K>(gens<K>(r, e, gs));
}

}  // namespace brim::testing

#endif
