#ifndef BRIM_GROEBNER_HPP
#define BRIM_GROEBNER_HPP

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <vector>

#include "brim/polynomial.hpp"

namespace brim {

/// R-generators of a submodule of S_(.,e), the free R-module whose basis is
/// the degree-e t-monomials.
template <FieldScalar K>
class GeneratorSet {
 public:
  GeneratorSet() = default;
  GeneratorSet(const PolyRing& r, int tdeg, std::vector<Polynomial<K>> gens) : ring_(r), tdeg_(tdeg) {
    require(tdeg >= 0, ErrorKind::InvalidInput, "negative t-degree");
    for (auto& g : gens) {
      g.check_layout(r);
      if (g.is_zero()) continue;
      require(is_t_homogeneous(g, tdeg), ErrorKind::InvalidInput,
              "generator is not t-homogeneous of degree " + std::to_string(tdeg));
      gens_.push_back(g.ring().order == r.order ? std::move(g) : g.reordered(r));
    }
  }

  const PolyRing& ring() const { return ring_; }
  int tdeg() const { return tdeg_; }
  const std::vector<Polynomial<K>>& gens() const { return gens_; }
  bool empty() const { return gens_.empty(); }

 private:
  PolyRing ring_{};
  int tdeg_ = 0;
  std::vector<Polynomial<K>> gens_;
};

/// Reduced Gröbner basis of an R-submodule of S_(.,e) under a
/// position-aware order.  Leading coefficients are 1 and elements are sorted
/// by descending leading monomial.
template <FieldScalar K>
class GroebnerBasis {
 public:
  GroebnerBasis() = default;
  GroebnerBasis(const PolyRing& r, int tdeg, std::vector<Polynomial<K>> elems)
      : ring_(r), tdeg_(tdeg), elems_(std::move(elems)) {}

  const PolyRing& ring() const { return ring_; }
  OrderKind order() const { return ring_.order; }
  int tdeg() const { return tdeg_; }
  const std::vector<Polynomial<K>>& elements() const { return elems_; }
  std::size_t size() const { return elems_.size(); }

  /// Index of the first element whose leading monomial divides `m`, or -1.
  int find_divisor(const Monomial& m) const {
    for (std::size_t i = 0; i < elems_.size(); ++i)
      if (module_divides(elems_[i].lead(), m, ring_)) return static_cast<int>(i);
    return -1;
  }

 private:
  PolyRing ring_{};
  int tdeg_ = 0;
  std::vector<Polynomial<K>> elems_;
};

namespace detail {

/// Full reduction of `f` by `basis` (leading coefficients must be 1); terms
/// of the remainder are divisible by no leading monomial.
template <FieldScalar K>
Polynomial<K> reduce_fully(Polynomial<K> f, const std::vector<Polynomial<K>>& basis, const PolyRing& r,
                           int skip = -1) {
  std::vector<Term<K>> rem;
  while (!f.is_zero()) {
    const Monomial lm = f.lead();
    int hit = -1;
    for (std::size_t i = 0; i < basis.size(); ++i) {
      if (static_cast<int>(i) == skip || basis[i].is_zero()) continue;
      if (module_divides(basis[i].lead(), lm, r)) {
        hit = static_cast<int>(i);
        break;
      }
    }
    if (hit < 0) {
      rem.push_back(f.pop_lead());
      continue;
    }
    const auto& g = basis[static_cast<std::size_t>(hit)];
    K c = f.lead_coeff() / g.lead_coeff();
    f.sub_mul(c, x_quotient(lm, g.lead(), r), g);
  }
  // rem is already strictly descending.
  Polynomial<K> out(r);
  if (!rem.empty()) out = Polynomial<K>(r, std::move(rem));
  return out;
}

template <FieldScalar K>
std::vector<Polynomial<K>> minimal_monomial_generators(const std::vector<Polynomial<K>>& gens, const PolyRing& r) {
  std::vector<Monomial> monos;
  for (const auto& g : gens) monos.push_back(g.lead());
  std::sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) {
    int da = xdeg(a, r), db = xdeg(b, r);
    if (da != db) return da < db;
    return order_compare(a, b, r) > 0;
  });
  std::vector<Monomial> keep;
  for (const auto& m : monos) {
    bool redundant = false;
    for (const auto& k : keep)
      if (module_divides(k, m, r)) {
        redundant = true;
        break;
      }
    if (!redundant) keep.push_back(m);
  }
  std::sort(keep.begin(), keep.end(), [&](const Monomial& a, const Monomial& b) { return order_compare(a, b, r) > 0; });
  std::vector<Polynomial<K>> out;
  out.reserve(keep.size());
  for (const auto& m : keep) out.push_back(Polynomial<K>::term(r, m, scalar_traits<K>::from_int(1, r.field)));
  return out;
}

template <FieldScalar K>
std::vector<Polynomial<K>> interreduce(std::vector<Polynomial<K>> g, const PolyRing& r) {
  // Drop elements whose leading monomial is divisible by another's.
  std::vector<bool> drop(g.size(), false);
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size() && !drop[i]; ++j) {
      if (i == j || drop[j]) continue;
      if (module_divides(g[j].lead(), g[i].lead(), r) && (g[j].lead() != g[i].lead() || j < i)) drop[i] = true;
    }
  std::vector<Polynomial<K>> kept;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (!drop[i]) kept.push_back(std::move(g[i]));
  std::sort(kept.begin(), kept.end(),
            [&](const Polynomial<K>& a, const Polynomial<K>& b) { return order_compare(a.lead(), b.lead(), r) > 0; });
  for (std::size_t i = 0; i < kept.size(); ++i) {
    Polynomial<K> f = kept[i];
    Term<K> lt = f.pop_lead();
    Polynomial<K> tail = reduce_fully(std::move(f), kept, r, static_cast<int>(i));
    kept[i] = Polynomial<K>::term(r, lt.mono, lt.coeff) + tail;
  }
  return kept;
}

}  // namespace detail

struct BuchbergerLimits {
  std::size_t max_basis = 200000;
};

/// Buchberger's algorithm for R-submodules.  Pairs are only formed between
/// elements with the same position; selection is by sugar, then by index.
/// The chain criterion prunes pairs.  The coprimality criterion does not
/// hold for module elements and is not used.
template <FieldScalar K>
GroebnerBasis<K> buchberger(const GeneratorSet<K>& input, const BuchbergerLimits& limits = {}) {
  const PolyRing& r = input.ring();
  std::vector<Polynomial<K>> g;
  for (const auto& f : input.gens()) g.push_back(f.monic());
  if (g.empty()) return GroebnerBasis<K>(r, input.tdeg(), {});

  bool all_monomial = std::all_of(g.begin(), g.end(), [](const auto& f) { return f.is_monomial(); });
  if (all_monomial) return GroebnerBasis<K>(r, input.tdeg(), detail::minimal_monomial_generators(g, r));

  std::vector<int> sugar;
  for (const auto& f : g) sugar.push_back(max_xdeg(f));

  using Key = std::tuple<int, int, int>;  // (sugar, i, j)
  std::set<Key> queue;
  std::set<std::pair<int, int>> pending;
  auto pair_sugar = [&](int i, int j) {
    Monomial l = module_lcm(g[static_cast<std::size_t>(i)].lead(), g[static_cast<std::size_t>(j)].lead(), r);
    int si = sugar[static_cast<std::size_t>(i)] + xdeg(l, r) - xdeg(g[static_cast<std::size_t>(i)].lead(), r);
    int sj = sugar[static_cast<std::size_t>(j)] + xdeg(l, r) - xdeg(g[static_cast<std::size_t>(j)].lead(), r);
    return std::max(si, sj);
  };
  auto add_pairs = [&](int j) {
    for (int i = 0; i < j; ++i) {
      if (!same_position(g[static_cast<std::size_t>(i)].lead(), g[static_cast<std::size_t>(j)].lead(), r)) continue;
      queue.insert({pair_sugar(i, j), i, j});
      pending.insert({i, j});
    }
  };
  for (int j = 0; j < static_cast<int>(g.size()); ++j) add_pairs(j);

  auto is_pending = [&](int a, int b) { return pending.count({std::min(a, b), std::max(a, b)}) > 0; };

  while (!queue.empty()) {
    auto [s, i, j] = *queue.begin();
    queue.erase(queue.begin());
    pending.erase({i, j});
    const auto& gi = g[static_cast<std::size_t>(i)];
    const auto& gj = g[static_cast<std::size_t>(j)];
    Monomial l = module_lcm(gi.lead(), gj.lead(), r);

    bool chain = false;
    for (int k = 0; k < static_cast<int>(g.size()) && !chain; ++k) {
      if (k == i || k == j) continue;
      if (!module_divides(g[static_cast<std::size_t>(k)].lead(), l, r)) continue;
      if (!is_pending(i, k) && !is_pending(j, k)) chain = true;
    }
    if (chain) continue;

    Polynomial<K> sp = gi.times_monomial(x_quotient(l, gi.lead(), r));
    sp.sub_mul(scalar_traits<K>::from_int(1, r.field), x_quotient(l, gj.lead(), r), gj);
    Polynomial<K> h = detail::reduce_fully(std::move(sp), g, r);
    if (h.is_zero()) continue;
    g.push_back(h.monic());
    sugar.push_back(s);
    require(g.size() <= limits.max_basis, ErrorKind::ResourceLimit, "Gröbner basis exceeds size cap");
    add_pairs(static_cast<int>(g.size()) - 1);
  }
  return GroebnerBasis<K>(r, input.tdeg(), detail::interreduce(std::move(g), r));
}

template <FieldScalar K>
void check_degree(const Polynomial<K>& v, const GroebnerBasis<K>& b) {
  v.check_layout(b.ring());
  require(v.is_zero() || is_t_homogeneous(v, b.tdeg()), ErrorKind::InvalidInput,
          "vector is not t-homogeneous of degree " + std::to_string(b.tdeg()));
}

template <FieldScalar K>
Polynomial<K> normal_form(const Polynomial<K>& v, const GroebnerBasis<K>& b) {
  check_degree(v, b);
  Polynomial<K> f = v.ring().order == b.order() ? v : v.reordered(b.ring());
  return detail::reduce_fully(std::move(f), b.elements(), b.ring());
}

template <FieldScalar K>
bool contains(const GroebnerBasis<K>& b, const Polynomial<K>& v) {
  return normal_form(v, b).is_zero();
}

/// Mutual containment of the two spans.
template <FieldScalar K>
bool submodule_eq(const GeneratorSet<K>& a, const GeneratorSet<K>& b) {
  require(a.tdeg() == b.tdeg(), ErrorKind::InvalidInput, "submodules live in different t-degrees");
  auto ga = buchberger(a);
  auto gb = buchberger(b);
  for (const auto& f : a.gens())
    if (!contains(gb, f)) return false;
  for (const auto& f : b.gens())
    if (!contains(ga, f)) return false;
  return true;
}

/// Post-hoc Buchberger criterion: every same-position S-pair reduces to 0.
template <FieldScalar K>
bool is_groebner(const GroebnerBasis<K>& b) {
  const auto& g = b.elements();
  const auto& r = b.ring();
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = i + 1; j < g.size(); ++j) {
      if (!same_position(g[i].lead(), g[j].lead(), r)) continue;
      Monomial l = module_lcm(g[i].lead(), g[j].lead(), r);
      Polynomial<K> sp = g[i].times_monomial(x_quotient(l, g[i].lead(), r));
      sp.sub_mul(g[i].lead_coeff() / g[j].lead_coeff(), x_quotient(l, g[j].lead(), r), g[j]);
      if (!detail::reduce_fully(std::move(sp), g, r).is_zero()) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// Colength

struct ColengthOptions {
  long long enumeration_cap = 1'000'000;  ///< ResourceLimit beyond this
  std::size_t store_cap = 4096;           ///< keep the monomials when at most this many
};

struct ColengthReport {
  bool finite = false;
  long long value = 0;
  bool stored = false;
  std::vector<Monomial> standard_monomials;
  /// Largest x-degree among the standard monomials (finite case).
  int max_xdeg = 0;
};

/// dim_k of S_(.,e) / span(B): the number of standard monomials x^a * mu.
/// Finite exactly when every position carries a pure power of every x_i
/// among the leading monomials.
template <FieldScalar K>
ColengthReport colength(const GroebnerBasis<K>& b, const ColengthOptions& opts = {}) {
  const PolyRing& r = b.ring();
  ColengthReport rep;
  std::vector<Monomial> positions = t_monomials(r, b.tdeg());
  std::vector<std::vector<Monomial>> leads(positions.size());
  for (const auto& f : b.elements()) {
    for (std::size_t p = 0; p < positions.size(); ++p)
      if (same_position(f.lead(), positions[p], r)) leads[p].push_back(f.lead());
  }
  for (const auto& ls : leads) {
    for (int i = 0; i < r.nx; ++i) {
      bool pure = false;
      for (const auto& m : ls) {
        bool only_i = true;
        for (int k = 0; k < r.nx && only_i; ++k)
          if (k != i && m[k]) only_i = false;
        if (only_i) pure = true;
      }
      if (!pure) return rep;
    }
  }
  rep.finite = true;
  std::vector<Monomial> found;
  for (std::size_t p = 0; p < positions.size(); ++p) {
    const auto& ls = leads[p];
    Monomial cur = positions[p];
    auto in_ideal = [&](const Monomial& m) {
      for (const auto& l : ls)
        if (module_divides(l, m, r)) return true;
      return false;
    };
    // Depth-first over x-exponents; every visited leaf is standard.
    auto rec = [&](auto&& self, int var) -> void {
      for (int e = 0;; ++e) {
        cur[var] = static_cast<std::uint16_t>(e);
        if (in_ideal(cur)) break;
        if (var == r.nx - 1) {
          ++rep.value;
          rep.max_xdeg = std::max(rep.max_xdeg, xdeg(cur, r));
          require(rep.value <= opts.enumeration_cap, ErrorKind::ResourceLimit,
                  "standard monomial enumeration exceeds cap");
          if (found.size() <= opts.store_cap) found.push_back(cur);
        } else {
          self(self, var + 1);
        }
      }
      cur[var] = 0;
    };
    rec(rec, 0);
  }
  if (static_cast<std::size_t>(rep.value) <= opts.store_cap) {
    rep.stored = true;
    rep.standard_monomials = std::move(found);
  }
  return rep;
}

}  // namespace brim

#endif  // BRIM_GROEBNER_HPP
