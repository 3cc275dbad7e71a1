#ifndef BRIM_REES_HPP
#define BRIM_REES_HPP

#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "brim/groebner.hpp"

namespace brim {

/// R = k[x1..xd], F = R^p, S = Sym(F) = R[t1..tp].
struct RingSpec {
  int d = 1;
  int p = 1;
  FieldSpec field{};

  RingSpec() = default;
  RingSpec(int d_, int p_, FieldSpec f = {}) : d(d_), p(p_), field(f) {
    require(d >= 1 && p >= 1, ErrorKind::InvalidInput, "need d >= 1 and p >= 1");
    require(d + p <= kMaxVariables, ErrorKind::InvalidInput, "d + p exceeds the desk-scale cap of 8");
    if (field.kind == FieldSpec::Kind::Prime) field = FieldSpec::prime_field(field.prime);
  }

  PolyRing poly_ring(OrderKind order = OrderKind::PositionOverTerm) const { return PolyRing(d, p, field, order); }
  bool operator==(const RingSpec&) const = default;
};

struct ResourceCaps {
  std::size_t max_generators = 200000;
};

/// A submodule E of F^e = S_(.,e), e >= 1, with its Gröbner basis computed
/// on first use.  Copies share the cached basis.
template <FieldScalar K>
class GradedSubmodule {
 public:
  GradedSubmodule() = default;
  explicit GradedSubmodule(GeneratorSet<K> gens) : state_(std::make_shared<State>()) {
    require(gens.tdeg() >= 1, ErrorKind::InvalidInput, "submodules need t-degree >= 1");
    state_->gens = std::move(gens);
  }
  GradedSubmodule(GeneratorSet<K> gens, GroebnerBasis<K> basis) : GradedSubmodule(std::move(gens)) {
    std::call_once(state_->once, [&] { state_->basis = std::move(basis); });
  }

  const PolyRing& ring() const { return state_->gens.ring(); }
  int tdeg() const { return state_->gens.tdeg(); }
  const GeneratorSet<K>& generators() const { return state_->gens; }

  const GroebnerBasis<K>& basis() const {
    std::call_once(state_->once, [this] { state_->basis = buchberger(state_->gens); });
    return state_->basis;
  }

  /// Whichever of the original generators or the basis is shorter.
  const std::vector<Polynomial<K>>& compact_generators() const {
    const auto& b = basis().elements();
    return b.size() <= state_->gens.gens().size() ? b : state_->gens.gens();
  }

  bool contains(const Polynomial<K>& v) const { return brim::contains(basis(), v); }

 private:
  struct State {
    GeneratorSet<K> gens;
    std::once_flag once;
    GroebnerBasis<K> basis;
  };
  std::shared_ptr<State> state_;
};

/// Builds Σ h_j μ_j from a coefficient vector over the degree-e positions.
template <FieldScalar K>
Polynomial<K> from_vector(const PolyRing& r, int e, const std::vector<Polynomial<K>>& h) {
  auto positions = t_monomials(r, e);
  require(h.size() == positions.size(), ErrorKind::InvalidInput,
          "vector has " + std::to_string(h.size()) + " entries, expected " + std::to_string(positions.size()));
  Polynomial<K> out(r);
  for (std::size_t j = 0; j < h.size(); ++j) {
    h[j].check_layout(r);
    require(h[j].is_zero() || is_t_homogeneous(h[j], 0), ErrorKind::InvalidInput, "vector entries must be x-polynomials");
    out += h[j].times_monomial(positions[j]);
  }
  return out;
}

/// w(h) = h1 t1 + ... + hp tp.
template <FieldScalar K>
Polynomial<K> embed_w(const PolyRing& r, const std::vector<Polynomial<K>>& h) {
  require(static_cast<int>(h.size()) == r.nt, ErrorKind::InvalidInput, "w needs exactly p entries");
  return from_vector(r, 1, h);
}

/// Generators of span(a) * span(b): all pairwise products.
template <FieldScalar K>
std::vector<Polynomial<K>> pairwise_products(const std::vector<Polynomial<K>>& a, const std::vector<Polynomial<K>>& b,
                                             const ResourceCaps& caps = {}) {
  require(a.size() * b.size() <= caps.max_generators, ErrorKind::ResourceLimit,
          "product would have " + std::to_string(a.size() * b.size()) + " generators");
  std::vector<Polynomial<K>> out;
  out.reserve(a.size() * b.size());
  for (const auto& f : a)
    for (const auto& g : b) out.push_back(f * g);
  return out;
}

/// `gens` multiplied by every t-monomial of degree q (S_(.,q) as an R-module).
template <FieldScalar K>
GeneratorSet<K> times_slice(const GeneratorSet<K>& gens, int q) {
  const auto& r = gens.ring();
  if (q == 0) return gens;
  std::vector<Polynomial<K>> out;
  for (const auto& g : gens.gens())
    for (const auto& mu : t_monomials(r, q)) out.push_back(g.times_monomial(mu));
  return GeneratorSet<K>(r, gens.tdeg() + q, std::move(out));
}

/// The whole slice S_(.,e) = F^e.
template <FieldScalar K>
GeneratorSet<K> full_slice(const PolyRing& r, int e) {
  std::vector<Polynomial<K>> out;
  for (const auto& mu : t_monomials(r, e)) out.push_back(Polynomial<K>::term(r, mu, scalar_traits<K>::from_int(1, r.field)));
  return GeneratorSet<K>(r, e, std::move(out));
}

/// m^n F^e: every x-monomial of degree n at every degree-e position.
template <FieldScalar K>
GeneratorSet<K> maximal_power_slice(const PolyRing& r, int n, int e) {
  std::vector<Polynomial<K>> out;
  for (const auto& mu : t_monomials(r, e))
    for (const auto& xm : x_monomials(r, n)) out.push_back(Polynomial<K>::term(r, xm * mu, scalar_traits<K>::from_int(1, r.field)));
  return GeneratorSet<K>(r, e, std::move(out));
}

template <FieldScalar K>
GeneratorSet<K> sum(const GeneratorSet<K>& a, const GeneratorSet<K>& b) {
  require(a.tdeg() == b.tdeg(), ErrorKind::InvalidInput, "sum of submodules in different t-degrees");
  auto g = a.gens();
  g.insert(g.end(), b.gens().begin(), b.gens().end());
  return GeneratorSet<K>(a.ring(), a.tdeg(), std::move(g));
}

/// A * B inside Sym(F); the generators handed on are the reduced basis of
/// the pairwise products, which keeps iterated products small.
template <FieldScalar K>
GradedSubmodule<K> product(const GradedSubmodule<K>& a, const GradedSubmodule<K>& b, const ResourceCaps& caps = {}) {
  require(a.ring().same_layout(b.ring()), ErrorKind::InvalidInput, "product of submodules over different rings");
  GeneratorSet<K> gs(a.ring(), a.tdeg() + b.tdeg(), pairwise_products(a.compact_generators(), b.compact_generators(), caps));
  auto basis = buchberger(gs);
  GeneratorSet<K> reduced(a.ring(), gs.tdeg(), basis.elements());
  return GradedSubmodule<K>(std::move(reduced), std::move(basis));
}

/// E^n, built as E * E^(n-1).
template <FieldScalar K>
GradedSubmodule<K> power(const GradedSubmodule<K>& e, int n, const ResourceCaps& caps = {}) {
  require(n >= 1, ErrorKind::InvalidInput, "power needs n >= 1");
  GradedSubmodule<K> acc = e;
  for (int k = 2; k <= n; ++k) acc = product(e, acc, caps);
  return acc;
}

struct PrimarityCertificate {
  long long colength = 0;
  /// Least N with m^N F^e ⊆ E.
  int nakayama_exponent = 0;
};

/// Succeeds iff F^e / E has finite length and is killed by a power of m.
/// Throws InfiniteColength or SupportOffOrigin otherwise.
template <FieldScalar K>
PrimarityCertificate mprimary_check(const GradedSubmodule<K>& e) {
  const auto& b = e.basis();
  auto rep = colength(b);
  require(rep.finite, ErrorKind::InfiniteColength, "F^e/E does not have finite length");
  const auto& r = e.ring();
  auto positions = t_monomials(r, e.tdeg());
  auto one = scalar_traits<K>::from_int(1, r.field);
  for (int n = 0; n <= rep.value; ++n) {
    bool all = true;
    for (const auto& xm : x_monomials(r, n)) {
      for (const auto& mu : positions)
        if (!brim::contains(b, Polynomial<K>::term(r, xm * mu, one))) {
          all = false;
          break;
        }
      if (!all) break;
    }
    if (all) return {rep.value, n};
  }
  fail(ErrorKind::SupportOffOrigin,
       "colength " + std::to_string(rep.value) + " but m^" + std::to_string(rep.value) + " F^e is not contained in E");
}

}  // namespace brim

#endif  // BRIM_REES_HPP
