#ifndef BRIM_JOINTRED_HPP
#define BRIM_JOINTRED_HPP

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "brim/hilbert.hpp"
#include "brim/linalg.hpp"
#include "brim/parse.hpp"

namespace brim {

enum class Verdict { True, False, InconclusiveWithinWindow };

inline std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::True: return "true";
    case Verdict::False: return "false";
    case Verdict::InconclusiveWithinWindow: return "inconclusive_within_window";
  }
  return "?";
}

struct Decision {
  Verdict verdict = Verdict::InconclusiveWithinWindow;
  /// first exponent at which the equality held
  std::optional<int> n0;
  /// an element of the right-hand side missing from the left (last one found)
  std::optional<std::string> counterexample;
  std::optional<int> counterexample_n;
  int n_max = 0;
  int q_max = 0;
  /// superficial checks: the c1 that worked, or the largest tried
  std::optional<int> c1;
};

// ---------------------------------------------------------------------------
// Superficial elements

template <FieldScalar K>
struct SuperficialCandidate {
  Polynomial<K> element;
  std::uint64_t seed = 0;
  std::vector<long> coefficients;
};

/// A seeded field-linear combination of the generators of Es[0].
template <FieldScalar K>
SuperficialCandidate<K> sample_superficial(const std::vector<GradedSubmodule<K>>& es, std::uint64_t seed) {
  require(!es.empty(), ErrorKind::InvalidInput, "need at least one module");
  const auto& g = es.front().generators();
  require(!g.empty(), ErrorKind::ZeroModule, "cannot sample from the zero module");
  const auto& r = g.ring();
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> coeff(1, 97);
  SuperficialCandidate<K> c{Polynomial<K>(r), seed, {}};
  for (const auto& f : g.gens()) {
    long a = coeff(rng);
    c.coefficients.push_back(a);
    c.element += f * scalar_traits<K>::from_int(a, r.field);
  }
  return c;
}

struct SuperficialWindow {
  int c1_min = 1;
  int c1_max = 2;
  /// n1 runs over [c1 + 1, c1 + 1 + n1_span]
  int n1_span = 1;
  int n_other_max = 1;
  int q_max = 1;
};

namespace detail {

/// Echelon basis of a k-subspace of polynomials: distinct leading monomials.
template <FieldScalar K>
class PolyEchelon {
 public:
  explicit PolyEchelon(const PolyRing& r) : r_(r) {}

  /// Reduces `v` against the basis; adds the remainder if nonzero.
  bool insert(Polynomial<K> v) {
    v = reduce(std::move(v));
    if (v.is_zero()) return false;
    v = v.monic();
    lead_.emplace(v.lead().exp, basis_.size());
    basis_.push_back(std::move(v));
    return true;
  }

  Polynomial<K> reduce(Polynomial<K> v) const {
    std::vector<Term<K>> done;
    while (!v.is_zero()) {
      auto it = lead_.find(v.lead().exp);
      if (it == lead_.end()) {
        done.push_back(v.pop_lead());
        continue;
      }
      v.sub_mul(v.lead_coeff(), Monomial{}, basis_[it->second]);
    }
    return Polynomial<K>(r_, std::move(done));
  }

  const std::vector<Polynomial<K>>& basis() const { return basis_; }

 private:
  PolyRing r_;
  std::vector<Polynomial<K>> basis_;
  std::map<std::array<std::uint16_t, kMaxVariables>, std::size_t> lead_;
};

/// k-basis of the image of span_R(gens) in S_D / C, C given by its basis.
template <FieldScalar K>
std::vector<Polynomial<K>> image_in_quotient(const std::vector<Polynomial<K>>& gens, const GroebnerBasis<K>& c) {
  const auto& r = c.ring();
  PolyEchelon<K> ech(r);
  std::vector<Polynomial<K>> queue;
  for (const auto& g : gens) {
    auto v = normal_form(g, c);
    if (ech.insert(v)) queue.push_back(ech.basis().back());
  }
  while (!queue.empty()) {
    auto w = std::move(queue.back());
    queue.pop_back();
    for (int i = 0; i < r.nx; ++i) {
      auto v = normal_form(w.times_monomial(variable(r, i)), c);
      if (ech.insert(v)) queue.push_back(ech.basis().back());
    }
  }
  return ech.basis();
}

/// Some nonzero v in span(ws) with NF_A(x v) = 0, if the multiplication map
/// is not injective.
template <FieldScalar K>
std::optional<Polynomial<K>> multiplication_kernel(const Polynomial<K>& x, const std::vector<Polynomial<K>>& ws,
                                                    const GroebnerBasis<K>& a) {
  if (ws.empty()) return std::nullopt;
  std::vector<Polynomial<K>> images;
  std::map<std::array<std::uint16_t, kMaxVariables>, Eigen::Index> rows;
  for (const auto& w : ws) {
    images.push_back(normal_form(x * w, a));
    for (const auto& t : images.back().terms()) rows.emplace(t.mono.exp, 0);
  }
  Eigen::Index k = 0;
  for (auto& [m, idx] : rows) idx = k++;
  Matrix<K> mat = Matrix<K>::Constant(k, static_cast<Eigen::Index>(ws.size()), K(0));
  for (std::size_t j = 0; j < images.size(); ++j)
    for (const auto& t : images[j].terms()) mat(rows.at(t.mono.exp), static_cast<Eigen::Index>(j)) = t.coeff;
  if (k == 0) return ws.front();  // x kills everything
  if (rank(mat) == static_cast<Eigen::Index>(ws.size())) return std::nullopt;
  auto v = kernel_vector(mat);
  if (!v) return std::nullopt;
  Polynomial<K> out(ws.front().ring());
  for (std::size_t j = 0; j < ws.size(); ++j)
    if (!(*v)(static_cast<Eigen::Index>(j)).is_zero()) out += ws[j] * (*v)(static_cast<Eigen::Index>(j));
  return out;
}

}  // namespace detail

/// Checks (E^n M_q :_{M_(e.n - e1 + q)} x) ∩ E_1^c1 M = E^(n - δ1) M_q over
/// the window, in M = S / (quotient elements).  Each equality is tested as
/// injectivity of v -> x v from (E_1^c1 M)/(E^(n-δ1) M_q) into
/// M_(e.n+q) / E^n M_q, all finite-dimensional here.
template <FieldScalar K>
Decision verify_superficial(const Polynomial<K>& x, const std::vector<GradedSubmodule<K>>& es,
                            const SuperficialWindow& w = {}, const std::vector<Polynomial<K>>& quotient = {}) {
  require(!es.empty(), ErrorKind::InvalidInput, "need at least one module");
  const int e1 = es.front().tdeg();
  Decision dec;
  dec.q_max = w.q_max;
  dec.n_max = w.c1_max + 1 + w.n1_span;
  if (x.is_zero()) {
    dec.verdict = Verdict::False;
    dec.counterexample = "everything (x = 0)";
    return dec;
  }
  auto b = bidegree(x);
  require(b.tdeg && *b.tdeg == e1, ErrorKind::InvalidDegree, "candidate must have the t-degree of the first module");
  for (const auto& e : es) mprimary_check(e);

  const std::size_t k = es.size();
  PowerMemo<K> memo(es);

  for (int c1 = w.c1_min; c1 <= w.c1_max; ++c1) {
    dec.c1 = c1;
    bool ok = true;
    // odometer over n1 in [c1+1, c1+1+span], the rest in [0, n_other_max], q in [0, q_max]
    std::vector<int> lo(k + 1, 0), hi(k + 1, w.n_other_max);
    lo[0] = c1 + 1;
    hi[0] = c1 + 1 + w.n1_span;
    hi[k] = w.q_max;
    std::vector<int> cur = lo;
    for (bool more = true; more && ok;) {
      std::vector<int> nv(cur.begin(), cur.begin() + static_cast<std::ptrdiff_t>(k));
      int q = cur[k];
      auto a_gens = detail::slice_generators(memo, nv, q, quotient);
      auto nm = nv;
      nm[0] -= 1;
      auto c_gens = detail::slice_generators(memo, nm, q, quotient);
      const int dsl = c_gens.tdeg();
      auto b_gens = times_slice(memo.get(0, c1).generators(), dsl - c1 * e1);

      auto a_basis = buchberger(a_gens);
      auto c_basis = buchberger(c_gens);
      auto ws = detail::image_in_quotient(b_gens.gens(), c_basis);
      if (auto v = detail::multiplication_kernel(x, ws, a_basis)) {
        ok = false;
        dec.counterexample = to_string(*v);
        dec.counterexample_n = nv[0];
      }
      std::size_t pos = 0;
      while (pos <= k && ++cur[pos] > hi[pos]) cur[pos] = lo[pos], ++pos;
      more = pos <= k;
    }
    if (ok) {
      dec.verdict = Verdict::True;
      dec.counterexample.reset();
      dec.counterexample_n.reset();
      return dec;
    }
  }
  dec.verdict = Verdict::InconclusiveWithinWindow;
  return dec;
}

// ---------------------------------------------------------------------------
// Reductions

namespace detail {

/// First generator of `target` outside span(have), if any.
template <FieldScalar K>
std::optional<Polynomial<K>> first_missing(const std::vector<Polynomial<K>>& target, const GroebnerBasis<K>& have) {
  for (const auto& g : target)
    if (!contains(have, g)) return g;
  return std::nullopt;
}

}  // namespace detail

/// Searches n = 1..n_max for E^(n+1) = U E^n.  One success is enough: the
/// equality propagates by multiplying with E.
template <FieldScalar K>
Decision is_reduction(const GradedSubmodule<K>& u, const GradedSubmodule<K>& e, int n_max = 6) {
  require(u.tdeg() == e.tdeg(), ErrorKind::InvalidInput, "U and E live in different t-degrees");
  for (const auto& g : u.generators().gens())
    require(e.contains(g), ErrorKind::NotSubmodule, "U is not contained in E: " + to_string(g));
  Decision dec;
  dec.n_max = n_max;
  PowerMemo<K> memo({e});
  auto holds_at = [&](int n) -> std::optional<Polynomial<K>> {
    auto lhs = product(u, memo.get(0, n));
    return detail::first_missing(memo.get(0, n + 1).basis().elements(), lhs.basis());
  };
  for (int n = 1; n <= n_max; ++n) {
    auto miss = holds_at(n);
    if (!miss) {
      require(!holds_at(n + 1), ErrorKind::Internal, "reduction equality failed to propagate");
      dec.verdict = Verdict::True;
      dec.n0 = n;
      dec.counterexample.reset();
      dec.counterexample_n.reset();
      return dec;
    }
    dec.counterexample = to_string(*miss);
    dec.counterexample_n = n;
  }
  dec.verdict = Verdict::InconclusiveWithinWindow;
  return dec;
}

/// Searches n = 1..n_max for
///   [Σ x_i Π_(j≠i) E_j] (E_1⋯E_k)^(n-1) T_q = (E_1⋯E_k)^n T_q,  q = 0..q_max.
template <FieldScalar K>
Decision is_joint_reduction(const std::vector<Polynomial<K>>& xs, const std::vector<GradedSubmodule<K>>& es,
                            int n_max = 6, int q_max = 2) {
  require(!es.empty() && xs.size() == es.size(), ErrorKind::InvalidInput, "need one element per module");
  for (std::size_t i = 0; i < xs.size(); ++i)
    require(es[i].contains(xs[i]), ErrorKind::NotMember,
            "element " + std::to_string(i + 1) + " is not in its module: " + to_string(xs[i]));
  const std::size_t k = es.size();
  const auto& r = es.front().ring();
  Decision dec;
  dec.n_max = n_max;
  dec.q_max = q_max;

  GradedSubmodule<K> all = es.front();
  for (std::size_t i = 1; i < k; ++i) all = product(all, es[i]);
  std::vector<std::optional<GradedSubmodule<K>>> others(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      if (j == i) continue;
      others[i] = others[i] ? product(*others[i], es[j]) : es[j];
    }
  PowerMemo<K> memo({all});

  auto holds_at = [&](int n) -> std::optional<Polynomial<K>> {
    for (int q = 0; q <= q_max; ++q) {
      std::vector<Polynomial<K>> jg;
      int target_deg = all.tdeg() * n + q;
      for (std::size_t i = 0; i < k; ++i) {
        std::optional<GradedSubmodule<K>> rest = others[i];
        if (n > 1) rest = rest ? product(*rest, memo.get(0, n - 1)) : memo.get(0, n - 1);
        std::vector<Polynomial<K>> base;
        if (rest)
          base = rest->compact_generators();
        else
          base.push_back(Polynomial<K>::constant(r, 1));
        for (const auto& g : base)
          for (const auto& mu : t_monomials(r, q)) jg.push_back((xs[i] * g).times_monomial(mu));
      }
      auto jb = buchberger(GeneratorSet<K>(r, target_deg, std::move(jg)));
      auto target = times_slice(memo.get(0, n).generators(), q);
      if (auto miss = detail::first_missing(target.gens(), jb)) return miss;
    }
    return std::nullopt;
  };
  for (int n = 1; n <= n_max; ++n) {
    auto miss = holds_at(n);
    if (!miss) {
      require(!holds_at(n + 1), ErrorKind::Internal, "joint reduction equality failed to propagate");
      dec.verdict = Verdict::True;
      dec.n0 = n;
      dec.counterexample.reset();
      dec.counterexample_n.reset();
      return dec;
    }
    dec.counterexample = to_string(*miss);
    dec.counterexample_n = n;
  }
  dec.verdict = Verdict::InconclusiveWithinWindow;
  return dec;
}

/// The submodule generated by `xs` (all of one t-degree).
template <FieldScalar K>
GradedSubmodule<K> span_of(const std::vector<Polynomial<K>>& xs) {
  require(!xs.empty(), ErrorKind::InvalidInput, "need at least one element");
  auto b = bidegree(xs.front());
  require(b.tdeg.has_value(), ErrorKind::InvalidInput, "element is not t-homogeneous");
  return GradedSubmodule<K>(GeneratorSet<K>(xs.front().ring(), *b.tdeg, xs));
}

/// E_i = (x_i) + m^n F^e; (x_1..x_k) must be m-primary.
template <FieldScalar K>
Decision mn_joint_reduction_witness(const std::vector<Polynomial<K>>& xs, int n, int n_max = 6) {
  auto x = span_of(xs);
  mprimary_check(x);
  std::vector<GradedSubmodule<K>> es;
  for (const auto& xi : xs) {
    auto mpow = maximal_power_slice<K>(x.ring(), n, x.tdeg());
    es.emplace_back(sum(GeneratorSet<K>(x.ring(), x.tdeg(), {xi}), mpow));
  }
  return is_joint_reduction(xs, es, n_max);
}

// ---------------------------------------------------------------------------
// Theorem checkers

template <FieldScalar K>
struct CriterionReport {
  MultiplicityResult lhs;
  MultiplicityResult rhs;
  bool heights_ok = false;
  bool radical_ok = false;
  Decision decision;
  bool consistent = false;
  /// elements used on the left side (sampled for Risler-Teissier)
  std::vector<Polynomial<K>> elements;
  std::optional<std::uint64_t> seed;
  int attempts = 0;
};

/// U ⊆ E is a reduction exactly when ebr(U) = ebr(E).
template <FieldScalar K>
CriterionReport<K> rees_equivalence_check(const GradedSubmodule<K>& u, const GradedSubmodule<K>& e, int n_max = 6,
                                          const ExtractOptions& opts = {}) {
  require(u.tdeg() == 1 && e.tdeg() == 1, ErrorKind::InvalidDegree, "Rees check needs submodules of F");
  CriterionReport<K> rep;
  mprimary_check(u);
  mprimary_check(e);
  rep.radical_ok = rep.heights_ok = true;
  rep.decision = is_reduction(u, e, n_max);
  rep.lhs = ebr(u, opts);
  rep.rhs = ebr(e, opts);
  rep.elements = u.generators().gens();
  rep.consistent = (rep.lhs.value == rep.rhs.value) == (rep.decision.verdict == Verdict::True);
  return rep;
}

/// Converse of Rees' mixed multiplicity theorem in the m-primary case with
/// k = d + p - 1 and type (1, ..., 1).
template <FieldScalar K>
CriterionReport<K> converse_criterion(const std::vector<Polynomial<K>>& xs, const std::vector<GradedSubmodule<K>>& es,
                                      int n_max = 6, const ExtractOptions& opts = {}) {
  require(!es.empty() && xs.size() == es.size(), ErrorKind::InvalidInput, "need one element per module");
  const auto& r = es.front().ring();
  const int dim = r.nx + r.nt - 1;
  require(static_cast<int>(es.size()) == dim, ErrorKind::NotDeskCase,
          "needs k = d + p - 1 = " + std::to_string(dim) + " modules, got " + std::to_string(es.size()));
  for (const auto& e : es) require(e.tdeg() == 1, ErrorKind::NotDeskCase, "modules must be submodules of F");
  CriterionReport<K> rep;
  rep.heights_ok = true;
  auto x = span_of(xs);
  try {
    mprimary_check(x);
    for (const auto& e : es) mprimary_check(e);
  } catch (const Error& err) {
    if (err.kind() == ErrorKind::InfiniteColength || err.kind() == ErrorKind::SupportOffOrigin)
      fail(ErrorKind::NotDeskCase, std::string("primarity gate failed: ") + err.what());
    throw;
  }
  rep.radical_ok = true;
  rep.decision = is_joint_reduction(xs, es, n_max);
  rep.lhs = ebr(x, opts);
  rep.rhs = mixed(es, std::vector<int>(es.size(), 1), opts);
  rep.elements = xs;
  rep.consistent = (rep.lhs.value == rep.rhs.value) == (rep.decision.verdict == Verdict::True);
  return rep;
}

struct RislerTeissierOptions {
  int attempts = 5;
  SuperficialWindow window{};
  ExtractOptions extract{};
};

/// Samples a superficial sequence for (E_1^[d_1], ..., E_k^[d_k]), each
/// element verified against the modules still to come modulo the earlier
/// elements, and compares mixed(Es, dvec) with ebr of the sequence.
template <FieldScalar K>
CriterionReport<K> risler_teissier_check(const std::vector<GradedSubmodule<K>>& es, const std::vector<int>& dvec,
                                         std::uint64_t seed, const RislerTeissierOptions& opts = {}) {
  check_type(es, dvec, 0);
  for (const auto& e : es) require(e.tdeg() == 1, ErrorKind::InvalidDegree, "modules must be submodules of F");
  std::vector<std::size_t> list;
  for (std::size_t i = 0; i < es.size(); ++i)
    for (int k = 0; k < dvec[i]; ++k) list.push_back(i);

  CriterionReport<K> rep;
  rep.heights_ok = rep.radical_ok = true;
  for (const auto& e : es) mprimary_check(e);
  rep.rhs = mixed(es, dvec, opts.extract);

  for (int attempt = 0; attempt < opts.attempts; ++attempt) {
    std::uint64_t s = seed + static_cast<std::uint64_t>(attempt);
    std::vector<Polynomial<K>> xs;
    Decision last;
    bool good = true;
    for (std::size_t pos = 0; pos < list.size() && good; ++pos) {
      std::vector<GradedSubmodule<K>> rest{es[list[pos]]};
      std::vector<bool> seen(es.size(), false);
      seen[list[pos]] = true;
      for (std::size_t p2 = pos + 1; p2 < list.size(); ++p2)
        if (!seen[list[p2]]) {
          seen[list[p2]] = true;
          rest.push_back(es[list[p2]]);
        }
      auto cand = sample_superficial(rest, s * 1000003ULL + pos);
      last = verify_superficial(cand.element, rest, opts.window, xs);
      if (last.verdict != Verdict::True) good = false;
      xs.push_back(cand.element);
    }
    rep.attempts = attempt + 1;
    if (!good) continue;
    auto x = span_of(xs);
    try {
      mprimary_check(x);
    } catch (const Error& err) {
      if (err.kind() == ErrorKind::InfiniteColength || err.kind() == ErrorKind::SupportOffOrigin) continue;
      throw;
    }
    rep.lhs = ebr(x, opts.extract);
    rep.elements = xs;
    rep.seed = s;
    rep.decision = last;
    rep.consistent = rep.lhs.value == rep.rhs.value;
    return rep;
  }
  fail(ErrorKind::SuperficialSamplingFailed,
       "no verified superficial sequence after " + std::to_string(opts.attempts) + " seeds");
}

}  // namespace brim

#endif  // BRIM_JOINTRED_HPP
