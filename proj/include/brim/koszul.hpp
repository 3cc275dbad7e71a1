#ifndef BRIM_KOSZUL_HPP
#define BRIM_KOSZUL_HPP

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "brim/groebner.hpp"
#include "brim/linalg.hpp"

namespace brim {

/// Bihomogeneous elements a_1..a_m of S with t-degrees k_i and x-degrees g_i.
template <FieldScalar K>
class KoszulSpec {
 public:
  KoszulSpec() = default;
  explicit KoszulSpec(std::vector<Polynomial<K>> elems) : elems_(std::move(elems)) {
    require(!elems_.empty(), ErrorKind::InvalidInput, "Koszul complex needs at least one element");
    ring_ = elems_.front().ring();
    for (const auto& a : elems_) {
      a.check_layout(ring_);
      require(!a.is_zero(), ErrorKind::InvalidInput, "Koszul element is zero");
      auto b = bidegree(a);
      require(b.xdeg && b.tdeg, ErrorKind::InvalidInput, "Koszul element is not bihomogeneous");
      tdegs_.push_back(*b.tdeg);
      xdegs_.push_back(*b.xdeg);
    }
  }

  const PolyRing& ring() const { return ring_; }
  int m() const { return static_cast<int>(elems_.size()); }
  const std::vector<Polynomial<K>>& elems() const { return elems_; }
  int tdeg(int i) const { return tdegs_[static_cast<std::size_t>(i)]; }
  int xdeg(int i) const { return xdegs_[static_cast<std::size_t>(i)]; }
  int tdeg_sum() const {
    int s = 0;
    for (int k : tdegs_) s += k;
    return s;
  }
  int xdeg_sum() const {
    int s = 0;
    for (int g : xdegs_) s += g;
    return s;
  }

 private:
  PolyRing ring_{};
  std::vector<Polynomial<K>> elems_;
  std::vector<int> tdegs_, xdegs_;
};

namespace detail {

/// i-element subsets of {0..m-1}, lexicographic.
inline std::vector<std::vector<int>> subsets(int m, int i) {
  std::vector<std::vector<int>> out;
  if (i < 0 || i > m) return out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == i) {
      out.push_back(cur);
      return;
    }
    for (int k = start; k < m; ++k) {
      cur.push_back(k);
      self(self, k + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

/// Monomials of bidegree (dt, dx); empty if either is negative.
inline std::vector<Monomial> bidegree_monomials(const PolyRing& r, int dt, int dx) {
  std::vector<Monomial> out;
  if (dt < 0 || dx < 0) return out;
  for (const auto& mu : t_monomials(r, dt))
    for (const auto& xm : x_monomials(r, dx)) out.push_back(mu * xm);
  return out;
}

struct MonoKey {
  std::size_t subset;
  Monomial mono;
  bool operator<(const MonoKey& o) const { return subset != o.subset ? subset < o.subset : mono.exp < o.mono.exp; }
};

template <FieldScalar K>
struct ChainBasis {
  std::vector<std::vector<int>> subsets;
  std::vector<MonoKey> elems;
  std::map<MonoKey, Eigen::Index> index;
};

template <FieldScalar K>
ChainBasis<K> chain_basis(const KoszulSpec<K>& s, int i, int t, int delta) {
  ChainBasis<K> b;
  b.subsets = subsets(s.m(), i);
  for (std::size_t k = 0; k < b.subsets.size(); ++k) {
    int kt = 0, kx = 0;
    for (int j : b.subsets[k]) {
      kt += s.tdeg(j);
      kx += s.xdeg(j);
    }
    for (const auto& mono : bidegree_monomials(s.ring(), t - kt, delta - kx)) {
      b.index[{k, mono}] = static_cast<Eigen::Index>(b.elems.size());
      b.elems.push_back({k, mono});
    }
  }
  return b;
}

}  // namespace detail

/// dim_k of K_i in bidegree (t, delta).
template <FieldScalar K>
long long chain_dim(const KoszulSpec<K>& s, int i, int t, int delta) {
  long long total = 0;
  for (const auto& sub : detail::subsets(s.m(), i)) {
    int kt = 0, kx = 0;
    for (int j : sub) {
      kt += s.tdeg(j);
      kx += s.xdeg(j);
    }
    total += count_bidegree(s.ring(), t - kt, delta - kx);
  }
  return total;
}

/// Matrix of d_i : K_i -> K_(i-1) on the (t, delta) slice.
template <FieldScalar K>
Matrix<K> boundary_matrix(const KoszulSpec<K>& s, int i, int t, int delta) {
  auto src = detail::chain_basis(s, i, t, delta);
  auto dst = detail::chain_basis(s, i - 1, t, delta);
  Matrix<K> d = Matrix<K>::Constant(static_cast<Eigen::Index>(dst.elems.size()),
                                    static_cast<Eigen::Index>(src.elems.size()), K(0));
  std::map<std::vector<int>, std::size_t> dst_subset;
  for (std::size_t k = 0; k < dst.subsets.size(); ++k) dst_subset[dst.subsets[k]] = k;
  for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(src.elems.size()); ++c) {
    const auto& key = src.elems[static_cast<std::size_t>(c)];
    const auto& sub = src.subsets[key.subset];
    for (std::size_t pos = 0; pos < sub.size(); ++pos) {
      std::vector<int> rest = sub;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
      std::size_t target = dst_subset.at(rest);
      bool negative = pos % 2 == 1;
      for (const auto& term : s.elems()[static_cast<std::size_t>(sub[pos])].terms()) {
        Eigen::Index row = dst.index.at({target, term.mono * key.mono});
        d(row, c) = negative ? d(row, c) - term.coeff : d(row, c) + term.coeff;
      }
    }
  }
  return d;
}

struct SliceHomology {
  int delta = 0;
  std::vector<long long> chain;     ///< dim K_i, i = 0..m
  std::vector<long long> homology;  ///< dim H_i, i = 0..m
};

/// Dimensions of every H_i on one (t, delta) slice, with d∘d = 0 checked.
template <FieldScalar K>
SliceHomology slice_homology(const KoszulSpec<K>& s, int t, int delta) {
  const int m = s.m();
  SliceHomology out;
  out.delta = delta;
  std::vector<long long> rk(static_cast<std::size_t>(m + 2), 0);
  std::optional<Matrix<K>> prev;
  for (int i = 1; i <= m; ++i) {
    Matrix<K> d = boundary_matrix(s, i, t, delta);
    if (prev && prev->cols() > 0 && d.cols() > 0)
      require(all_zero(multiply(*prev, d)), ErrorKind::Internal, "Koszul differential does not square to zero");
    rk[static_cast<std::size_t>(i)] = d.rows() && d.cols() ? rank(d) : 0;
    prev = std::move(d);
  }
  for (int i = 0; i <= m; ++i) {
    long long c = chain_dim(s, i, t, delta);
    out.chain.push_back(c);
    out.homology.push_back(c - rk[static_cast<std::size_t>(i)] - rk[static_cast<std::size_t>(i + 1)]);
  }
  return out;
}

struct KoszulOptions {
  int delta_cap = 40;
  int width = 3;
};

struct GMultResult {
  long long value = 0;
  int t = 0;
  /// Σ(-1)^i dim K_i over the same slices.
  long long euler = 0;
  std::vector<SliceHomology> slices;
};

template <FieldScalar K>
int default_t(const KoszulSpec<K>& s) {
  return 2 * s.tdeg_sum() + s.ring().nx + s.ring().nt;
}

/// Colength of the degree-t slice of (a_1..a_m)S; NotMultiplicitySystem if infinite.
template <FieldScalar K>
ColengthReport slice_quotient(const KoszulSpec<K>& s, int t) {
  std::vector<Polynomial<K>> g;
  for (int i = 0; i < s.m(); ++i) {
    if (s.tdeg(i) > t) continue;
    for (const auto& mu : t_monomials(s.ring(), t - s.tdeg(i))) g.push_back(s.elems()[static_cast<std::size_t>(i)].times_monomial(mu));
  }
  auto rep = colength(buchberger(GeneratorSet<K>(s.ring(), t, std::move(g))));
  require(rep.finite, ErrorKind::NotMultiplicitySystem,
          "(S/(a)S)_" + std::to_string(t) + " does not have finite length");
  return rep;
}

/// All slices of K_t with nonzero homology, scanning delta upward until a
/// run of `width` slices is acyclic with vanishing Euler characteristic.
template <FieldScalar K>
std::vector<SliceHomology> homology_slices(const KoszulSpec<K>& s, int t, const KoszulOptions& opts = {}) {
  auto q = slice_quotient(s, t);
  // below this the quotient itself may still have nonzero pieces
  int floor = q.max_xdeg + s.xdeg_sum();
  std::vector<SliceHomology> out;
  int quiet = 0;
  for (int delta = 0; delta <= opts.delta_cap; ++delta) {
    auto sh = slice_homology(s, t, delta);
    bool zero = true;
    long long chi = 0;
    for (int i = 0; i <= s.m(); ++i) {
      zero = zero && sh.homology[static_cast<std::size_t>(i)] == 0;
      chi += (i % 2 ? -1 : 1) * sh.chain[static_cast<std::size_t>(i)];
    }
    quiet = zero && chi == 0 ? quiet + 1 : 0;
    out.push_back(std::move(sh));
    if (quiet >= opts.width && delta >= floor) return out;
  }
  fail(ErrorKind::NoStabilization, "Koszul homology did not vanish below x-degree " + std::to_string(opts.delta_cap));
}

template <FieldScalar K>
long long homology_dim(const KoszulSpec<K>& s, int i, int t, const KoszulOptions& opts = {}) {
  if (i < 0 || i > s.m()) return 0;
  long long total = 0;
  for (const auto& sh : homology_slices(s, t, opts)) total += sh.homology[static_cast<std::size_t>(i)];
  return total;
}

/// e_t = Σ(-1)^i l(H_i K_t); t defaults to 2 Σk_i + d + p.
template <FieldScalar K>
GMultResult g_mult_et(const KoszulSpec<K>& s, std::optional<int> t = std::nullopt, const KoszulOptions& opts = {}) {
  GMultResult res;
  res.t = t ? *t : default_t(s);
  require(res.t >= 0, ErrorKind::InvalidInput, "t must be >= 0");
  res.slices = homology_slices(s, res.t, opts);
  for (const auto& sh : res.slices)
    for (int i = 0; i <= s.m(); ++i) {
      long long sign = i % 2 ? -1 : 1;
      res.value += sign * sh.homology[static_cast<std::size_t>(i)];
      res.euler += sign * sh.chain[static_cast<std::size_t>(i)];
    }
  require(res.value == res.euler, ErrorKind::Internal, "rank path and Euler characteristic disagree");
  return res;
}

}  // namespace brim

#endif  // BRIM_KOSZUL_HPP
