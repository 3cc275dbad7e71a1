#ifndef BRIM_LINALG_HPP
#define BRIM_LINALG_HPP

#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "brim/scalar.hpp"

namespace brim {

template <FieldScalar K>
using Matrix = Eigen::Matrix<K, Eigen::Dynamic, Eigen::Dynamic>;
template <FieldScalar K>
using Vector = Eigen::Matrix<K, Eigen::Dynamic, 1>;

template <FieldScalar K>
bool all_zero(const Matrix<K>& a) {
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      if (!a(i, j).is_zero()) return false;
  return true;
}

/// Plain triple loop; keeps the arithmetic inside the scalar type's own
/// operators.
template <FieldScalar K>
Matrix<K> multiply(const Matrix<K>& a, const Matrix<K>& b) {
  Matrix<K> c = Matrix<K>::Constant(a.rows(), b.cols(), K(0));
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      if (a(i, k).is_zero()) continue;
      for (Eigen::Index j = 0; j < b.cols(); ++j)
        if (!b(k, j).is_zero()) c(i, j) = c(i, j) + a(i, k) * b(k, j);
    }
  return c;
}

/// Rank by fraction-free (Bareiss) elimination.  Over Q each row is first
/// scaled to integer entries so every intermediate stays an integer minor.
template <FieldScalar K>
Eigen::Index rank(Matrix<K> a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  for (Eigen::Index i = 0; i < m; ++i) {
    K s(1);
    for (Eigen::Index j = 0; j < n; ++j) {
      K d = scalar_traits<K>::denominator(a(i, j));
      if (!(d == K(1))) s = s * d;
    }
    if (!(s == K(1)))
      for (Eigen::Index j = 0; j < n; ++j) a(i, j) = a(i, j) * s;
  }
  K prev(1);
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < m; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    const K p = a(r, c);
    for (Eigen::Index i = r + 1; i < m; ++i) {
      const K f = a(i, c);
      for (Eigen::Index j = c + 1; j < n; ++j) {
        K v = p * a(i, j);
        if (!f.is_zero()) v = v - f * a(r, j);
        a(i, j) = v / prev;
      }
      a(i, c) = K(0);
    }
    prev = p;
    ++r;
  }
  return r;
}

/// Reduced row echelon form over the field; returns the pivot columns.
template <FieldScalar K>
std::vector<Eigen::Index> rref(Matrix<K>& a) {
  const Eigen::Index m = a.rows(), n = a.cols();
  std::vector<Eigen::Index> pivots;
  Eigen::Index r = 0;
  for (Eigen::Index c = 0; c < n && r < m; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index i = r; i < m; ++i)
      if (!a(i, c).is_zero()) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != r) a.row(piv).swap(a.row(r));
    K inv = a(r, c).inverse();
    for (Eigen::Index j = c; j < n; ++j) a(r, j) = a(r, j) * inv;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (i == r || a(i, c).is_zero()) continue;
      K f = a(i, c);
      for (Eigen::Index j = c; j < n; ++j)
        if (!a(r, j).is_zero()) a(i, j) = a(i, j) - f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Some nonzero v with a v = 0, if the columns are dependent.
template <FieldScalar K>
std::optional<Vector<K>> kernel_vector(Matrix<K> a) {
  auto pivots = rref(a);
  const Eigen::Index n = a.cols();
  std::vector<bool> is_pivot(static_cast<std::size_t>(n), false);
  for (auto c : pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  for (Eigen::Index free = 0; free < n; ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    Vector<K> v = Vector<K>::Constant(n, K(0));
    v(free) = K(1);
    for (std::size_t k = 0; k < pivots.size(); ++k) v(pivots[k]) = -a(static_cast<Eigen::Index>(k), free);
    return v;
  }
  return std::nullopt;
}

}  // namespace brim

#endif  // BRIM_LINALG_HPP
