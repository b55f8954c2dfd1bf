#pragma once

#include <optional>
#include <utility>

#include "dops/errors.hpp"
#include "dops/scalar.hpp"

namespace dops {

/// Determinant by fraction-free (Bareiss) elimination. Row swaps on zero
/// pivots; every division is exact.
template <ExactScalar Scalar>
Scalar bareiss_determinant(DenseMatrix<Scalar> m) {
  if (m.rows() != m.cols()) throw BadShape("determinant of a non-square matrix");
  const Index n = m.rows();
  if (n == 0) return Scalar(1);
  Scalar previous(1);
  bool negate = false;
  for (Index k = 0; k + 1 < n; ++k) {
    if (m(k, k) == Scalar(0)) {
      Index pivot = k + 1;
      while (pivot < n && m(pivot, k) == Scalar(0)) ++pivot;
      if (pivot == n) return Scalar(0);
      m.row(k).swap(m.row(pivot));
      negate = !negate;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
      m(i, k) = Scalar(0);
    }
    previous = m(k, k);
  }
  return negate ? Scalar(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

/// Solves a x = b by Gaussian elimination; nullopt when a is singular.
template <ExactScalar Scalar>
std::optional<DenseVector<Scalar>> solve_exact(DenseMatrix<Scalar> a, DenseVector<Scalar> b) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n) throw BadShape("solve_exact needs a square system");
  for (Index k = 0; k < n; ++k) {
    Index pivot = k;
    while (pivot < n && a(pivot, k) == Scalar(0)) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) {
      a.row(k).swap(a.row(pivot));
      std::swap(b(k), b(pivot));
    }
    const Scalar inv = Scalar(1) / a(k, k);
    for (Index i = k + 1; i < n; ++i) {
      if (a(i, k) == Scalar(0)) continue;
      const Scalar factor = a(i, k) * inv;
      for (Index j = k; j < n; ++j) a(i, j) -= factor * a(k, j);
      b(i) -= factor * b(k);
    }
  }
  DenseVector<Scalar> x(n);
  for (Index i = n - 1; i >= 0; --i) {
    Scalar acc = b(i);
    for (Index j = i + 1; j < n; ++j) acc -= a(i, j) * x(j);
    x(i) = acc / a(i, i);
  }
  return x;
}

}  // namespace dops
