#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dops/errors.hpp"
#include "dops/polynomial.hpp"
#include "dops/scalar.hpp"

namespace dops {

/// Linear functional on polynomials, known through its moments
/// <u, x^k> for k = 0..horizon.
template <ExactScalar Scalar>
class MomentFunctional {
 public:
  explicit MomentFunctional(std::vector<Scalar> moments) : moments_(std::move(moments)) {
    if (moments_.empty()) throw BadShape("a moment functional needs at least one moment");
  }

  /// Moments a^k of the Dirac functional q -> q(a).
  static MomentFunctional dirac(const Scalar& a, Index horizon) {
    std::vector<Scalar> m(static_cast<std::size_t>(horizon + 1));
    Scalar power(1);
    for (auto& x : m) {
      x = power;
      power *= a;
    }
    return MomentFunctional(std::move(m));
  }

  Index horizon() const { return static_cast<Index>(moments_.size()) - 1; }
  const Scalar& moment(Index k) const { return moments_.at(static_cast<std::size_t>(k)); }
  const std::vector<Scalar>& moments() const { return moments_; }

  MomentFunctional truncated(Index horizon) const {
    if (horizon > this->horizon()) throw HorizonExceeded(horizon, this->horizon());
    return MomentFunctional(std::vector<Scalar>(moments_.begin(), moments_.begin() + horizon + 1));
  }

  friend bool operator==(const MomentFunctional&, const MomentFunctional&) = default;

 private:
  std::vector<Scalar> moments_;
};

/// <u, x^shift * p>
template <ExactScalar Scalar>
Scalar pair_shifted(const MomentFunctional<Scalar>& u, const Polynomial<Scalar>& p, Index shift) {
  if (p.degree() + shift > u.horizon()) throw HorizonExceeded(p.degree() + shift, u.horizon());
  Scalar acc(0);
  const auto& c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] != Scalar(0)) acc += c[k] * u.moment(static_cast<Index>(k) + shift);
  }
  return acc;
}

template <ExactScalar Scalar>
Scalar pair(const MomentFunctional<Scalar>& u, const Polynomial<Scalar>& p) {
  return pair_shifted(u, p, 0);
}

/// (x - a) u, defined by <(x - a) u, p> = <u, (x - a) p>. Loses one moment.
template <ExactScalar Scalar>
MomentFunctional<Scalar> multiply_by_x_minus_a(const MomentFunctional<Scalar>& u, const Scalar& a) {
  if (u.horizon() < 1) throw HorizonExceeded(1, u.horizon());
  std::vector<Scalar> out(static_cast<std::size_t>(u.horizon()));
  for (Index k = 0; k < u.horizon(); ++k) out[static_cast<std::size_t>(k)] = u.moment(k + 1) - a * u.moment(k);
  return MomentFunctional<Scalar>(std::move(out));
}

/// u / (x - a) + M delta_a, where <u / (x - a), p> = <u, (p(x) - p(a)) / (x - a)>.
/// The result v has v_0 = M and v_k = a v_{k-1} + u_{k-1}; it gains one
/// moment and (x - a) v = u exactly.
template <ExactScalar Scalar>
MomentFunctional<Scalar> geronimus_divide(const MomentFunctional<Scalar>& u, const Scalar& a, const Scalar& mass) {
  std::vector<Scalar> out(static_cast<std::size_t>(u.horizon() + 2));
  out[0] = mass;
  for (Index k = 1; k <= u.horizon() + 1; ++k) {
    out[static_cast<std::size_t>(k)] = a * out[static_cast<std::size_t>(k - 1)] + u.moment(k - 1);
  }
  return MomentFunctional<Scalar>(std::move(out));
}

/// Ordered d-tuple (u_1, ..., u_d). Entries may carry different horizons
/// after a Geronimus step; `horizon()` is the smallest.
template <ExactScalar Scalar>
class FunctionalVector {
 public:
  explicit FunctionalVector(std::vector<MomentFunctional<Scalar>> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw BadShape("a functional vector needs d >= 1 entries");
  }

  Index d() const { return static_cast<Index>(entries_.size()); }

  /// 1-based, u_1..u_d.
  const MomentFunctional<Scalar>& operator()(Index j) const {
    if (j < 1 || j > d()) throw BadShape("functional index " + std::to_string(j) + " out of 1.." + std::to_string(d()));
    return entries_[static_cast<std::size_t>(j - 1)];
  }

  const std::vector<MomentFunctional<Scalar>>& entries() const { return entries_; }

  Index horizon() const {
    Index h = entries_.front().horizon();
    for (const auto& u : entries_) h = std::min(h, u.horizon());
    return h;
  }

  friend bool operator==(const FunctionalVector&, const FunctionalVector&) = default;

 private:
  std::vector<MomentFunctional<Scalar>> entries_;
};

/// v_j = u_j + sum_{i<j} lambda(j,i) u_i with lambda a unit lower
/// triangular d x d array (row j, column i, zero-based storage).
template <ExactScalar Scalar>
FunctionalVector<Scalar> recombine_vector(const FunctionalVector<Scalar>& v, const DenseMatrix<Scalar>& lambda) {
  const Index d = v.d();
  if (lambda.rows() != d || lambda.cols() != d) throw BadShape("recombination array must be d x d");
  for (Index j = 0; j < d; ++j) {
    if (lambda(j, j) != Scalar(1)) throw BadShape("recombination array must have a unit diagonal");
    for (Index i = j + 1; i < d; ++i) {
      if (lambda(j, i) != Scalar(0)) throw BadShape("recombination array must be lower triangular");
    }
  }
  std::vector<MomentFunctional<Scalar>> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Index j = 0; j < d; ++j) {
    Index horizon = v(j + 1).horizon();
    for (Index i = 0; i < j; ++i) {
      if (lambda(j, i) != Scalar(0)) horizon = std::min(horizon, v(i + 1).horizon());
    }
    std::vector<Scalar> m(static_cast<std::size_t>(horizon + 1));
    for (Index k = 0; k <= horizon; ++k) {
      Scalar acc = v(j + 1).moment(k);
      for (Index i = 0; i < j; ++i) {
        if (lambda(j, i) != Scalar(0)) acc += lambda(j, i) * v(i + 1).moment(k);
      }
      m[static_cast<std::size_t>(k)] = acc;
    }
    out.emplace_back(std::move(m));
  }
  return FunctionalVector<Scalar>(std::move(out));
}

}  // namespace dops
