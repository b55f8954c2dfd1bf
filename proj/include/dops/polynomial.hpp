#pragma once

#include <algorithm>
#include <initializer_list>
#include <utility>
#include <vector>

#include "dops/errors.hpp"
#include "dops/scalar.hpp"

namespace dops {

/// Dense univariate polynomial; coefficient k multiplies x^k. The zero
/// polynomial has no coefficients, otherwise the last one is nonzero.
template <ExactScalar Scalar>
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(std::vector<Scalar> coefficients) : coefficients_(std::move(coefficients)) {
    trim();
  }
  Polynomial(std::initializer_list<Scalar> coefficients) : coefficients_(coefficients) { trim(); }

  static Polynomial constant(const Scalar& c) { return Polynomial(std::vector<Scalar>{c}); }

  static Polynomial monomial(Index k) {
    std::vector<Scalar> c(static_cast<std::size_t>(k + 1), Scalar(0));
    c.back() = Scalar(1);
    return Polynomial(std::move(c));
  }

  /// x - a
  static Polynomial linear_factor(const Scalar& a) { return Polynomial({-a, Scalar(1)}); }

  /// -1 for the zero polynomial.
  Index degree() const { return static_cast<Index>(coefficients_.size()) - 1; }
  bool is_zero() const { return coefficients_.empty(); }
  bool is_monic() const { return !is_zero() && coefficients_.back() == Scalar(1); }

  const std::vector<Scalar>& coefficients() const { return coefficients_; }

  Scalar coeff(Index k) const {
    return k >= 0 && k <= degree() ? coefficients_[static_cast<std::size_t>(k)] : Scalar(0);
  }

  const Scalar& leading() const {
    if (is_zero()) throw BadShape("zero polynomial has no leading coefficient");
    return coefficients_.back();
  }

  /// Horner evaluation.
  Scalar operator()(const Scalar& x) const {
    Scalar acc(0);
    for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  Polynomial& operator+=(const Polynomial& other) {
    if (other.coefficients_.size() > coefficients_.size()) {
      coefficients_.resize(other.coefficients_.size(), Scalar(0));
    }
    for (std::size_t k = 0; k < other.coefficients_.size(); ++k) coefficients_[k] += other.coefficients_[k];
    trim();
    return *this;
  }

  Polynomial& operator-=(const Polynomial& other) {
    if (other.coefficients_.size() > coefficients_.size()) {
      coefficients_.resize(other.coefficients_.size(), Scalar(0));
    }
    for (std::size_t k = 0; k < other.coefficients_.size(); ++k) coefficients_[k] -= other.coefficients_[k];
    trim();
    return *this;
  }

  Polynomial& operator*=(const Scalar& c) {
    for (auto& x : coefficients_) x *= c;
    trim();
    return *this;
  }

  /// In-place p <- p - c * q, the elimination step of every basis change.
  void subtract_scaled(const Scalar& c, const Polynomial& q) {
    if (c == Scalar(0)) return;
    if (q.coefficients_.size() > coefficients_.size()) {
      coefficients_.resize(q.coefficients_.size(), Scalar(0));
    }
    for (std::size_t k = 0; k < q.coefficients_.size(); ++k) coefficients_[k] -= c * q.coefficients_[k];
    trim();
  }

  friend Polynomial operator+(Polynomial lhs, const Polynomial& rhs) { return lhs += rhs; }
  friend Polynomial operator-(Polynomial lhs, const Polynomial& rhs) { return lhs -= rhs; }
  friend Polynomial operator*(Polynomial p, const Scalar& c) { return p *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial p) { return p *= c; }
  friend Polynomial operator-(Polynomial p) { return p *= Scalar(-1); }

  friend Polynomial operator*(const Polynomial& lhs, const Polynomial& rhs) {
    if (lhs.is_zero() || rhs.is_zero()) return {};
    std::vector<Scalar> out(lhs.coefficients_.size() + rhs.coefficients_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < lhs.coefficients_.size(); ++i) {
      if (lhs.coefficients_[i] == Scalar(0)) continue;
      for (std::size_t j = 0; j < rhs.coefficients_.size(); ++j) {
        out[i + j] += lhs.coefficients_[i] * rhs.coefficients_[j];
      }
    }
    return Polynomial(std::move(out));
  }

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void trim() {
    while (!coefficients_.empty() && coefficients_.back() == Scalar(0)) coefficients_.pop_back();
  }

  std::vector<Scalar> coefficients_;
};

template <ExactScalar Scalar>
Scalar poly_eval(const Polynomial<Scalar>& p, const Scalar& a) {
  return p(a);
}

/// x * p
template <ExactScalar Scalar>
Polynomial<Scalar> multiply_by_x(const Polynomial<Scalar>& p) {
  if (p.is_zero()) return p;
  std::vector<Scalar> c;
  c.reserve(p.coefficients().size() + 1);
  c.push_back(Scalar(0));
  c.insert(c.end(), p.coefficients().begin(), p.coefficients().end());
  return Polynomial<Scalar>(std::move(c));
}

/// Coefficients of q in a monic basis {B_0, B_1, ...} with deg B_k = k,
/// found by eliminating leading terms from the top down.
template <ExactScalar Scalar>
std::vector<Scalar> expand_in_basis(Polynomial<Scalar> q, const std::vector<Polynomial<Scalar>>& basis) {
  const Index deg = q.degree();
  if (deg >= static_cast<Index>(basis.size())) {
    throw BadShape("basis of size " + std::to_string(basis.size()) + " cannot expand degree " +
                   std::to_string(deg));
  }
  std::vector<Scalar> out(static_cast<std::size_t>(std::max<Index>(deg + 1, 0)), Scalar(0));
  for (Index k = deg; k >= 0; --k) {
    const auto& b = basis[static_cast<std::size_t>(k)];
    if (b.degree() != k || !b.is_monic()) throw BadShape("basis element " + std::to_string(k) + " is not monic of its index degree");
    const Scalar c = q.coeff(k);
    out[static_cast<std::size_t>(k)] = c;
    q.subtract_scaled(c, b);
  }
  return out;
}

}  // namespace dops
