#pragma once

#include <algorithm>
#include <array>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dops/errors.hpp"
#include "dops/scalar.hpp"

namespace dops {

/// Square finite section of a banded matrix with `lower` subdiagonals and
/// `upper` superdiagonals. Entry (i, j) lives at storage(i, j - i + lower).
template <ExactScalar Scalar>
class BandMatrix {
 public:
  BandMatrix() = default;
  BandMatrix(Index size, Index lower, Index upper)
      : size_(size), lower_(lower), upper_(upper), storage_(size, lower + upper + 1) {
    if (size < 0 || lower < 0 || upper < 0) throw BadShape("negative band matrix dimension");
    storage_.setZero();
  }

  Index size() const { return size_; }
  Index lower() const { return lower_; }
  Index upper() const { return upper_; }

  bool in_band(Index i, Index j) const { return j >= i - lower_ && j <= i + upper_; }

  Scalar coeff(Index i, Index j) const {
    check_index(i, j);
    return in_band(i, j) ? storage_(i, j - i + lower_) : Scalar(0);
  }

  void set(Index i, Index j, const Scalar& value) {
    check_index(i, j);
    if (!in_band(i, j)) {
      throw BadShape("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is outside the band");
    }
    storage_(i, j - i + lower_) = value;
  }

  /// Leading window x window block expanded to dense form.
  DenseMatrix<Scalar> to_dense(Index window) const {
    if (window > size_) throw WindowTooLarge(window, size_);
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(window, window);
    for (Index i = 0; i < window; ++i) {
      for (Index j = std::max<Index>(0, i - lower_); j <= std::min(window - 1, i + upper_); ++j) {
        out(i, j) = storage_(i, j - i + lower_);
      }
    }
    return out;
  }
  DenseMatrix<Scalar> to_dense() const { return to_dense(size_); }

  /// Same section with the identity's band shape subtracted: A - c I.
  BandMatrix shifted(const Scalar& c) const {
    BandMatrix out = *this;
    for (Index i = 0; i < size_; ++i) out.storage_(i, lower_) -= c;
    return out;
  }

  friend bool operator==(const BandMatrix& a, const BandMatrix& b) {
    return a.size_ == b.size_ && a.lower_ == b.lower_ && a.upper_ == b.upper_ && a.storage_ == b.storage_;
  }

 private:
  void check_index(Index i, Index j) const {
    if (i < 0 || j < 0 || i >= size_ || j >= size_) {
      throw BadShape("index (" + std::to_string(i) + ", " + std::to_string(j) +
                     ") outside a section of size " + std::to_string(size_));
    }
  }

  Index size_ = 0;
  Index lower_ = 0;
  Index upper_ = 0;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> storage_;
};

/// Product of two stored sections, band by band. Only entries whose
/// summation range stays inside both sections agree with the infinite
/// product; `banded_multiply` and `chain_product` enforce that window.
template <ExactScalar Scalar>
BandMatrix<Scalar> section_product(const BandMatrix<Scalar>& a, const BandMatrix<Scalar>& b) {
  const Index n = std::min(a.size(), b.size());
  BandMatrix<Scalar> out(n, a.lower() + b.lower(), a.upper() + b.upper());
  for (Index i = 0; i < n; ++i) {
    for (Index j = std::max<Index>(0, i - out.lower()); j <= std::min(n - 1, i + out.upper()); ++j) {
      const Index k_lo = std::max({Index(0), i - a.lower(), j - b.upper()});
      const Index k_hi = std::min({n - 1, i + a.upper(), j + b.lower()});
      Scalar acc(0);
      for (Index k = k_lo; k <= k_hi; ++k) acc += a.coeff(i, k) * b.coeff(k, j);
      out.set(i, j, acc);
    }
  }
  return out;
}

/// Exact leading window of the product of a chain of infinite banded
/// matrices, given their finite sections. Contamination from the truncated
/// tail is ruled out by requiring window + total superdiagonal reach to fit
/// inside every section.
template <ExactScalar Scalar>
DenseMatrix<Scalar> chain_product(std::span<const BandMatrix<Scalar>> factors, Index window) {
  if (factors.empty()) throw BadShape("empty factor chain");
  Index reach = 0;
  Index limit = factors.front().size();
  for (const auto& f : factors) {
    reach += f.upper();
    limit = std::min(limit, f.size());
  }
  if (window < 0 || window + reach > limit) throw WindowTooLarge(window, limit - reach);
  BandMatrix<Scalar> acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = section_product(acc, factors[k]);
  return acc.to_dense(window);
}

template <ExactScalar Scalar>
DenseMatrix<Scalar> banded_multiply(const BandMatrix<Scalar>& a, const BandMatrix<Scalar>& b, Index window) {
  const std::array<BandMatrix<Scalar>, 2> factors{a, b};
  return chain_product<Scalar>(factors, window);
}

/// Finite section J of the (d+2)-banded lower Hessenberg recurrence matrix:
/// row n holds a_{n,n-k}, k = 0..min(n,d), and an implicit unit on the
/// superdiagonal. Rows with n >= d must have a_{n,n-d} != 0.
template <ExactScalar Scalar>
class BandedHessenberg {
 public:
  /// `rows[n]` lists a_{n,max(0,n-d)}, ..., a_{n,n} from left to right.
  BandedHessenberg(Index d, const std::vector<std::vector<Scalar>>& rows)
      : d_(d), band_(static_cast<Index>(rows.size()), d, 1) {
    if (d < 1) throw BadShape("band parameter d must be positive");
    const Index size = band_.size();
    for (Index n = 0; n < size; ++n) {
      const auto& row = rows[static_cast<std::size_t>(n)];
      const Index first = std::max<Index>(0, n - d);
      if (static_cast<Index>(row.size()) != n - first + 1) {
        throw BadShape("row " + std::to_string(n) + " must hold " + std::to_string(n - first + 1) + " entries");
      }
      for (Index j = first; j <= n; ++j) band_.set(n, j, row[static_cast<std::size_t>(j - first)]);
      if (n + 1 < size) band_.set(n, n + 1, Scalar(1));
      if (n >= d && band_.coeff(n, n - d) == Scalar(0)) throw ZeroLowBand(n);
    }
  }

  Index d() const { return d_; }
  Index size() const { return band_.size(); }

  /// a_{n,n-k}
  Scalar entry(Index n, Index k) const { return band_.coeff(n, n - k); }

  std::vector<Scalar> row(Index n) const {
    std::vector<Scalar> out;
    for (Index j = std::max<Index>(0, n - d_); j <= n; ++j) out.push_back(band_.coeff(n, j));
    return out;
  }

  std::vector<std::vector<Scalar>> rows() const {
    std::vector<std::vector<Scalar>> out;
    for (Index n = 0; n < size(); ++n) out.push_back(row(n));
    return out;
  }

  BandedHessenberg leading(Index rows_kept) const {
    if (rows_kept > size()) throw BadShape("cannot extend a section by restriction");
    auto all = rows();
    all.resize(static_cast<std::size_t>(rows_kept));
    return BandedHessenberg(d_, all);
  }

  /// Band form including the unit superdiagonal.
  const BandMatrix<Scalar>& band() const { return band_; }

  friend bool operator==(const BandedHessenberg&, const BandedHessenberg&) = default;

 private:
  Index d_;
  BandMatrix<Scalar> band_;
};

/// Unit lower triangular section with q stored subdiagonals: row n holds
/// gamma_{n,s}, s = max(0,n-q)..n-1.
template <ExactScalar Scalar>
class BandedLowerTriangular {
 public:
  BandedLowerTriangular(Index q, const std::vector<std::vector<Scalar>>& rows)
      : q_(q), band_(static_cast<Index>(rows.size()), q, 0) {
    if (q < 0) throw BadShape("bandwidth must be non-negative");
    for (Index n = 0; n < band_.size(); ++n) {
      const auto& row = rows[static_cast<std::size_t>(n)];
      const Index first = std::max<Index>(0, n - q);
      if (static_cast<Index>(row.size()) != n - first) {
        throw BadShape("row " + std::to_string(n) + " must hold " + std::to_string(n - first) + " entries");
      }
      for (Index s = first; s < n; ++s) band_.set(n, s, row[static_cast<std::size_t>(s - first)]);
      band_.set(n, n, Scalar(1));
    }
  }

  Index bandwidth() const { return q_; }
  Index size() const { return band_.size(); }
  Scalar entry(Index n, Index s) const { return band_.coeff(n, s); }

  /// gamma_{n,n-q}, the outermost stored band.
  Scalar edge(Index n) const { return band_.coeff(n, n - q_); }

  std::vector<Scalar> row(Index n) const {
    std::vector<Scalar> out;
    for (Index s = std::max<Index>(0, n - q_); s < n; ++s) out.push_back(band_.coeff(n, s));
    return out;
  }

  std::vector<std::vector<Scalar>> rows() const {
    std::vector<std::vector<Scalar>> out;
    for (Index n = 0; n < size(); ++n) out.push_back(row(n));
    return out;
  }

  const BandMatrix<Scalar>& band() const { return band_; }

  friend bool operator==(const BandedLowerTriangular&, const BandedLowerTriangular&) = default;

 private:
  Index q_;
  BandMatrix<Scalar> band_;
};

/// Lower Hessenberg section with unit superdiagonal and d - q stored
/// subdiagonals: row n holds alpha_{n,s}, s = max(0,n-(d-q))..n. It carries
/// (x - a) P^(r) into the basis P^(r+q); for q = d it is the upper
/// bidiagonal factor of the chain.
template <ExactScalar Scalar>
class ShiftConnection {
 public:
  ShiftConnection(Index d, Index q, const std::vector<std::vector<Scalar>>& rows)
      : d_(d), q_(q), band_(static_cast<Index>(rows.size()), d - q, 1) {
    if (q < 1 || q > d) throw BadShape("shift connection needs 1 <= q <= d");
    const Index width = d - q;
    for (Index n = 0; n < band_.size(); ++n) {
      const auto& row = rows[static_cast<std::size_t>(n)];
      const Index first = std::max<Index>(0, n - width);
      if (static_cast<Index>(row.size()) != n - first + 1) {
        throw BadShape("row " + std::to_string(n) + " must hold " + std::to_string(n - first + 1) + " entries");
      }
      for (Index s = first; s <= n; ++s) band_.set(n, s, row[static_cast<std::size_t>(s - first)]);
      if (n + 1 < band_.size()) band_.set(n, n + 1, Scalar(1));
    }
  }

  Index d() const { return d_; }
  Index q() const { return q_; }
  Index size() const { return band_.size(); }
  Scalar entry(Index n, Index s) const { return band_.coeff(n, s); }

  /// alpha_{n,n-(d-q)}
  Scalar edge(Index n) const { return band_.coeff(n, n - (d_ - q_)); }

  std::vector<Scalar> row(Index n) const {
    std::vector<Scalar> out;
    for (Index s = std::max<Index>(0, n - (d_ - q_)); s <= n; ++s) out.push_back(band_.coeff(n, s));
    return out;
  }

  std::vector<std::vector<Scalar>> rows() const {
    std::vector<std::vector<Scalar>> out;
    for (Index n = 0; n < size(); ++n) out.push_back(row(n));
    return out;
  }

  const BandMatrix<Scalar>& band() const { return band_; }

  friend bool operator==(const ShiftConnection&, const ShiftConnection&) = default;

 private:
  Index d_;
  Index q_;
  BandMatrix<Scalar> band_;
};

}  // namespace dops
