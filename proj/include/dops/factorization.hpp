#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dops/banded.hpp"
#include "dops/errors.hpp"
#include "dops/polynomial.hpp"
#include "dops/sequence.hpp"

namespace dops {

namespace detail {

inline void require_compatible(Index d_a, Index d_b, Index n_a, Index n_b) {
  if (d_a != d_b) throw BadShape("sequences disagree on d");
  if (n_a != n_b) throw BadShape("sequences have different lengths");
}

}  // namespace detail

/// Writes P^(r+q)_n in the basis P^(r)_s by exact basis change and checks
/// that only s = n-q..n carry weight, with gamma_{n,n-q} != 0 for n >= q.
template <ExactScalar Scalar>
BandedLowerTriangular<Scalar> connection_lower(const DOPSequence<Scalar>& target, const DOPSequence<Scalar>& source,
                                               Index q) {
  detail::require_compatible(target.d(), source.d(), target.max_degree(), source.max_degree());
  if (q < 0) throw BadShape("negative bandwidth");
  std::vector<std::vector<Scalar>> rows;
  for (Index n = 0; n <= target.max_degree(); ++n) {
    const auto c = expand_in_basis(target[n], source.polynomials());
    for (Index s = 0; s < n - q; ++s) {
      if (c[static_cast<std::size_t>(s)] != Scalar(0)) throw BandViolation(n, s);
    }
    if (n >= q && q > 0 && c[static_cast<std::size_t>(n - q)] == Scalar(0)) throw ZeroEdgeBand(n);
    rows.emplace_back(c.begin() + std::max<Index>(0, n - q), c.begin() + n);
  }
  return BandedLowerTriangular<Scalar>(q, rows);
}

/// Writes (x - a) P^(r)_n in the basis P^(r+q)_s and checks the shape
/// P^(r+q)_{n+1} + sum_{s=n-d+q}^{n} alpha_{n,s} P^(r+q)_s with a nonzero edge.
/// Rows 0..N-1.
template <ExactScalar Scalar>
ShiftConnection<Scalar> connection_n_matrix(const DOPSequence<Scalar>& source, const DOPSequence<Scalar>& target,
                                            const Scalar& a, Index q) {
  detail::require_compatible(source.d(), target.d(), source.max_degree(), target.max_degree());
  const Index d = source.d();
  if (q < 1 || q > d) throw BadShape("shift connection needs 1 <= q <= d");
  const Index width = d - q;
  const auto shift = Polynomial<Scalar>::linear_factor(a);
  std::vector<std::vector<Scalar>> rows;
  for (Index n = 0; n < source.max_degree(); ++n) {
    const auto c = expand_in_basis(shift * source[n], target.polynomials());
    for (Index s = 0; s < n - width; ++s) {
      if (c[static_cast<std::size_t>(s)] != Scalar(0)) throw BandViolation(n, s);
    }
    if (n >= width && c[static_cast<std::size_t>(n - width)] == Scalar(0)) throw ZeroEdgeBand(n);
    rows.emplace_back(c.begin() + std::max<Index>(0, n - width), c.begin() + n + 1);
  }
  return ShiftConnection<Scalar>(d, q, rows);
}

/// Connection between levels r and r + q.
template <ExactScalar Scalar>
struct ConnectionPair {
  Index r;
  Index q;
  BandedLowerTriangular<Scalar> lower;
  ShiftConnection<Scalar> shift;
};

template <ExactScalar Scalar>
ConnectionPair<Scalar> make_connection_pair(const DOPSequence<Scalar>& level_r, const DOPSequence<Scalar>& level_rq,
                                            const Scalar& a, Index r, Index q) {
  return {r, q, connection_lower(level_rq, level_r, q), connection_n_matrix(level_r, level_rq, a, q)};
}

/// Largest window on which every product identity is exact when the level
/// sequences run through degree K: their recurrence sections have K rows
/// and the shift connections K rows, so the window is K - d.
inline Index safe_window(Index max_degree, Index d) { return max_degree - d; }

template <ExactScalar Scalar>
struct Mismatch {
  Index i;
  Index j;
  Scalar lhs;
  Scalar rhs;
};

template <ExactScalar Scalar>
struct IdentityReport {
  std::string identity;
  Index window = 0;
  std::vector<Mismatch<Scalar>> mismatches;

  bool passed() const { return mismatches.empty(); }
};

template <ExactScalar Scalar>
IdentityReport<Scalar> compare_sections(std::string identity, const DenseMatrix<Scalar>& lhs, const DenseMatrix<Scalar>& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols()) throw BadShape("compared sections differ in shape");
  IdentityReport<Scalar> report{std::move(identity), lhs.rows(), {}};
  for (Index i = 0; i < lhs.rows(); ++i) {
    for (Index j = 0; j < lhs.cols(); ++j) {
      if (lhs(i, j) != rhs(i, j)) report.mismatches.push_back({i, j, lhs(i, j), rhs(i, j)});
    }
  }
  return report;
}

namespace detail {

inline std::string level_name(Index r) { return "(" + std::to_string(r) + ")"; }
inline std::string pair_name(Index r, Index q) { return "(" + std::to_string(r) + "," + std::to_string(q) + ")"; }

template <ExactScalar Scalar>
DenseMatrix<Scalar> shifted_section(const BandedHessenberg<Scalar>& j, const Scalar& a, Index window) {
  if (window > j.size()) throw WindowTooLarge(window, j.size());
  return j.band().shifted(a).to_dense(window);
}

}  // namespace detail

/// J^(r) - aI = N L and J^(r+q) - aI = L N on the leading window.
template <ExactScalar Scalar>
std::vector<IdentityReport<Scalar>> verify_connection_factorization(const BandedHessenberg<Scalar>& j_r,
                                                                    const BandedHessenberg<Scalar>& j_rq,
                                                                    const ConnectionPair<Scalar>& pair,
                                                                    const Scalar& a, Index window) {
  const auto& l = pair.lower.band();
  const auto& n = pair.shift.band();
  const auto r = detail::level_name(pair.r);
  const auto rq = detail::level_name(pair.r + pair.q);
  const auto rq_pair = detail::pair_name(pair.r, pair.q);
  std::vector<IdentityReport<Scalar>> out;
  out.push_back(compare_sections("J^" + r + " - aI = N^" + rq_pair + " L^" + rq_pair,
                                 detail::shifted_section(j_r, a, window), banded_multiply(n, l, window)));
  out.push_back(compare_sections("J^" + rq + " - aI = L^" + rq_pair + " N^" + rq_pair,
                                 detail::shifted_section(j_rq, a, window), banded_multiply(l, n, window)));
  return out;
}

/// Lower bidiagonal factors L^(1)..L^(d) and the upper bidiagonal U with
/// (x - a) P = U P^(d).
template <ExactScalar Scalar>
struct BidiagonalChain {
  Scalar a;
  std::vector<BandedLowerTriangular<Scalar>> lower_factors;  ///< L^(1)..L^(d)
  ShiftConnection<Scalar> upper;                              ///< U, diagonal s_0, s_1, ...

  Index d() const { return static_cast<Index>(lower_factors.size()); }
  const BandedLowerTriangular<Scalar>& lower(Index m) const {
    return lower_factors.at(static_cast<std::size_t>(m - 1));
  }
  std::vector<Scalar> upper_diagonal() const {
    std::vector<Scalar> out;
    for (Index n = 0; n < upper.size(); ++n) out.push_back(upper.entry(n, n));
    return out;
  }
};

/// L^(r+q) L^(r+q-1) ... L^(r+1) against the direct L^(r,q), for every
/// r + q <= d with q >= 2.
template <ExactScalar Scalar>
std::vector<IdentityReport<Scalar>> verify_connection_products(const std::vector<DOPSequence<Scalar>>& levels,
                                                               const BidiagonalChain<Scalar>& chain, Index window) {
  const Index d = chain.d();
  std::vector<IdentityReport<Scalar>> out;
  for (Index r = 0; r < d; ++r) {
    for (Index q = 2; r + q <= d; ++q) {
      const auto direct = connection_lower(levels[static_cast<std::size_t>(r + q)], levels[static_cast<std::size_t>(r)], q);
      std::vector<BandMatrix<Scalar>> factors;
      std::string rhs;
      for (Index k = r + q; k > r; --k) {
        factors.push_back(chain.lower(k).band());
        rhs += " L^" + detail::level_name(k);
      }
      out.push_back(compare_sections("L^" + detail::pair_name(r, q) + " =" + rhs, direct.band().to_dense(window),
                                     chain_product<Scalar>(factors, window)));
    }
  }
  return out;
}

/// Builds L^(m+1) = L^(m,1) for m = 0..d-1 and U = N^(0,d) from the d+1
/// level sequences, then checks every product factorization of L^(r,q).
template <ExactScalar Scalar>
BidiagonalChain<Scalar> build_chain(const std::vector<DOPSequence<Scalar>>& levels, const Scalar& a) {
  if (levels.size() < 2) throw BadShape("a chain needs levels 0..d");
  const Index d = static_cast<Index>(levels.size()) - 1;
  for (Index m = 0; m <= d; ++m) {
    const auto& level = levels[static_cast<std::size_t>(m)];
    if (level.d() != d) throw ChainBroken(m, "level has d = " + std::to_string(level.d()));
    if (level.max_degree() != levels.front().max_degree()) throw ChainBroken(m, "levels differ in length");
  }
  std::vector<BandedLowerTriangular<Scalar>> lowers;
  for (Index m = 0; m < d; ++m) {
    try {
      lowers.push_back(connection_lower(levels[static_cast<std::size_t>(m + 1)], levels[static_cast<std::size_t>(m)], 1));
    } catch (const Error& e) {
      throw ChainBroken(m + 1, e.what());
    }
  }
  auto upper = [&] {
    try {
      return connection_n_matrix(levels.front(), levels.back(), a, d);
    } catch (const Error& e) {
      throw ChainBroken(0, e.what());
    }
  }();
  BidiagonalChain<Scalar> chain{a, std::move(lowers), std::move(upper)};
  const Index window = safe_window(levels.front().max_degree(), d);
  for (const auto& report : verify_connection_products(levels, chain, window)) {
    if (!report.passed()) throw ChainBroken(0, "product identity fails: " + report.identity);
  }
  return chain;
}

/// s_n = -P^(d)_{n+1}(a) / P^(d)_n(a) for n = 0..N-1.
template <ExactScalar Scalar>
std::vector<Scalar> u_diagonal_from_shift_values(const DOPSequence<Scalar>& level_d, const Scalar& a) {
  std::vector<Scalar> out;
  for (Index n = 0; n < level_d.max_degree(); ++n) {
    const Scalar value = level_d[n](a);
    if (value == Scalar(0)) throw ZeroAtShift(n);
    out.push_back(-level_d[n + 1](a) / value);
  }
  return out;
}

/// Diagonal of U against the shift-point values of P^(d).
template <ExactScalar Scalar>
IdentityReport<Scalar> verify_u_diagonal(const BidiagonalChain<Scalar>& chain, const DOPSequence<Scalar>& level_d,
                                         Index window) {
  const auto from_values = u_diagonal_from_shift_values(level_d, chain.a);
  const auto diagonal = chain.upper_diagonal();
  if (window > static_cast<Index>(std::min(from_values.size(), diagonal.size()))) {
    throw WindowTooLarge(window, static_cast<Index>(std::min(from_values.size(), diagonal.size())));
  }
  DenseMatrix<Scalar> lhs(window, 1);
  DenseMatrix<Scalar> rhs(window, 1);
  for (Index n = 0; n < window; ++n) {
    lhs(n, 0) = diagonal[static_cast<std::size_t>(n)];
    rhs(n, 0) = from_values[static_cast<std::size_t>(n)];
  }
  return compare_sections("diag U = -P^(d)_{n+1}(a) / P^(d)_n(a)", lhs, rhs);
}

/// J^(m) - aI = L^(m) ... L^(1) U L^(d) ... L^(m+1) for m = 1..d.
template <ExactScalar Scalar>
std::vector<IdentityReport<Scalar>> verify_chain_factorization(const std::vector<BandedHessenberg<Scalar>>& j_levels,
                                                               const BidiagonalChain<Scalar>& chain, Index window) {
  const Index d = chain.d();
  if (static_cast<Index>(j_levels.size()) != d + 1) throw BadShape("need recurrence matrices for levels 0..d");
  std::vector<IdentityReport<Scalar>> out;
  for (Index m = 1; m <= d; ++m) {
    std::vector<BandMatrix<Scalar>> factors;
    std::string rhs;
    for (Index k = m; k >= 1; --k) {
      factors.push_back(chain.lower(k).band());
      rhs += " L^" + detail::level_name(k);
    }
    factors.push_back(chain.upper.band());
    rhs += " U";
    for (Index k = d; k > m; --k) {
      factors.push_back(chain.lower(k).band());
      rhs += " L^" + detail::level_name(k);
    }
    out.push_back(compare_sections("J^" + detail::level_name(m) + " - aI =" + rhs,
                                   detail::shifted_section(j_levels[static_cast<std::size_t>(m)], chain.a, window),
                                   chain_product<Scalar>(factors, window)));
  }
  return out;
}

}  // namespace dops
