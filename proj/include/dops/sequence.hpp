#pragma once

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "dops/banded.hpp"
#include "dops/dense.hpp"
#include "dops/errors.hpp"
#include "dops/functional.hpp"
#include "dops/polynomial.hpp"

namespace dops {

enum class SequenceSource { kFromMatrix, kFromMoments, kFromDeterminantFormula };

inline const char* to_string(SequenceSource s) {
  switch (s) {
    case SequenceSource::kFromMatrix: return "from-matrix";
    case SequenceSource::kFromMoments: return "from-moments";
    case SequenceSource::kFromDeterminantFormula: return "from-determinant-formula";
  }
  return "unknown";
}

/// Monic P_0..P_N with deg P_n = n.
template <ExactScalar Scalar>
class DOPSequence {
 public:
  DOPSequence(Index d, std::vector<Polynomial<Scalar>> polynomials, SequenceSource source)
      : d_(d), polynomials_(std::move(polynomials)), source_(source) {
    if (d < 1) throw BadShape("band parameter d must be positive");
    if (polynomials_.empty()) throw BadShape("a sequence needs at least P_0");
    for (std::size_t n = 0; n < polynomials_.size(); ++n) {
      if (polynomials_[n].degree() != static_cast<Index>(n) || !polynomials_[n].is_monic()) {
        throw BadShape("P_" + std::to_string(n) + " is not monic of degree " + std::to_string(n));
      }
    }
  }

  Index d() const { return d_; }
  Index max_degree() const { return static_cast<Index>(polynomials_.size()) - 1; }
  SequenceSource source() const { return source_; }
  const std::vector<Polynomial<Scalar>>& polynomials() const { return polynomials_; }
  const Polynomial<Scalar>& operator[](Index n) const { return polynomials_.at(static_cast<std::size_t>(n)); }

  DOPSequence truncated(Index max_degree) const {
    if (max_degree > this->max_degree()) throw BadShape("cannot truncate to a larger degree");
    return DOPSequence(d_, {polynomials_.begin(), polynomials_.begin() + max_degree + 1}, source_);
  }

  /// Coefficient equality; the source tag is provenance, not value.
  friend bool operator==(const DOPSequence& a, const DOPSequence& b) {
    return a.d_ == b.d_ && a.polynomials_ == b.polynomials_;
  }

 private:
  Index d_;
  std::vector<Polynomial<Scalar>> polynomials_;
  SequenceSource source_;
};

/// Moments needed to pose every orthogonality condition up to degree N:
/// N + ceil(N / d).
inline Index required_horizon(Index max_degree, Index d) { return max_degree + (max_degree + d - 1) / d; }

/// x P_n = P_{n+1} + sum_{k=0}^{d} a_{n,n-k} P_{n-k}, P_0 = 1. Uses rows
/// 0..N-1 of the section.
template <ExactScalar Scalar>
DOPSequence<Scalar> generate_sequence(const BandedHessenberg<Scalar>& j, Index max_degree) {
  if (max_degree < 0) throw BadShape("negative degree");
  if (j.size() < max_degree) {
    throw BadShape("recurrence section has " + std::to_string(j.size()) + " rows, degree " +
                   std::to_string(max_degree) + " needs " + std::to_string(max_degree));
  }
  const Index d = j.d();
  std::vector<Polynomial<Scalar>> p;
  p.reserve(static_cast<std::size_t>(max_degree + 1));
  p.push_back(Polynomial<Scalar>::constant(Scalar(1)));
  for (Index n = 0; n < max_degree; ++n) {
    Polynomial<Scalar> next = multiply_by_x(p.back());
    for (Index k = 0; k <= std::min(n, d); ++k) next.subtract_scaled(j.entry(n, k), p[static_cast<std::size_t>(n - k)]);
    p.push_back(std::move(next));
  }
  return DOPSequence<Scalar>(d, std::move(p), SequenceSource::kFromMatrix);
}

/// Reads the recurrence back from a sequence: expands x P_n in the basis
/// {P_k} and requires every coefficient below the band to vanish. Returns
/// rows 0..N-1.
template <ExactScalar Scalar>
BandedHessenberg<Scalar> recurrence_from_sequence(const DOPSequence<Scalar>& s) {
  const Index d = s.d();
  std::vector<std::vector<Scalar>> rows;
  for (Index n = 0; n < s.max_degree(); ++n) {
    const auto c = expand_in_basis(multiply_by_x(s[n]), s.polynomials());
    for (Index k = 0; k < n - d; ++k) {
      if (c[static_cast<std::size_t>(k)] != Scalar(0)) throw BandViolation(n, k);
    }
    if (n >= d && c[static_cast<std::size_t>(n - d)] == Scalar(0)) throw ZeroLowBand(n);
    rows.emplace_back(c.begin() + std::max<Index>(0, n - d), c.begin() + n + 1);
  }
  return BandedHessenberg<Scalar>(d, rows);
}

/// Canonical vector of orthogonality: <u_j, P_n> = delta_{n,j-1} for
/// n = 0..horizon. Each moment follows by forward substitution since P_n is
/// monic of degree n.
template <ExactScalar Scalar>
FunctionalVector<Scalar> dual_functional_vector(const DOPSequence<Scalar>& s, Index horizon) {
  if (horizon > s.max_degree()) throw HorizonExceeded(horizon, s.max_degree());
  std::vector<MomentFunctional<Scalar>> entries;
  for (Index j = 1; j <= s.d(); ++j) {
    std::vector<Scalar> mu(static_cast<std::size_t>(horizon + 1), Scalar(0));
    for (Index n = 0; n <= horizon; ++n) {
      Scalar value = n == j - 1 ? Scalar(1) : Scalar(0);
      const auto& c = s[n].coefficients();
      for (Index k = 0; k < n; ++k) value -= c[static_cast<std::size_t>(k)] * mu[static_cast<std::size_t>(k)];
      mu[static_cast<std::size_t>(n)] = value;
    }
    entries.emplace_back(std::move(mu));
  }
  return FunctionalVector<Scalar>(std::move(entries));
}

/// Orthogonality conditions (m, j) for degree n, ordered by m d + j.
inline std::vector<std::pair<Index, Index>> orthogonality_conditions(Index n, Index d) {
  std::vector<std::pair<Index, Index>> out;
  for (Index t = 1; t <= n; ++t) out.emplace_back((t - 1) / d, (t - 1) % d + 1);
  return out;
}

/// Independent route to the d-OPS: for each n, solves for the lower
/// coefficients of monic P_n from the n conditions <u_j, x^m P_n> = 0,
/// m d + j <= n. Also checks <u_j, x^m P_{md+j-1}> != 0 wherever the moments
/// reach.
template <ExactScalar Scalar>
DOPSequence<Scalar> sequence_from_functionals(const FunctionalVector<Scalar>& v, Index max_degree) {
  const Index d = v.d();
  const Index needed = required_horizon(max_degree, d);
  if (v.horizon() < needed) throw HorizonExceeded(needed, v.horizon());

  std::vector<Polynomial<Scalar>> p;
  p.push_back(Polynomial<Scalar>::constant(Scalar(1)));
  for (Index n = 1; n <= max_degree; ++n) {
    const auto conditions = orthogonality_conditions(n, d);
    DenseMatrix<Scalar> a(n, n);
    DenseVector<Scalar> b(n);
    for (Index row = 0; row < n; ++row) {
      const auto [m, j] = conditions[static_cast<std::size_t>(row)];
      const auto& u = v(j);
      for (Index k = 0; k < n; ++k) a(row, k) = u.moment(m + k);
      b(row) = -u.moment(m + n);
    }
    const auto x = solve_exact(std::move(a), std::move(b));
    if (!x) throw RegularityFailure(n);
    std::vector<Scalar> c(x->data(), x->data() + n);
    c.push_back(Scalar(1));
    p.emplace_back(std::move(c));
  }

  for (Index n = 0; n <= max_degree; ++n) {
    const Index m = n / d;
    const Index j = n % d + 1;
    if (m + n > v(j).horizon()) continue;
    if (pair_shifted(v(j), p[static_cast<std::size_t>(n)], m) == Scalar(0)) throw DegeneracyFailure(n, j, m);
  }
  return DOPSequence<Scalar>(d, std::move(p), SequenceSource::kFromMoments);
}

enum class ConditionKind { kZero, kNonzero };

template <ExactScalar Scalar>
struct OrthogonalityCheck {
  Index j;
  Index m;
  Index n;
  ConditionKind kind;
  bool pass;
  Scalar value;
};

template <ExactScalar Scalar>
struct OrthogonalityReport {
  std::vector<OrthogonalityCheck<Scalar>> checks;

  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
  Index failures() const {
    return static_cast<Index>(std::count_if(checks.begin(), checks.end(), [](const auto& c) { return !c.pass; }));
  }
};

/// Every <u_j, x^m P_n> = 0 (n >= m d + j) and <u_j, x^m P_{md+j-1}> != 0
/// condition the moments and the sequence can both reach.
template <ExactScalar Scalar>
OrthogonalityReport<Scalar> verify_orthogonality(const FunctionalVector<Scalar>& v, const DOPSequence<Scalar>& s) {
  if (v.d() != s.d()) throw BadShape("functional vector and sequence disagree on d");
  OrthogonalityReport<Scalar> report;
  const Index d = s.d();
  for (Index j = 1; j <= d; ++j) {
    const auto& u = v(j);
    for (Index m = 0; m * d + j - 1 <= s.max_degree(); ++m) {
      for (Index n = m * d + j - 1; n <= s.max_degree() && n + m <= u.horizon(); ++n) {
        const Scalar value = pair_shifted(u, s[n], m);
        const bool nonzero_condition = n == m * d + j - 1;
        report.checks.push_back({j, m, n, nonzero_condition ? ConditionKind::kNonzero : ConditionKind::kZero,
                                 nonzero_condition ? value != Scalar(0) : value == Scalar(0), value});
      }
    }
  }
  return report;
}

}  // namespace dops
