#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dops/dense.hpp"
#include "dops/errors.hpp"
#include "dops/functional.hpp"
#include "dops/sequence.hpp"

namespace dops {

/// Shift point a and Dirac masses M_1..M_d.
template <ExactScalar Scalar>
struct GeronimusConfig {
  Scalar a;
  std::vector<Scalar> masses;

  Index d() const { return static_cast<Index>(masses.size()); }
  const Scalar& mass(Index k) const {
    if (k < 1 || k > d()) throw BadShape("mass index " + std::to_string(k) + " out of range");
    return masses[static_cast<std::size_t>(k - 1)];
  }
};

/// One cyclic step: (x - a) u'_1 = u_d with mass M, u'_i = u_{i-1}.
template <ExactScalar Scalar>
FunctionalVector<Scalar> transform_vector_step(const FunctionalVector<Scalar>& v, const Scalar& a, const Scalar& mass) {
  if (v.horizon() < 1) throw HorizonExceeded(1, v.horizon());
  std::vector<MomentFunctional<Scalar>> out;
  out.reserve(static_cast<std::size_t>(v.d()));
  out.push_back(geronimus_divide(v(v.d()), a, mass));
  for (Index i = 1; i < v.d(); ++i) out.push_back(v(i));
  return FunctionalVector<Scalar>(std::move(out));
}

/// Level-m vector built directly from level 0:
///   u^(m)_j = u_{d-m+j} / (x - a) + M_{m-j+1} delta_a   for j <= m,
///   u^(m)_j = u_{j-m}                                   for j > m.
/// No intermediate level has to be regular.
template <ExactScalar Scalar>
FunctionalVector<Scalar> build_level(const FunctionalVector<Scalar>& v0, const GeronimusConfig<Scalar>& cfg, Index m) {
  const Index d = v0.d();
  if (m < 0 || m > d) throw BadShape("level " + std::to_string(m) + " outside 0.." + std::to_string(d));
  if (cfg.d() != d) throw BadShape("expected " + std::to_string(d) + " masses, got " + std::to_string(cfg.d()));
  if (m == 0) return v0;
  std::vector<MomentFunctional<Scalar>> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Index j = 1; j <= d; ++j) {
    if (j <= m) {
      out.push_back(geronimus_divide(v0(d - m + j), cfg.a, cfg.mass(m - j + 1)));
    } else {
      out.push_back(v0(j - m));
    }
  }
  return FunctionalVector<Scalar>(std::move(out));
}

/// T(k, i-1) = <u^(m)_i, P_k> for k = 0..max_degree, i = 1..d.
template <ExactScalar Scalar>
DenseMatrix<Scalar> pairing_table(const FunctionalVector<Scalar>& vm, const DOPSequence<Scalar>& s, Index max_degree) {
  if (max_degree > s.max_degree()) throw BadShape("sequence too short for the pairing table");
  DenseMatrix<Scalar> t(max_degree + 1, vm.d());
  for (Index k = 0; k <= max_degree; ++k) {
    for (Index i = 1; i <= vm.d(); ++i) t(k, i - 1) = pair(vm(i), s[k]);
  }
  return t;
}

namespace detail {

/// Rows of the pairing table entering d^(m)_n: P_{n-w}..P_{n-1} against
/// u_1..u_w with w = min(m, n).
template <ExactScalar Scalar>
DenseMatrix<Scalar> regularity_block(const DenseMatrix<Scalar>& table, Index m, Index n) {
  const Index w = std::min(m, n);
  return table.block(n - w, 0, w, w);
}

}  // namespace detail

/// d^(m)_0..d^(m)_{max_degree}; entry 0 is the empty determinant 1. The
/// level-m vector is regular up to degree N iff none of them vanishes.
template <ExactScalar Scalar>
std::vector<Scalar> regularity_determinants(const FunctionalVector<Scalar>& vm, const DOPSequence<Scalar>& s, Index m,
                                            Index max_degree) {
  if (m < 1 || m > vm.d()) throw BadShape("level must be in 1..d");
  const auto table = pairing_table(vm, s, max_degree);
  std::vector<Scalar> out;
  out.reserve(static_cast<std::size_t>(max_degree + 1));
  for (Index n = 0; n <= max_degree; ++n) out.push_back(bareiss_determinant(detail::regularity_block(table, m, n)));
  return out;
}

/// P^(m)_n as the bordered determinant over rows P_{n-w}..P_n (w = min(m,n)),
/// columns u^(m)_1..u^(m)_w and a last column of polynomials, divided by
/// d^(m)_n. Expanded along the last column, so the result is monic.
template <ExactScalar Scalar>
DOPSequence<Scalar> transformed_sequence_determinant(const FunctionalVector<Scalar>& vm, const DOPSequence<Scalar>& s,
                                                     Index m, Index max_degree) {
  if (m < 1 || m > vm.d()) throw BadShape("level must be in 1..d");
  const auto table = pairing_table(vm, s, max_degree);
  std::vector<Polynomial<Scalar>> out;
  out.reserve(static_cast<std::size_t>(max_degree + 1));
  for (Index n = 0; n <= max_degree; ++n) {
    const Index w = std::min(m, n);
    const Index first = n - w;
    const DenseMatrix<Scalar> bordered = table.block(first, 0, w + 1, w);
    const Scalar denominator = bareiss_determinant<Scalar>(bordered.topRows(w));
    if (denominator == Scalar(0)) throw RegularityFailure(n);
    Polynomial<Scalar> p;
    for (Index r = 0; r <= w; ++r) {
      DenseMatrix<Scalar> minor(w, w);
      for (Index i = 0, row = 0; i <= w; ++i) {
        if (i == r) continue;
        minor.row(row++) = bordered.row(i);
      }
      Scalar cofactor = bareiss_determinant(std::move(minor));
      if ((r + w) % 2 != 0) cofactor = -cofactor;
      p += (cofactor / denominator) * s[first + r];
    }
    out.push_back(std::move(p));
  }
  return DOPSequence<Scalar>(s.d(), std::move(out), SequenceSource::kFromDeterminantFormula);
}

template <ExactScalar Scalar>
struct ForbiddenMass {
  Scalar value;
  Index witness;  ///< degree n at which d^(1)_n vanishes for this mass
};

/// Values of M_1 that make d^(1)_n = <u_d/(x-a), P_{n-1}> + M_1 P_{n-1}(a)
/// vanish for some n in [n_first, n_last]. Degrees with P_{n-1}(a) = 0 put no
/// constraint on M_1 and are skipped. Deduplicated, first witness kept.
template <ExactScalar Scalar>
std::vector<ForbiddenMass<Scalar>> forbidden_masses(const FunctionalVector<Scalar>& v0, const DOPSequence<Scalar>& s,
                                                    const Scalar& a, Index n_first, Index n_last) {
  if (n_first < 1) throw BadShape("forbidden masses start at degree 1");
  if (n_last - 1 > s.max_degree()) throw BadShape("sequence too short for the requested degree range");
  const auto divided = geronimus_divide(v0(v0.d()), a, Scalar(0));
  std::vector<ForbiddenMass<Scalar>> out;
  for (Index n = n_first; n <= n_last; ++n) {
    const auto& p = s[n - 1];
    const Scalar at_shift = p(a);
    if (at_shift == Scalar(0)) continue;
    Scalar value = -pair(divided, p) / at_shift;
    const bool seen = std::any_of(out.begin(), out.end(), [&](const auto& f) { return f.value == value; });
    if (!seen) out.push_back({std::move(value), n});
  }
  return out;
}

/// Vector, determinants and (when regular) the transformed sequence at one level.
template <ExactScalar Scalar>
struct TransformLevel {
  Index m;
  FunctionalVector<Scalar> vector;
  std::vector<Scalar> determinants;  ///< d^(m)_0..d^(m)_N
  std::optional<DOPSequence<Scalar>> sequence;

  /// First degree with a vanishing determinant.
  std::optional<Index> first_singular_degree() const {
    for (std::size_t n = 0; n < determinants.size(); ++n) {
      if (determinants[n] == Scalar(0)) return static_cast<Index>(n);
    }
    return std::nullopt;
  }
};

/// Level 0 carries the input vector and sequence with unit determinants.
template <ExactScalar Scalar>
TransformLevel<Scalar> build_transform_level(const FunctionalVector<Scalar>& v0, const DOPSequence<Scalar>& s,
                                             const GeronimusConfig<Scalar>& cfg, Index m, Index max_degree) {
  if (m == 0) {
    return {0, v0, std::vector<Scalar>(static_cast<std::size_t>(max_degree + 1), Scalar(1)), s.truncated(max_degree)};
  }
  auto vm = build_level(v0, cfg, m);
  auto dets = regularity_determinants(vm, s, m, max_degree);
  TransformLevel<Scalar> level{m, std::move(vm), std::move(dets), std::nullopt};
  if (!level.first_singular_degree()) {
    level.sequence = transformed_sequence_determinant(level.vector, s, m, max_degree);
  }
  return level;
}

}  // namespace dops
