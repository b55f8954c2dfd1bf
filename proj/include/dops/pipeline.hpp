#pragma once

#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "dops/banded.hpp"
#include "dops/errors.hpp"
#include "dops/factorization.hpp"
#include "dops/functional.hpp"
#include "dops/geronimus.hpp"
#include "dops/sequence.hpp"

namespace dops {

/// Starting d-OPS through degree N together with a vector of orthogonality
/// whose moments reach far enough for every downstream check.
template <ExactScalar Scalar>
struct BaseInstance {
  DOPSequence<Scalar> sequence;
  FunctionalVector<Scalar> vector;
};

/// Rows of J a recurrence source must supply to support degree N.
inline Index hessenberg_rows_needed(Index max_degree, Index d) { return required_horizon(max_degree, d); }

/// The sequence comes from the recurrence; the vector of orthogonality is
/// the canonical dual vector, carried to N + ceil(N/d) moments so the
/// moment-solve route can run, and optionally recombined by a unit lower
/// triangular array. The recombination matters downstream: the dual vector
/// has <u_j, P_0> = 0 for j >= 2, which makes every level 2 <= m <= d-1
/// singular at degree 2.
template <ExactScalar Scalar>
BaseInstance<Scalar> base_from_hessenberg(const BandedHessenberg<Scalar>& j, Index max_degree,
                                          const std::type_identity_t<std::optional<DenseMatrix<Scalar>>>& recombination = std::nullopt) {
  const Index horizon = required_horizon(max_degree, j.d());
  if (j.size() < horizon) {
    throw BadShape("recurrence section has " + std::to_string(j.size()) + " rows; degree " +
                   std::to_string(max_degree) + " needs " + std::to_string(horizon));
  }
  const auto extended = generate_sequence(j, horizon);
  auto vector = dual_functional_vector(extended, horizon);
  if (recombination) vector = recombine_vector(vector, *recombination);
  return {extended.truncated(max_degree), std::move(vector)};
}

template <ExactScalar Scalar>
BaseInstance<Scalar> base_from_moments(const FunctionalVector<Scalar>& v, Index max_degree) {
  return {sequence_from_functionals(v, max_degree), v};
}

/// Levels 0..d. Levels that are not regular through degree N come back
/// without a sequence.
template <ExactScalar Scalar>
std::vector<TransformLevel<Scalar>> build_all_levels(const BaseInstance<Scalar>& base, const GeronimusConfig<Scalar>& cfg,
                                                     Index max_degree) {
  std::vector<TransformLevel<Scalar>> out;
  for (Index m = 0; m <= base.sequence.d(); ++m) {
    out.push_back(build_transform_level(base.vector, base.sequence, cfg, m, max_degree));
  }
  return out;
}

/// Sequences of all levels; a singular level is reported as a
/// RegularityFailure at its first vanishing determinant, wrapped with the
/// level that broke the chain.
template <ExactScalar Scalar>
std::vector<DOPSequence<Scalar>> level_sequences(const std::vector<TransformLevel<Scalar>>& levels) {
  std::vector<DOPSequence<Scalar>> out;
  for (const auto& level : levels) {
    if (!level.sequence) {
      throw ChainBroken(level.m, "not regular: d_" + std::to_string(*level.first_singular_degree()) + " = 0");
    }
    out.push_back(*level.sequence);
  }
  return out;
}

template <ExactScalar Scalar>
std::vector<BandedHessenberg<Scalar>> recurrence_matrices(const std::vector<DOPSequence<Scalar>>& sequences) {
  std::vector<BandedHessenberg<Scalar>> out;
  for (const auto& s : sequences) out.push_back(recurrence_from_sequence(s));
  return out;
}

}  // namespace dops
