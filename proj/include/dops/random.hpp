#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dops/banded.hpp"
#include "dops/geronimus.hpp"
#include "dops/scalar.hpp"

namespace dops {

/// Seeded source of small random rationals and recurrence sections. Uses
/// raw mt19937_64 output (fully specified by the standard) so a seed gives
/// the same instance on every platform.
template <ExactScalar Scalar = Rational>
class InstanceGenerator {
 public:
  explicit InstanceGenerator(std::uint64_t seed, int max_numerator = 5, int max_denominator = 4)
      : engine_(seed), max_numerator_(max_numerator), max_denominator_(max_denominator) {}

  /// Uniform integer in [lo, hi].
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo + 1);
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  Scalar rational() {
    return Scalar(integer(-max_numerator_, max_numerator_)) / Scalar(integer(1, max_denominator_));
  }

  Scalar nonzero_rational() {
    Scalar x(0);
    while (x == Scalar(0)) x = rational();
    return x;
  }

  /// Random section with a nonzero lowest band.
  BandedHessenberg<Scalar> hessenberg(Index d, Index rows) {
    std::vector<std::vector<Scalar>> out;
    for (Index n = 0; n < rows; ++n) {
      std::vector<Scalar> row;
      for (Index j = std::max<Index>(0, n - d); j <= n; ++j) {
        row.push_back(j == n - d ? nonzero_rational() : rational());
      }
      out.push_back(std::move(row));
    }
    return BandedHessenberg<Scalar>(d, out);
  }

  /// Shift point and nonzero masses (a zero M_m makes d^(m)_1 vanish).
  GeronimusConfig<Scalar> config(Index d) {
    GeronimusConfig<Scalar> cfg{rational(), {}};
    for (Index k = 0; k < d; ++k) cfg.masses.push_back(nonzero_rational());
    return cfg;
  }

  /// Random unit lower triangular d x d array.
  DenseMatrix<Scalar> unitriangular(Index d) {
    DenseMatrix<Scalar> out = DenseMatrix<Scalar>::Zero(d, d);
    for (Index j = 0; j < d; ++j) {
      out(j, j) = Scalar(1);
      for (Index i = 0; i < j; ++i) out(j, i) = rational();
    }
    return out;
  }

 private:
  std::mt19937_64 engine_;
  int max_numerator_;
  int max_denominator_;
};

}  // namespace dops
