#pragma once

// Exact rational scalars. Every kernel in the library is templated on the
// scalar type; `Rational` (GMP-backed) is the one the tools and tests use.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/eigen.hpp>

#include <Eigen/Core>

#include <concepts>
#include <string>
#include <string_view>

#include "dops/errors.hpp"

namespace dops {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

/// Field operations the kernels rely on. Division must be exact.
template <typename T>
concept ExactScalar = std::regular<T> && requires(const T& a, const T& b) {
  { a + b } -> std::convertible_to<T>;
  { a - b } -> std::convertible_to<T>;
  { a * b } -> std::convertible_to<T>;
  { a / b } -> std::convertible_to<T>;
  { -a } -> std::convertible_to<T>;
  T(0);
  T(1);
};

template <typename Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using DenseVector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

namespace detail {

inline bool is_integer_literal(std::string_view text, bool allow_sign) {
  if (allow_sign && !text.empty() && (text.front() == '-' || text.front() == '+')) {
    text.remove_prefix(1);
  }
  if (text.empty()) return false;
  for (char c : text) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace detail

/// Parses "p/q" or "p" into canonical form. Rejects zero and signed
/// denominators, whitespace and anything that is not a plain integer ratio.
template <typename Scalar = Rational>
Scalar parse_scalar(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"}
                                                               : text.substr(slash + 1);
  if (!detail::is_integer_literal(num, true) || !detail::is_integer_literal(den, false)) {
    throw ParseError("malformed rational '" + std::string(text) + "'");
  }
  std::string num_str(num);
  if (num_str.front() == '+') num_str.erase(0, 1);
  const Scalar denominator{std::string(den)};
  if (denominator == Scalar(0)) {
    throw ParseError("zero denominator in '" + std::string(text) + "'");
  }
  // Division canonicalizes; the string constructor alone does not.
  return Scalar{num_str} / denominator;
}

/// "p/q", or "p" when q = 1.
template <typename Scalar>
std::string to_string(const Scalar& x) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  const auto den = denominator(x);
  std::string out = numerator(x).str();
  if (den != 1) out += "/" + den.str();
  return out;
}

}  // namespace dops
