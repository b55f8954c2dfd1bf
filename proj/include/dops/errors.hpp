#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace dops {

using Index = std::ptrdiff_t;

/// Base of every failure raised by the library. `kind()` is a stable
/// identifier used in CLI diagnostics; `fields()` carries the integer
/// coordinates (degree, row, level, ...) that locate the failure.
class Error : public std::runtime_error {
 public:
  using Fields = std::vector<std::pair<std::string, Index>>;

  Error(std::string kind, const std::string& message, Fields fields = {})
      : std::runtime_error(message), kind_(std::move(kind)), fields_(std::move(fields)) {}

  const std::string& kind() const noexcept { return kind_; }
  const Fields& fields() const noexcept { return fields_; }

  Index field(std::string_view name) const {
    for (const auto& [key, value] : fields_) {
      if (key == name) return value;
    }
    throw std::out_of_range("no field '" + std::string(name) + "' on " + kind_);
  }

 private:
  std::string kind_;
  Fields fields_;
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& message) : Error("ParseError", message) {}
};

class BadShape : public Error {
 public:
  explicit BadShape(const std::string& message) : Error("BadShape", message) {}
};

class HorizonExceeded : public Error {
 public:
  HorizonExceeded(Index required, Index available)
      : Error("HorizonExceeded",
              "moment horizon " + std::to_string(available) + " is below the required " +
                  std::to_string(required),
              {{"required", required}, {"available", available}}) {}
};

class WindowTooLarge : public Error {
 public:
  WindowTooLarge(Index window, Index limit)
      : Error("WindowTooLarge",
              "window " + std::to_string(window) + " exceeds the exact truncation limit " +
                  std::to_string(limit),
              {{"window", window}, {"limit", limit}}) {}
};

/// A coefficient outside the expected band is nonzero.
class BandViolation : public Error {
 public:
  BandViolation(Index row, Index col)
      : Error("BandViolation",
              "nonzero coefficient outside the band at (" + std::to_string(row) + ", " +
                  std::to_string(col) + ")",
              {{"n", row}, {"k", col}}) {}
};

/// The lowest recurrence band a_{n,n-d} vanishes.
class ZeroLowBand : public Error {
 public:
  explicit ZeroLowBand(Index row)
      : Error("ZeroLowBand", "lowest band entry vanishes in row " + std::to_string(row),
              {{"n", row}}) {}
};

/// The outermost band of a connection matrix vanishes.
class ZeroEdgeBand : public Error {
 public:
  explicit ZeroEdgeBand(Index row)
      : Error("ZeroEdgeBand", "edge band entry vanishes in row " + std::to_string(row),
              {{"n", row}}) {}
};

class RegularityFailure : public Error {
 public:
  explicit RegularityFailure(Index degree)
      : Error("RegularityFailure",
              "orthogonality system is singular at degree " + std::to_string(degree),
              {{"n", degree}}) {}
};

/// A pairing <u_j, x^m P_n> with n = m d + j - 1 that must be nonzero vanishes.
class DegeneracyFailure : public Error {
 public:
  DegeneracyFailure(Index n, Index j, Index m)
      : Error("DegeneracyFailure",
              "pairing <u_" + std::to_string(j) + ", x^" + std::to_string(m) + " P_" +
                  std::to_string(n) + "> vanishes",
              {{"n", n}, {"j", j}, {"m", m}}) {}
};

class ChainBroken : public Error {
 public:
  ChainBroken(Index level, const std::string& reason)
      : Error("ChainBroken", "bidiagonal chain broken at level " + std::to_string(level) + ": " + reason,
              {{"level", level}}) {}
};

/// P^(d)_n(a) = 0, which a regular chain cannot produce.
class ZeroAtShift : public Error {
 public:
  explicit ZeroAtShift(Index n)
      : Error("ZeroAtShift", "transformed polynomial of degree " + std::to_string(n) +
                                 " vanishes at the shift point",
              {{"n", n}}) {}
};

}  // namespace dops
