#pragma once

// A scenario names one problem instance for the command-line driver: the
// starting d-OPS (by recurrence or by moments), the Geronimus parameters,
// and which checks to run.
//
// {
//   "d": 2, "N": 12, "seed": 7,
//   "source": {"hessenberg": {"rows": [["1"], ["0", "1"], ["1", "0", "0"], ...]}}
//           | {"hessenberg": {"constant": ["1", "0", "0"]}}
//           | {"hessenberg": "random"}
//           | {"moments": [["1", "0", ...], ["0", "1", ...]]},
//   "recombination": [["1", "0"], ["1/2", "1"]] | "random",      (optional)
//   "geronimus": {"a": "1/3", "masses": ["1", "2"]},
//   "checks": ["orthogonality", "band_structure", ...],           (optional)
//   "pairs": [[0, 1], [0, 2]],                                    (optional)
//   "inputs": {"chain": "chain.json"}                             (optional)
// }

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dops/banded.hpp"
#include "dops/functional.hpp"
#include "dops/geronimus.hpp"
#include "dops/pipeline.hpp"

namespace dops {

/// Recurrence given explicitly, by constant bands, or drawn from the seed.
struct HessenbergSource {
  enum class Kind { kRows, kConstant, kRandom };
  Kind kind = Kind::kRandom;
  std::vector<std::vector<Rational>> rows;  ///< kRows: left-to-right rows; kConstant: one row a_{n,n-d}..a_{n,n}
};

struct Scenario {
  Index d = 0;
  Index max_degree = 0;
  std::uint64_t seed = 0;
  std::variant<HessenbergSource, FunctionalVector<Rational>> source;
  std::optional<DenseMatrix<Rational>> recombination;
  GeronimusConfig<Rational> geronimus;
  std::vector<std::string> checks;
  std::vector<std::pair<Index, Index>> pairs;
  std::optional<std::filesystem::path> chain_input;

  bool wants(const std::string& check) const;

  /// Leading `rows` rows of the recurrence matrix (recurrence sources only).
  BandedHessenberg<Rational> hessenberg(Index rows) const;

  /// Starting sequence through `max_degree` and its vector of orthogonality.
  BaseInstance<Rational> base(Index max_degree) const;
};

inline const std::vector<std::string>& known_checks() {
  static const std::vector<std::string> names = {"orthogonality",        "band_structure",     "connection_factorization",
                                                 "connection_products", "chain_factorization", "u_diagonal"};
  return names;
}

/// Upper bound on N, from DOPS_MAX_DEGREE (default 200).
Index max_degree_cap();

Scenario parse_scenario(const nlohmann::json& j, const std::filesystem::path& base_dir);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace dops
