#pragma once

// The three driver commands. Each writes its JSON artifacts under `out`,
// returns a process exit code, and on failure prints one JSON diagnostic
// object on `err`:
//
//   0  success
//   1  malformed input or any other error
//   2  regularity failure (singular level, degenerate moment system)
//   3  band-structure violation in an input or derived matrix
//   4  an identity or orthogonality check failed, or P^(d)(a) = 0

#include <filesystem>
#include <ostream>

#include "dops/errors.hpp"
#include "dops/scenario.hpp"

namespace dops {

int exit_code_for(const Error& e);

/// sequence.json, dual_vector.json, j_matrix.json
int run_generate(const Scenario& s, const std::filesystem::path& out, std::ostream& err);

/// level_<m>.json, vector_<m>.json, orthogonality_<m>.json; forbidden_masses.json when m = 1.
int run_transform(const Scenario& s, Index m, const std::filesystem::path& out, std::ostream& err);

/// chain.json, j_levels.json, report.json
int run_verify(const Scenario& s, const std::filesystem::path& out, std::ostream& err);

/// Loads the scenario and dispatches; every failure, including a bad
/// scenario file, becomes an exit code plus a diagnostic.
int run_command(const std::string& command, const std::filesystem::path& scenario, Index m,
                const std::filesystem::path& out, std::ostream& err);

}  // namespace dops
