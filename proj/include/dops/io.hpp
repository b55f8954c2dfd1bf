#pragma once

// JSON encodings of the library's values. Rationals are always strings
// "p/q" (or "p"); no artifact ever holds a float.

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "dops/banded.hpp"
#include "dops/factorization.hpp"
#include "dops/functional.hpp"
#include "dops/geronimus.hpp"
#include "dops/polynomial.hpp"
#include "dops/sequence.hpp"

namespace dops::io {

using json = nlohmann::json;

json to_json(const Rational& x);
Rational rational_from_json(const json& j);

json to_json(const std::vector<Rational>& xs);
std::vector<Rational> rationals_from_json(const json& j);

json to_json(const Polynomial<Rational>& p);
Polynomial<Rational> polynomial_from_json(const json& j);

json to_json(const MomentFunctional<Rational>& u);
MomentFunctional<Rational> functional_from_json(const json& j);

json to_json(const FunctionalVector<Rational>& v);
FunctionalVector<Rational> functional_vector_from_json(const json& j);

json to_json(const DOPSequence<Rational>& s);
DOPSequence<Rational> sequence_from_json(const json& j);

/// {"kind": "hessenberg", "size", "d", "bands"}; bands[n] runs left to right.
json to_json(const BandedHessenberg<Rational>& m);
BandedHessenberg<Rational> hessenberg_from_json(const json& j);

/// {"kind": "lower_triangular", "size", "q", "bands"}
json to_json(const BandedLowerTriangular<Rational>& m);
BandedLowerTriangular<Rational> lower_from_json(const json& j);

/// {"kind": "shift_connection", "size", "d", "q", "bands"}
json to_json(const ShiftConnection<Rational>& m);
ShiftConnection<Rational> shift_from_json(const json& j);

json to_json(const ConnectionPair<Rational>& pair);

json to_json(const BidiagonalChain<Rational>& chain);
BidiagonalChain<Rational> chain_from_json(const json& j);

/// [{"j", "m", "n", "kind": "zero"|"nonzero", "pass", "value"}, ...]
json to_json(const OrthogonalityReport<Rational>& report);

/// {"identity", "window", "pass", "mismatches": [{"i", "j", "lhs", "rhs"}]}
json to_json(const IdentityReport<Rational>& report);

/// {"m", "a", "masses", "determinants", "sequence"?, "regular", "first_singular_degree"?}
json to_json(const TransformLevel<Rational>& level, const GeronimusConfig<Rational>& cfg);

json to_json(const std::vector<ForbiddenMass<Rational>>& masses);

json read_json_file(const std::filesystem::path& path);

/// Pretty-printed with a trailing newline; keys sorted, so byte-stable.
void write_json_file(const std::filesystem::path& path, const json& value);

}  // namespace dops::io
