#include "dops/io.hpp"

#include <fstream>
#include <sstream>

namespace dops::io {

namespace {

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return j.at(key);
}

Index index_member(const json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("key '") + key + "' must be an integer");
  return v.get<Index>();
}

std::vector<std::vector<Rational>> rows_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("bands must be a list of rows");
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : j) rows.push_back(rationals_from_json(row));
  return rows;
}

json rows_to_json(const std::vector<std::vector<Rational>>& rows) {
  json out = json::array();
  for (const auto& row : rows) out.push_back(to_json(row));
  return out;
}

void expect_kind(const json& j, const char* kind) {
  if (j.contains("kind") && j.at("kind") != kind) {
    throw ParseError(std::string("expected a matrix of kind '") + kind + "'");
  }
}

void expect_size(const json& j, std::size_t rows) {
  if (j.contains("size") && index_member(j, "size") != static_cast<Index>(rows)) {
    throw ParseError("matrix size does not match its band rows");
  }
}

}  // namespace

json to_json(const Rational& x) { return dops::to_string(x); }

Rational rational_from_json(const json& j) {
  if (j.is_string()) return parse_scalar<Rational>(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long long>());
  throw ParseError("rational must be a \"p/q\" string or an integer, got " + j.dump());
}

json to_json(const std::vector<Rational>& xs) {
  json out = json::array();
  for (const auto& x : xs) out.push_back(to_json(x));
  return out;
}

std::vector<Rational> rationals_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected a list of rationals");
  std::vector<Rational> out;
  out.reserve(j.size());
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

json to_json(const Polynomial<Rational>& p) { return to_json(p.coefficients()); }

Polynomial<Rational> polynomial_from_json(const json& j) { return Polynomial<Rational>(rationals_from_json(j)); }

json to_json(const MomentFunctional<Rational>& u) { return {{"moments", to_json(u.moments())}}; }

MomentFunctional<Rational> functional_from_json(const json& j) {
  return MomentFunctional<Rational>(rationals_from_json(member(j, "moments")));
}

json to_json(const FunctionalVector<Rational>& v) {
  json entries = json::array();
  for (const auto& u : v.entries()) entries.push_back(to_json(u));
  return {{"d", v.d()}, {"entries", entries}};
}

FunctionalVector<Rational> functional_vector_from_json(const json& j) {
  const auto& entries = member(j, "entries");
  if (!entries.is_array()) throw ParseError("entries must be a list");
  std::vector<MomentFunctional<Rational>> out;
  for (const auto& e : entries) out.push_back(functional_from_json(e));
  FunctionalVector<Rational> v(std::move(out));
  if (j.contains("d") && index_member(j, "d") != v.d()) throw ParseError("d does not match the number of entries");
  return v;
}

json to_json(const DOPSequence<Rational>& s) {
  json polys = json::array();
  for (const auto& p : s.polynomials()) polys.push_back(to_json(p));
  return {{"d", s.d()}, {"polynomials", polys}, {"source", dops::to_string(s.source())}};
}

DOPSequence<Rational> sequence_from_json(const json& j) {
  const auto& polys = member(j, "polynomials");
  if (!polys.is_array()) throw ParseError("polynomials must be a list");
  std::vector<Polynomial<Rational>> out;
  for (const auto& p : polys) out.push_back(polynomial_from_json(p));
  SequenceSource source = SequenceSource::kFromMatrix;
  if (j.contains("source")) {
    const auto tag = j.at("source").get<std::string>();
    if (tag == "from-moments") source = SequenceSource::kFromMoments;
    else if (tag == "from-determinant-formula") source = SequenceSource::kFromDeterminantFormula;
    else if (tag != "from-matrix") throw ParseError("unknown sequence source '" + tag + "'");
  }
  return DOPSequence<Rational>(index_member(j, "d"), std::move(out), source);
}

json to_json(const BandedHessenberg<Rational>& m) {
  return {{"kind", "hessenberg"}, {"size", m.size()}, {"d", m.d()}, {"bands", rows_to_json(m.rows())}};
}

BandedHessenberg<Rational> hessenberg_from_json(const json& j) {
  expect_kind(j, "hessenberg");
  auto rows = rows_from_json(member(j, "bands"));
  expect_size(j, rows.size());
  return BandedHessenberg<Rational>(index_member(j, "d"), rows);
}

json to_json(const BandedLowerTriangular<Rational>& m) {
  return {{"kind", "lower_triangular"}, {"size", m.size()}, {"q", m.bandwidth()}, {"bands", rows_to_json(m.rows())}};
}

BandedLowerTriangular<Rational> lower_from_json(const json& j) {
  expect_kind(j, "lower_triangular");
  auto rows = rows_from_json(member(j, "bands"));
  expect_size(j, rows.size());
  return BandedLowerTriangular<Rational>(index_member(j, "q"), rows);
}

json to_json(const ShiftConnection<Rational>& m) {
  return {{"kind", "shift_connection"},
          {"size", m.size()},
          {"d", m.d()},
          {"q", m.q()},
          {"bands", rows_to_json(m.rows())}};
}

ShiftConnection<Rational> shift_from_json(const json& j) {
  expect_kind(j, "shift_connection");
  auto rows = rows_from_json(member(j, "bands"));
  expect_size(j, rows.size());
  return ShiftConnection<Rational>(index_member(j, "d"), index_member(j, "q"), rows);
}

json to_json(const ConnectionPair<Rational>& pair) {
  return {{"r", pair.r}, {"q", pair.q}, {"lower", to_json(pair.lower)}, {"shift", to_json(pair.shift)}};
}

json to_json(const BidiagonalChain<Rational>& chain) {
  json lowers = json::array();
  for (const auto& l : chain.lower_factors) lowers.push_back(to_json(l));
  return {{"a", to_json(chain.a)}, {"lower_factors", lowers}, {"upper", to_json(chain.upper)}};
}

BidiagonalChain<Rational> chain_from_json(const json& j) {
  const auto& lowers = member(j, "lower_factors");
  if (!lowers.is_array()) throw ParseError("lower_factors must be a list");
  std::vector<BandedLowerTriangular<Rational>> factors;
  for (const auto& l : lowers) factors.push_back(lower_from_json(l));
  auto upper = shift_from_json(member(j, "upper"));
  if (static_cast<Index>(factors.size()) != upper.d()) throw ParseError("chain needs d lower factors");
  return {rational_from_json(member(j, "a")), std::move(factors), std::move(upper)};
}

json to_json(const OrthogonalityReport<Rational>& report) {
  json out = json::array();
  for (const auto& c : report.checks) {
    out.push_back({{"j", c.j},
                   {"m", c.m},
                   {"n", c.n},
                   {"kind", c.kind == ConditionKind::kZero ? "zero" : "nonzero"},
                   {"pass", c.pass},
                   {"value", to_json(c.value)}});
  }
  return out;
}

json to_json(const IdentityReport<Rational>& report) {
  json mismatches = json::array();
  for (const auto& m : report.mismatches) {
    mismatches.push_back({{"i", m.i}, {"j", m.j}, {"lhs", to_json(m.lhs)}, {"rhs", to_json(m.rhs)}});
  }
  return {{"identity", report.identity},
          {"window", report.window},
          {"pass", report.passed()},
          {"mismatches", mismatches}};
}

json to_json(const TransformLevel<Rational>& level, const GeronimusConfig<Rational>& cfg) {
  json out = {{"m", level.m},
              {"a", to_json(cfg.a)},
              {"masses", to_json(cfg.masses)},
              {"determinants", to_json(level.determinants)},
              {"regular", level.sequence.has_value()}};
  if (level.sequence) out["sequence"] = to_json(*level.sequence);
  if (const auto n = level.first_singular_degree()) out["first_singular_degree"] = *n;
  return out;
}

json to_json(const std::vector<ForbiddenMass<Rational>>& masses) {
  json out = json::array();
  for (const auto& f : masses) out.push_back({{"value", to_json(f.value)}, {"witness", f.witness}});
  return out;
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError("invalid JSON in '" + path.string() + "': " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const json& value) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ParseError("cannot write '" + path.string() + "'");
  out << value.dump(2) << '\n';
}

}  // namespace dops::io
