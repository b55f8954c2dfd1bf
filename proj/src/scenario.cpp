#include "dops/scenario.hpp"

#include <algorithm>
#include <cstdlib>

#include "dops/io.hpp"
#include "dops/random.hpp"

namespace dops {

namespace {

using json = nlohmann::json;

// Separate stream for the recombination so it does not depend on how many
// recurrence rows a command happens to draw.
constexpr std::uint64_t kRecombinationStream = 0x9e3779b97f4a7c15ULL;

Index integer_member(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer()) {
    throw ParseError(std::string("scenario needs an integer '") + key + "'");
  }
  return j.at(key).get<Index>();
}

HessenbergSource parse_hessenberg(const json& j, Index d) {
  HessenbergSource out;
  if (j.is_string()) {
    if (j.get<std::string>() != "random") throw ParseError("hessenberg source must be \"random\" or an object");
    return out;
  }
  if (!j.is_object() || j.size() != 1) throw ParseError("hessenberg source needs exactly one of rows, constant, random");
  if (j.contains("rows")) {
    out.kind = HessenbergSource::Kind::kRows;
    for (const auto& row : j.at("rows")) out.rows.push_back(io::rationals_from_json(row));
  } else if (j.contains("constant")) {
    out.kind = HessenbergSource::Kind::kConstant;
    out.rows.push_back(io::rationals_from_json(j.at("constant")));
    if (static_cast<Index>(out.rows.front().size()) != d + 1) throw BadShape("constant bands need d + 1 entries");
  } else if (!j.contains("random")) {
    throw ParseError("unknown hessenberg source");
  }
  return out;
}

FunctionalVector<Rational> parse_moments(const json& j, Index d) {
  if (!j.is_array()) throw ParseError("moments source must be a list of moment lists");
  std::vector<MomentFunctional<Rational>> entries;
  for (const auto& m : j) entries.emplace_back(io::rationals_from_json(m));
  if (static_cast<Index>(entries.size()) != d) throw BadShape("moments source needs d functionals");
  return FunctionalVector<Rational>(std::move(entries));
}

DenseMatrix<Rational> parse_matrix(const json& j, Index d) {
  if (!j.is_array() || static_cast<Index>(j.size()) != d) throw BadShape("recombination must be d x d");
  DenseMatrix<Rational> out(d, d);
  for (Index i = 0; i < d; ++i) {
    const auto row = io::rationals_from_json(j.at(static_cast<std::size_t>(i)));
    if (static_cast<Index>(row.size()) != d) throw BadShape("recombination must be d x d");
    for (Index k = 0; k < d; ++k) out(i, k) = row[static_cast<std::size_t>(k)];
  }
  return out;
}

std::vector<std::pair<Index, Index>> default_pairs(Index d) {
  std::vector<std::pair<Index, Index>> out;
  for (const auto& p : {std::pair<Index, Index>{0, 1}, {0, d}, {1, d - 1}}) {
    if (p.second >= 1 && p.first + p.second <= d && std::find(out.begin(), out.end(), p) == out.end()) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace

bool Scenario::wants(const std::string& check) const {
  return std::find(checks.begin(), checks.end(), check) != checks.end();
}

BandedHessenberg<Rational> Scenario::hessenberg(Index rows) const {
  const auto* src = std::get_if<HessenbergSource>(&source);
  if (src == nullptr) throw BadShape("scenario has a moment source, not a recurrence");
  switch (src->kind) {
    case HessenbergSource::Kind::kRows: {
      if (static_cast<Index>(src->rows.size()) < rows) {
        throw BadShape("scenario gives " + std::to_string(src->rows.size()) + " recurrence rows; " +
                       std::to_string(rows) + " are needed");
      }
      return BandedHessenberg<Rational>(d, std::vector(src->rows.begin(), src->rows.begin() + rows));
    }
    case HessenbergSource::Kind::kConstant: {
      const auto& bands = src->rows.front();
      std::vector<std::vector<Rational>> out;
      for (Index n = 0; n < rows; ++n) {
        const Index width = std::min(n, d) + 1;
        out.emplace_back(bands.end() - width, bands.end());
      }
      return BandedHessenberg<Rational>(d, out);
    }
    case HessenbergSource::Kind::kRandom:
      return InstanceGenerator<Rational>(seed).hessenberg(d, rows);
  }
  throw BadShape("unknown recurrence source");
}

BaseInstance<Rational> Scenario::base(Index degree) const {
  if (const auto* v = std::get_if<FunctionalVector<Rational>>(&source)) {
    auto vector = recombination ? recombine_vector(*v, *recombination) : *v;
    return base_from_moments(vector, degree);
  }
  return base_from_hessenberg(hessenberg(hessenberg_rows_needed(degree, d)), degree, recombination);
}

Index max_degree_cap() {
  if (const char* env = std::getenv("DOPS_MAX_DEGREE")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw ParseError("DOPS_MAX_DEGREE must be an integer");
    }
  }
  return 200;
}

Scenario parse_scenario(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw ParseError("scenario must be a JSON object");
  Scenario s;
  s.d = integer_member(j, "d");
  s.max_degree = integer_member(j, "N");
  if (s.d < 1) throw BadShape("d must be at least 1");
  if (s.max_degree < s.d + 2) throw BadShape("N must be at least d + 2");
  if (s.max_degree > max_degree_cap()) {
    throw BadShape("N = " + std::to_string(s.max_degree) + " exceeds the cap " + std::to_string(max_degree_cap()));
  }
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_unsigned()) throw ParseError("seed must be a non-negative integer");
    s.seed = j.at("seed").get<std::uint64_t>();
  }

  if (!j.contains("source") || !j.at("source").is_object() || j.at("source").size() != 1) {
    throw ParseError("scenario needs a source with one of hessenberg, moments");
  }
  const auto& src = j.at("source");
  if (src.contains("hessenberg")) s.source = parse_hessenberg(src.at("hessenberg"), s.d);
  else if (src.contains("moments")) s.source = parse_moments(src.at("moments"), s.d);
  else throw ParseError("unknown source kind");

  if (j.contains("recombination")) {
    const auto& r = j.at("recombination");
    if (r.is_string() && r.get<std::string>() == "random") {
      s.recombination = InstanceGenerator<Rational>(s.seed ^ kRecombinationStream).unitriangular(s.d);
    } else {
      s.recombination = parse_matrix(r, s.d);
    }
  }

  if (!j.contains("geronimus")) throw ParseError("scenario needs geronimus parameters");
  const auto& g = j.at("geronimus");
  if (!g.is_object() || !g.contains("a") || !g.contains("masses")) throw ParseError("geronimus needs a and masses");
  s.geronimus.a = io::rational_from_json(g.at("a"));
  s.geronimus.masses = io::rationals_from_json(g.at("masses"));
  if (s.geronimus.d() != s.d) throw BadShape("geronimus needs exactly d masses");

  if (j.contains("checks")) {
    for (const auto& c : j.at("checks")) {
      const auto name = c.get<std::string>();
      if (std::find(known_checks().begin(), known_checks().end(), name) == known_checks().end()) {
        throw ParseError("unknown check '" + name + "'");
      }
      s.checks.push_back(name);
    }
  } else {
    s.checks = known_checks();
  }

  if (j.contains("pairs")) {
    for (const auto& p : j.at("pairs")) {
      if (!p.is_array() || p.size() != 2) throw ParseError("pairs are [r, q]");
      const Index r = p.at(0).get<Index>();
      const Index q = p.at(1).get<Index>();
      if (r < 0 || q < 1 || r + q > s.d) throw BadShape("pair (r, q) needs r >= 0, q >= 1, r + q <= d");
      s.pairs.emplace_back(r, q);
    }
  } else {
    s.pairs = default_pairs(s.d);
  }

  if (j.contains("inputs") && j.at("inputs").contains("chain")) {
    s.chain_input = base_dir / j.at("inputs").at("chain").get<std::string>();
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  return parse_scenario(io::read_json_file(path), path.parent_path());
}

}  // namespace dops
