#include "dops/commands.hpp"

#include <set>
#include <string>

#include "dops/factorization.hpp"
#include "dops/io.hpp"
#include "dops/pipeline.hpp"

namespace dops {

namespace {

using json = nlohmann::json;

void diagnose(std::ostream& err, json diagnostic) { err << diagnostic.dump() << '\n'; }

json error_json(const Error& e) {
  json out = {{"error", e.kind()}, {"message", e.what()}};
  for (const auto& [key, value] : e.fields()) out[key] = value;
  return out;
}

json identity_failures(const std::vector<IdentityReport<Rational>>& reports) {
  json out = json::array();
  for (const auto& r : reports) {
    if (r.passed()) continue;
    const auto& first = r.mismatches.front();
    out.push_back({{"identity", r.identity},
                   {"mismatches", r.mismatches.size()},
                   {"first", {{"i", first.i}, {"j", first.j}}}});
  }
  return out;
}

void append(std::vector<IdentityReport<Rational>>& to, std::vector<IdentityReport<Rational>> from) {
  for (auto& r : from) to.push_back(std::move(r));
}

}  // namespace

int exit_code_for(const Error& e) {
  static const std::set<std::string> regularity = {"RegularityFailure", "DegeneracyFailure", "ChainBroken"};
  static const std::set<std::string> band = {"BandViolation", "ZeroLowBand", "ZeroEdgeBand"};
  if (regularity.contains(e.kind())) return 2;
  if (band.contains(e.kind())) return 3;
  if (e.kind() == "ZeroAtShift") return 4;
  return 1;
}

int run_generate(const Scenario& s, const std::filesystem::path& out, std::ostream& /*err*/) {
  const Index n = s.max_degree;
  const auto base = s.base(n);
  io::write_json_file(out / "sequence.json", io::to_json(base.sequence));
  io::write_json_file(out / "dual_vector.json", io::to_json(base.vector));
  io::write_json_file(out / "j_matrix.json", io::to_json(recurrence_from_sequence(base.sequence)));
  return 0;
}

int run_transform(const Scenario& s, Index m, const std::filesystem::path& out, std::ostream& err) {
  if (m < 1 || m > s.d) throw BadShape("level m must lie in 1..d");
  const Index n = s.max_degree;
  const auto base = s.base(n);
  const auto level = build_transform_level(base.vector, base.sequence, s.geronimus, m, n);
  const auto tag = std::to_string(m);
  io::write_json_file(out / ("level_" + tag + ".json"), io::to_json(level, s.geronimus));
  io::write_json_file(out / ("vector_" + tag + ".json"), io::to_json(level.vector));
  if (m == 1) {
    io::write_json_file(out / "forbidden_masses.json",
                        io::to_json(forbidden_masses(base.vector, base.sequence, s.geronimus.a, 1, n)));
  }
  if (const auto singular = level.first_singular_degree()) {
    const RegularityFailure failure(*singular);
    auto diagnostic = error_json(failure);
    diagnostic["m"] = m;
    diagnose(err, diagnostic);
    return 2;
  }
  const auto report = verify_orthogonality(level.vector, *level.sequence);
  io::write_json_file(out / ("orthogonality_" + tag + ".json"), io::to_json(report));
  if (!report.passed()) {
    diagnose(err, {{"error", "OrthogonalityFailure"}, {"m", m}, {"failures", report.failures()}});
    return 4;
  }
  return 0;
}

int run_verify(const Scenario& s, const std::filesystem::path& out, std::ostream& err) {
  // One degree beyond N so every identity holds exactly on the window N + 1 - d.
  const Index top = s.max_degree + 1;
  const auto base = s.base(top);
  const auto levels = build_all_levels(base, s.geronimus, top);
  const auto sequences = level_sequences(levels);
  const auto j_levels = recurrence_matrices(sequences);
  const auto chain = s.chain_input ? io::chain_from_json(io::read_json_file(*s.chain_input))
                                   : build_chain(sequences, s.geronimus.a);
  if (chain.d() != s.d) throw BadShape("chain does not match d");
  const Index window = safe_window(top, s.d);

  json report = {{"d", s.d}, {"N", s.max_degree}, {"window", window}};
  bool pass = true;

  if (s.wants("orthogonality")) {
    json entries = json::array();
    for (const auto& level : levels) {
      const auto r = verify_orthogonality(level.vector, *level.sequence);
      pass = pass && r.passed();
      entries.push_back({{"m", level.m}, {"pass", r.passed()}, {"conditions", r.checks.size()}, {"failures", r.failures()}});
    }
    report["orthogonality"] = entries;
  }

  if (s.wants("band_structure")) {
    json entries = json::array();
    for (Index r = 0; r < s.d; ++r) {
      for (Index q = 1; r + q <= s.d; ++q) {
        json entry = {{"r", r}, {"q", q}, {"pass", true}};
        try {
          make_connection_pair(sequences[static_cast<std::size_t>(r)], sequences[static_cast<std::size_t>(r + q)],
                               s.geronimus.a, r, q);
        } catch (const Error& e) {
          if (exit_code_for(e) != 3) throw;
          entry["pass"] = false;
          entry["error"] = error_json(e);
          pass = false;
        }
        entries.push_back(entry);
      }
    }
    report["band_structure"] = entries;
  }

  std::vector<IdentityReport<Rational>> identities;
  if (s.wants("connection_factorization")) {
    for (const auto& [r, q] : s.pairs) {
      const auto pair = make_connection_pair(sequences[static_cast<std::size_t>(r)],
                                             sequences[static_cast<std::size_t>(r + q)], s.geronimus.a, r, q);
      append(identities, verify_connection_factorization(j_levels[static_cast<std::size_t>(r)],
                                                         j_levels[static_cast<std::size_t>(r + q)], pair,
                                                         s.geronimus.a, window));
    }
  }
  if (s.wants("connection_products")) append(identities, verify_connection_products(sequences, chain, window));
  if (s.wants("chain_factorization")) append(identities, verify_chain_factorization(j_levels, chain, window));
  if (s.wants("u_diagonal")) identities.push_back(verify_u_diagonal(chain, sequences.back(), window));

  json identity_json = json::array();
  for (const auto& r : identities) {
    identity_json.push_back(io::to_json(r));
    pass = pass && r.passed();
  }
  report["identities"] = identity_json;
  report["pass"] = pass;

  io::write_json_file(out / "chain.json", io::to_json(chain));
  json j_json = json::array();
  for (const auto& j : j_levels) j_json.push_back(io::to_json(j));
  io::write_json_file(out / "j_levels.json", j_json);
  io::write_json_file(out / "report.json", report);

  if (!pass) {
    diagnose(err, {{"error", "IdentityFailure"}, {"failed", identity_failures(identities)}});
    return 4;
  }
  return 0;
}

int run_command(const std::string& command, const std::filesystem::path& scenario, Index m,
                const std::filesystem::path& out, std::ostream& err) {
  try {
    const auto s = load_scenario(scenario);
    if (command == "generate") return run_generate(s, out, err);
    if (command == "transform") return run_transform(s, m, out, err);
    if (command == "verify") return run_verify(s, out, err);
    diagnose(err, {{"error", "UsageError"}, {"message", "unknown command '" + command + "'"}});
    return 1;
  } catch (const Error& e) {
    diagnose(err, error_json(e));
    return exit_code_for(e);
  } catch (const nlohmann::json::exception& e) {
    diagnose(err, {{"error", "ParseError"}, {"message", e.what()}});
    return 1;
  } catch (const std::exception& e) {
    diagnose(err, {{"error", "InternalError"}, {"message", e.what()}});
    return 1;
  }
}

}  // namespace dops
