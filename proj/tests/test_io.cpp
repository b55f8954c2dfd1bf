#include "doctest.h"

#include <filesystem>

#include "dops/io.hpp"
#include "dops/scenario.hpp"
#include "support.hpp"

using namespace dops;
using dops::io::json;
using dops::testing::q;
using Q = Rational;

TEST_CASE("rationals are strings") {
  CHECK(io::to_json(q("-3/6")) == json("-1/2"));
  CHECK(io::to_json(Q(4)) == json("4"));
  CHECK(io::rational_from_json(json("10/4")) == q("5/2"));
  CHECK(io::rational_from_json(json(7)) == Q(7));
  CHECK_THROWS_AS(io::rational_from_json(json(0.5)), ParseError);
  CHECK_THROWS_AS(io::rational_from_json(json("1/0")), ParseError);
}

TEST_CASE("sequence, vector and matrices round-trip") {
  const auto inst = testing::regular_instance(307, 2, 8);

  const auto s = io::sequence_from_json(io::to_json(inst.sequences[1]));
  CHECK(s == inst.sequences[1]);
  CHECK(s.source() == inst.sequences[1].source());

  const auto v = io::functional_vector_from_json(io::to_json(inst.base.vector));
  CHECK(v.entries() == inst.base.vector.entries());

  const auto j = io::hessenberg_from_json(io::to_json(inst.j_levels[2]));
  CHECK(j.band() == inst.j_levels[2].band());

  const auto chain = io::chain_from_json(io::to_json(inst.chain));
  CHECK(chain.a == inst.chain.a);
  CHECK(chain.upper.band() == inst.chain.upper.band());
  REQUIRE(chain.d() == 2);
  for (Index m = 1; m <= 2; ++m) CHECK(chain.lower(m).band() == inst.chain.lower(m).band());
}

TEST_CASE("band-compressed layout") {
  const BandedHessenberg<Q> j(1, {{q("1")}, {q("2"), q("3")}, {q("4"), q("5")}});
  const auto out = io::to_json(j);
  CHECK(out["kind"] == "hessenberg");
  CHECK(out["size"] == 3);
  CHECK(out["d"] == 1);
  CHECK(out["bands"] == json::parse(R"([["1"], ["2", "3"], ["4", "5"]])"));

  auto bad = out;
  bad["size"] = 4;
  CHECK_THROWS_AS(io::hessenberg_from_json(bad), ParseError);
  bad = out;
  bad["bands"][2][0] = "0";
  CHECK_THROWS_AS(io::hessenberg_from_json(bad), ZeroLowBand);
  bad = out;
  bad["kind"] = "lower_triangular";
  CHECK_THROWS_AS(io::hessenberg_from_json(bad), ParseError);
}

TEST_CASE("report layouts") {
  IdentityReport<Q> r{"J - aI = N L", 4, {{1, 0, Q(2), q("1/2")}}};
  const auto out = io::to_json(r);
  CHECK(out == json::parse(R"({"identity": "J - aI = N L", "window": 4, "pass": false,
                               "mismatches": [{"i": 1, "j": 0, "lhs": "2", "rhs": "1/2"}]})"));

  OrthogonalityReport<Q> o;
  o.checks.push_back({1, 0, 2, ConditionKind::kZero, true, Q(0)});
  CHECK(io::to_json(o) == json::parse(R"([{"j": 1, "m": 0, "n": 2, "kind": "zero", "pass": true, "value": "0"}])"));
}

TEST_CASE("scenario parsing") {
  const auto base = R"({"d": 2, "N": 6, "source": {"hessenberg": {"constant": ["1", "0", "0"]}},
                        "geronimus": {"a": "1/2", "masses": ["1", "3"]}})"_json;
  const auto s = parse_scenario(base, ".");
  CHECK(s.d == 2);
  CHECK(s.max_degree == 6);
  CHECK(s.checks == known_checks());
  const std::vector<std::pair<Index, Index>> pairs = {{0, 1}, {0, 2}, {1, 1}};
  CHECK(s.pairs == pairs);
  CHECK(s.hessenberg(4).entry(3, 2) == Q(1));
  CHECK(s.hessenberg(4).entry(1, 1) == Q(0));

  auto bad = base;
  bad["geronimus"]["masses"] = json::array({"1"});
  CHECK_THROWS_AS(parse_scenario(bad, "."), BadShape);
  bad = base;
  bad["N"] = 3;
  CHECK_THROWS_AS(parse_scenario(bad, "."), BadShape);
  bad = base;
  bad["checks"] = json::array({"everything"});
  CHECK_THROWS_AS(parse_scenario(bad, "."), ParseError);
  bad = base;
  bad.erase("source");
  CHECK_THROWS_AS(parse_scenario(bad, "."), ParseError);
  bad = base;
  bad["N"] = 100000;
  CHECK_THROWS_AS(parse_scenario(bad, "."), BadShape);

  auto d1 = base;
  d1["d"] = 1;
  d1["source"] = R"({"hessenberg": {"constant": ["1", "0"]}})"_json;
  d1["geronimus"]["masses"] = json::array({"1"});
  const std::vector<std::pair<Index, Index>> d1_pairs = {{0, 1}};
  CHECK(parse_scenario(d1, ".").pairs == d1_pairs);
}

TEST_CASE("random sources are reproducible and prefix-stable") {
  const auto j = R"({"d": 3, "N": 8, "seed": 5, "source": {"hessenberg": "random"}, "recombination": "random",
                     "geronimus": {"a": "0", "masses": ["1", "1", "1"]}})"_json;
  const auto a = parse_scenario(j, ".");
  const auto b = parse_scenario(j, ".");
  CHECK(a.hessenberg(12).band() == b.hessenberg(12).band());
  CHECK(a.hessenberg(15).band().to_dense(12) == a.hessenberg(12).band().to_dense(12));
  REQUIRE(a.recombination.has_value());
  CHECK(*a.recombination == *b.recombination);
}
