#include "doctest.h"

#include "blockcalc/errors.hpp"
#include "blockcalc/pipeline.hpp"

using namespace blockcalc;
using namespace blockcalc::pipeline;

namespace {

const char* kTrivial = R"({
  "group": {"order": 1, "table": [[0]]},
  "basis": ["-1"],
  "cocycle": [[{"torsion": 0, "exponents": []}]],
  "algebra": {"a": 1, "b": 1},
  "flags": {"k_has_real_embedding": true, "albert_type": "I", "f": 1, "t": 1, "dim_B": 1}
})";

const char* kHamilton = R"({
  "group": {"order": 2, "table": [[0, 1], [1, 0]]},
  "basis": ["-1", "2", "3"],
  "cocycle": [
    [{"torsion": 0, "exponents": [0, 0]}, {"torsion": 0, "exponents": [0, 0]}],
    [{"torsion": 0, "exponents": [0, 0]}, {"torsion": 0, "exponents": [1, 0]}]
  ],
  "algebra": {"a": -1, "b": -1},
  "flags": {"k_has_real_embedding": false, "albert_type": "III", "f": 1, "t": 2, "dim_B": 2}
})";

}  // namespace

TEST_CASE("datum parsing") {
  CHECK_NOTHROW(parse_datum(kTrivial));
  CHECK_NOTHROW(parse_datum(kHamilton));

  SUBCASE("malformed json") { CHECK_THROWS_AS(parse_datum("{"), SchemaError); }
  SUBCASE("non-associative table") {
    std::string bad = kHamilton;
    auto pos = bad.find("[[0, 1], [1, 0]]");
    bad.replace(pos, 16, "[[0, 1], [1, 1]]");
    CHECK_THROWS_AS(parse_datum(bad), SchemaError);
  }
  SUBCASE("broken cocycle normalization") {
    std::string row = "[{\"torsion\": 0, \"exponents\": [0, 0]}, {\"torsion\": 0, \"exponents\": [1, 0]}]";
    std::string bad = kHamilton;
    bad.replace(bad.find(row), row.size(),
                "[{\"torsion\": 0, \"exponents\": [1, 0]}, {\"torsion\": 0, \"exponents\": [1, 0]}]");
    CHECK_THROWS_AS(parse_datum(bad), CocycleInvalid);
  }
  SUBCASE("declared t contradicts ramification") {
    std::string bad = kHamilton;
    auto pos = bad.find("\"t\": 2");
    bad.replace(pos, 6, "\"t\": 1");
    CHECK_THROWS_AS(parse_datum(bad), SchemaError);
  }
  SUBCASE("basis entries must be primes") {
    std::string bad = kHamilton;
    auto pos = bad.find("\"2\", \"3\"");
    bad.replace(pos, 8, "\"2\", \"6\"");
    CHECK_THROWS_AS(parse_datum(bad), SchemaError);
  }
  SUBCASE("explicit ramification list") {
    std::string alt = kHamilton;
    auto pos = alt.find("\"algebra\": {\"a\": -1, \"b\": -1}");
    alt.replace(pos, 29, "\"ramified\": [\"2\", \"inf\"]");
    auto d = parse_datum(alt);
    CHECK(d.ramification.schur_index == 2);
    CHECK(!d.algebra.has_value());
  }
  SUBCASE("odd ramification list is rejected") {
    std::string alt = kHamilton;
    auto pos = alt.find("\"algebra\": {\"a\": -1, \"b\": -1}");
    alt.replace(pos, 29, "\"ramified\": [\"2\"]");
    CHECK_THROWS_AS(parse_datum(alt), SchemaError);
  }
}

TEST_CASE("trivial datum pipeline") {
  auto r = run_pipeline(parse_datum(kTrivial));
  CHECK(r.m == 1);
  CHECK(r.m_cyc == 1);
  CHECK(r.t == 1);
  CHECK(r.e_beta_degree == 1);
  CHECK(r.splits_verdict);
  CHECK(r.descent_ok);
  CHECK(r.double_centralizer_ok);
  CHECK(r.dim_a == 1);
  CHECK(r.n == 1);
  CHECK(r.building_block);
  CHECK(r.gl2_type);
  CHECK(emit_report(r, "json").find("\"class_order\": 1") != std::string::npos);
}

TEST_CASE("hamilton datum pipeline") {
  auto r = run_pipeline(parse_datum(kHamilton));
  CHECK(r.ramified_places == std::vector<std::string>{"2", "inf"});
  CHECK(r.t == 2);
  CHECK(r.m_cyc == 3);
  CHECK(r.m == 2);
  CHECK(r.witness_d == std::vector<std::string>{"1", "2"});
  CHECK(r.e_beta_degree == 4);
  CHECK(r.splits_verdict);
  CHECK(r.descent_ok);
  CHECK(r.double_centralizer_ok);
  CHECK(r.dim_a == 4);
  CHECK(r.n == 2);
  CHECK(r.field_degree == 4);
  CHECK(r.building_block);
  CHECK(r.gl2_type);
  CHECK(r.albert.accepted);
  CHECK(r.albert.flagged);

  std::string js = emit_report(r, "json");
  CHECK(js.find("\"E_beta_degree\": 4") != std::string::npos);
  CHECK(js.find("\"gl2_type\": true") != std::string::npos);

  // byte-stable across runs
  auto r2 = run_pipeline(parse_datum(kHamilton));
  CHECK(emit_report(r2, "json") == js);

  std::string human = emit_report(r, "human");
  CHECK(human.find("GL2-type") != std::string::npos);
  CHECK_THROWS_AS(emit_report(r, "yaml"), std::invalid_argument);
}
