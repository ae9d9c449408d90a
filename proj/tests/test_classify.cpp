#include "doctest.h"

#include "blockcalc/classify.hpp"
#include "blockcalc/errors.hpp"

using namespace blockcalc;
using namespace blockcalc::classify;

TEST_CASE("gl2-type test") {
  CHECK(is_gl2_type({2, 1, 2}));
  CHECK(!is_gl2_type({2, 2, 1}));
  CHECK(is_gl2_type({4, 2, 4}));
}

TEST_CASE("building block check") {
  CHECK(building_block_check({1, 2, AlbertType::III, true, 2}));
  CHECK(!building_block_check({1, 3, AlbertType::IV, false, 3}));  // t <= 2 fails
  CHECK(building_block_check({2, 1, AlbertType::I, true, 2}));
  CHECK(!building_block_check({2, 2, AlbertType::II, true, 2}));  // tf != dim B
}

TEST_CASE("datum validation") {
  CHECK_THROWS_AS(validate({0, 1, AlbertType::I, true, 1}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1, 2, AlbertType::I, true, 2}), std::invalid_argument);
  CHECK_THROWS_AS(validate({1, 2, AlbertType::II, false, 2}), std::invalid_argument);
  CHECK_NOTHROW(validate({1, 2, AlbertType::II, true, 2}));
  CHECK(albert_from_string("III") == AlbertType::III);
  CHECK_THROWS_AS(albert_from_string("V"), std::invalid_argument);
}

TEST_CASE("dimension bookkeeping") {
  EndomorphismDatum ham{1, 2, AlbertType::III, true, 2};
  auto s2 = dimension_bookkeeping(ham, 2);
  CHECK(s2.dim_a == 2);
  CHECK(s2.n == 1);
  CHECK(s2.field_degree == 2);
  auto s4 = dimension_bookkeeping(ham, 4);
  CHECK(s4.dim_a == 4);
  CHECK(s4.n == 2);
  auto e = dimension_bookkeeping({1, 1, AlbertType::I, true, 1}, 1);
  CHECK(e.dim_a == 1);
  CHECK(e.n == 1);
  CHECK_THROWS_AS(dimension_bookkeeping(ham, 3), IndivisibleMultiplicity);

  // consistency sweep: every building-block datum yields a gl2-type shape
  for (long f = 1; f <= 4; ++f)
    for (long t = 1; t <= 2; ++t)
      for (long ne = t; ne <= 8; ne += t) {
        EndomorphismDatum d{f, t, t == 1 ? AlbertType::I : AlbertType::II, true, t * f};
        CHECK(building_block_check(d));
        auto s = dimension_bookkeeping(d, ne);
        CHECK(is_gl2_type(s));
        CHECK(s.dim_a == s.n * d.dim_b);
      }
}

TEST_CASE("factor pattern filter") {
  auto p2 = factor_pattern_filter(2);
  REQUIRE(p2.size() == 2);
  CHECK(p2[0].conclusion == "excluded: CM");
  CHECK(p2[1].conclusion == "admissible");

  auto p4 = factor_pattern_filter(4);
  CHECK(p4[0].conclusion == "inadmissible");
  CHECK(p4[1].conclusion == "excluded: CM");
  CHECK(p4[2].conclusion == "inadmissible");
  CHECK(p4[3].conclusion == "admissible");

  CHECK(factor_pattern_filter(1)[0].conclusion == "admissible");

  // exactly one admissible pattern, always
  for (long d = 1; d <= 12; ++d) {
    int adm = 0;
    for (const auto& p : factor_pattern_filter(d)) adm += p.conclusion == "admissible";
    CHECK(adm == 1);
  }
}

TEST_CASE("albert filter") {
  EndomorphismDatum t1{1, 1, AlbertType::I, true, 1};
  EndomorphismDatum t2{1, 2, AlbertType::II, true, 2};
  EndomorphismDatum t3{1, 2, AlbertType::III, true, 2};
  EndomorphismDatum t4{2, 1, AlbertType::IV, false, 2};

  CHECK(albert_filter(t2, true).accepted);
  CHECK(!albert_filter(t2, true).flagged);
  CHECK(!albert_filter(t3, true).accepted);
  CHECK(albert_filter(t3, true).reason == "isogenous to the square of a CM abelian variety");
  CHECK(!albert_filter(t4, true).accepted);
  CHECK(albert_filter(t4, true).reason == "non-real trace values");
  CHECK(albert_filter(t3, false).accepted);
  CHECK(albert_filter(t3, false).flagged);
  CHECK(albert_filter(t4, false).accepted);
  CHECK(albert_filter(t4, false).flagged);

  // monotone: rejection without a real embedding implies rejection with one
  for (const auto& d : {t1, t2, t3, t4})
    for (bool real : {false}) {
      (void)real;
      if (!albert_filter(d, false).accepted) CHECK(!albert_filter(d, true).accepted);
    }

  EndomorphismDatum bad_center{1, 2, AlbertType::II, false, 2};
  CHECK(!albert_filter(bad_center, true).accepted);
  CHECK(!albert_filter(bad_center, false).accepted);
}
