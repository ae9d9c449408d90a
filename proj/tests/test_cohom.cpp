#include "doctest.h"

#include <random>

#include "blockcalc/cohom.hpp"
#include "blockcalc/errors.hpp"

using namespace blockcalc;
using namespace blockcalc::cohom;

namespace {

CoefficientBasis q_basis() { return CoefficientBasis{2, {Rat(2), Rat(3), Rat(5)}}; }

// C2 cocycle with c(s,s) = v, all other entries 1.
Cocycle2 c2_cocycle(const CoefficientBasis& basis, const MultiplicativeValue& v) {
  Cocycle2 c;
  c.group = FiniteGroup::cyclic(2);
  c.basis = basis;
  c.table.assign(2, std::vector<MultiplicativeValue>(2, mv_one(basis)));
  c.table[1][1] = v;
  return c;
}

// Random normalized 1-cochain over the given basis.
std::vector<MultiplicativeValue> rnd_cochain(std::mt19937& rng, const FiniteGroup& g,
                                             const CoefficientBasis& basis) {
  std::uniform_int_distribution<long> exp(-2, 2);
  std::uniform_int_distribution<long> tor(0, basis.torsion_conductor - 1);
  std::vector<MultiplicativeValue> f(g.order, mv_one(basis));
  for (int i = 1; i < g.order; ++i) {
    f[i].torsion = tor(rng);
    for (auto& e : f[i].exponents) e = exp(rng);
  }
  return f;
}

}  // namespace

TEST_CASE("group table validation") {
  CHECK(FiniteGroup::cyclic(4).inv(1) == 3);
  // non-associative table
  std::vector<std::vector<int>> bad{{0, 1, 2}, {1, 0, 0}, {2, 0, 0}};
  CHECK_THROWS_AS(FiniteGroup::from_table(bad), CocycleInvalid);
  // identity not at 0
  CHECK_THROWS_AS(FiniteGroup::from_table({{1, 0}, {0, 1}}), CocycleInvalid);
}

TEST_CASE("multiplicative values") {
  auto basis = q_basis();
  MultiplicativeValue six{0, {1, 1, 0}};
  CHECK(mv_to_rational(basis, six) == Rat(6));
  MultiplicativeValue minus_half{1, {-1, 0, 0}};
  CHECK(mv_to_rational(basis, minus_half) == Rat(-1, 2));
  CHECK(mv_from_rational(basis, Rat(-45, 4)) == MultiplicativeValue{1, {-2, 2, 1}});
  CHECK_THROWS_AS(mv_from_rational(basis, Rat(7)), CoefficientBasisTooSmall);
  CHECK(mv_mul(basis, six, minus_half) == MultiplicativeValue{1, {0, 1, 0}});
  CHECK(mv_to_rational(basis, mv_inv(basis, minus_half)) == Rat(-2));
}

TEST_CASE("is_cocycle") {
  auto basis = q_basis();
  CHECK(is_cocycle(c2_cocycle(basis, mv_one(basis))).ok);
  CHECK(is_cocycle(c2_cocycle(basis, mv_from_rational(basis, Rat(2)))).ok);
  // broken normalization: c(s,1) = 2
  Cocycle2 bad = c2_cocycle(basis, mv_one(basis));
  bad.table[1][0] = mv_from_rational(basis, Rat(2));
  auto v = is_cocycle(bad);
  CHECK(!v.ok);
  CHECK(v.sigma == 1);
  CHECK(v.tau == 0);
}

TEST_CASE("coboundary_of") {
  auto basis = q_basis();
  auto g = FiniteGroup::cyclic(2);
  std::vector<MultiplicativeValue> f{mv_one(basis), mv_from_rational(basis, Rat(2))};
  Cocycle2 c = coboundary_of(g, basis, f);
  CHECK(mv_to_rational(basis, c.at(1, 1)) == Rat(4));
  CHECK(mv_to_rational(basis, c.at(0, 1)) == Rat(1));
  f[1] = mv_from_rational(basis, Rat(-1));
  CHECK(mv_to_rational(basis, coboundary_of(g, basis, f).at(1, 1)) == Rat(1));
  CHECK(is_cocycle(c).ok);
}

TEST_CASE("class_order") {
  auto basis = q_basis();
  SUBCASE("trivial cocycle") {
    auto r = class_order(c2_cocycle(basis, mv_one(basis)));
    CHECK(r.m == 1);
    CHECK(r.witness[1] == mv_one(basis));
  }
  SUBCASE("c(s,s)=2 has order 2 with witness d(s)=2") {
    auto r = class_order(c2_cocycle(basis, mv_from_rational(basis, Rat(2))));
    CHECK(r.m == 2);
    CHECK(mv_to_rational(basis, r.witness[1]) == Rat(2));
  }
  SUBCASE("c(s,s)=4 is a coboundary of d(s)=2") {
    auto r = class_order(c2_cocycle(basis, mv_from_rational(basis, Rat(4))));
    CHECK(r.m == 1);
    CHECK(mv_to_rational(basis, r.witness[1]) == Rat(2));
  }
  SUBCASE("coboundaries have class order 1") {
    std::mt19937 rng(3);
    for (auto g : {FiniteGroup::cyclic(3), FiniteGroup::cyclic(4),
                   FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2))}) {
      for (int it = 0; it < 20; ++it) {
        auto f = rnd_cochain(rng, g, basis);
        CHECK(class_order(coboundary_of(g, basis, f)).m == 1);
      }
    }
  }
}

TEST_CASE("split_cocycle") {
  auto basis = q_basis();
  SUBCASE("trivial cocycle splits by 1") {
    auto beta = split_cocycle(c2_cocycle(basis, mv_one(basis)), 8);
    CHECK(cyclo::eq(beta.values[1], cyclo::from_rational(Rat(1))));
  }
  SUBCASE("c(s,s)=2 at W=8 gives beta(s) = sqrt(2)") {
    auto c = c2_cocycle(basis, mv_from_rational(basis, Rat(2)));
    auto beta = split_cocycle(c, 8);
    CHECK(cyclo::eq(beta.values[1], cyclo::add(cyclo::zeta(8, 1), cyclo::zeta(8, 7))));
    CHECK(splits_cocycle(beta, c));
  }
  SUBCASE("c(s,s)=2 at W=4 is rejected") {
    auto c = c2_cocycle(basis, mv_from_rational(basis, Rat(2)));
    CHECK_THROWS_AS(split_cocycle(c, 4), InsufficientCoefficients);
  }
  SUBCASE("round trip on random coboundaries") {
    std::mt19937 rng(17);
    CoefficientBasis b{2, {Rat(2), Rat(3), Rat(5)}};
    for (auto g : {FiniteGroup::cyclic(2), FiniteGroup::cyclic(6),
                   FiniteGroup::direct_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(4))}) {
      for (int it = 0; it < 10; ++it) {
        auto f = rnd_cochain(rng, g, b);
        Cocycle2 c = coboundary_of(g, b, f);
        auto beta = split_cocycle(c, 8);
        CHECK(splits_cocycle(beta, c));
      }
    }
  }
}

TEST_CASE("epsilon_character") {
  auto basis = q_basis();
  auto g = FiniteGroup::cyclic(2);
  auto c = c2_cocycle(basis, mv_from_rational(basis, Rat(2)));
  auto beta = split_cocycle(c, 8);

  SUBCASE("trivial inputs give the trivial character") {
    auto triv = c2_cocycle(basis, mv_one(basis));
    auto b0 = split_cocycle(triv, 8);
    auto eps = epsilon_character(b0, 1, class_order(triv).witness, basis);
    CHECK(eps.order() == 1);
  }
  SUBCASE("witness d(s)=2 gives the trivial character") {
    auto eps = epsilon_character(beta, 2, class_order(c).witness, basis);
    CHECK(eps.order() == 1);
  }
  SUBCASE("witness d(s)=-2 gives a character of order 2") {
    std::vector<MultiplicativeValue> d{mv_one(basis), mv_from_rational(basis, Rat(-2))};
    auto eps = epsilon_character(beta, 2, d, basis);
    CHECK(eps.order() == 2);
    CHECK(eps.values[1] == cyclo::RootOfUnity(2, 1));
  }
  SUBCASE("inconsistent witness is rejected") {
    std::vector<MultiplicativeValue> d{mv_one(basis), mv_from_rational(basis, Rat(3))};
    CHECK_THROWS_AS(epsilon_character(beta, 2, d, basis), NotACharacter);
  }
}

TEST_CASE("adjust_splitting_map") {
  auto basis = q_basis();
  auto c = c2_cocycle(basis, mv_from_rational(basis, Rat(2)));
  auto beta = split_cocycle(c, 8);
  auto cls = class_order(c);  // m=2, d(s)=2, r=1

  SUBCASE("n=1 returns the input") {
    auto adj = adjust_splitting_map(beta, c, 1, cls.m, cls.witness);
    CHECK(!adj.extended);
    CHECK(adj.beta.group.order == 2);
  }
  SUBCASE("r=1, n=4: chi of order 8, eps order 4, zeta_4 in E_beta") {
    auto adj = adjust_splitting_map(beta, c, 4, cls.m, cls.witness);
    CHECK(adj.extended);
    CHECK(adj.chi_order == 8);
    CHECK(adj.epsilon.order() == 4);
    auto info = splitting_field_of(adj.beta);
    // E_beta = Q(sqrt2, zeta_8) here; zeta_4 is inside.
    auto z4 = cyclo::embed(cyclo::zeta(4), info.conductor);
    for (long a : info.fixing_subgroup) CHECK(cyclo::eq(cyclo::galois_act(a, z4), z4));
  }
  SUBCASE("r=2 (d=-2), n=4: chi of order 4, zeta_4 in E_beta") {
    std::vector<MultiplicativeValue> d{mv_one(basis), mv_from_rational(basis, Rat(-2))};
    auto adj = adjust_splitting_map(beta, c, 4, cls.m, d);
    CHECK(adj.extended);
    CHECK(adj.chi_order == 4);
    auto info = splitting_field_of(adj.beta);
    auto z4 = cyclo::embed(cyclo::zeta(4), info.conductor);
    for (long a : info.fixing_subgroup) CHECK(cyclo::eq(cyclo::galois_act(a, z4), z4));
    // E_beta = Q(sqrt2, i), degree 4
    CHECK(info.degree == 4);
  }
  SUBCASE("postcondition zeta_n in E_beta over randomized order-2 cocycles") {
    std::mt19937 rng(23);
    std::uniform_int_distribution<int> pick(0, 2);
    for (int it = 0; it < 20; ++it) {
      Rat v = std::vector<Rat>{Rat(2), Rat(3), Rat(10)}[pick(rng)];
      auto cc = c2_cocycle(basis, mv_from_rational(basis, v));
      auto cl = class_order(cc);
      if (cl.m != 2) continue;
      auto b = split_cocycle(cc, 120);
      for (long n : {2L, 3L, 4L, 6L}) {
        auto adj = adjust_splitting_map(b, cc, n, cl.m, cl.witness);
        auto info = splitting_field_of(adj.beta);
        long cond = cyclo::lcm_long(info.conductor, n);
        auto zn = cyclo::embed(cyclo::zeta(n), cond);
        auto info2 = cyclo::generated_subfield(adj.beta.values, cond);
        for (long a : info2.fixing_subgroup) CHECK(cyclo::eq(cyclo::galois_act(a, zn), zn));
      }
    }
  }
}

TEST_CASE("splitting_field_of") {
  auto basis = q_basis();
  auto triv = c2_cocycle(basis, mv_one(basis));
  CHECK(splitting_field_of(split_cocycle(triv, 1)).degree == 1);
  auto c = c2_cocycle(basis, mv_from_rational(basis, Rat(2)));
  CHECK(splitting_field_of(split_cocycle(c, 8)).degree == 2);
}
