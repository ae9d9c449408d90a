#include "doctest.h"

#include <random>

#include "blockcalc/csa.hpp"
#include "blockcalc/errors.hpp"

using namespace blockcalc;
using namespace blockcalc::csa;

namespace {

// Squarefree integer in the square class of r.
long squarefree_class(const Rat& r) {
  Int s = num(r) * den(r);
  Int out = s < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(s))
    if (e % 2 != 0) out *= p;
  return static_cast<long>(out);
}

// Independent solubility oracle for z^2 = a x^2 + b y^2 over Q_v: exhaustive
// search for primitive solutions modulo p^k (k=3 for odd p, 2^6 at p=2),
// after reducing a, b to squarefree representatives.  A primitive solution
// can be scaled so some coordinate is 1, which keeps the search linear.
bool conic_soluble(const Rat& ar, const Rat& br, const PlaceQ& v) {
  if (v.infinite) return !(ar < 0 && br < 0);
  long p = static_cast<long>(v.prime);
  long a = squarefree_class(ar), b = squarefree_class(br);
  long m = p == 2 ? 64 : p * p * p;
  auto md = [m](long t) { return ((t % m) + m) % m; };
  std::vector<char> sq(m, 0), bsq(m, 0);
  for (long x = 0; x < m; ++x) {
    sq[md(x * x)] = 1;
    bsq[md(b * md(x * x))] = 1;
  }
  for (long y = 0; y < m; ++y)
    if (sq[md(a + b * md(y * y))]) return true;  // x = 1
  for (long x = 0; x < m; ++x) {
    if (sq[md(a * md(x * x) + b)]) return true;  // y = 1
    if (bsq[md(1 - a * md(x * x))]) return true;  // z = 1
  }
  return false;
}

int oracle_symbol(const Rat& a, const Rat& b, const PlaceQ& v) {
  return conic_soluble(a, b, v) ? 1 : -1;
}

}  // namespace

TEST_CASE("hilbert symbol basics") {
  CHECK(hilbert_symbol(Rat(1), Rat(-7), PlaceQ::real()) == 1);
  CHECK(hilbert_symbol(Rat(1), Rat(30), PlaceQ::at(5)) == 1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), PlaceQ::real()) == -1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), PlaceQ::at(2)) == -1);
  CHECK(hilbert_symbol(Rat(-1), Rat(-1), PlaceQ::at(3)) == 1);
  CHECK(hilbert_symbol(Rat(2), Rat(3), PlaceQ::at(3)) == -1);
  CHECK_THROWS_AS(hilbert_symbol(Rat(0), Rat(1), PlaceQ::at(2)), std::invalid_argument);
  CHECK_THROWS_AS(hilbert_symbol(Rat(1), Rat(1), PlaceQ::at(4)), std::invalid_argument);
}

TEST_CASE("hilbert symbol agrees with the solubility oracle") {
  std::vector<PlaceQ> places{PlaceQ::real()};
  for (long p : {2, 3, 5, 7, 11, 13}) places.push_back(PlaceQ::at(p));
  for (long a = -10; a <= 10; ++a) {
    if (a == 0) continue;
    for (long b = -10; b <= 10; ++b) {
      if (b == 0) continue;
      for (const auto& v : places) {
        CAPTURE(a);
        CAPTURE(b);
        CAPTURE(place_name(v));
        CHECK(hilbert_symbol(Rat(a), Rat(b), v) == oracle_symbol(Rat(a), Rat(b), v));
      }
    }
  }
  // a few non-integral inputs
  for (auto [a, b] : std::vector<std::pair<Rat, Rat>>{{Rat(1, 2), Rat(-3)},
                                                      {Rat(-5, 6), Rat(7, 10)},
                                                      {Rat(9, 4), Rat(-2, 3)}})
    for (const auto& v : places) CHECK(hilbert_symbol(a, b, v) == oracle_symbol(a, b, v));
}

TEST_CASE("hilbert reciprocity") {
  std::mt19937 rng(41);
  std::vector<long> ps{2, 3, 5, 7, 11, 13, 17, 19, 23, 29};
  std::uniform_int_distribution<int> exp(-2, 2);
  std::uniform_int_distribution<int> sgn(0, 1);
  for (int it = 0; it < 100; ++it) {
    Rat a(sgn(rng) ? 1 : -1), b(sgn(rng) ? 1 : -1);
    for (long p : ps) {
      int ea = exp(rng), eb = exp(rng);
      for (int i = 0; i < std::abs(ea); ++i) a *= ea > 0 ? Rat(p) : Rat(1, p);
      for (int i = 0; i < std::abs(eb); ++i) b *= eb > 0 ? Rat(p) : Rat(1, p);
    }
    int prod = hilbert_symbol(a, b, PlaceQ::real());
    for (long p : ps) prod *= hilbert_symbol(a, b, PlaceQ::at(p));
    CHECK(prod == 1);
  }
}

TEST_CASE("ramification data") {
  auto r0 = ramification_data(QuaternionAlgebraQ(Rat(1), Rat(1)));
  CHECK(r0.ramified.empty());
  CHECK(r0.schur_index == 1);

  auto rh = ramification_data(QuaternionAlgebraQ(Rat(-1), Rat(-1)));
  CHECK(rh.ramified == std::set<PlaceQ>{PlaceQ::real(), PlaceQ::at(2)});
  CHECK(rh.schur_index == 2);

  auto r3 = ramification_data(QuaternionAlgebraQ(Rat(-1), Rat(3)));
  CHECK(r3.ramified == std::set<PlaceQ>{PlaceQ::at(2), PlaceQ::at(3)});
  CHECK(r3.schur_index == 2);
  // cross-check every reported place against the oracle
  for (const auto& v : r3.ramified) CHECK(!conic_soluble(Rat(-1), Rat(3), v));

  // random algebras never trip the parity guard
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> pick(-30, 30);
  for (int it = 0; it < 50; ++it) {
    long a = pick(rng), b = pick(rng);
    if (a == 0 || b == 0) continue;
    CHECK(ramification_data(QuaternionAlgebraQ(Rat(a), Rat(b))).ramified.size() % 2 == 0);
  }
}

TEST_CASE("abelian field specs") {
  auto q5 = AbelianFieldSpec::cyclotomic(5);
  CHECK(q5.degree() == 4);
  CHECK(q5.is_cyclic());

  auto q8 = AbelianFieldSpec::cyclotomic(8);
  CHECK(q8.degree() == 4);
  CHECK(!q8.is_cyclic());

  auto s2 = AbelianFieldSpec::from_generators(8, {7});  // Q(sqrt 2)
  CHECK(s2.subgroup == std::vector<long>{1, 7});
  CHECK(s2.degree() == 2);
  CHECK(s2.is_cyclic());
  CHECK(s2.contains(-1));
  CHECK(!s2.contains(3));

  CHECK(AbelianFieldSpec::cyclotomic(1).degree() == 1);
  CHECK_THROWS_AS(AbelianFieldSpec::from_generators(8, {6}), std::invalid_argument);
}

TEST_CASE("local degrees of abelian fields") {
  auto q5 = AbelianFieldSpec::cyclotomic(5);
  CHECK(local_degree_in_abelian(PlaceQ::at(3), q5) == 4);   // 3 has order 4 mod 5
  CHECK(local_degree_in_abelian(PlaceQ::at(7), q5) == 4);
  CHECK(local_degree_in_abelian(PlaceQ::at(11), q5) == 1);  // 11 = 1 mod 5 splits
  CHECK(local_degree_in_abelian(PlaceQ::at(19), q5) == 2);
  CHECK(local_degree_in_abelian(PlaceQ::at(5), q5) == 4);   // totally ramified
  CHECK(local_degree_in_abelian(PlaceQ::real(), q5) == 2);

  auto qi = AbelianFieldSpec::cyclotomic(4);
  CHECK(local_degree_in_abelian(PlaceQ::at(2), qi) == 2);
  CHECK(local_degree_in_abelian(PlaceQ::real(), qi) == 2);
  CHECK(local_degree_in_abelian(PlaceQ::at(5), qi) == 1);

  auto s2 = AbelianFieldSpec::from_generators(8, {7});  // real quadratic
  CHECK(local_degree_in_abelian(PlaceQ::real(), s2) == 1);
  CHECK(local_degree_in_abelian(PlaceQ::at(2), s2) == 2);
  CHECK(local_degree_in_abelian(PlaceQ::at(7), s2) == 1);  // 7 in H: split
}

TEST_CASE("splitting fields") {
  QuaternionAlgebraQ ham(Rat(-1), Rat(-1));
  CHECK(min_cyclotomic_splitting(QuaternionAlgebraQ(Rat(1), Rat(1))) == 1);
  CHECK(!splits(ham, AbelianFieldSpec::cyclotomic(1)));
  CHECK(!splits(ham, AbelianFieldSpec::cyclotomic(2)));
  CHECK(splits(ham, AbelianFieldSpec::cyclotomic(3)));
  CHECK(min_cyclotomic_splitting(ham) == 3);
  CHECK(min_cyclotomic_splitting(QuaternionAlgebraQ(Rat(-1), Rat(-3))) == 3);
  // real quadratic field cannot kill the infinite place
  CHECK(!splits(ham, AbelianFieldSpec::from_generators(8, {7})));
  // monotone under extension: Q(zeta_3) inside Q(zeta_12)
  CHECK(splits(ham, AbelianFieldSpec::cyclotomic(12)));
  CHECK_THROWS_AS(min_cyclotomic_splitting(ham, 2), SearchBoundExceeded);
}

TEST_CASE("grunwald-wang search") {
  SUBCASE("degree 1") { CHECK(grunwald_wang_search({}, 1).degree() == 1); }
  SUBCASE("quadratic with local degree 2 at p=2 and the real place") {
    std::vector<LocalDegreeConstraint> cs{{PlaceQ::at(2), 2}, {PlaceQ::real(), 2}};
    auto k = grunwald_wang_search(cs, 2);
    CHECK(k.degree() == 2);
    CHECK(k.is_cyclic());
    for (const auto& c : cs) CHECK(local_degree_in_abelian(c.place, k) % c.required_divisor == 0);
  }
  SUBCASE("cyclic quartic with local degree 4 at p=3") {
    std::vector<LocalDegreeConstraint> cs{{PlaceQ::at(3), 4}};
    auto k = grunwald_wang_search(cs, 4);
    CHECK(k.degree() == 4);
    CHECK(k.is_cyclic());
    CHECK(local_degree_in_abelian(PlaceQ::at(3), k) % 4 == 0);
  }
  SUBCASE("precondition failures") {
    CHECK_THROWS_AS(grunwald_wang_search({{PlaceQ::real(), 4}}, 4), std::invalid_argument);
    CHECK_THROWS_AS(grunwald_wang_search({{PlaceQ::at(3), 4}}, 2), std::invalid_argument);
  }
  SUBCASE("bounded search reports exhaustion") {
    CHECK_THROWS_AS(grunwald_wang_search({{PlaceQ::at(2), 2}}, 2, 2), SearchBoundExceeded);
  }
}
