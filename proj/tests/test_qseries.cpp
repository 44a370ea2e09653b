#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcong/level1.hpp"
#include "qcong/qseries.hpp"

#include <random>

using namespace qcong;

namespace {

QExpansion series(CoeffRing ring, long lowest, std::vector<long> c) {
  std::vector<Rat> v(c.size());
  for (size_t i = 0; i < c.size(); ++i) v[i] = Rat(c[i]);
  return QExpansion(ring, lowest, std::move(v));
}

QExpansion random_series(std::mt19937& rng, CoeffRing ring, long lowest, long precision) {
  std::uniform_int_distribution<long> d(-9, 9);
  std::vector<Rat> v(static_cast<size_t>(precision - lowest));
  for (auto& x : v) x = Rat(d(rng));
  return QExpansion(ring, lowest, std::move(v));
}

}  // namespace

TEST_CASE("add follows the min-precision rule") {
  auto Z = CoeffRing::integers();
  auto a = series(Z, 0, {1, 1});
  auto b = series(Z, 0, {-1, -1});
  CHECK(add(a, b).is_zero());
  auto c = add(series(Z, 0, {0, 1, 0}), series(Z, 0, {0, 0, 1}));
  CHECK(c.coeff(1) == 1);
  CHECK(c.coeff(2) == 1);
  auto p10 = QExpansion::zero(Z, 10);
  auto p5 = QExpansion::zero(Z, 5);
  CHECK(add(p10, p5).precision() == 5);
}

TEST_CASE("mul: Cauchy product and Laurent indices") {
  auto Z = CoeffRing::integers();
  auto prod = mul(series(Z, 0, {1, 1}), series(Z, 0, {1, -1}));
  CHECK(prod.coeff(0) == 1);
  CHECK(prod.coeff(1) == 0);
  CHECK_THROWS_AS(prod.coeff(2), InsufficientPrecision);  // precision 2: q^2 unknown

  auto qinv = QExpansion::monomial(Z, Rat(1), -1, 2);
  auto q = QExpansion::monomial(Z, Rat(1), 1, 3);
  auto one = mul(qinv, q);
  CHECK(one.coeff(0) == 1);
  CHECK(*ord_q(one) == 0);

  auto e4 = eisenstein(4, 3).q;
  auto sq = mul(e4, e4);
  CHECK(sq.coeff(0) == 1);
  CHECK(sq.coeff(1) == 480);
  CHECK(sq.coeff(2) == 61920);
}

TEST_CASE("verschiebung") {
  auto Z = CoeffRing::integers();
  auto f = series(Z, 0, {0, 1, 1});  // q + q^2
  auto v = verschiebung(f, 2);
  CHECK(v.coeff(2) == 1);
  CHECK(v.coeff(4) == 1);
  CHECK(v.coeff(1) == 0);
  CHECK(v.coeff(3) == 0);
  auto c = verschiebung(QExpansion::constant(Z, Rat(1), 4), 3);
  CHECK(c.coeff(0) == 1);
  CHECK(c.precision() == 12);
  auto e4 = verschiebung(eisenstein(4, 3).q, 2);
  CHECK(e4.precision() >= 5);
  CHECK(e4.coeff(0) == 1);
  CHECK(e4.coeff(2) == 240);
  CHECK(e4.coeff(4) == 2160);
  CHECK(e4.coeff(1) == 0);
  CHECK(e4.coeff(3) == 0);
}

TEST_CASE("ord_q") {
  CHECK(*ord_q(delta(4).q) == 1);
  auto d2 = mul(delta(4).q, delta(4).q);
  CHECK(*ord_q(d2) == 2);
  CHECK_FALSE(ord_q(QExpansion::zero(CoeffRing::integers(), 6)).has_value());
}

TEST_CASE("reduce_mod") {
  auto e4 = reduce_mod(eisenstein(4, 6).q, 5, 1);
  for (long i = 1; i < 6; ++i) CHECK(e4.coeff(i) == 0);
  CHECK(e4.coeff(0) == 1);

  auto f = series(CoeffRing::rationals(), 0, {0, 1, -24});
  auto g = reduce_mod(f, 5, 2);
  CHECK(g.coeff(1) == 1);
  CHECK(g.coeff(2) == 1);  // -24 = 1 mod 25

  auto bad = QExpansion(CoeffRing::rationals(), 0, {Rat(1, 30)});
  try {
    reduce_mod(bad, 5, 1);
    FAIL("expected NonIntegralCoefficient");
  } catch (const NonIntegralCoefficient& e) {
    CHECK(e.index == 0);
  }
}

TEST_CASE("equality is only claimed up to stated precision") {
  auto Z = CoeffRing::integers();
  auto a = series(Z, 0, {1, 2, 3});
  auto b = series(Z, 0, {1, 2});
  CHECK(equal_to_precision(a, b, 2));
  CHECK_THROWS_AS(equal_to_precision(a, b, 3), InsufficientPrecision);
}

TEST_CASE("ring mismatch is rejected") {
  auto a = QExpansion::constant(CoeffRing::integers(), Rat(1), 3);
  auto b = QExpansion::constant(CoeffRing::residue(5, 1), Rat(1), 3);
  CHECK_THROWS_AS(add(a, b), RingMismatch);
  CHECK_THROWS_AS(mul(a, b), RingMismatch);
}

TEST_CASE("algebraic properties on sampled series") {
  std::mt19937 rng(77);
  auto Z = CoeffRing::integers();
  for (int trial = 0; trial < 40; ++trial) {
    auto a = random_series(rng, Z, 0, 8);
    auto b = random_series(rng, Z, 0, 8);
    auto c = random_series(rng, Z, 0, 8);
    long N = mul(a, b).precision();
    CHECK(equal_to_precision(mul(a, b), mul(b, a), N));
    long N3 = mul(mul(a, b), c).precision();
    CHECK(equal_to_precision(mul(mul(a, b), c), mul(a, mul(b, c)), N3));
    CHECK(equal_to_precision(mul(a, add(b, c)), add(mul(a, b), mul(a, c)), N));

    // verschiebung is a ring homomorphism
    for (long ell : {2L, 3L}) {
      CHECK(equal_to_precision(verschiebung(mul(a, b), ell), mul(verschiebung(a, ell), verschiebung(b, ell)),
                               ell * N - 2));
      CHECK(equal_to_precision(verschiebung(add(a, b), ell), add(verschiebung(a, ell), verschiebung(b, ell)),
                               ell * 8 - 2));
    }

    // reduction commutes with multiplication
    auto am = reduce_mod(a, 5, 2), bm = reduce_mod(b, 5, 2);
    CHECK(equal_to_precision(reduce_mod(mul(a, b), 5, 2), mul(am, bm), N));

    // ord additivity over the integers
    auto oa = ord_q(a), ob = ord_q(b);
    if (oa && ob && *oa + *ob < N) {
      auto oab = ord_q(mul(a, b));
      REQUIRE(oab.has_value());
      CHECK(*oab == *oa + *ob);
    }
  }
}

TEST_CASE("serialization round trip") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    auto f = random_series(rng, CoeffRing::integers(), -2, 6);
    auto g = QExpansion::parse(f.serialize(), CoeffRing::integers());
    CHECK(g.lowest_index() == f.lowest_index());
    CHECK(g.precision() == f.precision());
    CHECK(equal_to_precision(f, g, f.precision()));
  }
  auto r = QExpansion(CoeffRing::rationals(), 0, {Rat(1, 3), Rat(-2, 7)});
  auto r2 = QExpansion::parse(r.serialize(), CoeffRing::rationals());
  CHECK(r2.coeff(0) == Rat(1, 3));
  CHECK(r2.coeff(1) == Rat(-2, 7));
}
