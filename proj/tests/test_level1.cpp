#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcong/level1.hpp"
#include "qcong/level_ell.hpp"
#include "qcong/numtheory.hpp"
#include "qcong/qseries.hpp"

using namespace qcong;

TEST_CASE("eisenstein expansions") {
  auto e4 = eisenstein(4, 3);
  CHECK(e4.q.coeff(0) == 1);
  CHECK(e4.q.coeff(1) == 240);
  CHECK(e4.q.coeff(2) == 2160);
  auto e6 = eisenstein(6, 2);
  CHECK(e6.q.coeff(1) == -504);
  CHECK_THROWS_AS(eisenstein(3, 5), Error);

  // E_{p-1} = 1 mod p (Hasse invariant reduction)
  auto h = reduce_mod(eisenstein(4, 8).q, 5, 1);
  for (long i = 1; i < 8; ++i) CHECK(h.coeff(i) == 0);
}

TEST_CASE("delta") {
  auto d = delta(4);
  CHECK(d.q.coeff(1) == 1);
  CHECK(d.q.coeff(2) == -24);
  CHECK(d.q.coeff(3) == 252);
  CHECK(*ord_q(d.q) == 1);
  CHECK(d.q.ring().kind == RingKind::Integers);
}

TEST_CASE("classical level-1 identities") {
  long N = 14;
  auto e4 = eisenstein(4, N).q, e6 = eisenstein(6, N).q;
  auto d = delta(N).q;
  // E_4^3 - E_6^2 = 1728 Delta
  auto lhs = sub(mul(mul(e4, e4), e4), mul(e6, e6));
  std::vector<Rat> dd(static_cast<size_t>(N));
  for (long i = 0; i < N; ++i) dd[static_cast<size_t>(i)] = d.coeff(i) * 1728;
  CHECK(equal_to_precision(lhs, QExpansion(CoeffRing::rationals(), 0, dd), N));
  // E_4^2 = E_8, E_4 E_6 = E_10, E_4^2 E_6 = E_14 (to Sturm precision and beyond)
  CHECK(equal_to_precision(mul(e4, e4), eisenstein(8, N).q, N));
  CHECK(equal_to_precision(mul(e4, e6), eisenstein(10, N).q, N));
  CHECK(equal_to_precision(mul(mul(e4, e4), e6), eisenstein(14, N).q, N));
}

TEST_CASE("e_form family") {
  auto e0 = e_form(0, 5, 4);
  CHECK(e0.q.coeff(0) == 1);
  CHECK(e0.q.coeff(1) == 0);
  auto e4 = e_form(4, 5, 2);
  CHECK(e4.q.coeff(0) == 1);
  CHECK(e4.q.coeff(1) == 240);  // k = p-1: exactly E_4
  CHECK_THROWS_AS(e_form(2, 5, 4), Error);

  // leading coefficient 1 and p-integrality across a range
  for (long p : {5L, 7L}) {
    for (long k = 4; k <= 40; k += 2) {
      if (k == 2) continue;
      auto e = e_form(k, p, 8);
      CHECK(e.q.coeff(0) == 1);
      for (long i = 0; i < 8; ++i) CHECK(den(e.q.coeff(i)) % p != 0);
    }
  }

  // e_16 = e_4 mod 7 since 16 = 4 mod 6
  auto a = reduce_mod(e_form(16, 7, 9).q, 7, 1);
  auto b = reduce_mod(e_form(4, 7, 9).q, 7, 1);
  CHECK(equal_to_precision(a, b, 9));

  // congruence family: k1 = k2 mod (p-1)p^{j-1} gives e_{k1} = e_{k2} mod p^j
  for (long p : {5L, 7L}) {
    for (long j = 1; j <= 2; ++j) {
      long step = (p - 1);
      for (long jj = 1; jj < j; ++jj) step *= p;
      for (long k1 = 4; k1 <= 60; k1 += 2) {
        long k2 = k1 + step;
        if (k1 == 2 || k2 == 2 || k2 > 60 + step) continue;
        long N = 8;
        auto f1 = reduce_mod(e_form(k1, p, N).q, p, j);
        auto f2 = reduce_mod(e_form(k2, p, N).q, p, j);
        CHECK(equal_to_precision(f1, f2, N));
      }
    }
  }
}

TEST_CASE("E_{p-1}^{p^{j-1}} = 1 mod p^j") {
  for (long p : {5L, 7L, 11L}) {
    for (long j = 1; j <= 3; ++j) {
      long e = 1;
      for (long i = 1; i < j; ++i) e *= p;
      long w = (p - 1) * e;
      long N = sturm(0, 1) + w / 12 + 1;  // sturm bound for weight w at level 1
      N = w / 12 + 1;
      if (N < 4) N = 4;
      auto E = pow(eisenstein(p - 1, N).q, static_cast<unsigned long>(e), N);
      auto r = reduce_mod(E, p, j);
      CHECK(r.coeff(0) == 1);
      for (long i = 1; i < N; ++i) CHECK(r.coeff(i) == 0);
    }
  }
}

TEST_CASE("echelon bases") {
  auto b12 = basis(12, 0, 5, 6);
  REQUIRE(b12.dimension() == 2);
  CHECK(b12.ords == std::vector<long>{0, 1});
  auto b24 = basis(24, 0, 5, 8);
  REQUIRE(b24.dimension() == 3);
  CHECK(b24.ords == std::vector<long>{0, 1, 2});
  auto b2 = basis(2, 0, 5, 4);
  CHECK(b2.dimension() == 0);
  // weight 26 = 2 mod 12: the ord (t-2)/12 = 2 slot is absent
  auto b26 = basis(26, 0, 5, 8);
  REQUIRE(b26.dimension() == 2);
  CHECK(b26.ords == std::vector<long>{0, 1});

  // meromorphic basis with a simple pole
  auto bm = basis(4, 1, 5, 6);
  REQUIRE(bm.dimension() == 2);
  CHECK(bm.ords == std::vector<long>{-1, 0});
  CHECK(bm.elements[0].q.coeff(-1) == 1);
}

TEST_CASE("basis coordinates") {
  long N = 8;
  auto B = basis(24, 0, 5, N);
  // f = 3 e24 + 5 Delta e12 - Delta^2
  auto f = add(sub(scalar_mul(Rat(3), B.elements[0].q), B.elements[2].q),
               scalar_mul(Rat(5), B.elements[1].q));
  auto coords = to_basis_coords(B, f, N);
  CHECK(coords == std::vector<Rat>{Rat(3), Rat(5), Rat(-1)});
  // something outside the span: bare q-series with a q^3 tail mismatch
  auto bogus = QExpansion::monomial(CoeffRing::rationals(), Rat(1), 3, N);
  CHECK_FALSE(try_basis_coords(B, bogus, N).has_value());
}

TEST_CASE("splitting r_m on basis vectors") {
  long p = 5, k = 1;
  long N = 10;
  auto B24 = basis(24, 0, p, N);
  // r_0 is the identity
  for (const auto& e : basis(20, 0, p, N).elements) {
    auto r = splitting_r(ModularForm(20, 1, reduce_mod(e.q, p, k)), 20, p, k);
    CHECK(equal_to_precision(r.q, reduce_mod(e.q, p, k), sturm(20, 1)));
  }
  // r_4(Delta e12) = Delta e8 at t = 20
  auto src = ModularForm(24, 1, reduce_mod(B24.elements[1].q, p, k));
  auto img = splitting_r(src, 20, p, k);
  auto B20 = basis(20, 0, p, N);
  CHECK(equal_to_precision(img.q, reduce_mod(B20.elements[1].q, p, k), sturm(20, 1)));
  // r_4(Delta^2) = 0 at t = 20 (t - 24 < 0)
  auto z = splitting_r(ModularForm(24, 1, reduce_mod(B24.elements[2].q, p, k)), 20, p, k);
  CHECK(z.q.is_zero());
  // the t - 12n = 2 slot dies: weight 30 -> 26, Delta^2 e6 kills
  auto B30 = basis(30, 0, p, N);
  REQUIRE(B30.ords == std::vector<long>{0, 1, 2});
  auto z2 = splitting_r(ModularForm(30, 1, reduce_mod(B30.elements[2].q, p, k)), 26, p, k);
  CHECK(z2.q.is_zero());
  // splitting identity: r_{j(p-1)}(f E_{p-1}^j) = f mod p^k for j = 0 mod p^{k-1}
  for (long kk : {1L, 2L}) {
    long j = kk == 1 ? 1 : p;
    long w = 20 + j * (p - 1);
    auto E = pow(eisenstein(p - 1, N).q, static_cast<unsigned long>(j), N);
    for (const auto& e : basis(20, 0, p, N).elements) {
      auto prod = reduce_mod(mul(e.q, E), p, kk);
      auto r = splitting_r(ModularForm(w, 1, prod), 20, p, kk);
      CHECK(equal_to_precision(r.q, reduce_mod(e.q, p, kk), sturm(20, 1)));
    }
  }
}

TEST_CASE("iota image test") {
  long p = 5, k = 1;
  long N = 10;
  auto d2 = reduce_mod(mul(delta(N).q, delta(N).q), p, k);
  CHECK(iota_image_test(ModularForm(24, 1, d2), 20));
  auto e24 = reduce_mod(basis(24, 0, p, N).elements[0].q, p, k);
  CHECK_FALSE(iota_image_test(ModularForm(24, 1, e24), 20));
  // Delta^3 e4 has ord 3 = (38-2)/12
  auto B40 = basis(40, 0, p, N);
  REQUIRE(B40.ords[3] == 3);
  auto f = reduce_mod(B40.elements[3].q, p, k);
  CHECK(iota_image_test(ModularForm(40, 1, f), 38));
  CHECK_THROWS_AS(iota_image_test(ModularForm(24, 1, d2.truncated(2)), 20), InsufficientPrecision);
}

TEST_CASE("serre weight drop") {
  long N = 12;
  // E_8 = E_4^2 = 1 mod 5: drops through weight 4 all the way to the constants
  auto e8 = ModularForm(8, 1, reduce_mod(eisenstein(8, N).q, 5, 1));
  auto drop = serre_weight_drop(e8);
  CHECK(drop.dropped);
  CHECK(drop.weight == 0);
  // independent check of the intermediate weight-4 witness: E_8 = E_4 mod 5
  CHECK(equal_to_precision(reduce_mod(eisenstein(8, N).q, 5, 1), reduce_mod(eisenstein(4, N).q, 5, 1), N));

  // Delta mod 5 admits no lower weight: M_8 mod 5 is spanned by E_8 = 1
  auto dm = ModularForm(12, 1, reduce_mod(delta(N).q, 5, 1));
  auto nodrop = serre_weight_drop(dm);
  CHECK_FALSE(nodrop.dropped);
  CHECK(nodrop.weight == 12);

  // constants drop to weight 0 (weight in the ladder of 0 mod (p-1)p^{k-1})
  auto cst = ModularForm(20, 1, QExpansion::constant(CoeffRing::residue(5, 2), Rat(7), N));
  auto cdrop = serre_weight_drop(cst);
  CHECK(cdrop.weight == 0);
  // outside the ladder no congruent lower-weight form exists at all
  auto cst16 = ModularForm(16, 1, QExpansion::constant(CoeffRing::residue(5, 2), Rat(7), N));
  CHECK_FALSE(serre_weight_drop(cst16).dropped);

  // k = 2: E_24 = E_4 mod 25 through the (p-1)p = 20 ladder
  auto e24 = ModularForm(24, 1, reduce_mod(eisenstein(24, N).q, 5, 2));
  auto d24 = serre_weight_drop(e24);
  CHECK(d24.dropped);
  CHECK(d24.weight == 4);
  CHECK(equal_to_precision(d24.witness.q, reduce_mod(eisenstein(4, N).q, 5, 2), sturm(24, 1)));
}
