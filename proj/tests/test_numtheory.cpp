#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qcong/numtheory.hpp"

#include <random>

using namespace qcong;

TEST_CASE("bernoulli values from the recurrence") {
  CHECK(bernoulli(0) == Rat(1));
  CHECK(bernoulli(1) == Rat(-1, 2));
  CHECK(bernoulli(4) == Rat(-1, 30));
  CHECK(bernoulli(12) == Rat(-691, 2730));
  CHECK(bernoulli(3) == Rat(0));
}

TEST_CASE("clausen-von-staudt denominators") {
  auto r4 = clausen_von_staudt_check(4);
  CHECK(r4.pass);
  CHECK(r4.primes == std::vector<long>{2, 3, 5});
  auto r12 = clausen_von_staudt_check(12);
  CHECK(r12.pass);
  CHECK(r12.primes == std::vector<long>{2, 3, 5, 7, 13});
  CHECK(r12.actual_denominator == 2730);
  auto r2 = clausen_von_staudt_check(2);
  CHECK(r2.pass);
  CHECK(r2.primes == std::vector<long>{2, 3});

  // squarefree product characterization for all even k <= 60
  for (long k = 2; k <= 60; k += 2) {
    auto r = clausen_von_staudt_check(k);
    CHECK(r.pass);
    for (long q : r.primes) CHECK(r.expected_denominator % (q * q) != 0);
  }
}

TEST_CASE("p-adic valuation") {
  CHECK(nu_p(Rat(120), 5) == Valuation(1));
  CHECK_FALSE(nu_p(Rat(0), 5).has_value());  // +infinity
  CHECK(nu_p(Rat(-1, 30), 5) == Valuation(-1));
  CHECK(nu_p(Rat(25, 3), 5) == Valuation(2));

  // nu_p(xy) = nu_p(x) + nu_p(y) on sampled rationals
  std::mt19937 rng(2024);
  std::uniform_int_distribution<long> d(-400, 400);
  for (int trial = 0; trial < 200; ++trial) {
    long a = d(rng), b = d(rng), c = d(rng), e = d(rng);
    if (a == 0 || b == 0 || c == 0 || e == 0) continue;
    Rat x(a, std::abs(b)), y(c, std::abs(e));
    for (long p : {2L, 5L, 7L}) {
      CHECK(*nu_p(x * y, p) == *nu_p(x, p) + *nu_p(y, p));
    }
  }
}

TEST_CASE("sigma divisor sums") {
  CHECK(sigma(3, 1) == 1);
  CHECK(sigma(3, 2) == 9);
  CHECK(sigma(1, 6) == 12);
  CHECK(sigma(0, 12) == 6);
}

TEST_CASE("alpha_order equals the p-part of den(B_t/t)") {
  CHECK(alpha_order(4, 5) == 5);
  CHECK(alpha_order(20, 5) == 25);
  CHECK(alpha_order(8, 5) == 5);
  CHECK_THROWS_AS(alpha_order(6, 5), Error);

  // two independent routes agree for t = (p-1)i, i <= 50 (internal cross-check
  // throws on any disagreement)
  for (long p : {5L, 7L, 11L, 13L}) {
    for (long i = 1; i <= 50; ++i) {
      long t = (p - 1) * i;
      Int expected = ipow(Int(p), static_cast<unsigned long>(*nu_p_int(Int(i), Int(p)) + 1));
      CHECK(alpha_order(t, p) == expected);
    }
  }
}

TEST_CASE("topological generator check and contexts") {
  CHECK(is_topological_generator(2, 5));
  CHECK(is_topological_generator(3, 5));
  CHECK_FALSE(is_topological_generator(2, 7));  // order 3 only
  CHECK(is_topological_generator(3, 7));
  CHECK(is_topological_generator(5, 7));
  CHECK_FALSE(is_topological_generator(5, 5));
  CHECK_FALSE(is_topological_generator(7, 5));  // 7 = 2 mod 5, but nu_5(7^4-1)=2? verify rejection logic
  // 7^4 - 1 = 2400 = 2^5 3 5^2: nu_5 = 2, so 7 is a primitive root mod 5
  // that fails the second condition
  CHECK(make_context(5).ells == std::vector<long>{2, 3});
  CHECK(make_context(7).ells == std::vector<long>{3, 5});
  CHECK(make_context(11).ells == std::vector<long>{2, 7});
  CHECK(make_context(13).ells == std::vector<long>{2, 7});
  CHECK_THROWS_AS(make_context(4), ConfigError);
  CHECK_THROWS_AS(make_context(5, {4}), ConfigError);
  CHECK_THROWS_AS(make_context(7, {2}), ConfigError);
}
