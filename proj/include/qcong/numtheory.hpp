#pragma once

// Bernoulli numbers, p-adic valuations, divisor sums, and the prime/level
// context shared by the congruence computations.

#include "qcong/basics.hpp"

#include <vector>

namespace qcong {

// B_m with the convention B_1 = -1/2, memoized, via the recurrence
// sum_{i<=m} C(m+1,i) B_i = 0.  Thread-safe, computed at most once per index.
const Rat& bernoulli(unsigned long m);

// nu_p(0) = +infinity; negative when p divides the denominator.
Valuation nu_p(const Rat& x, const Int& p);
Valuation nu_p_int(const Int& x, const Int& p);

struct ClausenVonStaudtReport {
  long k;
  std::vector<long> primes;  // {q prime : (q-1) | k}
  Int expected_denominator;  // product of those primes
  Int actual_denominator;    // den(B_k)
  bool pass;
};

// Self-test of the Bernoulli implementation against the Clausen-von Staudt
// denominator description.
ClausenVonStaudtReport clausen_von_staudt_check(long k);

// sigma_k(n) = sum of k-th powers of positive divisors of n.
Int sigma(unsigned long k, long n);

// p-part of the denominator of B_t/t, for (p-1) | t, t positive even.
// Cross-checked internally against p^{nu_p(t/(p-1)) + 1}.
Int alpha_order(long t, long p);

// ell is a topological generator of Z_p^x iff it is a primitive root mod p
// and nu_p(ell^{p-1} - 1) = 1.
bool is_topological_generator(long ell, long p);

struct PrimeContext {
  long p = 5;
  std::vector<long> ells;  // verified topological generators, primary first
  std::string precision_policy = "sturm-max";

  long ell() const { return ells.front(); }
};

// Levels for which certified q-expansion lattices are available.
inline const std::vector<long>& supported_levels() {
  static const std::vector<long> v = {2, 3, 5, 7, 13};
  return v;
}

// Context with the given ell list (validated), or the default list: the two
// smallest supported levels generating Z_p^x.
PrimeContext make_context(long p, std::vector<long> ells = {});

}  // namespace qcong
