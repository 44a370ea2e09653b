#include "qcong/numtheory.hpp"

#include <mutex>

namespace qcong {

Int mod_inverse(const Int& a, const Int& m) {
  Int old_r = mod_floor(a, m), r = m;
  Int old_s = 1, s = 0;
  while (r != 0) {
    Int q = old_r / r;
    Int tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
  }
  if (old_r != 1) throw Error("mod_inverse: element not invertible");
  return mod_floor(old_s, m);
}

Int pow_mod(Int base, Int e, const Int& m) {
  Int r = 1;
  base = mod_floor(base, m);
  while (e > 0) {
    if ((e & 1) != 0) r = r * base % m;
    base = base * base % m;
    e >>= 1;
  }
  return r;
}

bool is_prime_small(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::mutex bern_mutex;
std::vector<Rat> bern_table;  // grown monotonically, values never rewritten

// binomial(n, k) over Int
Int binom(unsigned long n, unsigned long k) {
  if (k > n) return 0;
  Int r = 1;
  for (unsigned long i = 0; i < k; ++i) {
    r *= Int(n - i);
    r /= Int(i + 1);
  }
  return r;
}

}  // namespace

const Rat& bernoulli(unsigned long m) {
  std::lock_guard<std::mutex> lock(bern_mutex);
  if (bern_table.empty()) bern_table.push_back(Rat(1));
  while (bern_table.size() <= m) {
    unsigned long n = bern_table.size();
    // sum_{i=0}^{n} C(n+1, i) B_i = 0  =>  B_n = -(1/C(n+1,n)) sum_{i<n} ...
    Rat acc = 0;
    for (unsigned long i = 0; i < n; ++i) acc += Rat(binom(n + 1, i)) * bern_table[i];
    bern_table.push_back(-acc / Rat(binom(n + 1, n)));
  }
  return bern_table[m];
}

Valuation nu_p_int(const Int& x, const Int& p) {
  if (x == 0) return std::nullopt;
  long v = 0;
  Int y = x;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

Valuation nu_p(const Rat& x, const Int& p) {
  if (x == 0) return std::nullopt;
  long vn = *nu_p_int(num(x), p);
  long vd = *nu_p_int(den(x), p);
  return vn - vd;
}

ClausenVonStaudtReport clausen_von_staudt_check(long k) {
  if (k < 2 || k % 2 != 0) throw Error("clausen_von_staudt_check: k must be even >= 2");
  ClausenVonStaudtReport rep;
  rep.k = k;
  rep.expected_denominator = 1;
  for (long q = 2; q <= k + 1; ++q) {
    if (is_prime_small(q) && k % (q - 1) == 0) {
      rep.primes.push_back(q);
      rep.expected_denominator *= q;
    }
  }
  rep.actual_denominator = den(bernoulli(static_cast<unsigned long>(k)));
  rep.pass = rep.actual_denominator == rep.expected_denominator;
  return rep;
}

Int sigma(unsigned long k, long n) {
  if (n < 1) throw Error("sigma: n must be positive");
  Int acc = 0;
  for (long d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    acc += ipow(Int(d), k);
    long e = n / d;
    if (e != d) acc += ipow(Int(e), k);
  }
  return acc;
}

Int alpha_order(long t, long p) {
  if (t <= 0 || t % 2 != 0) throw Error("alpha_order: t must be positive even");
  if (t % (p - 1) != 0) throw Error("alpha_order: (p-1) must divide t");
  Rat bt_over_t = bernoulli(static_cast<unsigned long>(t)) / Rat(t);
  long v = *nu_p_int(den(bt_over_t), Int(p));
  long i = t / (p - 1);
  long v2 = *nu_p_int(Int(i), Int(p)) + 1;
  if (v != v2)
    throw CrossCheckMismatch("alpha_order: Bernoulli denominator and nu_p(i)+1 disagree at t=" +
                             std::to_string(t) + ", p=" + std::to_string(p));
  return ipow(Int(p), static_cast<unsigned long>(v));
}

bool is_topological_generator(long ell, long p) {
  if (!is_prime_small(ell) || !is_prime_small(p) || ell == p) return false;
  // primitive root mod p: order of ell is exactly p-1
  long order = 1;
  Int cur = mod_floor(Int(ell), Int(p));
  Int acc = cur;
  while (acc != 1) {
    acc = acc * cur % Int(p);
    ++order;
    if (order > p) return false;
  }
  if (order != p - 1) return false;
  Int pw = ipow(Int(ell), static_cast<unsigned long>(p - 1)) - 1;
  return *nu_p_int(pw, Int(p)) == 1;
}

PrimeContext make_context(long p, std::vector<long> ells) {
  if (p < 5 || !is_prime_small(p)) throw ConfigError("context requires a prime p >= 5");
  PrimeContext ctx;
  ctx.p = p;
  if (ells.empty()) {
    for (long ell : supported_levels()) {
      if (is_topological_generator(ell, p)) ells.push_back(ell);
      if (ells.size() == 2) break;
    }
    if (ells.empty()) throw ConfigError("no supported level generates Z_p^x for p=" + std::to_string(p));
  } else {
    for (long ell : ells)
      if (!is_topological_generator(ell, p))
        throw ConfigError("ell=" + std::to_string(ell) + " is not a topological generator of Z_p^x for p=" +
                          std::to_string(p));
  }
  ctx.ells = std::move(ells);
  return ctx;
}

}  // namespace qcong
