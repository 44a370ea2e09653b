#pragma once

// Eisenstein series attached to Dirichlet characters mod a prime level, with
// exact coefficients in Q(zeta_12).  Products of two such series of inverse
// characters are trivial-character forms; their rational component series
// enlarge the spanning pool of level_ell when plain monomials fall short.

#include "qcong/basics.hpp"

#include <array>
#include <vector>

namespace qcong {

// Element of Q(zeta_12) in the power basis {1, z, z^2, z^3}, z^4 = z^2 - 1.
struct Cyc {
  std::array<Rat, 4> c{};

  static Cyc zero() { return {}; }
  static Cyc one();
  static Cyc from_rat(const Rat& r);
  static Cyc zeta_pow(long e);  // z^e, e taken mod 12

  bool is_zero() const;
  bool is_rational() const { return c[1] == 0 && c[2] == 0 && c[3] == 0; }
};

Cyc operator+(const Cyc& a, const Cyc& b);
Cyc operator-(const Cyc& a, const Cyc& b);
Cyc operator*(const Cyc& a, const Cyc& b);
Cyc operator*(const Rat& a, const Cyc& b);
bool operator==(const Cyc& a, const Cyc& b);

struct DirichletCharacter {
  long modulus = 1;  // prime ell; ell - 1 must divide 12
  long index = 0;    // chi(g) = zeta_{ell-1}^index for the least primitive root g
  std::vector<Cyc> values;  // values[r] for r in 0..ell-1

  bool is_trivial() const { return index == 0; }
  const Cyc& value(long r) const { return values[static_cast<size_t>(((r % modulus) + modulus) % modulus)]; }
  long parity() const;  // chi(-1) as +1 or -1
};

// All characters mod the prime ell (index 0 = trivial), or just the
// nontrivial (= primitive) ones.
std::vector<DirichletCharacter> characters_mod(long ell);

// Generalized Bernoulli number B_{n,chi} via Bernoulli polynomials.
Cyc generalized_bernoulli(long n, const DirichletCharacter& chi);

// Coefficients 0..N-1 of E_k^{psi,phi}; a null pointer stands for the
// trivial character mod 1.  Requires (psi.phi)(-1) = (-1)^k, else the zero
// series.  The pair (null, null) is rejected for k = 2 (quasi-modular).
std::vector<Cyc> eisenstein_char(long k, const DirichletCharacter* psi, const DirichletCharacter* phi, long N);

// Weight-w trivial-character products of two character Eisenstein series for
// Gamma_0(ell), as primitive integer coefficient rows (component series of
// the cyclotomic products, denominators cleared).  Deterministic order.
std::vector<std::vector<Int>> char_product_rows(long w, long ell, long N);

}  // namespace qcong
