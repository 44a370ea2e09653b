#pragma once

// The graded ring of level-1 modular forms: Eisenstein series, Delta, the
// p-integral e_k family, echelon bases Delta^n e_{t-12n}, the splittings r_m,
// and the weight-comparison machinery for mod-p^k congruences.

#include "qcong/basics.hpp"
#include "qcong/qseries.hpp"

#include <vector>

namespace qcong {

enum class Holomorphy { Holomorphic, MeromorphicAtCusps };

struct ModularForm {
  long weight = 0;
  long level = 1;  // 1 or a prime ell
  Holomorphy holo = Holomorphy::Holomorphic;
  long pole_cap = 0;  // lowest_index >= -pole_cap for meromorphic forms
  QExpansion q;

  ModularForm() = default;
  ModularForm(long w, long lvl, QExpansion qe)
      : weight(w), level(lvl), q(std::move(qe)) {}
};

// E_k = 1 - (2k/B_k) sum_{n>=1} sigma_{k-1}(n) q^n, over the rationals.
ModularForm eisenstein(long k, long N);

// Delta = (E_4^3 - E_6^2)/1728, integer coefficients, leading term q.
ModularForm delta(long N);

// e_k of the p-integral family: e_0 = 1; e_k = E_k when (p-1) | k; for the
// base weights (4 <= k < p-1 and k = p+1) the fixed monomial E_4^a E_6^b with
// (a, b) lexicographically least; otherwise e_k = e_base * E_{k-base}.
ModularForm e_form(long k, long p, long N);

struct Level1Basis {
  long weight = 0;
  long pole_cap = 0;
  long p = 0;
  std::vector<ModularForm> elements;  // echelon: element i has ord_q = ords[i]
  std::vector<long> ords;

  long dimension() const { return static_cast<long>(elements.size()); }
};

// {Delta^n e_{t-12n} : n >= -pole_cap, t-12n >= 4 even} plus Delta^{t/12}
// when 12 | t, sorted by ord_q = n.  pole_cap = 0 gives the holomorphic basis.
Level1Basis basis(long t, long pole_cap, long p, long N);

// Coordinates of f in the echelon basis (f must lie in the span); the
// residual is checked to min(f.precision, check_bound).  Works over the
// rationals or over Z/p^k.
std::vector<Rat> to_basis_coords(const Level1Basis& B, const QExpansion& f, long check_bound);

// Like to_basis_coords but reports failure instead of throwing.
std::optional<std::vector<Rat>> try_basis_coords(const Level1Basis& B, const QExpansion& f, long check_bound);

// The splitting r_m: M^0_{t+m} -> M^0_t sending Delta^n e_{t+m-12n} to
// Delta^n e_{t-12n} when t-12n = 0 or t-12n >= 4, and to 0 otherwise.
ModularForm splitting_r(const ModularForm& f, long t, long p, long k);

// True iff ord_q f > t/12 or ord_q f = (t-2)/12 (exact rational comparison);
// this characterizes the image of iota_{j,k}.
bool iota_image_test(const ModularForm& f, long t);

struct WeightDropReport {
  long original_weight = 0;
  long weight = 0;           // minimal weight representing f mod p^k
  bool dropped = false;      // weight < original_weight
  ModularForm witness;       // form of the minimal weight congruent to f
};

// Least w' = w mod (p-1)p^{k-1} such that f mod p^k is the q-expansion of a
// weight-w' form, searched downward in steps of (p-1)p^{k-1}; w' = w when no
// drop exists.  f must be over Z/p^k with precision >= sturm(w, 1).
WeightDropReport serre_weight_drop(const ModularForm& f);

}  // namespace qcong
