#pragma once

// Truncated Laurent q-expansions with exact coefficients.  Precision is
// tracked through every operation; no coefficient beyond the stated
// precision is ever claimed.

#include "qcong/basics.hpp"

#include <string>
#include <vector>

namespace qcong {

enum class RingKind { Integers, Rationals, Residue };

struct CoeffRing {
  RingKind kind = RingKind::Integers;
  long p = 0, k = 0;  // Residue only
  Int modulus = 0;    // p^k for Residue, 0 otherwise

  static CoeffRing integers() { return {}; }
  static CoeffRing rationals() { return {RingKind::Rationals, 0, 0, Int(0)}; }
  static CoeffRing residue(long p, long k);

  bool operator==(const CoeffRing& o) const {
    return kind == o.kind && modulus == o.modulus;
  }
  std::string describe() const;
};

class QExpansion {
 public:
  QExpansion() = default;
  // coeffs[i] is the coefficient of q^(lowest + i); precision = lowest + coeffs.size().
  QExpansion(CoeffRing ring, long lowest, std::vector<Rat> coeffs);

  static QExpansion zero(CoeffRing ring, long precision);
  static QExpansion constant(CoeffRing ring, const Rat& c, long precision);
  static QExpansion monomial(CoeffRing ring, const Rat& c, long index, long precision);

  const CoeffRing& ring() const { return ring_; }
  long lowest_index() const { return lowest_; }
  long precision() const { return precision_; }

  // Coefficient of q^i for any i < precision (zero below the stored range);
  // throws InsufficientPrecision at or above the precision.
  const Rat& coeff(long i) const;

  QExpansion truncated(long new_precision) const;

  bool is_zero() const;  // all stored coefficients vanish

  std::string serialize() const;  // "lowest precision c_l c_{l+1} ..."
  static QExpansion parse(const std::string& line, CoeffRing ring);

 private:
  CoeffRing ring_;
  long lowest_ = 0;
  long precision_ = 1;
  std::vector<Rat> coeffs_;
  friend QExpansion add(const QExpansion&, const QExpansion&);
  friend QExpansion mul(const QExpansion&, const QExpansion&);
};

QExpansion add(const QExpansion& a, const QExpansion& b);
QExpansion sub(const QExpansion& a, const QExpansion& b);
QExpansion negate(const QExpansion& a);
QExpansion scalar_mul(const Rat& c, const QExpansion& a);
QExpansion mul(const QExpansion& a, const QExpansion& b);
QExpansion pow(const QExpansion& a, unsigned long e, long precision_cap);

// f(q) -> f(q^ell).  Output precision ell*N - (ell-1)*max(lowest, 0).
QExpansion verschiebung(const QExpansion& f, long ell);

// Least stored index with nonzero coefficient; +infinity if all vanish.
Valuation ord_q(const QExpansion& f);

// Reduce a p-integral expansion into Z/p^k; throws NonIntegralCoefficient
// naming the offending index otherwise.
QExpansion reduce_mod(const QExpansion& f, long p, long k);

// Equality of coefficients at all indices < N; errors if either input's
// precision is below N.
bool equal_to_precision(const QExpansion& a, const QExpansion& b, long N);

}  // namespace qcong
