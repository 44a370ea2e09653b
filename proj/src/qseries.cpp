#include "qcong/qseries.hpp"

#include "qcong/numtheory.hpp"

#include <algorithm>
#include <sstream>

namespace qcong {

CoeffRing CoeffRing::residue(long p, long k) {
  if (p < 2 || k < 1) throw Error("residue ring requires p >= 2, k >= 1");
  CoeffRing r;
  r.kind = RingKind::Residue;
  r.p = p;
  r.k = k;
  r.modulus = ipow(Int(p), static_cast<unsigned long>(k));
  return r;
}

std::string CoeffRing::describe() const {
  switch (kind) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::Residue:
      return "Z/" + std::to_string(p) + "^" + std::to_string(k);
  }
  return "?";
}

namespace {

Rat normalize_in(const CoeffRing& ring, const Rat& x) {
  switch (ring.kind) {
    case RingKind::Rationals:
      return x;
    case RingKind::Integers:
      if (den(x) != 1) throw Error("integer-ring expansion received a non-integer coefficient");
      return x;
    case RingKind::Residue: {
      // p-integral rationals are welcome; reduce via the inverse of the denominator.
      Int d = den(x);
      Int r;
      if (d == 1) {
        r = mod_floor(num(x), ring.modulus);
      } else {
        if (d % ring.p == 0) throw Error("residue reduction of a non-p-integral coefficient");
        r = mod_floor(num(x) * mod_inverse(d, ring.modulus), ring.modulus);
      }
      return Rat(r);
    }
  }
  throw Error("unreachable");
}

void require_same_ring(const QExpansion& a, const QExpansion& b, const char* op) {
  if (!(a.ring() == b.ring()))
    throw RingMismatch(std::string(op) + ": coefficient rings differ (" + a.ring().describe() + " vs " +
                       b.ring().describe() + ")");
}

const Rat kZero = Rat(0);

}  // namespace

QExpansion::QExpansion(CoeffRing ring, long lowest, std::vector<Rat> coeffs)
    : ring_(ring), lowest_(lowest), precision_(lowest + static_cast<long>(coeffs.size())), coeffs_(std::move(coeffs)) {
  if (precision_ <= lowest_) throw Error("QExpansion: precision must exceed lowest index");
  for (auto& c : coeffs_) c = normalize_in(ring_, c);
}

QExpansion QExpansion::zero(CoeffRing ring, long precision) {
  if (precision < 1) precision = 1;
  return QExpansion(ring, 0, std::vector<Rat>(static_cast<size_t>(precision), Rat(0)));
}

QExpansion QExpansion::constant(CoeffRing ring, const Rat& c, long precision) {
  auto f = zero(ring, precision);
  f.coeffs_[0] = normalize_in(ring, c);
  return f;
}

QExpansion QExpansion::monomial(CoeffRing ring, const Rat& c, long index, long precision) {
  if (index >= precision) throw Error("QExpansion::monomial: index beyond precision");
  long lowest = std::min(index, 0L);
  std::vector<Rat> v(static_cast<size_t>(precision - lowest), Rat(0));
  v[static_cast<size_t>(index - lowest)] = c;
  return QExpansion(ring, lowest, std::move(v));
}

const Rat& QExpansion::coeff(long i) const {
  if (i >= precision_)
    throw InsufficientPrecision("coefficient of q^" + std::to_string(i) + " requested at precision " +
                                std::to_string(precision_));
  if (i < lowest_) return kZero;
  return coeffs_[static_cast<size_t>(i - lowest_)];
}

QExpansion QExpansion::truncated(long new_precision) const {
  if (new_precision > precision_)
    throw InsufficientPrecision("cannot extend precision by truncation");
  if (new_precision <= lowest_) {
    // keep an empty window above lowest-1: represent as zero series at that precision
    return QExpansion(ring_, new_precision - 1, {Rat(0)});
  }
  std::vector<Rat> v(coeffs_.begin(), coeffs_.begin() + (new_precision - lowest_));
  return QExpansion(ring_, lowest_, std::move(v));
}

bool QExpansion::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rat& c) { return c == 0; });
}

std::string QExpansion::serialize() const {
  std::ostringstream os;
  os << lowest_ << ' ' << precision_;
  for (const auto& c : coeffs_) {
    os << ' ' << num(c).str();
    if (den(c) != 1) os << '/' << den(c).str();
  }
  return os.str();
}

QExpansion QExpansion::parse(const std::string& line, CoeffRing ring) {
  std::istringstream is(line);
  long lowest, precision;
  if (!(is >> lowest >> precision)) throw Error("QExpansion::parse: bad header");
  std::vector<Rat> v;
  std::string tok;
  while (is >> tok) {
    auto slash = tok.find('/');
    if (slash == std::string::npos)
      v.emplace_back(Int(tok));
    else
      v.emplace_back(Rat(Int(tok.substr(0, slash)), Int(tok.substr(slash + 1))));
  }
  if (static_cast<long>(v.size()) != precision - lowest)
    throw Error("QExpansion::parse: coefficient count mismatch");
  return QExpansion(ring, lowest, std::move(v));
}

QExpansion add(const QExpansion& a, const QExpansion& b) {
  require_same_ring(a, b, "add");
  long precision = std::min(a.precision(), b.precision());
  long lowest = std::min(a.lowest_index(), b.lowest_index());
  if (precision <= lowest) throw InsufficientPrecision("add: empty precision window");
  std::vector<Rat> v(static_cast<size_t>(precision - lowest));
  for (long i = lowest; i < precision; ++i) {
    Rat x = (i < a.lowest_index() ? Rat(0) : a.coeff(i)) + (i < b.lowest_index() ? Rat(0) : b.coeff(i));
    v[static_cast<size_t>(i - lowest)] = std::move(x);
  }
  return QExpansion(a.ring(), lowest, std::move(v));
}

QExpansion negate(const QExpansion& a) { return scalar_mul(Rat(-1), a); }

QExpansion sub(const QExpansion& a, const QExpansion& b) { return add(a, negate(b)); }

QExpansion scalar_mul(const Rat& c, const QExpansion& a) {
  std::vector<Rat> v(static_cast<size_t>(a.precision() - a.lowest_index()));
  for (long i = a.lowest_index(); i < a.precision(); ++i)
    v[static_cast<size_t>(i - a.lowest_index())] = c * a.coeff(i);
  return QExpansion(a.ring(), a.lowest_index(), std::move(v));
}

QExpansion mul(const QExpansion& a, const QExpansion& b) {
  require_same_ring(a, b, "mul");
  long la = a.lowest_index(), lb = b.lowest_index();
  // Laurent product precision: min(Na + lb, Nb + la)
  long precision = std::min(a.precision() + lb, b.precision() + la);
  long lowest = la + lb;
  if (precision <= lowest) throw InsufficientPrecision("mul: empty precision window");
  std::vector<Rat> v(static_cast<size_t>(precision - lowest), Rat(0));
  const bool residue = a.ring().kind == RingKind::Residue;
  const Int& m = a.ring().modulus;
  for (long i = la; i < a.precision(); ++i) {
    const Rat& ai = a.coeff(i);
    if (ai == 0) continue;
    long jmax = std::min(b.precision(), precision - i);
    for (long j = lb; j < jmax; ++j) {
      const Rat& bj = b.coeff(j);
      if (bj == 0) continue;
      Rat& slot = v[static_cast<size_t>(i + j - lowest)];
      slot += ai * bj;
      if (residue && num(slot) >= m) slot = Rat(mod_floor(num(slot), m));
    }
  }
  return QExpansion(a.ring(), lowest, std::move(v));
}

QExpansion pow(const QExpansion& a, unsigned long e, long precision_cap) {
  QExpansion acc = QExpansion::constant(a.ring(), Rat(1), std::min(a.precision(), precision_cap));
  QExpansion base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  if (acc.precision() > precision_cap) acc = acc.truncated(precision_cap);
  return acc;
}

QExpansion verschiebung(const QExpansion& f, long ell) {
  if (ell < 2) throw Error("verschiebung: ell must be >= 2");
  long lowest = ell * f.lowest_index();
  long precision = ell * f.precision() - (ell - 1) * std::max(f.lowest_index(), 0L);
  std::vector<Rat> v(static_cast<size_t>(precision - lowest), Rat(0));
  for (long i = f.lowest_index(); i < f.precision(); ++i) {
    long target = ell * i;
    if (target >= precision) break;
    v[static_cast<size_t>(target - lowest)] = f.coeff(i);
  }
  return QExpansion(f.ring(), lowest, std::move(v));
}

Valuation ord_q(const QExpansion& f) {
  for (long i = f.lowest_index(); i < f.precision(); ++i)
    if (f.coeff(i) != 0) return i;
  return std::nullopt;
}

QExpansion reduce_mod(const QExpansion& f, long p, long k) {
  CoeffRing target = CoeffRing::residue(p, k);
  std::vector<Rat> v(static_cast<size_t>(f.precision() - f.lowest_index()));
  for (long i = f.lowest_index(); i < f.precision(); ++i) {
    const Rat& c = f.coeff(i);
    if (den(c) % p == 0)
      throw NonIntegralCoefficient(i, "coefficient of q^" + std::to_string(i) +
                                          " is not p-integral at p=" + std::to_string(p));
    v[static_cast<size_t>(i - f.lowest_index())] = c;
  }
  return QExpansion(target, f.lowest_index(), std::move(v));
}

bool equal_to_precision(const QExpansion& a, const QExpansion& b, long N) {
  if (!(a.ring() == b.ring())) throw RingMismatch("equal_to_precision: rings differ");
  if (a.precision() < N || b.precision() < N)
    throw InsufficientPrecision("equal_to_precision: inputs not known to precision " + std::to_string(N));
  long lo = std::min(a.lowest_index(), b.lowest_index());
  for (long i = lo; i < N; ++i)
    if (a.coeff(i) != b.coeff(i)) return false;
  return true;
}

}  // namespace qcong
