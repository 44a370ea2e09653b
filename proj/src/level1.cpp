#include "qcong/level1.hpp"

#include "qcong/numtheory.hpp"
#include "qcong/once_cache.hpp"

#include <algorithm>
#include <tuple>

namespace qcong {

namespace {

OnceCache<std::pair<long, long>, ModularForm> eis_cache;
OnceCache<long, ModularForm> delta_cache;
OnceCache<std::tuple<long, long, long>, ModularForm> eform_cache;
OnceCache<std::tuple<long, long, long, long>, Level1Basis> basis_cache;

ModularForm make_eisenstein(long k, long N) {
  if (k < 4 || k % 2 != 0) throw Error("eisenstein: k must be even >= 4");
  if (N < 1) N = 1;
  Rat factor = -Rat(2 * k) / bernoulli(static_cast<unsigned long>(k));
  std::vector<Rat> c(static_cast<size_t>(N));
  c[0] = 1;
  for (long n = 1; n < N; ++n)
    c[static_cast<size_t>(n)] = factor * Rat(sigma(static_cast<unsigned long>(k - 1), n));
  return ModularForm(k, 1, QExpansion(CoeffRing::rationals(), 0, std::move(c)));
}

ModularForm make_delta(long N) {
  if (N < 2) N = 2;
  auto e4 = make_eisenstein(4, N).q;
  auto e6 = make_eisenstein(6, N).q;
  auto d = scalar_mul(Rat(1, 1728), sub(mul(mul(e4, e4), e4), mul(e6, e6)));
  std::vector<Rat> c(static_cast<size_t>(N));
  for (long i = 0; i < N; ++i) {
    const Rat& x = d.coeff(i);
    if (den(x) != 1) throw Error("delta: integrality self-check failed");
    c[static_cast<size_t>(i)] = x;
  }
  if (c[1] != 1) throw Error("delta: leading term check failed");
  return ModularForm(12, 1, QExpansion(CoeffRing::integers(), 0, std::move(c)));
}

// Integer-ring Delta recast over the rationals, for mixing with e_k products.
QExpansion delta_q_rational(long N) {
  auto d = delta(N).q;
  std::vector<Rat> c(static_cast<size_t>(N));
  for (long i = 0; i < N; ++i) c[static_cast<size_t>(i)] = d.coeff(i);
  return QExpansion(CoeffRing::rationals(), 0, std::move(c));
}

ModularForm make_e_form(long k, long p, long N) {
  if (k < 0 || k % 2 != 0) throw Error("e_form: k must be even and nonnegative");
  if (k == 2) throw Error("e_form: k = 2 rejected (M_2 = 0)");
  if (N < 1) N = 1;
  if (k == 0) return ModularForm(0, 1, QExpansion::constant(CoeffRing::rationals(), Rat(1), N));
  if (k % (p - 1) == 0) return eisenstein(k, N);
  long base = k % (p - 1);
  if (base == 2) base = p + 1;
  if (k >= 4 && k < p - 1) base = k;
  if (k == base) {
    // lexicographically least (a, b) with 4a + 6b = k
    for (long a = 0; 4 * a <= k; ++a) {
      if ((k - 4 * a) % 6 != 0) continue;
      long b = (k - 4 * a) / 6;
      QExpansion f = QExpansion::constant(CoeffRing::rationals(), Rat(1), N);
      for (long i = 0; i < a; ++i) f = mul(f, eisenstein(4, N).q);
      for (long i = 0; i < b; ++i) f = mul(f, eisenstein(6, N).q);
      return ModularForm(k, 1, std::move(f));
    }
    throw Error("e_form: no monomial E_4^a E_6^b of weight " + std::to_string(k));
  }
  return ModularForm(k, 1, mul(e_form(base, p, N).q, eisenstein(k - base, N).q));
}

Level1Basis make_basis(long t, long pole_cap, long p, long N) {
  if (t % 2 != 0) throw Error("basis: weight must be even");
  if (pole_cap < 0) throw Error("basis: pole_cap must be >= 0");
  Level1Basis B;
  B.weight = t;
  B.pole_cap = pole_cap;
  B.p = p;
  // each Delta^{-1} factor costs two coefficients of headroom
  long M = pole_cap > 0 ? N + 2 * pole_cap + 2 : N;
  QExpansion dq = delta_q_rational(M);
  QExpansion dinv;  // 1/Delta, used for pole_cap > 0
  if (pole_cap > 0) {
    std::vector<Rat> u(static_cast<size_t>(M - 1));
    for (long i = 1; i < M; ++i) u[static_cast<size_t>(i - 1)] = dq.coeff(i);
    std::vector<Rat> v(u.size());
    v[0] = 1;  // leading coefficient of Delta/q is 1
    for (size_t n = 1; n < u.size(); ++n) {
      Rat acc = 0;
      for (size_t i = 1; i <= n; ++i) acc += u[i] * v[n - i];
      v[n] = -acc;
    }
    dinv = QExpansion(CoeffRing::rationals(), -1, std::move(v));
  }
  for (long n = -pole_cap; 12 * n <= t - 4; ++n) {
    long kk = t - 12 * n;
    if (kk < 4) break;
    QExpansion f = e_form(kk, p, M).q;
    for (long i = 0; i < n; ++i) f = mul(f, dq);
    for (long i = 0; i < -n; ++i) f = mul(f, dinv);
    if (f.precision() > N) f = f.truncated(N);
    if (f.precision() < N)
      throw InsufficientPrecision("basis: element precision fell below request");
    B.elements.push_back(ModularForm(t, 1, std::move(f)));
    B.ords.push_back(n);
  }
  if (t % 12 == 0 && t / 12 >= -pole_cap) {
    long n = t / 12;
    QExpansion f = QExpansion::constant(CoeffRing::rationals(), Rat(1), M);
    for (long i = 0; i < n; ++i) f = mul(f, dq);
    for (long i = 0; i < -n; ++i) f = mul(f, dinv);
    if (f.precision() > N) f = f.truncated(N);
    B.elements.push_back(ModularForm(t, 1, std::move(f)));
    B.ords.push_back(n);
  }
  for (auto& mf : B.elements) {
    if (pole_cap > 0) {
      mf.holo = Holomorphy::MeromorphicAtCusps;
      mf.pole_cap = pole_cap;
    }
  }
  // echelon self-check
  for (size_t i = 0; i < B.elements.size(); ++i) {
    auto o = ord_q(B.elements[i].q);
    if (!o || *o != B.ords[i]) throw Error("basis: echelon property violated");
    if (B.elements[i].q.coeff(B.ords[i]) != 1) throw Error("basis: leading coefficient is not 1");
  }
  return B;
}

}  // namespace

ModularForm eisenstein(long k, long N) {
  return *eis_cache.get({k, N}, [&] { return make_eisenstein(k, N); });
}

ModularForm delta(long N) {
  return *delta_cache.get(N, [&] { return make_delta(N); });
}

ModularForm e_form(long k, long p, long N) {
  return *eform_cache.get({k, p, N}, [&] { return make_e_form(k, p, N); });
}

Level1Basis basis(long t, long pole_cap, long p, long N) {
  return *basis_cache.get({t, pole_cap, p, N}, [&] { return make_basis(t, pole_cap, p, N); });
}

std::optional<std::vector<Rat>> try_basis_coords(const Level1Basis& B, const QExpansion& f, long check_bound) {
  const bool residue = f.ring().kind == RingKind::Residue;
  long bound = std::min(check_bound, f.precision());
  if (bound < 1) throw InsufficientPrecision("basis coordinates: empty check window");
  QExpansion residual = f;
  std::vector<Rat> coords;
  coords.reserve(B.elements.size());
  for (size_t i = 0; i < B.elements.size(); ++i) {
    long n = B.ords[i];
    if (n >= bound) {
      coords.push_back(Rat(0));
      continue;
    }
    if (B.elements[i].q.precision() < bound)
      throw InsufficientPrecision("basis coordinates: basis precision below check bound");
    Rat c = residual.coeff(n);
    coords.push_back(c);
    if (c == 0) continue;
    QExpansion piece = residue ? reduce_mod(B.elements[i].q, f.ring().p, f.ring().k) : B.elements[i].q;
    residual = sub(residual, scalar_mul(c, piece));
  }
  for (long i = residual.lowest_index(); i < bound; ++i)
    if (residual.coeff(i) != 0) return std::nullopt;
  return coords;
}

std::vector<Rat> to_basis_coords(const Level1Basis& B, const QExpansion& f, long check_bound) {
  auto c = try_basis_coords(B, f, check_bound);
  if (!c)
    throw CoordConversionFailure("expansion is not in the span of the weight-" + std::to_string(B.weight) +
                                 " basis to the checked precision");
  return *c;
}

ModularForm splitting_r(const ModularForm& f, long t, long p, long k) {
  long m = f.weight - t;
  if (m < 0 || m % 2 != 0) throw Error("splitting_r: target weight must be f.weight - m with m >= 0 even");
  if (f.q.ring().kind == RingKind::Residue && (f.q.ring().p != p || f.q.ring().k != k))
    throw RingMismatch("splitting_r: form ring disagrees with requested p^k");
  long N = f.q.precision();
  Level1Basis src = basis(f.weight, f.pole_cap, p, N);
  long sturm1 = f.weight / 12 + 1;
  auto coords = to_basis_coords(src, f.q, std::min(N, sturm1 + f.pole_cap + src.dimension()));
  const bool residue = f.q.ring().kind == RingKind::Residue;
  QExpansion acc = QExpansion::zero(f.q.ring(), N);
  Level1Basis tgt = basis(t, f.pole_cap, p, N);
  for (size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] == 0) continue;
    long n = src.ords[i];
    long kk = t - 12 * n;
    if (!(kk == 0 || (kk >= 4 && kk % 2 == 0))) continue;  // r_m kills this slot
    // locate Delta^n e_{t-12n} in the target basis
    auto it = std::find(tgt.ords.begin(), tgt.ords.end(), n);
    if (it == tgt.ords.end()) throw Error("splitting_r: missing target basis slot");
    const QExpansion& piece = tgt.elements[static_cast<size_t>(it - tgt.ords.begin())].q;
    acc = add(acc, scalar_mul(coords[i], residue ? reduce_mod(piece, f.q.ring().p, f.q.ring().k) : piece));
  }
  ModularForm out(t, 1, std::move(acc));
  out.holo = f.holo;
  out.pole_cap = f.pole_cap;
  return out;
}

bool iota_image_test(const ModularForm& f, long t) {
  long need = (t + 11) / 12 + 1;
  if (f.q.precision() <= need)
    throw InsufficientPrecision("iota_image_test: precision must exceed ceil(t/12)+1");
  auto o = ord_q(f.q);
  if (!o) return true;  // zero to stated precision: ord infinite
  return 12 * *o > t || 12 * *o == t - 2;
}

WeightDropReport serre_weight_drop(const ModularForm& f) {
  if (f.q.ring().kind != RingKind::Residue)
    throw Error("serre_weight_drop: form must be over Z/p^k");
  long p = f.q.ring().p, k = f.q.ring().k;
  long w = f.weight;
  if (w % 2 != 0) throw Error("serre_weight_drop: weight must be even");
  long sturm1 = w / 12 + 1;
  if (f.q.precision() < sturm1)
    throw InsufficientPrecision("serre_weight_drop: precision below the weight-" + std::to_string(w) +
                                " Sturm bound");
  WeightDropReport rep;
  rep.original_weight = w;
  rep.weight = w;
  rep.witness = f;
  if (f.q.is_zero()) {
    rep.weight = 0;
    rep.dropped = true;
    rep.witness = ModularForm(0, 1, QExpansion::zero(f.q.ring(), f.q.precision()));
    return rep;
  }
  long step = (p - 1);
  for (long i = 1; i < k; ++i) step *= p;
  for (long w2 = w - step; w2 >= 0; w2 -= step) {
    bool member = false;
    ModularForm witness;
    if (w2 == 0) {
      // constants
      QExpansion cst = QExpansion::constant(f.q.ring(), f.q.coeff(0), f.q.precision());
      member = equal_to_precision(f.q, cst, sturm1);
      witness = ModularForm(0, 1, std::move(cst));
    } else if (w2 == 2) {
      member = false;  // M_2 = 0
    } else {
      Level1Basis B = basis(w2, 0, p, sturm1);
      auto coords = try_basis_coords(B, f.q.truncated(std::min<long>(f.q.precision(), sturm1)), sturm1);
      if (coords) {
        member = true;
        QExpansion acc = QExpansion::zero(f.q.ring(), sturm1);
        for (size_t i = 0; i < coords->size(); ++i)
          if ((*coords)[i] != 0)
            acc = add(acc, scalar_mul((*coords)[i], reduce_mod(B.elements[i].q, p, k)));
        witness = ModularForm(w2, 1, std::move(acc));
      }
    }
    if (!member) break;  // drops are upward closed along the ladder
    rep.weight = w2;
    rep.dropped = true;
    rep.witness = witness;
  }
  return rep;
}

}  // namespace qcong
