#include "qcong/chromatic.hpp"

#include "json.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace qcong {

long policy_precision(long w, long ell, long pole_cap) {
  return std::max(sturm(w, ell), sturm(w, 1) * ell) + pole_cap * ell;
}

namespace {

Rat ell_power_in(const CoeffRing& ring, long ell, long w) {
  Int full = ipow(Int(ell), static_cast<unsigned long>(w));
  if (ring.kind == RingKind::Residue) return Rat(mod_floor(full, ring.modulus));
  return Rat(full);
}

ModularForm as_level(const ModularForm& f, long level) {
  ModularForm g = f;
  g.level = level;
  return g;
}

}  // namespace

CofacePair coface_d0(const ModularForm& f, long ell) {
  Rat lk = ell_power_in(f.q.ring(), ell, f.weight);
  CofacePair out;
  out.at_gamma0 = ModularForm(f.weight, ell, scalar_mul(lk, verschiebung(f.q, ell)));
  out.at_level1 = ModularForm(f.weight, 1, scalar_mul(lk, f.q));
  out.at_gamma0.holo = out.at_level1.holo = f.holo;
  out.at_gamma0.pole_cap = out.at_level1.pole_cap = f.pole_cap;
  return out;
}

CofacePair coface_d1(const ModularForm& f, long ell) {
  CofacePair out;
  out.at_gamma0 = as_level(f, ell);
  out.at_level1 = as_level(f, 1);
  return out;
}

AlphaGroupResult alpha_group(long t, long j, const PrimeContext& ctx) {
  if (t < 0 || t % 2 != 0) throw Error("alpha_group: t must be even >= 0");
  if (j < 1) throw Error("alpha_group: j must be >= 1");
  long p = ctx.p, ell = ctx.ell();
  Int pj = ipow(Int(p), static_cast<unsigned long>(j));

  // criterion side (closed form)
  Int crit_order = 1;
  std::optional<std::vector<Rat>> crit_gen_coeffs;  // generator q-expansion, mod p^j
  long N = policy_precision(std::max(t, 4L), ell);
  long m = 0;
  if (t == 0) {
    m = j;
  } else if (t % (p - 1) == 0) {
    long jprime = *nu_p_int(ipow(Int(ell), static_cast<unsigned long>(t)) - 1, Int(p));
    m = std::min<long>(j, jprime);
  }
  if (m > 0) crit_order = ipow(Int(p), static_cast<unsigned long>(m));

  // brute-force side: kernel of the coface system over the holomorphic basis
  Level1Basis B = t >= 4 ? basis(t, 0, p, N)
                         : (t == 0 ? basis(0, 0, p, N) : Level1Basis{});
  long nx = B.dimension();
  GroupStructure bf;
  std::vector<Int> bf_gen;
  if (nx > 0) {
    long s1 = sturm(t, 1), s2 = sturm(t, ell);
    Int lt = pow_mod(Int(ell), Int(t), pj);
    std::vector<QExpansion> Bmod, VBmod;
    for (const auto& e : B.elements) {
      Bmod.push_back(reduce_mod(e.q, p, j));
      VBmod.push_back(verschiebung(Bmod.back(), ell).truncated(std::min<long>(N, s2)));
    }
    ResidueMatrix M(s1 + s2, nx, pj);
    for (long i = 0; i < s1; ++i)
      for (long a = 0; a < nx; ++a)
        M.at(i, a) = mod_floor((lt - 1) * num(Bmod[static_cast<size_t>(a)].coeff(i)), pj);
    for (long i = 0; i < s2; ++i)
      for (long a = 0; a < nx; ++a)
        M.at(s1 + i, a) = mod_floor(lt * num(VBmod[static_cast<size_t>(a)].coeff(i)) -
                                        num(Bmod[static_cast<size_t>(a)].coeff(i)),
                                    pj);
    bf = kernel_mod(M);
  }

  // cross-check: same order, cyclic, generators agree up to a unit
  Int bf_order = bf.order();
  if (bf_order != crit_order)
    throw CrossCheckMismatch("alpha_group: criterion order " + crit_order.str() + " vs kernel order " +
                             bf_order.str() + " at t=" + std::to_string(t) + ", j=" + std::to_string(j));
  AlphaGroupResult out;
  out.t = t;
  out.j = j;
  out.order = crit_order;
  out.method = "criterion+kernel";
  if (crit_order == 1) return out;
  if (bf.orders.size() != 1)
    throw CrossCheckMismatch("alpha_group: kernel is not cyclic at t=" + std::to_string(t));

  // criterion generator: p^{j-m} E_t (E_0 = 1)
  QExpansion gen_q = t == 0 ? QExpansion::constant(CoeffRing::rationals(), Rat(1), N)
                            : eisenstein(t, N).q;
  Int scale = ipow(Int(p), static_cast<unsigned long>(j - m));
  QExpansion crit_gen = scalar_mul(Rat(scale), reduce_mod(gen_q, p, j));
  auto crit_coords_r = to_basis_coords(B, crit_gen, std::min<long>(N, sturm(t, 1)));
  std::vector<Int> crit_coords(crit_coords_r.size());
  for (size_t i = 0; i < crit_coords_r.size(); ++i) crit_coords[i] = num(crit_coords_r[i]);

  // mutual multiples: each generator is a multiple of the other
  ResidueMatrix G1(nx, 1, pj), G2(nx, 1, pj);
  for (long a = 0; a < nx; ++a) {
    G1.at(a, 0) = mod_floor(bf.generators[0][static_cast<size_t>(a)], pj);
    G2.at(a, 0) = mod_floor(crit_coords[static_cast<size_t>(a)], pj);
  }
  std::vector<Int> b1(static_cast<size_t>(nx)), b2(static_cast<size_t>(nx));
  for (long a = 0; a < nx; ++a) {
    b1[static_cast<size_t>(a)] = G2.at(a, 0);
    b2[static_cast<size_t>(a)] = G1.at(a, 0);
  }
  if (!solve_mod(G1, b1).consistent || !solve_mod(G2, b2).consistent)
    throw CrossCheckMismatch("alpha_group: generators disagree beyond a unit at t=" + std::to_string(t));

  out.generator = ModularForm(t, 1, crit_gen);
  return out;
}

std::vector<MRWIndex> mrw_enumerate(long p, const Int& degree_bound) {
  if (degree_bound <= 0) throw Error("mrw_enumerate: degree bound must be positive");
  std::vector<MRWIndex> out;
  // degree >= 2i(p-1) for admissible j, so i is bounded
  long i_cap = static_cast<long>(degree_bound / (2 * (p - 1))) + 1;
  for (long i = 1; i <= i_cap; ++i) {
    long n = 0, s = i;
    while (s % p == 0) {
      s /= p;
      ++n;
    }
    auto degree_of = [&](long j) { return Int(2) * i * (p * p - 1) - Int(2) * j * (p - 1); };
    if (n == 0) {
      // literal evaluation of the bounds excludes n = 0; the s-indexed
      // classes exist with (j, k) = (1, 1)
      if (degree_of(1) <= degree_bound) {
        MRWIndex idx;
        idx.i = i;
        idx.j = 1;
        idx.k = 1;
        idx.s = s;
        idx.n = 0;
        idx.degree = degree_of(1);
        out.push_back(idx);
      }
      continue;
    }
    for (long k = 1; k <= n + 1; ++k) {
      // rational bounds: j <= p^{n-k+1} + p^{n-k} - 1, and
      // (j > p^{n-k} + p^{n-k-1} - 1 or p^k does not divide j)
      auto ppow = [&](long e) { return e >= 0 ? Rat(ipow(Int(p), static_cast<unsigned long>(e))) : Rat(1, ipow(Int(p), static_cast<unsigned long>(-e))); };
      Rat upper = ppow(n - k + 1) + ppow(n - k) - 1;
      Rat lower = ppow(n - k) + ppow(n - k - 1) - 1;
      long step = static_cast<long>(ipow(Int(p), static_cast<unsigned long>(k - 1)));
      for (long j = step; Rat(j) <= upper; j += step) {
        if (!(Rat(j) > lower) && j % (step * p) == 0) continue;
        if (degree_of(j) > degree_bound) continue;
        MRWIndex idx;
        idx.i = i;
        idx.j = j;
        idx.k = k;
        idx.s = s;
        idx.n = n;
        idx.degree = degree_of(j);
        out.push_back(idx);
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const MRWIndex& a, const MRWIndex& b) {
    return std::tie(a.i, a.j, a.k) < std::tie(b.i, b.j, b.k);
  });
  return out;
}

namespace {

struct BetaSystem {
  long t, j, k, p, ell, w, N;
  Int pk;
  Level1Basis Bw, Bt;
  std::shared_ptr<const LevelEllSpace> space;
  QExpansion Ej;  // E_{p-1}^j mod p^k
  std::vector<QExpansion> embedded;  // E^j * B_t mod p^k
  std::vector<std::vector<Int>> s_coords;

  QExpansion form_of(const std::vector<Int>& coords) const {
    QExpansion acc = QExpansion::zero(CoeffRing::residue(p, k), N);
    for (size_t a = 0; a < coords.size(); ++a) {
      if (coords[a] == 0) continue;
      acc = add(acc, scalar_mul(Rat(coords[a]), reduce_mod(Bw.elements[a].q, p, k)));
    }
    return acc;
  }

  // canonical lift into ker r_{j(p-1)}
  ModularForm iota_lift(const std::vector<Int>& coords) const {
    QExpansion g = form_of(coords);
    ModularForm gf(w, 1, g);
    if (t >= 0 && t % 2 == 0) {
      ModularForm r = splitting_r(gf, t, p, k);
      gf.q = sub(gf.q, mul(Ej, r.q).truncated(std::min<long>(N, mul(Ej, r.q).precision())));
    }
    return gf;
  }
};

BetaSystem make_beta_system(long t, long j, long k, const PrimeContext& ctx, long ell_override) {
  long p = ctx.p;
  long ell = ell_override ? ell_override : ctx.ell();
  long step = 1;
  for (long i = 1; i < k; ++i) step *= p;
  if (j % step != 0) throw Error("beta_group: j must be divisible by p^{k-1}");
  long w = t + j * (p - 1);
  if (w < 4) throw Error("beta_group: t + j(p-1) must be >= 4 (empty basis)");
  BetaSystem S{t, j, k, p, ell, w, 0, ipow(Int(p), static_cast<unsigned long>(k)),
               {}, {}, nullptr, {}, {}, {}};
  S.N = policy_precision(w, ell);
  S.Bw = basis(w, 0, p, S.N);
  if (t >= 0 && t % 2 == 0) {
    S.Bt = basis(t, 0, p, S.N);
    // M_t(Gamma_0(ell)) is the membership target of the second coface
    // condition; for t < 0 it is the zero space and no target is built.
    S.space = space_cached(t, ell, p, S.N);
  }
  S.Ej = reduce_mod(pow(eisenstein(p - 1, S.N).q, static_cast<unsigned long>(j), S.N), p, k);
  for (const auto& bt : S.Bt.elements) {
    auto emb = mul(S.Ej, reduce_mod(bt.q, p, k));
    if (emb.precision() > S.N) emb = emb.truncated(S.N);
    S.embedded.push_back(std::move(emb));
  }
  long s1 = sturm(w, 1);
  for (const auto& e : S.embedded) {
    auto coords = to_basis_coords(S.Bw, e, std::min<long>(S.N, s1));
    std::vector<Int> c(coords.size());
    for (size_t i = 0; i < coords.size(); ++i) c[i] = num(coords[i]);
    S.s_coords.push_back(std::move(c));
  }
  return S;
}

}  // namespace

BetaGroup beta_group(long t, long j, long k, const PrimeContext& ctx, long pole_cap, long ell_override) {
  if (j < 1 || k < 1) throw Error("beta_group: j, k must be >= 1");
  long p = ctx.p;
  long w = t + j * (p - 1);
  BetaGroup out;
  out.t = t;
  out.j = j;
  out.k = k;
  out.p = p;
  out.ell = ell_override ? ell_override : ctx.ell();
  out.weight = w;
  if (t % 2 != 0 || w % 2 != 0) return out;  // odd weights carry no forms
  if (pole_cap != 0)
    throw Error("beta_group: meromorphic pole_cap > 0 is exploratory and not wired into the solver");

  BetaSystem S = make_beta_system(t, j, k, ctx, ell_override);
  out.precision = S.N;
  long nx = S.Bw.dimension();
  long ny = S.Bt.dimension();
  long nz = S.space ? static_cast<long>(S.space->lattice.size()) : 0;
  long s1 = sturm(w, 1), s2 = sturm(w, S.ell);
  Int lw = pow_mod(Int(S.ell), Int(w), S.pk);

  std::vector<QExpansion> Bmod, VBmod;
  for (const auto& e : S.Bw.elements) {
    Bmod.push_back(reduce_mod(e.q, p, k));
    VBmod.push_back(verschiebung(Bmod.back(), S.ell).truncated(std::min<long>(S.N, s2)));
  }
  ResidueMatrix M(s1 + s2, nx + ny + nz, S.pk);
  for (long i = 0; i < s1; ++i) {
    for (long a = 0; a < nx; ++a)
      M.at(i, a) = mod_floor((lw - 1) * num(Bmod[static_cast<size_t>(a)].coeff(i)), S.pk);
    for (long b = 0; b < ny; ++b)
      M.at(i, nx + b) = mod_floor(-num(S.embedded[static_cast<size_t>(b)].coeff(i)), S.pk);
  }
  for (long i = 0; i < s2; ++i) {
    for (long a = 0; a < nx; ++a)
      M.at(s1 + i, a) = mod_floor(lw * num(VBmod[static_cast<size_t>(a)].coeff(i)) -
                                      num(Bmod[static_cast<size_t>(a)].coeff(i)),
                                  S.pk);
    for (long c = 0; c < nz; ++c)
      M.at(s1 + i, nx + ny + c) = mod_floor(-num(S.space->lattice[static_cast<size_t>(c)].coeff(i)), S.pk);
  }
  GroupStructure big = kernel_mod(M);
  std::vector<std::vector<Int>> k_gens;
  for (const auto& g : big.generators) k_gens.emplace_back(g.begin(), g.begin() + nx);

  out.structure = quotient_structure(k_gens, S.s_coords, nx, p, k);
  out.class_reps = out.structure.generators;
  for (const auto& rep : out.class_reps) out.generators.push_back(S.iota_lift(rep));
  return out;
}

namespace {

long require_ord(const QExpansion& q) {
  auto o = ord_q(q);
  return o ? *o : q.precision();  // a zero series reports its precision (sentinel)
}

struct ConditionCheck {
  ConditionReport report;
  ConditionWitness witness;
};

// Conditions (1)-(4) of the main correspondence for f of weight t_big = weight(f),
// with small weight t_small = t_big - j(p-1), at level ell.  The modulus p^k
// is carried by f's coefficient ring.
ConditionCheck check_conditions(const ModularForm& f, long t_small, long ell, const PrimeContext& ctx) {
  ConditionCheck out;
  long p = ctx.p;
  long t_big = f.weight;
  // (1) not congruent to 0 mod p
  long nonzero_idx = -1;
  for (long i = 0; i < f.q.precision(); ++i)
    if (num(f.q.coeff(i)) % p != 0) {
      nonzero_idx = i;
      break;
    }
  if (nonzero_idx < 0) {
    out.report = {false, 1, "q-expansion vanishes mod p"};
    return out;
  }
  out.witness.nonvanishing_index = nonzero_idx;
  // (2) ord_q f > t_small/12 or = (t_small-2)/12
  if (!iota_image_test(f, t_small)) {
    out.report = {false, 2, "ord_q is " + std::to_string(require_ord(f.q)) + ", outside the allowed range"};
    return out;
  }
  out.witness.ord_value = require_ord(f.q);
  // (3) no congruent form of lower weight mod p^k
  auto drop = serre_weight_drop(f);
  out.witness.minimal_weight = drop.weight;
  if (drop.dropped) {
    out.report = {false, 3, "congruent to a weight-" + std::to_string(drop.weight) + " form mod p^k"};
    return out;
  }
  // (4) V_ell f - f lands in M_{t_small}(Gamma_0(ell)) mod p^k
  long bound = sturm(t_big, ell);
  if (f.q.precision() < bound)
    throw InsufficientPrecision("condition (4): f needs precision " + std::to_string(bound));
  QExpansion diff = sub(verschiebung(f.q, ell).truncated(f.q.precision()), f.q);
  if (t_small < 0 || t_small % 2 != 0) {
    // the target space is zero
    for (long i = diff.lowest_index(); i < bound; ++i)
      if (diff.coeff(i) != 0) {
        out.report = {false, 4, "V_ell f - f is nonzero but the weight-" + std::to_string(t_small) +
                                    " target space is trivial"};
        return out;
      }
    out.witness.membership_coords[ell] = {};
    out.report = {true, 0, ""};
    return out;
  }
  auto space = space_cached(t_small, ell, p, policy_precision(t_big, ell));
  auto mem = membership_mod(*space, diff, bound);
  if (!mem.member) {
    out.report = {false, 4,
                  "V_ell f - f is obstructed at q^" + std::to_string(mem.obstruction_index) +
                      " for ell=" + std::to_string(ell)};
    return out;
  }
  out.witness.membership_coords[ell] = mem.coordinates;
  out.report = {true, 0, ""};
  return out;
}

}  // namespace

SearchOutcome beta_search(const MRWIndex& idx, const PrimeContext& ctx) {
  SearchOutcome out;
  long p = ctx.p, ell = ctx.ell();
  long t_big = idx.i * (p * p - 1);
  long t_small = t_big - idx.j * (p - 1);
  Int pk = ipow(Int(p), static_cast<unsigned long>(idx.k));
  BetaGroup BG;
  try {
    BG = beta_group(t_small, idx.j, idx.k, ctx);
  } catch (const Error& e) {
    out.failure = std::string("beta_group: ") + e.what();
    return out;
  }
  if (BG.structure.orders.empty()) {
    out.failure = "beta_group is trivial";
    return out;
  }
  // enumerate group elements; keep those of exact additive order p^k
  Int total = 1;
  for (const auto& d : BG.structure.orders) total *= d;
  if (total > 50000) throw Error("beta_search: beta_group too large to enumerate");
  BetaSystem S = make_beta_system(t_small, idx.j, idx.k, ctx, 0);
  long r = static_cast<long>(BG.structure.orders.size());
  std::vector<Int> a(static_cast<size_t>(r), Int(0));
  struct Candidate {
    long ord;
    std::vector<Int> coords;
    ModularForm lift;
  };
  std::vector<Candidate> candidates;
  while (true) {
    // order of sum a_i g_i in the decomposition
    Int order = 1;
    for (long i = 0; i < r; ++i) {
      Int d = BG.structure.orders[static_cast<size_t>(i)];
      Int g = gcd(a[static_cast<size_t>(i)], d);
      Int o = d / (g == 0 ? d : g);
      if (o > order) order = o;
    }
    if (order == pk) {
      std::vector<Int> coords(static_cast<size_t>(S.Bw.dimension()), Int(0));
      for (long i = 0; i < r; ++i)
        for (size_t c = 0; c < coords.size(); ++c)
          coords[c] = mod_floor(coords[c] + a[static_cast<size_t>(i)] * BG.class_reps[static_cast<size_t>(i)][c],
                                S.pk);
      Candidate cand;
      cand.coords = coords;
      cand.lift = S.iota_lift(coords);
      cand.ord = require_ord(cand.lift.q);
      candidates.push_back(std::move(cand));
    }
    long pos = r - 1;
    while (pos >= 0) {
      a[static_cast<size_t>(pos)] += 1;
      if (a[static_cast<size_t>(pos)] < BG.structure.orders[static_cast<size_t>(pos)]) break;
      a[static_cast<size_t>(pos)] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  std::sort(candidates.begin(), candidates.end(), [](const Candidate& x, const Candidate& y) {
    if (x.ord != y.ord) return x.ord < y.ord;
    return x.coords < y.coords;
  });
  std::string last_failure = "no order-p^k class";
  for (const auto& cand : candidates) {
    auto check = check_conditions(cand.lift, t_small, ell, ctx);
    if (!check.report.pass) {
      last_failure = "condition (" + std::to_string(check.report.failed_condition) + "): " + check.report.detail;
      continue;
    }
    BetaCertificate cert;
    cert.p = p;
    cert.index = idx;
    cert.weight = t_big;
    cert.precision = cand.lift.q.precision();
    for (long i = 0; i < cert.precision; ++i) cert.coefficients.push_back(num(cand.lift.q.coeff(i)));
    auto coords = to_basis_coords(S.Bw, cand.lift.q, std::min<long>(S.N, sturm(t_big, 1)));
    for (const auto& c : coords) cert.basis_coords.push_back(num(c));
    cert.witness = check.witness;
    cert.verified_levels = {ell};
    out.found = true;
    out.cert = std::move(cert);
    return out;
  }
  out.failure = last_failure;
  return out;
}

ConditionReport verify_certificate(BetaCertificate& cert, long ell, const PrimeContext& ctx) {
  long p = ctx.p, k = cert.index.k;
  long t_big = cert.weight;
  long t_small = t_big - cert.index.j * (p - 1);
  long N = std::max(policy_precision(t_big, ell), cert.precision);
  Level1Basis Bw = basis(t_big, 0, p, N);
  if (static_cast<long>(cert.basis_coords.size()) != Bw.dimension())
    return {false, 0, "stored coordinate count does not match the basis"};
  QExpansion f = QExpansion::zero(CoeffRing::residue(p, k), N);
  for (size_t a = 0; a < cert.basis_coords.size(); ++a) {
    if (cert.basis_coords[a] == 0) continue;
    f = add(f, scalar_mul(Rat(cert.basis_coords[a]), reduce_mod(Bw.elements[a].q, p, k)));
  }
  // stored expansion must re-verify coefficient by coefficient
  Int pk = ipow(Int(p), static_cast<unsigned long>(k));
  for (long i = 0; i < cert.precision && i < N; ++i)
    if (mod_floor(cert.coefficients[static_cast<size_t>(i)], pk) != num(f.coeff(i)))
      return {false, 0, "stored coefficients disagree with the basis coordinates at q^" + std::to_string(i)};
  ModularForm mf(t_big, 1, f);
  auto check = check_conditions(mf, t_small, ell, ctx);
  if (check.report.pass) {
    cert.witness.membership_coords[ell] = check.witness.membership_coords[ell];
    if (std::find(cert.verified_levels.begin(), cert.verified_levels.end(), ell) == cert.verified_levels.end())
      cert.verified_levels.push_back(ell);
  }
  return check.report;
}

ConverseOutcome converse_check(const ModularForm& f, long j, long k, const PrimeContext& ctx) {
  long p = ctx.p;
  long t = f.weight;
  long step = p - 1;
  for (long i = 1; i < k; ++i) step *= p;
  if (t % step != 0) throw Error("converse_check: t must be divisible by (p-1)p^{k-1}");
  long t_small = t - j * (p - 1);
  auto check = check_conditions(f, t_small, ctx.ell(), ctx);
  ConverseOutcome out;
  if (!check.report.pass) {
    out.kind = ConverseOutcome::Kind::Rejected;
    out.failed_condition = check.report.failed_condition;
    out.detail = check.report.detail;
    return out;
  }
  if (t % (p * p - 1) != 0) {
    out.kind = ConverseOutcome::Kind::NonIntegralWeightRatio;
    out.detail = "weight " + std::to_string(t) + " is not a multiple of p^2-1 despite conditions (1)-(4)";
    return out;
  }
  long i = t / (p * p - 1);
  out.i = i;
  // i = p^n with n >= 1 requires j >= p^n for the indexed generator
  long q = i;
  bool power_of_p = q >= p;
  while (q > 1) {
    if (q % p != 0) {
      power_of_p = false;
      break;
    }
    q /= p;
  }
  if (power_of_p && j < i) {
    out.kind = ConverseOutcome::Kind::PowerOfPException;
    out.detail = "i = " + std::to_string(i) + " is a power of p and j < i";
    return out;
  }
  out.kind = ConverseOutcome::Kind::BetaIndexed;
  return out;
}

RigidityReport rigidity_check(BetaCertificate& cert, const std::vector<long>& ells, const PrimeContext& ctx) {
  RigidityReport rep;
  rep.pass = true;
  for (long ell : ells) {
    auto r = verify_certificate(cert, ell, ctx);
    if (!r.pass) rep.pass = false;
    rep.per_level.emplace_back(ell, std::move(r));
  }
  return rep;
}

std::string certificate_to_json(const BetaCertificate& cert) {
  nlohmann::ordered_json doc;
  doc["p"] = std::to_string(cert.p);
  doc["index"] = {{"i", std::to_string(cert.index.i)},
                  {"j", std::to_string(cert.index.j)},
                  {"k", std::to_string(cert.index.k)}};
  doc["weight"] = std::to_string(cert.weight);
  doc["degree"] = cert.index.degree.str();
  doc["modulus"] = ipow(Int(cert.p), static_cast<unsigned long>(cert.index.k)).str();
  doc["precision"] = std::to_string(cert.precision);
  nlohmann::ordered_json coeffs = nlohmann::ordered_json::array();
  for (const auto& c : cert.coefficients) coeffs.push_back(c.str());
  doc["coefficients"] = coeffs;
  nlohmann::ordered_json coords = nlohmann::ordered_json::array();
  for (const auto& c : cert.basis_coords) coords.push_back(c.str());
  doc["basis_coordinates"] = coords;
  nlohmann::ordered_json wit;
  wit["nonvanishing_index"] = std::to_string(cert.witness.nonvanishing_index);
  wit["ord_q"] = std::to_string(cert.witness.ord_value);
  wit["minimal_weight"] = std::to_string(cert.witness.minimal_weight);
  nlohmann::ordered_json mem;
  for (const auto& [ell, cs] : cert.witness.membership_coords) {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& c : cs) arr.push_back(c.str());
    mem[std::to_string(ell)] = arr;
  }
  wit["membership"] = mem;
  doc["witnesses"] = wit;
  nlohmann::ordered_json lv = nlohmann::ordered_json::array();
  for (long ell : cert.verified_levels) lv.push_back(std::to_string(ell));
  doc["verified_levels"] = lv;
  return doc.dump(2) + "\n";
}

BetaCertificate certificate_from_json(const std::string& text) {
  auto doc = nlohmann::ordered_json::parse(text);
  BetaCertificate cert;
  cert.p = std::stol(doc.at("p").get<std::string>());
  cert.index.i = std::stol(doc.at("index").at("i").get<std::string>());
  cert.index.j = std::stol(doc.at("index").at("j").get<std::string>());
  cert.index.k = std::stol(doc.at("index").at("k").get<std::string>());
  cert.weight = std::stol(doc.at("weight").get<std::string>());
  cert.index.degree = Int(doc.at("degree").get<std::string>());
  long n = cert.index.i;
  cert.index.n = 0;
  while (n % cert.p == 0) {
    n /= cert.p;
    ++cert.index.n;
  }
  cert.index.s = n;
  cert.precision = std::stol(doc.at("precision").get<std::string>());
  for (const auto& c : doc.at("coefficients")) cert.coefficients.emplace_back(c.get<std::string>());
  for (const auto& c : doc.at("basis_coordinates")) cert.basis_coords.emplace_back(c.get<std::string>());
  const auto& wit = doc.at("witnesses");
  cert.witness.nonvanishing_index = std::stol(wit.at("nonvanishing_index").get<std::string>());
  cert.witness.ord_value = std::stol(wit.at("ord_q").get<std::string>());
  cert.witness.minimal_weight = std::stol(wit.at("minimal_weight").get<std::string>());
  for (const auto& [key, arr] : wit.at("membership").items()) {
    std::vector<Int> cs;
    for (const auto& c : arr) cs.emplace_back(c.get<std::string>());
    cert.witness.membership_coords[std::stol(key)] = std::move(cs);
  }
  for (const auto& ell : doc.at("verified_levels")) cert.verified_levels.push_back(std::stol(ell.get<std::string>()));
  return cert;
}

RangeResult beta_search_range(const PrimeContext& ctx, long i_max, long jobs) {
  RangeResult out;
  Int bound = Int(2) * i_max * (ctx.p * ctx.p - 1);
  for (auto& idx : mrw_enumerate(ctx.p, bound))
    if (idx.i <= i_max) out.indices.push_back(idx);
  out.outcomes.resize(out.indices.size());
  if (jobs < 1) jobs = 1;
  std::atomic<size_t> next{0};
  auto worker = [&] {
    while (true) {
      size_t i = next.fetch_add(1);
      if (i >= out.indices.size()) break;
      out.outcomes[i] = beta_search(out.indices[i], ctx);
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (long t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  return out;
}

}  // namespace qcong
