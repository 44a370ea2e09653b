#include "qcong/level_ell.hpp"

#include "qcong/eis_char.hpp"
#include "qcong/numtheory.hpp"
#include "qcong/once_cache.hpp"
#include "qcong/residue_linalg.hpp"

#include <algorithm>
#include <sstream>
#include <tuple>

namespace qcong {

namespace {

long epsilon2(long ell) {
  if (ell == 2) return 1;
  return ell % 4 == 1 ? 2 : 0;
}

long epsilon3(long ell) {
  if (ell == 3) return 1;
  return ell % 3 == 1 ? 2 : 0;
}

long genus0(long ell) {
  // g = (ell+1)/12 - eps2/4 - eps3/3 for prime ell (two cusps)
  Rat g = Rat(ell + 1, 12) - Rat(epsilon2(ell), 4) - Rat(epsilon3(ell), 3);
  if (den(g) != 1) throw Error("genus: non-integral result");
  return static_cast<long>(num(g));
}

}  // namespace

long dimension(long w, long ell) {
  if (!is_prime_small(ell)) throw Error("dimension: level must be prime");
  if (w < 0 || w % 2 != 0) throw Error("dimension: weight must be even >= 0");
  if (w == 0) return 1;
  long g = genus0(ell);
  return (w - 1) * (g - 1) + (w / 4) * epsilon2(ell) + (w / 3) * epsilon3(ell) + w;
}

long sturm(long w, long ell_or_one) {
  long mu = ell_or_one == 1 ? 1 : ell_or_one + 1;
  return (w * mu) / 12 + 1;
}

namespace {

// weight-2 Eisenstein series for Gamma_0(ell): 1 + 24/(ell-1) sum (sigma_1(n) - ell sigma_1(n/ell)) q^n
QExpansion w_series(long ell, long N) {
  if (24 % (ell - 1) != 0) throw UnsupportedLevel(ell, "W_ell is only integral for ell-1 | 24");
  Rat c(24, ell - 1);
  std::vector<Rat> v(static_cast<size_t>(N));
  v[0] = 1;
  for (long n = 1; n < N; ++n) {
    Int s = sigma(1, n);
    if (n % ell == 0) s -= ell * sigma(1, n / ell);
    v[static_cast<size_t>(n)] = c * Rat(s);
  }
  return QExpansion(CoeffRing::integers(), 0, std::move(v));
}

QExpansion to_integer_ring(const QExpansion& f) {
  std::vector<Rat> v(static_cast<size_t>(f.precision() - f.lowest_index()));
  for (long i = f.lowest_index(); i < f.precision(); ++i)
    v[static_cast<size_t>(i - f.lowest_index())] = f.coeff(i);
  return QExpansion(CoeffRing::integers(), f.lowest_index(), std::move(v));
}

// Incremental rational echelon used to filter spanning candidates.
struct RankFilter {
  long cols;
  std::vector<std::vector<Rat>> echelon;  // rows with strictly increasing pivot columns
  std::vector<long> pivots;

  explicit RankFilter(long c) : cols(c) {}

  bool try_add(const QExpansion& row) {
    std::vector<Rat> v(static_cast<size_t>(cols));
    for (long i = 0; i < cols; ++i) v[static_cast<size_t>(i)] = row.coeff(i);
    for (size_t r = 0; r < echelon.size(); ++r) {
      const Rat& x = v[static_cast<size_t>(pivots[r])];
      if (x == 0) continue;
      Rat f = x / echelon[r][static_cast<size_t>(pivots[r])];
      for (long j = pivots[r]; j < cols; ++j) v[static_cast<size_t>(j)] -= f * echelon[r][static_cast<size_t>(j)];
    }
    long piv = -1;
    for (long j = 0; j < cols; ++j)
      if (v[static_cast<size_t>(j)] != 0) {
        piv = j;
        break;
      }
    if (piv < 0) return false;
    // keep echelon sorted by pivot column
    size_t pos = 0;
    while (pos < pivots.size() && pivots[pos] < piv) ++pos;
    echelon.insert(echelon.begin() + static_cast<long>(pos), std::move(v));
    pivots.insert(pivots.begin() + static_cast<long>(pos), piv);
    return true;
  }
};

OnceCache<std::tuple<long, long, long, long>, LevelEllSpace> space_cache;

}  // namespace

LevelEllSpace build_space(long w, long ell, long p, long N) {
  const auto& levels = supported_levels();
  if (std::find(levels.begin(), levels.end(), ell) == levels.end())
    throw UnsupportedLevel(ell, "build_space: level " + std::to_string(ell) + " outside the supported set");
  if (w < 0 || w % 2 != 0) throw Error("build_space: weight must be even >= 0");
  if (!is_prime_small(p) || p < 5 || p == ell) throw Error("build_space: p must be a prime >= 5 different from ell");
  long s = sturm(w, ell);
  if (N < s) throw InsufficientPrecision("build_space: precision below the Sturm bound");

  LevelEllSpace space;
  space.weight = w;
  space.ell = ell;
  space.p = p;
  space.sturm_bound = s;
  space.precision = N;

  long dim = dimension(w, ell);
  RankFilter filter(s);
  std::vector<QExpansion> selected;

  if (w == 0) {
    selected.push_back(QExpansion::constant(CoeffRing::integers(), Rat(1), N));
    filter.try_add(selected.back());
  } else {
    // tier 1: monomials in the seven standard generators
    std::vector<QExpansion> gens;
    std::vector<long> gw = {4, 6, 4, 6, 12, 12, 2};
    gens.push_back(to_integer_ring(eisenstein(4, N).q));
    gens.push_back(to_integer_ring(eisenstein(6, N).q));
    gens.push_back(verschiebung(gens[0], ell).truncated(N));
    gens.push_back(verschiebung(gens[1], ell).truncated(N));
    gens.push_back(delta(N).q);
    gens.push_back(verschiebung(gens[4], ell).truncated(N));
    gens.push_back(w_series(ell, N));

    // depth-first over exponent vectors, largest exponent of the earliest
    // generator first, sharing partial products
    auto dfs = [&](auto&& self, size_t idx, long left, const QExpansion& cur) -> bool {
      if (static_cast<long>(filter.echelon.size()) >= dim) return true;
      if (left == 0) {
        if (filter.try_add(cur)) selected.push_back(cur.truncated(N));
        return static_cast<long>(filter.echelon.size()) >= dim;
      }
      if (idx >= gens.size()) return false;
      long emax = left / gw[idx];
      std::vector<QExpansion> powers;
      powers.push_back(cur);
      for (long e = 1; e <= emax; ++e) powers.push_back(mul(powers.back(), gens[idx]));
      for (long e = emax; e >= 0; --e)
        if (self(self, idx + 1, left - gw[idx] * e, powers[static_cast<size_t>(e)])) return true;
      return false;
    };
    dfs(dfs, 0, w, QExpansion::constant(CoeffRing::integers(), Rat(1), N));

    // tier 2: character Eisenstein products
    if (static_cast<long>(filter.echelon.size()) < dim) {
      for (auto& row : char_product_rows(w, ell, N)) {
        std::vector<Rat> v(row.size());
        for (size_t i = 0; i < row.size(); ++i) v[i] = Rat(row[i]);
        QExpansion cand(CoeffRing::integers(), 0, std::move(v));
        if (filter.try_add(cand)) selected.push_back(std::move(cand));
        if (static_cast<long>(filter.echelon.size()) >= dim) break;
      }
    }
  }

  long rank = static_cast<long>(filter.echelon.size());
  if (rank < dim)
    throw SpanDeficient(w, ell,
                        "build_space: spanning set reaches rank " + std::to_string(rank) + " < dim " +
                            std::to_string(dim) + " at weight " + std::to_string(w) + ", level " +
                            std::to_string(ell));

  // saturate at p on the Sturm-truncated rows; exactness of the division on
  // the full rows follows from the mod-p Sturm bound.
  bool changed = true;
  while (changed) {
    changed = false;
    ResidueMatrix T(s, static_cast<long>(selected.size()), Int(p));
    for (long i = 0; i < s; ++i)
      for (size_t j = 0; j < selected.size(); ++j)
        T.at(i, static_cast<long>(j)) = mod_floor(num(selected[j].coeff(i)), Int(p));
    GroupStructure ker = kernel_mod(T);  // combinations c with sum c_j row_j = 0 mod p
    for (const auto& c : ker.generators) {
      std::vector<Rat> comb(static_cast<size_t>(N), Rat(0));
      for (size_t j = 0; j < selected.size(); ++j) {
        if (c[j] == 0) continue;
        for (long i = 0; i < N; ++i) comb[static_cast<size_t>(i)] += Rat(c[j]) * selected[j].coeff(i);
      }
      bool divisible = true;
      for (long i = 0; i < N && divisible; ++i) divisible = num(comb[static_cast<size_t>(i)]) % p == 0;
      if (!divisible) throw Error("build_space: saturation division failed beyond the Sturm bound");
      for (long i = 0; i < N; ++i) comb[static_cast<size_t>(i)] = Rat(num(comb[static_cast<size_t>(i)]) / p);
      // replace the highest-index row entering with a unit coefficient
      long repl = -1;
      for (long j = static_cast<long>(selected.size()) - 1; j >= 0; --j)
        if (c[static_cast<size_t>(j)] % p != 0) {
          repl = j;
          break;
        }
      if (repl < 0) continue;
      selected[static_cast<size_t>(repl)] = QExpansion(CoeffRing::integers(), 0, std::move(comb));
      changed = true;
      break;  // recompute the kernel after each replacement
    }
  }

  // certificate: rank over Q and p-valuations of the elementary divisors
  ResidueMatrix Z(static_cast<long>(selected.size()), s, Int(0));
  for (size_t j = 0; j < selected.size(); ++j)
    for (long i = 0; i < s; ++i) Z.at(static_cast<long>(j), i) = num(selected[j].coeff(i));
  space.certificate.divisor_p_valuations = elementary_p_valuations(Z, p);
  space.certificate.rank_q = static_cast<long>(space.certificate.divisor_p_valuations.size());
  if (space.certificate.rank_q != dim) throw Error("build_space: rank certificate lost rank during saturation");
  space.saturated = std::all_of(space.certificate.divisor_p_valuations.begin(),
                                space.certificate.divisor_p_valuations.end(), [](long v) { return v == 0; });
  if (!space.saturated) throw Error("build_space: saturation failed to clear p from the elementary divisors");
  space.lattice = std::move(selected);
  return space;
}

std::shared_ptr<const LevelEllSpace> space_cached(long w, long ell, long p, long N) {
  return space_cache.get({w, ell, p, N}, [&] { return build_space(w, ell, p, N); });
}

MembershipResult membership_mod(const LevelEllSpace& space, const QExpansion& f, long check_bound) {
  if (!space.saturated) throw UnsaturatedSpace("membership_mod: space lattice is not saturated at p");
  if (f.ring().kind != RingKind::Residue) throw RingMismatch("membership_mod: f must be over Z/p^k");
  if (f.ring().p != space.p) throw RingMismatch("membership_mod: space saturated at a different prime");
  long bound = check_bound < 0 ? space.sturm_bound : check_bound;
  if (bound < space.sturm_bound)
    throw Error("membership_mod: check bound below the Sturm bound certifies nothing");
  if (f.precision() < bound)
    throw InsufficientPrecision("membership_mod: f known to precision " + std::to_string(f.precision()) +
                                " < bound " + std::to_string(bound));
  if (space.precision < bound)
    throw InsufficientPrecision("membership_mod: space rows shorter than the requested bound");
  for (long i = f.lowest_index(); i < 0; ++i)
    if (f.coeff(i) != 0) {
      MembershipResult r;
      r.member = false;
      r.obstruction_index = i;
      return r;
    }
  ResidueMatrix M(bound, static_cast<long>(space.lattice.size()), f.ring().modulus);
  for (long i = 0; i < bound; ++i)
    for (size_t j = 0; j < space.lattice.size(); ++j)
      M.at(i, static_cast<long>(j)) = mod_floor(num(space.lattice[j].coeff(i)), f.ring().modulus);
  std::vector<Int> b(static_cast<size_t>(bound));
  for (long i = 0; i < bound; ++i) b[static_cast<size_t>(i)] = num(f.coeff(i));
  auto sol = solve_mod(M, b);
  MembershipResult r;
  if (sol.consistent) {
    r.member = true;
    r.coordinates = std::move(sol.x);
  } else {
    r.member = false;
    r.obstruction_index = sol.inconsistent_row;
  }
  return r;
}

MembershipResult membership_mod_meromorphic(const LevelEllSpace& space_shifted, const QExpansion& f,
                                            long pole_cap, long ell, long check_bound) {
  if (pole_cap == 0) return membership_mod(space_shifted, f, check_bound);
  long N = f.precision();
  QExpansion clear = reduce_mod(to_integer_ring(delta(N).q), f.ring().p, f.ring().k);
  QExpansion clear_ell = verschiebung(clear, ell);
  QExpansion g = f;
  for (long m = 0; m < pole_cap; ++m) g = mul(mul(g, clear), clear_ell);
  return membership_mod(space_shifted, g, check_bound);
}

std::string save_space(const LevelEllSpace& space) {
  std::ostringstream os;
  os << space.weight << ' ' << space.ell << ' ' << space.p << ' ' << space.precision << ' '
     << space.certificate.rank_q << ' ' << (space.saturated ? 1 : 0) << '\n';
  for (const auto& row : space.lattice) os << row.serialize() << '\n';
  return os.str();
}

LevelEllSpace load_space(const std::string& text) {
  std::istringstream is(text);
  std::string header;
  if (!std::getline(is, header)) throw Error("load_space: empty cache file");
  std::istringstream hs(header);
  long w, ell, p, N, rank, sat;
  if (!(hs >> w >> ell >> p >> N >> rank >> sat)) throw Error("load_space: bad header");
  std::vector<QExpansion> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    rows.push_back(QExpansion::parse(line, CoeffRing::integers()));
  }
  LevelEllSpace space;
  space.weight = w;
  space.ell = ell;
  space.p = p;
  space.precision = N;
  space.sturm_bound = sturm(w, ell);
  space.lattice = std::move(rows);
  // re-verify the rank certificate
  long s = space.sturm_bound;
  ResidueMatrix Z(static_cast<long>(space.lattice.size()), s, Int(0));
  for (size_t j = 0; j < space.lattice.size(); ++j) {
    if (space.lattice[j].precision() < s) throw Error("load_space: row shorter than the Sturm bound");
    for (long i = 0; i < s; ++i) Z.at(static_cast<long>(j), i) = num(space.lattice[j].coeff(i));
  }
  space.certificate.divisor_p_valuations = elementary_p_valuations(Z, p);
  space.certificate.rank_q = static_cast<long>(space.certificate.divisor_p_valuations.size());
  bool clean = std::all_of(space.certificate.divisor_p_valuations.begin(),
                           space.certificate.divisor_p_valuations.end(), [](long v) { return v == 0; });
  if (space.certificate.rank_q != rank || space.certificate.rank_q != dimension(w, ell) || !clean || sat != 1)
    throw Error("load_space: certificate re-verification failed");
  space.saturated = true;
  return space;
}

}  // namespace qcong
