#pragma once

// Spaces M_w(Gamma_0(ell)) as certified q-expansion lattices: dimension
// formula, Sturm bounds, spanning-set construction with rank certificates,
// saturation at p, and mod-p^k membership.

#include "qcong/basics.hpp"
#include "qcong/level1.hpp"
#include "qcong/qseries.hpp"

#include <memory>
#include <string>
#include <vector>

namespace qcong {

// dim M_w(Gamma_0(ell)) for prime ell and even w >= 0, by the standard
// genus/elliptic-point count.
long dimension(long w, long ell);

// floor(w*mu/12) + 1 with mu = 1 (level 1) or ell+1; congruences of
// weight-w forms verified to this many initial coefficients are genuine.
long sturm(long w, long ell_or_one);

struct RankCertificate {
  long rank_q = 0;                       // rank over Q of the lattice rows
  std::vector<long> divisor_p_valuations;  // p-valuations of elementary divisors
};

struct LevelEllSpace {
  long weight = 0, ell = 0, p = 0;
  long sturm_bound = 0;
  long precision = 0;
  std::vector<QExpansion> lattice;  // integer rows, saturated at p
  RankCertificate certificate;
  bool saturated = false;
};

// Spanning rows are weight-w monomials in {E4, E6, E4(q^ell), E6(q^ell),
// Delta, Delta(q^ell), W_ell}; when those stall below the formula dimension
// the pool is enlarged with trivial-character products of two character
// Eisenstein series.  Refuses (SpanDeficient) rather than returning an
// uncertified space.
LevelEllSpace build_space(long w, long ell, long p, long N);

// Shared, compute-at-most-once view of build_space.
std::shared_ptr<const LevelEllSpace> space_cached(long w, long ell, long p, long N);

struct MembershipResult {
  bool member = false;
  std::vector<Int> coordinates;    // in the lattice basis, mod p^k
  long obstruction_index = -1;     // q-index of a certified inconsistency
};

// Does f (over Z/p^k) agree with a Z/p^k-combination of the lattice basis up
// to check_bound (default: the space's Sturm bound)?  Correct because the
// lattice is saturated at p.
MembershipResult membership_mod(const LevelEllSpace& space, const QExpansion& f, long check_bound = -1);

// Membership for meromorphic targets: clears poles by (Delta(q)Delta(q^ell))^m.
MembershipResult membership_mod_meromorphic(const LevelEllSpace& space_shifted, const QExpansion& f,
                                            long pole_cap, long ell, long check_bound = -1);

// Cache file: header "w ell p N rank saturated", then one serialized row per
// line.  Loading re-verifies the rank and saturation certificate.
std::string save_space(const LevelEllSpace& space);
LevelEllSpace load_space(const std::string& text);

}  // namespace qcong
