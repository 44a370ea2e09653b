#pragma once

// The headline computations: cochain differentials d_0 and d_1, the
// alpha-family groups A_{t/j}, the beta-family groups B_{t/j,k}, index
// enumeration, and certificate search / verification / converse / rigidity.

#include "qcong/basics.hpp"
#include "qcong/level1.hpp"
#include "qcong/level_ell.hpp"
#include "qcong/numtheory.hpp"
#include "qcong/residue_linalg.hpp"

#include <map>
#include <string>
#include <vector>

namespace qcong {

// Precision for a mod-p^k assertion at weight w and level ell.
long policy_precision(long w, long ell, long pole_cap = 0);

struct CofacePair {
  ModularForm at_gamma0;  // component in M_k(Gamma_0(ell))
  ModularForm at_level1;
};

// d_0(f) = (ell^k f(q^ell), ell^k f(q)); d_1(f) = (f, f).
CofacePair coface_d0(const ModularForm& f, long ell);
CofacePair coface_d1(const ModularForm& f, long ell);

struct AlphaGroupResult {
  long t = 0, j = 0;
  Int order = 1;  // 1 means the trivial group
  std::optional<ModularForm> generator;  // mod p^j
  std::string method;
};

// A_{t/j} computed two ways (closed-form criterion and kernel solve) with a
// hard cross-check between them.
AlphaGroupResult alpha_group(long t, long j, const PrimeContext& ctx);

struct MRWIndex {
  long i = 0, j = 0, k = 0;
  long s = 0, n = 0;  // i = s p^n, (s, p) = 1
  Int degree;         // 2i(p^2-1) - 2j(p-1)
};

// All admissible (i, j, k) with degree <= degree_bound; the i = s (n = 0)
// case contributes (j, k) = (1, 1) only.
std::vector<MRWIndex> mrw_enumerate(long p, const Int& degree_bound);

struct BetaGroup {
  long t = 0, j = 0, k = 0;
  long p = 0, ell = 0;
  long weight = 0;     // t + j(p-1)
  long precision = 0;
  GroupStructure structure;                  // of the quotient group
  std::vector<std::vector<Int>> class_reps;  // x-coordinates per generator
  std::vector<ModularForm> generators;       // iota-lifted representatives

  long count_of_order(const Int& d) const {
    long n = 0;
    for (const auto& o : structure.orders)
      if (o == d) ++n;
    return n;
  }
};

// B_{t/j,k}: kernel of the coface system on M_{t+j(p-1)} mod p^k, modulo the
// image of M_t embedded by multiplication with E_{p-1}^j.  Requires
// j = 0 mod p^{k-1} and t + j(p-1) >= 4.
BetaGroup beta_group(long t, long j, long k, const PrimeContext& ctx, long pole_cap = 0, long ell_override = 0);

struct ConditionWitness {
  long nonvanishing_index = -1;                       // condition (1)
  long ord_value = -1;                                // condition (2)
  long minimal_weight = -1;                           // condition (3)
  std::map<long, std::vector<Int>> membership_coords; // condition (4), per level
};

struct BetaCertificate {
  long p = 0;
  MRWIndex index;
  long weight = 0;  // i(p^2-1)
  long precision = 0;
  std::vector<Int> coefficients;  // f mod p^k at indices 0..precision-1
  std::vector<Int> basis_coords;  // in the weight echelon basis
  ConditionWitness witness;
  std::vector<long> verified_levels;
};

struct SearchOutcome {
  bool found = false;
  BetaCertificate cert;
  std::string failure;
};

// Finds a form of exact additive order p^k passing conditions (1)-(4) by
// lifting generators of beta_group; deterministic candidate order (least
// ord_q, then lexicographic coordinates).
SearchOutcome beta_search(const MRWIndex& idx, const PrimeContext& ctx);

struct ConditionReport {
  bool pass = false;
  int failed_condition = 0;  // 1..4, or 0
  std::string detail;
};

// Re-checks conditions (1)-(4) at level ell from scratch; appends ell to
// verified_levels on success.  Also re-verifies the stored expansion prefix.
ConditionReport verify_certificate(BetaCertificate& cert, long ell, const PrimeContext& ctx);

struct ConverseOutcome {
  enum class Kind { BetaIndexed, PowerOfPException, Rejected, NonIntegralWeightRatio };
  Kind kind = Kind::Rejected;
  long i = 0;
  int failed_condition = 0;
  std::string detail;
};

// Weight-t forms satisfying (1)-(4) must have t = i(p^2-1); the i = p^n,
// j < p^n case is the documented exception.
ConverseOutcome converse_check(const ModularForm& f, long j, long k, const PrimeContext& ctx);

struct RigidityReport {
  bool pass = false;
  std::vector<std::pair<long, ConditionReport>> per_level;
};

RigidityReport rigidity_check(BetaCertificate& cert, const std::vector<long>& ells, const PrimeContext& ctx);

// Canonical JSON: fixed key order, integers as decimal strings.
std::string certificate_to_json(const BetaCertificate& cert);
BetaCertificate certificate_from_json(const std::string& text);

struct RangeResult {
  std::vector<MRWIndex> indices;
  std::vector<SearchOutcome> outcomes;  // one per index, in index order
};

// beta_search over every admissible index with i <= i_max, run on `jobs`
// workers; outcomes are assembled in index order regardless of scheduling.
RangeResult beta_search_range(const PrimeContext& ctx, long i_max, long jobs);

}  // namespace qcong
