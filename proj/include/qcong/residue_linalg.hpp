#pragma once

// Exact linear algebra over Z and Z/p^k: Howell forms, kernels, solving,
// Smith/Hermite normal forms, and finite-module structure.

#include "qcong/basics.hpp"

#include <vector>

namespace qcong {

struct ResidueMatrix {
  Int modulus;  // p^k, or 0 meaning Z
  long rows = 0, cols = 0;
  std::vector<Int> a;  // row-major, canonical residues when modulus != 0

  ResidueMatrix() : modulus(0) {}
  ResidueMatrix(long r, long c, Int m)
      : modulus(std::move(m)), rows(r), cols(c), a(static_cast<size_t>(r * c), Int(0)) {}

  Int& at(long i, long j) { return a[static_cast<size_t>(i * cols + j)]; }
  const Int& at(long i, long j) const { return a[static_cast<size_t>(i * cols + j)]; }

  void reduce();
  ResidueMatrix transposed() const;
};

// Canonical row-reduced form over Z/p^k whose row span (as a Z/p^k-module)
// equals the input's.  Zero rows are kept at the bottom, padded to at least
// the input row count.
ResidueMatrix howell_form(const ResidueMatrix& M);

struct HowellTransform {
  ResidueMatrix H;  // Howell form, zero rows dropped
  ResidueMatrix T;  // H = T * M over Z/p^k
  std::vector<long> pivot_col;  // per H row
  std::vector<long> pivot_val;  // nu_p of the pivot, per H row
};
HowellTransform howell_with_transform(const ResidueMatrix& M);

struct GroupStructure {
  std::vector<Int> orders;                   // > 1 each, nonincreasing
  std::vector<std::vector<Int>> generators;  // coordinate vectors, one per order

  Int order() const {
    Int o = 1;
    for (const auto& d : orders) o *= d;
    return o;
  }
};

// Structure and generators of {x : M x = 0} as a Z/p^k-module.
GroupStructure kernel_mod(const ResidueMatrix& M);

struct SolveOutcome {
  bool consistent = false;
  std::vector<Int> x;
  long inconsistent_row = -1;
};

// Any solution of M x = b over Z/p^k, or a certified inconsistency naming a row.
SolveOutcome solve_mod(const ResidueMatrix& M, const std::vector<Int>& b);

// Elementary divisors d1 | d2 | ... of an integer matrix.
std::vector<Int> smith_form_int(ResidueMatrix M);

struct SmithDecomposition {
  std::vector<Int> divisors;
  ResidueMatrix vinv;  // over Z; generators of row span are divisors[i] * (vinv * basis) rows
};
SmithDecomposition smith_int_with_vinv(ResidueMatrix M);

// Basis of the integer row lattice (Hermite form, zero rows dropped).
std::vector<std::vector<Int>> hermite_basis_int(const ResidueMatrix& M);

// p-adic valuations of the elementary divisors (Smith form over Z_(p)),
// one entry per nonzero divisor, nondecreasing.
std::vector<long> elementary_p_valuations(const ResidueMatrix& M, long p);

// Structure of span(k_gens)/span(s_gens) inside (Z/p^k)^dim; s_gens must span
// a submodule of span(k_gens).  Generators are returned in ambient coordinates.
GroupStructure quotient_structure(const std::vector<std::vector<Int>>& k_gens,
                                  const std::vector<std::vector<Int>>& s_gens,
                                  long dim, long p, long k);

}  // namespace qcong
