#include "qcong/residue_linalg.hpp"

#include "qcong/numtheory.hpp"

#include <algorithm>
#include <tuple>

namespace qcong {

void ResidueMatrix::reduce() {
  if (modulus == 0) return;
  for (auto& x : a) x = mod_floor(x, modulus);
}

ResidueMatrix ResidueMatrix::transposed() const {
  ResidueMatrix t(cols, rows, modulus);
  for (long i = 0; i < rows; ++i)
    for (long j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
  return t;
}

namespace {

long prime_of_modulus(const Int& m) {
  for (long p = 2;; ++p)
    if (m % p == 0) return p;
}

long val_p(const Int& x, long p) {
  // x != 0
  long v = 0;
  Int y = x;
  while (y % p == 0) {
    y /= p;
    ++v;
  }
  return v;
}

struct WorkRow {
  std::vector<Int> v;  // cols entries then transform entries
};

// Echelon + Howell completion over Z/p^k on augmented rows [A | T].
// Returns rows sorted by pivot column, zero-A rows last.
struct HowellCore {
  long cols;       // width of the A part
  long width;      // total width (A + T)
  Int modulus;
  long p, kexp;
  std::vector<std::vector<Int>> rows;
  std::vector<long> pivcol, pivval;  // per echelon row

  void reduce_row(std::vector<Int>& r) const {
    for (auto& x : r) x = mod_floor(x, modulus);
  }

  // r -= q * rows[i]
  void submul(std::vector<Int>& r, const Int& q, const std::vector<Int>& src) const {
    for (long j = 0; j < width; ++j) r[static_cast<size_t>(j)] =
        mod_floor(r[static_cast<size_t>(j)] - q * src[static_cast<size_t>(j)], modulus);
  }

  // Reduce candidate against current echelon rows; returns true if it
  // survives with a nonzero A part.
  bool forward_reduce(std::vector<Int>& cand) const {
    for (size_t i = 0; i < rows.size(); ++i) {
      long c = pivcol[i];
      const Int& x = cand[static_cast<size_t>(c)];
      if (x == 0) continue;
      long vx = val_p(x, p);
      if (vx < pivval[i]) return true;  // cannot be cleared here; strictly new
      Int q = x / ipow(Int(p), static_cast<unsigned long>(pivval[i]));
      submul(cand, q, rows[i]);
    }
    for (long j = 0; j < cols; ++j)
      if (cand[static_cast<size_t>(j)] != 0) return true;
    return false;
  }

  void echelonize(std::vector<std::vector<Int>> input) {
    rows.clear();
    pivcol.clear();
    pivval.clear();
    std::vector<std::vector<Int>> pending = std::move(input);
    for (auto& r : pending) reduce_row(r);
    long start_col = 0;
    while (true) {
      // select pivot: min valuation in the earliest column with a nonzero entry
      long best_row = -1, best_col = -1, best_val = 0;
      for (long c = start_col; c < cols && best_row < 0; ++c) {
        for (size_t i = 0; i < pending.size(); ++i) {
          const Int& x = pending[i][static_cast<size_t>(c)];
          if (x == 0) continue;
          long v = val_p(x, p);
          if (best_row < 0 || v < best_val) {
            best_row = static_cast<long>(i);
            best_col = c;
            best_val = v;
          }
        }
        if (best_row >= 0) {
          // also scan remaining pending rows at this column (done above); stop here
          break;
        }
      }
      if (best_row < 0) break;
      auto row = pending[static_cast<size_t>(best_row)];
      pending.erase(pending.begin() + best_row);
      // normalize: leading entry becomes p^val
      Int lead = row[static_cast<size_t>(best_col)];
      Int unit = lead / ipow(Int(p), static_cast<unsigned long>(best_val));
      Int uinv = mod_inverse(unit, modulus);
      for (auto& x : row) x = mod_floor(x * uinv, modulus);
      // eliminate in pending rows
      Int ppow = ipow(Int(p), static_cast<unsigned long>(best_val));
      for (auto& r : pending) {
        const Int& x = r[static_cast<size_t>(best_col)];
        if (x == 0) continue;
        Int q = x / ppow;  // valuation >= best_val by pivot minimality
        submul(r, q, row);
      }
      rows.push_back(std::move(row));
      pivcol.push_back(best_col);
      pivval.push_back(best_val);
      start_col = best_col + 1;
      // drop rows that became zero on the A part but keep their transform part
      // (they are kernel witnesses; caller picks them up from `zeros`)
      for (size_t i = 0; i < pending.size();) {
        bool zero = true;
        for (long j = 0; j < cols; ++j)
          if (pending[i][static_cast<size_t>(j)] != 0) {
            zero = false;
            break;
          }
        if (zero) {
          zeros.push_back(std::move(pending[i]));
          pending.erase(pending.begin() + static_cast<long>(i));
        } else {
          ++i;
        }
      }
    }
    for (auto& r : pending) zeros.push_back(std::move(r));  // all-zero leftovers
  }

  std::vector<std::vector<Int>> zeros;  // rows with zero A part (transform kept)

  void run(std::vector<std::vector<Int>> input) {
    echelonize(std::move(input));
    // Howell completion: annihilator multiples of pivot rows must lie in the span.
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::vector<Int>> extra;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (pivval[i] == 0) continue;
        Int mult = ipow(Int(p), static_cast<unsigned long>(kexp - pivval[i]));
        std::vector<Int> cand(rows[i]);
        for (auto& x : cand) x = mod_floor(x * mult, modulus);
        if (forward_reduce(cand)) {
          extra.push_back(std::move(cand));
        } else {
          bool zero_t = std::all_of(cand.begin(), cand.end(), [](const Int& x) { return x == 0; });
          if (!zero_t) zeros.push_back(std::move(cand));
        }
      }
      if (!extra.empty()) {
        changed = true;
        auto all = std::move(rows);
        all.insert(all.end(), extra.begin(), extra.end());
        auto zs = std::move(zeros);
        zeros.clear();
        echelonize(std::move(all));
        zeros.insert(zeros.end(), zs.begin(), zs.end());
      }
    }
    // normalize entries above pivots
    for (size_t i = 0; i < rows.size(); ++i) {
      Int ppow = ipow(Int(p), static_cast<unsigned long>(pivval[i]));
      for (size_t i2 = 0; i2 < i; ++i2) {
        const Int& x = rows[i2][static_cast<size_t>(pivcol[i])];
        if (x == 0) continue;
        Int rem = mod_floor(x, ppow);
        Int q = (x - rem) / ppow;
        submul(rows[i2], q, rows[i]);
      }
    }
  }
};

HowellCore run_howell(const ResidueMatrix& M, bool with_transform) {
  if (M.modulus == 0) throw Error("howell: integer matrices take the Smith/Hermite path");
  HowellCore core;
  core.cols = M.cols;
  core.width = with_transform ? M.cols + M.rows : M.cols;
  core.modulus = M.modulus;
  core.p = prime_of_modulus(M.modulus);
  core.kexp = val_p(M.modulus, core.p);
  if (ipow(Int(core.p), static_cast<unsigned long>(core.kexp)) != M.modulus)
    throw Error("howell: modulus must be a prime power");
  std::vector<std::vector<Int>> input;
  input.reserve(static_cast<size_t>(M.rows));
  for (long i = 0; i < M.rows; ++i) {
    std::vector<Int> r(static_cast<size_t>(core.width), Int(0));
    for (long j = 0; j < M.cols; ++j) r[static_cast<size_t>(j)] = M.at(i, j);
    if (with_transform) r[static_cast<size_t>(M.cols + i)] = 1;
    input.push_back(std::move(r));
  }
  core.run(std::move(input));
  return core;
}

}  // namespace

ResidueMatrix howell_form(const ResidueMatrix& M) {
  HowellCore core = run_howell(M, false);
  long out_rows = std::max<long>(M.rows, static_cast<long>(core.rows.size()));
  ResidueMatrix H(out_rows, M.cols, M.modulus);
  for (size_t i = 0; i < core.rows.size(); ++i)
    for (long j = 0; j < M.cols; ++j) H.at(static_cast<long>(i), j) = core.rows[i][static_cast<size_t>(j)];
  return H;
}

HowellTransform howell_with_transform(const ResidueMatrix& M) {
  HowellCore core = run_howell(M, true);
  HowellTransform out;
  long n = static_cast<long>(core.rows.size());
  out.H = ResidueMatrix(n, M.cols, M.modulus);
  out.T = ResidueMatrix(n, M.rows, M.modulus);
  for (long i = 0; i < n; ++i) {
    for (long j = 0; j < M.cols; ++j) out.H.at(i, j) = core.rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    for (long j = 0; j < M.rows; ++j)
      out.T.at(i, j) = core.rows[static_cast<size_t>(i)][static_cast<size_t>(M.cols + j)];
  }
  out.pivot_col = core.pivcol;
  out.pivot_val = core.pivval;
  return out;
}

GroupStructure kernel_mod(const ResidueMatrix& M) {
  if (M.modulus == 0) throw Error("kernel_mod requires a residue modulus");
  long p = prime_of_modulus(M.modulus);
  long k = val_p(M.modulus, p);
  // left kernel of M^T = right kernel of M; the A part of the augmented rows
  // has width M.rows (the columns of M^T)
  HowellCore core = run_howell(M.transposed(), true);
  std::vector<std::vector<Int>> gens;
  for (const auto& z : core.zeros) {
    std::vector<Int> g(z.begin() + M.rows, z.end());
    bool nonzero = std::any_of(g.begin(), g.end(), [](const Int& x) { return x != 0; });
    if (nonzero) gens.push_back(std::move(g));
  }
  return quotient_structure(gens, {}, M.cols, p, k);
}

SolveOutcome solve_mod(const ResidueMatrix& M, const std::vector<Int>& b) {
  if (M.modulus == 0) throw Error("solve_mod requires a residue modulus");
  if (static_cast<long>(b.size()) != M.rows) throw Error("solve_mod: right-hand side size mismatch");
  long p = prime_of_modulus(M.modulus);
  HowellTransform ht = howell_with_transform(M.transposed());
  std::vector<Int> residual(b);
  for (auto& x : residual) x = mod_floor(x, M.modulus);
  std::vector<Int> z(static_cast<size_t>(ht.H.rows), Int(0));
  for (long i = 0; i < ht.H.rows; ++i) {
    long c = ht.pivot_col[static_cast<size_t>(i)];
    const Int& v = residual[static_cast<size_t>(c)];
    if (v == 0) continue;
    long e = ht.pivot_val[static_cast<size_t>(i)];
    if (e > 0 && val_p(v, p) < e) {
      SolveOutcome out;
      out.consistent = false;
      out.inconsistent_row = c;
      return out;
    }
    Int q = v / ipow(Int(p), static_cast<unsigned long>(e));
    for (long j = 0; j < ht.H.cols; ++j)
      residual[static_cast<size_t>(j)] = mod_floor(residual[static_cast<size_t>(j)] - q * ht.H.at(i, j), M.modulus);
    z[static_cast<size_t>(i)] = q;
  }
  for (long j = 0; j < ht.H.cols; ++j) {
    if (residual[static_cast<size_t>(j)] != 0) {
      SolveOutcome out;
      out.consistent = false;
      out.inconsistent_row = j;
      return out;
    }
  }
  SolveOutcome out;
  out.consistent = true;
  out.x.assign(static_cast<size_t>(M.cols), Int(0));
  for (long i = 0; i < ht.T.rows; ++i)
    for (long j = 0; j < M.cols; ++j)
      out.x[static_cast<size_t>(j)] =
          mod_floor(out.x[static_cast<size_t>(j)] + z[static_cast<size_t>(i)] * ht.T.at(i, j), M.modulus);
  return out;
}

namespace {

// Integer Smith form with optional tracking of V^{-1} (for generators).
struct SmithCore {
  std::vector<std::vector<Int>> A;
  std::vector<std::vector<Int>> Vinv;  // square cols x cols when tracked
  bool track = false;
  long rows, cols;

  void swap_rows(long i, long j) { std::swap(A[i], A[j]); }
  void swap_cols(long i, long j) {
    for (long r = 0; r < rows; ++r) std::swap(A[r][i], A[r][j]);
    if (track) std::swap(Vinv[i], Vinv[j]);
  }
  void addmul_row(long dst, long src, const Int& c) {
    for (long j = 0; j < cols; ++j) A[dst][j] += c * A[src][j];
  }
  // col_dst += c * col_src; Vinv row_src -= c * row_dst
  void addmul_col(long dst, long src, const Int& c) {
    for (long r = 0; r < rows; ++r) A[r][dst] += c * A[r][src];
    if (track)
      for (long j = 0; j < cols; ++j) Vinv[src][j] -= c * Vinv[dst][j];
  }
  void negate_col(long j) {
    for (long r = 0; r < rows; ++r) A[r][j] = -A[r][j];
    if (track)
      for (long jj = 0; jj < cols; ++jj) Vinv[j][jj] = -Vinv[j][jj];
  }
  void negate_row(long i) {
    for (long j = 0; j < cols; ++j) A[i][j] = -A[i][j];
  }

  std::vector<Int> run() {
    std::vector<Int> divisors;
    long r = 0;
    while (true) {
      // find min |entry| in trailing submatrix
      long bi = -1, bj = -1;
      Int best = 0;
      for (long i = r; i < rows; ++i)
        for (long j = r; j < cols; ++j) {
          const Int& x = A[i][j];
          if (x == 0) continue;
          Int ax = abs(x);
          if (bi < 0 || ax < best) {
            bi = i;
            bj = j;
            best = ax;
          }
        }
      if (bi < 0) break;
      swap_rows(r, bi);
      swap_cols(r, bj);
      if (A[r][r] < 0) negate_row(r);
      // clear row and column by Euclidean steps
      bool clean = false;
      while (!clean) {
        clean = true;
        for (long i = r + 1; i < rows; ++i) {
          if (A[i][r] == 0) continue;
          Int q = A[i][r] / A[r][r];
          addmul_row(i, r, -q);
          if (A[i][r] != 0) {
            swap_rows(r, i);
            if (A[r][r] < 0) negate_row(r);
            clean = false;
          }
        }
        for (long j = r + 1; j < cols; ++j) {
          if (A[r][j] == 0) continue;
          Int q = A[r][j] / A[r][r];
          addmul_col(j, r, -q);
          if (A[r][j] != 0) {
            swap_cols(r, j);
            if (A[r][r] < 0) negate_row(r);  // keep pivot positive
            clean = false;
          }
        }
      }
      // divisibility fixup: pivot must divide the trailing submatrix
      bool redo = false;
      for (long i = r + 1; i < rows && !redo; ++i)
        for (long j = r + 1; j < cols && !redo; ++j)
          if (A[i][j] % A[r][r] != 0) {
            addmul_col(r, j, Int(1));  // pulls the offending column into col r
            redo = true;
          }
      if (redo) continue;  // reprocess position r
      divisors.push_back(A[r][r]);
      ++r;
    }
    return divisors;
  }
};

SmithCore make_smith(const ResidueMatrix& M, bool track) {
  if (M.modulus != 0) throw Error("integer Smith form requires modulus 0");
  SmithCore core;
  core.rows = M.rows;
  core.cols = M.cols;
  core.track = track;
  core.A.assign(static_cast<size_t>(M.rows), std::vector<Int>(static_cast<size_t>(M.cols), Int(0)));
  for (long i = 0; i < M.rows; ++i)
    for (long j = 0; j < M.cols; ++j) core.A[static_cast<size_t>(i)][static_cast<size_t>(j)] = M.at(i, j);
  if (track) {
    core.Vinv.assign(static_cast<size_t>(M.cols), std::vector<Int>(static_cast<size_t>(M.cols), Int(0)));
    for (long j = 0; j < M.cols; ++j) core.Vinv[static_cast<size_t>(j)][static_cast<size_t>(j)] = 1;
  }
  return core;
}

}  // namespace

std::vector<Int> smith_form_int(ResidueMatrix M) {
  auto core = make_smith(M, false);
  return core.run();
}

SmithDecomposition smith_int_with_vinv(ResidueMatrix M) {
  auto core = make_smith(M, true);
  SmithDecomposition out;
  out.divisors = core.run();
  out.vinv = ResidueMatrix(M.cols, M.cols, Int(0));
  for (long i = 0; i < M.cols; ++i)
    for (long j = 0; j < M.cols; ++j) out.vinv.at(i, j) = core.Vinv[static_cast<size_t>(i)][static_cast<size_t>(j)];
  return out;
}

std::vector<std::vector<Int>> hermite_basis_int(const ResidueMatrix& M) {
  if (M.modulus != 0) throw Error("hermite_basis_int requires modulus 0");
  std::vector<std::vector<Int>> rows;
  for (long i = 0; i < M.rows; ++i) {
    std::vector<Int> r(static_cast<size_t>(M.cols));
    for (long j = 0; j < M.cols; ++j) r[static_cast<size_t>(j)] = M.at(i, j);
    rows.push_back(std::move(r));
  }
  std::vector<std::vector<Int>> basis;
  long col = 0, cols = M.cols;
  while (col < cols && !rows.empty()) {
    // gather rows with nonzero entry at col; gcd them down to one
    long idx = -1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (rows[i][static_cast<size_t>(col)] == 0) continue;
      if (idx < 0 || abs(rows[i][static_cast<size_t>(col)]) < abs(rows[static_cast<size_t>(idx)][static_cast<size_t>(col)]))
        idx = static_cast<long>(i);
    }
    if (idx < 0) {
      ++col;
      continue;
    }
    bool stable = false;
    while (!stable) {
      stable = true;
      for (size_t i = 0; i < rows.size(); ++i) {
        if (static_cast<long>(i) == idx || rows[i][static_cast<size_t>(col)] == 0) continue;
        Int q = rows[i][static_cast<size_t>(col)] / rows[static_cast<size_t>(idx)][static_cast<size_t>(col)];
        for (long j = 0; j < cols; ++j)
          rows[i][static_cast<size_t>(j)] -= q * rows[static_cast<size_t>(idx)][static_cast<size_t>(j)];
        if (rows[i][static_cast<size_t>(col)] != 0) {
          idx = static_cast<long>(i);
          stable = false;
        }
      }
    }
    auto pivot_row = rows[static_cast<size_t>(idx)];
    if (pivot_row[static_cast<size_t>(col)] < 0)
      for (auto& x : pivot_row) x = -x;
    rows.erase(rows.begin() + idx);
    // reduce previous basis rows at this column
    for (auto& b : basis) {
      Int q = b[static_cast<size_t>(col)];
      Int piv = pivot_row[static_cast<size_t>(col)];
      Int qq = q >= 0 ? Int(q / piv) : Int(-((-q + piv - 1) / piv));
      if (qq != 0)
        for (long j = 0; j < cols; ++j) b[static_cast<size_t>(j)] -= qq * pivot_row[static_cast<size_t>(j)];
    }
    basis.push_back(std::move(pivot_row));
    // drop zero rows
    rows.erase(std::remove_if(rows.begin(), rows.end(),
                              [](const std::vector<Int>& r) {
                                return std::all_of(r.begin(), r.end(), [](const Int& x) { return x == 0; });
                              }),
               rows.end());
    ++col;
  }
  return basis;
}

std::vector<long> elementary_p_valuations(const ResidueMatrix& M, long p) {
  if (M.modulus != 0) throw Error("elementary_p_valuations requires modulus 0");
  // Smith form over Z_(p): exact rational elimination, pivots of minimal
  // p-adic valuation, divisions only by p-units.
  std::vector<std::vector<Rat>> A(static_cast<size_t>(M.rows),
                                  std::vector<Rat>(static_cast<size_t>(M.cols)));
  for (long i = 0; i < M.rows; ++i)
    for (long j = 0; j < M.cols; ++j) A[static_cast<size_t>(i)][static_cast<size_t>(j)] = Rat(M.at(i, j));
  auto vp = [&](const Rat& x) -> long {
    return *nu_p(x, Int(p));
  };
  std::vector<long> vals;
  long r = 0, rows = M.rows, cols = M.cols;
  while (true) {
    long bi = -1, bj = -1, bv = 0;
    for (long i = r; i < rows; ++i)
      for (long j = r; j < cols; ++j) {
        const Rat& x = A[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (x == 0) continue;
        long v = vp(x);
        if (bi < 0 || v < bv) {
          bi = i;
          bj = j;
          bv = v;
        }
      }
    if (bi < 0) break;
    std::swap(A[static_cast<size_t>(r)], A[static_cast<size_t>(bi)]);
    for (long i = 0; i < rows; ++i) std::swap(A[static_cast<size_t>(i)][static_cast<size_t>(r)],
                                              A[static_cast<size_t>(i)][static_cast<size_t>(bj)]);
    const Rat pivot = A[static_cast<size_t>(r)][static_cast<size_t>(r)];
    for (long i = r + 1; i < rows; ++i) {
      const Rat& x = A[static_cast<size_t>(i)][static_cast<size_t>(r)];
      if (x == 0) continue;
      Rat q = x / pivot;  // q in Z_(p) by pivot minimality
      for (long j = r; j < cols; ++j)
        A[static_cast<size_t>(i)][static_cast<size_t>(j)] -= q * A[static_cast<size_t>(r)][static_cast<size_t>(j)];
    }
    vals.push_back(bv);
    ++r;
  }
  return vals;
}

GroupStructure quotient_structure(const std::vector<std::vector<Int>>& k_gens,
                                  const std::vector<std::vector<Int>>& s_gens,
                                  long dim, long p, long k) {
  Int modulus = ipow(Int(p), static_cast<unsigned long>(k));
  auto stack_with_pk = [&](const std::vector<std::vector<Int>>& gens) {
    ResidueMatrix m(static_cast<long>(gens.size()) + dim, dim, Int(0));
    for (size_t i = 0; i < gens.size(); ++i) {
      if (static_cast<long>(gens[i].size()) != dim) throw Error("quotient_structure: generator size mismatch");
      for (long j = 0; j < dim; ++j) m.at(static_cast<long>(i), j) = mod_floor(gens[i][static_cast<size_t>(j)], modulus);
    }
    for (long j = 0; j < dim; ++j) m.at(static_cast<long>(gens.size()) + j, j) = modulus;
    return m;
  };
  auto BK = hermite_basis_int(stack_with_pk(k_gens));
  auto BS = hermite_basis_int(stack_with_pk(s_gens));
  if (static_cast<long>(BK.size()) != dim || static_cast<long>(BS.size()) != dim)
    throw Error("quotient_structure: lattices not full rank");
  // solve C * BK = BS row by row against the Hermite basis BK
  auto lead_col = [&](const std::vector<Int>& r) {
    for (long j = 0; j < dim; ++j)
      if (r[static_cast<size_t>(j)] != 0) return j;
    return dim;
  };
  ResidueMatrix C(dim, dim, Int(0));
  for (long i = 0; i < dim; ++i) {
    std::vector<Int> res = BS[static_cast<size_t>(i)];
    for (long bi = 0; bi < dim; ++bi) {
      long c = lead_col(BK[static_cast<size_t>(bi)]);
      const Int& piv = BK[static_cast<size_t>(bi)][static_cast<size_t>(c)];
      const Int& x = res[static_cast<size_t>(c)];
      if (x % piv != 0) throw Error("quotient_structure: s_gens not contained in span(k_gens)");
      Int q = x / piv;
      if (q != 0)
        for (long j = 0; j < dim; ++j) res[static_cast<size_t>(j)] -= q * BK[static_cast<size_t>(bi)][static_cast<size_t>(j)];
      C.at(i, bi) = q;
    }
    for (long j = 0; j < dim; ++j)
      if (res[static_cast<size_t>(j)] != 0) throw Error("quotient_structure: s_gens not contained in span(k_gens)");
  }
  auto sd = smith_int_with_vinv(std::move(C));
  GroupStructure out;
  // generators: rows of Vinv * BK with nontrivial divisor
  for (size_t i = 0; i < sd.divisors.size(); ++i) {
    Int d = abs(sd.divisors[i]);
    if (d == 1) continue;
    if (modulus % d != 0) throw Error("quotient_structure: divisor does not divide p^k");
    std::vector<Int> gen(static_cast<size_t>(dim), Int(0));
    for (long j = 0; j < dim; ++j) {
      Int acc = 0;
      for (long c = 0; c < dim; ++c) acc += sd.vinv.at(static_cast<long>(i), c) * BK[static_cast<size_t>(c)][static_cast<size_t>(j)];
      gen[static_cast<size_t>(j)] = mod_floor(acc, modulus);
    }
    out.orders.push_back(d);
    out.generators.push_back(std::move(gen));
  }
  // nonincreasing order convention
  std::vector<size_t> idx(out.orders.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::stable_sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return out.orders[a] > out.orders[b]; });
  GroupStructure sorted;
  for (size_t i : idx) {
    sorted.orders.push_back(out.orders[i]);
    sorted.generators.push_back(out.generators[i]);
  }
  return sorted;
}

}  // namespace qcong
