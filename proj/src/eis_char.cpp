#include "qcong/eis_char.hpp"

#include "qcong/numtheory.hpp"

#include <algorithm>
#include <map>

namespace qcong {

Cyc Cyc::one() { return from_rat(Rat(1)); }

Cyc Cyc::from_rat(const Rat& r) {
  Cyc x;
  x.c[0] = r;
  return x;
}

Cyc Cyc::zeta_pow(long e) {
  e = ((e % 12) + 12) % 12;
  // z^4 = z^2 - 1, z^6 = -1
  static const long table[12][4] = {
      {1, 0, 0, 0},  {0, 1, 0, 0},  {0, 0, 1, 0},  {0, 0, 0, 1},
      {-1, 0, 1, 0}, {0, -1, 0, 1}, {-1, 0, 0, 0}, {0, -1, 0, 0},
      {0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, -1, 0}, {0, 1, 0, -1}};
  Cyc x;
  for (int i = 0; i < 4; ++i) x.c[static_cast<size_t>(i)] = table[e][i];
  return x;
}

bool Cyc::is_zero() const {
  return c[0] == 0 && c[1] == 0 && c[2] == 0 && c[3] == 0;
}

Cyc operator+(const Cyc& a, const Cyc& b) {
  Cyc r;
  for (size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] + b.c[i];
  return r;
}

Cyc operator-(const Cyc& a, const Cyc& b) {
  Cyc r;
  for (size_t i = 0; i < 4; ++i) r.c[i] = a.c[i] - b.c[i];
  return r;
}

Cyc operator*(const Rat& a, const Cyc& b) {
  Cyc r;
  for (size_t i = 0; i < 4; ++i) r.c[i] = a * b.c[i];
  return r;
}

Cyc operator*(const Cyc& a, const Cyc& b) {
  // multiply as polynomials, then reduce degrees 4..6 by z^4 = z^2 - 1
  std::array<Rat, 7> t{};
  for (size_t i = 0; i < 4; ++i) {
    if (a.c[i] == 0) continue;
    for (size_t j = 0; j < 4; ++j) t[i + j] += a.c[i] * b.c[j];
  }
  // z^6 = z^2*z^4 = z^4 - z^2 = -1; z^5 = z^3 - z; z^4 = z^2 - 1
  Cyc r;
  r.c[0] = t[0] - t[4] - t[6];
  r.c[1] = t[1] - t[5];
  r.c[2] = t[2] + t[4];
  r.c[3] = t[3] + t[5];
  return r;
}

bool operator==(const Cyc& a, const Cyc& b) { return a.c == b.c; }

namespace {

long least_primitive_root(long p) {
  for (long g = 2; g < p; ++g) {
    long order = 1;
    long acc = g % p;
    while (acc != 1) {
      acc = acc * g % p;
      ++order;
    }
    if (order == p - 1) return g;
  }
  throw Error("no primitive root found");
}

}  // namespace

long DirichletCharacter::parity() const {
  const Cyc& v = value(modulus - 1);
  if (v == Cyc::one()) return 1;
  return -1;
}

std::vector<DirichletCharacter> characters_mod(long ell) {
  if (!is_prime_small(ell)) throw Error("characters_mod: modulus must be prime");
  if (12 % (ell - 1) != 0) throw Error("characters_mod: ell-1 must divide 12");
  long g = ell == 2 ? 1 : least_primitive_root(ell);
  // discrete logs: dlog[g^a mod ell] = a
  std::vector<long> dlog(static_cast<size_t>(ell), 0);
  long acc = 1;
  for (long a = 0; a < ell - 1; ++a) {
    dlog[static_cast<size_t>(acc)] = a;
    acc = acc * g % ell;
  }
  std::vector<DirichletCharacter> out;
  long zeta_step = 12 / (ell - 1);
  for (long j = 0; j < ell - 1; ++j) {
    DirichletCharacter chi;
    chi.modulus = ell;
    chi.index = j;
    chi.values.assign(static_cast<size_t>(ell), Cyc::zero());
    for (long r = 1; r < ell; ++r)
      chi.values[static_cast<size_t>(r)] = Cyc::zeta_pow(zeta_step * j * dlog[static_cast<size_t>(r)]);
    out.push_back(std::move(chi));
  }
  return out;
}

Cyc generalized_bernoulli(long n, const DirichletCharacter& chi) {
  // B_{n,chi} = f^{n-1} sum_{a=1}^{f} chi(a) B_n(a/f)
  long f = chi.modulus;
  Cyc acc = Cyc::zero();
  for (long a = 1; a <= f; ++a) {
    if (chi.value(a).is_zero()) continue;
    // Bernoulli polynomial B_n(a/f)
    Rat x(a, f);
    Rat bp = 0;
    Rat xpow = 1;  // x^{n-i} built from the top
    // compute sum C(n,i) B_i x^{n-i}
    for (long i = n; i >= 0; --i) {
      // binomial C(n, i)
      Int bin = 1;
      for (long t = 0; t < i; ++t) {
        bin *= Int(n - t);
        bin /= Int(t + 1);
      }
      bp += Rat(bin) * bernoulli(static_cast<unsigned long>(i)) * xpow;
      xpow *= x;
    }
    acc = acc + bp * chi.value(a);
  }
  Rat scale = 1;
  for (long i = 0; i < n - 1; ++i) scale *= Rat(f);
  if (n == 0) scale = Rat(1, f);
  return scale * acc;
}

std::vector<Cyc> eisenstein_char(long k, const DirichletCharacter* psi, const DirichletCharacter* phi, long N) {
  if (k < 1) throw Error("eisenstein_char: weight must be >= 1");
  long par_psi = psi ? psi->parity() : 1;
  long par_phi = phi ? phi->parity() : 1;
  if (par_psi * par_phi != (k % 2 == 0 ? 1 : -1))
    return std::vector<Cyc>(static_cast<size_t>(N), Cyc::zero());
  if (!psi && !phi && k == 2) throw Error("eisenstein_char: E_2 with trivial characters is quasi-modular");
  if (k == 1 && psi && !phi)
    throw Error("eisenstein_char: use the (1,chi) shape at weight 1");
  std::vector<Cyc> out(static_cast<size_t>(N), Cyc::zero());
  // constant term: -B_{k,phi}/(2k) when psi is trivial mod 1
  if (!psi) {
    Cyc b = phi ? generalized_bernoulli(k, *phi)
                : Cyc::from_rat(bernoulli(static_cast<unsigned long>(k)));
    out[0] = Rat(-1, 2 * k) * b;
  }
  for (long m = 1; m < N; ++m) {
    Cyc s = Cyc::zero();
    for (long d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      long q = m / d;
      Cyc term = Cyc::from_rat(Rat(ipow(Int(d), static_cast<unsigned long>(k - 1))));
      if (psi) term = term * psi->value(q % psi->modulus);
      if (phi) term = term * phi->value(d % phi->modulus);
      s = s + term;
    }
    out[static_cast<size_t>(m)] = s;
  }
  return out;
}

namespace {

std::vector<Cyc> mul_cyc_series(const std::vector<Cyc>& a, const std::vector<Cyc>& b) {
  std::vector<Cyc> out(std::min(a.size(), b.size()), Cyc::zero());
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (size_t j = 0; j + i < out.size() && j < b.size(); ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] = out[i + j] + a[i] * b[j];
    }
  }
  return out;
}

// Extract the four rational component series and clear denominators.
void append_component_rows(const std::vector<Cyc>& series, std::vector<std::vector<Int>>& rows) {
  for (size_t comp = 0; comp < 4; ++comp) {
    bool nonzero = false;
    Int lcm_den = 1;
    for (const auto& c : series) {
      if (c.c[comp] != 0) nonzero = true;
      Int d = den(c.c[comp]);
      lcm_den = lcm_den / gcd(lcm_den, d) * d;
    }
    if (!nonzero) continue;
    std::vector<Int> row(series.size());
    Int content = 0;
    for (size_t i = 0; i < series.size(); ++i) {
      row[i] = num(series[i].c[comp]) * (lcm_den / den(series[i].c[comp]));
      content = gcd(content, row[i]);
    }
    if (content > 1)
      for (auto& x : row) x /= content;
    rows.push_back(std::move(row));
  }
}

}  // namespace

std::vector<std::vector<Int>> char_product_rows(long w, long ell, long N) {
  if (w < 2 || w % 2 != 0) return {};
  auto chars = characters_mod(ell);
  std::vector<std::vector<Int>> rows;
  // cache E_k^{1,chi} and E_k^{chi,1} per (k, chi index)
  std::map<std::pair<long, long>, std::vector<Cyc>> one_chi, chi_one;
  auto get_one_chi = [&](long k, long j) -> const std::vector<Cyc>& {
    auto key = std::make_pair(k, j);
    auto it = one_chi.find(key);
    if (it == one_chi.end())
      it = one_chi.emplace(key, eisenstein_char(k, nullptr, &chars[static_cast<size_t>(j)], N)).first;
    return it->second;
  };
  auto get_chi_one = [&](long k, long j) -> const std::vector<Cyc>& {
    auto key = std::make_pair(k, j);
    auto it = chi_one.find(key);
    if (it == chi_one.end())
      it = chi_one.emplace(key, eisenstein_char(k, &chars[static_cast<size_t>(j)], nullptr, N)).first;
    return it->second;
  };
  for (long a = 1; 2 * a <= w; ++a) {
    long b = w - a;
    for (long j = 1; j < ell - 1; ++j) {
      const auto& chi = chars[static_cast<size_t>(j)];
      long jconj = (ell - 1 - j) % (ell - 1);
      if (jconj == 0) continue;  // chi must stay nontrivial after inversion
      long want = a % 2 == 0 ? 1 : -1;
      if (chi.parity() != want) continue;
      // E_a^{1,chi} * E_b^{1,chi^-1}, E_a^{1,chi} * E_b^{chi^-1,1},
      // E_a^{chi,1} * E_b^{chi^-1,1}.  The (chi,1) shape is only wired up
      // for weight >= 2 (its weight-1 constant term follows a different rule,
      // and E_1^{1,chi} = E_1^{chi,1} anyway).
      append_component_rows(mul_cyc_series(get_one_chi(a, j), get_one_chi(b, jconj)), rows);
      if (b >= 2) append_component_rows(mul_cyc_series(get_one_chi(a, j), get_chi_one(b, jconj)), rows);
      if (a >= 2) append_component_rows(mul_cyc_series(get_chi_one(a, j), get_chi_one(b, jconj)), rows);
    }
  }
  return rows;
}

}  // namespace qcong
