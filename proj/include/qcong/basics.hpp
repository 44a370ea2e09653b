#pragma once

// Shared exact-arithmetic types and error hierarchy.

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace qcong {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int num(const Rat& x) { return boost::multiprecision::numerator(x); }
inline Int den(const Rat& x) { return boost::multiprecision::denominator(x); }

// Valuations are integers or +infinity (nullopt).
using Valuation = std::optional<long>;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RingMismatch : Error {
  using Error::Error;
};

struct NonIntegralCoefficient : Error {
  long index;
  NonIntegralCoefficient(long idx, const std::string& what)
      : Error(what), index(idx) {}
};

struct InsufficientPrecision : Error {
  using Error::Error;
};

struct UnsaturatedSpace : Error {
  using Error::Error;
};

struct SpanDeficient : Error {
  long weight, level;
  SpanDeficient(long w, long ell, const std::string& what)
      : Error(what), weight(w), level(ell) {}
};

struct UnsupportedLevel : Error {
  long level;
  UnsupportedLevel(long ell, const std::string& what) : Error(what), level(ell) {}
};

struct CrossCheckMismatch : Error {
  using Error::Error;
};

struct CoordConversionFailure : Error {
  using Error::Error;
};

struct ConfigError : Error {
  using Error::Error;
};

inline Int ipow(Int base, unsigned long e) {
  Int r = 1;
  while (e) {
    if (e & 1) r *= base;
    base *= base;
    e >>= 1;
  }
  return r;
}

inline Int mod_floor(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

// Inverse of a mod m for gcd(a, m) = 1; throws otherwise.
Int mod_inverse(const Int& a, const Int& m);

Int pow_mod(Int base, Int e, const Int& m);

bool is_prime_small(long n);

}  // namespace qcong
