#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace isocount {

using Int = mpz_class;
using Rat = mpq_class;
using i64 = std::int64_t;

/// Integer coordinates of a lattice vector in the fixed basis.
using IVec = std::vector<i64>;
/// Arbitrary-precision coordinates (orbit reduction can inflate entries).
using ZVec = std::vector<Int>;

// Error taxonomy shared by all modules; the CLI maps these to exit codes.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct InternalCheckError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Always-on internal consistency check (never compiled out).
#define ISOCOUNT_CHECK(cond, msg)                                        \
  do {                                                                   \
    if (!(cond)) {                                                       \
      throw ::isocount::InternalCheckError(std::string("internal: ") +   \
                                           (msg) + " [" + __FILE__ +     \
                                           ":" + std::to_string(__LINE__) + "]"); \
    }                                                                    \
  } while (0)

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

/// gcd of all entries; 0 for the empty/zero vector.
Int content(const ZVec& v);
i64 content(const IVec& v);

/// Coefficients c with sum c_i * y_i == gcd(y).  Empty input -> gcd 0.
struct ExtGcdResult {
  Int g;
  ZVec coeffs;
};
ExtGcdResult extended_gcd(const ZVec& y);

/// floor(sqrt(n)) for n >= 0.
Int isqrt(const Int& n);

/// Largest k >= 0 with k*k <= r, for rational r >= 0.
Int isqrt_rat(const Rat& r);

inline ZVec to_zvec(const IVec& v) {
  ZVec z;
  z.reserve(v.size());
  for (i64 x : v) z.emplace_back(static_cast<long>(x));
  return z;
}

/// Narrows to i64, throwing if any entry overflows.
IVec to_ivec(const ZVec& v);

}  // namespace isocount
