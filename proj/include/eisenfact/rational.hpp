#ifndef EISENFACT_RATIONAL_HPP
#define EISENFACT_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace eisenfact {

// Arbitrary-precision rational, canonical (lowest terms, positive denominator).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

// Smallest integer >= r.
inline long ceil_long(const Rational& r) {
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

inline long floor_long(const Rational& r) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q.get_si();
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline double rational_to_double(const Rational& r) { return r.get_d(); }

}  // namespace eisenfact

#endif
