// Test-only reference implementations, independent of the library's
// constructors: brute-force divisor sums, the Euler product form of eta,
// Legendre symbols via Euler's criterion, and direct complex summation.
#ifndef EISENFACT_TESTS_ORACLES_HPP
#define EISENFACT_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracles {

inline long sigma(long n, int k) {
  long s = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d) continue;
    long p = 1;
    for (int i = 0; i < k; ++i) p *= d;
    s += p;
  }
  return s;
}

// Legendre symbol via Euler's criterion.
inline int legendre(long long a, long long p) {
  a %= p;
  if (a < 0) a += p;
  if (a == 0) return 0;
  long long r = 1, base = a, e = (p - 1) / 2;
  while (e) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

// Kronecker symbol (D/n) for n > 0, by factoring n and using Euler's
// criterion at odd primes plus the standard (D/2) rule.
inline int kronecker(long D, long n) {
  int result = 1;
  while (n % 2 == 0) {
    n /= 2;
    if (D % 2 == 0) return 0;
    long m = ((D % 8) + 8) % 8;
    result *= (m == 1 || m == 7) ? 1 : -1;
  }
  for (long p = 3; p * p <= n; p += 2) {
    while (n % p == 0) {
      n /= p;
      if (D % p == 0) return 0;
      result *= legendre(D, p);
    }
  }
  if (n > 1) {
    if (D % n == 0) return 0;
    result *= legendre(D, n);
  }
  return result;
}

// Coefficients of prod_{n>=1} (1 - q^n) up to exponent bound (exclusive),
// by naive polynomial multiplication.
inline std::vector<long long> euler_product(long bound) {
  std::vector<long long> p(static_cast<std::size_t>(bound), 0);
  p[0] = 1;
  for (long n = 1; n < bound; ++n) {
    for (long e = bound - 1; e >= n; --e)
      p[static_cast<std::size_t>(e)] -= p[static_cast<std::size_t>(e - n)];
  }
  return p;
}

// Coefficients of prod_{n>=1} (1 - q^{2n}) (1 + q^{2n-1})^2 up to `bound`.
inline std::vector<long long> theta_triple_product(long bound) {
  std::vector<long long> p(static_cast<std::size_t>(bound), 0);
  p[0] = 1;
  auto mul_factor = [&](long e0, long long c) {
    // p *= (1 + c*q^e0)
    for (long e = bound - 1; e >= e0; --e)
      p[static_cast<std::size_t>(e)] += c * p[static_cast<std::size_t>(e - e0)];
  };
  for (long n = 1; 2 * n - 1 < bound || 2 * n < bound; ++n) {
    if (2 * n < bound) mul_factor(2 * n, -1);
    if (2 * n - 1 < bound) {
      mul_factor(2 * n - 1, 1);
      mul_factor(2 * n - 1, 1);  // squared factor, applied twice
    }
  }
  return p;
}

// theta(i*y) = sum over n of exp(-pi n^2 * (2y)) ... at tau = i*y the nome is
// e^{2 pi i tau} = e^{-2 pi y}; direct summation in long double.
inline long double theta_at(long double y) {
  long double q = std::exp(-2.0L * std::acos(-1.0L) * y);
  long double s = 1.0L;
  for (int n = 1; n < 200; ++n) s += 2.0L * std::pow(q, (long double)n * n);
  return s;
}

inline long double eisenstein4_at(long double y) {
  long double q = std::exp(-2.0L * std::acos(-1.0L) * y);
  long double s = 1.0L;
  for (long n = 1; n < 400; ++n)
    s += 240.0L * sigma(n, 3) * std::pow(q, (long double)n);
  return s;
}

}  // namespace oracles

#endif
