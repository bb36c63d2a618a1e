#ifndef EISENFACT_MODRING_HPP
#define EISENFACT_MODRING_HPP

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "eisenfact/ring.hpp"
#include "eisenfact/series.hpp"

namespace eisenfact {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p);
uint64_t powmod(uint64_t a, uint64_t e, uint64_t p);
uint64_t invmod(uint64_t a, uint64_t p);
bool is_prime_u64(uint64_t n);

// Coefficient ring F_p with the field generators mapped to residues:
// zeta24 -> a primitive 24th root of unity, cbrt(4) -> a cube root of 4.
// Requires p = 1 (mod 24), p != 1 (mod 9), and 4^((p-1)/3) = 1 (mod p);
// the last two make the cube root a plain power and guarantee existence.
struct ModRing {
  using Elem = uint64_t;
  using Acc = uint64_t;

  uint64_t p = 0;
  uint64_t zeta24 = 0;
  uint64_t cbrt4 = 0;
  std::array<uint64_t, 24> zpow{};   // zeta24^e
  std::array<uint64_t, 24> basis{};  // image of z^a*c^b, key = 8*b + a

  Elem zero() const { return 0; }
  Elem one() const { return 1; }
  bool is_zero(const Elem& x) const { return x == 0; }
  bool equal(const Elem& x, const Elem& y) const { return x == y; }
  Elem add(Elem x, Elem y) const {
    uint64_t s = x + y;
    return s >= p ? s - p : s;
  }
  Elem sub(Elem x, Elem y) const { return x >= y ? x - y : x + p - y; }
  Elem neg(Elem x) const { return x == 0 ? 0 : p - x; }
  Elem mul(Elem x, Elem y) const { return mulmod(x, y, p); }
  Elem inv(Elem x) const {
    if (x == 0) throw Error(ErrorCode::DivisionByZero, "inverse of 0 mod p");
    return invmod(x, p);
  }
  Elem from_long(long n) const {
    long r = n % static_cast<long>(p);
    if (r < 0) r += static_cast<long>(p);
    return static_cast<uint64_t>(r);
  }
  // Reduction of an exact element; throws PrimeGenerationFailure when p
  // divides a denominator (the caller resamples the prime).
  Elem from_exact(const RingElem& x) const;
  Elem zeta24_pow(long e) const {
    e %= 24;
    if (e < 0) e += 24;
    return zpow[static_cast<std::size_t>(e)];
  }

  Acc acc_make() const { return 0; }
  void acc_fma(Acc& a, Elem x, Elem y) const { a = add(a, mulmod(x, y, p)); }
  Elem acc_collect(Acc& a) const { return a; }

  long parallel_grain() const { return 1L << 20; }
};

// Builds the ring for a given suitable prime (checks the congruence
// conditions and root equations; throws PrimeGenerationFailure otherwise).
ModRing make_mod_ring(uint64_t p, std::mt19937_64& rng);

// Samples `count` distinct 62-bit verification primes meeting the ModRing
// conditions. Deterministic for a fixed seed.
std::vector<ModRing> sample_mod_rings(int count, uint64_t seed);

// Coefficient-wise reduction of an exact series.
Series<ModRing> reduce_series(const ModRing& ring, const Series<ExactRing>& s);

}  // namespace eisenfact

#endif
