#include "eisenfact/modring.hpp"

namespace eisenfact {

uint64_t mulmod(uint64_t a, uint64_t b, uint64_t p) {
  return static_cast<uint64_t>(
      static_cast<unsigned __int128>(a) * b % p);
}

uint64_t powmod(uint64_t a, uint64_t e, uint64_t p) {
  uint64_t r = 1;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

// Extended Euclid; valid for any modulus m with gcd(a, m) = 1.
uint64_t invmod(uint64_t a, uint64_t m) {
  int64_t t0 = 0, t1 = 1;
  uint64_t r0 = m, r1 = a % m;
  while (r1 != 0) {
    uint64_t q = r0 / r1;
    uint64_t r2 = r0 - q * r1;
    int64_t t2 = t0 - static_cast<int64_t>(q) * t1;
    r0 = r1;
    r1 = r2;
    t0 = t1;
    t1 = t2;
  }
  if (r0 != 1)
    throw Error(ErrorCode::DivisionByZero, "invmod: arguments not coprime");
  return t0 < 0 ? static_cast<uint64_t>(t0 + static_cast<int64_t>(m))
                : static_cast<uint64_t>(t0);
}

bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // Deterministic Miller-Rabin base set for n < 2^64.
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull,
                     23ull, 29ull, 31ull, 37ull}) {
    uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

ModRing::Elem ModRing::from_exact(const RingElem& x) const {
  uint64_t acc = 0;
  for (const RingElem::Term& t : x.terms()) {
    const mpz_class& num = t.coef.get_num();
    const mpz_class& den = t.coef.get_den();
    mpz_class pm(static_cast<unsigned long>(p));
    mpz_class nr = num % pm;
    if (nr < 0) nr += pm;
    mpz_class dr = den % pm;
    if (dr == 0)
      throw Error(ErrorCode::PrimeGenerationFailure,
                  "prime divides a coefficient denominator");
    uint64_t v = mulmod(nr.get_ui(), invmod(dr.get_ui(), p), p);
    acc = add(acc, mulmod(v, basis[static_cast<std::size_t>(t.key)], p));
  }
  return acc;
}

ModRing make_mod_ring(uint64_t p, std::mt19937_64& rng) {
  ModRing r;
  r.p = p;
  if (p % 24 != 1 || (p - 1) % 9 == 0)
    throw Error(ErrorCode::PrimeGenerationFailure,
                "prime fails the congruence conditions");
  uint64_t t = (p - 1) / 3;
  if (powmod(4, t, p) != 1)
    throw Error(ErrorCode::PrimeGenerationFailure,
                "4 is not a cubic residue mod p");
  // Primitive 24th root of unity: g^((p-1)/24) has order dividing 24; it has
  // order exactly 24 iff its 8th and 12th powers are nontrivial.
  for (int attempt = 0;; ++attempt) {
    if (attempt > 256)
      throw Error(ErrorCode::PrimeGenerationFailure,
                  "no primitive 24th root found");
    uint64_t g = rng() % (p - 2) + 2;
    uint64_t z = powmod(g, (p - 1) / 24, p);
    if (z == 1) continue;
    if (powmod(z, 8, p) == 1 || powmod(z, 12, p) == 1) continue;
    r.zeta24 = z;
    break;
  }
  // With p-1 = 3t and 3 not dividing t, the cube root of a cubic residue a
  // is a^(3^-1 mod t).
  uint64_t tinv3 = invmod(3 % t, t);  // 3^-1 mod t (t coprime to 3)
  r.cbrt4 = powmod(4, tinv3, p);
  if (mulmod(mulmod(r.cbrt4, r.cbrt4, p), r.cbrt4, p) != 4)
    throw Error(ErrorCode::PrimeGenerationFailure, "cube root check failed");
  // z must satisfy the cyclotomic relation z^8 = z^4 - 1.
  if (powmod(r.zeta24, 8, p) !=
      r.sub(powmod(r.zeta24, 4, p), 1))
    throw Error(ErrorCode::PrimeGenerationFailure,
                "24th root fails the cyclotomic relation");
  for (int e = 0; e < 24; ++e)
    r.zpow[static_cast<std::size_t>(e)] =
        powmod(r.zeta24, static_cast<uint64_t>(e), p);
  for (int key = 0; key < 24; ++key) {
    int a = key & 7, b = key >> 3;
    r.basis[static_cast<std::size_t>(key)] =
        mulmod(r.zpow[static_cast<std::size_t>(a)],
               powmod(r.cbrt4, static_cast<uint64_t>(b), p), p);
  }
  return r;
}

std::vector<ModRing> sample_mod_rings(int count, uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<ModRing> out;
  int failures = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++failures > 200000)
      throw Error(ErrorCode::PrimeGenerationFailure,
                  "exhausted retries sampling verification primes");
    // 62-bit candidate congruent to 1 mod 24.
    uint64_t x = (rng() >> 2) | (1ull << 61);
    uint64_t cand = x - (x % 24) + 1;
    if (!is_prime_u64(cand)) continue;
    if ((cand - 1) % 9 == 0) continue;
    if (powmod(4, (cand - 1) / 3, cand) != 1) continue;
    bool dup = false;
    for (const ModRing& r : out) dup |= (r.p == cand);
    if (dup) continue;
    out.push_back(make_mod_ring(cand, rng));
  }
  return out;
}

Series<ModRing> reduce_series(const ModRing& ring,
                              const Series<ExactRing>& s) {
  Series<ModRing> r;
  r.denom = s.denom;
  r.low = s.low;
  r.known = s.known;
  r.weight = s.weight;
  r.coeffs.reserve(s.coeffs.size());
  for (const RingElem& c : s.coeffs) r.coeffs.push_back(ring.from_exact(c));
  return r;
}

}  // namespace eisenfact
