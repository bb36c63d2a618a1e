#ifndef EISENFACT_SERIES_HPP
#define EISENFACT_SERIES_HPP

#include <array>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "eisenfact/errors.hpp"
#include "eisenfact/kernels.hpp"
#include "eisenfact/rational.hpp"
#include "eisenfact/ring.hpp"

namespace eisenfact {

// Known-order sentinel for exact scalars (constants are known to any order).
inline constexpr long kScalarOrder = 1L << 40;

// Canonical exponent n/d (mpq comparisons require canonical operands).
inline Rational exponent_q(long n, long d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// Exact coefficient ring adapter used by Series<R>.
struct ExactRing {
  using Elem = RingElem;
  struct Acc {
    RingElem::Accumulator slots{};
    uint32_t touched = 0;
  };

  Elem zero() const { return RingElem(); }
  Elem one() const { return RingElem(1); }
  bool is_zero(const Elem& x) const { return x.is_zero(); }
  bool equal(const Elem& x, const Elem& y) const { return x == y; }
  Elem add(const Elem& x, const Elem& y) const { return x + y; }
  Elem sub(const Elem& x, const Elem& y) const { return x - y; }
  Elem neg(const Elem& x) const { return -x; }
  Elem mul(const Elem& x, const Elem& y) const { return x * y; }
  Elem inv(const Elem& x) const { return x.inverse(); }
  Elem from_long(long n) const { return RingElem(n); }
  Elem from_exact(const RingElem& x) const { return x; }
  Elem zeta24_pow(long e) const { return RingElem::zeta24_pow(e); }

  Acc acc_make() const { return Acc{}; }
  void acc_fma(Acc& a, const Elem& x, const Elem& y) const {
    RingElem::fma(a.slots, a.touched, x, y);
  }
  Elem acc_collect(Acc& a) const {
    return RingElem::collect(a.slots, a.touched);
  }

  long parallel_grain() const { return 1L << 15; }
};

// Truncated Fourier expansion on the fractional lattice q^(1/denom).
// Exponents are n/denom; coeffs[i] is the coefficient at n = low + i.
// All exponents n/denom with n < known are known (stored, or zero when
// outside the stored window); nothing is asserted at n >= known.
// denom always divides 24. `weight` is bookkeeping metadata only
// (nullopt = mixed/unknown).
template <class R>
struct Series {
  int denom = 1;
  long low = 0;
  long known = 0;
  std::vector<typename R::Elem> coeffs;
  std::optional<Rational> weight;

  Rational known_qunits() const { return exponent_q(known, denom); }

  const typename R::Elem* stored(long n) const {
    if (n < low || n >= low + static_cast<long>(coeffs.size())) return nullptr;
    return &coeffs[static_cast<std::size_t>(n - low)];
  }
};

namespace detail {

inline void check_lattice(long d, const char* what) {
  if (d <= 0 || 24 % d != 0)
    throw Error(ErrorCode::LatticeOverflow,
                std::string(what) + ": lattice denominator " +
                    std::to_string(d) + " does not divide 24");
}

inline std::optional<Rational> weight_add(const std::optional<Rational>& a,
                                          const std::optional<Rational>& b) {
  if (a && b && *a == *b) return a;
  return std::nullopt;
}

inline std::optional<Rational> weight_mul(const std::optional<Rational>& a,
                                          const std::optional<Rational>& b) {
  if (a && b) return *a + *b;
  return std::nullopt;
}

}  // namespace detail

// Re-index onto a finer lattice (new_denom a multiple of denom, | 24).
template <class R>
Series<R> align_lattice(const R& ring, const Series<R>& a, int new_denom) {
  if (new_denom == a.denom) return a;
  detail::check_lattice(new_denom, "align");
  long f = new_denom / a.denom;
  Series<R> r;
  r.denom = new_denom;
  r.low = a.low * f;
  r.known = a.known * f;
  r.weight = a.weight;
  r.coeffs.assign(a.coeffs.size() * static_cast<std::size_t>(f), ring.zero());
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    r.coeffs[i * static_cast<std::size_t>(f)] = a.coeffs[i];
  return r;
}

// Trim zero coefficients at both ends of the stored window (the known bound
// is unaffected) and reduce the lattice by the gcd of the nonzero exponent
// numerators.
template <class R>
Series<R> canonicalize(const R& ring, Series<R> a) {
  long n = static_cast<long>(a.coeffs.size());
  long first = 0;
  while (first < n && ring.is_zero(a.coeffs[static_cast<std::size_t>(first)]))
    ++first;
  if (first == n) {
    // Identically zero over the known window.
    Series<R> z;
    z.denom = 1;
    z.known = (a.known + a.denom - 1) / a.denom;  // ceil in q-units
    z.low = z.known;
    z.weight = a.weight;
    return z;
  }
  long last = n - 1;
  while (ring.is_zero(a.coeffs[static_cast<std::size_t>(last)])) --last;
  if (first > 0 || last < n - 1) {
    std::vector<typename R::Elem> c(
        a.coeffs.begin() + first, a.coeffs.begin() + last + 1);
    a.coeffs = std::move(c);
    a.low += first;
  }
  long g = a.denom;
  for (long i = 0; i < static_cast<long>(a.coeffs.size()) && g > 1; ++i) {
    if (ring.is_zero(a.coeffs[static_cast<std::size_t>(i)])) continue;
    g = std::gcd(g, std::abs(a.low + i));
  }
  if (g > 1) {
    std::vector<typename R::Elem> c;
    c.reserve(a.coeffs.size() / static_cast<std::size_t>(g) + 1);
    for (long i = 0; i < static_cast<long>(a.coeffs.size()); i += g)
      c.push_back(a.coeffs[static_cast<std::size_t>(i)]);
    a.coeffs = std::move(c);
    a.low /= g;
    a.known = (a.known + g - 1) / g;  // exponents n' < known/g stay known
    a.denom = static_cast<int>(a.denom / g);
  }
  return a;
}

template <class R>
Series<R> series_scalar(const R& ring, typename R::Elem v,
                        std::optional<Rational> weight = Rational(0)) {
  Series<R> r;
  r.denom = 1;
  r.low = 0;
  r.known = kScalarOrder;
  r.weight = std::move(weight);
  if (!ring.is_zero(v)) {
    r.coeffs.push_back(std::move(v));
  } else {
    r.low = r.known;
  }
  return r;
}

template <class R>
Series<R> series_add(const R& ring, const Series<R>& a, const Series<R>& b,
                     bool subtract = false) {
  long d = std::lcm(a.denom, b.denom);
  detail::check_lattice(d, "add");
  Series<R> x = align_lattice(ring, a, static_cast<int>(d));
  Series<R> y = align_lattice(ring, b, static_cast<int>(d));
  Series<R> r;
  r.denom = static_cast<int>(d);
  r.known = std::min(x.known, y.known);
  r.weight = detail::weight_add(a.weight, b.weight);
  long lo = std::min(std::min(x.low, y.low), r.known);
  long hi = r.known;
  // Clamp storage to the union of the stored windows.
  long stored_hi = std::max(x.low + static_cast<long>(x.coeffs.size()),
                            y.low + static_cast<long>(y.coeffs.size()));
  hi = std::min(hi, std::max(stored_hi, lo));
  r.low = lo;
  r.coeffs.assign(static_cast<std::size_t>(hi - lo), ring.zero());
  for (long n = lo; n < hi; ++n) {
    const typename R::Elem* cx = x.stored(n);
    const typename R::Elem* cy = y.stored(n);
    typename R::Elem v = cx ? *cx : ring.zero();
    if (cy) v = subtract ? ring.sub(v, *cy) : ring.add(v, *cy);
    r.coeffs[static_cast<std::size_t>(n - lo)] = std::move(v);
  }
  return canonicalize(ring, std::move(r));
}

template <class R>
Series<R> series_sub(const R& ring, const Series<R>& a, const Series<R>& b) {
  return series_add(ring, a, b, true);
}

template <class R>
Series<R> series_neg(const R& ring, const Series<R>& a) {
  Series<R> r = a;
  for (auto& c : r.coeffs) c = ring.neg(c);
  return r;
}

template <class R>
Series<R> series_scalar_mul(const R& ring, const typename R::Elem& s,
                            const Series<R>& a) {
  Series<R> r = a;
  if (ring.is_zero(s)) {
    r.coeffs.clear();
    r.low = r.known;
    return canonicalize(ring, std::move(r));
  }
  for (auto& c : r.coeffs) c = ring.mul(s, c);
  return r;
}

template <class R>
Series<R> series_mul(const R& ring, const Series<R>& a, const Series<R>& b) {
  long d = std::lcm(a.denom, b.denom);
  detail::check_lattice(d, "mul");
  Series<R> x = align_lattice(ring, a, static_cast<int>(d));
  Series<R> y = align_lattice(ring, b, static_cast<int>(d));
  Series<R> r;
  r.denom = static_cast<int>(d);
  r.low = x.low + y.low;
  // Cauchy product: coefficients are provably correct strictly below
  // min(known_a + low_b, known_b + low_a).
  r.known = std::min(x.known + y.low, y.known + x.low);
  r.weight = detail::weight_mul(a.weight, b.weight);
  long n_out = r.known - r.low;
  if (n_out <= 0 || x.coeffs.empty() || y.coeffs.empty()) {
    r.low = r.known;
    return canonicalize(ring, std::move(r));
  }
  n_out = std::min(n_out,
                   static_cast<long>(x.coeffs.size() + y.coeffs.size()) - 1);
  kernels::convolve(ring, x.coeffs, y.coeffs, r.coeffs, n_out);
  return canonicalize(ring, std::move(r));
}

template <class R>
Series<R> series_pow(const R& ring, const Series<R>& a, long k) {
  if (k < 0)
    throw Error(ErrorCode::NonIntegerExponent,
                "series_pow: negative exponent, invert first");
  if (k == 0) {
    Series<R> r = series_scalar(ring, ring.one(), Rational(0));
    r.known = std::max(a.known / a.denom, 1L);  // conservative, in q-units/d=1
    return r;
  }
  Series<R> acc;
  bool have = false;
  Series<R> base = a;
  while (k > 0) {
    if (k & 1) {
      acc = have ? series_mul(ring, acc, base) : base;
      have = true;
    }
    k >>= 1;
    if (k > 0) base = series_mul(ring, base, base);
  }
  return acc;
}

// tau -> k*tau: exponent n/d -> nk/d.
template <class R>
Series<R> series_dilate(const R& ring, const Series<R>& a, long k) {
  if (k <= 0)
    throw Error(ErrorCode::LatticeOverflow, "dilate: factor must be positive");
  if (k == 1) return a;
  Series<R> r;
  r.denom = a.denom;
  r.low = a.low * k;
  r.known = a.known * k;
  r.weight = a.weight;
  if (!a.coeffs.empty()) {
    r.coeffs.assign(static_cast<std::size_t>((a.coeffs.size() - 1) * k + 1),
                    ring.zero());
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
      r.coeffs[i * static_cast<std::size_t>(k)] = a.coeffs[i];
  } else {
    r.low = r.known;
  }
  return canonicalize(ring, std::move(r));
}

// tau -> (tau + u/v)/k: exponent n/d -> n/(dk), coefficient multiplied by
// zeta_{dkv}^{n*u}. Requires d*k*v | 24.
template <class R>
Series<R> series_shift_scale(const R& ring, const Series<R>& a, long u, long v,
                             long k) {
  if (v <= 0 || k <= 0)
    throw Error(ErrorCode::LatticeOverflow, "shift_scale: bad parameters");
  long g = std::gcd(std::abs(u), v);
  if (g > 1) {
    u /= g;
    v /= g;
  }
  if (u == 0) v = 1;
  long m = static_cast<long>(a.denom) * k * v;
  if (24 % m != 0)
    throw Error(ErrorCode::LatticeOverflow,
                "shift_scale: root of unity of order " + std::to_string(m) +
                    " is outside the coefficient field");
  Series<R> r;
  r.denom = static_cast<int>(a.denom * k);
  r.low = a.low;
  r.known = a.known;
  r.weight = a.weight;
  r.coeffs.reserve(a.coeffs.size());
  const long step = 24 / m;  // zeta_m = zeta24^step
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    long n = a.low + static_cast<long>(i);
    long e = (step * ((n % m) * (u % m))) % 24;
    if (u == 0 || e == 0)
      r.coeffs.push_back(a.coeffs[i]);
    else
      r.coeffs.push_back(ring.mul(ring.zeta24_pow(e), a.coeffs[i]));
  }
  return canonicalize(ring, std::move(r));
}

// Leading term (smallest exponent with a nonzero known coefficient).
// Returns false when the series is zero over its known window.
template <class R>
bool series_leading(const R& ring, const Series<R>& a, long* index) {
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (!ring.is_zero(a.coeffs[i])) {
      *index = a.low + static_cast<long>(i);
      return true;
    }
  }
  return false;
}

// Multiplicative inverse of a series with nonzero leading coefficient:
// a = c*q^(m/d)*(1 + ...) gives 1/a = c^-1*q^(-m/d)*(1 - ...). The relative
// precision window is preserved. Throws NonUnitDivisor when a is zero to its
// known order.
template <class R>
Series<R> series_inverse(const R& ring, const Series<R>& a) {
  long m;
  if (!series_leading(ring, a, &m))
    throw Error(ErrorCode::NonUnitDivisor,
                "series inverse: divisor is zero to known order");
  // Monomial fast path (also keeps scalar inverses O(1): scalars carry the
  // kScalarOrder known bound).
  long last = m;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (!ring.is_zero(a.coeffs[i])) last = a.low + static_cast<long>(i);
  if (last == m) {
    Series<R> r;
    r.denom = a.denom;
    r.low = -m;
    r.known = a.known - 2 * m;
    if (a.weight) r.weight = -*a.weight;
    r.coeffs.push_back(ring.inv(*a.stored(m)));
    return canonicalize(ring, std::move(r));
  }
  long len = a.known - m;  // known unit-part coefficients
  Series<R> r;
  r.denom = a.denom;
  r.low = -m;
  r.known = -m + len;
  if (a.weight) r.weight = -*a.weight;
  r.coeffs.assign(static_cast<std::size_t>(len), ring.zero());
  typename R::Elem lead_inv = ring.inv(*a.stored(m));
  r.coeffs[0] = lead_inv;
  for (long n = 1; n < len; ++n) {
    auto acc = ring.acc_make();
    bool any = false;
    for (long i = 1; i <= n; ++i) {
      const typename R::Elem* ai = a.stored(m + i);
      if (!ai || ring.is_zero(*ai)) continue;
      const typename R::Elem& e = r.coeffs[static_cast<std::size_t>(n - i)];
      if (ring.is_zero(e)) continue;
      ring.acc_fma(acc, *ai, e);
      any = true;
    }
    if (any) {
      typename R::Elem s = ring.acc_collect(acc);
      r.coeffs[static_cast<std::size_t>(n)] = ring.neg(ring.mul(lead_inv, s));
    }
  }
  return canonicalize(ring, std::move(r));
}

template <class R>
Series<R> series_div(const R& ring, const Series<R>& a, const Series<R>& b) {
  return series_mul(ring, a, series_inverse(ring, b));
}

// Square root of a series with constant term 1 and nothing below exponent 0.
template <class R>
Series<R> series_sqrt_unit(const R& ring, const Series<R>& a) {
  long m;
  bool nonzero = series_leading(ring, a, &m);
  if (!nonzero || m != 0 || !ring.equal(*a.stored(0), ring.one()))
    throw Error(ErrorCode::NotAUnitSquare,
                "sqrt: series must have constant term 1");
  if (a.known <= 0)
    throw Error(ErrorCode::InsufficientPrecision, "sqrt: nothing known");
  long last = 0;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i)
    if (!ring.is_zero(a.coeffs[i])) last = a.low + static_cast<long>(i);
  if (last == 0) return a;  // sqrt(1 + known zeros) with the same window
  Series<R> r;
  r.denom = a.denom;
  r.low = 0;
  r.known = a.known;
  if (a.weight) r.weight = *a.weight / 2;
  r.coeffs.assign(static_cast<std::size_t>(a.known), ring.zero());
  r.coeffs[0] = ring.one();
  typename R::Elem half = ring.inv(ring.from_long(2));
  for (long n = 1; n < a.known; ++n) {
    auto acc = ring.acc_make();
    for (long i = 1; i <= n - 1; ++i) {
      const typename R::Elem& x = r.coeffs[static_cast<std::size_t>(i)];
      const typename R::Elem& y = r.coeffs[static_cast<std::size_t>(n - i)];
      if (ring.is_zero(x) || ring.is_zero(y)) continue;
      ring.acc_fma(acc, x, y);
    }
    typename R::Elem s = ring.acc_collect(acc);
    const typename R::Elem* an = a.stored(n);
    typename R::Elem v = an ? ring.sub(*an, s) : ring.neg(s);
    r.coeffs[static_cast<std::size_t>(n)] = ring.mul(half, v);
  }
  return canonicalize(ring, std::move(r));
}

// Stored/known coefficient at a rational exponent.
template <class R>
typename R::Elem series_coefficient(const R& ring, const Series<R>& a,
                                    const Rational& exponent) {
  Rational scaled = exponent * a.denom;
  if (!is_integer(scaled))
    throw Error(ErrorCode::OffLattice,
                "exponent " + rational_str(exponent) + " not on lattice 1/" +
                    std::to_string(a.denom));
  long n = floor_long(scaled);
  if (n >= a.known)
    throw Error(ErrorCode::UnknownCoefficient,
                "exponent " + rational_str(exponent) +
                    " is beyond the known order " +
                    rational_str(a.known_qunits()));
  const typename R::Elem* c = a.stored(n);
  return c ? *c : ring.zero();
}

template <class R>
struct ZeroWitness {
  bool zero = true;
  Rational exponent{0};
  typename R::Elem value{};
};

// True iff every known coefficient with exponent < depth vanishes.
template <class R>
ZeroWitness<R> series_is_zero_to(const R& ring, const Series<R>& a,
                                 const Rational& depth) {
  if (a.known_qunits() < depth)
    throw Error(ErrorCode::InsufficientPrecision,
                "is_zero_to: depth " + rational_str(depth) +
                    " exceeds known order " + rational_str(a.known_qunits()));
  ZeroWitness<R> w;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    long n = a.low + static_cast<long>(i);
    if (exponent_q(n, a.denom) >= depth) break;
    if (!ring.is_zero(a.coeffs[i])) {
      w.zero = false;
      w.exponent = exponent_q(n, a.denom);
      w.value = a.coeffs[i];
      return w;
    }
  }
  return w;
}

template <class R>
bool series_equal_to_known(const R& ring, const Series<R>& a,
                           const Series<R>& b) {
  Series<R> d = series_sub(ring, a, b);
  Rational bound = d.known_qunits();
  return series_is_zero_to(ring, d, bound).zero;
}

}  // namespace eisenfact

#endif
