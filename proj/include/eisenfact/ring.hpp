#ifndef EISENFACT_RING_HPP
#define EISENFACT_RING_HPP

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "eisenfact/errors.hpp"
#include "eisenfact/rational.hpp"

namespace eisenfact {

// Element of the degree-24 field Q(zeta24, cbrt(4)).
//
// Basis monomials are z^a * c^b with z = zeta24 (z^8 = z^4 - 1, the 24th
// cyclotomic relation) and c = cbrt(4) (c^3 = 4), 0 <= a < 8, 0 <= b < 3.
// Stored sparsely as (key, coefficient) terms with key = 8*b + a, sorted by
// key, no zero coefficients; rationals are canonical. Two elements are equal
// iff their term lists are identical.
class RingElem {
public:
  struct Term {
    int key;  // 8*cpow + zpow
    Rational coef;
  };

  using Accumulator = std::array<Rational, 24>;

  RingElem() = default;
  explicit RingElem(long n) { set_rational(Rational(n)); }
  explicit RingElem(const Rational& r) { set_rational(r); }

  static RingElem zero() { return RingElem(); }
  static RingElem one() { return RingElem(1); }
  // Canonical z^a*c^b (a, b already in range) scaled by coef.
  static RingElem monomial(int zpow, int cpow, const Rational& coef);
  // z^e for any integer e, reduced (e mod 24 via z^12 = -1).
  static RingElem zeta24_pow(long e);
  // Element from dense basis coordinates indexed by key = 8*cpow + zpow.
  static RingElem from_dense(const std::array<Rational, 24>& coords);

  bool is_zero() const { return terms_.empty(); }
  bool is_rational() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].key == 0);
  }
  // Rational value when is_rational(), else throws.
  Rational rational_value() const;

  const std::vector<Term>& terms() const { return terms_; }
  // Coefficient of basis monomial z^a*c^b (zero when absent).
  Rational coord(int zpow, int cpow) const;

  friend RingElem operator+(const RingElem& x, const RingElem& y);
  friend RingElem operator-(const RingElem& x, const RingElem& y);
  friend RingElem operator*(const RingElem& x, const RingElem& y);
  RingElem operator-() const;
  RingElem& operator+=(const RingElem& y) { return *this = *this + y; }
  RingElem& operator-=(const RingElem& y) { return *this = *this - y; }
  RingElem& operator*=(const RingElem& y) { return *this = *this * y; }

  bool operator==(const RingElem& y) const;
  bool operator!=(const RingElem& y) const { return !(*this == y); }

  // Multiplicative inverse; throws DivisionByZero on zero.
  RingElem inverse() const;

  // acc += x*y, with `touched` tracking which basis slots were written.
  // The fused form of the convolution inner loop.
  static void fma(Accumulator& acc, uint32_t& touched, const RingElem& x,
                  const RingElem& y);
  static RingElem collect(Accumulator& acc, uint32_t touched);

  // Ring homomorphism into C: z -> exp(2*pi*i/24), c -> real cbrt(4).
  std::complex<double> embed() const;

  // Exact text form in the z/c basis, e.g. "2*z^4 - 1" or "1/6".
  std::string to_string() const;

private:
  void set_rational(const Rational& r) {
    terms_.clear();
    if (r != 0) terms_.push_back({0, r});
  }

  std::vector<Term> terms_;
};

// Named constants, pre-resolved to the principal branch:
//   "i", "rho", "zeta(k)" for k | 24, "sqrt(d)" with squarefree part of d in
//   {+-1, +-2, +-3, +-6}, "cbrt(4)".
// sqrt(m) for general m factors out the square part (sqrt(-1728) = 24*sqrt(-3)).
// Throws UnknownConstant outside the supported set.
RingElem symbol_constant(const std::string& name);

// Structured accessors used by the generator formulas.
RingElem const_i();
RingElem const_rho();
RingElem const_zeta(long k);      // primitive k-th root e^(2*pi*i/k), k | 24
RingElem const_sqrt(long d);      // principal branch
RingElem const_cbrt4();

}  // namespace eisenfact

#endif
