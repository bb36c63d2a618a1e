#include "eisenfact/ring.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

namespace eisenfact {

const char* error_code_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::UnknownConstant: return "UnknownConstant";
    case ErrorCode::UnsupportedDiscriminant: return "UnsupportedDiscriminant";
    case ErrorCode::LatticeOverflow: return "LatticeOverflow";
    case ErrorCode::NotAUnitSquare: return "NotAUnitSquare";
    case ErrorCode::NonUnitDivisor: return "NonUnitDivisor";
    case ErrorCode::OffLattice: return "OffLattice";
    case ErrorCode::UnknownCoefficient: return "UnknownCoefficient";
    case ErrorCode::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::NotAFamily: return "NotAFamily";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::MalformedTransform: return "MalformedTransform";
    case ErrorCode::FrickeInExactMode: return "FrickeInExactMode";
    case ErrorCode::NonIntegerExponent: return "NonIntegerExponent";
    case ErrorCode::NonConvergent: return "NonConvergent";
    case ErrorCode::InsufficientDepth: return "InsufficientDepth";
    case ErrorCode::PrimeGenerationFailure: return "PrimeGenerationFailure";
    case ErrorCode::BadEntry: return "BadEntry";
    case ErrorCode::IoError: return "IoError";
  }
  return "Error";
}

namespace {

// z^a for 0 <= a <= 14 expanded over the basis z^0..z^7 using z^8 = z^4 - 1
// (which also forces z^12 = -1).
struct ZRed {
  int n;
  struct { int exp; int sign; } t[2];
};

constexpr ZRed kZRed[15] = {
    {1, {{0, 1}, {0, 0}}},  {1, {{1, 1}, {0, 0}}},  {1, {{2, 1}, {0, 0}}},
    {1, {{3, 1}, {0, 0}}},  {1, {{4, 1}, {0, 0}}},  {1, {{5, 1}, {0, 0}}},
    {1, {{6, 1}, {0, 0}}},  {1, {{7, 1}, {0, 0}}},  {2, {{4, 1}, {0, -1}}},
    {2, {{5, 1}, {1, -1}}}, {2, {{6, 1}, {2, -1}}}, {2, {{7, 1}, {3, -1}}},
    {1, {{0, -1}, {0, 0}}}, {1, {{1, -1}, {0, 0}}}, {1, {{2, -1}, {0, 0}}},
};

// acc[key(e, b)] += f * sign for each reduction term of z^a; b < 3 after the
// c^3 = 4 fold-down done by the caller.
inline void accumulate_monomial(RingElem::Accumulator& acc, uint32_t& touched,
                                int a, int b, const Rational& f) {
  const ZRed& red = kZRed[a];
  for (int t = 0; t < red.n; ++t) {
    int key = 8 * b + red.t[t].exp;
    if (red.t[t].sign > 0)
      acc[key] += f;
    else
      acc[key] -= f;
    touched |= 1u << key;
  }
}

}  // namespace

RingElem RingElem::monomial(int zpow, int cpow, const Rational& coef) {
  RingElem e;
  if (coef != 0) e.terms_.push_back({8 * cpow + zpow, coef});
  return e;
}

RingElem RingElem::zeta24_pow(long e) {
  e %= 24;
  if (e < 0) e += 24;
  Rational sign(1);
  if (e >= 12) {
    e -= 12;  // z^12 = -1
    sign = -1;
  }
  if (e < 8) return monomial(static_cast<int>(e), 0, sign);
  Accumulator acc{};
  uint32_t touched = 0;
  accumulate_monomial(acc, touched, static_cast<int>(e), 0, sign);
  return collect(acc, touched);
}

RingElem RingElem::from_dense(const std::array<Rational, 24>& coords) {
  RingElem r;
  for (int key = 0; key < 24; ++key)
    if (coords[key] != 0) r.terms_.push_back({key, coords[key]});
  return r;
}

Rational RingElem::rational_value() const {
  if (terms_.empty()) return Rational(0);
  if (terms_.size() == 1 && terms_[0].key == 0) return terms_[0].coef;
  throw Error(ErrorCode::NonIntegerExponent,
              "element is not rational: " + to_string());
}

Rational RingElem::coord(int zpow, int cpow) const {
  int key = 8 * cpow + zpow;
  for (const Term& t : terms_)
    if (t.key == key) return t.coef;
  return Rational(0);
}

RingElem operator+(const RingElem& x, const RingElem& y) {
  RingElem r;
  r.terms_.reserve(x.terms_.size() + y.terms_.size());
  auto ix = x.terms_.begin(), iy = y.terms_.begin();
  while (ix != x.terms_.end() && iy != y.terms_.end()) {
    if (ix->key < iy->key) {
      r.terms_.push_back(*ix++);
    } else if (iy->key < ix->key) {
      r.terms_.push_back(*iy++);
    } else {
      Rational s = ix->coef + iy->coef;
      if (s != 0) r.terms_.push_back({ix->key, std::move(s)});
      ++ix, ++iy;
    }
  }
  r.terms_.insert(r.terms_.end(), ix, x.terms_.end());
  r.terms_.insert(r.terms_.end(), iy, y.terms_.end());
  return r;
}

RingElem operator-(const RingElem& x, const RingElem& y) { return x + (-y); }

RingElem RingElem::operator-() const {
  RingElem r;
  r.terms_.reserve(terms_.size());
  for (const Term& t : terms_) r.terms_.push_back({t.key, -t.coef});
  return r;
}

void RingElem::fma(Accumulator& acc, uint32_t& touched, const RingElem& x,
                   const RingElem& y) {
  for (const Term& tx : x.terms_) {
    const int ax = tx.key & 7, bx = tx.key >> 3;
    for (const Term& ty : y.terms_) {
      int a = ax + (ty.key & 7);
      int b = bx + (ty.key >> 3);
      Rational f = tx.coef * ty.coef;
      if (b >= 3) {
        b -= 3;  // c^3 = 4
        f *= 4;
      }
      accumulate_monomial(acc, touched, a, b, f);
    }
  }
}

RingElem RingElem::collect(Accumulator& acc, uint32_t touched) {
  RingElem r;
  while (touched) {
    int key = __builtin_ctz(touched);
    touched &= touched - 1;
    if (acc[key] != 0) r.terms_.push_back({key, std::move(acc[key])});
    acc[key] = 0;
  }
  std::sort(r.terms_.begin(), r.terms_.end(),
            [](const Term& a, const Term& b) { return a.key < b.key; });
  return r;
}

RingElem operator*(const RingElem& x, const RingElem& y) {
  RingElem::Accumulator acc{};
  uint32_t touched = 0;
  RingElem::fma(acc, touched, x, y);
  return RingElem::collect(acc, touched);
}

bool RingElem::operator==(const RingElem& y) const {
  if (terms_.size() != y.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].key != y.terms_[i].key || terms_[i].coef != y.terms_[i].coef)
      return false;
  return true;
}

RingElem RingElem::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (is_rational()) return RingElem(Rational(1) / terms_[0].coef);
  // Solve (this * x) = 1 as a 24x24 exact linear system: column j of M is
  // this * basis_monomial(j) in basis coordinates.
  std::array<std::array<Rational, 25>, 24> m{};
  for (int j = 0; j < 24; ++j) {
    RingElem col = *this * monomial(j & 7, j >> 3, Rational(1));
    for (const Term& t : col.terms_) m[t.key][j] = t.coef;
  }
  m[0][24] = 1;
  for (int col = 0; col < 24; ++col) {
    int pivot = -1;
    for (int row = col; row < 24; ++row)
      if (m[row][col] != 0) {
        pivot = row;
        break;
      }
    if (pivot < 0) throw Error(ErrorCode::DivisionByZero, "singular element");
    std::swap(m[col], m[pivot]);
    Rational inv_p = Rational(1) / m[col][col];
    for (int j = col; j <= 24; ++j) m[col][j] *= inv_p;
    for (int row = 0; row < 24; ++row) {
      if (row == col || m[row][col] == 0) continue;
      Rational f = m[row][col];
      for (int j = col; j <= 24; ++j) m[row][j] -= f * m[col][j];
    }
  }
  RingElem r;
  for (int j = 0; j < 24; ++j)
    if (m[j][24] != 0) r.terms_.push_back({j, m[j][24]});
  return r;
}

std::complex<double> RingElem::embed() const {
  static const std::array<std::complex<double>, 24> basis = [] {
    std::array<std::complex<double>, 24> b;
    const double pi = std::acos(-1.0);
    const double cbrt4 = std::cbrt(4.0);
    for (int key = 0; key < 24; ++key) {
      int a = key & 7, bb = key >> 3;
      b[key] = std::polar(std::pow(cbrt4, bb), 2.0 * pi * a / 24.0);
    }
    return b;
  }();
  std::complex<double> v(0.0, 0.0);
  for (const Term& t : terms_) v += rational_to_double(t.coef) * basis[t.key];
  return v;
}

std::string RingElem::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const Term& t : terms_) {
    Rational c = t.coef;
    bool neg = c < 0;
    if (neg) c = -c;
    if (first) {
      if (neg) os << "-";
      first = false;
    } else {
      os << (neg ? " - " : " + ");
    }
    int a = t.key & 7, b = t.key >> 3;
    bool unit_coef = (c == 1) && (a != 0 || b != 0);
    if (!unit_coef) os << rational_str(c);
    if (a != 0 || b != 0) {
      if (!unit_coef) os << "*";
      if (a == 1)
        os << "z";
      else if (a > 1)
        os << "z^" << a;
      if (a != 0 && b != 0) os << "*";
      if (b == 1)
        os << "c";
      else if (b > 1)
        os << "c^" << b;
    }
  }
  return os.str();
}

RingElem const_i() { return RingElem::zeta24_pow(6); }

RingElem const_rho() { return RingElem::zeta24_pow(8); }

RingElem const_zeta(long k) {
  if (k <= 0 || 24 % k != 0)
    throw Error(ErrorCode::UnknownConstant,
                "zeta(" + std::to_string(k) + "): order must divide 24");
  return RingElem::zeta24_pow(24 / k);
}

RingElem const_cbrt4() { return RingElem::monomial(0, 1, Rational(1)); }

RingElem const_sqrt(long d) {
  if (d == 0) return RingElem::zero();
  // Factor out the square part: d = s^2 * d0 with d0 squarefree.
  long s = 1, d0 = std::abs(d);
  for (long p = 2; p * p <= d0; ++p) {
    while (d0 % (p * p) == 0) {
      d0 /= p * p;
      s *= p;
    }
  }
  if (d < 0) d0 = -d0;
  RingElem root;
  switch (d0) {
    case 1: root = RingElem::one(); break;
    case -1: root = const_i(); break;
    // sqrt(2) = zeta8 + zeta8^-1, sqrt(3) = zeta12 + zeta12^-1.
    case 2: root = RingElem::zeta24_pow(3) + RingElem::zeta24_pow(-3); break;
    case 3: root = RingElem::zeta24_pow(2) + RingElem::zeta24_pow(-2); break;
    case 6: root = const_sqrt(2) * const_sqrt(3); break;
    case -2: root = const_i() * const_sqrt(2); break;
    case -3: root = const_i() * const_sqrt(3); break;
    case -6: root = const_i() * const_sqrt(6); break;
    default:
      throw Error(ErrorCode::UnknownConstant,
                  "sqrt(" + std::to_string(d) + "): squarefree part " +
                      std::to_string(d0) + " unsupported");
  }
  return RingElem(Rational(s)) * root;
}

RingElem symbol_constant(const std::string& name) {
  if (name == "i") return const_i();
  if (name == "rho") return const_rho();
  if (name == "cbrt(4)") return const_cbrt4();
  auto paren_arg = [&](const std::string& prefix) -> long {
    std::size_t start = prefix.size();
    if (name.size() <= start + 1 || name.back() != ')')
      throw Error(ErrorCode::UnknownConstant, name);
    return std::stol(name.substr(start, name.size() - start - 1));
  };
  if (name.rfind("zeta(", 0) == 0) return const_zeta(paren_arg("zeta("));
  if (name.rfind("sqrt(", 0) == 0) return const_sqrt(paren_arg("sqrt("));
  throw Error(ErrorCode::UnknownConstant, name);
}

}  // namespace eisenfact
