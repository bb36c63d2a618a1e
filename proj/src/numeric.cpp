#include "eisenfact/numeric.hpp"

#include <cmath>
#include <random>

namespace eisenfact {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::complex<double> apply_transform(const ArgTransform& t,
                                     std::complex<double> tau) {
  if (t.kind == ArgTransform::Kind::Fricke)
    return -1.0 / (static_cast<double>(t.fricke_n) * tau);
  std::complex<double> num =
      static_cast<double>(t.a) * tau +
      std::complex<double>(static_cast<double>(t.bnum) /
                               static_cast<double>(t.bden),
                           0.0);
  return num / static_cast<double>(t.c);
}

}  // namespace

const NumericEvaluator::Embedded& NumericEvaluator::embedded(
    const GeneratorId& id, long depth) {
  long key_depth = ((depth + 31) / 32) * 32;
  auto key = std::make_pair(id.canonical(), key_depth);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  Series<ExactRing> s = reg_.generate(id, key_depth);
  Embedded e;
  e.denom = s.denom;
  e.low = s.low;
  e.known = s.known;
  e.c.reserve(s.coeffs.size());
  e.absc.reserve(s.coeffs.size());
  for (const RingElem& c : s.coeffs) {
    std::complex<double> v = c.embed();
    e.c.push_back(v);
    e.absc.push_back(std::abs(v));
  }
  std::lock_guard<std::mutex> lock(mu_);
  return cache_.emplace(key, std::move(e)).first->second;
}

NumericEvaluator::Value NumericEvaluator::eval_gen(const Expr& e,
                                                   std::complex<double> tau,
                                                   long depth) {
  std::complex<double> arg = tau;
  if (e.transform) arg = apply_transform(*e.transform, tau);
  if (arg.imag() < opt_.im_floor)
    throw Error(ErrorCode::NonConvergent,
                e.gen.str() + ": argument has Im = " +
                    std::to_string(arg.imag()) + " below the floor " +
                    std::to_string(opt_.im_floor));
  const Embedded& s = embedded(e.gen, depth);
  const double d = static_cast<double>(s.denom);
  const std::complex<double> istep(0.0, kTwoPi / d);
  const std::complex<double> qs = std::exp(istep * arg);
  const double aqs = std::abs(qs);
  if (aqs >= 1.0)
    throw Error(ErrorCode::NonConvergent, "|q| >= 1 at the evaluation point");
  // Horner over the stored window, highest exponent first.
  std::complex<double> acc(0.0, 0.0);
  double sacc = 0.0;
  for (std::size_t i = s.c.size(); i-- > 0;) {
    acc = acc * qs + s.c[i];
    sacc = sacc * aqs + s.absc[i];
  }
  std::complex<double> qlow =
      std::exp(istep * arg * static_cast<double>(s.low));
  double aqlow = std::abs(qlow);
  Value v;
  v.v = acc * qlow;
  v.scale = sacc * aqlow;
  // Geometric tail bound from the largest coefficient near the truncation.
  double m = 0.0;
  std::size_t back = std::min<std::size_t>(s.absc.size(),
                                           static_cast<std::size_t>(4 * s.denom));
  for (std::size_t i = s.absc.size() - back; i < s.absc.size(); ++i)
    m = std::max(m, s.absc[i]);
  m = std::max(m, 1.0);
  v.tail = m * std::pow(aqs, static_cast<double>(s.known)) / (1.0 - aqs);
  if (v.tail > opt_.tail_tol * std::max(1.0, v.scale))
    throw Error(ErrorCode::InsufficientDepth,
                e.gen.str() + ": tail estimate " + std::to_string(v.tail) +
                    " at depth " + std::to_string(depth));
  return v;
}

NumericEvaluator::Value NumericEvaluator::eval_rec(const Expr& e,
                                                   std::complex<double> tau,
                                                   long depth) {
  switch (e.kind) {
    case Expr::Kind::Number: {
      Value v;
      v.v = std::complex<double>(rational_to_double(e.number), 0.0);
      v.scale = std::abs(v.v);
      return v;
    }
    case Expr::Kind::SymbolConst: {
      Value v;
      v.v = symbol_constant(e.const_name).embed();
      v.scale = std::abs(v.v);
      return v;
    }
    case Expr::Kind::Tau: {
      Value v;
      v.v = tau;
      v.scale = std::abs(tau);
      return v;
    }
    case Expr::Kind::Gen:
      return eval_gen(e, tau, depth);
    case Expr::Kind::Neg: {
      Value a = eval_rec(*e.a, tau, depth);
      a.v = -a.v;
      return a;
    }
    case Expr::Kind::Add:
    case Expr::Kind::Sub: {
      Value a = eval_rec(*e.a, tau, depth);
      Value b = eval_rec(*e.b, tau, depth);
      Value v;
      v.v = e.kind == Expr::Kind::Add ? a.v + b.v : a.v - b.v;
      v.scale = a.scale + b.scale;
      v.tail = std::max(a.tail, b.tail);
      return v;
    }
    case Expr::Kind::Mul: {
      Value a = eval_rec(*e.a, tau, depth);
      Value b = eval_rec(*e.b, tau, depth);
      Value v;
      v.v = a.v * b.v;
      v.scale = a.scale * b.scale;
      v.tail = std::max(a.tail, b.tail);
      return v;
    }
    case Expr::Kind::Div: {
      Value a = eval_rec(*e.a, tau, depth);
      Value b = eval_rec(*e.b, tau, depth);
      Value v;
      v.v = a.v / b.v;
      v.scale = a.scale / std::max(std::abs(b.v), 1e-300);
      v.tail = std::max(a.tail, b.tail);
      return v;
    }
    case Expr::Kind::Pow: {
      Value a = eval_rec(*e.a, tau, depth);
      Value v;
      v.tail = a.tail;
      if (is_integer(e.pow_exp)) {
        long k = floor_long(e.pow_exp);
        std::complex<double> acc(1.0, 0.0);
        double sacc = 1.0;
        long ka = std::labs(k);
        std::complex<double> base = a.v;
        double sbase = a.scale;
        while (ka > 0) {
          if (ka & 1) {
            acc *= base;
            sacc *= sbase;
          }
          ka >>= 1;
          if (ka > 0) {
            base *= base;
            sbase *= sbase;
          }
        }
        v.v = k < 0 ? 1.0 / acc : acc;
        v.scale = k < 0 ? 1.0 / std::max(std::abs(acc), 1e-300) : sacc;
      } else {
        // Principal branch; used by half-integral multipliers like
        // (t/i)^(1/2).
        double x = rational_to_double(e.pow_exp);
        v.v = std::pow(a.v, x);
        v.scale = std::pow(std::max(std::abs(a.v), 1e-300), x);
      }
      return v;
    }
  }
  throw Error(ErrorCode::BadEntry, "unreachable expression kind");
}

NumericEvaluator::Value NumericEvaluator::eval(const ExprPtr& e,
                                               std::complex<double> tau) {
  long depth = opt_.depth;
  for (;;) {
    try {
      Value v = eval_rec(*e, tau, depth);
      v.depth = depth;
      return v;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::InsufficientDepth || depth >= opt_.max_depth)
        throw;
      depth = std::min(depth * 2, opt_.max_depth);
    }
  }
}

std::vector<std::complex<double>> transform_sample_points(int count,
                                                          uint64_t seed,
                                                          long fricke_n) {
  std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbull);
  auto u01 = [&]() {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  const std::complex<double> fixed(0.0, 1.0 / std::sqrt(static_cast<double>(
                                            std::max(fricke_n, 1L))));
  std::vector<std::complex<double>> pts;
  while (static_cast<int>(pts.size()) < count) {
    std::complex<double> tau(-1.0 + 2.0 * u01(), 0.5 + 1.5 * u01());
    if (std::abs(tau - fixed) < 1e-2) continue;
    pts.push_back(tau);
  }
  pts.emplace_back(0.5, 1.5);
  pts.emplace_back(0.3, 1.0);
  return pts;
}

}  // namespace eisenfact
