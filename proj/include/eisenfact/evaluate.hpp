#ifndef EISENFACT_EVALUATE_HPP
#define EISENFACT_EVALUATE_HPP

#include <algorithm>

#include "eisenfact/expr.hpp"
#include "eisenfact/generators.hpp"
#include "eisenfact/series.hpp"

namespace eisenfact {

// Supplies generator expansions in the target coefficient ring. `depth` is in
// q-units; the returned series must be known to at least that order.
template <class R>
struct GenSource {
  virtual ~GenSource() = default;
  virtual Series<R> generator(const GeneratorId& id, long depth) = 0;
};

struct ExactGenSource : GenSource<ExactRing> {
  explicit ExactGenSource(Registry& reg) : reg(reg) {}
  Series<ExactRing> generator(const GeneratorId& id, long depth) override {
    return reg.generate(id, depth);
  }
  Registry& reg;
};

namespace detail {

template <class R>
Series<R> eval_node(const R& ring, const Expr& e, long depth,
                    GenSource<R>& src) {
  using Sr = Series<R>;
  switch (e.kind) {
    case Expr::Kind::Number:
      return series_scalar(ring, ring.from_exact(RingElem(e.number)));
    case Expr::Kind::SymbolConst:
      return series_scalar(ring,
                           ring.from_exact(symbol_constant(e.const_name)));
    case Expr::Kind::Tau:
      throw Error(ErrorCode::BadEntry,
                  "t is only meaningful in numeric multiplier expressions");
    case Expr::Kind::Gen: {
      if (e.transform && e.transform->kind == ArgTransform::Kind::Fricke)
        throw Error(ErrorCode::FrickeInExactMode,
                    "Fricke transform on " + e.gen.str() +
                        " has no q-expansion; use the numeric checker");
      if (!e.transform || e.transform->is_identity())
        return src.generator(e.gen, depth);
      const ArgTransform& t = *e.transform;
      // tau -> (a*tau + b)/c: substitution scales the known order by a/c.
      long need = (depth * t.c + t.a - 1) / t.a + 2;
      Sr s = src.generator(e.gen, need);
      if (t.a != 1) s = series_dilate(ring, s, t.a);
      // s(a*tau) shifted by b/a then scaled by c gives s((a*tau + b)/c).
      if (t.c != 1 || t.bnum != 0)
        s = series_shift_scale(ring, s, t.bnum, t.bden * t.a, t.c);
      return s;
    }
    case Expr::Kind::Neg:
      return series_neg(ring, eval_node(ring, *e.a, depth, src));
    case Expr::Kind::Add:
      return series_add(ring, eval_node(ring, *e.a, depth, src),
                        eval_node(ring, *e.b, depth, src));
    case Expr::Kind::Sub:
      return series_sub(ring, eval_node(ring, *e.a, depth, src),
                        eval_node(ring, *e.b, depth, src));
    case Expr::Kind::Mul:
      return series_mul(ring, eval_node(ring, *e.a, depth, src),
                        eval_node(ring, *e.b, depth, src));
    case Expr::Kind::Div:
      return series_div(ring, eval_node(ring, *e.a, depth, src),
                        eval_node(ring, *e.b, depth, src));
    case Expr::Kind::Pow: {
      if (!is_integer(e.pow_exp))
        throw Error(ErrorCode::NonIntegerExponent,
                    "series power must be an integer, got " +
                        rational_str(e.pow_exp));
      long k = floor_long(e.pow_exp);
      Sr base = eval_node(ring, *e.a, depth, src);
      if (k < 0) return series_pow(ring, series_inverse(ring, base), -k);
      return series_pow(ring, base, k);
    }
  }
  throw Error(ErrorCode::BadEntry, "unreachable expression kind");
}

}  // namespace detail

// Evaluates `e` as a truncated q-series known to at least `order` q-units.
// Leaf expansions start at order + slack and are deepened when products of
// shifted/inverted constituents erode the bound.
template <class R>
Series<R> eval_series_expr(const R& ring, const ExprPtr& e, long order,
                           GenSource<R>& src) {
  long slack = 8;
  for (int attempt = 0; attempt < 5; ++attempt) {
    Series<R> s = detail::eval_node(ring, *e, order + slack, src);
    if (s.known_qunits() >= order) return s;
    slack *= 2;
  }
  throw Error(ErrorCode::InsufficientPrecision,
              "could not reach order " + std::to_string(order) + " for " +
                  print_expr(e));
}

// Evaluates a generator-free expression to an exact field element.
RingElem eval_const_expr(const ExprPtr& e);

}  // namespace eisenfact

#endif
