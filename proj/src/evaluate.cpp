#include "eisenfact/evaluate.hpp"

namespace eisenfact {

RingElem eval_const_expr(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Number:
      return RingElem(e->number);
    case Expr::Kind::SymbolConst:
      return symbol_constant(e->const_name);
    case Expr::Kind::Neg:
      return -eval_const_expr(e->a);
    case Expr::Kind::Add:
      return eval_const_expr(e->a) + eval_const_expr(e->b);
    case Expr::Kind::Sub:
      return eval_const_expr(e->a) - eval_const_expr(e->b);
    case Expr::Kind::Mul:
      return eval_const_expr(e->a) * eval_const_expr(e->b);
    case Expr::Kind::Div:
      return eval_const_expr(e->a) * eval_const_expr(e->b).inverse();
    case Expr::Kind::Pow: {
      if (!is_integer(e->pow_exp))
        throw Error(ErrorCode::NonIntegerExponent,
                    "constant power must be an integer");
      long k = floor_long(e->pow_exp);
      RingElem base = eval_const_expr(e->a);
      if (k < 0) {
        base = base.inverse();
        k = -k;
      }
      RingElem acc = RingElem::one();
      while (k > 0) {
        if (k & 1) acc *= base;
        k >>= 1;
        if (k > 0) base *= base;
      }
      return acc;
    }
    default:
      throw Error(ErrorCode::BadEntry,
                  "expected a constant expression, got " + print_expr(e));
  }
}

}  // namespace eisenfact
