#ifndef EISENFACT_EXPR_HPP
#define EISENFACT_EXPR_HPP

#include <memory>
#include <optional>
#include <string>

#include "eisenfact/generators.hpp"
#include "eisenfact/rational.hpp"

namespace eisenfact {

// Argument substitution attached to a generator reference.
//   affine: tau -> (a*tau + bnum/bden)/c   (a, c positive integers)
//   fricke: tau -> -1/(N*tau)              (numeric mode only)
struct ArgTransform {
  enum class Kind { Affine, Fricke };
  Kind kind = Kind::Affine;
  long a = 1;
  long bnum = 0;
  long bden = 1;
  long c = 1;
  long fricke_n = 1;

  bool is_identity() const {
    return kind == Kind::Affine && a == 1 && bnum == 0 && c == 1;
  }
  bool operator==(const ArgTransform& o) const {
    if (kind != o.kind) return false;
    if (kind == Kind::Fricke) return fricke_n == o.fricke_n;
    return a == o.a && bnum == o.bnum && bden == o.bden && c == o.c;
  }
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Number, SymbolConst, Gen, Tau, Neg, Add, Sub, Mul, Div, Pow };

  Kind kind = Kind::Number;
  Rational number{0};               // Number (integer literal)
  std::string const_name;           // SymbolConst, as written ("sqrt(-3)")
  GeneratorId gen;                  // Gen
  std::optional<ArgTransform> transform;  // Gen
  ExprPtr a, b;                     // operands (Neg/Pow use a only)
  Rational pow_exp{0};              // Pow; non-integer is numeric-mode only
};

// Grammar (whitespace-insensitive, '#' is not special here):
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := atom ('^' exponent)? | '-' factor
//   atom   := NUMBER | CONST | 't' | GEN transform? | '(' expr ')'
//   CONST  := 'i' | 'rho' | 'sqrt(' int ')' | 'cbrt(4)' | 'zeta(' int ')'
//   GEN    := naming contract of the generators module
//   transform := '[' affine ']'
//   affine := '-1/(' int '*t)' | 't/' int | 't' (('+'|'-') rat)?
//           | int '*t' | '(' int '*t' ('+'|'-') rat ')' '/' int
//   exponent := int | '(' '-'? int ('/' int)? ')'
// Throws ParseError (1-based byte offsets), UnknownGenerator,
// MalformedTransform.
ExprPtr parse_expr(const std::string& src);

std::string print_expr(const ExprPtr& e);
bool expr_equal(const ExprPtr& x, const ExprPtr& y);

// Collects every generator reference (with its transform) in the tree.
void collect_generators(const ExprPtr& e,
                        std::vector<std::pair<GeneratorId, ArgTransform>>* out);

}  // namespace eisenfact

#endif
