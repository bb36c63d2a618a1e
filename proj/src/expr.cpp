#include "eisenfact/expr.hpp"

#include <cctype>
#include <sstream>

namespace eisenfact {

namespace {

ExprPtr make_node(Expr e) { return std::make_shared<Expr>(std::move(e)); }

ExprPtr make_binary(Expr::Kind k, ExprPtr a, ExprPtr b) {
  Expr e;
  e.kind = k;
  e.a = std::move(a);
  e.b = std::move(b);
  return make_node(std::move(e));
}

class Parser {
 public:
  explicit Parser(const std::string& src) : src_(src) {}

  ExprPtr parse() {
    ExprPtr e = parse_sum();
    skip_ws();
    if (pos_ != src_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) {
    throw ParseError(pos_ + 1, msg);
  }

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool eof() {
    skip_ws();
    return pos_ >= src_.size();
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c, const char* what) {
    if (!accept(c)) fail(std::string("expected '") + c + "' " + what);
  }

  long parse_int() {
    skip_ws();
    std::size_t start = pos_;
    bool neg = false;
    if (pos_ < src_.size() && (src_[pos_] == '-' || src_[pos_] == '+')) {
      neg = src_[pos_] == '-';
      ++pos_;
    }
    if (pos_ >= src_.size() || !std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      pos_ = start;
      fail("expected integer");
    }
    long v = 0;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
      v = v * 10 + (src_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }

  bool at_digit() {
    skip_ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  std::string parse_ident() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < src_.size() &&
           (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
      ++pos_;
    if (pos_ == start) fail("expected identifier");
    return src_.substr(start, pos_ - start);
  }

  ExprPtr parse_sum() {
    ExprPtr e = parse_term();
    for (;;) {
      if (accept('+'))
        e = make_binary(Expr::Kind::Add, e, parse_term());
      else if (accept('-'))
        e = make_binary(Expr::Kind::Sub, e, parse_term());
      else
        return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_factor();
    for (;;) {
      if (accept('*'))
        e = make_binary(Expr::Kind::Mul, e, parse_factor());
      else if (accept('/'))
        e = make_binary(Expr::Kind::Div, e, parse_factor());
      else
        return e;
    }
  }

  ExprPtr parse_factor() {
    if (accept('-')) {
      Expr e;
      e.kind = Expr::Kind::Neg;
      e.a = parse_factor();
      return make_node(std::move(e));
    }
    ExprPtr atom = parse_atom();
    if (accept('^')) {
      Expr e;
      e.kind = Expr::Kind::Pow;
      e.a = atom;
      e.pow_exp = parse_exponent();
      return make_node(std::move(e));
    }
    return atom;
  }

  Rational parse_exponent() {
    if (accept('(')) {
      long num = parse_int();
      long den = 1;
      if (accept('/')) den = parse_int();
      expect(')', "after exponent");
      if (den == 0) fail("zero denominator in exponent");
      return make_rational(num, den);
    }
    if (peek() == '-' || at_digit()) return Rational(parse_int());
    fail("expected exponent");
  }

  Rational parse_rat() {
    long num = parse_int();
    long den = 1;
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == '/') {
      ++pos_;
      den = parse_int();
      if (den == 0) fail("zero denominator");
    }
    return make_rational(num, den);
  }

  // Inside '[' ... ']'.
  ArgTransform parse_transform() {
    ArgTransform t;
    skip_ws();
    std::size_t start = pos_;
    auto malformed = [&](const char* msg) -> void {
      throw Error(ErrorCode::MalformedTransform,
                  std::string(msg) + " at offset " + std::to_string(start + 1));
    };
    if (peek() == '-') {
      // -1/(N*t)
      ++pos_;
      if (parse_int() != 1) malformed("expected -1/(N*t)");
      expect('/', "in Fricke transform");
      expect('(', "in Fricke transform");
      t.kind = ArgTransform::Kind::Fricke;
      t.fricke_n = parse_int();
      if (t.fricke_n <= 0) malformed("Fricke level must be positive");
      expect('*', "in Fricke transform");
      if (parse_ident() != "t") malformed("expected t");
      expect(')', "in Fricke transform");
      return t;
    }
    if (accept('(')) {
      // (a*t +- rat)/c
      t.a = parse_int();
      expect('*', "in transform");
      if (parse_ident() != "t") malformed("expected t");
      char sign = peek();
      if (sign != '+' && sign != '-') malformed("expected shift sign");
      ++pos_;
      Rational sh = parse_rat();
      if (sign == '-') sh = -sh;
      t.bnum = sh.get_num().get_si();
      t.bden = sh.get_den().get_si();
      expect(')', "in transform");
      expect('/', "in transform");
      t.c = parse_int();
      if (t.a <= 0 || t.c <= 0) malformed("scale factors must be positive");
      return t;
    }
    if (at_digit()) {
      // k*t
      t.a = parse_int();
      if (t.a <= 0) malformed("dilation must be positive");
      expect('*', "in transform");
      if (parse_ident() != "t") malformed("expected t");
      return t;
    }
    if (parse_ident() != "t") malformed("expected t");
    if (accept('/')) {
      t.c = parse_int();
      if (t.c <= 0) malformed("scale must be positive");
      return t;
    }
    char sign = peek();
    if (sign == '+' || sign == '-') {
      ++pos_;
      Rational sh = parse_rat();
      if (sign == '-') sh = -sh;
      t.bnum = sh.get_num().get_si();
      t.bden = sh.get_den().get_si();
    }
    return t;
  }

  ExprPtr parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail("unexpected end of input");
    if (accept('(')) {
      ExprPtr e = parse_sum();
      expect(')', "to close group");
      return e;
    }
    if (at_digit()) {
      Expr e;
      e.kind = Expr::Kind::Number;
      e.number = Rational(parse_int());
      return make_node(std::move(e));
    }
    std::size_t ident_pos = pos_;
    std::string name = parse_ident();
    // Constants.
    if (name == "i" || name == "rho") {
      Expr e;
      e.kind = Expr::Kind::SymbolConst;
      e.const_name = name;
      return make_node(std::move(e));
    }
    if (name == "t" || name == "tau") {
      Expr e;
      e.kind = Expr::Kind::Tau;
      return make_node(std::move(e));
    }
    if (name == "sqrt" || name == "zeta" || name == "cbrt") {
      expect('(', "after constant name");
      long arg = parse_int();
      expect(')', "after constant argument");
      Expr e;
      e.kind = Expr::Kind::SymbolConst;
      e.const_name = name + "(" + std::to_string(arg) + ")";
      symbol_constant(e.const_name);  // validates; throws UnknownConstant
      return make_node(std::move(e));
    }
    // Generators.
    Expr e;
    e.kind = Expr::Kind::Gen;
    if (name == "F" || name == "G" || name == "f" || name == "g") {
      expect('(', "after family name");
      long level = parse_int();
      expect(',', "between family level and index");
      long index = parse_int();
      expect(')', "after family index");
      GenName n = name == "F"   ? GenName::FamF
                  : name == "G" ? GenName::FamG
                  : name == "f" ? GenName::Famf
                                : GenName::Famg;
      e.gen = GeneratorId::make(n, static_cast<int>(level),
                                static_cast<int>(index));
    } else if (name == "Fp3" || name == "Gp3") {
      expect('(', "after family name");
      long index = parse_int();
      expect(')', "after family index");
      e.gen = GeneratorId::make(
          name == "Fp3" ? GenName::FamFp3 : GenName::FamGp3, 3,
          static_cast<int>(index));
    } else {
      try {
        e.gen = GeneratorId::parse(name);
      } catch (const Error& err) {
        pos_ = ident_pos;
        throw;
      }
    }
    // Re-validate families parsed from pieces.
    GeneratorId::parse(e.gen.str());
    if (accept('[')) {
      e.transform = parse_transform();
      expect(']', "to close transform");
    }
    return make_node(std::move(e));
  }

  const std::string& src_;
  std::size_t pos_ = 0;
};

int precedence(Expr::Kind k) {
  switch (k) {
    case Expr::Kind::Add:
    case Expr::Kind::Sub: return 1;
    case Expr::Kind::Mul:
    case Expr::Kind::Div: return 2;
    case Expr::Kind::Neg: return 3;
    case Expr::Kind::Pow: return 4;
    default: return 5;
  }
}

std::string print_transform(const ArgTransform& t) {
  std::ostringstream os;
  os << "[";
  if (t.kind == ArgTransform::Kind::Fricke) {
    os << "-1/(" << t.fricke_n << "*t)";
  } else {
    auto shift = [&](std::ostream& o) {
      o << (t.bnum < 0 ? "-" : "+") << std::abs(t.bnum);
      if (t.bden != 1) o << "/" << t.bden;
    };
    if (t.a == 1 && t.c == 1) {
      os << "t";
      if (t.bnum != 0) shift(os);
    } else if (t.a == 1 && t.bnum == 0 && t.c != 1) {
      os << "t/" << t.c;
    } else if (t.bnum == 0 && t.c == 1) {
      os << t.a << "*t";
    } else {
      os << "(" << t.a << "*t";
      shift(os);
      os << ")/" << t.c;
    }
  }
  os << "]";
  return os.str();
}

void print_rec(const ExprPtr& e, std::ostream& os, int parent_prec) {
  int prec = precedence(e->kind);
  bool parens = prec < parent_prec;
  if (parens) os << "(";
  switch (e->kind) {
    case Expr::Kind::Number:
      os << rational_str(e->number);
      break;
    case Expr::Kind::SymbolConst:
      os << e->const_name;
      break;
    case Expr::Kind::Tau:
      os << "t";
      break;
    case Expr::Kind::Gen:
      os << e->gen.str();
      if (e->transform && !e->transform->is_identity())
        os << print_transform(*e->transform);
      else if (e->transform)
        os << "[t]";
      break;
    case Expr::Kind::Neg:
      os << "-";
      print_rec(e->a, os, precedence(Expr::Kind::Neg) + 1);
      break;
    case Expr::Kind::Add:
      print_rec(e->a, os, prec);
      os << " + ";
      print_rec(e->b, os, prec + 1);
      break;
    case Expr::Kind::Sub:
      print_rec(e->a, os, prec);
      os << " - ";
      print_rec(e->b, os, prec + 1);
      break;
    case Expr::Kind::Mul:
      print_rec(e->a, os, prec);
      os << "*";
      print_rec(e->b, os, prec + 1);
      break;
    case Expr::Kind::Div:
      print_rec(e->a, os, prec);
      os << "/";
      print_rec(e->b, os, prec + 1);
      break;
    case Expr::Kind::Pow:
      print_rec(e->a, os, prec + 1);
      os << "^";
      if (is_integer(e->pow_exp) && e->pow_exp >= 0)
        os << rational_str(e->pow_exp);
      else
        os << "(" << rational_str(e->pow_exp) << ")";
      break;
  }
  if (parens) os << ")";
}

}  // namespace

ExprPtr parse_expr(const std::string& src) { return Parser(src).parse(); }

std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  print_rec(e, os, 0);
  return os.str();
}

bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (!x || !y) return x == y;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::Number: return x->number == y->number;
    case Expr::Kind::SymbolConst: return x->const_name == y->const_name;
    case Expr::Kind::Tau: return true;
    case Expr::Kind::Gen: {
      if (!(x->gen == y->gen)) return false;
      bool tx = x->transform && !x->transform->is_identity();
      bool ty = y->transform && !y->transform->is_identity();
      if (x->transform.has_value() != y->transform.has_value() && (tx || ty))
        return false;
      if (x->transform && y->transform && !(*x->transform == *y->transform))
        return false;
      return x->transform.has_value() == y->transform.has_value() ||
             (!tx && !ty);
    }
    case Expr::Kind::Neg: return expr_equal(x->a, y->a);
    case Expr::Kind::Pow:
      return x->pow_exp == y->pow_exp && expr_equal(x->a, y->a);
    default:
      return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
  }
}

void collect_generators(
    const ExprPtr& e, std::vector<std::pair<GeneratorId, ArgTransform>>* out) {
  if (!e) return;
  if (e->kind == Expr::Kind::Gen) {
    out->push_back({e->gen, e->transform ? *e->transform : ArgTransform{}});
    return;
  }
  collect_generators(e->a, out);
  collect_generators(e->b, out);
}

}  // namespace eisenfact
