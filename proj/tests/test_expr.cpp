#include <doctest.h>

#include <fstream>
#include <sstream>

#include "eisenfact/catalog.hpp"
#include "eisenfact/evaluate.hpp"
#include "eisenfact/numeric.hpp"

using namespace eisenfact;

namespace {

const ExactRing R;

Series<ExactRing> eval_to(const std::string& src, long order, Registry& reg) {
  ExactGenSource gs(reg);
  return eval_series_expr(R, parse_expr(src), order, gs);
}

}  // namespace

TEST_CASE("precedence and rational folding") {
  Registry reg;
  // 1+2*3^2 = 19 under constant folding
  auto s = eval_to("1+2*3^2", 2, reg);
  CHECK(series_coefficient(R, s, Rational(0)) == RingElem(19));
  // '^' binds tighter than unary minus
  auto n = eval_to("-2^2", 2, reg);
  CHECK(series_coefficient(R, n, Rational(0)) == RingElem(-4));
  CHECK(eval_const_expr(parse_expr("(3/2)*4")) == RingElem(6));
  CHECK(eval_const_expr(parse_expr("8/4/2")) == RingElem(1));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_expr("E4^^2"), doctest::Contains("offset 4"),
                       ParseError);
  CHECK_THROWS_AS(parse_expr(""), ParseError);
  CHECK_THROWS_AS(parse_expr("(1+2"), ParseError);
  CHECK_THROWS_AS(parse_expr("E99"), Error);
  CHECK_THROWS_AS(parse_expr("zeta(5)"), Error);
  CHECK_THROWS_AS(parse_expr("sqrt(5)"), Error);
  CHECK_THROWS_AS(parse_expr("E2[t+1/5-]"), Error);
  CHECK_THROWS_AS(parse_expr("E2[q]"), Error);
}

TEST_CASE("transforms parse to the documented forms") {
  ExprPtr e = parse_expr("theta[(1*t-1/2)/2]");
  REQUIRE(e->kind == Expr::Kind::Gen);
  REQUIRE(e->transform.has_value());
  CHECK(e->transform->a == 1);
  CHECK(e->transform->bnum == -1);
  CHECK(e->transform->bden == 2);
  CHECK(e->transform->c == 2);

  ExprPtr fr = parse_expr("F(2,0)[-1/(2*t)]");
  REQUIRE(fr->transform.has_value());
  CHECK(fr->transform->kind == ArgTransform::Kind::Fricke);
  CHECK(fr->transform->fricke_n == 2);

  ExprPtr d = parse_expr("eta[2*t]");
  CHECK(d->transform->a == 2);
  CHECK(d->transform->c == 1);

  ExprPtr h = parse_expr("E2[t/2]");
  CHECK(h->transform->c == 2);
  ExprPtr sh = parse_expr("E2[t+1]");
  CHECK(sh->transform->bnum == 1);
}

TEST_CASE("print/parse round-trip on the shipped catalog") {
  auto entries = load_catalog_file(CATALOG_PATH);
  REQUIRE(entries.size() > 100);
  int checked = 0;
  for (const auto& entry : entries) {
    for (const ExprPtr& e : {entry.expr, entry.lhs, entry.rhs,
                             entry.multiplier, entry.point, entry.alt_point}) {
      if (!e) continue;
      ExprPtr back = parse_expr(print_expr(e));
      CAPTURE(print_expr(e));
      CHECK(expr_equal(e, back));
      ++checked;
    }
  }
  CHECK(checked > 200);
}

TEST_CASE("eval_exact on catalog expressions") {
  Registry reg;
  auto z1 = eval_to("theta^2 - 4*E1m4", 10, reg);
  CHECK(series_is_zero_to(R, z1, Rational(10)).zero);
  auto z2 = eval_to("E34^2/E32 - (E32^3 - 108*eta3^6)", 10, reg);
  CHECK(series_is_zero_to(R, z2, Rational(10)).zero);

  ExactGenSource gs(reg);
  CHECK_THROWS_AS(
      eval_series_expr(R, parse_expr("F(2,0)[-1/(2*t)]"), 4, gs), Error);
  try {
    eval_series_expr(R, parse_expr("F(2,0)[-1/(2*t)]"), 4, gs);
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::FrickeInExactMode);
  }
  CHECK_THROWS_AS(eval_series_expr(R, parse_expr("E4/(eta-eta)"), 4, gs),
                  Error);
  CHECK_THROWS_AS(eval_series_expr(R, parse_expr("E4*t"), 4, gs), Error);
  CHECK_THROWS_AS(eval_series_expr(R, parse_expr("E2[(1*t+1)/5]"), 4, gs),
                  Error);
  CHECK_THROWS_AS(eval_series_expr(R, parse_expr("E4^(1/2)"), 4, gs), Error);
}

TEST_CASE("negative powers invert series") {
  Registry reg;
  auto s = eval_to("E32^-1 * E32", 12, reg);
  auto one = series_sub(R, s, series_scalar(R, R.one()));
  CHECK(series_is_zero_to(R, one, Rational(10)).zero);
}

TEST_CASE("constant point expressions") {
  RingElem p = eval_const_expr(parse_expr("(1+sqrt(-3))/2"));
  auto v = p.embed();
  CHECK(v.real() == doctest::Approx(0.5));
  CHECK(v.imag() == doctest::Approx(std::sqrt(3.0) / 2));
  CHECK(eval_const_expr(parse_expr("-2+i")).embed().real() ==
        doctest::Approx(-2.0));
  CHECK_THROWS_AS(eval_const_expr(parse_expr("E4")), Error);
}

TEST_CASE("catalog parsing errors") {
  CHECK_THROWS_AS(parse_catalog_text("id: a\nkind: exact-zero\n", "t"), Error);
  CHECK_THROWS_AS(
      parse_catalog_text("id: a\nkind: exact-zero\nexpr: E4\n\n"
                         "id: a\nkind: exact-zero\nexpr: E4\n",
                         "t"),
      Error);
  CHECK_THROWS_AS(
      parse_catalog_text(
          "id: z\nkind: numeric-zero\nexpr: E4\npoint: -i\n", "t"),
      Error);
  auto ok = parse_catalog_text(
      "# comment\nid: a\nkind: exact-zero\nlevel: 2\nweight: 3/2\nexpr: E4\n",
      "t");
  REQUIRE(ok.size() == 1);
  CHECK(ok[0].weight == make_rational(3, 2));
  auto empty = parse_catalog_text("# nothing here\n\n", "t");
  CHECK(empty.empty());
}

TEST_CASE("dilation composed with a shift divides the shift correctly") {
  Registry reg;
  ExactGenSource gs(reg);
  // (2t+1)/2 = t + 1/2, and (3t+3)/3 = t + 1: the general affine path must
  // agree with the plain shift forms.
  auto a = eval_series_expr(R, parse_expr("E2[(2*t+1)/2] - E2[t+1/2]"), 12, gs);
  CHECK(series_is_zero_to(R, a, Rational(12)).zero);
  auto b = eval_series_expr(R, parse_expr("E2[(3*t+3)/3] - E2[t+1]"), 12, gs);
  CHECK(series_is_zero_to(R, b, Rational(12)).zero);
  // Cross-pipeline: exact series of E1m4[(2*t+1)/4] embedded at 2i matches
  // direct numeric evaluation of the transformed argument.
  ExprPtr e = parse_expr("E1m4[(2*t+1)/4]");
  Series<ExactRing> s = eval_series_expr(R, e, 32, gs);
  const std::complex<double> tau(0.0, 2.0);
  std::complex<double> qs = std::exp(
      std::complex<double>(0.0, 2.0 * std::acos(-1.0) / s.denom) * tau);
  std::complex<double> direct(0.0, 0.0);
  for (std::size_t i = s.coeffs.size(); i-- > 0;)
    direct = direct * qs + s.coeffs[i].embed();
  direct *= std::pow(qs, static_cast<double>(s.low));
  NumericEvaluator ev(reg);
  auto numeric = ev.eval(e, tau);
  CHECK(std::abs(direct - numeric.v) <= 1e-10);
}
