#include <doctest.h>

#include <vector>

#include "pfk3/catalog.hpp"
#include "pfk3/errors.hpp"
#include "pfk3/expr.hpp"

using namespace pfk3;

namespace {

const std::vector<std::string> kHandwritten = {
    "x", "42", "-x", "--x", "x - -y", "x^2", "-x^2", "(-x)^2", "(x^2)^3", "x^12*y^0",
    "x - y - z", "x - (y - z)", "x/y/z", "x/(y/z)", "x*y/z", "x/(y*z)", "(x + y)*(x - y)",
    "x + y*z", "(x + y)*z", "2*x^3 - 3*x*y + 7", "-(x + y)", "((((x))))", "x*-y", "1/2*x",
    "y^2*z - 4*x^3 + g2*x*z^2 + g3*z^3", "(864*t - 1)/13824", "t*(432*t - 1)",
    "2^12*3^6*t^3/((t + 16)^3*(t + 256)^3)", "x^0", "0", "a_1 + b2",
};

void round_trip(const std::string& src) {
  CAPTURE(src);
  ExprPtr e = parse_expr(src);
  std::string printed = print_expr(e);
  CAPTURE(printed);
  ExprPtr again = parse_expr(printed);
  CHECK(expr_equal(e, again));
  CHECK(print_expr(again) == printed);
}

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("round trip on handwritten expressions") {
    for (const auto& s : kHandwritten) round_trip(s);
  }

  TEST_CASE("round trip on every catalog expression") {
    const auto& recs = Catalog::instance().records();
    CHECK(recs.size() + kHandwritten.size() >= 50);
    for (const auto& r : recs) round_trip(r.source);
  }

  TEST_CASE("precedence") {
    VarsPtr v = make_vars({"x", "y"});
    CHECK(parse_ratfunc("-x^2", v) == -parse_ratfunc("x*x", v));
    CHECK(parse_ratfunc("x/y/x", v) == parse_ratfunc("1/y", v));
    CHECK(parse_ratfunc("2^3*2", v) == RatFunc(16));
  }

  TEST_CASE("diagnostics") {
    CHECK_THROWS_AS(parse_expr("x +"), ParseError);
    CHECK_THROWS_AS(parse_expr("x^-1"), ParseError);
    CHECK_THROWS_AS(parse_expr("x/0"), ParseError);
    CHECK_THROWS_AS(parse_expr("(x"), ParseError);
    CHECK_THROWS_AS(parse_expr("x^2^3"), ParseError);
    CHECK_THROWS_AS(parse_expr("x $ y"), ParseError);
    std::set<std::string> declared{"x"};
    CHECK_THROWS_AS(parse_expr("x + y", &declared), ParseError);
    try {
      parse_expr("x +\n  * y");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 3);
    }
  }

  TEST_CASE("operators") {
    VarsPtr v = make_vars({"t"});
    DiffOperator a = parse_operator("t*Dt", v), b = parse_operator("Tt", v);
    CHECK(a == b);
    DiffOperator c = parse_operator("Dt*t", v);
    CHECK(c == parse_operator("t*Dt + 1", v));
  }
}
