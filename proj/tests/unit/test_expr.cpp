#include <cmath>
#include <numbers>

#include "doctest.h"
#include "xmo/expr.hpp"
#include "xmo/field.hpp"

using namespace xmo;

namespace {
double eval(const std::string& text, std::vector<double> x) { return parse_function(text).evaluate(x); }
}  // namespace

TEST_CASE("expressions follow the usual precedence") {
  CHECK(eval("1 + 2 * 3", {0.0}) == 7.0);
  CHECK(eval("(1 + 2) * 3", {0.0}) == 9.0);
  CHECK(eval("-x1 * 2", {3.0}) == -6.0);
  CHECK(eval("8 / 4 / 2", {0.0}) == 1.0);
  CHECK(eval("2*pi", {0.0}) == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(eval("log(e)", {0.0}) == doctest::Approx(1.0));
  CHECK(eval("pow(x1, 2) + max(x2, 1)", {3.0, 0.5}) == 10.0);
  CHECK(eval("sin(x1)*sin(x2)", {1.0, 2.0}) == doctest::Approx(std::sin(1.0) * std::sin(2.0)));
}

TEST_CASE("dimension is the largest variable index") {
  CHECK(parse_function("x1 + x3").dim() == 3);
  CHECK(parse_function("1", 2).dim() == 2);
}

TEST_CASE("piecewise evaluates only the selected branch") {
  const FunctionSpec s = parse_function("piecewise(x1, 1, 5, log(x1))");
  CHECK(s.evaluate(std::vector<double>{0.0}) == 5.0);
  CHECK(s.evaluate(std::vector<double>{std::numbers::e}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(s.evaluate(std::vector<double>{-2.0}), DomainError);
}

TEST_CASE("parse errors carry a position") {
  try {
    parse_function("1 + * 2");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
  }
  CHECK_THROWS_AS(parse_function("foo(x1)"), ParseError);
  CHECK_THROWS_AS(parse_function("pow(x1)"), ParseError);
  CHECK_THROWS_AS(parse_function("x1 +"), ParseError);
  CHECK_THROWS_AS(parse_function("x0"), ParseError);
}

TEST_CASE("domain errors instead of non-finite values") {
  CHECK_THROWS_AS(eval("1/x1", {0.0}), DomainError);
  CHECK_THROWS_AS(eval("sqrt(x1)", {-1.0}), DomainError);
  CHECK_THROWS_AS(eval("log(x1)", {0.0}), DomainError);
  CHECK_THROWS_AS(eval("exp(x1)", {1000.0}), DomainError);
}

TEST_CASE("numeric literals accept pi and e") {
  CHECK(parse_number("2pi") == doctest::Approx(2.0 * std::numbers::pi));
  CHECK(parse_number("-pi/2") == doctest::Approx(-std::numbers::pi / 2.0));
  CHECK(parse_number("1e-3") == 1e-3);
  CHECK(parse_number("exp(1)") == doctest::Approx(std::numbers::e));
  CHECK_THROWS_AS(parse_number("x1"), PreconditionError);
  CHECK_THROWS_AS(parse_number(""), PreconditionError);
}

TEST_CASE("printing and reparsing gives the same tree") {
  for (const char* text : {"sin(x1) * (x2 - 3.25) / 7", "piecewise(x1 - 1, 0.5, 1, 0)", "-pow(x1, 0.1)"}) {
    const FunctionSpec a = parse_function(text);
    const FunctionSpec b = parse_function(a.to_string());
    CHECK(a == b);
  }
}

TEST_CASE("breakpoints come from affine piecewise and sign arguments") {
  const Field f = field_from_spec(parse_function("piecewise(x1 - 1, 0.5, 1, 0)"));
  CHECK(f.breakpoints(0) == std::vector<double>{0.5, 1.5});
  const Field g = field_from_spec(parse_function("sign(2*x2 + 1)"));
  CHECK(g.breakpoints(0).empty());
  CHECK(g.breakpoints(1) == std::vector<double>{-0.5});
}
