#include <cmath>
#include <numbers>

#include "doctest.h"
#include "xmo/catalog.hpp"
#include "xmo/cube.hpp"
#include "xmo/quadrature.hpp"
#include "xmo/sampled.hpp"

using namespace xmo;

TEST_CASE("pairwise sum and regression slope") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  CHECK(regression_slope(x, y) == doctest::Approx(2.0));
  CHECK(norm2(std::vector<double>{3.0, 4.0}) == 5.0);
  CHECK_THROWS_AS(regression_slope(std::vector<double>{1.0}, std::vector<double>{2.0}), PreconditionError);
}

TEST_CASE("parallel_for gives the same result for any thread count") {
  std::vector<double> a(257), b(257);
  auto body = [](std::vector<double>& out) {
    return [&out](std::size_t i) { out[i] = std::sin(static_cast<double>(i)) * 3.0; };
  };
  set_thread_count(1);
  parallel_for(a.size(), body(a));
  set_thread_count(4);
  parallel_for(b.size(), body(b));
  set_thread_count(1);
  CHECK(a == b);
}

TEST_CASE("cube membership is half open and closures are closed") {
  const Cube q = Cube::from_corner({0.0, 0.0}, 1.0);
  CHECK(q.volume() == 1.0);
  CHECK(q.contains(std::vector<double>{0.0, 0.5}));
  CHECK_FALSE(q.contains(std::vector<double>{1.0, 0.5}));
  CHECK(q.contains_closed(std::vector<double>{1.0, 0.5}));
  CHECK(q.intersects_closed(Cube::from_corner({1.0, 1.0}, 2.0)));
  CHECK_FALSE(q.intersects_closed(Cube::from_corner({1.5, 0.0}, 1.0)));
  CHECK(Cube::centered(2, 2.0).encloses(q));
  CHECK_THROWS_AS(Cube({0.0}, 0.0), PreconditionError);
}

TEST_CASE("Gauss-Legendre integrates polynomials of degree 2m-1 exactly") {
  const GaussRule r = gauss_legendre(5);
  double sum = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) sum += r.weights[i] * std::pow(r.nodes[i], 8);
  CHECK(sum == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("axis rules split at breakpoints") {
  const std::vector<double> bp{0.25};
  const AxisRule r = axis_rule(0.0, 1.0, 8, bp);
  CHECK_FALSE(r.uniform);
  double w = 0.0;
  for (double x : r.weights) w += x;
  CHECK(w == doctest::Approx(1.0));
  for (double x : r.nodes) CHECK((x < 0.25 || x > 0.25));
}

TEST_CASE("quadrature oracles") {
  const Field one = catalog::constant(1, 1.0);
  CHECK(cube_average(one, Cube({3.0}, 2.0), 64) == 1.0);
  const Field x2(1, [](std::span<const double> x) { return x[0] * x[0]; }, "x^2");
  const Cube unit = Cube::from_corner({0.0}, 1.0);
  CHECK(integrate(x2, unit, 512) == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
  // Midpoint error is O(h^2): successive errors shrink by about four.
  const double e1 = std::abs(integrate(x2, unit, 16) - 1.0 / 3.0);
  const double e2 = std::abs(integrate(x2, unit, 32) - 1.0 / 3.0);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(1e-6));
  // Sharp indicators integrate exactly with breakpoints.
  const Field chi = catalog::indicator(Cube::from_corner({0.3}, 0.4));
  CHECK(integrate(chi, unit, 10) == doctest::Approx(0.4).epsilon(1e-14));
}

TEST_CASE("field algebra and translation") {
  const Field a = catalog::coordinate(1, 0);
  const Field b = catalog::sign(1);
  const Field d = a * b;
  CHECK(d(std::vector<double>{-2.0}) == 2.0);
  CHECK(d.breakpoints(0) == std::vector<double>{0.0});
  const Field t = translated(a, std::vector<double>{1.5});
  CHECK(t(std::vector<double>{2.0}) == 0.5);
  CHECK(affine(a, 2.0, 1.0)(std::vector<double>{3.0}) == 7.0);
}

TEST_CASE("catalog values") {
  const Field s = catalog::smoothed_log(2);
  CHECK(s(std::vector<double>{3.0, 4.0}) == doctest::Approx(0.5 * std::log(26.0)));
  const Field l = catalog::log_abs(1);
  CHECK(l(std::vector<double>{-std::numbers::e}) == doctest::Approx(1.0));
  CHECK_THROWS_AS(l(std::vector<double>{0.0}), DomainError);
  const Field w = catalog::power_weight(1, 0.5);
  CHECK(w(std::vector<double>{0.0}) == doctest::Approx(std::pow(0.01, 0.25)));
  const Field bump = catalog::bump({0.0}, 1.0);
  CHECK(bump(std::vector<double>{1.0}) == 0.0);
  CHECK(bump(std::vector<double>{0.0}) > 0.0);
  Field out = catalog::constant(1, 0.0);
  CHECK(catalog::lookup("sin_product", 2, &out));
  CHECK(out(std::vector<double>{1.0, 2.0}) == doctest::Approx(std::sin(1.0) * std::sin(2.0)));
  CHECK_FALSE(catalog::lookup("nope", 1, &out));
}

TEST_CASE("sampled functions interpolate linear data exactly") {
  const UniformGrid g{{0.0, 0.0}, 0.5, {8, 8}};
  const Field lin(2, [](std::span<const double> x) { return 2.0 * x[0] - x[1]; }, "lin");
  const SampledFunction s = SampledFunction::sample(lin, g);
  bool ext = true;
  CHECK(s.at(std::vector<double>{1.1, 2.3}, &ext) == doctest::Approx(2.2 - 2.3));
  CHECK_FALSE(ext);
  s.at(std::vector<double>{5.0, 1.0}, &ext);
  CHECK(ext);
  CHECK_THROWS_AS(SampledFunction(g, std::vector<double>(3, 0.0)), PreconditionError);
}
