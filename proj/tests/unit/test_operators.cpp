#include <cmath>

#include "doctest.h"
#include "xmo/catalog.hpp"
#include "xmo/operators.hpp"

using namespace xmo;

namespace {

SupportedFunction chi(double lo, double side) {
  const Cube q = Cube::from_corner({lo}, side);
  return {catalog::indicator(q), q};
}

// Midpoint sum of K(x, y, z) over [1, 2]^2 on an m x m grid.
double brute_T(const BilinearKernel& k, double x, int m) {
  const double h = 1.0 / m;
  double sum = 0.0;
  std::vector<double> xv{x}, yv{0.0}, zv{0.0};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      yv[0] = 1.0 + (i + 0.5) * h;
      zv[0] = 1.0 + (j + 0.5) * h;
      sum += k(xv, yv, zv) * h * h;
    }
  return sum;
}

}  // namespace

TEST_CASE("T agrees with an independent fine sum away from the supports") {
  const BilinearKernel k = singular_kernel(1);
  const std::vector<Point> xs{{0.0}, {-1.5}, {3.5}};
  const OperatorOutput o = apply_T(k, chi(1.0, 1.0), chi(1.0, 1.0), xs);
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(o.values[i] == doctest::Approx(brute_T(k, xs[i][0], 4 * 48)).epsilon(1e-3));
  CHECK(o.quantity == "T");
}

TEST_CASE("T vanishes on zero input and is bilinear") {
  const BilinearKernel k = reference_kernel(1);
  const SupportedFunction zero{catalog::constant(1, 0.0), Cube({0.0}, 1.0)};
  const SupportedFunction f{catalog::bump({0.0}, 1.0), Cube({0.0}, 1.0)};
  const SupportedFunction g{catalog::bump({0.5}, 1.0), Cube({0.5}, 1.0)};
  const std::vector<Point> xs{{-1.0}, {0.0}, {0.7}, {4.0}};
  for (double v : apply_T(k, zero, g, xs).values) CHECK(v == 0.0);
  const SupportedFunction f3{affine(f.field, 3.0, 0.0), f.support};
  const auto base = apply_T(k, f, g, xs).values;
  const auto scaled = apply_T(k, f3, g, xs).values;
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(scaled[i] == doctest::Approx(3.0 * base[i]).epsilon(1e-12));
  // Symmetric kernel: swapping the inputs changes nothing.
  const auto swapped = apply_T(k, g, f, xs).values;
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(swapped[i] == doctest::Approx(base[i]).epsilon(1e-12));
}

TEST_CASE("untruncated singular kernels refuse points inside both supports") {
  CHECK_THROWS_AS(apply_T(singular_kernel(1), chi(0.0, 1.0), chi(0.0, 1.0), {{0.5}}), PreconditionError);
  CHECK_NOTHROW(apply_T(truncate(singular_kernel(1), 0.25), chi(0.0, 1.0), chi(0.0, 1.0), {{0.5}}));
  CHECK_THROWS_AS(apply_T(singular_kernel(1), chi(0.0, 1.0), chi(0.0, 1.0), {{0.5, 0.5}}), PreconditionError);
}

TEST_CASE("commutator forms agree and constant symbols commute") {
  const BilinearKernel k = truncate(singular_kernel(1), 0.25);
  const SupportedFunction f{catalog::bump({0.0}, 1.0), Cube({0.0}, 1.0)};
  const SupportedFunction g{catalog::bump({0.5}, 1.0), Cube({0.5}, 1.0)};
  const std::vector<Point> xs{{-2.0}, {0.0}, {0.3}, {2.0}};
  const OperatorOutput c = commutator(1, catalog::smoothed_log(1), k, f, g, xs);
  CHECK(c.cross_checked);
  CHECK(c.consistent);
  CHECK(c.form_difference <= 1e-6);
  for (double v : commutator(1, catalog::constant(1, 4.0), k, f, g, xs).values) CHECK(v == 0.0);
  CHECK_THROWS_AS(commutator(3, catalog::smoothed_log(1), k, f, g, xs), PreconditionError);
}

TEST_CASE("the second commutator is the first with the inputs swapped") {
  const BilinearKernel k = truncate(singular_kernel(1), 0.25);
  const SupportedFunction f{catalog::bump({0.0}, 1.0), Cube({0.0}, 1.0)};
  const SupportedFunction g = chi(0.5, 1.0);
  const std::vector<Point> xs{{-1.0}, {0.6}, {2.5}};
  const Field b = catalog::smoothed_log(1);
  const auto c2 = commutator(2, b, k, f, g, xs).values;
  const auto c1 = commutator(1, b, k, g, f, xs).values;
  for (std::size_t i = 0; i < xs.size(); ++i) CHECK(c2[i] == doctest::Approx(c1[i]).epsilon(1e-12));
}

TEST_CASE("commutator with a linear symbol matches a direct sum") {
  // [x, T]_1(f, g)(0) = int int (0 - y) K(0, y, z) dy dz over [1, 2]^2.
  const BilinearKernel k = singular_kernel(1);
  const OperatorOutput c = commutator(1, catalog::coordinate(1, 0), k, chi(1.0, 1.0), chi(1.0, 1.0), {{0.0}});
  const int m = 192;
  const double h = 1.0 / m;
  double sum = 0.0;
  std::vector<double> x{0.0}, y{0.0}, z{0.0};
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      y[0] = 1.0 + (i + 0.5) * h;
      z[0] = 1.0 + (j + 0.5) * h;
      sum += -y[0] * k(x, y, z) * h * h;
    }
  CHECK(c.values[0] == doctest::Approx(sum).epsilon(1e-3));
}

TEST_CASE("bilinear maximal function examples") {
  const Field f = catalog::indicator(Cube::from_corner({0.0}, 1.0));
  // At x = 0 the cube [0, 1] gives 1.
  CHECK(bilinear_maximal(f, f, std::vector<double>{0.0}, dyadic_scan(std::vector<double>{0.0})).value ==
        doctest::Approx(1.0));
  // At x = 3 the best scanned cube is [0, 4]: (1/4)^2.
  const MaximalEstimate m = bilinear_maximal(f, f, std::vector<double>{3.0}, dyadic_scan(std::vector<double>{3.0}));
  CHECK(m.value == doctest::Approx(0.0625));
  CHECK(m.argmax.side() == doctest::Approx(4.0));
  CHECK(m.cubes == 13 * 4);
  CHECK_THROWS_AS(bilinear_maximal(f, f, std::vector<double>{3.0}, {Cube({0.0}, 1.0)}), PreconditionError);
}

TEST_CASE("gradient sup of the smoothed logarithm") {
  // b = log(1 + x^2) / 2 has b' = x / (1 + x^2), largest at |x| = 1.
  const double g = gradient_sup(catalog::smoothed_log(1), Cube({0.0}, 10.0), 4001);
  CHECK(g == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(gradient_sup(catalog::smoothed_log(1), Cube({0.0}, 10.0), 4001, 4.0) ==
        doctest::Approx(4.0 / 17.0).epsilon(1e-3));
}

TEST_CASE("truncation gap vanishes for constant symbols") {
  const TruncationGapReport r = truncation_gap(catalog::constant(1, 2.0), singular_kernel(1), {0.5, 0.25},
                                               chi(1.0, 1.0), chi(1.0, 1.0), {{0.5}, {1.5}}, 16);
  for (const GapEntry& e : r.entries) CHECK(e.sup_gap == 0.0);
  CHECK_THROWS_AS(truncation_gap(catalog::constant(1, 2.0), singular_kernel(1), {2.0}, chi(1.0, 1.0), chi(1.0, 1.0),
                                 {{0.5}}, 16),
                  PreconditionError);
}

TEST_CASE("default resolution resolves the truncation scale") {
  const Cube box({0.0}, 1.0);
  CHECK(operator_resolution(reference_kernel(1), box, box) == 48);
  CHECK(operator_resolution(truncate(singular_kernel(1), 0.25), box, box) == 128);
  CHECK(operator_resolution(truncate(singular_kernel(1), 0.01), box, box) == 256);
  CHECK(operator_resolution(truncate(singular_kernel(1), 0.25), box, box, 20) == 20);
  CHECK_THROWS_AS(operator_resolution(reference_kernel(1), box, box, -1), PreconditionError);
}
