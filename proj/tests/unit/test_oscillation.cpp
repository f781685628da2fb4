#include <cmath>
#include <numbers>

#include "doctest.h"
#include "xmo/catalog.hpp"
#include "xmo/oscillation.hpp"

using namespace xmo;

TEST_CASE("mean oscillation oracles") {
  CHECK(mean_oscillation(catalog::constant(1, 4.0), Cube({0.0}, 3.0), 64) == 0.0);
  // avg |x - 1/2| on [0, 1] is 1/4; the kink sits on a cell boundary.
  CHECK(mean_oscillation(catalog::coordinate(1, 0), Cube::from_corner({0.0}, 1.0), 64) ==
        doctest::Approx(0.25).epsilon(1e-12));
  // Indicator of half the cube: |chi - 1/2| = 1/2 everywhere.
  const Field half = catalog::indicator(Cube::from_corner({0.0}, 1.0));
  CHECK(mean_oscillation(half, Cube::from_corner({-1.0}, 2.0), 16) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("mean oscillation is invariant under adding constants and odd under negation") {
  const Field s = catalog::sin_product(1);
  const Cube q({0.7}, 1.3);
  const double base = mean_oscillation(s, q, 64);
  CHECK(mean_oscillation(affine(s, 1.0, 5.0), q, 64) == doctest::Approx(base).epsilon(1e-12));
  CHECK(mean_oscillation(affine(s, -2.0, 0.0), q, 64) == doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("sine translation profile is flat at 2/pi") {
  const Field s = catalog::sin_product(1);
  const OscillationProfile p = translation_profile(s, Cube({0.0}, std::numbers::pi / 2), axis_directions(1),
                                                   {2 * std::numbers::pi, 4 * std::numbers::pi}, 64);
  for (const auto& e : p.entries) CHECK(e.value == doctest::Approx(2.0 / std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("parallel_sup breaks ties toward the lowest index") {
  const SupEstimate s = parallel_sup(10, [](std::size_t i) { return i % 3 == 1 ? 1.0 : 0.0; });
  CHECK(s.value == 1.0);
  CHECK(s.argmax == 1);
  CHECK(s.cube_count == 10);
}

TEST_CASE("profiles validate their parameter order") {
  const Field s = catalog::sin_product(1);
  const auto centers = lattice_centers(1, 1.0, 0.5);
  CHECK(centers.size() == 5);
  CHECK_THROWS_AS(small_scale_profile(s, {0.25, 1.0}, centers, 16), PreconditionError);
  CHECK_THROWS_AS(large_scale_profile(s, {10.0, 1.0}, centers, 16), PreconditionError);
  CHECK_THROWS_AS(annulus_profile(s, {10.0}, [](double) { return std::vector<Cube>{Cube({9.0}, 2.0)}; }, 16),
                  PreconditionError);
}

TEST_CASE("annulus probes stay outside Q(0, R)") {
  for (double r : {10.0, 100.0}) {
    const Cube inner = Cube::centered(2, r);
    for (const Cube& q : default_annulus_probes(2, r)) CHECK_FALSE(q.intersects_closed(inner));
  }
}

TEST_CASE("classification separates the three model functions") {
  const Diagnosis sinus = classify(catalog::sin_product(1), ScanConfig::defaults(1));
  CHECK(sinus.vmo_smallscale_ok);
  CHECK_FALSE(sinus.xmo_translation_ok);
  const Diagnosis slog = classify(catalog::smoothed_log(1), ScanConfig::defaults(1));
  CHECK(slog.vmo_smallscale_ok);
  CHECK(slog.xmo_translation_ok);
  CHECK_FALSE(slog.cmo_largescale_ok);
  const Diagnosis bump = classify(catalog::bump({0.0}, 1.0), ScanConfig::defaults(1));
  CHECK(bump.vmo_smallscale_ok);
  CHECK(bump.xmo_translation_ok);
  CHECK(bump.cmo_largescale_ok);
}

TEST_CASE("classification in two dimensions runs on the smaller lattice") {
  const Diagnosis d = classify(catalog::bump({0.0, 0.0}, 1.0), ScanConfig::defaults(2));
  CHECK(d.vmo_smallscale_ok);
  CHECK(d.cmo_largescale_ok);
}
