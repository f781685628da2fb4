#include <cmath>

#include "doctest.h"
#include "xmo/catalog.hpp"
#include "xmo/compactness.hpp"

using namespace xmo;

namespace {

const UniformGrid kGrid{{-40.0}, 0.05, {1600}};

SupportedFunction bump_at(double c, double r) { return {catalog::bump({c}, r), Cube({c}, r)}; }

}  // namespace

TEST_CASE("the zero family passes every condition") {
  const std::vector<SampledFunction> fam(3, SampledFunction(kGrid, std::vector<double>(kGrid.size(), 0.0)));
  const CompactnessReport r = fk_check(fam, catalog::constant(1, 1.0), 2.0, {5.0, 10.0}, {{0.1}, {0.05}});
  CHECK(r.bounded_sup == 0.0);
  CHECK(r.passed());
  CHECK(r.members == 3);
}

TEST_CASE("escaping translates fail the tail condition") {
  std::vector<SampledFunction> fam;
  for (double c : {0.0, 10.0, 20.0, 30.0}) fam.push_back(SampledFunction::sample(catalog::bump({c}, 1.0), kGrid));
  const CompactnessReport r = fk_check(fam, catalog::constant(1, 1.0), 2.0, {5.0, 20.0}, {{0.1}});
  CHECK(r.bounded_ok);
  CHECK_FALSE(r.tail_ok);
  CHECK(r.tail_norms.back().value == doctest::Approx(r.bounded_sup).epsilon(1e-9));
}

TEST_CASE("the modulus obeys the triangle inequality for grid shifts") {
  const std::vector<SampledFunction> fam{SampledFunction::sample(catalog::bump({0.3}, 2.0), kGrid)};
  const CompactnessReport r = fk_check(fam, catalog::constant(1, 1.0), 2.0, {5.0}, {{0.2}, {0.1}});
  CHECK(r.modulus[0].value <= 2.0 * r.modulus[1].value * (1.0 + 1e-12));
  CHECK(r.modulus[1].value > 0.0);
}

TEST_CASE("fk_check validates its lists") {
  const std::vector<SampledFunction> fam{SampledFunction(kGrid, std::vector<double>(kGrid.size(), 1.0))};
  const Field one = catalog::constant(1, 1.0);
  CHECK_THROWS_AS(fk_check(fam, one, 2.0, {10.0, 5.0}, {{0.1}}), PreconditionError);
  CHECK_THROWS_AS(fk_check(fam, one, 2.0, {5.0}, {{0.1}, {0.2}}), PreconditionError);
  CHECK_THROWS_AS(fk_check({}, one, 2.0, {5.0}, {{0.1}}), PreconditionError);
}

TEST_CASE("commutator family inputs") {
  const VectorWeight vw(catalog::constant(1, 1.0), catalog::constant(1, 1.0), 4.0, 4.0);
  const BilinearKernel k = truncate(singular_kernel(1), 0.25);
  const UniformGrid grid{{-4.0}, 0.5, {16}};
  const SupportedFunction f = normalized(bump_at(0.0, 1.0), vw.w1(), 4.0);
  const SupportedFunction g = normalized(bump_at(1.0, 1.0), vw.w2(), 4.0);
  const CommutatorFamily fam = commutator_family(catalog::smoothed_log(1), k, {{f, g}}, vw, grid, 16);
  CHECK(fam.norms_f[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(fam.sampled().front().values().size() == grid.size());
  const SupportedFunction big{affine(f.field, 3.0, 0.0), f.support};
  CHECK_THROWS_AS(commutator_family(catalog::smoothed_log(1), k, {{big, g}}, vw, grid, 16), PreconditionError);
  CHECK_THROWS_AS(commutator_family(catalog::smoothed_log(1), singular_kernel(1), {{f, g}}, vw, grid, 16),
                  PreconditionError);
}

TEST_CASE("tail pieces dominate the commutator far out") {
  const BilinearKernel k = truncate(singular_kernel(1), 0.25);
  const TailProfiles t = tail_decomposition(catalog::smoothed_log(1), k, bump_at(0.0, 1.0), bump_at(0.5, 1.0), 8.0,
                                            {{9.0}, {-12.0}, {30.0}}, 16);
  for (std::size_t i = 0; i < t.xs.size(); ++i)
    CHECK(t.l1[i] + t.l2[i] + t.l3[i] >= std::abs(t.commutator[i]));
  CHECK(t.g3 == doctest::Approx(0.5).epsilon(1e-4));
  CHECK(t.g12 <= t.g3);
  CHECK_THROWS_AS(tail_decomposition(catalog::smoothed_log(1), k, bump_at(0.0, 1.0), bump_at(0.5, 1.0), 4.0,
                                     {{9.0}}, 16),
                  PreconditionError);
  CHECK_THROWS_AS(tail_decomposition(catalog::smoothed_log(1), k, bump_at(0.0, 1.0), bump_at(0.5, 1.0), 8.0,
                                     {{7.0}}, 16),
                  PreconditionError);
}

TEST_CASE("translation pieces") {
  const BilinearKernel k = truncate(singular_kernel(1), 0.25);
  const std::vector<Point> xs{{-1.0}, {0.2}, {1.7}};
  const TranslationProfiles z =
      translation_continuity(catalog::smoothed_log(1), k, bump_at(0.0, 1.0), bump_at(0.5, 1.0), {{0.0}}, xs, 16);
  CHECK(z.entries[0].sup_l4 == 0.0);
  CHECK(z.entries[0].sup_l5 == 0.0);
  CHECK_THROWS_AS(translation_continuity(catalog::smoothed_log(1), k, bump_at(0.0, 1.0), bump_at(0.5, 1.0),
                                         {{0.25 / 8.0}}, xs, 16),
                  PreconditionError);
}

TEST_CASE("the truncated kernel vanishes on the plateau") {
  CHECK(plateau_vanishing(truncate(singular_kernel(1), 0.25), 5000, 11) == 0.0);
  CHECK(plateau_vanishing(truncate(reference_kernel(2), 0.5), 5000, 12) == 0.0);
  CHECK_THROWS_AS(plateau_vanishing(singular_kernel(1), 10, 1), PreconditionError);
}
