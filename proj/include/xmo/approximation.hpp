#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xmo/cube.hpp"
#include "xmo/field.hpp"
#include "xmo/oscillation.hpp"

namespace xmo {

/// Controls the certification scans behind threshold selection.
struct ThresholdScanConfig {
  double extent = 1e4;  // scanned centres cover [-extent, extent]^n
  /// Small-cube scan: sides factor * 2^{j0+1} for each factor.
  std::vector<double> small_side_factors{0.25, 0.5, 0.75, 1.0 - 1.0 / 1024};
  int resolution = 0;   // 0: default_resolution(dim)
  int min_j0 = -30;
};

/// One certified oscillation bound: every scanned cube had value < bound.
struct Certificate {
  std::string stage;     // "j0" or "k=<k>"
  int threshold = 0;     // j0, or jk[k]
  double bound = 0.0;
  double observed = 0.0;  // largest value over the certified cubes
  std::size_t cubes = 0;
  Cube worst{Point{0.0}, 0.5};
};

/// Thresholds j0 and jk[1..kmax] with their certification scans.
struct ThresholdSchedule {
  double epsilon = 0.0;
  int dim = 1;
  int j0 = -1;
  std::vector<int> jk;  // jk[0] holds j(eps; 1)
  std::vector<Certificate> certificates;
  ThresholdScanConfig scan;

  /// Throws PreconditionError unless j0 <= -1 and jk is strictly increasing above j0.
  void validate() const;
  /// Half side of the covered box Q(0, 2^{jk.back()}).
  double coverage() const;
};

/// A required oscillation bound failed at every admissible threshold.
class ConditionNotMet : public PreconditionError {
 public:
  ConditionNotMet(const std::string& stage, const Cube& witness, double value, double bound);
  const Cube& witness() const { return witness_; }
  double value() const { return value_; }
  double bound() const { return bound_; }

 private:
  Cube witness_;
  double value_;
  double bound_;
};

/// Greedy thresholds: the largest j0 and then the smallest jk[k] > jk[k-1]
/// certified on the scanned region.
ThresholdSchedule select_thresholds(const Field& f, double epsilon, const ThresholdScanConfig& config, int kmax);

/// One generation of the dyadic family: cubes of side `side` tiling
/// [-outer, outer)^n minus [-inner, inner)^n.
struct Generation {
  int k = 1;
  double side = 0.0;
  double inner = 0.0;
  double outer = 0.0;
  std::size_t per_axis = 0;
  /// Cube averages by flat index over the full [-outer, outer)^n grid;
  /// cells inside the hole hold NaN.
  std::vector<double> values;

  bool in_hole(std::span<const std::size_t> index) const;
};

struct CubeRef {
  std::size_t generation = 0;
  std::size_t flat = 0;
};

/// The dyadic family and the simple function g built on it.
class DyadicApproximation {
 public:
  /// Skeleton with unfilled values (build_family).
  DyadicApproximation(ThresholdSchedule schedule, int dim);

  const ThresholdSchedule& schedule() const { return schedule_; }
  int dim() const { return dim_; }
  const std::vector<Generation>& generations() const { return generations_; }
  bool filled() const { return filled_; }
  double coverage() const { return generations_.back().outer; }
  double finest_side() const { return generations_.front().side; }

  std::size_t cube_count() const;
  Cube cube(const CubeRef& ref) const;
  /// Every family cube, generation by generation.
  std::vector<CubeRef> members() const;
  /// The unique family cube containing x, if x is covered.
  std::optional<CubeRef> locate(std::span<const double> x) const;
  double value(const CubeRef& ref) const;
  /// g(x). Throws PreconditionError outside the covered box.
  double g(std::span<const double> x) const;
  /// g as a Field with breakpoints on the finest lattice inside `window`.
  Field g_field(double window) const;

  void set_value(const CubeRef& ref, double v);
  void mark_filled() { filled_ = true; }

  /// Restores a serialised approximation; generations must match the schedule.
  static DyadicApproximation restore(ThresholdSchedule schedule, int dim, std::vector<Generation> generations,
                                     bool filled);

 private:
  ThresholdSchedule schedule_;
  int dim_;
  std::vector<Generation> generations_;
  bool filled_ = false;
};

/// The family for a schedule; throws if an annulus is not aligned to its
/// generation's dyadic grid.
DyadicApproximation build_family(const ThresholdSchedule& schedule, int dim);

/// Fills g with the cube averages of f.
DyadicApproximation project_simple(const Field& f, DyadicApproximation skeleton, int resolution);

struct JumpReport {
  double value = 0.0;
  Cube first{Point{0.0}, 0.5};
  Cube second{Point{0.0}, 0.5};
  std::size_t pairs = 0;
};

/// Largest |g_Q - g_Q'| over family cubes with touching closures.
JumpReport adjacency_jump(const DyadicApproximation& approx);

/// The mollifier phi(u) = c_n exp(-1 / (1 - |u|^2)) on the unit ball.
class Mollifier {
 public:
  explicit Mollifier(int dim);
  int dim() const { return dim_; }
  double normalization() const { return c_; }
  double operator()(std::span<const double> u) const;
  /// phi_delta(x) = delta^{-n} phi(x / delta).
  double scaled(std::span<const double> x, double delta) const;

 private:
  int dim_;
  double c_;
};

/// h = g * phi_delta with delta = 2^{j0}.
class MollifiedApproximation {
 public:
  explicit MollifiedApproximation(const DyadicApproximation& approx);

  double delta() const { return delta_; }
  const DyadicApproximation& approximation() const { return *approx_; }
  /// h(x); g outside the covered box is extended by its nearest covered value
  /// and *extended is set.
  double operator()(std::span<const double> x, bool* extended = nullptr) const;
  Field field() const;

 private:
  const DyadicApproximation* approx_;
  Mollifier phi_;
  double delta_;
};

MollifiedApproximation mollify(const DyadicApproximation& approx);

/// Largest |g - h| over the given points.
double mollification_gap(const MollifiedApproximation& h, const std::vector<Point>& points);

/// Points along every coordinate axis and the main diagonal at step
/// 2^{j0}/8 inside Q(0, min(window, coverage)).
std::vector<Point> gap_points(const DyadicApproximation& approx, double window);

/// Multi-index with |alpha| in {1, 2}.
struct MultiIndex {
  std::vector<int> order;
  int total() const;
};

struct DecayEntry {
  double radius = 0.0;
  double value = 0.0;
  Point argmax;
  std::size_t samples = 0;
};

/// Max |D^alpha h| by central differences with step 2^{j0}/8 over the shell
/// r <= |x| <= r + w, w the side of the family cube at radius r, sampled at
/// the difference step along each coordinate direction (and diagonals for
/// n >= 2). The shell width guarantees that at least one cube face is seen.
std::vector<DecayEntry> derivative_decay(const MollifiedApproximation& h, const MultiIndex& alpha,
                                         const std::vector<double>& radii);

/// Test cubes in three side-length regimes: below the finest family side
/// (2^{j0} * {1/4, 1/2, 3/4}), comparable to it, and comparable to each
/// coarser generation (2^{j0+k-1} * {1, 3/2}). Centres are spaced by half a
/// side and every cube lies in the covered box (or in Q(0, max_extent) when
/// that is positive and smaller).
std::vector<Cube> regime_family(const DyadicApproximation& approx, double max_extent = 0.0);

/// BMO lower bound of f - g (or f - h when `mollified`) over `cubes`.
SupEstimate approximation_error(const Field& f, const DyadicApproximation& approx, bool mollified,
                                const std::vector<Cube>& cubes, int resolution);

}  // namespace xmo
