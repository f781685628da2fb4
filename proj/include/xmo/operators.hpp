#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xmo/cube.hpp"
#include "xmo/field.hpp"
#include "xmo/kernels.hpp"

namespace xmo {

/// A function together with a declared box containing its support.
struct SupportedFunction {
  Field field;
  Cube support;
};

/// Values of an operator at evaluation points with the inputs that produced them.
struct OperatorOutput {
  std::string quantity;  // "T", "commutator1", "commutator2"
  std::vector<Point> xs;
  std::vector<double> values;
  Cube box_f{Point{0.0}, 0.5};
  Cube box_g{Point{0.0}, 0.5};
  int resolution = 0;
  std::string kernel_id, b_id, f_id, g_id;
  /// Commutators only: largest relative gap between the integrand form and
  /// b T(f, g) - T(bf, g), and whether it is below 1e-6.
  double form_difference = 0.0;
  bool consistent = true;
  bool cross_checked = false;
};

/// 48 points per axis for n = 1, 24 for n = 2, 12 beyond.
int default_operator_resolution(int dim);

/// `requested` when nonzero. Otherwise the dimension default, raised for a
/// truncated kernel to 16 points per eta across the larger support box and
/// capped at 256, 48 and 16 points per axis for n = 1, 2 and beyond.
int operator_resolution(const BilinearKernel& k, const Cube& box_f, const Cube& box_g, int requested = 0);

/// Quadrature nodes of a support box with the function value folded into
/// each weight. Coordinates are stored node by node.
struct NodeSet {
  int dim = 1;
  std::vector<double> coords;
  std::vector<double> weights;
  std::size_t size() const { return weights.size(); }
  std::span<const double> node(std::size_t i) const {
    return {coords.data() + i * static_cast<std::size_t>(dim), static_cast<std::size_t>(dim)};
  }
};

NodeSet weighted_nodes(const Field& f, const Cube& box, int resolution);

/// Sum over node pairs of wy * wz * term(y, z): inner sums over z, outer
/// sum over y, both pairwise. Rows with zero weight are skipped.
double double_sum(const NodeSet& y, const NodeSet& z,
                  const std::function<double(std::span<const double>, std::span<const double>)>& term);

/// T(f, g)(x) = int int K(x, y, z) f(y) g(z) dy dz by tensor midpoint
/// quadrature over the support boxes. An unbounded kernel at a point of
/// both closed supports is a PreconditionError.
OperatorOutput apply_T(const BilinearKernel& k, const SupportedFunction& f, const SupportedFunction& g,
                       const std::vector<Point>& xs, int resolution = 0);

/// [b, T]_i(f, g)(x) with [b(x) - b(y)] (i = 1) or [b(x) - b(z)] (i = 2) in
/// the integrand, cross-checked against b T(f, g) - T(bf, g) (or T(f, bg))
/// unless `cross_check` is off.
OperatorOutput commutator(int i, const Field& b, const BilinearKernel& k, const SupportedFunction& f,
                          const SupportedFunction& g, const std::vector<Point>& xs, int resolution = 0,
                          bool cross_check = true);

/// Cubes of side 2^j, j in [jmin, jmax], with lower corner x - a * 2^j on
/// every axis for a in {0, 1/4, 1/2, 3/4}.
std::vector<Cube> dyadic_scan(std::span<const double> x, int jmin = -6, int jmax = 6);

struct MaximalEstimate {
  double value = 0.0;
  Cube argmax{Point{0.0}, 0.5};
  std::size_t cubes = 0;
};

/// Max over `cubes` of avg_Q |f| * avg_Q |g|. Every cube must contain x.
MaximalEstimate bilinear_maximal(const Field& f, const Field& g, std::span<const double> x,
                                 const std::vector<Cube>& cubes, int resolution = 0);

/// Max |grad b| by central differences on a grid of `points` per axis over
/// `region`, keeping only nodes with |xi| >= min_radius.
double gradient_sup(const Field& b, const Cube& region, int points, double min_radius = 0.0);

struct GapEntry {
  double eta = 0.0;
  double sup_gap = 0.0;
  Point argmax;
  double constant = 0.0;  // sup_x gap / (eta |grad b|_inf M(f, g)(x))
  std::vector<double> gaps;
};

struct TruncationGapReport {
  std::vector<GapEntry> entries;
  double gradient_bound = 0.0;
  std::vector<double> maximal;  // M(f, g) at each x
  double slope = 0.0;           // log sup gap against log eta
  double constant_ratio = 0.0;  // max C / min C
};

/// gap(x) = |[b, T]_1(f, g)(x) - [b, T_eta]_1(f, g)(x)| through the
/// difference kernel K phi1(2 s / eta), integrated over the supports clipped
/// to Q(x, eta). Nodes on the diagonal s = 0 contribute nothing.
TruncationGapReport truncation_gap(const Field& b, const BilinearKernel& k, const std::vector<double>& etas,
                                   const SupportedFunction& f, const SupportedFunction& g,
                                   const std::vector<Point>& xs, int resolution = 0);

}  // namespace xmo
