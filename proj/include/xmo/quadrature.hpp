#pragma once

#include <functional>
#include <span>
#include <vector>

#include "xmo/cube.hpp"
#include "xmo/field.hpp"

namespace xmo {

/// Gauss-Legendre nodes and weights on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussRule gauss_legendre(int points);

/// Composite midpoint rule on one axis.
///
/// Without interior breakpoints the nodes are the `resolution` cell midpoints
/// of [lo, hi]. Interior breakpoints split the interval first; each piece
/// receives a share of the nodes proportional to its length (at least one).
struct AxisRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  bool uniform = true;
};

/// `breakpoints` must be sorted.
AxisRule axis_rule(double lo, double hi, int resolution, std::span<const double> breakpoints = {});

/// 64 points per axis in one dimension, 32 in two, 16 beyond.
int default_resolution(int dim);

/// Tensor rule on a cube, honouring the field's breakpoints.
std::vector<AxisRule> cube_rules(const Field& f, const Cube& q, int resolution);

/// Visits every tensor node in a fixed order (last axis fastest).
void for_each_node(const std::vector<AxisRule>& rules,
                   const std::function<void(std::span<const double> x, double weight)>& visit);

/// Field values on the tensor rule of a cube. `weights` is empty when the
/// rule is uniform, in which case every node carries weight |Q| / N.
struct CubeSamples {
  std::vector<double> values;
  std::vector<double> weights;
  double volume = 0.0;
};

CubeSamples sample_cube(const Field& f, const Cube& q, int resolution);

/// Weighted mean of g(values) with the sample weights; pairwise summation.
double sample_mean(const CubeSamples& s);
double sample_mean(const CubeSamples& s, const std::function<double(double)>& g);

/// Midpoint estimate of the average of f over q.
double cube_average(const Field& f, const Cube& q, int resolution);
/// Midpoint estimate of the integral of f over q.
double integrate(const Field& f, const Cube& q, int resolution);

}  // namespace xmo
