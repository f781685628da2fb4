#pragma once

#include <span>
#include <vector>

#include "xmo/common.hpp"
#include "xmo/field.hpp"

namespace xmo {

/// Cell-centred uniform grid: cell i on an axis covers
/// [origin + i*h, origin + (i+1)*h) and its sample sits at the midpoint.
/// The support box is [origin, origin + extent*h] on every axis.
struct UniformGrid {
  Point origin;
  double spacing = 0.0;
  std::vector<std::size_t> extents;

  int dim() const { return static_cast<int>(origin.size()); }
  std::size_t size() const;
  double lo(int axis) const { return origin[axis]; }
  double hi(int axis) const { return origin[axis] + static_cast<double>(extents[axis]) * spacing; }
  /// Centre of the cell with the given flat index (last axis fastest).
  Point node(std::size_t flat) const;
  double cell_volume() const;
};

/// Grid-sampled function with multilinear interpolation between samples.
///
/// Outside the span of the sample centres the value of the nearest boundary
/// sample is used (constant extension); callers can ask whether that happened.
class SampledFunction {
 public:
  SampledFunction(UniformGrid grid, std::vector<double> values);

  static SampledFunction sample(const Field& f, UniformGrid grid);

  const UniformGrid& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  int dim() const { return grid_.dim(); }

  /// Interpolated value; sets *extended when x lies outside the support box.
  double at(std::span<const double> x, bool* extended = nullptr) const;
  /// Sample at integer cell indices, clamped to the grid.
  double at_index(std::span<const long> index) const;

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

}  // namespace xmo
