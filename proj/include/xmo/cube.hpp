#pragma once

#include <span>

#include "xmo/common.hpp"

namespace xmo {

/// Axis-aligned cube in R^n given by its center and half side length.
///
/// Membership uses the half-open convention [lo, hi) on every axis so that
/// dyadic tilings are exact partitions. Integrals do not see the difference.
class Cube {
 public:
  Cube(Point center, double half_side);

  /// Cube with lower corner `lo` and side length `side`.
  static Cube from_corner(Point lo, double side);
  /// The cube Q(0, r) = [-r, r]^n.
  static Cube centered(int dim, double half_side);

  const Point& center() const { return center_; }
  double half_side() const { return half_side_; }
  double side() const { return 2.0 * half_side_; }
  int dim() const { return static_cast<int>(center_.size()); }
  double volume() const;

  double lo(int axis) const { return center_[axis] - half_side_; }
  double hi(int axis) const { return center_[axis] + half_side_; }

  Cube translated(std::span<const double> t) const;
  bool contains(std::span<const double> x) const;
  /// Membership in the closed cube.
  bool contains_closed(std::span<const double> x) const;
  /// True when the closed cubes share at least one point.
  bool intersects_closed(const Cube& other) const;
  /// True when `other` lies inside the closed cube.
  bool encloses(const Cube& other) const;

  bool operator==(const Cube&) const = default;

 private:
  Point center_;
  double half_side_;
};

}  // namespace xmo
