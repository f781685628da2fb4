#include "xmo/cube.hpp"

#include <cmath>

namespace xmo {

Cube::Cube(Point center, double half_side) : center_(std::move(center)), half_side_(half_side) {
  if (center_.empty() || static_cast<int>(center_.size()) > kMaxDim)
    throw PreconditionError("cube dimension must be in [1, " + std::to_string(kMaxDim) + "]");
  if (!(half_side_ > 0.0) || !std::isfinite(half_side_))
    throw PreconditionError("cube half side must be positive and finite");
  for (double c : center_)
    if (!std::isfinite(c)) throw PreconditionError("cube center must be finite");
}

Cube Cube::from_corner(Point lo, double side) {
  for (double& c : lo) c += 0.5 * side;
  return Cube(std::move(lo), 0.5 * side);
}

Cube Cube::centered(int dim, double half_side) {
  return Cube(Point(static_cast<std::size_t>(dim), 0.0), half_side);
}

double Cube::volume() const { return std::pow(side(), dim()); }

Cube Cube::translated(std::span<const double> t) const {
  if (t.size() != center_.size()) throw PreconditionError("translation dimension mismatch");
  Point c = center_;
  for (std::size_t i = 0; i < c.size(); ++i) c[i] += t[i];
  return Cube(std::move(c), half_side_);
}

bool Cube::contains(std::span<const double> x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo(i) || x[i] >= hi(i)) return false;
  return true;
}

bool Cube::contains_closed(std::span<const double> x) const {
  for (int i = 0; i < dim(); ++i)
    if (x[i] < lo(i) || x[i] > hi(i)) return false;
  return true;
}

bool Cube::intersects_closed(const Cube& other) const {
  for (int i = 0; i < dim(); ++i)
    if (other.hi(i) < lo(i) || other.lo(i) > hi(i)) return false;
  return true;
}

bool Cube::encloses(const Cube& other) const {
  for (int i = 0; i < dim(); ++i)
    if (other.lo(i) < lo(i) || other.hi(i) > hi(i)) return false;
  return true;
}

}  // namespace xmo
