#include "xmo/sampled.hpp"

#include <algorithm>
#include <cmath>

namespace xmo {

std::size_t UniformGrid::size() const {
  std::size_t n = 1;
  for (auto e : extents) n *= e;
  return n;
}

Point UniformGrid::node(std::size_t flat) const {
  Point x(origin.size());
  for (std::size_t a = origin.size(); a-- > 0;) {
    const std::size_t i = flat % extents[a];
    flat /= extents[a];
    x[a] = origin[a] + (static_cast<double>(i) + 0.5) * spacing;
  }
  return x;
}

double UniformGrid::cell_volume() const { return std::pow(spacing, dim()); }

SampledFunction::SampledFunction(UniformGrid grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (grid_.dim() < 1 || grid_.dim() > kMaxDim) throw PreconditionError("grid dimension out of range");
  if (grid_.extents.size() != grid_.origin.size()) throw PreconditionError("grid extents do not match origin");
  if (!(grid_.spacing > 0.0) || !std::isfinite(grid_.spacing)) throw PreconditionError("grid spacing must be positive");
  for (auto e : grid_.extents)
    if (e == 0) throw PreconditionError("grid extent must be positive");
  if (values_.size() != grid_.size()) throw PreconditionError("sample count does not match grid");
  for (double v : values_)
    if (!std::isfinite(v)) throw DomainError("sampled values must be finite");
}

SampledFunction SampledFunction::sample(const Field& f, UniformGrid grid) {
  if (f.dim() != grid.dim()) throw PreconditionError("field and grid dimensions differ");
  std::vector<double> values(grid.size());
  parallel_for(values.size(), [&](std::size_t i) {
    const Point x = grid.node(i);
    values[i] = f(x);
  });
  return SampledFunction(std::move(grid), std::move(values));
}

double SampledFunction::at_index(std::span<const long> index) const {
  std::size_t flat = 0;
  for (std::size_t a = 0; a < grid_.extents.size(); ++a) {
    const long hi = static_cast<long>(grid_.extents[a]) - 1;
    flat = flat * grid_.extents[a] + static_cast<std::size_t>(std::clamp(index[a], 0L, hi));
  }
  return values_[flat];
}

double SampledFunction::at(std::span<const double> x, bool* extended) const {
  const int n = dim();
  if (static_cast<int>(x.size()) != n) throw PreconditionError("query dimension mismatch");
  long base[kMaxDim];
  double frac[kMaxDim];
  bool outside = false;
  for (int a = 0; a < n; ++a) {
    if (x[a] < grid_.lo(a) || x[a] > grid_.hi(a)) outside = true;
    const double u = (x[a] - grid_.origin[a]) / grid_.spacing - 0.5;
    const double fl = std::floor(u);
    base[a] = static_cast<long>(fl);
    frac[a] = u - fl;
    const long last = static_cast<long>(grid_.extents[a]) - 1;
    if (base[a] < 0) {
      base[a] = 0;
      frac[a] = 0.0;
    } else if (base[a] >= last) {
      base[a] = last;
      frac[a] = 0.0;
    }
  }
  if (extended) *extended = outside;
  double sum = 0.0;
  long idx[kMaxDim];
  for (int corner = 0; corner < (1 << n); ++corner) {
    double w = 1.0;
    for (int a = 0; a < n; ++a) {
      const bool up = (corner >> a) & 1;
      if (up && frac[a] == 0.0) {
        w = 0.0;
        break;
      }
      w *= up ? frac[a] : 1.0 - frac[a];
      idx[a] = base[a] + (up ? 1 : 0);
    }
    if (w != 0.0) sum += w * at_index(std::span<const long>(idx, static_cast<std::size_t>(n)));
  }
  return sum;
}

}  // namespace xmo
