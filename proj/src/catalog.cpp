#include "xmo/catalog.hpp"

#include <cmath>

namespace xmo::catalog {

namespace {
double squared_norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return s;
}
}  // namespace

Field sin_product(int dim) {
  return Field(
      dim,
      [](std::span<const double> x) {
        double p = 1.0;
        for (double v : x) p *= std::sin(v);
        return p;
      },
      "sin_product");
}

Field log_abs(int dim) {
  return Field(
      dim,
      [](std::span<const double> x) {
        const double r2 = squared_norm(x);
        if (r2 == 0.0) throw DomainError("log|x| is undefined at the origin");
        return 0.5 * std::log(r2);
      },
      "log_abs");
}

Field smoothed_log(int dim, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("smoothing radius must be positive");
  const double d2 = delta * delta;
  return Field(
      dim, [d2](std::span<const double> x) { return 0.5 * std::log(d2 + squared_norm(x)); }, "smoothed_log");
}

Field bump(const Point& center, double radius) {
  if (!(radius > 0.0)) throw PreconditionError("bump radius must be positive");
  return Field(
      static_cast<int>(center.size()),
      [center, radius](std::span<const double> x) {
        double u2 = 0.0;
        for (std::size_t i = 0; i < center.size(); ++i) {
          const double u = (x[i] - center[i]) / radius;
          u2 += u * u;
        }
        return u2 < 1.0 ? std::exp(-1.0 / (1.0 - u2)) : 0.0;
      },
      "bump");
}

Field sign(int dim) {
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(dim));
  bps[0] = {0.0};
  return Field(
      dim, [](std::span<const double> x) { return x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0); }, "sign",
      std::move(bps));
}

Field indicator(const Cube& q) {
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(q.dim()));
  for (int a = 0; a < q.dim(); ++a) bps[a] = {q.lo(a), q.hi(a)};
  return Field(
      q.dim(), [q](std::span<const double> x) { return q.contains(x) ? 1.0 : 0.0; }, "indicator", std::move(bps));
}

Field constant(int dim, double c) {
  return Field(
      dim, [c](std::span<const double>) { return c; }, "constant");
}

Field coordinate(int dim, int axis) {
  if (axis < 0 || axis >= dim) throw PreconditionError("coordinate axis out of range");
  return Field(
      dim, [axis](std::span<const double> x) { return x[axis]; }, "x" + std::to_string(axis + 1));
}

Field power_weight(int dim, double a, double delta) {
  if (!(delta > 0.0)) throw PreconditionError("weight regularisation must be positive");
  const double d2 = delta * delta;
  return Field(
      dim, [a, d2](std::span<const double> x) { return std::pow(d2 + squared_norm(x), 0.5 * a); }, "power_weight");
}

bool lookup(const std::string& name, int dim, Field* out) {
  if (name == "sin_product") {
    *out = sin_product(dim);
  } else if (name == "log_abs") {
    *out = log_abs(dim);
  } else if (name == "smoothed_log") {
    *out = smoothed_log(dim);
  } else if (name == "bump") {
    *out = bump(Point(static_cast<std::size_t>(dim), 0.0), 1.0);
  } else if (name == "sign") {
    *out = sign(dim);
  } else {
    return false;
  }
  return true;
}

std::vector<std::string> names() { return {"sin_product", "log_abs", "smoothed_log", "bump", "sign"}; }

}  // namespace xmo::catalog
