#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "xmo/common.hpp"
#include "xmo/expr.hpp"

namespace xmo {

/// A real-valued function on R^n as consumed by the numerical modules.
///
/// Breakpoints are coordinates where the function may jump along an axis.
/// Quadrature grids split cells there so sharp indicators integrate exactly.
class Field {
 public:
  using Eval = std::function<double(std::span<const double>)>;

  Field(int dim, Eval eval, std::string label, std::vector<std::vector<double>> breakpoints = {});

  double operator()(std::span<const double> x) const { return eval_(x); }
  int dim() const { return dim_; }
  const std::string& label() const { return label_; }
  /// Sorted breakpoints on `axis` (possibly empty).
  const std::vector<double>& breakpoints(int axis) const { return breakpoints_[axis]; }

 private:
  int dim_;
  Eval eval_;
  std::string label_;
  std::vector<std::vector<double>> breakpoints_;
};

/// Wraps a parsed expression. Breakpoints are read off `piecewise` and `sign`
/// nodes whose first argument is affine in a single coordinate.
Field field_from_spec(const FunctionSpec& spec, int dim = 0);

Field operator-(const Field& a, const Field& b);
Field operator*(const Field& a, const Field& b);
/// alpha * f + c.
Field affine(const Field& f, double alpha, double c);
Field abs(const Field& f);
/// x -> f(x - t).
Field translated(const Field& f, std::span<const double> t);

}  // namespace xmo
