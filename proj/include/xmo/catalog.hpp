#pragma once

#include <string>
#include <vector>

#include "xmo/cube.hpp"
#include "xmo/field.hpp"

namespace xmo::catalog {

/// prod_k sin(x_k).
Field sin_product(int dim);
/// log|x|. Throws DomainError at the origin.
Field log_abs(int dim);
/// (1/2) log(delta^2 + |x|^2): smooth, even, equal to log|x| + O(|x|^-2).
Field smoothed_log(int dim, double delta = 1.0);
/// exp(-1 / (1 - |u|^2)) with u = (x - center) / radius, zero for |u| >= 1.
Field bump(const Point& center, double radius);
/// Sign of the first coordinate (0 at 0).
Field sign(int dim);
/// Indicator of the half-open box q, with breakpoints on its faces.
Field indicator(const Cube& q);
Field constant(int dim, double c);
/// x_axis (0-based axis).
Field coordinate(int dim, int axis);
/// (delta^2 + |x|^2)^{a/2}, the regularised power weight.
Field power_weight(int dim, double a, double delta = 0.1);

/// Catalog entry by name ("sin_product", "log_abs", "smoothed_log", "bump",
/// "sign"). Returns false when the name is unknown.
bool lookup(const std::string& name, int dim, Field* out);
std::vector<std::string> names();

}  // namespace xmo::catalog
