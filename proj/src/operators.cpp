#include "xmo/operators.hpp"

#include <algorithm>
#include <cmath>

#include "xmo/quadrature.hpp"

namespace xmo {

namespace {

void check_inputs(const BilinearKernel& k, const SupportedFunction& f, const SupportedFunction& g,
                  const std::vector<Point>& xs) {
  const int n = k.dim();
  if (f.field.dim() != n || g.field.dim() != n || f.support.dim() != n || g.support.dim() != n)
    throw PreconditionError("kernel and inputs disagree on the dimension");
  for (const Point& x : xs)
    if (static_cast<int>(x.size()) != n) throw PreconditionError("evaluation point has the wrong dimension");
}

void check_off_support(const BilinearKernel& k, const SupportedFunction& f, const SupportedFunction& g,
                       const std::vector<Point>& xs) {
  if (k.bounded()) return;
  for (const Point& x : xs)
    if (f.support.contains_closed(x) && g.support.contains_closed(x))
      throw PreconditionError("untruncated kernel evaluated inside both supports; use a truncated kernel");
}

int resolve(int resolution, int dim) {
  if (resolution == 0) return default_operator_resolution(dim);
  if (resolution < 1) throw PreconditionError("resolution must be positive");
  return resolution;
}

OperatorOutput skeleton(const std::string& quantity, const BilinearKernel& k, const SupportedFunction& f,
                        const SupportedFunction& g, const std::vector<Point>& xs, int resolution) {
  OperatorOutput out;
  out.quantity = quantity;
  out.xs = xs;
  out.values.assign(xs.size(), 0.0);
  out.box_f = f.support;
  out.box_g = g.support;
  out.resolution = resolution;
  out.kernel_id = k.id();
  out.f_id = f.field.label();
  out.g_id = g.field.label();
  return out;
}

void check_finite(const OperatorOutput& out) {
  for (double v : out.values)
    if (!std::isfinite(v)) throw DomainError(out.quantity + " produced a non-finite value");
}

}  // namespace

int default_operator_resolution(int dim) {
  if (dim <= 1) return 48;
  if (dim == 2) return 24;
  return 12;
}

int operator_resolution(const BilinearKernel& k, const Cube& box_f, const Cube& box_g, int requested) {
  if (requested != 0) return resolve(requested, k.dim());
  const int base = default_operator_resolution(k.dim());
  if (!k.eta()) return base;
  const int cap = k.dim() <= 1 ? 256 : (k.dim() == 2 ? 48 : 16);
  const double side = std::max(box_f.side(), box_g.side());
  const double need = std::ceil(16.0 * side / *k.eta());
  return std::max(base, static_cast<int>(std::min<double>(need, cap)));
}

NodeSet weighted_nodes(const Field& f, const Cube& box, int resolution) {
  NodeSet s;
  s.dim = f.dim();
  const auto rules = cube_rules(f, box, resolution);
  for_each_node(rules, [&](std::span<const double> x, double w) {
    s.coords.insert(s.coords.end(), x.begin(), x.end());
    s.weights.push_back(w * f(x));
  });
  return s;
}

double double_sum(const NodeSet& y, const NodeSet& z,
                  const std::function<double(std::span<const double>, std::span<const double>)>& term) {
  std::vector<double> rows;
  rows.reserve(y.size());
  std::vector<double> inner(z.size());
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (y.weights[i] == 0.0) continue;
    const auto yi = y.node(i);
    for (std::size_t j = 0; j < z.size(); ++j)
      inner[j] = z.weights[j] == 0.0 ? 0.0 : z.weights[j] * term(yi, z.node(j));
    rows.push_back(y.weights[i] * pairwise_sum(inner));
  }
  return pairwise_sum(rows);
}

OperatorOutput apply_T(const BilinearKernel& k, const SupportedFunction& f, const SupportedFunction& g,
                       const std::vector<Point>& xs, int resolution) {
  check_inputs(k, f, g, xs);
  check_off_support(k, f, g, xs);
  resolution = operator_resolution(k, f.support, g.support, resolution);
  OperatorOutput out = skeleton("T", k, f, g, xs, resolution);
  const NodeSet ny = weighted_nodes(f.field, f.support, resolution);
  const NodeSet nz = weighted_nodes(g.field, g.support, resolution);
  parallel_for(xs.size(), [&](std::size_t i) {
    const Point& x = xs[i];
    out.values[i] = double_sum(ny, nz, [&](auto yv, auto zv) { return k(x, yv, zv); });
  });
  check_finite(out);
  return out;
}

OperatorOutput commutator(int i, const Field& b, const BilinearKernel& k, const SupportedFunction& f,
                          const SupportedFunction& g, const std::vector<Point>& xs, int resolution,
                          bool cross_check) {
  if (i != 1 && i != 2) throw PreconditionError("commutator index must be 1 or 2");
  check_inputs(k, f, g, xs);
  if (b.dim() != k.dim()) throw PreconditionError("symbol has the wrong dimension");
  check_off_support(k, f, g, xs);
  resolution = operator_resolution(k, f.support, g.support, resolution);
  OperatorOutput out = skeleton("commutator" + std::to_string(i), k, f, g, xs, resolution);
  out.b_id = b.label();
  const NodeSet ny = weighted_nodes(f.field, f.support, resolution);
  const NodeSet nz = weighted_nodes(g.field, g.support, resolution);
  // b moved onto the i-th argument.
  NodeSet by = ny, bz = nz;
  NodeSet& moved = i == 1 ? by : bz;
  for (std::size_t j = 0; j < moved.size(); ++j) moved.weights[j] *= b(moved.node(j));
  std::vector<double> diffs(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t m) {
    const Point& x = xs[m];
    const double bx = b(x);
    auto kern = [&](std::span<const double> yv, std::span<const double> zv) { return k(x, yv, zv); };
    const double integrand = double_sum(ny, nz, [&](auto yv, auto zv) {
      return (bx - b(i == 1 ? yv : zv)) * k(x, yv, zv);
    });
    out.values[m] = integrand;
    if (!cross_check) return;
    const double t = bx * double_sum(ny, nz, kern);
    const double tb = double_sum(by, bz, kern);
    const double scale = std::max({std::abs(t), std::abs(tb), 1e-300});
    diffs[m] = std::abs(integrand - (t - tb)) / scale;
  });
  check_finite(out);
  out.form_difference = diffs.empty() ? 0.0 : *std::max_element(diffs.begin(), diffs.end());
  out.consistent = out.form_difference <= 1e-6;
  out.cross_checked = cross_check;
  return out;
}

std::vector<Cube> dyadic_scan(std::span<const double> x, int jmin, int jmax) {
  if (x.empty()) throw PreconditionError("scan point is empty");
  if (jmin > jmax) throw PreconditionError("dyadic scan range is empty");
  std::vector<Cube> cubes;
  for (int j = jmin; j <= jmax; ++j) {
    const double side = std::ldexp(1.0, j);
    for (double a : {0.0, 0.25, 0.5, 0.75}) {
      Point lo(x.begin(), x.end());
      for (double& c : lo) c -= a * side;
      cubes.push_back(Cube::from_corner(lo, side));
    }
  }
  return cubes;
}

MaximalEstimate bilinear_maximal(const Field& f, const Field& g, std::span<const double> x,
                                 const std::vector<Cube>& cubes, int resolution) {
  if (cubes.empty()) throw PreconditionError("maximal operator scan is empty");
  if (resolution == 0) resolution = default_resolution(f.dim());
  for (const Cube& q : cubes) {
    if (q.dim() != f.dim()) throw PreconditionError("scanned cube has the wrong dimension");
    // Corner-aligned cubes may miss x by a rounding error in the centre.
    if (!Cube(q.center(), q.half_side() * (1.0 + 1e-12)).contains_closed(x))
      throw PreconditionError("scanned cube does not contain x");
  }
  const Field af = abs(f), ag = abs(g);
  std::vector<double> vals(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t i) {
    vals[i] = cube_average(af, cubes[i], resolution) * cube_average(ag, cubes[i], resolution);
  });
  MaximalEstimate est;
  est.cubes = cubes.size();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < vals.size(); ++i)
    if (vals[i] > vals[arg]) arg = i;
  est.value = vals[arg];
  est.argmax = cubes[arg];
  return est;
}

double gradient_sup(const Field& b, const Cube& region, int points, double min_radius) {
  if (points < 2) throw PreconditionError("gradient scan needs at least two points per axis");
  const int n = b.dim();
  if (region.dim() != n) throw PreconditionError("gradient region has the wrong dimension");
  std::size_t total = 1;
  for (int a = 0; a < n; ++a) total *= static_cast<std::size_t>(points);
  const double step = region.side() / (points - 1);
  const double h = std::max(1e-6, 1e-4 * step);
  std::vector<double> vals(total, 0.0);
  parallel_for(total, [&](std::size_t flat) {
    Point x(static_cast<std::size_t>(n));
    std::size_t rest = flat;
    for (int a = n - 1; a >= 0; --a) {
      x[a] = region.lo(a) + step * static_cast<double>(rest % static_cast<std::size_t>(points));
      rest /= static_cast<std::size_t>(points);
    }
    if (norm2(x) < min_radius) return;
    double g2 = 0.0;
    for (int a = 0; a < n; ++a) {
      Point p = x, m = x;
      p[a] += h;
      m[a] -= h;
      const double d = (b(p) - b(m)) / (2.0 * h);
      g2 += d * d;
    }
    vals[flat] = std::sqrt(g2);
  });
  return *std::max_element(vals.begin(), vals.end());
}

TruncationGapReport truncation_gap(const Field& b, const BilinearKernel& k, const std::vector<double>& etas,
                                   const SupportedFunction& f, const SupportedFunction& g,
                                   const std::vector<Point>& xs, int resolution) {
  check_inputs(k, f, g, xs);
  if (etas.empty()) throw PreconditionError("no truncation levels");
  for (double eta : etas)
    if (!(eta > 0.0 && eta <= 1.0)) throw PreconditionError("truncation eta must lie in (0, 1]");
  if (xs.empty()) throw PreconditionError("no evaluation points");
  resolution = resolve(resolution, k.dim());
  const int n = k.dim();

  // Gradient bound over a box holding xs and both supports.
  double reach = 0.0;
  for (const Point& x : xs)
    for (double c : x) reach = std::max(reach, std::abs(c));
  for (const Cube* q : {&f.support, &g.support})
    for (int a = 0; a < n; ++a) reach = std::max({reach, std::abs(q->lo(a)), std::abs(q->hi(a))});
  TruncationGapReport rep;
  rep.gradient_bound = gradient_sup(b, Cube::centered(n, reach + 1.0), n == 1 ? 4001 : (n == 2 ? 401 : 41));

  rep.maximal.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i)
    rep.maximal[i] = bilinear_maximal(f.field, g.field, xs[i], dyadic_scan(xs[i])).value;

  auto clip = [&](const Cube& support, const Point& x, double eta, bool& empty) {
    Point lo(static_cast<std::size_t>(n)), hi(static_cast<std::size_t>(n));
    double side = 0.0;
    empty = false;
    for (int a = 0; a < n; ++a) {
      lo[a] = std::max(support.lo(a), x[a] - eta);
      hi[a] = std::min(support.hi(a), x[a] + eta);
      if (!(hi[a] > lo[a])) empty = true;
    }
    if (empty) return support;
    // Cubes only: clip to the largest side and let the field's zeros do the rest.
    for (int a = 0; a < n; ++a) side = std::max(side, hi[a] - lo[a]);
    return Cube::from_corner(lo, side);
  };

  std::vector<double> lgap, leta;
  for (double eta : etas) {
    GapEntry e;
    e.eta = eta;
    e.gaps.assign(xs.size(), 0.0);
    const BilinearKernel rem = truncation_remainder(k, eta);
    parallel_for(xs.size(), [&](std::size_t i) {
      const Point& x = xs[i];
      bool ey = false, ez = false;
      const Cube qy = clip(f.support, x, eta, ey), qz = clip(g.support, x, eta, ez);
      if (ey || ez) return;
      const NodeSet ny = weighted_nodes(f.field, qy, resolution);
      const NodeSet nz = weighted_nodes(g.field, qz, resolution);
      const double bx = b(x);
      e.gaps[i] = std::abs(double_sum(ny, nz, [&](auto yv, auto zv) {
        if (separation(x, yv, zv) == 0.0) return 0.0;
        return (bx - b(yv)) * rem(x, yv, zv);
      }));
    });
    std::size_t arg = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (e.gaps[i] > e.gaps[arg]) arg = i;
      const double denom = eta * rep.gradient_bound * rep.maximal[i];
      if (denom > 0.0) e.constant = std::max(e.constant, e.gaps[i] / denom);
    }
    e.sup_gap = e.gaps[arg];
    e.argmax = xs[arg];
    if (e.sup_gap > 0.0) {
      lgap.push_back(std::log(e.sup_gap));
      leta.push_back(std::log(eta));
    }
    rep.entries.push_back(std::move(e));
  }
  if (lgap.size() >= 2) rep.slope = regression_slope(leta, lgap);
  double cmin = 0.0, cmax = 0.0;
  bool any = false;
  for (const GapEntry& e : rep.entries) {
    if (!(e.constant > 0.0)) continue;
    cmin = any ? std::min(cmin, e.constant) : e.constant;
    cmax = any ? std::max(cmax, e.constant) : e.constant;
    any = true;
  }
  rep.constant_ratio = any ? cmax / cmin : 0.0;
  return rep;
}

}  // namespace xmo
