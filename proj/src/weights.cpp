#include "xmo/weights.hpp"

#include <cmath>

#include "xmo/quadrature.hpp"

namespace xmo {

namespace {

void check_exponent(double p, const char* name) {
  if (!(p > 1.0 && p <= 16.0)) throw PreconditionError(std::string(name) + " must lie in (1, 16]");
}

void check_positive(const CubeSamples& s, const std::string& label) {
  for (double v : s.values)
    if (!(v > 0.0)) throw PreconditionError("weight " + label + " has a nonpositive sample");
}

WeightConstant scan(const std::vector<Cube>& cubes, const std::function<double(const Cube&)>& value) {
  if (cubes.empty()) throw PreconditionError("weight scan is empty");
  std::vector<double> vals(cubes.size());
  parallel_for(cubes.size(), [&](std::size_t i) { vals[i] = value(cubes[i]); });
  WeightConstant out;
  out.cubes = cubes.size();
  std::size_t arg = 0;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    if (!std::isfinite(vals[i])) throw DomainError("weight constant is not finite");
    if (vals[i] > vals[arg]) arg = i;
  }
  out.value = vals[arg];
  out.argmax = cubes[arg];
  return out;
}

}  // namespace

double conjugate(double p) {
  if (!(p > 1.0)) throw PreconditionError("conjugate exponent needs p > 1");
  return p / (p - 1.0);
}

VectorWeight::VectorWeight(Field w1, Field w2, double p1, double p2)
    : w1_(std::move(w1)), w2_(std::move(w2)), p1_(p1), p2_(p2) {
  check_exponent(p1, "p1");
  check_exponent(p2, "p2");
  if (w1_.dim() != w2_.dim()) throw PreconditionError("weights differ in dimension");
  p_ = 1.0 / (1.0 / p1 + 1.0 / p2);
}

Field VectorWeight::combined() const {
  const Field a = w1_, b = w2_;
  const double ea = p_ / p1_, eb = p_ / p2_;
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(a.dim()));
  for (int ax = 0; ax < a.dim(); ++ax) {
    bps[ax] = a.breakpoints(ax);
    bps[ax].insert(bps[ax].end(), b.breakpoints(ax).begin(), b.breakpoints(ax).end());
  }
  return Field(
      a.dim(), [a, b, ea, eb](std::span<const double> x) { return std::pow(a(x), ea) * std::pow(b(x), eb); },
      "(" + a.label() + ")^" + std::to_string(ea) + "*(" + b.label() + ")^" + std::to_string(eb), std::move(bps));
}

WeightConstant vector_ap_constant(const VectorWeight& vw, const std::vector<Cube>& cubes, int resolution) {
  if (resolution == 0) resolution = default_resolution(vw.w1().dim());
  const double p = vw.p(), q1 = conjugate(vw.p1()), q2 = conjugate(vw.p2());
  const Field w = vw.combined();
  return scan(cubes, [&](const Cube& q) {
    const CubeSamples s1 = sample_cube(vw.w1(), q, resolution);
    const CubeSamples s2 = sample_cube(vw.w2(), q, resolution);
    check_positive(s1, vw.w1().label());
    check_positive(s2, vw.w2().label());
    const double aw = cube_average(w, q, resolution);
    const double a1 = sample_mean(s1, [&](double v) { return std::pow(v, 1.0 - q1); });
    const double a2 = sample_mean(s2, [&](double v) { return std::pow(v, 1.0 - q2); });
    return aw * std::pow(a1, p / q1) * std::pow(a2, p / q2);
  });
}

WeightConstant scalar_ap_constant(const Field& w, double p, const std::vector<Cube>& cubes, int resolution) {
  if (resolution == 0) resolution = default_resolution(w.dim());
  const double q = conjugate(p);
  return scan(cubes, [&](const Cube& c) {
    const CubeSamples s = sample_cube(w, c, resolution);
    check_positive(s, w.label());
    const double aw = sample_mean(s);
    const double ad = sample_mean(s, [&](double v) { return std::pow(v, 1.0 - q); });
    return aw * std::pow(ad, p - 1.0);
  });
}

std::vector<Cube> weight_scan_family(int dim, double extent, int levels) {
  if (dim < 1 || dim > kMaxDim) throw PreconditionError("dimension out of range");
  if (!(extent > 0.0) || levels < 1) throw PreconditionError("weight scan needs a positive extent and levels");
  std::vector<Cube> cubes;
  for (int j = 0; j < levels; ++j) {
    const double half = extent * std::ldexp(1.0, -j);
    // Centres from -extent + half to extent - half in steps of half.
    const std::size_t per_axis = 2 * (static_cast<std::size_t>(1) << j) - 1;
    std::size_t total = 1;
    for (int a = 0; a < dim; ++a) total *= per_axis;
    for (std::size_t flat = 0; flat < total; ++flat) {
      Point c(static_cast<std::size_t>(dim));
      std::size_t rest = flat;
      for (int a = dim - 1; a >= 0; --a) {
        c[a] = -extent + half * static_cast<double>(rest % per_axis + 1);
        rest /= per_axis;
      }
      cubes.emplace_back(c, half);
    }
  }
  return cubes;
}

double weighted_lp_norm(const Field& h, const Field& w, double p, const Cube& region, int resolution) {
  if (!(p > 0.0)) throw PreconditionError("norm exponent must be positive");
  if (resolution == 0) resolution = default_resolution(h.dim());
  const CubeSamples sw = sample_cube(w, region, resolution);
  check_positive(sw, w.label());
  const Field integrand(
      h.dim(), [h, w, p](std::span<const double> x) { return std::pow(std::abs(h(x)), p) * w(x); },
      "|h|^p w", [&] {
        std::vector<std::vector<double>> bps(static_cast<std::size_t>(h.dim()));
        for (int a = 0; a < h.dim(); ++a) {
          bps[a] = h.breakpoints(a);
          bps[a].insert(bps[a].end(), w.breakpoints(a).begin(), w.breakpoints(a).end());
        }
        return bps;
      }());
  return std::pow(integrate(integrand, region, resolution), 1.0 / p);
}

double weighted_lp_norm(const SampledFunction& h, const Field& w, double p,
                        const std::function<bool(std::span<const double>)>& keep) {
  if (!(p > 0.0)) throw PreconditionError("norm exponent must be positive");
  const UniformGrid& grid = h.grid();
  std::vector<double> terms(grid.size(), 0.0);
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const double v = h.values()[i];
    if (v == 0.0) continue;
    const Point x = grid.node(i);
    if (keep && !keep(x)) continue;
    const double wx = w(x);
    if (!(wx > 0.0)) throw PreconditionError("weight " + w.label() + " has a nonpositive sample");
    terms[i] = std::pow(std::abs(v), p) * wx;
  }
  return std::pow(pairwise_sum(terms) * grid.cell_volume(), 1.0 / p);
}

}  // namespace xmo
