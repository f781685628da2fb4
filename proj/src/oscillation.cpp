#include "xmo/oscillation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "xmo/quadrature.hpp"

namespace xmo {

double mean_oscillation(const Field& f, const Cube& q, int resolution) {
  const CubeSamples s = sample_cube(f, q, resolution);
  const double avg = sample_mean(s);
  return sample_mean(s, [avg](double v) { return std::abs(v - avg); });
}

SupEstimate parallel_sup(std::size_t count, const std::function<double(std::size_t)>& measure) {
  if (count == 0) throw PreconditionError("sup over an empty family");
  std::vector<double> values(count);
  parallel_for(count, [&](std::size_t i) { values[i] = measure(i); });
  SupEstimate out;
  out.cube_count = count;
  out.value = values[0];
  for (std::size_t i = 1; i < count; ++i)
    if (values[i] > out.value) {
      out.value = values[i];
      out.argmax = i;
    }
  return out;
}

SupEstimate bmo_norm_estimate(const Field& f, const std::vector<Cube>& cubes, int resolution) {
  if (cubes.empty()) throw PreconditionError("cube family is empty");
  return parallel_sup(cubes.size(), [&](std::size_t i) { return mean_oscillation(f, cubes[i], resolution); });
}

std::vector<double> OscillationProfile::parameters() const {
  std::vector<double> out;
  for (const auto& e : entries) out.push_back(e.parameter);
  return out;
}

std::vector<double> OscillationProfile::values() const {
  std::vector<double> out;
  for (const auto& e : entries) out.push_back(e.value);
  return out;
}

namespace {

void require_monotone(const std::vector<double>& v, bool increasing, const char* what) {
  if (v.empty()) throw PreconditionError(std::string(what) + " list is empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (increasing ? !(v[i] > v[i - 1]) : !(v[i] < v[i - 1]))
      throw PreconditionError(std::string(what) + " must be strictly " + (increasing ? "increasing" : "decreasing"));
  for (double x : v)
    if (!(x > 0.0) || !std::isfinite(x)) throw PreconditionError(std::string(what) + " must be positive and finite");
}

ProfileEntry sup_entry(const Field& f, double parameter, const std::vector<Cube>& cubes, int resolution) {
  const SupEstimate s = bmo_norm_estimate(f, cubes, resolution);
  return {parameter, s.value, cubes[s.argmax], s.cube_count};
}

OscillationProfile scale_profile(const char* kind, const Field& f, const std::vector<double>& scales,
                                 const std::vector<Point>& centers, int resolution) {
  if (centers.empty()) throw PreconditionError("no scan centres");
  OscillationProfile p{kind, resolution, {}};
  for (double a : scales) {
    const double half = 0.5 * std::pow(a, 1.0 / f.dim());
    std::vector<Cube> cubes;
    cubes.reserve(centers.size());
    for (const auto& c : centers) cubes.emplace_back(c, half);
    p.entries.push_back(sup_entry(f, a, cubes, resolution));
  }
  return p;
}

}  // namespace

OscillationProfile small_scale_profile(const Field& f, const std::vector<double>& scales,
                                       const std::vector<Point>& centers, int resolution) {
  require_monotone(scales, false, "scales");
  return scale_profile("small_scale", f, scales, centers, resolution);
}

OscillationProfile large_scale_profile(const Field& f, const std::vector<double>& scales,
                                       const std::vector<Point>& centers, int resolution) {
  require_monotone(scales, true, "scales");
  return scale_profile("large_scale", f, scales, centers, resolution);
}

OscillationProfile translation_profile(const Field& f, const Cube& q, const std::vector<Point>& directions,
                                       const std::vector<double>& radii, int resolution) {
  require_monotone(radii, true, "radii");
  if (directions.empty()) throw PreconditionError("no translation directions");
  OscillationProfile p{"translation", resolution, {}};
  for (double r : radii) {
    std::vector<Cube> cubes;
    for (const auto& d : directions) {
      if (static_cast<int>(d.size()) != q.dim()) throw PreconditionError("direction dimension mismatch");
      const double len = norm2(d);
      if (!(len > 0.0)) throw PreconditionError("direction must be nonzero");
      Point t(d.size());
      for (std::size_t i = 0; i < d.size(); ++i) t[i] = r * d[i] / len;
      cubes.push_back(q.translated(t));
    }
    p.entries.push_back(sup_entry(f, r, cubes, resolution));
  }
  return p;
}

OscillationProfile annulus_profile(const Field& f, const std::vector<double>& radii,
                                   const std::function<std::vector<Cube>(double)>& probes, int resolution) {
  require_monotone(radii, true, "radii");
  OscillationProfile p{"annulus", resolution, {}};
  for (double r : radii) {
    const std::vector<Cube> cubes = probes(r);
    const Cube inner = Cube::centered(f.dim(), r);
    for (const auto& q : cubes)
      if (q.intersects_closed(inner))
        throw PreconditionError("annulus probe intersects Q(0, " + std::to_string(r) + ")");
    p.entries.push_back(sup_entry(f, r, cubes, resolution));
  }
  return p;
}

std::vector<Cube> default_annulus_probes(int dim, double radius) {
  std::vector<Cube> out;
  const double gap = 1e-6 * (1.0 + radius);
  for (double side : {1.0, 10.0, radius}) {
    for (int axis = 0; axis < dim; ++axis) {
      for (double sgn : {1.0, -1.0}) {
        Point c(static_cast<std::size_t>(dim), 0.0);
        c[axis] = sgn * (radius + gap + 0.5 * side);
        out.emplace_back(std::move(c), 0.5 * side);
      }
    }
  }
  const double k = std::floor(std::log(radius)) + 1.0;
  const double lo = std::exp(k);
  Point c(static_cast<std::size_t>(dim), 0.0);
  const double side = lo * (std::numbers::e - 1.0);
  c[0] = lo + 0.5 * side;
  out.emplace_back(std::move(c), 0.5 * side);
  return out;
}

std::vector<Point> lattice_centers(int dim, double extent, double spacing) {
  if (!(spacing > 0.0) || !(extent >= 0.0)) throw PreconditionError("invalid lattice");
  const long m = static_cast<long>(std::floor(extent / spacing + 1e-9));
  const std::size_t per_axis = static_cast<std::size_t>(2 * m + 1);
  std::size_t total = 1;
  for (int a = 0; a < dim; ++a) total *= per_axis;
  std::vector<Point> out;
  out.reserve(total);
  for (std::size_t flat = 0; flat < total; ++flat) {
    Point p(static_cast<std::size_t>(dim));
    std::size_t rest = flat;
    for (int a = dim - 1; a >= 0; --a) {
      p[a] = (static_cast<double>(rest % per_axis) - static_cast<double>(m)) * spacing;
      rest /= per_axis;
    }
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Point> axis_directions(int dim) {
  std::vector<Point> out;
  for (int a = 0; a < dim; ++a)
    for (double s : {1.0, -1.0}) {
      Point d(static_cast<std::size_t>(dim), 0.0);
      d[a] = s;
      out.push_back(std::move(d));
    }
  return out;
}

ScanConfig ScanConfig::defaults(int dim) {
  ScanConfig c;
  c.dim = dim;
  if (dim >= 2) {
    c.extent = 10.0;
    c.center_spacing = 1.0;
    c.small_scales = {1.0, 1.0 / 16, 1.0 / 256, 1.0 / 4096};
  }
  return c;
}

Diagnosis classify(const Field& f, const ScanConfig& config) {
  if (config.dim != f.dim()) throw PreconditionError("scan dimension does not match the function");
  if (!(config.tolerance > 0.0)) throw PreconditionError("tolerance must be positive");
  const int res = config.resolution > 0 ? config.resolution : default_resolution(f.dim());
  const int large_res =
      config.large_resolution > 0 ? config.large_resolution : (f.dim() == 1 ? 8192 : (f.dim() == 2 ? 256 : 64));

  Diagnosis d;
  d.config = config;
  d.config.resolution = res;
  d.config.large_resolution = large_res;

  const auto centers = lattice_centers(f.dim(), config.extent, config.center_spacing);
  d.small_scale = small_scale_profile(f, config.small_scales, centers, res);

  const auto directions = axis_directions(f.dim());
  for (double half : config.translation_half_sides) {
    const auto p = translation_profile(f, Cube::centered(f.dim(), half), directions, config.translation_radii, res);
    if (d.translation.entries.empty()) {
      d.translation = p;
      continue;
    }
    for (std::size_t i = 0; i < p.entries.size(); ++i) {
      auto& e = d.translation.entries[i];
      e.cube_count += p.entries[i].cube_count;
      if (p.entries[i].value > e.value) {
        e.value = p.entries[i].value;
        e.argmax = p.entries[i].argmax;
      }
    }
  }

  const auto coarse = lattice_centers(f.dim(), config.extent, config.extent / 5.0);
  d.large_scale = large_scale_profile(f, config.large_scales, coarse, large_res);
  d.annulus = annulus_profile(
      f, config.annulus_radii, [&](double r) { return default_annulus_probes(f.dim(), r); }, res);

  d.vmo_smallscale_ok = d.small_scale.entries.back().value < config.tolerance;
  d.xmo_translation_ok = d.translation.entries.back().value < config.tolerance;
  d.cmo_largescale_ok = d.large_scale.entries.back().value < config.tolerance;
  return d;
}

}  // namespace xmo
