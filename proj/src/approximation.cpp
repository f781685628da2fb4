#include "xmo/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "xmo/quadrature.hpp"

namespace xmo {

namespace {

constexpr std::size_t kMaxScanCubes = 4'000'000;

std::size_t lattice_size(int dim, double extent, double spacing) {
  const double per_axis = 2.0 * std::floor(extent / spacing + 1e-9) + 1.0;
  return static_cast<std::size_t>(std::min(std::pow(per_axis, dim), 1e18));
}

std::string cube_text(const Cube& q) {
  std::string s = "center (";
  for (int a = 0; a < q.dim(); ++a) s += (a ? ", " : "") + std::to_string(q.center()[a]);
  return s + "), side " + std::to_string(q.side());
}

// Oscillation of every cube of the given half side centred on the lattice of
// spacing half over [-extent, extent]^n.
struct LatticeScan {
  std::vector<Point> centers;
  std::vector<double> values;
};

LatticeScan scan_lattice(const Field& f, double half, double extent, int resolution) {
  if (lattice_size(f.dim(), extent, half) > kMaxScanCubes)
    throw PreconditionError("certification scan exceeds the cube budget; reduce the extent");
  LatticeScan s;
  s.centers = lattice_centers(f.dim(), extent, half);
  s.values.resize(s.centers.size());
  parallel_for(s.centers.size(), [&](std::size_t i) {
    s.values[i] = mean_oscillation(f, Cube(s.centers[i], half), resolution);
  });
  return s;
}

}  // namespace

ConditionNotMet::ConditionNotMet(const std::string& stage, const Cube& witness, double value, double bound)
    : PreconditionError("condition not met on scanned region at stage " + stage + ": oscillation " +
                        std::to_string(value) + " >= " + std::to_string(bound) + " on cube " + cube_text(witness)),
      witness_(witness),
      value_(value),
      bound_(bound) {}

void ThresholdSchedule::validate() const {
  if (!(epsilon > 0.0)) throw PreconditionError("schedule epsilon must be positive");
  if (j0 > -1) throw PreconditionError("schedule j0 must be <= -1");
  if (jk.empty()) throw PreconditionError("schedule has no generations");
  if (jk[0] <= j0) throw PreconditionError("schedule jk[1] must exceed j0");
  for (std::size_t i = 1; i < jk.size(); ++i)
    if (jk[i] <= jk[i - 1]) throw PreconditionError("schedule jk must be strictly increasing");
}

double ThresholdSchedule::coverage() const { return std::ldexp(1.0, jk.back()); }

ThresholdSchedule select_thresholds(const Field& f, double epsilon, const ThresholdScanConfig& config, int kmax) {
  if (!(epsilon > 0.0)) throw PreconditionError("epsilon must be positive");
  if (kmax < 1) throw PreconditionError("kmax must be >= 1");
  if (!(config.extent > 0.0)) throw PreconditionError("scan extent must be positive");
  if (config.small_side_factors.empty()) throw PreconditionError("no small-cube side factors");
  const int res = config.resolution > 0 ? config.resolution : default_resolution(f.dim());

  ThresholdSchedule out;
  out.epsilon = epsilon;
  out.dim = f.dim();
  out.scan = config;
  out.scan.resolution = res;

  // j0: the largest j <= -1 with every scanned cube of side < 2^{j+1} below epsilon.
  bool found = false;
  Cube worst = Cube::centered(f.dim(), 0.5);
  double worst_value = 0.0;
  for (int j = -1; j >= config.min_j0 && !found; --j) {
    Certificate cert{"j0", j, epsilon, 0.0, 0, Cube::centered(f.dim(), 0.5)};
    bool ok = true;
    for (double factor : config.small_side_factors) {
      if (!(factor > 0.0 && factor < 1.0)) throw PreconditionError("small-cube side factors must lie in (0, 1)");
      const double half = 0.5 * factor * std::ldexp(1.0, j + 1);
      const LatticeScan s = scan_lattice(f, half, config.extent, res);
      for (std::size_t i = 0; i < s.values.size(); ++i) {
        if (s.values[i] > cert.observed || (cert.cubes == 0 && i == 0)) {
          cert.observed = s.values[i];
          cert.worst = Cube(s.centers[i], half);
        }
      }
      cert.cubes += s.values.size();
      if (cert.observed >= epsilon) {
        ok = false;
        break;
      }
    }
    worst = cert.worst;
    worst_value = cert.observed;
    if (ok) {
      out.j0 = j;
      out.certificates.push_back(cert);
      found = true;
    }
  }
  if (!found) throw ConditionNotMet("j0", worst, worst_value, epsilon);

  // jk: the smallest j > jk[k-1] such that cubes Q(x, 2^{j0+k}) with |x| >= 2^j are below 2^{k j0} epsilon.
  int previous = out.j0;
  for (int k = 1; k <= kmax; ++k) {
    const double half = std::ldexp(1.0, out.j0 + k);
    const double bound = std::ldexp(epsilon, k * out.j0);
    const LatticeScan s = scan_lattice(f, half, config.extent, res);
    double far_fail = -1.0;
    std::size_t far_index = 0;
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (s.values[i] >= bound) {
        const double r = norm2(s.centers[i]);
        if (r > far_fail) {
          far_fail = r;
          far_index = i;
        }
      }
    }
    int j = previous + 1;
    while (std::ldexp(1.0, j) <= far_fail) ++j;
    if (std::ldexp(1.0, j) > config.extent)
      throw ConditionNotMet("k=" + std::to_string(k), Cube(s.centers[far_index], half), s.values[far_index], bound);

    Certificate cert{"k=" + std::to_string(k), j, bound, 0.0, 0, Cube::centered(f.dim(), half)};
    const double radius = std::ldexp(1.0, j);
    for (std::size_t i = 0; i < s.values.size(); ++i) {
      if (norm2(s.centers[i]) < radius) continue;
      if (cert.cubes == 0 || s.values[i] > cert.observed) {
        cert.observed = s.values[i];
        cert.worst = Cube(s.centers[i], half);
      }
      ++cert.cubes;
    }
    out.jk.push_back(j);
    out.certificates.push_back(cert);
    previous = j;
  }
  out.validate();
  return out;
}

bool Generation::in_hole(std::span<const std::size_t> index) const {
  if (inner <= 0.0) return false;
  const auto h0 = static_cast<std::size_t>(std::llround((outer - inner) / side));
  const auto h1 = static_cast<std::size_t>(std::llround((outer + inner) / side));
  for (std::size_t i : index)
    if (i < h0 || i >= h1) return false;
  return true;
}

namespace {

void unflatten(std::size_t flat, std::size_t per_axis, int dim, std::size_t* index) {
  for (int a = dim - 1; a >= 0; --a) {
    index[a] = flat % per_axis;
    flat /= per_axis;
  }
}

bool is_multiple(double value, double unit) {
  const double q = value / unit;
  return q == std::floor(q);
}

}  // namespace

DyadicApproximation::DyadicApproximation(ThresholdSchedule schedule, int dim)
    : schedule_(std::move(schedule)), dim_(dim) {
  schedule_.validate();
  if (dim_ < 1 || dim_ > kMaxDim) throw PreconditionError("family dimension out of range");
  for (std::size_t k = 1; k <= schedule_.jk.size(); ++k) {
    Generation g;
    g.k = static_cast<int>(k);
    g.side = std::ldexp(1.0, schedule_.j0 + g.k - 1);
    g.inner = k == 1 ? 0.0 : std::ldexp(1.0, schedule_.jk[k - 2]);
    g.outer = std::ldexp(1.0, schedule_.jk[k - 1]);
    if (!is_multiple(g.outer, g.side) || !is_multiple(g.inner, g.side))
      throw PreconditionError("annulus of generation " + std::to_string(k) + " is not aligned to its dyadic grid");
    const double per_axis = 2.0 * g.outer / g.side;
    if (std::pow(per_axis, dim_) > 1e8) throw PreconditionError("dyadic family too large to store");
    g.per_axis = static_cast<std::size_t>(per_axis);
    std::size_t total = 1;
    for (int a = 0; a < dim_; ++a) total *= g.per_axis;
    g.values.assign(total, std::numeric_limits<double>::quiet_NaN());
    generations_.push_back(std::move(g));
  }
}

DyadicApproximation DyadicApproximation::restore(ThresholdSchedule schedule, int dim,
                                                 std::vector<Generation> generations, bool filled) {
  DyadicApproximation a(std::move(schedule), dim);
  if (generations.size() != a.generations_.size()) throw PreconditionError("generation count mismatch");
  for (std::size_t k = 0; k < generations.size(); ++k) {
    const Generation& want = a.generations_[k];
    const Generation& got = generations[k];
    if (got.side != want.side || got.inner != want.inner || got.outer != want.outer ||
        got.values.size() != want.values.size())
      throw PreconditionError("generation " + std::to_string(k + 1) + " does not match the schedule");
  }
  a.generations_ = std::move(generations);
  a.filled_ = filled;
  return a;
}

std::size_t DyadicApproximation::cube_count() const {
  std::size_t n = 0;
  std::size_t index[kMaxDim];
  for (const auto& g : generations_)
    for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
      unflatten(flat, g.per_axis, dim_, index);
      if (!g.in_hole(std::span<const std::size_t>(index, static_cast<std::size_t>(dim_)))) ++n;
    }
  return n;
}

std::vector<CubeRef> DyadicApproximation::members() const {
  std::vector<CubeRef> out;
  std::size_t index[kMaxDim];
  for (std::size_t k = 0; k < generations_.size(); ++k) {
    const auto& g = generations_[k];
    for (std::size_t flat = 0; flat < g.values.size(); ++flat) {
      unflatten(flat, g.per_axis, dim_, index);
      if (!g.in_hole(std::span<const std::size_t>(index, static_cast<std::size_t>(dim_)))) out.push_back({k, flat});
    }
  }
  return out;
}

Cube DyadicApproximation::cube(const CubeRef& ref) const {
  const auto& g = generations_.at(ref.generation);
  std::size_t index[kMaxDim];
  unflatten(ref.flat, g.per_axis, dim_, index);
  Point lo(static_cast<std::size_t>(dim_));
  for (int a = 0; a < dim_; ++a) lo[a] = -g.outer + static_cast<double>(index[a]) * g.side;
  return Cube::from_corner(std::move(lo), g.side);
}

std::optional<CubeRef> DyadicApproximation::locate(std::span<const double> x) const {
  for (std::size_t k = 0; k < generations_.size(); ++k) {
    const auto& g = generations_[k];
    bool inside = true;
    for (int a = 0; a < dim_ && inside; ++a) inside = x[a] >= -g.outer && x[a] < g.outer;
    if (!inside) continue;
    std::size_t flat = 0;
    for (int a = 0; a < dim_; ++a) {
      auto i = static_cast<std::size_t>(std::floor((x[a] + g.outer) / g.side));
      i = std::min(i, g.per_axis - 1);
      flat = flat * g.per_axis + i;
    }
    return CubeRef{k, flat};
  }
  return std::nullopt;
}

double DyadicApproximation::value(const CubeRef& ref) const { return generations_.at(ref.generation).values.at(ref.flat); }

double DyadicApproximation::g(std::span<const double> x) const {
  if (!filled_) throw PreconditionError("approximation has not been projected");
  const auto ref = locate(x);
  if (!ref) throw PreconditionError("point outside the covered region");
  return value(*ref);
}

Field DyadicApproximation::g_field(double window) const {
  const double s = finest_side();
  const double w = std::min(window, coverage());
  std::vector<std::vector<double>> bps(static_cast<std::size_t>(dim_));
  const long m = static_cast<long>(std::ceil(w / s));
  for (auto& axis : bps)
    for (long i = -m; i <= m; ++i) axis.push_back(static_cast<double>(i) * s);
  return Field(
      dim_, [this](std::span<const double> x) { return g(x); }, "g_eps", std::move(bps));
}

void DyadicApproximation::set_value(const CubeRef& ref, double v) {
  generations_.at(ref.generation).values.at(ref.flat) = v;
}

DyadicApproximation build_family(const ThresholdSchedule& schedule, int dim) { return DyadicApproximation(schedule, dim); }

DyadicApproximation project_simple(const Field& f, DyadicApproximation skeleton, int resolution) {
  if (f.dim() != skeleton.dim()) throw PreconditionError("field and family dimensions differ");
  const auto refs = skeleton.members();
  std::vector<double> values(refs.size());
  parallel_for(refs.size(), [&](std::size_t i) { values[i] = cube_average(f, skeleton.cube(refs[i]), resolution); });
  for (std::size_t i = 0; i < refs.size(); ++i) skeleton.set_value(refs[i], values[i]);
  skeleton.mark_filled();
  return skeleton;
}

JumpReport adjacency_jump(const DyadicApproximation& approx) {
  if (!approx.filled()) throw PreconditionError("approximation has not been projected");
  const auto refs = approx.members();
  if (refs.empty()) throw PreconditionError("empty family");
  const int n = approx.dim();
  const double nudge = approx.finest_side() / 4.0;

  struct Best {
    double value = -1.0;
    std::size_t other_gen = 0, other_flat = 0;
    std::size_t pairs = 0;
  };
  std::vector<Best> best(refs.size());
  parallel_for(refs.size(), [&](std::size_t i) {
    const Cube q = approx.cube(refs[i]);
    const double v = approx.value(refs[i]);
    int combos = 1;
    for (int a = 0; a < n; ++a) combos *= 4;
    double p[kMaxDim];
    Best b;
    for (int c = 0; c < combos; ++c) {
      int rest = c;
      bool outside = false;
      for (int a = 0; a < n; ++a) {
        const int pick = rest % 4;
        rest /= 4;
        const double lo = q.lo(a), s = q.side();
        switch (pick) {
          case 0: p[a] = lo - nudge; outside = true; break;
          case 1: p[a] = lo + 0.25 * s; break;
          case 2: p[a] = lo + 0.75 * s; break;
          default: p[a] = q.hi(a) + nudge; outside = true; break;
        }
      }
      if (!outside) continue;
      const auto other = approx.locate(std::span<const double>(p, static_cast<std::size_t>(n)));
      if (!other) continue;
      if (other->generation == refs[i].generation && other->flat == refs[i].flat) continue;
      const bool counted_here = std::make_pair(other->generation, other->flat) > std::make_pair(refs[i].generation, refs[i].flat);
      if (counted_here) ++b.pairs;
      const double jump = std::abs(v - approx.value(*other));
      if (jump > b.value) {
        b.value = jump;
        b.other_gen = other->generation;
        b.other_flat = other->flat;
      }
    }
    best[i] = b;
  });

  JumpReport r;
  std::size_t arg = 0;
  r.value = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < best.size(); ++i) {
    r.pairs += best[i].pairs;
    if (best[i].value > r.value || (!any && best[i].value >= 0.0)) {
      r.value = best[i].value;
      arg = i;
      any = true;
    }
  }
  if (any) {
    r.first = approx.cube(refs[arg]);
    r.second = approx.cube({best[arg].other_gen, best[arg].other_flat});
  }
  return r;
}

Mollifier::Mollifier(int dim) : dim_(dim), c_(0.0) {
  if (dim < 1 || dim > kMaxDim) throw PreconditionError("mollifier dimension out of range");
  // Radial integral of exp(-1/(1-r^2)) r^{n-1} on [0, 1] times the sphere area.
  const GaussRule gl = gauss_legendre(16);
  const int panels = 64;
  std::vector<double> terms;
  for (int p = 0; p < panels; ++p) {
    const double a = static_cast<double>(p) / panels, b = static_cast<double>(p + 1) / panels;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
      const double r = 0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i];
      terms.push_back(0.5 * (b - a) * gl.weights[i] * std::pow(r, dim - 1) * std::exp(-1.0 / (1.0 - r * r)));
    }
  }
  const double sphere = 2.0 * std::pow(std::numbers::pi, 0.5 * dim) / std::tgamma(0.5 * dim);
  c_ = 1.0 / (sphere * pairwise_sum(terms));
}

double Mollifier::operator()(std::span<const double> u) const {
  double r2 = 0.0;
  for (double v : u) r2 += v * v;
  return r2 < 1.0 ? c_ * std::exp(-1.0 / (1.0 - r2)) : 0.0;
}

double Mollifier::scaled(std::span<const double> x, double delta) const {
  double u[kMaxDim];
  for (std::size_t i = 0; i < x.size(); ++i) u[i] = x[i] / delta;
  return (*this)(std::span<const double>(u, x.size())) / std::pow(delta, dim_);
}

MollifiedApproximation::MollifiedApproximation(const DyadicApproximation& approx)
    : approx_(&approx), phi_(approx.dim()), delta_(std::ldexp(1.0, approx.schedule().j0)) {
  if (!approx.filled()) throw PreconditionError("approximation has not been projected");
}

double MollifiedApproximation::operator()(std::span<const double> x, bool* extended) const {
  const int n = approx_->dim();
  const double s = approx_->finest_side();
  const double cover = approx_->coverage();
  static const GaussRule gl = gauss_legendre(16);
  const double panel = delta_ / 8.0;

  // Per axis, the window [x - delta, x + delta] cut at the finest lattice; g is
  // constant on every product piece because all family faces lie on it.
  std::vector<std::vector<double>> cuts(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    const double lo = x[a] - delta_, hi = x[a] + delta_;
    cuts[a].push_back(lo);
    for (double c = std::floor(lo / s) * s + s; c < hi; c += s)
      if (c > lo) cuts[a].push_back(c);
    cuts[a].push_back(hi);
  }

  bool ext = false;
  std::vector<double> terms;
  std::size_t piece[kMaxDim] = {};
  double mid[kMaxDim], y[kMaxDim], d[kMaxDim];
  for (;;) {
    for (int a = 0; a < n; ++a) {
      mid[a] = 0.5 * (cuts[a][piece[a]] + cuts[a][piece[a] + 1]);
      const double limit = std::nextafter(cover, 0.0);
      if (mid[a] < -cover || mid[a] >= cover) {
        ext = true;
        mid[a] = std::clamp(mid[a], -cover, limit);
      }
    }
    const double gv = approx_->value(*approx_->locate(std::span<const double>(mid, static_cast<std::size_t>(n))));

    // Tensor Gauss-Legendre over the piece, panels no wider than delta / 8.
    std::vector<std::vector<std::pair<double, double>>> nodes(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a) {
      const double lo = cuts[a][piece[a]], hi = cuts[a][piece[a] + 1];
      const int m = std::max(1, static_cast<int>(std::ceil((hi - lo) / panel - 1e-9)));
      const double w = (hi - lo) / m;
      for (int p = 0; p < m; ++p)
        for (std::size_t i = 0; i < gl.nodes.size(); ++i)
          nodes[a].emplace_back(lo + w * (p + 0.5 + 0.5 * gl.nodes[i]), 0.5 * w * gl.weights[i]);
    }
    std::size_t idx[kMaxDim] = {};
    double piece_sum = 0.0;
    std::vector<double> local;
    for (;;) {
      double wt = 1.0;
      for (int a = 0; a < n; ++a) {
        y[a] = nodes[a][idx[a]].first;
        wt *= nodes[a][idx[a]].second;
        d[a] = x[a] - y[a];
      }
      local.push_back(wt * phi_.scaled(std::span<const double>(d, static_cast<std::size_t>(n)), delta_));
      int a = n - 1;
      while (a >= 0 && ++idx[a] == nodes[a].size()) idx[a--] = 0;
      if (a < 0) break;
    }
    piece_sum = pairwise_sum(local);
    terms.push_back(gv * piece_sum);

    int a = n - 1;
    while (a >= 0 && ++piece[a] + 1 == cuts[a].size()) piece[a--] = 0;
    if (a < 0) break;
  }
  if (extended) *extended = ext;
  return pairwise_sum(terms);
}

Field MollifiedApproximation::field() const {
  return Field(
      approx_->dim(), [this](std::span<const double> x) { return (*this)(x); }, "h_eps");
}

MollifiedApproximation mollify(const DyadicApproximation& approx) { return MollifiedApproximation(approx); }

std::vector<Point> gap_points(const DyadicApproximation& approx, double window) {
  if (!(window > 0.0)) throw PreconditionError("gap window must be positive");
  const int n = approx.dim();
  const double w = std::min(window, approx.coverage());
  const double step = std::ldexp(1.0, approx.schedule().j0) / 8.0;
  const long count = static_cast<long>(std::floor(w / step));
  std::vector<Point> out;
  for (int dir = 0; dir <= (n > 1 ? n : 0); ++dir) {
    for (long i = -count; i < count; ++i) {
      const double t = (static_cast<double>(i) + 0.5) * step;
      Point x(static_cast<std::size_t>(n), 0.0);
      if (dir < n)
        x[dir] = t;
      else
        for (double& c : x) c = t;
      out.push_back(std::move(x));
    }
  }
  return out;
}

double mollification_gap(const MollifiedApproximation& h, const std::vector<Point>& points) {
  if (points.empty()) throw PreconditionError("no evaluation points");
  std::vector<double> gaps(points.size());
  parallel_for(points.size(), [&](std::size_t i) {
    gaps[i] = std::abs(h.approximation().g(points[i]) - h(points[i]));
  });
  return *std::max_element(gaps.begin(), gaps.end());
}

int MultiIndex::total() const {
  int t = 0;
  for (int o : order) t += o;
  return t;
}

std::vector<DecayEntry> derivative_decay(const MollifiedApproximation& h, const MultiIndex& alpha,
                                         const std::vector<double>& radii) {
  const auto& approx = h.approximation();
  const int n = approx.dim();
  if (static_cast<int>(alpha.order.size()) != n) throw PreconditionError("multi-index dimension mismatch");
  for (int o : alpha.order)
    if (o < 0) throw PreconditionError("multi-index entries must be nonnegative");
  const int order = alpha.total();
  if (order < 1 || order > 2) throw PreconditionError("derivative order must be 1 or 2");
  for (std::size_t i = 0; i < radii.size(); ++i)
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] > radii[i - 1])))
      throw PreconditionError("radii must be positive and increasing");

  const double step = h.delta() / 8.0;
  std::vector<int> axes;
  for (int a = 0; a < n; ++a)
    for (int o = 0; o < alpha.order[a]; ++o) axes.push_back(a);

  auto derivative = [&](const Point& x) {
    Point y = x;
    auto at = [&](int s0, int s1) {
      y = x;
      y[axes[0]] += s0 * step;
      if (axes.size() > 1) y[axes[1]] += s1 * step;
      return h(y);
    };
    if (order == 1) return (at(1, 0) - at(-1, 0)) / (2.0 * step);
    if (axes[0] == axes[1]) {
      y = x;
      const double c = h(y);
      y[axes[0]] += step;
      const double p = h(y);
      y[axes[0]] -= 2.0 * step;
      const double m = h(y);
      return (p - 2.0 * c + m) / (step * step);
    }
    return (at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * step * step);
  };

  std::vector<Point> directions = axis_directions(n);
  if (n >= 2) {
    for (int mask = 0; mask < (1 << n); ++mask) {
      Point d(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) d[a] = ((mask >> a) & 1 ? -1.0 : 1.0) / std::sqrt(static_cast<double>(n));
      directions.push_back(std::move(d));
    }
  }

  std::vector<DecayEntry> out;
  for (double r : radii) {
    std::vector<Point> samples;
    for (const auto& u : directions) {
      Point x(static_cast<std::size_t>(n));
      for (int a = 0; a < n; ++a) x[a] = r * u[a];
      const auto ref = approx.locate(x);
      if (!ref) throw PreconditionError("radius " + std::to_string(r) + " lies outside the covered region");
      const double w = approx.generations()[ref->generation].side;
      double reach = 0.0;
      for (int a = 0; a < n; ++a) reach = std::max(reach, std::abs(u[a]) * (r + w));
      if (reach + h.delta() + 2.0 * step >= approx.coverage())
        throw PreconditionError("radius " + std::to_string(r) + " is too close to the coverage boundary");
      const auto count = static_cast<std::size_t>(std::llround(w / step));
      for (std::size_t i = 0; i <= count; ++i) {
        const double t = r + static_cast<double>(i) * step;
        Point p(static_cast<std::size_t>(n));
        for (int a = 0; a < n; ++a) p[a] = t * u[a];
        samples.push_back(std::move(p));
      }
    }
    const SupEstimate s = parallel_sup(samples.size(), [&](std::size_t i) { return std::abs(derivative(samples[i])); });
    out.push_back({r, s.value, samples[s.argmax], samples.size()});
  }
  return out;
}

std::vector<Cube> regime_family(const DyadicApproximation& approx, double max_extent) {
  const auto& sched = approx.schedule();
  double extent = approx.coverage();
  if (max_extent > 0.0) extent = std::min(extent, max_extent);
  const double base = std::ldexp(1.0, sched.j0);
  std::vector<double> sides{0.25 * base, 0.5 * base, 0.75 * base};
  for (std::size_t k = 1; k <= sched.jk.size(); ++k) {
    const double s = std::ldexp(1.0, sched.j0 + static_cast<int>(k) - 1);
    sides.push_back(s);
    sides.push_back(1.5 * s);
  }
  std::vector<Cube> out;
  for (double side : sides) {
    const double half = 0.5 * side;
    if (half >= extent) continue;
    if (lattice_size(approx.dim(), extent - half, half) > kMaxScanCubes)
      throw PreconditionError("regime family exceeds the cube budget; pass a smaller extent");
    for (auto& c : lattice_centers(approx.dim(), extent - half, half)) out.emplace_back(std::move(c), half);
  }
  return out;
}

SupEstimate approximation_error(const Field& f, const DyadicApproximation& approx, bool mollified,
                                const std::vector<Cube>& cubes, int resolution) {
  if (f.dim() != approx.dim()) throw PreconditionError("field and family dimensions differ");
  const Cube cover = Cube::centered(approx.dim(), approx.coverage());
  for (const auto& q : cubes)
    if (!cover.encloses(q)) throw PreconditionError("error cube leaves the covered region: " + cube_text(q));
  if (mollified) {
    const MollifiedApproximation h(approx);
    return bmo_norm_estimate(f - h.field(), cubes, resolution);
  }
  return bmo_norm_estimate(f - approx.g_field(approx.coverage()), cubes, resolution);
}

}  // namespace xmo
