#include "xmo/compactness.hpp"

#include <algorithm>
#include <cmath>

#include "xmo/quadrature.hpp"
#include "xmo/rng.hpp"

namespace xmo {

namespace {

void require_truncated(const BilinearKernel& k) {
  if (!k.eta() || !(*k.eta() > 0.0)) throw PreconditionError("kernel must be truncated with eta > 0");
}

double support_norm(const SupportedFunction& f, const Field& w, double p, int resolution) {
  return weighted_lp_norm(f.field, w, p, f.support, resolution);
}

// Radius of a box holding the points and both supports.
double reach(const std::vector<Point>& xs, const SupportedFunction& f, const SupportedFunction& g) {
  double r = 0.0;
  for (const Point& x : xs)
    for (double c : x) r = std::max(r, std::abs(c));
  for (const Cube* q : {&f.support, &g.support})
    for (int a = 0; a < q->dim(); ++a) r = std::max({r, std::abs(q->lo(a)), std::abs(q->hi(a))});
  return r;
}

int gradient_points(int dim) { return dim == 1 ? 4001 : (dim == 2 ? 401 : 41); }

double sup_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

std::vector<SampledFunction> CommutatorFamily::sampled() const {
  std::vector<SampledFunction> out;
  out.reserve(outputs.size());
  for (const OperatorOutput& o : outputs) out.emplace_back(grid, o.values);
  return out;
}

SupportedFunction normalized(const SupportedFunction& f, const Field& w, double p, int resolution) {
  const double nrm = support_norm(f, w, p, resolution);
  if (nrm == 0.0) return f;
  return SupportedFunction{affine(f.field, 1.0 / nrm, 0.0), f.support};
}

CommutatorFamily commutator_family(const Field& b, const BilinearKernel& k_eta, const std::vector<InputPair>& pairs,
                                   const VectorWeight& vw, const UniformGrid& grid, int resolution) {
  require_truncated(k_eta);
  if (grid.dim() != k_eta.dim()) throw PreconditionError("family grid has the wrong dimension");
  CommutatorFamily fam;
  fam.grid = grid;
  std::vector<Point> xs(grid.size());
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = grid.node(i);
  for (const InputPair& pr : pairs) {
    const double nf = support_norm(pr.f, vw.w1(), vw.p1(), 0);
    const double ng = support_norm(pr.g, vw.w2(), vw.p2(), 0);
    if (nf > 1.0 + 1e-9 || ng > 1.0 + 1e-9) throw PreconditionError("input pair is not normalised");
    fam.norms_f.push_back(nf);
    fam.norms_g.push_back(ng);
    fam.outputs.push_back(commutator(1, b, k_eta, pr.f, pr.g, xs, resolution, false));
  }
  return fam;
}

CompactnessReport fk_check(const std::vector<SampledFunction>& family, const Field& w, double p,
                           const std::vector<double>& a_list, const std::vector<Point>& t_list,
                           const FkTolerances& tol) {
  if (family.empty()) throw PreconditionError("family is empty");
  if (a_list.empty() || t_list.empty()) throw PreconditionError("tail and translation lists must be non-empty");
  for (std::size_t i = 1; i < a_list.size(); ++i)
    if (!(a_list[i] > a_list[i - 1])) throw PreconditionError("A list must be increasing");
  for (std::size_t i = 1; i < t_list.size(); ++i)
    if (!(norm2(t_list[i]) < norm2(t_list[i - 1]))) throw PreconditionError("t list must be decreasing in |t|");
  const int n = family.front().dim();
  for (const SampledFunction& m : family)
    if (m.dim() != n) throw PreconditionError("family members differ in dimension");
  for (const Point& t : t_list)
    if (static_cast<int>(t.size()) != n) throw PreconditionError("translation has the wrong dimension");

  CompactnessReport rep;
  rep.members = family.size();
  rep.tolerances = tol;
  std::vector<double> norms(family.size());
  parallel_for(family.size(), [&](std::size_t i) { norms[i] = weighted_lp_norm(family[i], w, p); });
  rep.bounded_sup = *std::max_element(norms.begin(), norms.end());

  for (double a : a_list) {
    std::vector<double> v(family.size());
    parallel_for(family.size(), [&](std::size_t i) {
      v[i] = weighted_lp_norm(family[i], w, p, [a](std::span<const double> x) { return norm2(x) > a; });
    });
    rep.tail_norms.push_back({a, *std::max_element(v.begin(), v.end())});
  }

  for (const Point& t : t_list) {
    std::vector<double> v(family.size());
    parallel_for(family.size(), [&](std::size_t i) {
      const SampledFunction& m = family[i];
      const UniformGrid& grid = m.grid();
      std::vector<double> terms(grid.size(), 0.0);
      for (std::size_t j = 0; j < grid.size(); ++j) {
        Point x = grid.node(j);
        const double here = m.values()[j];
        for (int a = 0; a < n; ++a) x[a] += t[a];
        bool outside = false;
        for (int a = 0; a < n; ++a) {
          const double first = grid.lo(a) + 0.5 * grid.spacing, last = grid.hi(a) - 0.5 * grid.spacing;
          if (x[a] < first - 1e-9 * grid.spacing || x[a] > last + 1e-9 * grid.spacing) outside = true;
        }
        if (outside) continue;
        const double diff = m.at(x) - here;
        if (diff == 0.0) continue;
        const double wx = w(grid.node(j));
        if (!(wx > 0.0)) throw PreconditionError("weight " + w.label() + " has a nonpositive sample");
        terms[j] = std::pow(std::abs(diff), p) * wx;
      }
      v[i] = std::pow(pairwise_sum(terms) * grid.cell_volume(), 1.0 / p);
    });
    rep.modulus.push_back({norm2(t), *std::max_element(v.begin(), v.end())});
  }

  rep.bounded_ok = rep.bounded_sup <= tol.bound_cap;
  rep.tail_ok = rep.tail_norms.back().value <= tol.tail * rep.bounded_sup;
  rep.modulus_ok = rep.modulus.back().value <= tol.modulus * rep.bounded_sup;
  return rep;
}

TailProfiles tail_decomposition(const Field& b, const BilinearKernel& k_eta, const SupportedFunction& f,
                                const SupportedFunction& g, double a, const std::vector<Point>& xs, int resolution) {
  require_truncated(k_eta);
  const CutoffSplit split = cutoff_split(a);
  for (const Point& x : xs)
    if (!(norm2(x) > a)) throw PreconditionError("tail points must satisfy |x| > A");
  const int n = k_eta.dim();
  resolution = operator_resolution(k_eta, f.support, g.support, resolution);
  TailProfiles out;
  out.a = a;
  out.xs = xs;
  const Cube region = Cube::centered(n, reach(xs, f, g) + 1.0);
  out.g12 = gradient_sup(b, region, gradient_points(n), 0.5 * a - 1.0);
  out.g3 = gradient_sup(b, region, gradient_points(n));
  const NodeSet ny = weighted_nodes(f.field, f.support, resolution);
  const NodeSet nz = weighted_nodes(g.field, g.support, resolution);
  NodeSet ay = ny, az = nz;
  for (double& wv : ay.weights) wv = std::abs(wv);
  for (double& wv : az.weights) wv = std::abs(wv);
  out.l1.assign(xs.size(), 0.0);
  out.l2 = out.l1;
  out.l3 = out.l1;
  out.commutator = out.l1;
  parallel_for(xs.size(), [&](std::size_t i) {
    const Point& x = xs[i];
    const double bx = b(x);
    auto piece = [&](int which) {
      return double_sum(ay, az, [&](std::span<const double> yv, std::span<const double> zv) {
        const double s = separation(x, yv, zv);
        const double cut = which == 1 ? cutoff_phi1(s) : (which == 2 ? split.phi2(s) : split.phi3(s));
        if (cut == 0.0) return 0.0;
        Point d(x);
        for (int m = 0; m < n; ++m) d[m] -= yv[m];
        return norm2(d) * std::abs(k_eta(x, yv, zv)) * cut;
      });
    };
    out.l1[i] = out.g12 * piece(1);
    out.l2[i] = out.g12 * piece(2);
    out.l3[i] = out.g3 * piece(3);
    out.commutator[i] = double_sum(ny, nz, [&](auto yv, auto zv) { return (bx - b(yv)) * k_eta(x, yv, zv); });
  });
  return out;
}

TranslationProfiles translation_continuity(const Field& b, const BilinearKernel& k_eta, const SupportedFunction& f,
                                           const SupportedFunction& g, const std::vector<Point>& ts,
                                           const std::vector<Point>& xs, int resolution) {
  require_truncated(k_eta);
  const double eta = *k_eta.eta();
  const int n = k_eta.dim();
  for (const Point& t : ts) {
    if (static_cast<int>(t.size()) != n) throw PreconditionError("translation has the wrong dimension");
    if (!(norm2(t) < eta / 8.0)) throw PreconditionError("translations must satisfy |t| < eta / 8");
  }
  resolution = operator_resolution(k_eta, f.support, g.support, resolution);
  const NodeSet ny = weighted_nodes(f.field, f.support, resolution);
  const NodeSet nz = weighted_nodes(g.field, g.support, resolution);
  const std::vector<double> tvals = apply_T(k_eta, f, g, xs, resolution).values;
  TranslationProfiles out;
  std::vector<double> lt, l4, l5;
  for (const Point& t : ts) {
    std::vector<double> v4(xs.size(), 0.0), v5(xs.size(), 0.0);
    parallel_for(xs.size(), [&](std::size_t i) {
      const Point& x = xs[i];
      Point xt(x);
      for (int a = 0; a < n; ++a) xt[a] += t[a];
      const double bxt = b(xt);
      v4[i] = (b(x) - bxt) * tvals[i];
      v5[i] = double_sum(ny, nz, [&](auto yv, auto zv) {
        return (bxt - b(yv)) * (k_eta(x, yv, zv) - k_eta(xt, yv, zv));
      });
    });
    TranslationEntry e{norm2(t), sup_abs(v4), sup_abs(v5)};
    if (e.t_norm > 0.0 && e.sup_l4 > 0.0 && e.sup_l5 > 0.0) {
      lt.push_back(std::log(e.t_norm));
      l4.push_back(std::log(e.sup_l4));
      l5.push_back(std::log(e.sup_l5));
    }
    out.entries.push_back(e);
  }
  if (lt.size() >= 2) {
    out.slope_l4 = regression_slope(lt, l4);
    out.slope_l5 = regression_slope(lt, l5);
  }
  return out;
}

double plateau_vanishing(const BilinearKernel& k_eta, std::size_t samples, std::uint64_t seed) {
  require_truncated(k_eta);
  const double eta = *k_eta.eta();
  const int n = k_eta.dim();
  SplitMix64 rng(seed);
  double worst = 0.0;
  Point x(static_cast<std::size_t>(n)), y = x, z = x, xt = x;
  for (std::size_t i = 0; i < samples; ++i) {
    // Offsets in a box small enough that s < eta / 4 and |t| < eta / 8.
    const double r = eta / (8.0 * std::sqrt(static_cast<double>(n)));
    for (int a = 0; a < n; ++a) {
      x[a] = rng.uniform(-10.0, 10.0);
      y[a] = x[a] + rng.uniform(-r, r) * 0.999;
      z[a] = x[a] + rng.uniform(-r, r) * 0.999;
      xt[a] = x[a] + rng.uniform(-r, r) * 0.999;
    }
    worst = std::max({worst, std::abs(k_eta(x, y, z)), std::abs(k_eta(xt, y, z))});
  }
  return worst;
}

}  // namespace xmo
