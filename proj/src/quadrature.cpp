#include "xmo/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace xmo {

GaussRule gauss_legendre(int points) {
  if (points < 1) throw PreconditionError("Gauss-Legendre rule needs at least one point");
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(points));
  rule.weights.resize(static_cast<std::size_t>(points));
  const double pi = 3.14159265358979323846;
  for (int i = 0; i < (points + 1) / 2; ++i) {
    double x = std::cos(pi * (i + 0.75) / (points + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 1; j <= points; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p2) / j;
      }
      dp = points * (x * p0 - p1) / (x * x - 1.0);
      const double dx = p0 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[points - 1 - i] = x;
    rule.weights[i] = rule.weights[points - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

AxisRule axis_rule(double lo, double hi, int resolution, std::span<const double> breakpoints) {
  if (resolution < 2) throw PreconditionError("quadrature resolution must be >= 2");
  if (!(hi > lo)) throw PreconditionError("quadrature interval is empty");

  std::vector<double> cuts{lo};
  auto first = std::upper_bound(breakpoints.begin(), breakpoints.end(), lo);
  auto last = std::lower_bound(breakpoints.begin(), breakpoints.end(), hi);
  if (first < last) cuts.insert(cuts.end(), first, last);
  cuts.push_back(hi);

  AxisRule rule;
  if (cuts.size() == 2) {
    const double h = (hi - lo) / resolution;
    rule.nodes.resize(static_cast<std::size_t>(resolution));
    for (int i = 0; i < resolution; ++i) rule.nodes[i] = lo + (i + 0.5) * h;
    rule.weights.assign(static_cast<std::size_t>(resolution), h);
    return rule;
  }
  rule.uniform = false;
  const double total = hi - lo;
  for (std::size_t p = 0; p + 1 < cuts.size(); ++p) {
    const double a = cuts[p], b = cuts[p + 1];
    const int m = std::max(1, static_cast<int>(std::lround(resolution * (b - a) / total)));
    const double h = (b - a) / m;
    for (int i = 0; i < m; ++i) {
      rule.nodes.push_back(a + (i + 0.5) * h);
      rule.weights.push_back(h);
    }
  }
  return rule;
}

int default_resolution(int dim) {
  if (dim <= 1) return 64;
  if (dim == 2) return 32;
  return 16;
}

std::vector<AxisRule> cube_rules(const Field& f, const Cube& q, int resolution) {
  if (f.dim() != q.dim()) throw PreconditionError("field and cube dimensions differ");
  std::vector<AxisRule> rules;
  rules.reserve(static_cast<std::size_t>(q.dim()));
  for (int a = 0; a < q.dim(); ++a) rules.push_back(axis_rule(q.lo(a), q.hi(a), resolution, f.breakpoints(a)));
  return rules;
}

void for_each_node(const std::vector<AxisRule>& rules,
                   const std::function<void(std::span<const double>, double)>& visit) {
  const std::size_t n = rules.size();
  std::vector<std::size_t> idx(n, 0);
  double x[kMaxDim];
  for (;;) {
    double w = 1.0;
    for (std::size_t a = 0; a < n; ++a) {
      x[a] = rules[a].nodes[idx[a]];
      w *= rules[a].weights[idx[a]];
    }
    visit(std::span<const double>(x, n), w);
    std::size_t a = n;
    while (a > 0) {
      --a;
      if (++idx[a] < rules[a].nodes.size()) break;
      idx[a] = 0;
      if (a == 0) return;
    }
    if (n == 0) return;
  }
}

CubeSamples sample_cube(const Field& f, const Cube& q, int resolution) {
  const auto rules = cube_rules(f, q, resolution);
  const bool uniform = std::all_of(rules.begin(), rules.end(), [](const AxisRule& r) { return r.uniform; });
  CubeSamples s;
  s.volume = q.volume();
  std::size_t count = 1;
  for (const auto& r : rules) count *= r.nodes.size();
  s.values.reserve(count);
  if (!uniform) s.weights.reserve(count);
  for_each_node(rules, [&](std::span<const double> x, double w) {
    const double v = f(x);
    if (!std::isfinite(v)) throw DomainError("field '" + f.label() + "' is not finite at a quadrature node");
    s.values.push_back(v);
    if (!uniform) s.weights.push_back(w);
  });
  return s;
}

double sample_mean(const CubeSamples& s) {
  return sample_mean(s, [](double v) { return v; });
}

double sample_mean(const CubeSamples& s, const std::function<double(double)>& g) {
  if (s.values.empty()) throw PreconditionError("no samples");
  // Summing deviations from the first sample keeps constants exact.
  const double base = g(s.values[0]);
  std::vector<double> terms(s.values.size());
  if (s.weights.empty()) {
    for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = g(s.values[i]) - base;
    return base + pairwise_sum(terms) / static_cast<double>(terms.size());
  }
  for (std::size_t i = 0; i < terms.size(); ++i) terms[i] = (g(s.values[i]) - base) * s.weights[i];
  return base + pairwise_sum(terms) / pairwise_sum(s.weights);
}

double cube_average(const Field& f, const Cube& q, int resolution) { return sample_mean(sample_cube(f, q, resolution)); }

double integrate(const Field& f, const Cube& q, int resolution) { return cube_average(f, q, resolution) * q.volume(); }

}  // namespace xmo
