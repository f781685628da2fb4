#include "xmo/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "xmo/rng.hpp"

namespace xmo {

namespace {

double dist(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

double dist2(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

double sigma(double u) { return u > 0.0 ? std::exp(-1.0 / u) : 0.0; }

// Smooth step: 0 for u <= 0, 1 for u >= 1.
double smooth_step(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  const double a = sigma(u), b = sigma(1.0 - u);
  return a / (a + b);
}

}  // namespace

double separation(std::span<const double> x, std::span<const double> y, std::span<const double> z) {
  return dist(x, y) + dist(x, z);
}

BilinearKernel::BilinearKernel(std::string id, int dim, Eval eval, double size_c, double reg_c, double decay_c,
                               std::optional<double> eta, bool yz_symmetric)
    : id_(std::move(id)),
      dim_(dim),
      eval_(std::move(eval)),
      size_c_(size_c),
      reg_c_(reg_c),
      decay_c_(decay_c),
      eta_(eta),
      yz_symmetric_(yz_symmetric) {
  if (dim_ < 1 || dim_ > kMaxDim) throw PreconditionError("kernel dimension out of range");
  if (!eval_) throw PreconditionError("kernel has no evaluator");
}

BilinearKernel reference_kernel(int dim) {
  const double n = dim;
  BilinearKernel k(
      "reference_n" + std::to_string(dim), dim,
      [n](std::span<const double> x, std::span<const double> y, std::span<const double> z) {
        return std::pow(1.0 + dist2(x, y) + dist2(x, z), -(n + 1.0));
      },
      std::pow(2.0, n), std::pow(2.0, n + 2.0) * (n + 1.0), std::pow(2.0, n + 1.0), std::nullopt, true);
  k.set_bounded(true);
  return k;
}

BilinearKernel singular_kernel(int dim) {
  const double n = dim;
  return BilinearKernel(
      "singular_n" + std::to_string(dim), dim,
      [n](std::span<const double> x, std::span<const double> y, std::span<const double> z) {
        const double q = dist2(x, y) + dist2(x, z);
        if (q == 0.0) throw DomainError("singular kernel evaluated on the diagonal");
        return std::pow(q, -n) / (1.0 + q);
      },
      std::pow(2.0, n), std::pow(2.0, n + 2.0) * (n + 1.0), std::pow(2.0, n + 1.0), std::nullopt, true);
}

double cutoff_phi1(double t) {
  if (t < 0.0 || std::isnan(t)) throw PreconditionError("phi1 is defined on [0, inf)");
  return smooth_step(2.0 - t);
}

CutoffSplit cutoff_split(double a) {
  if (!(a > 4.0)) throw PreconditionError("cutoff split needs A > 4");
  return CutoffSplit{a};
}

double CutoffSplit::phi3(double t) const {
  if (t < 0.0 || std::isnan(t)) throw PreconditionError("phi3 is defined on [0, inf)");
  return smooth_step(t - 0.5 * a);
}

double CutoffSplit::phi2(double t) const { return 1.0 - cutoff_phi1(t) - phi3(t); }

BilinearKernel truncate(const BilinearKernel& k, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw PreconditionError("truncation eta must be positive");
  BilinearKernel out(
      k.id() + "_eta" + std::to_string(eta), k.dim(),
      [k, eta](std::span<const double> x, std::span<const double> y, std::span<const double> z) {
        const double s = separation(x, y, z);
        const double keep = 1.0 - cutoff_phi1(2.0 * s / eta);
        return keep == 0.0 ? 0.0 : keep * k(x, y, z);
      },
      k.declared_size(), k.declared_regularity(), k.declared_decay(), eta, k.yz_symmetric());
  out.set_bounded(true);
  return out;
}

BilinearKernel truncation_remainder(const BilinearKernel& k, double eta) {
  if (!(eta > 0.0) || !std::isfinite(eta)) throw PreconditionError("truncation eta must be positive");
  return BilinearKernel(
      k.id() + "_rem" + std::to_string(eta), k.dim(),
      [k, eta](std::span<const double> x, std::span<const double> y, std::span<const double> z) {
        const double s = separation(x, y, z);
        const double cut = cutoff_phi1(2.0 * s / eta);
        return cut == 0.0 ? 0.0 : cut * k(x, y, z);
      },
      k.declared_size(), k.declared_regularity(), k.declared_decay(), eta, k.yz_symmetric());
}

BilinearKernel far_piece_kernel(int dim, double a) {
  const CutoffSplit split = cutoff_split(a);
  const double n = dim;
  BilinearKernel k(
      "far_piece_A" + std::to_string(a), dim,
      [split, n](std::span<const double> x, std::span<const double> y, std::span<const double> z) {
        const double s = separation(x, y, z);
        const double p = split.phi3(s);
        return p == 0.0 ? 0.0 : p / std::pow(s, 2.0 * n + 1.0);
      },
      2.0 / a, 4.0 + 4.0 * (2.0 * n + 1.0) / a, std::numeric_limits<double>::infinity(), std::nullopt, true);
  k.set_bounded(true);
  return k;
}

KernelVerification verify_bounds(const BilinearKernel& k, const SamplePlan& plan) {
  if (!(plan.s_min > 0.0)) throw PreconditionError("sample plan includes separation 0");
  if (!(plan.s_max >= plan.s_min)) throw PreconditionError("sample plan range is empty");
  if (plan.samples == 0) throw PreconditionError("sample plan has no samples");
  const int n = k.dim();
  const std::size_t n3 = 3 * static_cast<std::size_t>(n);

  // Draw every configuration up front so the result does not depend on threading.
  SplitMix64 rng(plan.seed);
  auto direction = [&](double* out) {
    double len = 0.0;
    do {
      len = 0.0;
      for (int a = 0; a < n; ++a) {
        const double u1 = std::max(rng.uniform(), 1e-300), u2 = rng.uniform();
        out[a] = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
        len += out[a] * out[a];
      }
    } while (len == 0.0);
    len = std::sqrt(len);
    for (int a = 0; a < n; ++a) out[a] /= len;
  };
  std::vector<double> configs(plan.samples * n3);
  std::vector<double> seps(plan.samples);
  const double l0 = std::log(plan.s_min), l1 = std::log(plan.s_max);
  for (std::size_t i = 0; i < plan.samples; ++i) {
    double* c = &configs[i * n3];
    const double s = std::exp(rng.uniform(l0, l1));
    const double lambda = rng.uniform();
    double dy[kMaxDim], dz[kMaxDim];
    direction(dy);
    direction(dz);
    for (int a = 0; a < n; ++a) {
      c[a] = rng.uniform(-1.0, 1.0);
      c[n + a] = c[a] - lambda * s * dy[a];
      c[2 * n + a] = c[a] - (1.0 - lambda) * s * dz[a];
    }
    std::span<const double> all(c, n3);
    seps[i] = separation(all.subspan(0, n), all.subspan(n, n), all.subspan(2 * n, n));
  }

  struct Measured {
    double size = 0.0, reg = 0.0, decay = -1.0;
  };
  std::vector<Measured> m(plan.samples);
  const double dn = n;
  parallel_for(plan.samples, [&](std::size_t i) {
    std::vector<double> c(configs.begin() + static_cast<long>(i * n3), configs.begin() + static_cast<long>((i + 1) * n3));
    auto eval = [&](const std::vector<double>& v) {
      std::span<const double> all(v);
      return k(all.subspan(0, n), all.subspan(n, n), all.subspan(2 * n, n));
    };
    const double s = seps[i];
    const double kv = std::abs(eval(c));
    m[i].size = kv * std::pow(s, 2.0 * dn);
    if (s > 1.0) m[i].decay = kv * std::pow(s, 2.0 * dn + 2.0);
    const double h = std::max(1e-4, 1e-3 * s);
    double block[3] = {0.0, 0.0, 0.0};
    for (std::size_t j = 0; j < n3; ++j) {
      const double keep = c[j];
      c[j] = keep + h;
      const double plus = eval(c);
      c[j] = keep - h;
      const double minus = eval(c);
      c[j] = keep;
      const double d = (plus - minus) / (2.0 * h);
      block[j / static_cast<std::size_t>(n)] += d * d;
    }
    const double g = std::sqrt(std::max({block[0], block[1], block[2]}));
    m[i].reg = g * std::pow(s, 2.0 * dn + 1.0);
  });

  KernelVerification out;
  out.kernel_id = k.id();
  out.seed = plan.seed;
  auto pick = [&](BoundMeasurement& b, double declared, auto field) {
    b.declared = declared;
    std::size_t arg = 0;
    bool any = false;
    for (std::size_t i = 0; i < plan.samples; ++i) {
      const double v = field(m[i]);
      if (v < 0.0) continue;
      ++b.samples;
      if (!any || v > b.measured) {
        b.measured = v;
        arg = i;
        any = true;
      }
    }
    if (any) {
      b.witness.assign(configs.begin() + static_cast<long>(arg * n3), configs.begin() + static_cast<long>((arg + 1) * n3));
      b.witness_s = seps[arg];
    }
    b.ok = b.measured <= declared * (1.0 + 1e-12);
  };
  pick(out.size, k.declared_size(), [](const Measured& v) { return v.size; });
  pick(out.regularity, k.declared_regularity(), [](const Measured& v) { return v.reg; });
  pick(out.decay, k.declared_decay(), [](const Measured& v) { return v.decay; });
  return out;
}

double decay_slope(const BilinearKernel& k, const std::vector<double>& separations) {
  const int n = k.dim();
  std::vector<double> lx, ly;
  for (double s : separations) {
    if (!(s > 0.0)) throw PreconditionError("separations must be positive");
    Point x(static_cast<std::size_t>(n), 0.0), y = x, z = x;
    y[0] = 0.5 * s;
    z[0] = 0.5 * s;
    const double v = std::abs(k(x, y, z));
    if (!(v > 0.0)) throw DomainError("kernel vanishes on the decay probe");
    lx.push_back(std::log(s));
    ly.push_back(std::log(v));
  }
  return regression_slope(lx, ly);
}

}  // namespace xmo
