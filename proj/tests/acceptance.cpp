#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "xmo/approximation.hpp"
#include "xmo/catalog.hpp"
#include "xmo/compactness.hpp"
#include "xmo/kernels.hpp"
#include "xmo/operators.hpp"
#include "xmo/oscillation.hpp"
#include "xmo/quadrature.hpp"
#include "xmo/weights.hpp"

using namespace xmo;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;

// Pinned tolerances and runtime limits (seconds).
constexpr double kTolSine = 1e-3;
constexpr double kTolLog = 1e-3;
constexpr double kTolLower = 1e-3;
constexpr double kMaxErrorConstant = 10.0;
constexpr double kDecayEnd = 1e-2;
constexpr double kSlopeTol = 0.05;
constexpr double kRegRatio = 1.5;
constexpr double kGapSlopeTol = 0.2;
constexpr double kGapRatio = 2.0;
constexpr double kL4SlopeTol = 0.2;
constexpr double kL5SlopeTol = 0.3;
constexpr double kOracleTol = 1e-3;

struct Outcome {
  bool pass = true;
  std::string detail;
};

class Clock {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void run(const char* id, const char* title, double limit, const std::function<Outcome()>& body) {
  const Clock clock;
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double t = clock.seconds();
  const bool in_time = t < limit;
  const bool pass = o.pass && in_time;
  if (!pass) ++failures;
  std::printf("[%s] %s %s: %s; %.2f s (limit %.0f s%s)\n", pass ? "PASS" : "FAIL", id, title, o.detail.c_str(), t,
              limit, in_time ? "" : ", exceeded");
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

std::string join(const std::vector<double>& v, const char* f = "%.4g") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt(f, v[i]);
  return s;
}

// Independent brute-force midpoint rules, m points per axis.
double brute_mean_1d(const std::function<double(double)>& g, double lo, double hi, int m) {
  double s = 0.0;
  for (int i = 0; i < m; ++i) s += g(lo + (i + 0.5) * (hi - lo) / m);
  return s / m;
}

double brute_mean_2d(const std::function<double(double, double)>& g, const Cube& q, int m) {
  double s = 0.0;
  const double h = q.side() / m;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) s += g(q.lo(0) + (i + 0.5) * h, q.lo(1) + (j + 0.5) * h);
  return s / (static_cast<double>(m) * m);
}

double at(const Field& f, double x) { return f(std::vector<double>{x}); }

double relative(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

Outcome ac1() {
  const Field s = catalog::sin_product(1);
  std::vector<double> v;
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    v.push_back(mean_oscillation(s, Cube({2.0 * k * kPi}, kPi / 2.0), default_resolution(1)));
    ok = ok && std::abs(v.back() - 2.0 / kPi) <= kTolSine;
  }
  return {ok, "O(sin; I_k) = " + join(v, "%.6f") + " vs 2/pi = " + fmt("%.6f", 2.0 / kPi)};
}

Outcome ac2() {
  const Field l = catalog::log_abs(1);
  const double osc = 2.0 / (kE - 1.0) * (std::exp(1.0 / (kE - 1.0)) - kE / (kE - 1.0));
  std::vector<double> avg, os;
  bool ok = true;
  for (int k = 1; k <= 3; ++k) {
    const Cube q = Cube::from_corner({std::exp(k)}, std::exp(k + 1) - std::exp(k));
    avg.push_back(cube_average(l, q, default_resolution(1)));
    os.push_back(mean_oscillation(l, q, default_resolution(1)));
    ok = ok && std::abs(avg.back() - (k + 1.0 / (kE - 1.0))) <= kTolLog && std::abs(os.back() - osc) <= kTolLog;
  }
  return {ok, "averages " + join(avg, "%.6f") + ", oscillations " + join(os, "%.6f") + " vs " + fmt("%.6f", osc)};
}

Outcome ac3() {
  // |g'| < 4 / pi^2 on I_1 for every member.
  const std::vector<std::pair<std::string, std::function<double(double)>>> suite{
      {"0", [](double) { return 0.0; }},
      {"3", [](double) { return 3.0; }},
      {"x/1000", [](double x) { return x / 1000.0; }},
      {"0.3 sin", [](double x) { return 0.3 * std::sin(x); }},
      {"0.4(x-2pi)", [](double x) { return 0.4 * (x - 2.0 * kPi); }},
  };
  const Cube q({2.0 * kPi}, kPi / 2.0);
  const double bound = 1.0 / (2.0 * kPi) - kTolLower;
  std::vector<double> v;
  bool ok = true;
  for (const auto& [name, g] : suite) {
    const Field d(1, [g](std::span<const double> x) { return std::sin(x[0]) - g(x[0]); }, "sin - " + name);
    v.push_back(mean_oscillation(d, q, default_resolution(1)));
    ok = ok && v.back() >= bound;
  }
  return {ok, "O(sin - g; I_1) = " + join(v, "%.5f") + " vs 1/(2pi) - 1e-3 = " + fmt("%.5f", bound)};
}

Outcome ac4() {
  const Diagnosis s = classify(catalog::sin_product(1), ScanConfig::defaults(1));
  const Diagnosis l = classify(catalog::smoothed_log(1), ScanConfig::defaults(1));
  const Diagnosis b = classify(catalog::bump({0.0}, 1.0), ScanConfig::defaults(1));
  auto flags = [](const Diagnosis& d) {
    return std::string(d.vmo_smallscale_ok ? "1" : "0") + (d.xmo_translation_ok ? "1" : "0") +
           (d.cmo_largescale_ok ? "1" : "0");
  };
  const bool ok = s.vmo_smallscale_ok && !s.xmo_translation_ok && l.vmo_smallscale_ok && l.xmo_translation_ok &&
                  !l.cmo_largescale_ok && b.vmo_smallscale_ok && b.xmo_translation_ok && b.cmo_largescale_ok;
  return {ok, "vmo/xmo/cmo flags: sin " + flags(s) + ", smoothed log " + flags(l) + ", bump " + flags(b)};
}

Outcome ac5() {
  const Field f = catalog::smoothed_log(1);
  std::string detail;
  double c = 0.0;
  bool gaps_ok = true;
  for (double eps : {0.5, 0.25}) {
    const ThresholdSchedule s = select_thresholds(f, eps, ThresholdScanConfig{}, 6);
    const DyadicApproximation a = project_simple(f, build_family(s, 1), default_resolution(1));
    const JumpReport jump = adjacency_jump(a);
    const double gap = mollification_gap(mollify(a), gap_points(a, 256.0));
    const SupEstimate err = approximation_error(f, a, false, regime_family(a), default_resolution(1));
    c = std::max(c, err.value / eps);
    gaps_ok = gaps_ok && gap <= jump.value;
    detail += fmt("eps=%g: ", eps) + fmt("error %.4g", err.value) + fmt(" (C=%.3f)", err.value / eps) +
              fmt(", gap %.4g", gap) + fmt(" <= jump %.4g; ", jump.value);
  }
  return {c <= kMaxErrorConstant && gaps_ok, detail + fmt("C = %.3f", c) + fmt(" <= %g", kMaxErrorConstant)};
}

Outcome ac6() {
  const Field f = catalog::smoothed_log(1);
  ThresholdScanConfig cfg;
  cfg.extent = 40000.0;
  const ThresholdSchedule s = select_thresholds(f, 0.125, cfg, 6);
  const DyadicApproximation a = project_simple(f, build_family(s, 1), default_resolution(1));
  const MollifiedApproximation h = mollify(a);
  bool ok = true;
  std::string detail = "eps=0.125";
  for (int order : {1, 2}) {
    std::vector<double> v;
    for (const DecayEntry& e : derivative_decay(h, MultiIndex{{order}}, {10.0, 100.0, 1000.0})) v.push_back(e.value);
    for (std::size_t i = 1; i < v.size(); ++i) ok = ok && v[i] <= v[i - 1];
    ok = ok && v.back() < kDecayEnd;
    detail += "; |D^" + std::to_string(order) + " h| at r=10,100,1000: " + join(v);
  }
  return {ok, detail + fmt("; end bound %g", kDecayEnd)};
}

Outcome ac7() {
  const SamplePlan plan;
  const KernelVerification v = verify_bounds(reference_kernel(1), plan);
  const double slope = decay_slope(reference_kernel(1), {10.0, 20.0, 40.0, 100.0, 1000.0});
  std::vector<double> reg;
  for (double eta : {1.0, 0.5, 0.25}) reg.push_back(verify_bounds(truncate(reference_kernel(1), eta), plan).regularity.measured);
  const double ratio = *std::max_element(reg.begin(), reg.end()) / *std::min_element(reg.begin(), reg.end());
  const bool ok = v.passed() && std::abs(slope + 4.0) <= kSlopeTol && ratio <= kRegRatio;
  return {ok, std::string("bounds ") + (v.passed() ? "pass" : "fail") + fmt(", decay slope %.4f", slope) +
                  ", truncated regularity " + join(reg) + fmt(" (ratio %.3f)", ratio)};
}

Outcome ac8() {
  const Cube sup = Cube::from_corner({1.0}, 1.0);
  const SupportedFunction f{catalog::indicator(sup), sup};
  std::vector<Point> xs;
  for (int i = 0; i <= 40; ++i) xs.push_back({0.5 + 0.05 * i});
  const TruncationGapReport r =
      truncation_gap(catalog::smoothed_log(1), singular_kernel(1), {0.5, 0.25, 0.125}, f, f, xs);
  std::vector<double> cs;
  for (const GapEntry& e : r.entries) cs.push_back(e.constant);
  const bool ok = std::abs(r.slope - 1.0) <= kGapSlopeTol && r.constant_ratio <= kGapRatio;
  return {ok, fmt("slope %.4f", r.slope) + ", C per eta " + join(cs) + fmt(" (ratio %.3f)", r.constant_ratio)};
}

Outcome ac9() {
  const BilinearKernel k = truncate(singular_kernel(1), 0.25);
  const SupportedFunction f{catalog::bump({0.0}, 1.0), Cube({0.0}, 1.0)};
  const SupportedFunction g{catalog::bump({0.5}, 1.0), Cube({0.5}, 1.0)};
  std::vector<Point> xs;
  for (int i = 0; i <= 120; ++i) xs.push_back({-3.0 + 0.05 * i});
  std::vector<Point> ts;
  for (double t : {1.0 / 64, 1.0 / 128, 1.0 / 256, 1.0 / 512}) ts.push_back({t});
  const TranslationProfiles p = translation_continuity(catalog::smoothed_log(1), k, f, g, ts, xs);
  const bool ok = std::abs(p.slope_l4 - 1.0) <= kL4SlopeTol && std::abs(p.slope_l5 - 2.0) <= kL5SlopeTol;
  return {ok, fmt("L4 slope %.4f (target 1 +- 0.2)", p.slope_l4) + fmt(", L5 slope %.4f (target 2 +- 0.3)", p.slope_l5)};
}

Outcome ac10() {
  const Field one = catalog::constant(1, 1.0);
  const std::vector<double> as{5.0, 10.0, 20.0};
  const std::vector<Point> ts{{0.04}, {0.02}, {0.01}};
  const UniformGrid grid{{-40.0}, 0.01, {8000}};

  const std::vector<SampledFunction> zero{SampledFunction(grid, std::vector<double>(grid.size(), 0.0))};
  const CompactnessReport rz = fk_check(zero, one, 2.0, as, ts);

  std::vector<SampledFunction> far;
  for (double c : {0.0, 10.0, 20.0, 30.0}) far.push_back(SampledFunction::sample(catalog::bump({c}, 1.0), grid));
  const CompactnessReport rf = fk_check(far, one, 2.0, as, ts);

  const VectorWeight vw(one, one, 4.0, 4.0);
  const double centers[8] = {-3.5, -2.0, -1.0, 0.0, 0.5, 1.5, 2.5, 4.0};
  const double radii[8] = {0.5, 1.0, 2.0, 1.5, 0.75, 2.0, 1.0, 0.5};
  std::vector<InputPair> pairs;
  for (int i = 0; i < 8; ++i) {
    const SupportedFunction a{catalog::bump({centers[i]}, radii[i]), Cube({centers[i]}, radii[i])};
    const double cz = centers[(i + 3) % 8], rz2 = radii[(i + 5) % 8];
    const SupportedFunction b{catalog::bump({cz}, rz2), Cube({cz}, rz2)};
    pairs.push_back({normalized(a, vw.w1(), vw.p1()), normalized(b, vw.w2(), vw.p2())});
  }
  const BilinearKernel k = truncate(singular_kernel(1), 0.25);
  const CommutatorFamily fam = commutator_family(catalog::smoothed_log(1), k, pairs, vw, grid);
  const CompactnessReport rc = fk_check(fam.sampled(), one, 2.0, as, ts);

  const bool ok = rz.passed() && !rf.tail_ok && rc.passed();
  std::string detail = std::string("zero family ") + (rz.passed() ? "passes" : "fails") + ", far translates " +
                       (rf.tail_ok ? "pass" : "fail") + " the tail condition; commutator family: bounded " +
                       fmt("%.4g", rc.bounded_sup) + fmt(", tail(A=20) %.3g", rc.tail_norms.back().value) +
                       fmt(", modulus(|t|=0.01) %.3g", rc.modulus.back().value) +
                       fmt(" vs tolerance %.3g", rc.tolerances.modulus * rc.bounded_sup) + " [bounded " +
                       (rc.bounded_ok ? "ok" : "fails") + ", tail " + (rc.tail_ok ? "ok" : "fails") + ", modulus " +
                       (rc.modulus_ok ? "ok" : "fails") + "]";
  return {ok, detail};
}

Outcome ac11() {
  const int r1 = default_resolution(1), r2 = default_resolution(2);
  std::vector<double> errs;
  std::vector<std::string> names;
  auto record = [&](const std::string& name, double lib, double brute) {
    errs.push_back(relative(lib, brute));
    names.push_back(name);
  };

  // Cube averages and integrals.
  const Field sl = catalog::smoothed_log(1);
  const Cube q1({3.0}, 2.0);
  record("cube average", cube_average(sl, q1, r1), brute_mean_1d([&](double x) { return at(sl, x); }, q1.lo(0), q1.hi(0), 4 * r1));
  const Field b2 = catalog::bump({0.2, -0.1}, 0.9);
  const Cube q2({0.0, 0.0}, 0.8);
  record("integral 2d", integrate(b2, q2, r2),
         q2.volume() * brute_mean_2d([&](double x, double y) { return b2(std::vector<double>{x, y}); }, q2, 4 * r2));

  // Mean oscillation.
  const Field s = catalog::sin_product(1);
  const Cube q3({1.0}, 1.2);
  const auto sv = [&](double x) { return at(s, x); };
  const double m = brute_mean_1d(sv, q3.lo(0), q3.hi(0), 4 * r1);
  record("mean oscillation", mean_oscillation(s, q3, r1),
         brute_mean_1d([&](double x) { return std::abs(sv(x) - m); }, q3.lo(0), q3.hi(0), 4 * r1));

  // T and the commutator.
  const SupportedFunction f{catalog::bump({0.0}, 1.0), Cube({0.0}, 1.0)};
  const SupportedFunction g{catalog::bump({0.5}, 1.0), Cube({0.5}, 1.0)};
  const std::vector<Point> xs{{-1.0}, {0.3}, {2.0}};
  const BilinearKernel kr = reference_kernel(1);
  const BilinearKernel kt = truncate(singular_kernel(1), 0.25);
  const OperatorOutput tv = apply_T(kr, f, g, xs);
  const OperatorOutput cv = commutator(1, sl, kt, f, g, xs, 0, false);
  // Double midpoint sum of term(y, z) f(y) g(z) at m points per axis.
  auto brute_pair = [&](const std::function<double(const std::vector<double>&, const std::vector<double>&)>& term,
                        int m) {
    double sum = 0.0;
    const double hy = f.support.side() / m, hz = g.support.side() / m;
    std::vector<double> y(1), z(1);
    for (int a = 0; a < m; ++a) {
      y[0] = f.support.lo(0) + (a + 0.5) * hy;
      const double fy = at(f.field, y[0]);
      for (int c = 0; c < m; ++c) {
        z[0] = g.support.lo(0) + (c + 0.5) * hz;
        sum += term(y, z) * fy * at(g.field, z[0]) * hy * hz;
      }
    }
    return sum;
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Point& x = xs[i];
    const double bx = at(sl, x[0]);
    record("T at x=" + fmt("%g", x[0]), tv.values[i],
           brute_pair([&](const auto& y, const auto& z) { return kr(x, y, z); }, 4 * tv.resolution));
    record("commutator at x=" + fmt("%g", x[0]), cv.values[i],
           brute_pair([&](const auto& y, const auto& z) { return (bx - at(sl, y[0])) * kt(x, y, z); },
                      4 * cv.resolution));
  }

  // Weighted norm and the vector weight constant.
  const Field w = catalog::power_weight(1, 0.5);
  const Cube q4({0.0}, 1.0);
  record("weighted norm", weighted_lp_norm(f.field, w, 3.0, q4, r1),
         std::cbrt(q4.volume() * brute_mean_1d([&](double x) { return std::pow(std::abs(at(f.field, x)), 3.0) * at(w, x); },
                                               q4.lo(0), q4.hi(0), 4 * r1)));
  const Field w2 = catalog::power_weight(1, -0.3);
  const VectorWeight vw(w, w2, 3.0, 5.0);
  const Cube q5({0.4}, 1.5);
  const double p = vw.p(), c1 = conjugate(3.0), c2 = conjugate(5.0);
  const double aw = brute_mean_1d(
      [&](double x) { return std::pow(at(w, x), p / 3.0) * std::pow(at(w2, x), p / 5.0); }, q5.lo(0), q5.hi(0), 4 * r1);
  const double a1 = brute_mean_1d([&](double x) { return std::pow(at(w, x), 1.0 - c1); }, q5.lo(0), q5.hi(0), 4 * r1);
  const double a2 = brute_mean_1d([&](double x) { return std::pow(at(w2, x), 1.0 - c2); }, q5.lo(0), q5.hi(0), 4 * r1);
  record("vector weight constant", vector_ap_constant(vw, {q5}, r1).value, aw * std::pow(a1, p / c1) * std::pow(a2, p / c2));

  // Bilinear maximal function over the dyadic scan.
  const std::vector<double> x0{0.3};
  const auto cubes = dyadic_scan(x0);
  double best = 0.0;
  for (const Cube& q : cubes) {
    const double af = brute_mean_1d([&](double x) { return std::abs(at(f.field, x)); }, q.lo(0), q.hi(0), 4 * r1);
    const double ag = brute_mean_1d([&](double x) { return std::abs(at(sl, x)); }, q.lo(0), q.hi(0), 4 * r1);
    best = std::max(best, af * ag);
  }
  record("bilinear maximal", bilinear_maximal(f.field, sl, x0, cubes, r1).value, best);

  const auto worst = std::max_element(errs.begin(), errs.end());
  std::string detail;
  for (std::size_t i = 0; i < errs.size(); ++i) detail += names[i] + fmt(" %.2g, ", errs[i]);
  return {*worst <= kOracleTol, detail + "largest " + names[static_cast<std::size_t>(worst - errs.begin())] +
                                    fmt(" %.3g", *worst) + fmt(" (tolerance %g)", kOracleTol)};
}

}  // namespace

int main() {
  set_thread_count(static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
  run("AC1", "sine oscillation constant", 1.0, ac1);
  run("AC2", "logarithm averages and oscillation", 1.0, ac2);
  run("AC3", "distance from sine to slowly varying functions", 1.0, ac3);
  run("AC4", "classifier separation", 30.0, ac4);
  run("AC5", "approximation pipeline", 120.0, ac5);
  run("AC6", "derivative decay of the mollified approximation", 60.0, ac6);
  run("AC7", "kernel bound suite", 30.0, ac7);
  run("AC8", "truncation gap scaling", 300.0, ac8);
  run("AC9", "translation pieces scaling", 300.0, ac9);
  run("AC10", "compactness harness", 600.0, ac10);
  run("AC11", "quadrature against brute force", 300.0, ac11);
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
