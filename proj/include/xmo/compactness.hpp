#pragma once

#include <string>
#include <vector>

#include "xmo/kernels.hpp"
#include "xmo/operators.hpp"
#include "xmo/sampled.hpp"
#include "xmo/weights.hpp"

namespace xmo {

struct InputPair {
  SupportedFunction f;
  SupportedFunction g;
};

/// Finite family of commutator outputs sampled on a common grid.
struct CommutatorFamily {
  UniformGrid grid;
  std::vector<OperatorOutput> outputs;
  std::vector<double> norms_f, norms_g;  // weighted input norms
  std::vector<SampledFunction> sampled() const;
};

/// [b, K_eta]_1 applied to every pair at the grid nodes. Each pair must have
/// ||f||_{L^p1_w1} <= 1 and ||g||_{L^p2_w2} <= 1; K must be truncated.
CommutatorFamily commutator_family(const Field& b, const BilinearKernel& k_eta, const std::vector<InputPair>& pairs,
                                   const VectorWeight& vw, const UniformGrid& grid, int resolution = 0);

/// Rescales f to unit L^p_w norm over its support box (zero stays zero).
SupportedFunction normalized(const SupportedFunction& f, const Field& w, double p, int resolution = 0);

struct FkTolerances {
  double bound_cap = 1e3;
  double tail = 1e-2;     // relative to bounded_sup
  double modulus = 1e-2;  // relative to bounded_sup
};

struct CurvePoint {
  double parameter = 0.0;
  double value = 0.0;
};

/// Measurements for the three Frechet-Kolmogorov conditions on a finite family.
struct CompactnessReport {
  std::size_t members = 0;
  double bounded_sup = 0.0;
  std::vector<CurvePoint> tail_norms;  // A -> sup ||F||_{L^p_w(|x| > A)}
  std::vector<CurvePoint> modulus;     // |t| -> sup ||F(. + t) - F||_{L^p_w}
  bool bounded_ok = false;
  bool tail_ok = false;
  bool modulus_ok = false;
  FkTolerances tolerances;
  bool passed() const { return bounded_ok && tail_ok && modulus_ok; }
};

/// Norms are grid sums over the family's grid. Translates are compared only
/// at nodes whose shifted point stays inside the grid.
CompactnessReport fk_check(const std::vector<SampledFunction>& family, const Field& w, double p,
                           const std::vector<double>& a_list, const std::vector<Point>& t_list,
                           const FkTolerances& tol = {});

/// L1, L2, L3 of the tail split with |grad b| bounded by G12 on |xi| >= A/2 - 1
/// and by G3 everywhere; `commutator` holds [b, K_eta]_1(f, g) at the same nodes.
struct TailProfiles {
  double a = 0.0;
  std::vector<Point> xs;
  std::vector<double> l1, l2, l3, commutator;
  double g12 = 0.0, g3 = 0.0;
};

TailProfiles tail_decomposition(const Field& b, const BilinearKernel& k_eta, const SupportedFunction& f,
                                const SupportedFunction& g, double a, const std::vector<Point>& xs,
                                int resolution = 0);

struct TranslationEntry {
  double t_norm = 0.0;
  double sup_l4 = 0.0;
  double sup_l5 = 0.0;
};

struct TranslationProfiles {
  std::vector<TranslationEntry> entries;
  double slope_l4 = 0.0;  // log sup L4 against log |t|, over t != 0
  double slope_l5 = 0.0;
};

/// L4(x) = [b(x) - b(x + t)] T_eta(f, g)(x) and
/// L5(x) = int int [b(x + t) - b(y)] [K_eta(x, y, z) - K_eta(x + t, y, z)] f(y) g(z).
/// Requires |t| < eta / 8.
TranslationProfiles translation_continuity(const Field& b, const BilinearKernel& k_eta, const SupportedFunction& f,
                                           const SupportedFunction& g, const std::vector<Point>& ts,
                                           const std::vector<Point>& xs, int resolution = 0);

/// Largest |K_eta(x, y, z)| and |K_eta(x + t, y, z)| over random
/// configurations with s < eta / 4 and |t| < eta / 8.
double plateau_vanishing(const BilinearKernel& k_eta, std::size_t samples, std::uint64_t seed);

}  // namespace xmo
