#pragma once

#include <vector>

#include "xmo/cube.hpp"
#include "xmo/field.hpp"
#include "xmo/sampled.hpp"

namespace xmo {

/// w = (w1, w2) with exponents p1, p2 in (1, 16] and 1/p = 1/p1 + 1/p2.
class VectorWeight {
 public:
  VectorWeight(Field w1, Field w2, double p1, double p2);

  const Field& w1() const { return w1_; }
  const Field& w2() const { return w2_; }
  double p1() const { return p1_; }
  double p2() const { return p2_; }
  double p() const { return p_; }
  /// w1^{p/p1} w2^{p/p2}.
  Field combined() const;

 private:
  Field w1_, w2_;
  double p1_, p2_, p_;
};

/// Conjugate exponent p' = p / (p - 1).
double conjugate(double p);

struct WeightConstant {
  double value = 0.0;
  Cube argmax{Point{0.0}, 0.5};
  std::size_t cubes = 0;
};

/// Max over `cubes` of avg(w) * avg(w1^{1-p1'})^{p/p1'} * avg(w2^{1-p2'})^{p/p2'}.
/// A nonpositive weight sample is a PreconditionError.
WeightConstant vector_ap_constant(const VectorWeight& vw, const std::vector<Cube>& cubes, int resolution = 0);

/// Max over `cubes` of avg(w) * avg(w^{1-p'})^{p-1}.
WeightConstant scalar_ap_constant(const Field& w, double p, const std::vector<Cube>& cubes, int resolution = 0);

/// Cubes of side 2 * extent * 2^{-j}, j = 0..levels-1, centred on a lattice
/// of half-side spacing inside Q(0, extent).
std::vector<Cube> weight_scan_family(int dim, double extent, int levels = 6);

/// (int_region |h|^p w)^{1/p} by midpoint quadrature.
double weighted_lp_norm(const Field& h, const Field& w, double p, const Cube& region, int resolution = 0);

/// The same norm of a grid function: cell sums over grid nodes where
/// `keep(x)` holds (all nodes when empty).
double weighted_lp_norm(const SampledFunction& h, const Field& w, double p,
                        const std::function<bool(std::span<const double>)>& keep = {});

}  // namespace xmo
