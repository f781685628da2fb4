#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xmo/common.hpp"

namespace xmo {

/// Separation s = |x - y| + |x - z|.
double separation(std::span<const double> x, std::span<const double> y, std::span<const double> z);

/// Bilinear kernel K(x, y, z) on R^n x R^n x R^n with declared constants for
///   |K| <= C_size s^{-2n},  |grad K| <= C_reg s^{-2n-1},  |K| <= C_decay s^{-2n-2} (s > 1).
class BilinearKernel {
 public:
  using Eval = std::function<double(std::span<const double>, std::span<const double>, std::span<const double>)>;

  BilinearKernel(std::string id, int dim, Eval eval, double size_c, double reg_c, double decay_c,
                 std::optional<double> eta = std::nullopt, bool yz_symmetric = false);

  double operator()(std::span<const double> x, std::span<const double> y, std::span<const double> z) const {
    return eval_(x, y, z);
  }

  const std::string& id() const { return id_; }
  int dim() const { return dim_; }
  double declared_size() const { return size_c_; }
  double declared_regularity() const { return reg_c_; }
  double declared_decay() const { return decay_c_; }
  std::optional<double> eta() const { return eta_; }
  bool yz_symmetric() const { return yz_symmetric_; }
  /// True when K is bounded near s = 0 (truncated, or smooth like the reference kernel).
  bool bounded() const { return bounded_; }
  void set_bounded(bool b) { bounded_ = b; }

 private:
  std::string id_;
  int dim_;
  Eval eval_;
  double size_c_, reg_c_, decay_c_;
  std::optional<double> eta_;
  bool yz_symmetric_;
  bool bounded_ = false;
};

/// (1 + |x-y|^2 + |x-z|^2)^{-(n+1)}: smooth, bounded, symmetric in (y, z).
BilinearKernel reference_kernel(int dim);

/// (|x-y|^2 + |x-z|^2)^{-n} (1 + |x-y|^2 + |x-z|^2)^{-1}: singular on the
/// diagonal with the standard size, regularity and decay bounds.
BilinearKernel singular_kernel(int dim);

/// 1 on [0, 1], 0 on [2, inf), S(2 - t) in between with
/// S(u) = sigma(u) / (sigma(u) + sigma(1 - u)), sigma(u) = exp(-1/u).
double cutoff_phi1(double t);

/// The split 1 - phi1 = phi2 + phi3 with phi3(t) = S(t - A/2).
struct CutoffSplit {
  double a = 0.0;
  double phi2(double t) const;
  double phi3(double t) const;
};
CutoffSplit cutoff_split(double a);

/// K_eta = K (1 - phi1(2 s / eta)).
BilinearKernel truncate(const BilinearKernel& k, double eta);

/// K phi1(2 s / eta) = K - K_eta, supported on s <= eta.
BilinearKernel truncation_remainder(const BilinearKernel& k, double eta);

/// phi3(s) / s^{2n+1}, the far piece of the split.
BilinearKernel far_piece_kernel(int dim, double a);

struct SamplePlan {
  std::size_t samples = 20000;
  double s_min = 1e-3;
  double s_max = 1e3;
  std::uint64_t seed = 0x5eed;
};

struct BoundMeasurement {
  double measured = 0.0;   // sup of the normalised quantity
  double declared = 0.0;
  bool ok = false;         // measured <= declared (up to rounding)
  std::vector<double> witness;  // x, y, z concatenated
  double witness_s = 0.0;
  std::size_t samples = 0;
};

struct KernelVerification {
  std::string kernel_id;
  std::uint64_t seed = 0;
  BoundMeasurement size;        // |K| s^{2n}
  BoundMeasurement regularity;  // |grad K| s^{2n+1}, finite differences
  BoundMeasurement decay;       // |K| s^{2n+2} over s > 1
  bool passed() const { return size.ok && regularity.ok && decay.ok; }
};

/// Samples separations log-uniformly in [s_min, s_max] with random splits
/// and directions, measuring the three normalised suprema. The gradient is
/// taken in all 3n variables by central differences with step
/// max(1e-4, 1e-3 s).
KernelVerification verify_bounds(const BilinearKernel& k, const SamplePlan& plan);

/// Log-log slope of K along collinear configurations (y, z on the same side
/// of x, split evenly) over the given separations.
double decay_slope(const BilinearKernel& k, const std::vector<double>& separations);

}  // namespace xmo
