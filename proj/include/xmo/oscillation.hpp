#pragma once

#include <functional>
#include <string>
#include <vector>

#include "xmo/cube.hpp"
#include "xmo/field.hpp"

namespace xmo {

/// Average of |f - f_Q| over Q on the midpoint grid used by cube_average.
double mean_oscillation(const Field& f, const Cube& q, int resolution);

/// Largest value over a scanned cube family with the cube that attains it.
/// Ties go to the lowest index so the witness does not depend on threading.
struct SupEstimate {
  double value = 0.0;
  std::size_t argmax = 0;
  std::size_t cube_count = 0;
};

/// Max of `measure(i)` for i in [0, count), evaluated in parallel.
SupEstimate parallel_sup(std::size_t count, const std::function<double(std::size_t)>& measure);

/// Lower bound for the BMO norm: max of the mean oscillation over `cubes`.
SupEstimate bmo_norm_estimate(const Field& f, const std::vector<Cube>& cubes, int resolution);

struct ProfileEntry {
  double parameter = 0.0;
  double value = 0.0;
  Cube argmax{Point{0.0}, 0.5};
  std::size_t cube_count = 0;
};

/// Sup of the mean oscillation per scan parameter.
struct OscillationProfile {
  std::string kind;
  int resolution = 0;
  std::vector<ProfileEntry> entries;

  std::vector<double> parameters() const;
  std::vector<double> values() const;
};

/// For each volume a (strictly decreasing), the max over `centers` of the
/// oscillation on the cube of volume a at that centre.
OscillationProfile small_scale_profile(const Field& f, const std::vector<double>& scales,
                                       const std::vector<Point>& centers, int resolution);

/// For each radius r (strictly increasing), the max over unit `directions`
/// of the oscillation on q + r * direction.
OscillationProfile translation_profile(const Field& f, const Cube& q, const std::vector<Point>& directions,
                                       const std::vector<double>& radii, int resolution);

/// As small_scale_profile with strictly increasing volumes.
OscillationProfile large_scale_profile(const Field& f, const std::vector<double>& scales,
                                       const std::vector<Point>& centers, int resolution);

/// For each R (strictly increasing), the max over probes(R) of the oscillation.
/// Every probe must be disjoint from the closed cube Q(0, R).
OscillationProfile annulus_profile(const Field& f, const std::vector<double>& radii,
                                   const std::function<std::vector<Cube>(double)>& probes, int resolution);

/// Probes just outside Q(0, R): cubes of sides 1, 10 and R beyond R along each
/// coordinate direction, and the logarithmic cube [e^k, e^{k+1}] with the
/// least k such that e^k > R.
std::vector<Cube> default_annulus_probes(int dim, double radius);

/// Lattice points with the given spacing covering [-extent, extent]^dim.
std::vector<Point> lattice_centers(int dim, double extent, double spacing);

/// The unit vectors +-e_i.
std::vector<Point> axis_directions(int dim);

struct ScanConfig {
  int dim = 1;
  double tolerance = 1e-2;
  double extent = 50.0;              // centres cover [-extent, extent]^n
  double center_spacing = 0.5;
  int resolution = 0;                // 0: default_resolution(dim)
  int large_resolution = 0;          // 0: 8192 for n = 1, 256 for n = 2
  std::vector<double> small_scales{1.0, 0.25, 1.0 / 16, 1.0 / 64, 1.0 / 256};
  std::vector<double> translation_half_sides{0.5, 1.5707963267948966};
  std::vector<double> translation_radii{10.0, 100.0, 1000.0};
  std::vector<double> large_scales{10.0, 100.0, 1000.0};
  std::vector<double> annulus_radii{10.0, 100.0, 1000.0};

  /// Defaults tuned per dimension (smaller lattices for n >= 2).
  static ScanConfig defaults(int dim);
};

/// Finite-scan evidence for membership in VMO, XMO and CMO. Each flag means
/// the profile was below tolerance at the finest or farthest scanned
/// parameter. This is a numerical diagnostic, not a proof of membership.
struct Diagnosis {
  bool vmo_smallscale_ok = false;
  bool xmo_translation_ok = false;
  bool cmo_largescale_ok = false;
  OscillationProfile small_scale;
  OscillationProfile translation;
  OscillationProfile large_scale;
  /// Recorded for inspection only; no conclusion is drawn from it.
  OscillationProfile annulus;
  ScanConfig config;
};

Diagnosis classify(const Field& f, const ScanConfig& config);

}  // namespace xmo
