#pragma once

// Absolutely continuous probability measures on the unit circle, the
// associated quadrature inner product, and Caratheodory functions.

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "orfkit/ratfun.hpp"

namespace orfkit {

using Evaluable = std::function<cplx(cplx)>;

enum class MeasureKind { Lebesgue, Poisson, Samples, Function };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::Lebesgue;
  cplx alpha{};                // Poisson only
  std::vector<double> theta;   // Samples only: uniform grid 2 pi j / M
  std::vector<double> w;
};

/// Density against d(theta)/2pi, normalized to unit mass. Immutable and
/// cheap to copy.
class CircleMeasure {
 public:
  static CircleMeasure lebesgue();
  static CircleMeasure poisson(cplx alpha);
  /// Trigonometric interpolant of strictly positive samples on a uniform grid.
  static CircleMeasure samples(std::vector<double> theta, std::vector<double> w);
  /// Arbitrary positive density; normalized with a uniform rule of grid points.
  static CircleMeasure from_function(std::function<double(double)> w, std::size_t grid, std::string label);

  double weight(double theta) const;
  /// Mass of the density as given, before normalization.
  double raw_mass() const { return raw_mass_; }
  MeasureKind kind() const { return kind_; }
  cplx alpha() const { return alpha_; }
  const std::string& label() const { return label_; }
  MeasureSpec spec() const;

 private:
  MeasureKind kind_ = MeasureKind::Lebesgue;
  cplx alpha_{};
  double raw_mass_ = 1.0;
  std::string label_ = "lebesgue";
  std::shared_ptr<const std::vector<cplx>> fourier_;  // samples: c_k for k = -K..K
  std::vector<double> sample_theta_, sample_w_;
  std::function<double(double)> density_;
};

CircleMeasure builtin_measure(const MeasureSpec& spec);

/// max(1024, 64 (n_max + 1)) rounded up to a power of two.
std::size_t default_grid_size(std::size_t n_max);

/// Uniform nodes t_j = exp(2 pi i j / N) with the weight sampled on them.
struct CircleGrid {
  std::vector<double> theta;
  std::vector<cplx> t;
  std::vector<double> w;  // density values; the rule weight is w_j / N

  std::size_t size() const { return t.size(); }
  std::vector<cplx> sample(const Evaluable& f) const;
};

CircleGrid make_grid(const CircleMeasure& mu, std::size_t n);

/// (1/N) sum_j f_j conj(g_j) w_j
cplx inner_product(const CircleGrid& grid, std::span<const cplx> f_vals, std::span<const cplx> g_vals);
cplx inner_product(const CircleMeasure& mu, const Evaluable& f, const Evaluable& g, std::size_t n);

/// Holomorphic map of the disk with positive real part, normalized at beta0.
class CaratheodoryFn {
 public:
  CaratheodoryFn(Evaluable f, cplx beta0, std::string label);
  static CaratheodoryFn constant_one(cplx beta0);

  cplx operator()(cplx z) const;
  cplx beta0() const { return beta0_; }
  const std::string& label() const { return label_; }

 private:
  Evaluable f_;
  cplx beta0_;
  std::string label_;
};

/// z -> integral of D(t, z) d mu(t). Inside |zeta_0(z)| <= 0.9 this is the
/// trapezoid rule applied to the kernel; closer to the circle the kernel is
/// expanded in powers of zeta_0(z) against quadrature moments. grid = 0
/// selects 2048 nodes.
CaratheodoryFn caratheodory_from_measure(const CircleMeasure& mu, cplx beta0, std::size_t grid);

/// Radial approach radius used by boundary recovery.
inline constexpr double kBoundaryApproach = 1.0 - 1e-6;

/// Density of the measure behind F against d(theta)/2pi:
/// Re F(r e^{i theta}) (1 - |beta0|^2) / |e^{i theta} - beta0|^2, with a
/// two-radius extrapolation r -> 1 from r = kBoundaryApproach.
double weight_from_caratheodory(const CaratheodoryFn& f, cplx beta0, double theta);

/// Value of a function holomorphic near `center` as its mean over a small
/// circle; used at removable singularities of quotients.
cplx circle_mean(const Evaluable& f, cplx center, double radius, int points = 16);

struct CaratheodoryDiagnostics {
  double min_real_part = 0.0;
  double anchor_error = 0.0;   // |F(beta0) - 1|
  double cauchy_riemann = 0.0; // max relative residual of centred differences
};

CaratheodoryDiagnostics diagnose(const CaratheodoryFn& f, std::span<const cplx> points);

}  // namespace orfkit
