#pragma once

// Orthogonal rational functions on the unit circle, their functions of the
// second kind, para-orthogonal companions and the identities tying them to
// the Caratheodory function of the measure.

#include <optional>
#include <vector>

#include "orfkit/measure.hpp"
#include "orfkit/ratfun.hpp"

namespace orfkit {

enum class Normalization { Orthonormal, General };
enum class SystemSource { Measure, Parameters };

/// One rung of the ladder {phi_n, phi_n^*, psi_n, psi_n^*} with the
/// recurrence data that produced it from rung n - 1.
struct OrfLevel {
  std::size_t n = 0;
  RatFun phi, phi_star, psi, psi_star;
  std::optional<cplx> lambda;  // absent at n = 0
  std::optional<double> e;     // absent at n = 0
  cplx rho{1.0, 0.0};
  double d = 2.0;              // determinant constant
};

struct OrfSystem {
  PoleSequence poles;
  std::vector<OrfLevel> levels;
  Normalization normalization = Normalization::Orthonormal;
  SystemSource source = SystemSource::Parameters;
  std::optional<CircleMeasure> measure;

  std::size_t n_max() const { return levels.size() - 1; }
  const OrfLevel& operator[](std::size_t n) const { return levels.at(n); }
};

struct ParaPair {
  std::size_t n = 0;
  cplx tau{1.0, 0.0};
  RatFun Phi;  // phi_n + tau phi_n^*
  RatFun Psi;  // psi_n - tau psi_n^*
};

/// Fitted (lambda_n, e_n, rho_n) together with the fit residual.
struct RecurrenceParams {
  cplx lambda;
  double e = 0.0;
  cplx rho{1.0, 0.0};
  double residual = 0.0;
};

inline constexpr double kTolOrtho = 1e-9;
inline constexpr double kDefaultPoleCap = 0.9;

/// Orthonormal phi_0..phi_{n_max} by modified Gram-Schmidt of B_0..B_{n_max},
/// phased so that phi_n^*(beta_n) > 0. Second-kind functions come from the
/// integral definition and recurrence data from a least-squares fit.
OrfSystem gram_schmidt_orf(const CircleMeasure& mu, const PoleSequence& poles, std::size_t n_max,
                           std::size_t grid = 0);

/// Level n from level n - 1 through the 2x2 recurrence with orthonormal e_n.
OrfLevel recurrence_step(const OrfLevel& prev, cplx lambda, cplx rho, const PoleSequence& poles, std::size_t n);

/// Favard direction: iterate recurrence_step from phi_0 = psi_0 = phi0 with rho_n = 1.
OrfSystem synthesize(const std::vector<cplx>& lambdas, const PoleSequence& poles, cplx phi0 = 1.0);

/// Least-squares inversion of the phi row of the recurrence between levels.
RecurrenceParams fit_recurrence(const RatFun& phi_prev, const RatFun& phi_prev_star, const RatFun& phi_n);
RecurrenceParams extract_parameters(const OrfSystem& system, std::size_t n);

/// psi_n from its integral definition, sampled at n + 1 nodes of radius 0.6
/// and reconstructed as an element of L_n.
RatFun second_kind_integral(const CircleMeasure& mu, const OrfSystem& system, std::size_t n, std::size_t grid = 0);

/// Residual of the functional identities psi_n f and -psi_n^* g for f in L_{(n-1)*}
/// and g in zeta_{n*} L_{(n-1)*}; f and g are given as f_* and g' in L_{n-1}
/// with g = g'_* / zeta_n.
double second_kind_functional_residual(const CircleMeasure& mu, const OrfSystem& system, std::size_t n,
                                       const RatFun& f_sub, const RatFun& g_sub, std::span<const cplx> points,
                                       std::size_t grid = 0);

ParaPair para_pair(const OrfSystem& system, std::size_t n, cplx tau);

/// Zeros of Phi_{n,tau}: companion-matrix eigenvalues plus one Newton step.
std::vector<cplx> para_zeros(const ParaPair& pair);

struct DeterminantReport {
  double d = 0.0;            // L(z_0) / R(z_0)
  double residual = 0.0;     // max |L - d R| / max |L|
  double residual_two = 0.0; // max |L - 2 R|
};

/// phi_n^* psi_n + phi_n psi_n^* against P_n B_n on a uniform boundary grid.
DeterminantReport determinant_residual(const OrfSystem& system, std::size_t n, std::size_t points = 512);

struct InterpolationReport {
  std::vector<double> upper;       // |(phi_n F + psi_n)(beta_j)|, j < n
  std::vector<double> lower;       // |(phi_n^* F - psi_n^*)(beta_j)|, j <= n
  double min_g = 0.0;              // min |g_n| over the disk sample
  double g_at_beta_n = 0.0;
  double para_residual = 0.0;      // second line vs conj(tau) first line
  double para_min_g = 0.0;
  double scale = 1.0;
  bool distinct_poles = true;

  double max_upper() const;
  double max_lower() const;
};

InterpolationReport interpolation_residuals(const OrfSystem& system, const CaratheodoryFn& f, std::size_t n,
                                            std::span<const cplx> disk_sample);

/// F = psi_N^* / phi_N^* at the top level: the C-function of the measure
/// P_N d_N / (2 |phi_N|^2) for which every level of the system is orthogonal.
CaratheodoryFn bernstein_szego_caratheodory(const OrfSystem& system);
/// grid = 0 selects bernstein_szego_grid(system).
CircleMeasure bernstein_szego_measure(const OrfSystem& system, std::size_t grid = 0);
/// Smallest power-of-two rule resolving the Bernstein-Szego weight, whose
/// singularities sit at the zeros of phi_N and at the poles.
std::size_t bernstein_szego_grid(const OrfSystem& system);

/// max_{i,j} |<f_i, f_j> - delta_ij|
double gram_deviation(std::span<const RatFun> fs, const CircleMeasure& mu, std::size_t grid);

/// sup over m uniform boundary points of |f - g|.
double boundary_distance(const Evaluable& f, const Evaluable& g, std::size_t m = 512);

/// Quotient num / den holomorphic across the listed zeros of den; points
/// within 1e-3 of a zero are evaluated by a circle mean.
cplx removable_quotient(const Evaluable& num, const Evaluable& den, std::span<const cplx> zeros, cplx z);

}  // namespace orfkit
