#pragma once

// Self-reciprocal quad transforms of an ORF ladder, the associated rational
// functions (ARFs) they specialize to, and the transformed C-functions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "orfkit/measure.hpp"
#include "orfkit/orf.hpp"

namespace orfkit {

/// Four self-reciprocal functions in L_N . L~_r. A..D live over the combined
/// sequence beta_0, beta_1..beta_N, beta~_1..beta~_r with declared degree N + r.
struct SelfReciprocalQuad {
  RatFun A, B, C, D;
  cplx tau_A{1.0, 0.0};
  std::size_t N = 0;
  std::size_t r = 0;
  PoleSequence tilde_poles;  // beta~_0 .. beta~_r

  std::uint64_t digest() const;
};

struct ConditionResult {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct QuadReport {
  std::vector<ConditionResult> conditions;
  double scale = 1.0;
  std::uint64_t quad_digest = 0;

  bool passed() const;
  const ConditionResult& at(const std::string& name) const;
};

/// Numerical check of the self-reciprocity signs, B(beta_j) != 0, the
/// interpolation of A - BF, g != 0 at the tilde/hat points and the zeros of
/// AD - BC. `hat_poles` are the continuing poles beta^_1.. of the base ladder.
QuadReport check_quad(const SelfReciprocalQuad& quad, const CaratheodoryFn& f, std::span<const cplx> hat_poles = {});

struct TransformResult {
  RatFun G, H, J, K;   // over tilde_full, declared degree r + n
  PoleSequence tilde_full;
  double remainder = 0.0;  // worst relative division remainder
};

/// (G J; H -K) = (phi psi; phi^* -psi^*)_{N+n} (A C; B D) / (c_n P_N B_N), with the
/// division carried out exactly on numerators.
TransformResult apply_transform(const OrfSystem& system, const SelfReciprocalQuad& quad, const QuadReport* report,
                                double c_n, std::size_t n);

/// (-C + D F) / (A - B F), anchored at beta~_0.
CaratheodoryFn transformed_caratheodory(const SelfReciprocalQuad& quad, const CaratheodoryFn& f);

/// The C-function of the ladder's orthogonality: from its measure when it has
/// one, otherwise the Bernstein-Szego function of the top level.
CaratheodoryFn system_caratheodory(const OrfSystem& system, std::size_t grid = 0);

/// A = Psi_{k,-1}, B = -Phi_{k,-1}, C = -Psi_{k,1}, D = Phi_{k,1}, tau_A = 1,
/// N = k, r = 0, beta~_0 = beta_k.
SelfReciprocalQuad arf_quad(const OrfSystem& system, std::size_t k);

struct ArfSystem {
  std::size_t order = 0;
  std::size_t base_n_max = 0;
  OrfSystem system;           // level m holds phi^{(k)}_{(k+m)\k}; poles start at beta_k
  std::vector<double> c;      // c_{n,k}, n = k..n_max
  std::optional<CaratheodoryFn> caratheodory;
  std::optional<CircleMeasure> measure;

  const OrfLevel& level(std::size_t n) const { return system[n - order]; }
};

struct ArfPair {
  RatFun phi, psi;
};

/// Explicit ARF of order k at level n, with c_{n,k} = sqrt(d_k d_n).
ArfPair arf_explicit(const OrfSystem& system, std::size_t k, std::size_t n);

/// Shifted recurrence from phi^{(k)}_{k\k} = psi^{(k)}_{k\k} = 1. When f is
/// given, attaches F^{(k)} and the recovered measure sampled on `grid` points.
ArfSystem arf_recurrence(const OrfSystem& system, std::size_t k, std::size_t n_max,
                         const std::optional<CaratheodoryFn>& f = std::nullopt, std::size_t grid = 0);

/// (Phi_{k,1} F + Psi_{k,1}) / (Phi_{k,-1} F + Psi_{k,-1}), anchored at beta_k.
CaratheodoryFn arf_caratheodory(const OrfSystem& system, const CaratheodoryFn& f, std::size_t k);

/// Recovered density of F^{(k)} sampled on a uniform grid.
CircleMeasure arf_measure(const CaratheodoryFn& f_k, cplx beta_k, std::size_t grid);

struct RelationResiduals {
  double rel1 = 0.0, rel2 = 0.0, rel3 = 0.0;
  double rel1_psi = 0.0, rel2_psi = 0.0, rel3_psi = 0.0;
  double max() const;
};

/// Relations between ARFs of orders j <= k at level n for orthonormal ARFs,
/// max-norm over a boundary grid relative to the largest term.
RelationResiduals relation_residuals(const OrfSystem& system, std::size_t j, std::size_t k, std::size_t n,
                                     std::size_t points = 512);

struct DoubledDeterminantReport {
  double d_tilde = 0.0;
  double residual = 0.0;      // relative to max |G^* J + G J^*|
  double residual_two = 0.0;  // absolute, against d~ = 2
};

/// (G^* J + G J^*) against d~ P~_{r+n} B~_{r+n}.
DoubledDeterminantReport doubled_determinant_residual(const TransformResult& t, std::size_t points = 512);

}  // namespace orfkit
