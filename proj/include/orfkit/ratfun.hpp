#pragma once

// Rational functions with prescribed poles 1/conj(beta_j) in the open unit
// disk picture: every element of L_n is stored as c(z) / pi_n(z) with
// pi_n(z) = prod_{j=1..n} (1 - conj(beta_j) z).

#include <memory>
#include <span>
#include <vector>

#include "orfkit/error.hpp"
#include "orfkit/poly.hpp"

namespace orfkit {

/// Points beta_0, beta_1, ... strictly inside the unit disk. beta_0 never
/// enters a space L_n but anchors the kernels and the Blaschke product B_{-1}.
class PoleSequence {
 public:
  PoleSequence();
  explicit PoleSequence(std::vector<cplx> beta);

  std::size_t size() const { return beta_->size(); }
  cplx operator[](std::size_t k) const { return (*beta_)[k]; }
  std::span<const cplx> values() const { return *beta_; }

  /// conj(beta_k)/|beta_k|, or exactly 1 when beta_k == 0.
  cplx eta(std::size_t k) const;
  /// 1 - conj(beta_k) z
  cplx varpi(std::size_t k, cplx z) const { return 1.0 - std::conj((*this)[k]) * z; }
  /// z - beta_k
  cplx varpi_star(std::size_t k, cplx z) const { return z - (*this)[k]; }
  /// prod_{j=1..n} eta_j
  cplx upsilon(std::size_t n) const;
  /// pi_n as a polynomial of declared degree n.
  Poly pi_poly(std::size_t n) const;

  /// {beta_k, beta_{k+1}, ...}: the sequence seen by objects anchored at beta_k.
  PoleSequence shifted(std::size_t k) const;
  PoleSequence prefix(std::size_t count) const;

  friend bool operator==(const PoleSequence& a, const PoleSequence& b);

 private:
  std::shared_ptr<const std::vector<cplx>> beta_;
};

/// Pole-proximity guard used by every evaluation.
inline double pole_tolerance(cplx z) { return 1e-13 * (1.0 + std::abs(z)); }

/// Element of L_n in canonical form. The degree is declared, so the top
/// coefficient may vanish; no common factors are ever cancelled.
class RatFun {
 public:
  /// The constant 0 over {beta_0 = 0}.
  RatFun() : numer_(1, cplx{}) {}
  RatFun(PoleSequence poles, Poly numer);

  static RatFun constant(PoleSequence poles, cplx c);
  static RatFun zero(PoleSequence poles, std::size_t degree);
  /// B_k as an element of L_k.
  static RatFun blaschke(PoleSequence poles, std::size_t k);

  std::size_t degree() const { return numer_.size() - 1; }
  const Poly& numer() const { return numer_; }
  const PoleSequence& poles() const { return poles_; }

  cplx operator()(cplx z) const;

  /// The same function viewed in L_m, m >= degree().
  RatFun raised(std::size_t m) const;

 private:
  PoleSequence poles_;
  Poly numer_;
};

cplx eval(const RatFun& f, cplx z);

/// f_*(z) = conj(f(1/conj z)), evaluated as reverse_conj(c)(z) / prod (z - beta_j),
/// which stays finite at z = 0 whenever no beta_j vanishes.
cplx substar_eval(const RatFun& f, cplx z);

/// f^* = B_n f_* at the declared degree n.
RatFun superstar(const RatFun& f);

/// a f + b g over the common denominator of the larger degree.
RatFun combine(cplx a, const RatFun& f, cplx b, const RatFun& g);

RatFun scale(const RatFun& f, cplx s);

/// Max coefficient difference after rebasing both to the larger degree.
double coeff_distance(const RatFun& f, const RatFun& g);

cplx blaschke_factor(const PoleSequence& poles, std::size_t k, cplx z);

/// B_k(z) for k >= -1; B_{-1} = 1/zeta_0, B_0 = 1.
cplx blaschke_product(const PoleSequence& poles, int k, cplx z);

struct KernelParams {
  explicit KernelParams(cplx beta0);
  cplx beta0;

  cplx zeta0(cplx z) const;
};

/// D(t, z) = (zeta_0(t) + zeta_0(z)) / (zeta_0(t) - zeta_0(z)).
cplx herglotz_kernel(const KernelParams& kp, cplx t, cplx z);

/// P(t, z) for t on the unit circle.
cplx poisson_kernel(const KernelParams& kp, cplx t, cplx z);

/// Closed-form rational continuation of P(., z) off the circle:
/// varpi_z(z) varpi_0(t) varpi_0^*(t) / (varpi_0(beta_0) varpi_z(t) varpi_z^*(t)).
cplx poisson_rational(const KernelParams& kp, cplx t, cplx z);

}  // namespace orfkit
