#include "orfkit/ratfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace orfkit {

namespace {

std::string fmt_c(cplx z) {
  return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
}

}  // namespace

PoleSequence::PoleSequence() : beta_(std::make_shared<const std::vector<cplx>>(1, cplx{})) {}

PoleSequence::PoleSequence(std::vector<cplx> beta) {
  if (beta.empty()) throw OrfError(ErrorKind::DomainError, "pole sequence needs beta_0");
  for (std::size_t k = 0; k < beta.size(); ++k) {
    if (!(std::abs(beta[k]) < 1.0))
      throw OrfError(ErrorKind::DomainError,
                     "beta_" + std::to_string(k) + " = " + fmt_c(beta[k]) + " is not inside the unit disk");
  }
  beta_ = std::make_shared<const std::vector<cplx>>(std::move(beta));
}

cplx PoleSequence::eta(std::size_t k) const {
  const cplx b = (*this)[k];
  if (b == cplx{0.0, 0.0}) return {1.0, 0.0};
  return std::conj(b) / std::abs(b);
}

cplx PoleSequence::upsilon(std::size_t n) const {
  cplx u{1.0, 0.0};
  for (std::size_t j = 1; j <= n; ++j) u *= eta(j);
  return u;
}

Poly PoleSequence::pi_poly(std::size_t n) const {
  Poly p{cplx{1.0, 0.0}};
  for (std::size_t j = 1; j <= n; ++j) {
    const Poly f = poly::linear(1.0, -std::conj((*this)[j]));
    p = poly::multiply(p, f);
  }
  return p;
}

PoleSequence PoleSequence::shifted(std::size_t k) const {
  if (k >= size()) throw OrfError(ErrorKind::DomainError, "shift beyond pole sequence");
  return PoleSequence(std::vector<cplx>(beta_->begin() + static_cast<std::ptrdiff_t>(k), beta_->end()));
}

PoleSequence PoleSequence::prefix(std::size_t count) const {
  if (count == 0 || count > size()) throw OrfError(ErrorKind::DomainError, "bad pole prefix length");
  return PoleSequence(std::vector<cplx>(beta_->begin(), beta_->begin() + static_cast<std::ptrdiff_t>(count)));
}

bool operator==(const PoleSequence& a, const PoleSequence& b) {
  return a.beta_ == b.beta_ || *a.beta_ == *b.beta_;
}

RatFun::RatFun(PoleSequence poles, Poly numer) : poles_(std::move(poles)), numer_(std::move(numer)) {
  if (numer_.empty()) throw OrfError(ErrorKind::DomainError, "empty numerator");
  if (degree() >= poles_.size())
    throw OrfError(ErrorKind::DomainError, "degree " + std::to_string(degree()) + " needs " +
                                               std::to_string(degree() + 1) + " poles, have " +
                                               std::to_string(poles_.size()));
}

RatFun RatFun::constant(PoleSequence poles, cplx c) { return RatFun(std::move(poles), Poly{c}); }

RatFun RatFun::zero(PoleSequence poles, std::size_t degree) {
  return RatFun(std::move(poles), Poly(degree + 1, cplx{0.0, 0.0}));
}

RatFun RatFun::blaschke(PoleSequence poles, std::size_t k) {
  // B_k = upsilon_k pi_k^* / pi_k with pi_k^*(z) = prod (z - beta_j)
  Poly p{cplx{1.0, 0.0}};
  for (std::size_t j = 1; j <= k; ++j) p = poly::multiply(p, poly::linear(-poles[j], 1.0));
  const cplx u = poles.upsilon(k);
  return RatFun(std::move(poles), poly::scaled(p, u));
}

cplx RatFun::operator()(cplx z) const { return eval(*this, z); }

RatFun RatFun::raised(std::size_t m) const {
  if (m < degree()) throw OrfError(ErrorKind::DomainError, "cannot lower a declared degree");
  if (m >= poles_.size()) throw OrfError(ErrorKind::DomainError, "not enough poles to raise degree");
  Poly p = numer_;
  for (std::size_t j = degree() + 1; j <= m; ++j) p = poly::multiply(p, poly::linear(1.0, -std::conj(poles_[j])));
  return RatFun(poles_, std::move(p));
}

cplx eval(const RatFun& f, cplx z) {
  const auto& poles = f.poles();
  const double tol = pole_tolerance(z);
  cplx den{1.0, 0.0};
  for (std::size_t j = 1; j <= f.degree(); ++j) {
    const cplx w = poles.varpi(j, z);
    if (std::abs(w) < tol)
      throw OrfError(ErrorKind::PoleProximity, "z = " + fmt_c(z) + " hits the pole of factor " + std::to_string(j));
    den *= w;
  }
  return poly::horner(f.numer(), z) / den;
}

cplx substar_eval(const RatFun& f, cplx z) {
  const auto& poles = f.poles();
  const double tol = pole_tolerance(z);
  cplx den{1.0, 0.0};
  for (std::size_t j = 1; j <= f.degree(); ++j) {
    const cplx w = poles.varpi_star(j, z);
    if (std::abs(w) < tol)
      throw OrfError(ErrorKind::PoleProximity, "z = " + fmt_c(z) + " hits beta_" + std::to_string(j));
    den *= w;
  }
  const Poly rc = poly::reverse_conj(f.numer());
  return poly::horner(rc, z) / den;
}

RatFun superstar(const RatFun& f) {
  const cplx u = f.poles().upsilon(f.degree());
  return RatFun(f.poles(), poly::scaled(poly::reverse_conj(f.numer()), u));
}

RatFun combine(cplx a, const RatFun& f, cplx b, const RatFun& g) {
  if (!(f.poles() == g.poles())) throw OrfError(ErrorKind::PoleMismatch, "combine across different pole sequences");
  const std::size_t m = std::max(f.degree(), g.degree());
  const RatFun fr = f.raised(m);
  const RatFun gr = g.raised(m);
  return RatFun(f.poles(), poly::add(poly::scaled(fr.numer(), a), poly::scaled(gr.numer(), b)));
}

RatFun scale(const RatFun& f, cplx s) { return RatFun(f.poles(), poly::scaled(f.numer(), s)); }

double coeff_distance(const RatFun& f, const RatFun& g) {
  const RatFun d = combine(1.0, f, -1.0, g);
  return poly::max_abs(d.numer());
}

cplx blaschke_factor(const PoleSequence& poles, std::size_t k, cplx z) {
  const cplx w = poles.varpi(k, z);
  if (std::abs(w) < pole_tolerance(z))
    throw OrfError(ErrorKind::PoleProximity, "zeta_" + std::to_string(k) + " evaluated at its pole");
  return poles.eta(k) * poles.varpi_star(k, z) / w;
}

cplx blaschke_product(const PoleSequence& poles, int k, cplx z) {
  if (k < -1) throw OrfError(ErrorKind::DomainError, "Blaschke product index below -1");
  if (k == -1) {
    const cplx z0 = blaschke_factor(poles, 0, z);
    if (std::abs(z0) < 1e-300 || std::abs(poles.varpi_star(0, z)) < pole_tolerance(z))
      throw OrfError(ErrorKind::DivisionByZeroBlaschke, "B_{-1} at z = beta_0");
    return 1.0 / z0;
  }
  if (static_cast<std::size_t>(k) >= poles.size())
    throw OrfError(ErrorKind::DomainError, "Blaschke product index beyond pole sequence");
  cplx b{1.0, 0.0};
  for (int j = 1; j <= k; ++j) b *= blaschke_factor(poles, static_cast<std::size_t>(j), z);
  return b;
}

KernelParams::KernelParams(cplx b0) : beta0(b0) {
  if (!(std::abs(b0) < 1.0)) throw OrfError(ErrorKind::DomainError, "kernel anchor must lie inside the unit disk");
}

cplx KernelParams::zeta0(cplx z) const {
  const cplx eta = beta0 == cplx{0.0, 0.0} ? cplx{1.0, 0.0} : std::conj(beta0) / std::abs(beta0);
  const cplx w = 1.0 - std::conj(beta0) * z;
  if (std::abs(w) < pole_tolerance(z)) throw OrfError(ErrorKind::PoleProximity, "zeta_0 evaluated at its pole");
  return eta * (z - beta0) / w;
}

cplx herglotz_kernel(const KernelParams& kp, cplx t, cplx z) {
  const cplx a = kp.zeta0(t);
  const cplx b = kp.zeta0(z);
  const cplx den = a - b;
  if (std::abs(den) < 1e-14 * (1.0 + std::abs(a) + std::abs(b)))
    throw OrfError(ErrorKind::KernelSingularity, "Herglotz kernel with t == z");
  return (a + b) / den;
}

cplx poisson_rational(const KernelParams& kp, cplx t, cplx z) {
  const cplx b0 = kp.beta0;
  const cplx num = (1.0 - std::conj(z) * z) * (1.0 - std::conj(b0) * t) * (t - b0);
  const cplx den = (1.0 - std::conj(b0) * b0) * (1.0 - std::conj(z) * t) * (t - z);
  if (std::abs(den) < 1e-300) throw OrfError(ErrorKind::KernelSingularity, "Poisson kernel at its pole");
  return num / den;
}

cplx poisson_kernel(const KernelParams& kp, cplx t, cplx z) {
  if (std::abs(std::abs(t) - 1.0) > 1e-10)
    throw OrfError(ErrorKind::DomainError, "Poisson kernel needs t on the unit circle");
  if (!(std::abs(z) < 1.0)) throw OrfError(ErrorKind::DomainError, "Poisson kernel needs z inside the disk");
  return poisson_rational(kp, t, z);
}

}  // namespace orfkit
