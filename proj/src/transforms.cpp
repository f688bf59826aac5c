#include "orfkit/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <numbers>

namespace orfkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kCondTol = 1e-8;

std::vector<cplx> circle_points(std::size_t m, double radius, double offset = 0.0) {
  std::vector<cplx> z(m);
  for (std::size_t j = 0; j < m; ++j)
    z[j] = std::polar(radius, kTwoPi * (static_cast<double>(j) + offset) / static_cast<double>(m));
  return z;
}

// zeta_0 B_{m-1} over `poles`; identically 1 when m == 0.
cplx vanishing_factor(const PoleSequence& poles, std::size_t m, cplx z) {
  if (m == 0) return 1.0;
  return blaschke_factor(poles, 0, z) * blaschke_product(poles, static_cast<int>(m) - 1, z);
}

std::vector<cplx> leading(const PoleSequence& poles, std::size_t count) {
  std::vector<cplx> out;
  for (std::size_t j = 0; j < count; ++j) out.push_back(poles[j]);
  return out;
}

// Fixed interior sample used for "not identically zero" tests.
std::vector<cplx> interior_sample() {
  std::vector<cplx> z = circle_points(7, 0.37, 0.1);
  const auto outer = circle_points(11, 0.71, 0.3);
  z.insert(z.end(), outer.begin(), outer.end());
  return z;
}

void fnv(std::uint64_t& h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
}

void fnv_poly(std::uint64_t& h, const Poly& c) {
  const std::uint64_t n = c.size();
  fnv(h, &n, sizeof n);
  fnv(h, c.data(), c.size() * sizeof(cplx));
}

ConditionResult below(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value <= tol};
}

ConditionResult above(std::string name, double value, double tol) {
  return {std::move(name), value, tol, value > tol};
}

}  // namespace

std::uint64_t SelfReciprocalQuad::digest() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const RatFun* f : {&A, &B, &C, &D}) {
    fnv_poly(h, f->numer());
    const auto beta = f->poles().values();
    fnv(h, beta.data(), beta.size() * sizeof(cplx));
  }
  fnv(h, &tau_A, sizeof tau_A);
  const std::uint64_t nr[2] = {N, r};
  fnv(h, nr, sizeof nr);
  const auto tb = tilde_poles.values();
  fnv(h, tb.data(), tb.size() * sizeof(cplx));
  return h;
}

bool QuadReport::passed() const {
  return std::all_of(conditions.begin(), conditions.end(), [](const ConditionResult& c) { return c.pass; });
}

const ConditionResult& QuadReport::at(const std::string& name) const {
  for (const auto& c : conditions)
    if (c.name == name) return c;
  throw OrfError(ErrorKind::DomainError, "no condition named " + name);
}

QuadReport check_quad(const SelfReciprocalQuad& quad, const CaratheodoryFn& f, std::span<const cplx> hat_poles) {
  const auto& poles = quad.A.poles();
  const std::size_t N = quad.N;
  const std::size_t r = quad.r;
  for (const RatFun* g : {&quad.B, &quad.C, &quad.D})
    if (!(g->poles() == poles)) throw OrfError(ErrorKind::PoleMismatch, "quad members over different poles");
  if (quad.A.degree() != N + r || poles.size() < N + r + 1 || quad.tilde_poles.size() < r + 1)
    throw OrfError(ErrorKind::DomainError, "quad degree does not match N + r");
  if (std::abs(std::abs(quad.tau_A) - 1.0) > 1e-12) throw OrfError(ErrorKind::DomainError, "tau_A must be unimodular");
  for (std::size_t j = 1; j <= r; ++j)
    if (std::abs(poles[N + j] - quad.tilde_poles[j]) > 1e-15)
      throw OrfError(ErrorKind::PoleMismatch, "combined poles disagree with the tilde sequence");

  QuadReport rep;
  rep.quad_digest = quad.digest();
  const cplx tau = quad.tau_A;

  // self-reciprocity signs
  double coef_scale = 1.0;
  for (const RatFun* g : {&quad.A, &quad.B, &quad.C, &quad.D}) coef_scale = std::max(coef_scale, poly::max_abs(g->numer()));
  double recip = coeff_distance(superstar(quad.A), scale(quad.A, tau));
  recip = std::max(recip, coeff_distance(superstar(quad.B), scale(quad.B, -tau)));
  recip = std::max(recip, coeff_distance(superstar(quad.C), scale(quad.C, -tau)));
  recip = std::max(recip, coeff_distance(superstar(quad.D), scale(quad.D, tau)));
  rep.conditions.push_back(below("self_reciprocal", recip / coef_scale, 1e-10));

  std::vector<cplx> base_zeros = leading(poles, N);
  std::vector<cplx> points = base_zeros;
  for (std::size_t j = 0; j <= r; ++j) points.push_back(quad.tilde_poles[j]);
  points.insert(points.end(), hat_poles.begin(), hat_poles.end());
  const auto sample = interior_sample();
  points.insert(points.end(), sample.begin(), sample.end());
  double s = 1.0;
  for (const cplx z : points) {
    const double fz = std::abs(f(z));
    s = std::max(s, std::abs(quad.A(z)) + std::abs(quad.B(z)) * fz + std::abs(quad.C(z)) + std::abs(quad.D(z)) * fz);
  }
  rep.scale = s;

  // B(beta_j) != 0
  double b_min = N == 0 ? 1.0 : std::numeric_limits<double>::infinity();
  for (const cplx b : base_zeros) b_min = std::min(b_min, std::abs(quad.B(b)) / s);
  rep.conditions.push_back(above("b_nonzero", b_min, kCondTol));

  // A - BF vanishes at beta_0..beta_{N-1}
  const Evaluable abf = [&](cplx z) { return quad.A(z) - quad.B(z) * f(z); };
  double interp = 0.0;
  for (const cplx b : base_zeros) interp = std::max(interp, std::abs(abf(b)) / s);
  rep.conditions.push_back(below("interpolates_f", interp, kCondTol));

  // g = (A - BF) / (zeta_0 B_{N-1}) nonzero at the tilde and hat points
  const Evaluable vanish = [&](cplx z) { return vanishing_factor(poles, N, z); };
  double g_min = std::numeric_limits<double>::infinity();
  std::vector<cplx> g_points;
  for (std::size_t j = 0; j <= r; ++j) g_points.push_back(quad.tilde_poles[j]);
  g_points.insert(g_points.end(), hat_poles.begin(), hat_poles.end());
  for (const cplx b : g_points) g_min = std::min(g_min, std::abs(removable_quotient(abf, vanish, base_zeros, b)) / s);
  rep.conditions.push_back(above("g_nonzero", g_min, kCondTol));

  // AD - BC vanishes at beta_0..beta_{N-1}, beta~_0..beta~_{r-1}, cofactor not identically 0
  const Evaluable det = [&](cplx z) { return quad.A(z) * quad.D(z) - quad.B(z) * quad.C(z); };
  std::vector<cplx> det_zeros = base_zeros;
  for (std::size_t j = 0; j < r; ++j) det_zeros.push_back(quad.tilde_poles[j]);
  double det_max = 0.0;
  for (const cplx b : det_zeros) det_max = std::max(det_max, std::abs(det(b)) / s);
  rep.conditions.push_back(below("determinant_zeros", det_max, kCondTol));
  const Evaluable det_vanish = [&](cplx z) { return vanish(z) * vanishing_factor(quad.tilde_poles, r, z); };
  double cofactor = 0.0;
  for (const cplx z : sample) cofactor = std::max(cofactor, std::abs(removable_quotient(det, det_vanish, det_zeros, z)) / s);
  rep.conditions.push_back(above("determinant_cofactor", cofactor, kCondTol));
  return rep;
}

namespace {

// Numerator of pa + qb over pi_{N+n} pi_N pi~_r, divided by
// varpi_0 (z - beta_0) prod_{j<N} (z - beta_j)(1 - conj(beta_j) z).
Poly divide_out(const Poly& num, const PoleSequence& poles, std::size_t N, double& worst) {
  Poly q = num;
  if (N == 0) return q;
  std::vector<std::pair<cplx, cplx>> factors;
  factors.emplace_back(1.0, -std::conj(poles[0]));
  factors.emplace_back(-poles[0], 1.0);
  for (std::size_t j = 1; j < N; ++j) {
    factors.emplace_back(-poles[j], 1.0);
    factors.emplace_back(1.0, -std::conj(poles[j]));
  }
  for (const auto& [a, b] : factors) {
    const double sc = std::max(poly::max_abs(q), 1e-300);
    auto div = poly::divide_linear(q, a, b);
    worst = std::max(worst, std::abs(div.remainder) / sc);
    q = std::move(div.quotient);
  }
  return q;
}

}  // namespace

TransformResult apply_transform(const OrfSystem& system, const SelfReciprocalQuad& quad, const QuadReport* report,
                                double c_n, std::size_t n) {
  if (report == nullptr || report->quad_digest != quad.digest())
    throw OrfError(ErrorKind::ConditionUnchecked, "quad conditions were not checked for this quad");
  if (!report->passed()) {
    std::string failed;
    for (const auto& c : report->conditions)
      if (!c.pass) failed += (failed.empty() ? "" : ",") + c.name;
    throw OrfError(ErrorKind::ConditionViolated, "quad fails " + failed);
  }
  if (c_n == 0.0 || !std::isfinite(c_n)) throw OrfError(ErrorKind::DomainError, "c_n must be a nonzero real");
  const std::size_t N = quad.N;
  const std::size_t r = quad.r;
  if (N + n > system.n_max()) throw OrfError(ErrorKind::DomainError, "system too short for the transform");
  const auto& poles = system.poles;
  const auto& qp = quad.A.poles();
  for (std::size_t j = 0; j <= N; ++j)
    if (std::abs(poles[j] - qp[j]) > 1e-15)
      throw OrfError(ErrorKind::PoleMismatch, "quad and system disagree on beta_0..beta_N");

  std::vector<cplx> tb(quad.tilde_poles.values().begin(), quad.tilde_poles.values().begin() + static_cast<long>(r + 1));
  for (std::size_t j = N + 1; j < poles.size(); ++j) tb.push_back(poles[j]);
  TransformResult out{RatFun::constant(PoleSequence(tb), 0.0), RatFun::constant(PoleSequence(tb), 0.0),
                      RatFun::constant(PoleSequence(tb), 0.0), RatFun::constant(PoleSequence(tb), 0.0),
                      PoleSequence(tb), 0.0};

  const auto& lvl = system[N + n];
  const double kappa_mod = (1.0 - std::norm(poles[N])) / (1.0 - std::norm(poles[0]));
  // c_n P_N B_N leaves c_n upsilon_N (1 - |beta_N|^2) / (1 - |beta_0|^2) after the division
  const cplx denom = N == 0 ? cplx{c_n} : c_n * poles.upsilon(N) * kappa_mod;

  auto build = [&](const RatFun& p, const RatFun& a, cplx sa, const RatFun& q, const RatFun& b, cplx sb) {
    Poly num = poly::add(poly::scaled(poly::multiply(p.numer(), a.numer()), sa),
                         poly::scaled(poly::multiply(q.numer(), b.numer()), sb));
    Poly quot = divide_out(num, poles, N, out.remainder);
    if (quot.size() != r + n + 1) throw OrfError(ErrorKind::InvariantViolated, "transform degree bookkeeping");
    return RatFun(out.tilde_full, poly::scaled(quot, 1.0 / denom));
  };
  out.G = build(lvl.phi, quad.A, 1.0, lvl.psi, quad.B, 1.0);
  out.H = build(lvl.phi_star, quad.A, 1.0, lvl.psi_star, quad.B, -1.0);
  out.J = build(lvl.phi, quad.C, 1.0, lvl.psi, quad.D, 1.0);
  out.K = build(lvl.psi_star, quad.D, 1.0, lvl.phi_star, quad.C, -1.0);
  if (out.remainder > 1e-10)
    throw OrfError(ErrorKind::DivisionRemainderTooLarge,
                   "exact division left relative remainder " + std::to_string(out.remainder));

  const double sc = 1.0 + std::max({poly::max_abs(out.G.numer()), poly::max_abs(out.J.numer())});
  const double g_err = coeff_distance(superstar(out.G), scale(out.H, quad.tau_A));
  const double j_err = coeff_distance(superstar(out.J), scale(out.K, quad.tau_A));
  if (std::max(g_err, j_err) > 1e-9 * sc)
    throw OrfError(ErrorKind::InvariantViolated, "transformed superstars disagree with H and K");
  return out;
}

CaratheodoryFn transformed_caratheodory(const SelfReciprocalQuad& quad, const CaratheodoryFn& f) {
  const SelfReciprocalQuad q = quad;
  const CaratheodoryFn fc = f;
  const std::vector<cplx> zeros = leading(q.A.poles(), q.N);
  Evaluable ft = [q, fc, zeros](cplx z) {
    const Evaluable num = [&](cplx w) { return -q.C(w) + q.D(w) * fc(w); };
    const Evaluable den = [&](cplx w) { return q.A(w) - q.B(w) * fc(w); };
    const cplx d = den(z);
    bool near_zero = false;
    for (const cplx b : zeros) near_zero = near_zero || std::abs(z - b) < 1e-3;
    if (!near_zero && std::abs(d) < 1e-14 * (1.0 + std::abs(num(z))))
      throw OrfError(ErrorKind::DenominatorVanishes, "A - BF vanishes off its prescribed zeros");
    return removable_quotient(num, den, zeros, z);
  };
  return CaratheodoryFn(std::move(ft), q.tilde_poles[0], "transformed");
}

CaratheodoryFn system_caratheodory(const OrfSystem& system, std::size_t grid) {
  if (system.measure) return caratheodory_from_measure(*system.measure, system.poles[0], grid);
  return bernstein_szego_caratheodory(system);
}

SelfReciprocalQuad arf_quad(const OrfSystem& system, std::size_t k) {
  if (k > system.n_max()) throw OrfError(ErrorKind::DomainError, "ARF order exceeds the ladder");
  const ParaPair plus = para_pair(system, k, 1.0);
  const ParaPair minus = para_pair(system, k, -1.0);
  SelfReciprocalQuad q{minus.Psi, scale(minus.Phi, -1.0), scale(plus.Psi, -1.0), plus.Phi, 1.0, k, 0,
                       system.poles.shifted(k).prefix(1)};
  const CaratheodoryFn f = system_caratheodory(system);
  std::vector<cplx> hat;
  for (std::size_t j = k + 1; j <= system.n_max(); ++j) hat.push_back(system.poles[j]);
  const QuadReport rep = check_quad(q, f, hat);
  if (!rep.passed()) {
    std::string failed;
    for (const auto& c : rep.conditions)
      if (!c.pass) failed += " " + c.name + "=" + std::to_string(c.value);
    throw OrfError(ErrorKind::InvariantViolated, "ARF quad fails its conditions:" + failed);
  }
  return q;
}

ArfPair arf_explicit(const OrfSystem& system, std::size_t k, std::size_t n) {
  if (n < k || n > system.n_max()) throw OrfError(ErrorKind::DomainError, "ARF level must satisfy k <= n <= n_max");
  const PoleSequence shifted = system.poles.shifted(k);
  const double c = std::sqrt(system[k].d * system[n].d);
  if (n == k) {
    const cplx v = system[k].d / c;
    return {RatFun::constant(shifted, v), RatFun::constant(shifted, v)};
  }
  const SelfReciprocalQuad q = arf_quad(system, k);
  QuadReport rep;
  rep.quad_digest = q.digest();  // arf_quad asserted the conditions
  const TransformResult t = apply_transform(system, q, &rep, c, n - k);
  return {t.G, t.J};
}

CaratheodoryFn arf_caratheodory(const OrfSystem& system, const CaratheodoryFn& f, std::size_t k) {
  if (k > system.n_max()) throw OrfError(ErrorKind::DomainError, "ARF order exceeds the ladder");
  const ParaPair plus = para_pair(system, k, 1.0);
  const ParaPair minus = para_pair(system, k, -1.0);
  const CaratheodoryFn fc = f;
  const std::vector<cplx> zeros = leading(system.poles, k);
  Evaluable fk = [plus, minus, fc, zeros](cplx z) {
    const Evaluable num = [&](cplx w) { return plus.Phi(w) * fc(w) + plus.Psi(w); };
    const Evaluable den = [&](cplx w) { return minus.Phi(w) * fc(w) + minus.Psi(w); };
    return removable_quotient(num, den, zeros, z);
  };
  const cplx bk = system.poles[k];
  CaratheodoryFn out(std::move(fk), bk, "arf-" + std::to_string(k));
  const cplx anchor = out(bk);
  if (std::abs(anchor - 1.0) > 1e-9)
    throw OrfError(ErrorKind::InvariantViolated, "F^(k)(beta_k) = " + std::to_string(anchor.real()) + "+" +
                                                     std::to_string(anchor.imag()) + "i");
  for (const cplx z : interior_sample())
    if (!(out(z).real() > 0.0)) throw OrfError(ErrorKind::InvariantViolated, "F^(k) has nonpositive real part");
  return out;
}

CircleMeasure arf_measure(const CaratheodoryFn& f_k, cplx beta_k, std::size_t grid) {
  std::vector<double> theta(grid), w(grid);
  for (std::size_t j = 0; j < grid; ++j) {
    theta[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(grid);
    w[j] = weight_from_caratheodory(f_k, beta_k, theta[j]);
  }
  return CircleMeasure::samples(std::move(theta), std::move(w));
}

ArfSystem arf_recurrence(const OrfSystem& system, std::size_t k, std::size_t n_max,
                         const std::optional<CaratheodoryFn>& f, std::size_t grid) {
  if (k > n_max || n_max > system.n_max()) throw OrfError(ErrorKind::DomainError, "need k <= n_max <= ladder top");
  ArfSystem out;
  out.order = k;
  out.base_n_max = n_max;
  const PoleSequence shifted = system.poles.shifted(k).prefix(n_max - k + 1);
  OrfSystem& s = out.system;
  s.poles = shifted;
  s.normalization = system.normalization;
  s.source = SystemSource::Parameters;
  OrfLevel base;
  base.n = 0;
  base.phi = RatFun::constant(shifted, 1.0);
  base.psi = base.phi;
  base.phi_star = superstar(base.phi);
  base.psi_star = superstar(base.psi);
  base.d = 2.0;
  s.levels.push_back(base);
  for (std::size_t m = 1; k + m <= n_max; ++m) {
    const auto& src = system[k + m];
    if (!src.lambda) throw OrfError(ErrorKind::DomainError, "ladder level lacks recurrence data");
    s.levels.push_back(recurrence_step(s.levels.back(), *src.lambda, src.rho, shifted, m));
  }
  for (std::size_t n = k; n <= n_max; ++n) out.c.push_back(std::sqrt(system[k].d * system[n].d));
  if (f) {
    out.caratheodory = arf_caratheodory(system, *f, k);
    out.measure = arf_measure(*out.caratheodory, system.poles[k], grid == 0 ? default_grid_size(n_max) : grid);
  }
  return out;
}

double RelationResiduals::max() const { return std::max({rel1, rel2, rel3, rel1_psi, rel2_psi, rel3_psi}); }

RelationResiduals relation_residuals(const OrfSystem& system, std::size_t j, std::size_t k, std::size_t n,
                                     std::size_t points) {
  if (!(j <= k && k <= n && n <= system.n_max())) throw OrfError(ErrorKind::DomainError, "need j <= k <= n <= n_max");
  const ArfSystem aj = arf_recurrence(system, j, n);
  const ArfSystem ak = arf_recurrence(system, k, n);
  const auto& jn = aj.level(n);
  const auto& jk = aj.level(k);
  const auto& kn = ak.level(n);
  const auto& poles = system.poles;

  RelationResiduals rr;
  double big[6] = {};
  double* res[6] = {&rr.rel1, &rr.rel2, &rr.rel3, &rr.rel1_psi, &rr.rel2_psi, &rr.rel3_psi};
  for (const cplx t : circle_points(points, 1.0, 0.5)) {
    // P_{n\k} B_{n\k}; the kernel anchor cancels in the ratio
    const KernelParams kp(poles[0]);
    cplx pb = poisson_kernel(kp, t, poles[n]) / poisson_kernel(kp, t, poles[k]);
    for (std::size_t i = k + 1; i <= n; ++i) pb *= blaschke_factor(poles, i, t);

    for (int swap = 0; swap < 2; ++swap) {
      // swap exchanges phi and psi everywhere
      const RatFun& a_jn = swap ? jn.psi : jn.phi;
      const RatFun& a_jn_s = swap ? jn.psi_star : jn.phi_star;
      const RatFun& a_jk = swap ? jk.psi : jk.phi;
      const RatFun& a_jk_s = swap ? jk.psi_star : jk.phi_star;
      const RatFun& a_kn = swap ? kn.psi : kn.phi;
      const RatFun& a_kn_s = swap ? kn.psi_star : kn.phi_star;
      const RatFun& b_kn = swap ? kn.phi : kn.psi;
      const RatFun& b_kn_s = swap ? kn.phi_star : kn.psi_star;
      const cplx vjn = a_jn(t), vjn_s = a_jn_s(t), vjk = a_jk(t), vjk_s = a_jk_s(t);
      const cplx vkn = a_kn(t), vkn_s = a_kn_s(t), wkn = b_kn(t), wkn_s = b_kn_s(t);

      const cplx l1 = 2.0 * vjn;
      const cplx r1 = (vjk + vjk_s) * vkn + (vjk - vjk_s) * wkn;
      const cplx r2 = (vkn + wkn) * vjk + (vkn - wkn) * vjk_s;
      const cplx l3 = 2.0 * pb * vjk;
      const cplx r3 = (wkn_s + vkn_s) * vjn + (wkn - vkn) * vjn_s;
      const cplx diff[3] = {l1 - r1, l1 - r2, l3 - r3};
      const double mag[3] = {std::abs(l1) + std::abs(r1), std::abs(l1) + std::abs(r2), std::abs(l3) + std::abs(r3)};
      for (int q = 0; q < 3; ++q) {
        *res[3 * swap + q] = std::max(*res[3 * swap + q], std::abs(diff[q]));
        big[3 * swap + q] = std::max(big[3 * swap + q], mag[q]);
      }
    }
  }
  for (int q = 0; q < 6; ++q) *res[q] /= std::max(big[q], 1e-300);
  return rr;
}

DoubledDeterminantReport doubled_determinant_residual(const TransformResult& t, std::size_t points) {
  const auto& tp = t.tilde_full;
  const std::size_t m = t.G.degree();
  const RatFun gs = superstar(t.G);
  const RatFun js = superstar(t.J);
  const KernelParams kp(tp[0]);
  std::vector<cplx> l(points), rr(points);
  double l_max = 0.0;
  const auto ts = circle_points(points, 1.0);
  for (std::size_t j = 0; j < points; ++j) {
    l[j] = gs(ts[j]) * t.J(ts[j]) + t.G(ts[j]) * js(ts[j]);
    rr[j] = poisson_kernel(kp, ts[j], tp[m]) * blaschke_product(tp, static_cast<int>(m), ts[j]);
    l_max = std::max(l_max, std::abs(l[j]));
  }
  DoubledDeterminantReport rep;
  rep.d_tilde = (l[0] / rr[0]).real();
  for (std::size_t j = 0; j < points; ++j) {
    rep.residual = std::max(rep.residual, std::abs(l[j] - rep.d_tilde * rr[j]));
    rep.residual_two = std::max(rep.residual_two, std::abs(l[j] - 2.0 * rr[j]));
  }
  rep.residual /= std::max(l_max, 1e-300);
  return rep;
}

}  // namespace orfkit
