#include "orfkit/orf.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace orfkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t resolve_grid(std::size_t grid, std::size_t n_max) { return grid == 0 ? default_grid_size(n_max) : grid; }

std::vector<cplx> circle_points(std::size_t m, double radius, double offset = 0.0) {
  std::vector<cplx> z(m);
  for (std::size_t j = 0; j < m; ++j)
    z[j] = std::polar(radius, kTwoPi * (static_cast<double>(j) + offset) / static_cast<double>(m));
  return z;
}

// e_n of an orthonormal ladder
double orthonormal_e(const PoleSequence& poles, std::size_t n, cplx lambda) {
  const double num = 1.0 - std::norm(poles[n]);
  const double den = 1.0 - std::norm(poles[n - 1]);
  return std::sqrt(num / den / (1.0 - std::norm(lambda)));
}

}  // namespace

double InterpolationReport::max_upper() const {
  return upper.empty() ? 0.0 : *std::max_element(upper.begin(), upper.end());
}

double InterpolationReport::max_lower() const {
  return lower.empty() ? 0.0 : *std::max_element(lower.begin(), lower.end());
}

OrfLevel recurrence_step(const OrfLevel& prev, cplx lambda, cplx rho, const PoleSequence& poles, std::size_t n) {
  if (!(std::abs(lambda) < 1.0))
    throw OrfError(ErrorKind::ParameterOutOfDisk, "lambda_" + std::to_string(n) + " must lie in the open disk");
  if (n == 0 || n >= poles.size()) throw OrfError(ErrorKind::DomainError, "recurrence level out of range");
  const double e = orthonormal_e(poles, n, lambda);
  const cplx bp = poles[n - 1];
  const cplx eta_prev = poles.eta(n - 1);
  // eta_{n-1} (z - beta_{n-1}) and (1 - conj(beta_{n-1}) z)
  const Poly shift = poly::linear(-eta_prev * bp, eta_prev);
  const Poly keep = poly::linear(1.0, -std::conj(bp));
  auto row = [&](const RatFun& f, const RatFun& f_star, cplx a, cplx b) {
    Poly p = poly::add(poly::scaled(poly::multiply(shift, f.numer()), a), poly::scaled(poly::multiply(keep, f_star.numer()), b));
    return RatFun(poles, std::move(p));
  };
  const cplx front = e * rho;
  const cplx back = e * std::conj(rho) * std::conj(eta_prev) * poles.eta(n);

  OrfLevel out;
  out.n = n;
  out.phi = row(prev.phi, prev.phi_star, front, front * std::conj(lambda));
  out.psi = row(prev.psi, prev.psi_star, front, -front * std::conj(lambda));
  out.phi_star = superstar(out.phi);
  out.psi_star = superstar(out.psi);
  out.lambda = lambda;
  out.e = e;
  out.rho = rho;
  out.d = prev.d;

  // second row of the recurrence must reproduce the superstars
  const RatFun phi_star_row = row(prev.phi, prev.phi_star, back * lambda, back);
  const RatFun psi_star_row = row(prev.psi, prev.psi_star, -back * lambda, back);
  const double scale = 1.0 + poly::max_abs(out.phi.numer()) + poly::max_abs(out.psi.numer());
  const double mismatch = std::max(coeff_distance(phi_star_row, out.phi_star), coeff_distance(psi_star_row, out.psi_star));
  if (mismatch > 1e-12 * scale)
    throw OrfError(ErrorKind::InvariantViolated,
                   "recurrence second row disagrees with superstar at level " + std::to_string(n));
  return out;
}

OrfSystem synthesize(const std::vector<cplx>& lambdas, const PoleSequence& poles, cplx phi0) {
  if (std::abs(std::abs(phi0) - 1.0) > 1e-12) throw OrfError(ErrorKind::DomainError, "phi_0 must be unimodular");
  if (lambdas.size() >= poles.size())
    throw OrfError(ErrorKind::DomainError, "need beta_0..beta_n for " + std::to_string(lambdas.size()) + " lambdas");
  OrfSystem sys;
  sys.poles = poles;
  sys.source = SystemSource::Parameters;
  OrfLevel base;
  base.n = 0;
  base.phi = RatFun::constant(poles, phi0);
  base.psi = base.phi;
  base.phi_star = superstar(base.phi);
  base.psi_star = superstar(base.psi);
  base.d = 2.0 * std::norm(phi0);
  sys.levels.push_back(base);
  for (std::size_t n = 1; n <= lambdas.size(); ++n)
    sys.levels.push_back(recurrence_step(sys.levels.back(), lambdas[n - 1], 1.0, poles, n));
  return sys;
}

RecurrenceParams fit_recurrence(const RatFun& phi_prev, const RatFun& phi_prev_star, const RatFun& phi_n) {
  const auto& poles = phi_n.poles();
  const std::size_t n = phi_n.degree();
  if (n == 0) throw OrfError(ErrorKind::DomainError, "no recurrence into level 0");
  const auto z = circle_points(16, 1.0, 0.25);
  Eigen::MatrixXcd x(static_cast<Eigen::Index>(z.size()), 2);
  Eigen::VectorXcd y(static_cast<Eigen::Index>(z.size()));
  double phi_scale = 0.0;
  for (std::size_t j = 0; j < z.size(); ++j) {
    const auto r = static_cast<Eigen::Index>(j);
    const cplx v = phi_n(z[j]);
    phi_scale = std::max(phi_scale, std::abs(v));
    y(r) = v * poles.varpi(n, z[j]) / poles.varpi(n - 1, z[j]);
    x(r, 0) = blaschke_factor(poles, n - 1, z[j]) * phi_prev(z[j]);
    x(r, 1) = phi_prev_star(z[j]);
  }
  const Eigen::VectorXcd ab = x.colPivHouseholderQr().solve(y);
  RecurrenceParams p;
  const cplx a = ab(0);
  const cplx b = ab(1);
  p.residual = (x * ab - y).cwiseAbs().maxCoeff();
  if (p.residual > 1e-9 * std::max(phi_scale, 1e-300))
    throw OrfError(ErrorKind::FitResidualTooLarge,
                   "level " + std::to_string(n) + " fit residual " + std::to_string(p.residual));
  if (std::abs(a) == 0.0) throw OrfError(ErrorKind::FitResidualTooLarge, "degenerate recurrence fit");
  p.lambda = std::conj(b / a);
  p.e = std::abs(a);
  p.rho = a / std::abs(a);
  return p;
}

RecurrenceParams extract_parameters(const OrfSystem& system, std::size_t n) {
  if (n == 0 || n > system.n_max()) throw OrfError(ErrorKind::DomainError, "extract_parameters level out of range");
  const auto& prev = system[n - 1];
  return fit_recurrence(prev.phi, prev.phi_star, system[n].phi);
}

RatFun second_kind_integral(const CircleMeasure& mu, const OrfSystem& system, std::size_t n, std::size_t grid) {
  const auto& poles = system.poles;
  const RatFun& phi = system[n].phi;
  const CircleGrid g = make_grid(mu, resolve_grid(grid, system.n_max()));
  const KernelParams kp(poles[0]);
  const auto phi_t = g.sample(phi);
  cplx mean{};
  for (std::size_t j = 0; j < g.size(); ++j) mean += phi_t[j] * g.w[j];
  mean /= static_cast<double>(g.size());

  const auto nodes = circle_points(n + 1, 0.6);
  const auto m = static_cast<Eigen::Index>(n + 1);
  Eigen::MatrixXcd v(m, m);
  Eigen::VectorXcd rhs(m);
  const Poly pi = poles.pi_poly(n);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const cplx z = nodes[i];
    const cplx phi_z = phi(z);
    cplx acc{};
    for (std::size_t j = 0; j < g.size(); ++j) acc += herglotz_kernel(kp, g.t[j], z) * (phi_t[j] - phi_z) * g.w[j];
    const cplx psi_z = acc / static_cast<double>(g.size()) + mean;
    const auto r = static_cast<Eigen::Index>(i);
    rhs(r) = psi_z * poly::horner(pi, z);
    cplx p{1.0, 0.0};
    for (Eigen::Index k = 0; k < m; ++k, p *= z) v(r, k) = p;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(v);
  const auto& s = svd.singularValues();
  if (s(m - 1) <= 0.0 || s(0) / s(m - 1) > 1e13)
    throw OrfError(ErrorKind::InterpolationSingular, "second-kind reconstruction nodes are ill-conditioned");
  const Eigen::VectorXcd c = v.fullPivLu().solve(rhs);
  return RatFun(poles, Poly(c.data(), c.data() + m));
}

double second_kind_functional_residual(const CircleMeasure& mu, const OrfSystem& system, std::size_t n,
                                       const RatFun& f_sub, const RatFun& g_sub, std::span<const cplx> points,
                                       std::size_t grid) {
  const auto& lvl = system[n];
  const auto& poles = system.poles;
  const CircleGrid g = make_grid(mu, resolve_grid(grid, system.n_max()));
  const KernelParams kp(poles[0]);
  const Evaluable f = [&](cplx z) { return substar_eval(f_sub, z); };
  const Evaluable gfun = [&](cplx z) {
    if (n == 0) return substar_eval(g_sub, z);
    return substar_eval(g_sub, z) / blaschke_factor(poles, n, z);
  };
  const Evaluable upper = [&](cplx z) { return lvl.phi(z) * f(z); };
  const Evaluable lower = [&](cplx z) { return lvl.phi_star(z) * gfun(z); };
  const auto up_t = g.sample(upper);
  const auto lo_t = g.sample(lower);
  cplx up_mean{}, lo_mean{};
  for (std::size_t j = 0; j < g.size(); ++j) {
    up_mean += up_t[j] * g.w[j];
    lo_mean += lo_t[j] * g.w[j];
  }
  up_mean /= static_cast<double>(g.size());
  lo_mean /= static_cast<double>(g.size());

  double worst = 0.0;
  for (const cplx z : points) {
    const cplx up_z = upper(z);
    const cplx lo_z = lower(z);
    cplx a{}, b{};
    for (std::size_t j = 0; j < g.size(); ++j) {
      const cplx d = herglotz_kernel(kp, g.t[j], z) * g.w[j];
      a += d * (up_t[j] - up_z);
      b += d * (lo_t[j] - lo_z);
    }
    a = a / static_cast<double>(g.size()) + up_mean;
    b = b / static_cast<double>(g.size()) - lo_mean;
    const cplx lhs_a = lvl.psi(z) * f(z);
    const cplx lhs_b = -lvl.psi_star(z) * gfun(z);
    const double scale = 1.0 + std::abs(lhs_a) + std::abs(lhs_b);
    worst = std::max(worst, std::max(std::abs(a - lhs_a), std::abs(b - lhs_b)) / scale);
  }
  return worst;
}

OrfSystem gram_schmidt_orf(const CircleMeasure& mu, const PoleSequence& poles, std::size_t n_max, std::size_t grid) {
  if (n_max >= poles.size())
    throw OrfError(ErrorKind::DomainError, "need beta_0..beta_" + std::to_string(n_max) + " for n_max = " +
                                               std::to_string(n_max));
  const std::size_t nq = resolve_grid(grid, n_max);
  const CircleGrid g = make_grid(mu, nq);

  std::vector<RatFun> phis;
  std::vector<std::vector<cplx>> vals;
  for (std::size_t n = 0; n <= n_max; ++n) {
    RatFun v = RatFun::blaschke(poles, n);
    auto vv = g.sample(v);
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t m = 0; m < n; ++m) {
        const cplx h = inner_product(g, vv, vals[m]);
        v = combine(1.0, v, -h, phis[m]);
        for (std::size_t j = 0; j < vv.size(); ++j) vv[j] -= h * vals[m][j];
      }
    }
    const double norm = std::sqrt(inner_product(g, vv, vv).real());
    if (!(norm > 1e-10))
      throw OrfError(ErrorKind::RankDeficiency, "basis function B_" + std::to_string(n) + " is numerically dependent");
    const RatFun unit = scale(v, 1.0 / norm);
    // phase: phi_n^*(beta_n) real and positive
    const cplx s = superstar(unit)(poles[n]);
    const cplx c = s / std::abs(s);
    phis.push_back(scale(unit, c));
    for (auto& x : vv) x *= c / norm;
    vals.push_back(std::move(vv));
  }

  OrfSystem sys;
  sys.poles = poles;
  sys.source = SystemSource::Measure;
  sys.measure = mu;
  for (std::size_t n = 0; n <= n_max; ++n) {
    OrfLevel lvl;
    lvl.n = n;
    lvl.phi = phis[n];
    lvl.phi_star = superstar(phis[n]);
    lvl.psi = lvl.phi;
    lvl.psi_star = lvl.phi_star;
    sys.levels.push_back(lvl);
  }
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto& lvl = sys.levels[n];
    lvl.psi = second_kind_integral(mu, sys, n, nq);
    lvl.psi_star = superstar(lvl.psi);
    if (n == 0) {
      lvl.d = 2.0 * std::norm(lvl.phi.numer()[0]);
      continue;
    }
    const RecurrenceParams p = extract_parameters(sys, n);
    lvl.lambda = p.lambda;
    lvl.e = p.e;
    lvl.rho = p.rho;
    const double en2 = (1.0 - std::norm(poles[n])) / (1.0 - std::norm(poles[n - 1])) / (1.0 - std::norm(p.lambda));
    lvl.d = p.e * p.e / en2 * sys.levels[n - 1].d;
  }
  return sys;
}

ParaPair para_pair(const OrfSystem& system, std::size_t n, cplx tau) {
  if (std::abs(std::abs(tau) - 1.0) > 1e-12) throw OrfError(ErrorKind::DomainError, "tau must be unimodular");
  const auto& lvl = system[n];
  return ParaPair{n, tau, combine(1.0, lvl.phi, tau, lvl.phi_star), combine(1.0, lvl.psi, -tau, lvl.psi_star)};
}

std::vector<cplx> para_zeros(const ParaPair& pair) {
  const Poly& c = pair.Phi.numer();
  const std::size_t n = c.size() - 1;
  if (n == 0) throw OrfError(ErrorKind::DomainError, "para-orthogonal function of degree 0 has no zeros");
  const cplx lead = c[n];
  if (std::abs(lead) <= 1e-14 * poly::max_abs(c))
    throw OrfError(ErrorKind::ZeroOffCircle, "numerator degree collapsed: a zero escaped to infinity");
  Poly deriv(n);
  for (std::size_t k = 1; k <= n; ++k) deriv[k - 1] = static_cast<double>(k) * c[k];

  std::vector<cplx> roots;
  for (cplx z : poly::roots(c)) {
    const cplx dp = poly::horner(deriv, z);
    if (std::abs(dp) > 0.0) z -= poly::horner(c, z) / dp;
    if (std::abs(std::abs(z) - 1.0) >= 1e-9)
      throw OrfError(ErrorKind::ZeroOffCircle, "zero with modulus " + std::to_string(std::abs(z)));
    roots.push_back(z);
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      if (std::abs(roots[i] - roots[j]) <= 1e-8) throw OrfError(ErrorKind::ZeroCollision, "near-multiple zero");
  std::sort(roots.begin(), roots.end(), [](cplx a, cplx b) { return std::arg(a) < std::arg(b); });
  return roots;
}

DeterminantReport determinant_residual(const OrfSystem& system, std::size_t n, std::size_t points) {
  const auto& lvl = system[n];
  const auto& poles = system.poles;
  const KernelParams kp(poles[0]);
  const auto t = circle_points(points, 1.0);
  std::vector<cplx> l(points), r(points);
  double l_max = 0.0;
  for (std::size_t j = 0; j < points; ++j) {
    l[j] = lvl.phi_star(t[j]) * lvl.psi(t[j]) + lvl.phi(t[j]) * lvl.psi_star(t[j]);
    r[j] = poisson_kernel(kp, t[j], poles[n]) * blaschke_product(poles, static_cast<int>(n), t[j]);
    l_max = std::max(l_max, std::abs(l[j]));
  }
  DeterminantReport rep;
  rep.d = (l[0] / r[0]).real();
  for (std::size_t j = 0; j < points; ++j) {
    rep.residual = std::max(rep.residual, std::abs(l[j] - rep.d * r[j]));
    rep.residual_two = std::max(rep.residual_two, std::abs(l[j] - 2.0 * r[j]));
  }
  rep.residual /= std::max(l_max, 1e-300);
  if (system.normalization == Normalization::Orthonormal && std::abs(rep.d - 2.0) >= 1e-9)
    throw OrfError(ErrorKind::InvariantViolated, "determinant constant d_" + std::to_string(n) + " = " +
                                                     std::to_string(rep.d) + " in an orthonormal system");
  return rep;
}

cplx removable_quotient(const Evaluable& num, const Evaluable& den, std::span<const cplx> zeros, cplx z) {
  for (const cplx b : zeros) {
    if (std::abs(z - b) < 1e-3) return circle_mean([&](cplx w) { return num(w) / den(w); }, z, 2e-3);
  }
  return num(z) / den(z);
}

InterpolationReport interpolation_residuals(const OrfSystem& system, const CaratheodoryFn& f, std::size_t n,
                                            std::span<const cplx> disk_sample) {
  const auto& lvl = system[n];
  const auto& poles = system.poles;
  InterpolationReport rep;
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = i + 1; j <= n; ++j)
      if (std::abs(poles[i] - poles[j]) < 1e-12) rep.distinct_poles = false;

  const Evaluable upper = [&](cplx z) { return lvl.phi(z) * f(z) + lvl.psi(z); };
  const Evaluable lower = [&](cplx z) { return lvl.phi_star(z) * f(z) - lvl.psi_star(z); };
  // zeta_0 B_{n-1}; identically 1 at n = 0
  const Evaluable vanishing = [&](cplx z) {
    return n == 0 ? cplx{1.0, 0.0} : blaschke_factor(poles, 0, z) * blaschke_product(poles, static_cast<int>(n) - 1, z);
  };
  std::vector<cplx> zeros;
  if (n > 0)
    for (std::size_t j = 0; j < n; ++j) zeros.push_back(poles[j]);

  auto bump_scale = [&](cplx z) {
    rep.scale = std::max(rep.scale, std::abs(lvl.phi(z) * f(z)) + std::abs(lvl.psi(z)) + std::abs(lvl.phi_star(z) * f(z)) +
                                        std::abs(lvl.psi_star(z)));
  };
  for (std::size_t j = 0; j < n; ++j) {
    rep.upper.push_back(std::abs(upper(poles[j])));
    bump_scale(poles[j]);
  }
  for (std::size_t j = 0; j <= n; ++j) {
    rep.lower.push_back(std::abs(lower(poles[j])));
    bump_scale(poles[j]);
  }

  const cplx taus[] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  rep.min_g = std::numeric_limits<double>::infinity();
  rep.para_min_g = std::numeric_limits<double>::infinity();
  for (const cplx z : disk_sample) {
    bump_scale(z);
    rep.min_g = std::min(rep.min_g, std::abs(removable_quotient(upper, vanishing, zeros, z)));
    for (const cplx tau : taus) {
      const ParaPair pp = para_pair(system, n, tau);
      const RatFun phi_s = superstar(pp.Phi);
      const RatFun psi_s = superstar(pp.Psi);
      const cplx fz = f(z);
      const cplx first = pp.Phi(z) * fz + pp.Psi(z);
      const cplx second = phi_s(z) * fz - psi_s(z);
      rep.para_residual = std::max(rep.para_residual, std::abs(second - std::conj(tau) * first));
      const Evaluable para_upper = [&](cplx w) { return pp.Phi(w) * f(w) + pp.Psi(w); };
      rep.para_min_g = std::min(rep.para_min_g, std::abs(removable_quotient(para_upper, vanishing, zeros, z)));
    }
  }
  rep.g_at_beta_n = std::abs(removable_quotient(upper, vanishing, zeros, poles[n]));
  return rep;
}

CaratheodoryFn bernstein_szego_caratheodory(const OrfSystem& system) {
  const auto& top = system.levels.back();
  RatFun num = top.psi_star;
  RatFun den = top.phi_star;
  return CaratheodoryFn([num, den](cplx z) { return num(z) / den(z); }, system.poles[0], "bernstein-szego");
}

std::size_t bernstein_szego_grid(const OrfSystem& system) {
  const auto& top = system.levels.back();
  double r = 0.0;
  for (const cplx b : system.poles.values()) r = std::max(r, std::abs(b));
  const Poly& c = top.phi.numer();
  std::size_t deg = c.size() - 1;
  while (deg > 0 && std::abs(c[deg]) <= 1e-14 * poly::max_abs(c)) --deg;
  if (deg > 0)
    for (const cplx z : poly::roots(Poly(c.begin(), c.begin() + static_cast<long>(deg + 1)))) r = std::max(r, std::abs(z));
  // the periodic rule loses accuracy like r^N near singularities at radius r and 1/r
  std::size_t n = default_grid_size(system.n_max());
  const double need = r > 0.0 ? 40.0 / -std::log(std::min(r, 0.9995)) : 0.0;
  while (static_cast<double>(n) < need && n < (std::size_t{1} << 16)) n <<= 1;
  return n;
}

CircleMeasure bernstein_szego_measure(const OrfSystem& system, std::size_t grid) {
  const auto& top = system.levels.back();
  const std::size_t n = top.n;
  const cplx bn = system.poles[n];
  const double dn = top.d;
  RatFun phi = top.phi;
  auto w = [phi, bn, dn](double theta) {
    const cplx t = std::polar(1.0, theta);
    return 0.5 * dn * (1.0 - std::norm(bn)) / (std::norm(t - bn) * std::norm(phi(t)));
  };
  return CircleMeasure::from_function(w, grid == 0 ? bernstein_szego_grid(system) : grid, "bernstein-szego");
}

double gram_deviation(std::span<const RatFun> fs, const CircleMeasure& mu, std::size_t grid) {
  const CircleGrid g = make_grid(mu, grid);
  std::vector<std::vector<cplx>> vals;
  for (const auto& f : fs) vals.push_back(g.sample(f));
  double worst = 0.0;
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = 0; j < fs.size(); ++j) {
      const cplx target = i == j ? cplx{1.0, 0.0} : cplx{};
      worst = std::max(worst, std::abs(inner_product(g, vals[i], vals[j]) - target));
    }
  return worst;
}

double boundary_distance(const Evaluable& f, const Evaluable& g, std::size_t m) {
  double worst = 0.0;
  for (const cplx t : circle_points(m, 1.0)) worst = std::max(worst, std::abs(f(t) - g(t)));
  return worst;
}

}  // namespace orfkit
