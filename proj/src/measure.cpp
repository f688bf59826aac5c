#include "orfkit/measure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace orfkit {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

}  // namespace

CircleMeasure CircleMeasure::lebesgue() { return CircleMeasure{}; }

CircleMeasure CircleMeasure::poisson(cplx alpha) {
  if (!(std::abs(alpha) < 1.0)) throw OrfError(ErrorKind::DomainError, "Poisson measure needs |alpha| < 1");
  CircleMeasure mu;
  mu.kind_ = MeasureKind::Poisson;
  mu.alpha_ = alpha;
  mu.label_ = "poisson";
  return mu;
}

CircleMeasure CircleMeasure::samples(std::vector<double> theta, std::vector<double> w) {
  const std::size_t m = theta.size();
  if (m == 0 || w.size() != m) throw OrfError(ErrorKind::DomainError, "sample table needs matching theta/w columns");
  for (std::size_t j = 0; j < m; ++j) {
    if (std::abs(theta[j] - kTwoPi * static_cast<double>(j) / static_cast<double>(m)) > 1e-9)
      throw OrfError(ErrorKind::DomainError, "sample angles must form the uniform grid 2 pi j / M");
    if (!(w[j] > 0.0)) throw OrfError(ErrorKind::NonPositiveWeight, "sample weight " + std::to_string(j) + " <= 0");
  }
  // c_k, k = -K..K, with the Nyquist term split evenly when M is even
  const std::size_t half = m / 2;
  std::vector<cplx> c(2 * half + 1, cplx{});
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    const double k = static_cast<double>(idx) - static_cast<double>(half);
    cplx acc{};
    for (std::size_t j = 0; j < m; ++j) acc += w[j] * std::polar(1.0, -k * theta[j]);
    c[idx] = acc / static_cast<double>(m);
  }
  if (m % 2 == 0 && half > 0) {
    c.front() *= 0.5;
    c.back() *= 0.5;
  }
  CircleMeasure mu;
  mu.kind_ = MeasureKind::Samples;
  mu.label_ = "samples";
  mu.raw_mass_ = c[half].real();
  mu.fourier_ = std::make_shared<const std::vector<cplx>>(std::move(c));
  mu.sample_theta_ = std::move(theta);
  mu.sample_w_ = std::move(w);
  return mu;
}

CircleMeasure CircleMeasure::from_function(std::function<double(double)> w, std::size_t grid, std::string label) {
  if (grid == 0) throw OrfError(ErrorKind::DomainError, "normalization grid must be nonempty");
  double mass = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double v = w(kTwoPi * static_cast<double>(j) / static_cast<double>(grid));
    if (!(v > 0.0)) throw OrfError(ErrorKind::NonPositiveWeight, "density is not positive on the grid");
    mass += v;
  }
  CircleMeasure mu;
  mu.kind_ = MeasureKind::Function;
  mu.label_ = std::move(label);
  mu.raw_mass_ = mass / static_cast<double>(grid);
  mu.density_ = std::move(w);
  return mu;
}

double CircleMeasure::weight(double theta) const {
  switch (kind_) {
    case MeasureKind::Lebesgue:
      return 1.0;
    case MeasureKind::Poisson: {
      const double a2 = std::norm(alpha_);
      return (1.0 - a2) / std::norm(std::polar(1.0, theta) - alpha_);
    }
    case MeasureKind::Samples: {
      const auto& c = *fourier_;
      const double half = static_cast<double>(c.size() / 2);
      double acc = 0.0;
      for (std::size_t idx = 0; idx < c.size(); ++idx)
        acc += (c[idx] * std::polar(1.0, (static_cast<double>(idx) - half) * theta)).real();
      return acc / raw_mass_;
    }
    case MeasureKind::Function:
      return density_(theta) / raw_mass_;
  }
  return 0.0;
}

MeasureSpec CircleMeasure::spec() const {
  MeasureSpec s;
  s.kind = kind_;
  s.alpha = alpha_;
  s.theta = sample_theta_;
  s.w = sample_w_;
  return s;
}

CircleMeasure builtin_measure(const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureKind::Lebesgue: return CircleMeasure::lebesgue();
    case MeasureKind::Poisson: return CircleMeasure::poisson(spec.alpha);
    case MeasureKind::Samples: return CircleMeasure::samples(spec.theta, spec.w);
    case MeasureKind::Function: break;
  }
  throw OrfError(ErrorKind::DomainError, "function measures have no built-in spec");
}

std::size_t default_grid_size(std::size_t n_max) {
  std::size_t n = std::max<std::size_t>(1024, 64 * (n_max + 1));
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

std::vector<cplx> CircleGrid::sample(const Evaluable& f) const {
  std::vector<cplx> out(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) out[j] = f(t[j]);
  return out;
}

CircleGrid make_grid(const CircleMeasure& mu, std::size_t n) {
  if (n < 256 || !is_power_of_two(n))
    throw OrfError(ErrorKind::DomainError, "quadrature grid must be a power of two >= 256");
  CircleGrid g;
  g.theta.resize(n);
  g.t.resize(n);
  g.w.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    g.theta[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(n);
    g.t[j] = std::polar(1.0, g.theta[j]);
    g.w[j] = mu.weight(g.theta[j]);
    if (!(g.w[j] > 0.0))
      throw OrfError(ErrorKind::NonPositiveWeight, "weight not positive at theta = " + std::to_string(g.theta[j]));
  }
  return g;
}

cplx inner_product(const CircleGrid& grid, std::span<const cplx> f_vals, std::span<const cplx> g_vals) {
  cplx acc{};
  for (std::size_t j = 0; j < grid.size(); ++j) acc += f_vals[j] * std::conj(g_vals[j]) * grid.w[j];
  return acc / static_cast<double>(grid.size());
}

cplx inner_product(const CircleMeasure& mu, const Evaluable& f, const Evaluable& g, std::size_t n) {
  const CircleGrid grid = make_grid(mu, n);
  const auto fv = grid.sample(f);
  const auto gv = grid.sample(g);
  return inner_product(grid, fv, gv);
}

CaratheodoryFn::CaratheodoryFn(Evaluable f, cplx beta0, std::string label)
    : f_(std::move(f)), beta0_(beta0), label_(std::move(label)) {
  if (!(std::abs(beta0) < 1.0)) throw OrfError(ErrorKind::DomainError, "C-function anchor outside the disk");
}

CaratheodoryFn CaratheodoryFn::constant_one(cplx beta0) {
  return CaratheodoryFn([](cplx) { return cplx{1.0, 0.0}; }, beta0, "one");
}

cplx CaratheodoryFn::operator()(cplx z) const {
  if (!(std::abs(z) < 1.0)) throw OrfError(ErrorKind::DomainError, "C-function evaluated outside the open disk");
  return f_(z);
}

namespace {

struct HerglotzData {
  std::vector<cplx> u;       // uniform nodes in the zeta_0 variable
  std::vector<double> rule;  // pulled-back density times the rule weight
  std::vector<cplx> moments;
};

}  // namespace

CaratheodoryFn caratheodory_from_measure(const CircleMeasure& mu, cplx beta0, std::size_t grid) {
  const std::size_t n = grid == 0 ? 2048 : grid;
  if (n < 256 || !is_power_of_two(n))
    throw OrfError(ErrorKind::DomainError, "quadrature grid must be a power of two >= 256");
  const KernelParams kp(beta0);
  // The rule is uniform in u = zeta_0(t), where D(t, z) = (u + s)/(u - s) has the
  // plain Herglotz form and the moments are exact discrete Fourier sums.
  const cplx eta = std::abs(beta0) == 0.0 ? cplx{1.0, 0.0} : std::conj(beta0) / std::abs(beta0);
  const double shrink = 1.0 - std::norm(beta0);
  auto data = std::make_shared<HerglotzData>();
  data->u.resize(n);
  data->rule.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const cplx u = std::polar(1.0, kTwoPi * static_cast<double>(j) / static_cast<double>(n));
    const cplx v = std::conj(eta) * u;
    const cplx t = (v + beta0) / (1.0 + std::conj(beta0) * v);
    const double w = mu.weight(std::arg(t));
    if (!(w > 0.0)) throw OrfError(ErrorKind::NonPositiveWeight, "weight not positive at theta = " + std::to_string(std::arg(t)));
    data->u[j] = u;
    data->rule[j] = w * shrink / std::norm(1.0 + std::conj(beta0) * v) / static_cast<double>(n);
  }

  // m_k = integral conj(zeta_0(t))^k d mu(t), kept until the tail is negligible
  std::vector<cplx> roots(n);
  for (std::size_t j = 0; j < n; ++j) roots[j] = std::conj(data->u[j]);
  double m0 = 0.0;
  int quiet = 0;
  for (std::size_t k = 0; k <= n / 2; ++k) {
    cplx m{};
    for (std::size_t j = 0; j < n; ++j) m += roots[(j * k) % n] * data->rule[j];
    if (k == 0) m0 = std::abs(m);
    data->moments.push_back(m);
    quiet = std::abs(m) < 1e-18 * m0 ? quiet + 1 : 0;
    if (quiet >= 8) break;
  }

  auto f = [data, kp](cplx z) -> cplx {
    const cplx s = kp.zeta0(z);
    cplx acc{};
    if (std::abs(s) <= 0.9) {
      for (std::size_t j = 0; j < data->u.size(); ++j) acc += (data->u[j] + s) / (data->u[j] - s) * data->rule[j];
      return acc;
    }
    for (std::size_t k = data->moments.size(); k-- > 1;) acc = (acc + data->moments[k]) * s;
    return data->moments[0] + 2.0 * acc;
  };
  return CaratheodoryFn(std::move(f), beta0, "measure:" + mu.label());
}

double weight_from_caratheodory(const CaratheodoryFn& f, cplx beta0, double theta) {
  const double h = 1.0 - kBoundaryApproach;
  const cplx e = std::polar(1.0, theta);
  const double u1 = f((1.0 - h) * e).real();
  const double u2 = f((1.0 - 2.0 * h) * e).real();
  const double boundary = 2.0 * u1 - u2;
  const double w = boundary * (1.0 - std::norm(beta0)) / std::norm(e - beta0);
  if (w < 0.0)
    throw OrfError(ErrorKind::NegativeDensity, "recovered density " + std::to_string(w) + " at theta = " +
                                                   std::to_string(theta));
  return w;
}

cplx circle_mean(const Evaluable& f, cplx center, double radius, int points) {
  cplx acc{};
  for (int j = 0; j < points; ++j) acc += f(center + std::polar(radius, kTwoPi * (j + 0.5) / points));
  return acc / static_cast<double>(points);
}

CaratheodoryDiagnostics diagnose(const CaratheodoryFn& f, std::span<const cplx> points) {
  CaratheodoryDiagnostics d;
  d.min_real_part = std::numeric_limits<double>::infinity();
  d.anchor_error = std::abs(f(f.beta0()) - 1.0);
  const double h = 1e-5;
  for (const cplx z : points) {
    const cplx v = f(z);
    d.min_real_part = std::min(d.min_real_part, v.real());
    if (std::abs(z) + h >= 1.0) continue;
    // df/dz along x and along y must agree for a holomorphic f
    const cplx dx = (f(z + h) - f(z - h)) / (2.0 * h);
    const cplx dy = (f(z + cplx{0.0, h}) - f(z - cplx{0.0, h})) / (2.0 * h);
    const double scale = 1.0 + std::abs(dx) + std::abs(v);
    d.cauchy_riemann = std::max(d.cauchy_riemann, std::abs(dx + cplx{0.0, 1.0} * dy) / scale);
  }
  return d;
}

}  // namespace orfkit
