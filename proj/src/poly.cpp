#include "orfkit/poly.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace orfkit::poly {

cplx horner(std::span<const cplx> c, cplx z) {
  cplx acc{0.0, 0.0};
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Poly multiply(std::span<const cplx> a, std::span<const cplx> b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly linear(cplx a, cplx b) { return Poly{a, b}; }

Poly reverse_conj(std::span<const cplx> c) {
  Poly out(c.size());
  for (std::size_t k = 0; k < c.size(); ++k) out[k] = std::conj(c[c.size() - 1 - k]);
  return out;
}

Poly add(std::span<const cplx> a, std::span<const cplx> b) {
  Poly out(std::max(a.size(), b.size()), cplx{0.0, 0.0});
  for (std::size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly scaled(std::span<const cplx> a, cplx s) {
  Poly out(a.begin(), a.end());
  for (auto& c : out) c *= s;
  return out;
}

double max_abs(std::span<const cplx> c) {
  double m = 0.0;
  for (const auto& v : c) m = std::max(m, std::abs(v));
  return m;
}

Division divide_linear(std::span<const cplx> p, cplx a, cplx b) {
  const std::size_t m = p.size() - 1;
  Division out;
  if (p.size() < 2) {
    out.remainder = p.empty() ? cplx{} : p[0];
    return out;
  }
  out.quotient.assign(m, cplx{0.0, 0.0});
  auto& q = out.quotient;
  if (std::abs(b) >= std::abs(a)) {
    // root inside the closed unit disk: sweep from the top
    q[m - 1] = p[m] / b;
    for (std::size_t k = m - 1; k >= 1; --k) q[k - 1] = (p[k] - a * q[k]) / b;
    out.remainder = p[0] - a * q[0];
  } else {
    q[0] = p[0] / a;
    for (std::size_t k = 1; k < m; ++k) q[k] = (p[k] - b * q[k - 1]) / a;
    out.remainder = p[m] - b * q[m - 1];
  }
  return out;
}

std::vector<cplx> roots(std::span<const cplx> c) {
  const std::size_t n = c.size() - 1;
  const auto m = static_cast<Eigen::Index>(n);
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(m, m);
  for (Eigen::Index i = 1; i < m; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < m; ++i) comp(i, m - 1) = -c[static_cast<std::size_t>(i)] / c[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);
  std::vector<cplx> out(n);
  for (Eigen::Index i = 0; i < m; ++i) out[static_cast<std::size_t>(i)] = es.eigenvalues()(i);
  return out;
}

}  // namespace orfkit::poly
