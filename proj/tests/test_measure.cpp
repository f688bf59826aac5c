#include <doctest.h>

#include <cmath>
#include <numbers>

#include "orfkit/measure.hpp"

using namespace orfkit;

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TEST_CASE("builtin densities") {
  CHECK(CircleMeasure::lebesgue().weight(1.3) == 1.0);
  const CircleMeasure p = CircleMeasure::poisson(0.5);
  CHECK(std::abs(p.weight(0.0) - 3.0) < 1e-14);  // 0.75 / 0.25
  CHECK(std::abs(p.weight(std::numbers::pi) - 0.75 / 2.25) < 1e-14);
  CHECK_THROWS_AS(CircleMeasure::poisson(1.0), OrfError);
  CHECK(default_grid_size(2) == 1024);
  CHECK(default_grid_size(20) == 2048);
}

TEST_CASE("inner products") {
  // sum 0.25^k = 4/3
  const Evaluable f = [](cplx z) { return z / (1.0 - 0.5 * z); };
  CHECK(std::abs(inner_product(CircleMeasure::lebesgue(), f, f, 1024) - 4.0 / 3.0) < 1e-14);
  // mass of the Poisson measure
  const Evaluable one = [](cplx) { return cplx{1.0, 0.0}; };
  CHECK(std::abs(inner_product(CircleMeasure::poisson({0.2, 0.5}), one, one, 1024) - 1.0) < 1e-14);
  CHECK_THROWS_AS(make_grid(CircleMeasure::lebesgue(), 1000), OrfError);
}

TEST_CASE("sampled densities interpolate trigonometric polynomials") {
  const std::size_t m = 64;
  std::vector<double> th(m), w(m);
  auto dens = [](double t) { return 2.0 + std::cos(t) + 0.5 * std::sin(3.0 * t); };
  for (std::size_t j = 0; j < m; ++j) {
    th[j] = kTwoPi * static_cast<double>(j) / static_cast<double>(m);
    w[j] = dens(th[j]);
  }
  const CircleMeasure mu = CircleMeasure::samples(th, w);
  CHECK(std::abs(mu.raw_mass() - 2.0) < 1e-14);
  CHECK(std::abs(mu.weight(0.123) - dens(0.123) / 2.0) < 1e-13);
  w[5] = -1.0;
  CHECK_THROWS_AS(CircleMeasure::samples(th, w), OrfError);
  th[3] += 0.01;
  CHECK_THROWS_AS(CircleMeasure::samples(th, std::vector<double>(m, 1.0)), OrfError);
}

TEST_CASE("C-functions of measures") {
  SUBCASE("Lebesgue with beta_0 = 0 gives 1") {
    const CaratheodoryFn f = caratheodory_from_measure(CircleMeasure::lebesgue(), 0.0, 1024);
    CHECK(std::abs(f({0.3, 0.2}) - 1.0) < 1e-14);
    CHECK(std::abs(f({0.0, 0.999}) - 1.0) < 1e-12);
  }
  SUBCASE("Poisson density") {
    // integral of (t + z)/(t - z) against P_alpha is (1 + conj(alpha) z)/(1 - conj(alpha) z)
    const cplx a{0.3, -0.4};
    const CaratheodoryFn f = caratheodory_from_measure(CircleMeasure::poisson(a), 0.0, 1024);
    for (const cplx z : {cplx{0.1, 0.2}, cplx{-0.5, 0.4}, cplx{0.0, 0.97}}) {
      const cplx want = (1.0 + std::conj(a) * z) / (1.0 - std::conj(a) * z);
      CHECK(std::abs(f(z) - want) < 1e-12);
    }
    CHECK_THROWS_AS(f(1.0), OrfError);
  }
  SUBCASE("anchor at beta_0 and positivity") {
    const CaratheodoryFn f = caratheodory_from_measure(CircleMeasure::poisson({0.2, 0.1}), {0.4, -0.3}, 2048);
    std::vector<cplx> pts{{0.1, 0.1}, {-0.6, 0.2}, {0.7, 0.5}, {0.0, -0.9}};
    const auto d = diagnose(f, pts);
    CHECK(d.anchor_error < 1e-13);
    CHECK(d.min_real_part > 0.0);
    CHECK(d.cauchy_riemann < 1e-8);
  }
}

TEST_CASE("boundary recovery of the density") {
  for (const cplx b0 : {cplx{0.0, 0.0}, cplx{0.5, 0.2}, cplx{-0.7, 0.0}}) {
    const CircleMeasure mu = CircleMeasure::poisson({-0.3, 0.45});
    const CaratheodoryFn f = caratheodory_from_measure(mu, b0, 2048);
    for (double th : {0.0, 1.0, 2.5, 4.0, 5.9}) CHECK(std::abs(weight_from_caratheodory(f, b0, th) - mu.weight(th)) < 1e-6);
  }
  const CaratheodoryFn minus([](cplx) { return cplx{-1.0, 0.0}; }, 0.0, "negative");
  CHECK_THROWS_AS(weight_from_caratheodory(minus, 0.0, 0.3), OrfError);
}

TEST_CASE("circle mean reproduces holomorphic values") {
  const Evaluable f = [](cplx z) { return std::exp(z) / (2.0 - z); };
  CHECK(std::abs(circle_mean(f, {0.2, 0.1}, 2e-3) - f({0.2, 0.1})) < 1e-14);
}
