// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "orfkit/io.hpp"
#include "orfkit/transforms.hpp"

using namespace orfkit;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Rng {
  std::mt19937_64 g;
  explicit Rng(std::uint64_t seed) : g(seed) {}
  double uniform() { return static_cast<double>(g() >> 11) * 0x1.0p-53; }
  cplx disk(double r) { return std::polar(r * std::sqrt(uniform()), kTwoPi * uniform()); }
};

struct TestSystem {
  std::string name;
  OrfSystem system;
  CircleMeasure measure;
  CaratheodoryFn f;
  std::size_t grid;
};

std::vector<TestSystem> random_ladders() {
  std::vector<TestSystem> out;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    Rng rng(seed);
    std::vector<cplx> b, lam;
    for (int i = 0; i <= 8; ++i) b.push_back(rng.disk(0.7));
    for (int i = 0; i < 8; ++i) lam.push_back(rng.disk(0.6));
    OrfSystem s = synthesize(lam, PoleSequence(b));
    const std::size_t grid = bernstein_szego_grid(s);
    CircleMeasure mu = bernstein_szego_measure(s, grid);
    CaratheodoryFn f = bernstein_szego_caratheodory(s);
    out.push_back({"lambdas#" + std::to_string(seed), std::move(s), mu, std::move(f), grid});
  }
  for (std::uint64_t seed = 11; seed <= 12; ++seed) {
    Rng rng(seed);
    std::vector<cplx> b;
    for (int i = 0; i <= 8; ++i) b.push_back(rng.disk(0.8));
    const CircleMeasure mu = CircleMeasure::poisson(rng.disk(0.6));
    OrfSystem s = gram_schmidt_orf(mu, PoleSequence(b), 8, 2048);
    CaratheodoryFn f = caratheodory_from_measure(mu, b[0], 2048);
    out.push_back({"poisson#" + std::to_string(seed), std::move(s), mu, std::move(f), 2048});
  }
  return out;
}

OrfSystem one_pole_ladder(std::size_t n) {
  std::vector<cplx> b(n + 1, cplx{});
  b[1] = 0.5;
  return gram_schmidt_orf(CircleMeasure::lebesgue(), PoleSequence(b), n, 2048);
}

double sup(const RatFun& f, const Evaluable& g) { return boundary_distance([&](cplx z) { return f(z); }, g, 512); }

struct Outcome {
  bool pass;
  std::string detail;
};

char buf[512];

template <typename... A>
std::string fmt(const char* f, A... a) {
  std::snprintf(buf, sizeof buf, f, a...);
  return buf;
}

Outcome c1() {
  const auto t0 = std::chrono::steady_clock::now();
  const OrfSystem s = one_pole_ladder(2);
  const double phi = sup(s[1].phi, [](cplx z) { return std::sqrt(3.0) / 2.0 * z / (1.0 - 0.5 * z); });
  const double lam = std::max(std::abs(*s[1].lambda), std::abs(*s[2].lambda));
  const CaratheodoryFn f = caratheodory_from_measure(CircleMeasure::lebesgue(), 0.0, 2048);
  Rng rng(42);
  double ferr = 0.0;
  for (int i = 0; i < 50; ++i) ferr = std::max(ferr, std::abs(f(rng.disk(0.99)) - 1.0));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {phi < 1e-10 && lam < 1e-10 && ferr < 1e-10 && secs < 1.0,
          fmt("phi_1 err %.2e, max|lambda| %.2e, max|F-1| %.2e, %.3f s", phi, lam, ferr, secs)};
}

Outcome c2() {
  double worst = 0.0;
  const std::vector<std::function<CircleMeasure(Rng&)>> measures = {
      [](Rng&) { return CircleMeasure::lebesgue(); },
      [](Rng& r) { return CircleMeasure::poisson(r.disk(0.7)); },
      [](Rng& r) {
        std::vector<double> th(64), w(64);
        const double a = 0.5 * r.uniform(), b = 0.3 * r.uniform();
        for (int j = 0; j < 64; ++j) {
          th[j] = kTwoPi * j / 64.0;
          w[j] = 1.5 + a * std::cos(th[j]) + b * std::sin(2.0 * th[j]);
        }
        return CircleMeasure::samples(th, w);
      }};
  int runs = 0;
  for (std::uint64_t seed = 0; seed < 3; ++seed)
    for (const auto& make : measures) {
      Rng rng(100 + seed);
      std::vector<cplx> b;
      for (int i = 0; i <= 10; ++i) b.push_back(rng.disk(0.8));
      const CircleMeasure mu = make(rng);
      const OrfSystem s = gram_schmidt_orf(mu, PoleSequence(b), 10, 2048);
      std::vector<RatFun> fs;
      for (const auto& l : s.levels) fs.push_back(l.phi);
      worst = std::max(worst, gram_deviation(fs, mu, 2048));
      ++runs;
    }
  return {worst < 1e-9, fmt("%d ladders up to n = 10, max Gram deviation %.2e", runs, worst)};
}

Outcome c3(const std::vector<TestSystem>& ts) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t n = 0; n <= 8; ++n) worst = std::max(worst, determinant_residual(ts[i].system, n).residual_two);
  return {worst < 1e-10, fmt("5 random lambda ladders, n <= 8, max residual %.2e", worst)};
}

Outcome c4(const std::vector<TestSystem>& ts) {
  double modulus = 0.0, sep = 1e300;
  for (const auto& t : ts)
    for (std::size_t n = 1; n <= 8; ++n)
      for (const cplx tau : {cplx{1, 0}, cplx{0, 1}, cplx{-1, 0}, cplx{0, -1}}) {
        const auto z = para_zeros(para_pair(t.system, n, tau));
        for (std::size_t i = 0; i < z.size(); ++i) {
          modulus = std::max(modulus, std::abs(std::abs(z[i]) - 1.0));
          for (std::size_t k = 0; k < i; ++k) sep = std::min(sep, std::abs(z[i] - z[k]));
        }
      }
  return {modulus < 1e-9 && sep > 1e-8, fmt("max ||z|-1| %.2e, min separation %.2e", modulus, sep)};
}

Outcome c5(const std::vector<TestSystem>& ts) {
  double worst = 0.0;
  for (const auto& t : ts) {
    OrfLevel cur = t.system[0];
    for (std::size_t n = 0; n <= 8; ++n) {
      if (n > 0) cur = recurrence_step(cur, *t.system[n].lambda, t.system[n].rho, t.system.poles, n);
      const RatFun psi = second_kind_integral(t.measure, t.system, n, t.grid);
      worst = std::max(worst, sup(psi, [&](cplx z) { return cur.psi(z); }));
    }
  }
  return {worst < 1e-8, fmt("%zu ladders, n <= 8, max sup-norm gap %.2e", ts.size(), worst)};
}

Outcome c6(const std::vector<TestSystem>& ts) {
  double res = 0.0, g = 1e300;
  Rng rng(6);
  std::vector<cplx> pts;
  for (int i = 0; i < 100; ++i) pts.push_back(rng.disk(0.95));
  for (const auto& t : ts)
    for (std::size_t n = 0; n <= 8; ++n) {
      const InterpolationReport r = interpolation_residuals(t.system, t.f, n, pts);
      res = std::max({res, r.max_upper() / r.scale, r.max_lower() / r.scale});
      g = std::min(g, r.min_g / r.scale);
    }
  return {res < 1e-8 && g > 1e-8, fmt("max residual/scale %.2e, min |g_n|/scale %.2e", res, g)};
}

Outcome c7(const std::vector<TestSystem>& ts) {
  double worst = 0.0;
  for (const auto& t : ts)
    for (std::size_t k = 0; k <= 3; ++k) {
      const ArfSystem r = arf_recurrence(t.system, k, 8);
      for (std::size_t n = k; n <= 8; ++n) {
        const ArfPair e = arf_explicit(t.system, k, n);
        worst = std::max(worst, sup(e.phi, [&](cplx z) { return r.level(n).phi(z); }));
        worst = std::max(worst, sup(e.psi, [&](cplx z) { return r.level(n).psi(z); }));
      }
    }
  const ArfPair a = arf_explicit(one_pole_ladder(2), 1, 2);
  const double closed = sup(a.phi, [](cplx z) { return 2.0 / std::sqrt(3.0) * (z - 0.5); });
  return {worst < 1e-9 && closed < 1e-10, fmt("explicit vs recursive %.2e, closed form %.2e", worst, closed)};
}

Outcome c8() {
  const OrfSystem s = one_pole_ladder(6);
  const CaratheodoryFn f = caratheodory_from_measure(CircleMeasure::lebesgue(), 0.0, 2048);
  const ArfSystem a = arf_recurrence(s, 1, 6, f, 2048);
  std::vector<RatFun> fs;
  for (const auto& l : a.system.levels) fs.push_back(l.phi);
  const double gram = gram_deviation(fs, *a.measure, 2048);
  double w = 0.0;
  for (int j = 0; j < 512; ++j) {
    const double th = kTwoPi * j / 512.0;
    const double rec = weight_from_caratheodory(*a.caratheodory, 0.5, th);
    w = std::max(w, std::abs(rec - 0.75 / std::norm(std::polar(1.0, th) - 0.5)));
  }
  return {gram < 1e-8 && w < 1e-8, fmt("Gram deviation %.2e, weight error %.2e", gram, w)};
}

Outcome c9(const std::vector<TestSystem>& ts) {
  double worst = 0.0;
  for (const auto& t : ts)
    for (const auto& [j, k, n] : std::vector<std::array<std::size_t, 3>>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}})
      worst = std::max(worst, relation_residuals(t.system, j, k, n).max());
  return {worst < 1e-10, fmt("4 triples on %zu ladders, both forms, max %.2e", ts.size(), worst)};
}

Outcome c10(const std::vector<TestSystem>& ts) {
  double min_re = 1e300, anchor = 0.0;
  Rng rng(10);
  std::vector<cplx> pts;
  for (int i = 0; i < 200; ++i) pts.push_back(rng.disk(0.999));
  for (const auto& t : ts)
    for (std::size_t k = 0; k <= 3; ++k) {
      const CaratheodoryFn fk = arf_caratheodory(t.system, t.f, k);
      for (const cplx z : pts) min_re = std::min(min_re, fk(z).real());
      anchor = std::max(anchor, std::abs(fk(t.system.poles[k]) - 1.0));
    }
  return {min_re > 0.0 && anchor < 1e-9, fmt("min Re F^(k) %.3e, max anchor error %.2e", min_re, anchor)};
}

Outcome c11(const std::vector<TestSystem>& ts) {
  double worst = 0.0, dev = 0.0;
  for (const auto& t : ts)
    for (std::size_t k = 1; k <= 3; ++k) {
      const SelfReciprocalQuad q = arf_quad(t.system, k);
      const QuadReport rep = check_quad(q, t.f);
      for (std::size_t n = k + 1; n <= 8; ++n) {
        const TransformResult tr = apply_transform(t.system, q, &rep, std::sqrt(t.system[k].d * t.system[n].d), n - k);
        const DoubledDeterminantReport r = doubled_determinant_residual(tr);
        worst = std::max(worst, r.residual_two);
        dev = std::max(dev, std::abs(r.d_tilde - 2.0));
      }
    }
  return {worst < 1e-10, fmt("max residual against 2 P~B~ %.2e, max |d~ - 2| %.2e", worst, dev)};
}

Outcome c12(const std::vector<TestSystem>& ts) {
  double lam = 0.0;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t n = 1; n <= 8; ++n)
      lam = std::max(lam, std::abs(extract_parameters(ts[i].system, n).lambda - *ts[i].system[n].lambda));
  double w = 0.0;
  for (const cplx b0 : {cplx{0.0, 0.0}, cplx{0.6, -0.2}})
    for (const CircleMeasure& mu : {CircleMeasure::poisson({0.4, 0.3}), ts[5].measure}) {
      const CaratheodoryFn f = caratheodory_from_measure(mu, b0, 2048);
      for (int j = 0; j < 128; ++j) {
        const double th = kTwoPi * (j + 0.5) / 128.0;
        w = std::max(w, std::abs(weight_from_caratheodory(f, b0, th) - mu.weight(th)));
      }
    }
  bool exact = true;
  for (const auto& t : ts) {
    const std::string a = io::to_json(t.system).dump();
    exact = exact && io::to_json(io::orf_system_from_json(io::json::parse(a))).dump() == a;
  }
  return {lam < 1e-10 && w < 1e-6 && exact,
          fmt("lambda %.2e, weight %.2e, JSON %s", lam, w, exact ? "bit-exact" : "MISMATCH")};
}

}  // namespace

int main() {
  const std::vector<TestSystem> ts = random_ladders();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"one-pole Lebesgue example", c1},
      {"orthonormality", c2},
      {"determinant formula", [&] { return c3(ts); }},
      {"para-orthogonal zeros", [&] { return c4(ts); }},
      {"second-kind cross-check", [&] { return c5(ts); }},
      {"interpolation", [&] { return c6(ts); }},
      {"ARF dual construction", [&] { return c7(ts); }},
      {"transformed measure", c8},
      {"ARF relations", [&] { return c9(ts); }},
      {"C-function preservation", [&] { return c10(ts); }},
      {"transformed determinant", [&] { return c11(ts); }},
      {"round trips", [&] { return c12(ts); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o{false, ""};
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    std::printf("criterion %2zu %-28s %s  %s\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL", o.detail.c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
