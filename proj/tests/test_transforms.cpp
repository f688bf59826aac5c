#include <doctest.h>

#include <cmath>

#include "orfkit/transforms.hpp"

using namespace orfkit;

namespace {

double sup_diff(const RatFun& f, const Evaluable& g) {
  return boundary_distance([&](cplx z) { return f(z); }, g, 256);
}

OrfSystem section6(std::size_t n) {
  std::vector<cplx> b(n + 1, cplx{});
  b[1] = 0.5;
  return gram_schmidt_orf(CircleMeasure::lebesgue(), PoleSequence(b), n, 1024);
}

OrfSystem mixed() {
  const PoleSequence p({{0.2, 0.1}, {-0.5, 0.2}, {0.3, -0.6}, {0.0, 0.4}, {0.6, 0.3}, {-0.2, -0.3}});
  return gram_schmidt_orf(CircleMeasure::poisson({0.1, -0.4}), p, 5, 2048);
}

}  // namespace

TEST_CASE("order-1 ARFs of the one-pole Lebesgue ladder") {
  const OrfSystem s = section6(4);
  const ArfPair a = arf_explicit(s, 1, 2);
  // (2/sqrt 3)(z - 0.5)
  CHECK(sup_diff(a.phi, [](cplx z) { return 2.0 / std::sqrt(3.0) * (z - 0.5); }) < 1e-12);
  CHECK(sup_diff(a.psi, [&](cplx z) { return a.phi(z); }) < 1e-12);
  const ArfPair top = arf_explicit(s, 1, 4);
  // sqrt(1/0.75) (z - 0.5)/z B_{4\1} with beta_2..4 = 0
  CHECK(sup_diff(top.phi, [](cplx z) { return std::sqrt(1.0 / 0.75) * (z - 0.5) * z * z; }) < 1e-12);

  const CaratheodoryFn f = caratheodory_from_measure(CircleMeasure::lebesgue(), 0.0, 1024);
  const ArfSystem r = arf_recurrence(s, 1, 4, f, 1024);
  CHECK(r.c.size() == 4);
  CHECK(std::abs(r.c[0] - 2.0) < 1e-12);
  CHECK(std::abs((*r.caratheodory)({0.3, -0.2}) - 1.0) < 1e-12);
  for (double th : {0.0, 0.9, 3.1, 5.0})
    CHECK(std::abs(r.measure->weight(th) - 0.75 / std::norm(std::polar(1.0, th) - 0.5)) < 1e-8);
  std::vector<RatFun> fs;
  for (const auto& l : r.system.levels) fs.push_back(l.phi);
  CHECK(gram_deviation(fs, *r.measure, 1024) < 1e-10);
}

TEST_CASE("explicit and recursive ARFs agree") {
  const OrfSystem s = mixed();
  for (std::size_t k = 0; k <= 3; ++k) {
    const ArfSystem r = arf_recurrence(s, k, 5);
    CHECK(r.system.poles[0] == s.poles[k]);
    for (std::size_t n = k; n <= 5; ++n) {
      const ArfPair e = arf_explicit(s, k, n);
      CHECK(sup_diff(e.phi, [&](cplx z) { return r.level(n).phi(z); }) < 1e-9);
      CHECK(sup_diff(e.psi, [&](cplx z) { return r.level(n).psi(z); }) < 1e-9);
    }
  }
  // the degenerate level is exactly the constant 1
  const ArfPair same = arf_explicit(s, 2, 2);
  CHECK(same.phi.numer() == Poly{cplx{1.0, 0.0}});
  CHECK_THROWS_AS(arf_explicit(s, 3, 2), OrfError);
}

TEST_CASE("order-0 ARFs reproduce the ladder") {
  const OrfSystem s = mixed();
  const ArfSystem r = arf_recurrence(s, 0, 5);
  for (std::size_t n = 0; n <= 5; ++n) CHECK(coeff_distance(r.level(n).phi, s[n].phi) < 1e-10);
}

TEST_CASE("transformed C-functions") {
  const OrfSystem s = mixed();
  const CaratheodoryFn f = caratheodory_from_measure(*s.measure, s.poles[0], 2048);
  for (std::size_t k = 0; k <= 3; ++k) {
    const CaratheodoryFn fk = arf_caratheodory(s, f, k);
    CHECK(std::abs(fk(s.poles[k]) - 1.0) < 1e-9);
    for (const cplx z : {cplx{0.1, 0.2}, cplx{-0.8, 0.3}, cplx{0.0, -0.95}}) CHECK(fk(z).real() > 0.0);
    // same function through the quad
    const CaratheodoryFn fq = transformed_caratheodory(arf_quad(s, k), f);
    CHECK(std::abs(fq({0.25, 0.25}) - fk({0.25, 0.25})) < 1e-10);
  }
}

TEST_CASE("quad conditions gate the transform") {
  const OrfSystem s = mixed();
  const CaratheodoryFn f = caratheodory_from_measure(*s.measure, s.poles[0], 2048);
  const SelfReciprocalQuad q = arf_quad(s, 2);
  const QuadReport rep = check_quad(q, f, std::vector<cplx>{s.poles[3], s.poles[4]});
  CHECK(rep.passed());
  CHECK(rep.at("self_reciprocal").value < 1e-14);
  CHECK_THROWS_AS(apply_transform(s, q, nullptr, 2.0, 1), OrfError);
  try {
    apply_transform(s, q, nullptr, 2.0, 1);
  } catch (const OrfError& e) {
    CHECK(e.kind() == ErrorKind::ConditionUnchecked);
  }
  SelfReciprocalQuad other = q;
  other.tau_A = -1.0;
  try {
    apply_transform(s, other, &rep, 2.0, 1);
    FAIL("digest mismatch accepted");
  } catch (const OrfError& e) {
    CHECK(e.kind() == ErrorKind::ConditionUnchecked);
  }

  SUBCASE("B vanishing at beta_0") {
    const PoleSequence p({0.5, 0.0, 0.0});
    // i (z - 0.5)(1 - 0.5 z) is self-reciprocal with sign -1; z is invariant
    const RatFun b(p, poly::scaled(poly::multiply(poly::linear(-0.5, 1.0), poly::linear(1.0, -0.5)), {0.0, 1.0}));
    const RatFun a(p, Poly{0.0, 1.0, 0.0});
    const SelfReciprocalQuad bad{a, b, RatFun::zero(p, 2), a, 1.0, 2, 0, PoleSequence({0.0})};
    const QuadReport br = check_quad(bad, CaratheodoryFn::constant_one(0.5));
    CHECK(br.at("self_reciprocal").pass);
    CHECK_FALSE(br.at("b_nonzero").pass);
    const OrfSystem t = gram_schmidt_orf(CircleMeasure::lebesgue(), PoleSequence({0.5, 0.0, 0.0, 0.0}), 3, 1024);
    try {
      apply_transform(t, bad, &br, 1.0, 1);
      FAIL("violated quad accepted");
    } catch (const OrfError& e) {
      CHECK(e.kind() == ErrorKind::ConditionViolated);
    }
  }
}

TEST_CASE("identity quad") {
  const OrfSystem s = mixed();
  const PoleSequence p0 = s.poles.prefix(1);
  const SelfReciprocalQuad id{RatFun::constant(p0, 1.0), RatFun::constant(p0, 0.0), RatFun::constant(p0, 0.0),
                              RatFun::constant(p0, 1.0), 1.0, 0, 0, p0};
  const QuadReport rep = check_quad(id, caratheodory_from_measure(*s.measure, s.poles[0], 2048));
  REQUIRE(rep.passed());
  const TransformResult t = apply_transform(s, id, &rep, 2.0, 3);
  CHECK(coeff_distance(t.G, scale(s[3].phi, 0.5)) < 1e-15);
  CHECK(coeff_distance(t.J, scale(s[3].psi, 0.5)) < 1e-15);
  CHECK(t.tilde_full == s.poles);
}

TEST_CASE("ARF relations and the transformed determinant") {
  const OrfSystem s = mixed();
  for (const auto& [j, k, n] : std::vector<std::array<std::size_t, 3>>{{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}, {1, 3, 5}}) {
    const RelationResiduals r = relation_residuals(s, j, k, n);
    CHECK(r.max() < 1e-10);
  }
  const CaratheodoryFn f = caratheodory_from_measure(*s.measure, s.poles[0], 2048);
  for (std::size_t k = 1; k <= 3; ++k) {
    const SelfReciprocalQuad q = arf_quad(s, k);
    const QuadReport rep = check_quad(q, f);
    for (std::size_t n = k + 1; n <= 5; ++n) {
      const TransformResult t = apply_transform(s, q, &rep, std::sqrt(s[k].d * s[n].d), n - k);
      CHECK(t.remainder < 1e-12);
      const DoubledDeterminantReport rr = doubled_determinant_residual(t);
      CHECK(std::abs(rr.d_tilde - 2.0) < 1e-10);
      CHECK(rr.residual_two < 1e-10);
    }
  }
}
