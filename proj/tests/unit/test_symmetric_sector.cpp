#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dumbbell/closedform.hpp"
#include "dumbbell/errors.hpp"
#include "dumbbell/solve.hpp"
#include "dumbbell/symmetric_sector.hpp"

using namespace dumbbell;

namespace {

StationaryState symmetric(double L, int N, double lam) {
  return hybrid(gaussian_seed(make_grid(L, N), lam, Placement::Segment), lam);
}

}  // namespace

TEST_CASE("double and quad refinements agree with the dense solver") {
  auto s = symmetric(kPi / 2, 128, -10.0);
  REQUIRE(s.tag == StateTag::Symmetric);
  auto d = refine_symmetric(s, Precision::Double);
  auto q = refine_symmetric(s, Precision::Quad);
  CHECK(d.charge == doctest::Approx(s.Q).epsilon(1e-12));
  CHECK(q.charge == doctest::Approx(s.Q).epsilon(1e-12));
  CHECK(q.lplus_odd_min == doctest::Approx(s.lplus_spectrum_head[1]).epsilon(1e-8));
  CHECK(d.lplus_odd_min == doctest::Approx(q.lplus_odd_min).epsilon(1e-8));
  CHECK(q.lplus_even_min == doctest::Approx(s.lplus_spectrum_head[0]).epsilon(1e-10));
  CHECK(q.residual < 1e-28);
  CHECK(d.residual < 1e-10);
  CHECK(q.newton_iterations <= 6);
}

TEST_CASE("discrete line soliton") {
  const double h = 2 * kPi / 256, lam = -9.0;
  auto q = line_soliton(h, lam);
  auto d = line_soliton(h, lam, Precision::Double);
  CHECK(q.charge == doctest::Approx(6.0).epsilon(1e-3));
  CHECK(q.peak == doctest::Approx(3.0).epsilon(1e-3));
  CHECK(std::abs(q.charge - d.charge) < 1e-12);
  // O(h²) discretization offset from 2μ
  auto q2 = line_soliton(h / 2, lam);
  const double ratio = q.charge_minus_two_mu / q2.charge_minus_two_mu;
  CHECK(ratio == doctest::Approx(4.0).epsilon(0.02));
  CHECK(charge_gap_to_line(q.charge, h, lam) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK_THROWS_AS(line_soliton(h, 1.0), DomainError);
}

TEST_CASE("exponentially small charge deficit at L = 2π") {
  // continuum leading term -(16/3) L μ² e^{-2Lμ}; the discrete deficit follows it
  const double lam = -16.0;
  auto s = symmetric(2 * kPi, 256, lam);
  auto r = refine_symmetric(s);
  const double pred = asymptotic_charges(lam, 2 * kPi).delta_sym;
  CHECK(r.charge_minus_line < 0.0);
  CHECK(r.charge_minus_line == doctest::Approx(pred).epsilon(0.1));
  CHECK(r.lplus_odd_min > 0.0);
  CHECK(r.lplus_odd_min < 1e-15);
}

TEST_CASE("refinement preconditions") {
  auto g = make_grid(kPi / 2, 64);
  auto a = hybrid(gaussian_seed(g, -10.0, Placement::Ring), -10.0);
  CHECK_THROWS_AS(refine_symmetric(a), DomainError);
  auto odd = make_grid(kPi / 2, 66);  // M = 33
  auto c = constant_state(-1.0, odd);
  CHECK_THROWS_AS(refine_symmetric(c), DomainError);
}

TEST_CASE("constant state is a reduced fixed point") {
  auto c = constant_state(-2.0, make_grid(kPi, 64));
  auto r = refine_symmetric(c);
  CHECK(r.newton_iterations == 1);
  CHECK(r.charge == doctest::Approx(c.Q).epsilon(1e-14));
  CHECK(r.lplus_even_min == doctest::Approx(-4.0).epsilon(1e-12));
}
