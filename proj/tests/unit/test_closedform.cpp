#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "dumbbell/closedform.hpp"
#include "dumbbell/errors.hpp"

using namespace dumbbell;

namespace {

struct KirchhoffDefect {
  double continuity;
  double flux;
};

KirchhoffDefect kirchhoff(const GraphProfile& p, double L) {
  auto v = p.value;
  auto d = p.slope;
  const double R = L + 2 * kPi;
  const double cont = std::max({std::abs(v(Edge::Segment, L) - v(Edge::RingPlus, L)),
                                std::abs(v(Edge::Segment, L) - v(Edge::RingPlus, R)),
                                std::abs(v(Edge::Segment, -L) - v(Edge::RingMinus, -L)),
                                std::abs(v(Edge::Segment, -L) - v(Edge::RingMinus, -R))});
  const double flux = std::max(
      std::abs(d(Edge::Segment, L) - (d(Edge::RingPlus, L) - d(Edge::RingPlus, R))),
      std::abs(d(Edge::Segment, -L) - (d(Edge::RingMinus, -L) - d(Edge::RingMinus, -R))));
  return {cont, flux};
}

}  // namespace

TEST_CASE("constant state") {
  auto s = constant_state(-2.0, make_grid(kPi / 2, 64));
  CHECK(s.Q == doctest::Approx(5 * kPi).epsilon(1e-12));
  CHECK(s.E == doctest::Approx(-5 * kPi).epsilon(1e-12));
  CHECK(s.residual_norm < 1e-12);
  CHECK(s.tag == StateTag::Constant);
  CHECK(std::abs(s.lminus_min) < 1e-8);
  auto s2 = constant_state(-1.0, make_grid(2 * kPi, 32), false);
  CHECK(s2.Q == doctest::Approx(4 * kPi).epsilon(1e-12));
  CHECK_THROWS_AS(constant_state(0.5, make_grid(kPi, 8)), DomainError);
}

TEST_CASE("k_star roots") {
  auto kr = solve_k_star(2.0, Family::Ring, kPi / 2);
  CHECK(std::abs(kr.kc() / (4 * std::exp(-2 * kPi)) - 1) < 0.05);
  CHECK(std::abs(kPi * 2 - std::sqrt(2 - kr.k() * kr.k()) * complete_K(kr)) < 1e-10);
  auto ks = solve_k_star(2.0, Family::Segment, kPi);
  CHECK(std::abs(ks.kc() / (4 * std::exp(-2 * kPi)) - 1) < 0.05);
  CHECK(std::abs(2 * kPi - std::sqrt(2 * ks.k() * ks.k() - 1) * complete_K(ks)) < 1e-10);
  CHECK_THROWS_AS(solve_k_star(0.5, Family::Ring, kPi), NoRoot);
}

TEST_CASE("p and q") {
  const double mu = 2.0, L = kPi / 2;
  auto ks = solve_k_star(mu, Family::Ring, L);
  CHECK(std::abs(pq_functions(ks, mu, Family::Ring, L).second) < 1e-12);
  auto [p1, q1] = pq_functions(EllipticModulus::from_k(1.0), mu, Family::Ring, L);
  CHECK(p1 == doctest::Approx(1 / std::cosh(kPi * mu)).epsilon(1e-14));
  CHECK(q1 == doctest::Approx(std::tanh(kPi * mu) / std::cosh(kPi * mu)).epsilon(1e-14));
  auto [pn, qn] = pq_functions(EllipticModulus::from_complement(1e-9), mu, Family::Ring, L);
  CHECK(pn == doctest::Approx(p1).epsilon(1e-6));
  CHECK(qn == doctest::Approx(q1).epsilon(1e-6));

  double pp = 1e9, qp = -1e9;
  const double lo = std::log(1e-9), hi = std::log(ks.kc());
  for (int i = 99; i >= 0; --i) {  // k increasing
    const double kc = std::exp(lo + (hi - lo) * (i + 0.5) / 100);
    auto [p, q] = pq_functions(EllipticModulus::from_complement(kc), mu, Family::Ring, L);
    CHECK(p < pp);
    CHECK(q > qp);
    pp = p;
    qp = q;
  }
}

TEST_CASE("matched moduli") {
  const double pred = 4 / std::sqrt(3.0) * std::exp(-2 * kPi);
  for (auto [fam, L] : {std::pair{Family::Ring, kPi / 2}, std::pair{Family::Segment, kPi}}) {
    auto m = solve_k0(2.0, L, fam);
    CHECK(std::abs(m.k0.kc() / pred - 1) < 0.1);
    CHECK(std::abs(m.residual) < 1e-12);
    CHECK(m.k_star.k() < m.k0.k());
    CHECK(m.k0.k() < 1.0);
  }
  for (double mu : {1.5, 2.0, 3.0})
    for (double L : {kPi / 2, kPi, 2 * kPi}) {
      auto r = solve_k0(mu, L, Family::Ring);
      CHECK(r.k0.kc() < r.k_star.kc());
      auto s = solve_k0(mu, L, Family::Segment);
      CHECK(s.k0.kc() < s.k_star.kc());
    }
}

TEST_CASE("dnoidal profile") {
  const double L = kPi / 2;
  double dist[2];
  int i = 0;
  for (double mu : {2.0, 3.0}) {
    auto m = solve_k0(mu, L, Family::Ring);
    auto prof = dnoidal_profile(m);
    auto k = kirchhoff(prof, L);
    CHECK(k.continuity < 1e-14 * mu);
    CHECK(k.flux < 1e-12 * mu * mu);
    const double peak = prof.value(Edge::RingPlus, L + kPi);
    CHECK(peak == doctest::Approx(mu / std::sqrt(2 - m.k0.k() * m.k0.k())).epsilon(1e-14));
    double d = 0;
    for (int j = 0; j <= 1000; ++j) {
      const double x = L + 2 * kPi * j / 1000.0;
      d = std::max(d, std::abs(prof.value(Edge::RingPlus, x) / mu - 1 / std::cosh(mu * (x - L - kPi))));
    }
    dist[i++] = d;
    auto s = dnoidal_state(m, make_grid(L, 64));
    CHECK(s.phi.min() > 0);
    CHECK(s.tag == StateTag::Asymmetric);
    const double tail = std::max(std::abs(prof.value(Edge::Segment, 0)), std::abs(prof.value(Edge::RingMinus, -L - kPi)));
    CHECK(tail / mu < 4 * std::exp(-kPi * mu));
  }
  CHECK(dist[0] / dist[1] == doctest::Approx(std::exp(kPi)).epsilon(0.2));
}

TEST_CASE("cnoidal profile") {
  const double L = kPi, mu = 2.0;
  auto m = solve_k0(mu, L, Family::Segment);
  auto prof = cnoidal_profile(m);
  auto k = kirchhoff(prof, L);
  CHECK(k.continuity < 1e-14);
  CHECK(k.flux < 1e-12);
  CHECK(prof.value(Edge::Segment, 0) == doctest::Approx(mu).epsilon(1e-4));
  auto s = cnoidal_state(m, make_grid(L, 64));
  CHECK(s.phi.min() > 0);
  CHECK(s.tag == StateTag::Symmetric);
  for (int i = 0; i < s.grid.size(); ++i) CHECK(s.phi[i] == s.phi[s.grid.reflect(i)]);
  // first integral (Ψ')² - Ψ² + Ψ⁴ in the scaled variable
  double lo = 1e9, hi = -1e9;
  for (int j = 0; j <= 400; ++j) {
    const double x = -L + 2 * L * j / 400.0;
    const double psi = prof.value(Edge::Segment, x) / mu, dpsi = prof.slope(Edge::Segment, x) / (mu * mu);
    const double I = dpsi * dpsi - psi * psi + psi * psi * psi * psi;
    lo = std::min(lo, I);
    hi = std::max(hi, I);
  }
  CHECK(hi - lo < 1e-8);
}

TEST_CASE("sech seeds") {
  for (double L : {kPi / 2, kPi, 2 * kPi})
    for (auto pl : {Placement::Segment, Placement::Ring}) {
      auto prof = sech_profile(-10, L, pl);
      auto k = kirchhoff(prof, L);
      CHECK(k.continuity < 1e-12);
      CHECK(k.flux < 1e-12);
    }
  auto g = make_grid(kPi / 2, 64);
  auto seed = sech_seed(g, -10, Placement::Segment);
  CHECK(seed.max() == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(seed[g.segment(g.M() / 2)] == seed.max());
  // ring correction: O(μ e^{-Lμ}) in the scaled variable
  for (double lam : {-4.0, -10.0, -25.0}) {
    const double mu = std::sqrt(-lam), L = kPi / 2;
    auto prof = sech_profile(lam, L, Placement::Segment);
    double mx = 0;
    for (int j = 0; j <= 200; ++j) mx = std::max(mx, std::abs(prof.value(Edge::RingPlus, L + 2 * kPi * j / 200.0)));
    CHECK(mx / mu <= 2 * mu * std::exp(-L * mu));  // scaled units
  }
  auto ring = sech_seed(g, -10, Placement::Ring);
  CHECK(ring.max() == doctest::Approx(std::sqrt(10.0)).epsilon(1e-15));
  CHECK(ring[g.ring_plus(g.N() / 2)] == ring.max());
}

TEST_CASE("asymptotic charges") {
  for (double lam : {-4.0, -9.0, -16.0, -30.0})
    for (double L : {kPi / 2, 2 * kPi}) {
      auto c = asymptotic_charges(lam, L);
      const double two_mu = 2 * std::sqrt(-lam);
      CHECK(c.delta_sym < 0);
      CHECK(c.delta_asym > 0);
      CHECK(c.Q_sym <= two_mu);
      CHECK(c.Q_asym > two_mu);
    }
  auto c = asymptotic_charges(-16, kPi / 2);
  CHECK(c.Q_sym == doctest::Approx(8 - 16.0 / 3 * kPi / 2 * 16 * std::exp(-4 * kPi)).epsilon(1e-15));
}
