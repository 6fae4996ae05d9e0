#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "dumbbell/errors.hpp"
#include "dumbbell/operators.hpp"
#include "dumbbell/spectrum.hpp"
#include "dumbbell/state.hpp"

using namespace dumbbell;

TEST_CASE("constants are in the kernel") {
  for (double L : {kPi / 10, kPi / 2, kPi, 2 * kPi, 10 * kPi})
    for (int N : {20, 40, 80}) {
      auto g = make_grid(L, N);
      auto one = sample(g, [](Edge, double) { return 1.0; });
      CHECK(build_laplacian(g).apply(one).sup_norm() < 1e-12 * N * N);
    }
  auto g = make_grid(kPi / 2, 64);
  auto one = sample(g, [](Edge, double) { return 1.0; });
  CHECK(build_laplacian(g).apply(one).sup_norm() < 1e-12);
}

TEST_CASE("weighted symmetry") {
  std::mt19937 rng(7);
  std::normal_distribution<double> nd;
  for (double L : {kPi / 2, 2 * kPi}) {
    auto g = make_grid(L, 64);
    auto A = build_laplacian(g);
    GraphFunction u(g), v(g);
    for (int i = 0; i < g.size(); ++i) {
      u[i] = nd(rng);
      v[i] = nd(rng);
    }
    const double a = weighted_inner(A.apply(u), v), b = weighted_inner(u, A.apply(v));
    CHECK(std::abs(a - b) < 1e-10 * std::abs(a));
    CHECK(symmetrization_defect(A) < 1e-13);
    // Dirichlet form identity
    CHECK(std::abs(weighted_inner(A.apply(u), u) - dirichlet_energy(u)) < 1e-10 * dirichlet_energy(u));
  }
}

TEST_CASE("zero eigenvalue is simple and the spectrum is non-negative") {
  auto g = make_grid(kPi / 2, 64);
  auto ev = eigenvalues_smallest(build_laplacian(g), g.size());
  CHECK(std::abs(ev[0]) < 1e-8);
  CHECK(ev[1] > 1e-3);
  CHECK(ev.front() >= -1e-8);
}

TEST_CASE("second eigenvalue converges at second order") {
  const double L = kPi / 2;
  const double W = odd_dispersion_roots(L, 1)[0];
  double err[2];
  int k = 0;
  for (int N : {64, 128}) {
    auto ev = eigenvalues_smallest(build_laplacian(make_grid(L, N)), 2);
    err[k++] = std::abs(ev[1] - W * W) / (W * W);
  }
  const double order = std::log2(err[0] / err[1]);
  CHECK(order > 1.7);
  CHECK(order < 2.3);

  // Rayleigh quotient of the sampled analytic eigenfunction
  double rq[2];
  k = 0;
  for (int N : {64, 128}) {
    auto g = make_grid(L, N);
    auto U = odd_eigenfunction(L, g);
    rq[k++] = std::abs(weighted_inner(build_laplacian(g).apply(U), U) / weighted_inner(U, U) - W * W);
  }
  const double rq_order = std::log2(rq[0] / rq[1]);
  CHECK(rq_order > 1.7);
  CHECK(rq_order < 2.3);
}

TEST_CASE("eigenpairs") {
  auto g = make_grid(kPi / 2, 64);
  auto A = build_laplacian(g);
  auto pairs = eigen_smallest(A, 4);
  auto shifted = eigenvalues_smallest(add_diagonal(A, std::vector<double>(g.size(), 1.0)), 4);
  for (int i = 0; i < 4; ++i) {
    CHECK(std::abs(weighted_norm(pairs[i].vector) - 1.0) < 1e-12);
    auto r = A.apply(pairs[i].vector);
    for (int j = 0; j < g.size(); ++j) r[j] -= pairs[i].value * pairs[i].vector[j];
    CHECK(r.sup_norm() < 1e-8);
    CHECK(std::abs(shifted[i] - pairs[i].value - 1.0) < 1e-10);
  }
  auto rep = spectrum_report(g.L(), 4);
  auto an = rep.eigenvalues(4);
  for (int i = 1; i < 4; ++i) CHECK(std::abs(pairs[i].value - an[i]) / an[i] < 4 * g.h() * g.h());
  CHECK_THROWS_AS(eigen_smallest(A, 0), DomainError);
}

TEST_CASE("linearizations at the constant state") {
  auto g = make_grid(kPi / 2, 64);
  auto A = build_laplacian(g);
  auto ev = eigenvalues_smallest(A, 3);
  const double p = 0.7, lambda = -2 * p * p;
  auto phi = sample(g, [p](Edge, double) { return p; });
  auto lp = eigenvalues_smallest(build_l_plus(g, phi, lambda), 3);
  auto lm = eigenvalues_smallest(build_l_minus(g, phi, lambda), 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(std::abs(lp[i] - (ev[i] + 2 * lambda)) < 1e-10);
    CHECK(std::abs(lm[i] - ev[i]) < 1e-10);
  }
  auto zero = sample(g, [](Edge, double) { return 0.0; });
  CHECK(eigenvalues_smallest(build_l_plus(g, zero, -1.0), 1)[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(eigenvalues_smallest(build_l_minus(g, zero, -1.0), 1)[0] == doctest::Approx(1.0).epsilon(1e-9));

  // second negative eigenvalue appears once Λ drops below -λ₂(-Δ)/2
  const double crit = -ev[1] / 2;
  for (double d : {1e-4, -1e-4}) {
    const double lam = crit + d;
    auto c = sample(g, [lam](Edge, double) { return std::sqrt(-lam / 2); });
    auto e = eigenvalues_smallest(build_l_plus(g, c, lam), 4);
    CHECK(negative_count(e, lam) == (d < 0 ? 2 : 1));
  }
  auto other = make_grid(kPi, 64);
  CHECK_THROWS_AS(build_l_plus(other, phi, lambda), GridMismatch);
}
