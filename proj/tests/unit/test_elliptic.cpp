#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <boost/math/special_functions/jacobi_elliptic.hpp>
#include <cmath>
#include <random>

#include "dumbbell/elliptic.hpp"
#include "dumbbell/errors.hpp"

using namespace dumbbell;

TEST_CASE("trivial arguments") {
  for (double k : {0.0, 0.3, 0.9, 0.999999}) {
    auto t = jacobi(0.0, EllipticModulus::from_k(k));
    CHECK(t.sn == 0.0);
    CHECK(t.cn == 1.0);
    CHECK(t.dn == 1.0);
  }
  for (double x : {-3.0, 0.5, 2.0, 10.0}) {
    auto t = jacobi(x, EllipticModulus::from_k(1.0));
    CHECK(t.sn == std::tanh(x));
    CHECK(t.cn == 1.0 / std::cosh(x));
    CHECK(t.dn == 1.0 / std::cosh(x));
    auto z = jacobi(x, EllipticModulus::from_k(0.0));
    CHECK(z.sn == doctest::Approx(std::sin(x)).epsilon(1e-15));
    CHECK(z.dn == 1.0);
  }
}

TEST_CASE("against boost and identities") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> ux(-20, 20), uk(0.0, 1.0);
  double worst_id = 0, worst_ref = 0;
  for (int i = 0; i < 10000; ++i) {
    const double x = ux(rng), k = uk(rng);
    const auto m = EllipticModulus::from_k(k);
    auto t = jacobi(x, m);
    worst_id = std::max({worst_id, std::abs(t.sn * t.sn + t.cn * t.cn - 1),
                         std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1)});
    double cn, dn;
    const double sn = boost::math::jacobi_elliptic(k, x, &cn, &dn);
    worst_ref = std::max({worst_ref, std::abs(sn - t.sn), std::abs(cn - t.cn), std::abs(dn - t.dn)});
  }
  CHECK(worst_id < 1e-12);
  CHECK(worst_ref < 1e-12);
}

TEST_CASE("complete integrals") {
  CHECK(complete_K(EllipticModulus::from_k(0)) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  CHECK(complete_E(EllipticModulus::from_k(0)) == doctest::Approx(M_PI / 2).epsilon(1e-15));
  // 40-digit reference values (mpmath ellipk/ellipe)
  struct Ref {
    double k, K, E;
  };
  const Ref refs[] = {{0.1, 1.5747455615173559531, 1.5668619420216682908},
                      {0.5, 1.6857503548125960429, 1.4674622093394271555},
                      {0.8, 1.9953027776647294737, 1.2763499431699063834},
                      {0.99, 3.3566005233611919425, 1.0284758090288040219},
                      {0.999999, 7.9474797735479670327, 1.0000074474777243921}};
  for (const Ref& r : refs) {
    auto m = EllipticModulus::from_k(r.k);
    CHECK(std::abs(complete_K(m) - r.K) < 1e-14 * r.K);
    CHECK(std::abs(complete_E(m) - r.E) < 1e-14 * r.E);
    CHECK(std::abs(complete_K(m) - std::comp_ellint_1(r.k)) < 1e-11 * r.K);
  }
  auto near = EllipticModulus::from_complement(1e-4);
  CHECK(std::abs(complete_K(near) - std::log(4e4)) < 1e-6);
  CHECK(std::abs(complete_E(near) - E_near_one(near)) < 1e-7);
  CHECK_THROWS_AS(complete_K(EllipticModulus::from_k(1.0)), ModulusOutOfRange);
  CHECK_THROWS_AS(EllipticModulus::from_k(1.5), ModulusOutOfRange);
}

TEST_CASE("K log expansion remainder shrinks") {
  double prev = 1;
  for (double kc : {1e-2, 1e-3, 1e-4, 1e-5}) {
    auto m = EllipticModulus::from_complement(kc);
    const double rem = std::abs(complete_K(m) - K_near_one(m));
    CHECK(rem < 2 * m.m1() * std::abs(std::log(m.m1())));
    CHECK(rem < prev);
    prev = rem;
  }
}

TEST_CASE("periodicity and monotonicity") {
  for (double k : {0.2, 0.7, 0.95, 0.9999}) {
    auto m = EllipticModulus::from_k(k);
    const double K = complete_K(m);
    for (double x : {0.1, 0.7, 1.9}) CHECK(std::abs(jacobi(x + 2 * K, m).dn - jacobi(x, m).dn) < 1e-11);
    double prev = 2;
    for (int i = 0; i <= 200; ++i) {
      const double d = jacobi(K * i / 200.0, m).dn;
      CHECK(d <= prev);
      prev = d;
    }
    CHECK(std::abs(jacobi(K, m).dn - m.kc()) < 1e-12);
  }
}

TEST_CASE("derivatives at k = 1") {
  auto z = dk_jacobi_at_1(0.0);
  CHECK(z.d_sn == 0.0);
  CHECK(z.d_cn == 0.0);
  CHECK(z.d_dn == 0.0);
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    const double k = 1 - 1e-6;
    auto a = jacobi(x, EllipticModulus::from_k(k)), b = jacobi(x, EllipticModulus::from_k(1.0));
    auto d = dk_jacobi_at_1(x);
    CHECK(std::abs((a.sn - b.sn) / (k - 1) - d.d_sn) < 1e-4);
    CHECK(std::abs((a.cn - b.cn) / (k - 1) - d.d_cn) < 1e-4);
    CHECK(std::abs((a.dn - b.dn) / (k - 1) - d.d_dn) < 1e-4);
  }
}

TEST_CASE("first-order dn expansion has a quadratic remainder") {
  for (double x : {1.0, 2.0, 4.0}) {
    double rem[2];
    int i = 0;
    for (double d : {1e-3, 1e-4}) {
      auto m = EllipticModulus::from_complement(std::sqrt(d));
      const double sh = std::sinh(x), ch = std::cosh(x);
      const double approx = 1 / ch + 0.25 * d * (sh * ch + x) * std::tanh(x) / ch;
      rem[i++] = std::abs(jacobi(x, m).dn - approx);
    }
    const double ratio = rem[0] / rem[1];
    CHECK(ratio > 50);
    CHECK(ratio < 200);
  }
}

TEST_CASE("variation-of-constants derivative") {
  auto m = EllipticModulus::from_k(0.9);
  CHECK(dk_dn_variation(0.0, m) == 0.0);
  const double dk = 1e-6;
  for (double x : {0.3, 1.0, 1.8}) {
    const double fd = (jacobi(x, EllipticModulus::from_k(0.9 + dk)).dn -
                       jacobi(x, EllipticModulus::from_k(0.9 - dk)).dn) / (2 * dk);
    CHECK(std::abs(dk_dn_variation(x, m) - fd) < 1e-6);
  }
  CHECK(dk_dn_variation(1.0, m) == doctest::Approx(-0.62944318482).epsilon(1e-9));
  // approaches the k = 1 closed form
  const double lim = dk_jacobi_at_1(2.0).d_dn;
  double prev = 1e9;
  for (double kc : {1e-2, 1e-3, 1e-4}) {
    const double e = std::abs(dk_dn_variation(2.0, EllipticModulus::from_complement(kc)) - lim);
    CHECK(e < prev);
    prev = e;
  }
  CHECK(prev < 1e-3);
  CHECK_THROWS_AS(dk_dn_variation(complete_K(m) - 1e-7, m), QuadratureNearPole);
  CHECK_THROWS_AS(dk_dn_variation(1.0, EllipticModulus::from_k(1.0)), ModulusOutOfRange);
}

TEST_CASE("property suite passes") {
  const auto props = elliptic_property_suite();
  CHECK(props.size() >= 8);
  for (const auto& p : props) {
    CAPTURE(p.name);
    CAPTURE(p.value);
    CHECK(p.pass());
  }
}
