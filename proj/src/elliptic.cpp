#include "dumbbell/elliptic.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <random>
#include <numbers>
#include <sstream>

#include "dumbbell/errors.hpp"

namespace dumbbell {

EllipticModulus EllipticModulus::from_k(double k) {
  if (!(k >= 0.0 && k <= 1.0)) throw ModulusOutOfRange("modulus k must lie in [0, 1]");
  return EllipticModulus(k, std::sqrt((1.0 - k) * (1.0 + k)));
}

EllipticModulus EllipticModulus::from_complement(double kc) {
  if (!(kc >= 0.0 && kc <= 1.0)) throw ModulusOutOfRange("complementary modulus must lie in [0, 1]");
  return EllipticModulus(std::sqrt((1.0 - kc) * (1.0 + kc)), kc);
}

// Descending Landen transformation; AGM of (1, k') with the back substitution
// for dn.
JacobiTriple jacobi(double xi, const EllipticModulus& mod) {
  if (mod.kc() == 0.0) {
    const double sech = 1.0 / std::cosh(xi);
    return {std::tanh(xi), sech, sech};
  }
  constexpr int kMaxSteps = 16;
  constexpr double kTol = 1e-9;
  double am[kMaxSteps + 1], bm[kMaxSteps + 1];
  double a = 1.0, b = mod.kc(), c = 0.0;
  int l = 0;
  for (int i = 0; i <= kMaxSteps; ++i) {
    l = i;
    am[i] = a;
    bm[i] = b;
    c = 0.5 * (a + b);
    if (std::abs(a - b) <= kTol * a) break;
    b = std::sqrt(a * b);
    a = c;
  }
  const double u = xi * c;
  double sn = std::sin(u), cn = std::cos(u), dn = 1.0;
  if (sn != 0.0) {
    double r = cn / sn;
    c *= r;
    for (int i = l; i >= 0; --i) {
      r *= c;
      c *= dn;
      dn = (bm[i] + r) / (am[i] + r);
      r = c / am[i];
    }
    const double s = 1.0 / std::sqrt(c * c + 1.0);
    sn = sn >= 0.0 ? s : -s;
    cn = c * sn;
  }
  return {sn, cn, dn};
}

namespace {

double agm(double a, double b) {
  for (int i = 0; i < 64 && std::abs(a - b) > 1e-16 * a; ++i) {
    const double c = 0.5 * (a + b);
    b = std::sqrt(a * b);
    a = c;
  }
  return 0.5 * (a + b);
}

}  // namespace

double complete_K(const EllipticModulus& mod) {
  if (mod.kc() == 0.0) throw ModulusOutOfRange("K(k) diverges at k = 1");
  return std::numbers::pi / (2.0 * agm(1.0, mod.kc()));
}

double complete_E(const EllipticModulus& mod) {
  if (mod.kc() == 0.0) return 1.0;
  double a = 1.0, b = mod.kc(), c = mod.k();
  double weight = 0.5, sum = 0.5 * c * c;
  // c shrinks quadratically; stopping at 1e-10 leaves a next term near 1e-20
  for (int i = 0; i < 64 && std::abs(c) > 1e-10; ++i) {
    const double an = 0.5 * (a + b);
    c = 0.5 * (a - b);
    b = std::sqrt(a * b);
    a = an;
    weight *= 2.0;
    sum += weight * c * c;
  }
  return std::numbers::pi / (2.0 * a) * (1.0 - sum);
}

double K_near_one(const EllipticModulus& mod) { return std::log(4.0 / mod.kc()); }

double E_near_one(const EllipticModulus& mod) {
  return 1.0 + 0.5 * mod.m1() * (std::log(4.0 / mod.kc()) - 0.5);
}

JacobiDerivative dk_jacobi_at_1(double xi) {
  const double sh = std::sinh(xi), ch = std::cosh(xi);
  const double sech = 1.0 / ch, th = std::tanh(xi);
  return {-0.5 * (sh * ch - xi) * sech * sech, 0.5 * (sh * ch - xi) * th * sech,
          -0.5 * (sh * ch + xi) * th * sech};
}

double dk_dn_variation(double xi, const EllipticModulus& mod) {
  if (mod.kc() == 0.0 || mod.k() == 0.0) throw ModulusOutOfRange("dk_dn_variation needs 0 < k < 1");
  if (xi < 0.0) throw DomainError("dk_dn_variation: xi must be non-negative");
  const double K = complete_K(mod);
  if (xi > K - 1e-6) {
    std::ostringstream os;
    os.precision(17);
    os << "dk_dn_variation: xi=" << xi << " within 1e-6 of (or beyond) K=" << K;
    throw QuadratureNearPole(os.str());
  }
  if (xi == 0.0) return 0.0;
  auto inv_cn2 = [&mod](double t) {
    const double cn = jacobi(t, mod).cn;
    return 1.0 / (cn * cn);
  };
  double err = 0.0;
  const double integral =
      boost::math::quadrature::gauss_kronrod<double, 31>::integrate(inv_cn2, 0.0, xi, 20, 1e-14, &err);
  const auto t = jacobi(xi, mod);
  return -mod.k() * t.sn * t.cn * integral;
}

}  // namespace dumbbell

namespace dumbbell {

std::vector<EllipticProperty> elliptic_property_suite(unsigned seed, int samples) {
  std::vector<EllipticProperty> out;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> ux(-20.0, 20.0), uk(0.0, 1.0);

  double ident = 0.0;
  for (int i = 0; i < samples; ++i) {
    const double x = ux(rng), k = uk(rng);
    const auto m = EllipticModulus::from_k(k);
    const auto t = jacobi(x, m);
    ident = std::max({ident, std::abs(t.sn * t.sn + t.cn * t.cn - 1.0),
                      std::abs(t.dn * t.dn + k * k * t.sn * t.sn - 1.0)});
  }
  out.push_back({"identity residual max", ident, 0.0, 1e-12});

  double period = 0.0;
  bool mono = true;
  for (double k : {0.1, 0.5, 0.9, 0.999}) {
    const auto m = EllipticModulus::from_k(k);
    const double K = complete_K(m);
    for (double x : {0.0, 0.3, 1.1, 2.7}) period = std::max(period, std::abs(jacobi(x + 2 * K, m).dn - jacobi(x, m).dn));
    double prev = 2.0;
    for (int j = 0; j <= 200; ++j) {
      const double d = jacobi(K * j / 200.0, m).dn;
      if (d > prev) mono = false;
      prev = d;
    }
    if (std::abs(prev - m.kc()) > 1e-12) mono = false;
  }
  out.push_back({"periodicity dn(x+2K)-dn(x)", period, 0.0, 1e-11});
  out.push_back({"dn decreasing on [0,K] to k'", mono ? 0.0 : 1.0, 0.0, 0.0});

  double deriv = 0.0;
  for (double x : {0.5, 1.0, 2.0, 3.0}) {
    const double k = 1.0 - 1e-6;
    const auto a = jacobi(x, EllipticModulus::from_k(k));
    const auto b = jacobi(x, EllipticModulus::from_k(1.0));
    const auto d = dk_jacobi_at_1(x);
    deriv = std::max({deriv, std::abs((a.sn - b.sn) / (k - 1) - d.d_sn), std::abs((a.cn - b.cn) / (k - 1) - d.d_cn),
                      std::abs((a.dn - b.dn) / (k - 1) - d.d_dn)});
  }
  out.push_back({"d/dk at k=1 vs one-sided difference", deriv, 0.0, 1e-4});

  // remainder ratio for 1-k² = 1e-3 -> 1e-4; quadratic remainder gives 100
  for (double x : {1.0, 2.0, 4.0}) {
    double rem[2];
    int i = 0;
    for (double d : {1e-3, 1e-4}) {
      const auto m = EllipticModulus::from_complement(std::sqrt(d));
      const double sh = std::sinh(x), ch = std::cosh(x);
      rem[i++] = std::abs(jacobi(x, m).dn - (1 / ch + 0.25 * d * (sh * ch + x) * std::tanh(x) / ch));
    }
    out.push_back({"dn expansion remainder ratio at xi=" + std::to_string(static_cast<int>(x)), rem[0] / rem[1], 50.0,
                   200.0});
  }

  double var = 0.0;
  const auto m9 = EllipticModulus::from_k(0.9);
  const double dk = 1e-6;
  for (double x : {0.3, 1.0, 1.8}) {
    const double fd =
        (jacobi(x, EllipticModulus::from_k(0.9 + dk)).dn - jacobi(x, EllipticModulus::from_k(0.9 - dk)).dn) / (2 * dk);
    var = std::max(var, std::abs(dk_dn_variation(x, m9) - fd));
  }
  out.push_back({"variation derivative vs centred difference", var, 0.0, 1e-6});

  const double kc = 1e-4;
  const double kexp = std::abs(complete_K(EllipticModulus::from_complement(kc)) - std::log(4.0 / kc));
  out.push_back({"K - log(4/k') at k'=1e-4", kexp, 0.0, 1e-6});
  return out;
}

}  // namespace dumbbell
