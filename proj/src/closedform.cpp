#include "dumbbell/closedform.hpp"

#include <cmath>
#include <sstream>

#include "dumbbell/errors.hpp"

namespace dumbbell {

const char* family_name(Family f) { return f == Family::Ring ? "ring" : "segment"; }

namespace {

// cosh(a)/cosh(b) and sinh(a)/cosh(b) for 0 <= a, without overflow
double cosh_over_cosh(double a, double b) {
  a = std::abs(a);
  b = std::abs(b);
  return std::exp(a - b) * (1.0 + std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}
double sinh_over_cosh(double a, double b) {
  const double s = a < 0 ? -1.0 : 1.0;
  a = std::abs(a);
  b = std::abs(b);
  return s * std::exp(a - b) * (1.0 - std::exp(-2.0 * a)) / (1.0 + std::exp(-2.0 * b));
}
double sech(double x) { return 1.0 / std::cosh(x); }

void require_mu(double mu) {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw DomainError("mu must be positive");
}

// Bisection in log k' on [lo, hi]; f must change sign.
template <class F>
EllipticModulus bisect_log_kc(F f, double kc_lo, double kc_hi, const char* what) {
  double a = std::log(kc_lo), b = std::log(kc_hi);
  double fa = f(EllipticModulus::from_complement(kc_lo));
  const double fb = f(EllipticModulus::from_complement(kc_hi));
  if (!std::isfinite(fa) || !std::isfinite(fb) || (fa < 0) == (fb < 0)) {
    std::ostringstream os;
    os << what << ": no sign change on the modulus bracket (f=" << fa << ", " << fb << ")";
    throw NoRoot(os.str());
  }
  for (int it = 0; it < 300 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++it) {
    const double m = 0.5 * (a + b);
    const double fm = f(EllipticModulus::from_complement(std::exp(m)));
    if (fm == 0.0) return EllipticModulus::from_complement(std::exp(m));
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return EllipticModulus::from_complement(std::exp(0.5 * (a + b)));
}

constexpr double kKcFloor = 1e-280;

// G0'/G0 at the right junction for the ring family
double ring_ratio(double mu, double L) {
  const double T = std::tanh(2.0 * L * mu), t = std::tanh(kPi * mu);
  return (T + 2.0 * t) / (1.0 + 2.0 * t * T);
}

// exponential tails of the ring family, scaled coordinate z, amplitude p
struct RingTails {
  double mu, L, p;
  double g0(double z) const {
    const double a = z + L * mu, b = 2.0 * L * mu, t = std::tanh(kPi * mu);
    return p * (cosh_over_cosh(a, b) + 2.0 * t * sinh_over_cosh(a, b)) / (1.0 + 2.0 * t * std::tanh(b));
  }
  double dg0(double z) const {
    const double a = z + L * mu, b = 2.0 * L * mu, t = std::tanh(kPi * mu);
    return p * (sinh_over_cosh(a, b) + 2.0 * t * cosh_over_cosh(a, b)) / (1.0 + 2.0 * t * std::tanh(b));
  }
  double den_scale() const {
    const double b = 2.0 * L * mu, t = std::tanh(kPi * mu);
    // 1 / (cosh(2Lμ)(1 + 2 tanh(πμ) tanh(2Lμ)))
    return 2.0 * std::exp(-b) / (1.0 + std::exp(-2.0 * b)) / (1.0 + 2.0 * t * std::tanh(b));
  }
  double gm(double z) const {
    return p * cosh_over_cosh(z + L * mu + kPi * mu, kPi * mu) * den_scale();
  }
  double dgm(double z) const {
    return p * sinh_over_cosh(z + L * mu + kPi * mu, kPi * mu) * den_scale();
  }
};

// scaled profile pieces -> physical Φ(x) = μΨ(μx)
GraphProfile unscale(double mu, EdgeFunction psi, EdgeFunction dpsi) {
  return {[=](Edge e, double x) { return mu * psi(e, mu * x); },
          [=](Edge e, double x) { return mu * mu * dpsi(e, mu * x); }};
}

StationaryState state_from_profile(const GraphProfile& prof, double lambda, const DumbbellGrid& grid,
                                   bool with_spectra) {
  return make_state(sample(grid, prof.value), lambda, with_spectra);
}

}  // namespace

StationaryState constant_state(double lambda, const DumbbellGrid& grid, bool with_spectra) {
  if (!(lambda < 0.0)) throw DomainError("constant_state: lambda must be negative");
  const double p = std::sqrt(-lambda / 2.0);
  return make_state(sample(grid, [p](Edge, double) { return p; }), lambda, with_spectra);
}

EllipticModulus solve_k_star(double mu, Family family, double L) {
  require_mu(mu);
  if (family == Family::Ring) {
    auto f = [mu](const EllipticModulus& m) {
      return std::sqrt(1.0 + m.m1()) * complete_K(m) - kPi * mu;
    };
    return bisect_log_kc(f, kKcFloor, 1.0, "solve_k_star(ring)");
  }
  if (!(L > 0.0)) throw DomainError("solve_k_star: L must be positive");
  auto f = [mu, L](const EllipticModulus& m) {
    return std::sqrt(1.0 - 2.0 * m.m1()) * complete_K(m) - mu * L;
  };
  return bisect_log_kc(f, kKcFloor, std::sqrt(0.5) * (1.0 - 1e-15), "solve_k_star(segment)");
}

std::pair<double, double> pq_functions(const EllipticModulus& k, double mu, Family family, double L) {
  require_mu(mu);
  if (family == Family::Ring) {
    const double s2 = 1.0 + k.m1();  // 2 - k²
    const double s = std::sqrt(s2);
    const auto t = jacobi(kPi * mu / s, k);
    return {t.dn / s, k.k() * k.k() * t.sn * t.cn / s2};
  }
  const double s2 = 1.0 - 2.0 * k.m1();  // 2k² - 1
  if (!(s2 > 0.0)) throw ModulusOutOfRange("segment family needs k² > 1/2");
  const double s = std::sqrt(s2);
  const auto t = jacobi(L * mu / s, k);
  return {k.k() * t.cn / s, k.k() * t.sn * t.dn / s2};
}

double matching_function(const EllipticModulus& k, double mu, Family family, double L) {
  const auto [p, q] = pq_functions(k, mu, family, L);
  if (family == Family::Ring) return 2.0 * q - p * ring_ratio(mu, L);
  return q - 2.0 * p * std::tanh(kPi * mu);
}

MatchedModulus solve_k0(double mu, double L, Family family) {
  require_mu(mu);
  if (!(L > 0.0)) throw DomainError("solve_k0: L must be positive");
  MatchedModulus m;
  m.family = family;
  m.mu = mu;
  m.L = L;
  m.k_star = solve_k_star(mu, family, L);
  auto f = [&](const EllipticModulus& k) { return matching_function(k, mu, family, L); };
  m.k0 = bisect_log_kc(f, kKcFloor, m.k_star.kc(), "solve_k0");
  std::tie(m.p, m.q) = pq_functions(m.k0, mu, family, L);
  m.residual = f(m.k0);
  return m;
}

GraphProfile dnoidal_profile(const MatchedModulus& m) {
  if (m.family != Family::Ring) throw DomainError("dnoidal_profile needs a ring-family modulus");
  const double mu = m.mu, L = m.L;
  const EllipticModulus k = m.k0;
  const double s = std::sqrt(1.0 + k.m1());
  const RingTails tails{mu, L, m.p};
  auto psi = [=](Edge e, double z) {
    switch (e) {
      case Edge::RingPlus:
        return jacobi((z - L * mu - kPi * mu) / s, k).dn / s;
      case Edge::Segment:
        return tails.g0(z);
      case Edge::RingMinus:
        return tails.gm(z);
    }
    return 0.0;
  };
  auto dpsi = [=](Edge e, double z) {
    switch (e) {
      case Edge::RingPlus: {
        const auto t = jacobi((z - L * mu - kPi * mu) / s, k);
        return -k.k() * k.k() * t.sn * t.cn / (s * s);
      }
      case Edge::Segment:
        return tails.dg0(z);
      case Edge::RingMinus:
        return tails.dgm(z);
    }
    return 0.0;
  };
  return unscale(mu, psi, dpsi);
}

GraphProfile cnoidal_profile(const MatchedModulus& m) {
  if (m.family != Family::Segment) throw DomainError("cnoidal_profile needs a segment-family modulus");
  const double mu = m.mu, L = m.L, p = m.p;
  const EllipticModulus k = m.k0;
  const double s = std::sqrt(1.0 - 2.0 * k.m1());
  auto psi = [=](Edge e, double z) {
    switch (e) {
      case Edge::Segment:
        return k.k() * jacobi(z / s, k).cn / s;
      case Edge::RingPlus:
        return p * cosh_over_cosh(z - (L + kPi) * mu, kPi * mu);
      case Edge::RingMinus:
        return p * cosh_over_cosh(z + (L + kPi) * mu, kPi * mu);
    }
    return 0.0;
  };
  auto dpsi = [=](Edge e, double z) {
    switch (e) {
      case Edge::Segment: {
        const auto t = jacobi(z / s, k);
        return -k.k() * t.sn * t.dn / (s * s);
      }
      case Edge::RingPlus:
        return p * sinh_over_cosh(z - (L + kPi) * mu, kPi * mu);
      case Edge::RingMinus:
        return p * sinh_over_cosh(z + (L + kPi) * mu, kPi * mu);
    }
    return 0.0;
  };
  return unscale(mu, psi, dpsi);
}

StationaryState dnoidal_state(const MatchedModulus& m, const DumbbellGrid& grid, bool with_spectra) {
  if (std::abs(grid.L() - m.L) > 1e-12 * m.L) throw GridMismatch("dnoidal_state: L differs from the grid");
  return state_from_profile(dnoidal_profile(m), -m.mu * m.mu, grid, with_spectra);
}

StationaryState cnoidal_state(const MatchedModulus& m, const DumbbellGrid& grid, bool with_spectra) {
  if (std::abs(grid.L() - m.L) > 1e-12 * m.L) throw GridMismatch("cnoidal_state: L differs from the grid");
  return state_from_profile(cnoidal_profile(m), -m.mu * m.mu, grid, with_spectra);
}

GraphProfile sech_profile(double lambda, double L, Placement placement) {
  if (!(lambda < 0.0)) throw DomainError("sech_profile: lambda must be negative");
  const double mu = std::sqrt(-lambda);
  if (placement == Placement::Segment) {
    // sech on the segment; quadratic ring pieces matching value and flux
    const double a = L * mu, c = sech(a), t = std::tanh(a);
    const double beta = c * t / (4.0 * kPi * mu);
    const double far = (L + 2.0 * kPi) * mu;
    auto ring = [=](double z) { return c + beta * (z - a) * (z - far); };
    auto dring = [=](double z) { return beta * (2.0 * z - a - far); };
    auto psi = [=](Edge e, double z) {
      switch (e) {
        case Edge::Segment: return sech(z);
        case Edge::RingPlus: return ring(z);
        case Edge::RingMinus: return ring(-z);
      }
      return 0.0;
    };
    auto dpsi = [=](Edge e, double z) {
      switch (e) {
        case Edge::Segment: return -sech(z) * std::tanh(z);
        case Edge::RingPlus: return dring(z);
        case Edge::RingMinus: return -dring(-z);
      }
      return 0.0;
    };
    return unscale(mu, psi, dpsi);
  }
  // sech on I+; explicit exponential tails with p = sech(πμ) on I0 and I-,
  // plus a cubic on I0 that fixes the flux at the right junction
  const double p = sech(kPi * mu), q = p * std::tanh(kPi * mu);
  const RingTails tails{mu, L, p};
  const double a = L * mu;
  const double kappa = 2.0 * q - tails.dg0(a);
  auto delta = [=](double z) { return kappa * (z + a) * (z + a) * (z - a) / (4.0 * a * a); };
  auto ddelta = [=](double z) {
    return kappa * (2.0 * (z + a) * (z - a) + (z + a) * (z + a)) / (4.0 * a * a);
  };
  const double centre = (L + kPi) * mu;
  auto psi = [=](Edge e, double z) {
    switch (e) {
      case Edge::RingPlus: return sech(z - centre);
      case Edge::Segment: return tails.g0(z) + delta(z);
      case Edge::RingMinus: return tails.gm(z);
    }
    return 0.0;
  };
  auto dpsi = [=](Edge e, double z) {
    switch (e) {
      case Edge::RingPlus: return -sech(z - centre) * std::tanh(z - centre);
      case Edge::Segment: return tails.dg0(z) + ddelta(z);
      case Edge::RingMinus: return tails.dgm(z);
    }
    return 0.0;
  };
  return unscale(mu, psi, dpsi);
}

GraphFunction sech_seed(const DumbbellGrid& grid, double lambda, Placement placement) {
  return sample(grid, sech_profile(lambda, grid.L(), placement).value);
}

AsymptoticCharges asymptotic_charges(double lambda, double L) {
  if (!(lambda < 0.0)) throw DomainError("asymptotic_charges: lambda must be negative");
  const double mu = std::sqrt(-lambda);
  AsymptoticCharges c;
  c.delta_asym = 16.0 / 3.0 * kPi * mu * mu * std::exp(-2.0 * kPi * mu);
  c.delta_sym = -16.0 / 3.0 * L * mu * mu * std::exp(-2.0 * L * mu);
  c.Q_asym = 2.0 * mu + c.delta_asym;
  c.Q_sym = 2.0 * mu + c.delta_sym;
  return c;
}

}  // namespace dumbbell
