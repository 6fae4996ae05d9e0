#include "dumbbell/normalform.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "dumbbell/errors.hpp"
#include "dumbbell/operators.hpp"
#include "dumbbell/spectrum.hpp"

namespace dumbbell {

namespace {

void require_L(double L) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("normalform: L must be positive");
}

struct Trig {
  double W, sL, cL, sP, cP, r;  // r = sin²(LΩ₁)/cos²(πΩ₁)
};

Trig trig(double L) {
  Trig t;
  t.W = odd_dispersion_roots(L, 1).at(0);
  t.sL = std::sin(L * t.W);
  t.cL = std::cos(L * t.W);
  t.sP = std::sin(kPi * t.W);
  t.cP = std::cos(kPi * t.W);
  t.r = t.sL * t.sL / (t.cP * t.cP);
  return t;
}

double rhs_of(double L, const Trig& t) {
  const double x = 2.0 * L * t.W;
  return -3.0 * L * (1.0 - std::sin(x) / x) - 6.0 * kPi * t.r * t.r -
         3.0 * t.sL * t.sL * t.sL * t.cL / (t.W * t.cP * t.cP) * (1.0 + 2.0 * t.cL * t.cL);
}

}  // namespace

Thresholds thresholds(double L) {
  require_L(L);
  Thresholds th;
  th.Omega1 = odd_dispersion_roots(L, 1).at(0);
  th.omega1 = even_dispersion_roots(L, 1).at(0);
  th.Lambda0 = -0.5 * th.Omega1 * th.Omega1;
  th.Q0_star = 0.5 * (L + 2.0 * kPi) * th.Omega1 * th.Omega1;
  th.Q0_dstar = 0.5 * (L + 2.0 * kPi) * th.omega1 * th.omega1;
  return th;
}

OmegaCoefficient omega_coefficient(double L) {
  require_L(L);
  const Trig t = trig(L);
  OmegaCoefficient o;
  o.A = t.cL * t.cL * t.cL / (2.0 * t.W * t.W);
  o.B = -t.sL * t.sL * t.cL * t.cL / (2.0 * t.W * t.W * t.cP);
  o.rhs = rhs_of(L, t);
  o.norm2 = L + 2.0 * kPi * t.r;
  o.Omega = o.rhs / o.norm2;
  return o;
}

SlopeSum slope_sum(double L) {
  require_L(L);
  const Trig t = trig(L);
  const double R = L + 2.0 * kPi;
  const double n2 = L + 2.0 * kPi * t.r;
  SlopeSum s;
  s.I = -3.0 * R * (0.75 * L + 2.0 * kPi * t.r * t.r) + 2.0 * n2 * n2;
  s.II = -0.75 * R * L * (1.0 - std::sin(2.0 * L * t.W) / (2.0 * L * t.W));
  s.g = t.r * (1.0 + 2.0 * t.cL * t.cL) - 0.75;
  s.III = -3.0 * R * t.sL * t.cL / t.W * s.g;
  s.sum = s.I + s.II + s.III;
  s.direct = R * rhs_of(L, t) + 2.0 * n2 * n2;
  return s;
}

double quartic_bound_poly(double x) {
  const double x2 = x * x;
  return 9.0 - 16.0 * x2 + 12.0 * x2 * x2;
}

IdentityResiduals identity_residuals(double L) {
  require_L(L);
  const Trig t = trig(L);
  const OmegaCoefficient o = omega_coefficient(L);
  IdentityResiduals r;
  r.ab_constraint = t.sL * o.A + 2.0 * t.sP * o.B;
  r.cos_identity = 1.0 - t.r - 0.75 * t.cL * t.cL;
  const double rhs1 = (3.0 + std::cos(2.0 * L * t.W) + t.r * (std::cos(2.0 * kPi * t.W) - 3.0)) / (6.0 * t.W * t.W);
  r.first_row = t.cL * o.A - t.cP * o.B - rhs1;
  const double c2 = t.cL * t.cL;
  r.g_factored = (t.r * (1.0 + 2.0 * c2) - 0.75) - 0.25 * (1.0 - c2) * (1.0 + 6.0 * c2);
  return r;
}

PitchforkReport pitchfork_report(double L) {
  const Thresholds th = thresholds(L);
  const OmegaCoefficient o = omega_coefficient(L);
  const SlopeSum s = slope_sum(L);
  PitchforkReport p;
  p.L = L;
  p.Omega1 = th.Omega1;
  p.omega1 = th.omega1;
  p.Lambda0 = th.Lambda0;
  p.Q0_star = th.Q0_star;
  p.Q0_dstar = th.Q0_dstar;
  p.Omega_coef = o.Omega;
  p.A = o.A;
  p.B = o.B;
  p.norm2 = o.norm2;
  p.eig_coef = -2.0 * o.Omega;
  p.slope_sum = s.sum;
  p.I = s.I;
  p.II = s.II;
  p.III = s.III;
  p.dQ_dLambda = -(L + 2.0 * kPi) - 2.0 * o.norm2 / o.Omega;
  return p;
}

DiscreteOmega discrete_omega(const DumbbellGrid& grid) {
  const DiscreteOperator A = build_laplacian(grid);
  const auto pairs = eigen_smallest(A, 2);
  const double nu1 = pairs[1].value;
  const double L = grid.L();
  const double norm2 = odd_eigenfunction_norm2(L);
  GraphFunction U = pairs[1].vector;
  // continuum scaling: sin(Ω₁x) on the segment
  const int probe = grid.segment(grid.M());
  const double scale = std::sqrt(norm2) * (U[probe] > 0 ? 1.0 : -1.0);
  for (double& v : U.values()) v *= scale;

  const int n = grid.size();
  const auto w = grid.weights();
  Eigen::MatrixXd K = Eigen::MatrixXd::Zero(n + 1, n + 1);
  Eigen::MatrixXd Ad = Eigen::MatrixXd(A.matrix);
  for (int i = 0; i < n; ++i) {
    K.row(i).head(n) = w[i] * Ad.row(i);
    K(i, i) -= w[i] * nu1;
    K(i, n) = w[i] * U[i];
    K(n, i) = w[i] * U[i];
  }
  Eigen::VectorXd b = Eigen::VectorXd::Zero(n + 1);
  for (int i = 0; i < n; ++i) b[i] = w[i] * U[i] * U[i];
  const Eigen::VectorXd x = K.partialPivLu().solve(b);

  DiscreteOmega d;
  d.nu1 = nu1;
  double inner = 0.0, quart = 0.0, nrm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double u2 = U[i] * U[i];
    inner += w[i] * u2 * x[i];
    quart += w[i] * u2 * u2;
    nrm += w[i] * u2;
  }
  d.rhs = 9.0 * nu1 * inner + quart;
  d.norm2 = nrm;
  d.Omega = d.rhs / nrm;
  return d;
}

}  // namespace dumbbell
