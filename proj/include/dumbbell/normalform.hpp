#pragma once

#include "dumbbell/grid.hpp"

// Small-amplitude unfolding of the symmetry-breaking pitchfork off the
// constant branch: thresholds, the normal-form coefficient Ω and the sign
// bookkeeping for dQ/dΛ. All in closed trigonometric form in L and Ω₁.

namespace dumbbell {

struct Thresholds {
  double Omega1 = 0.0;   // smallest odd root
  double omega1 = 0.0;   // smallest even root
  double Lambda0 = 0.0;  // -Ω₁²/2
  double Q0_star = 0.0;  // (L+2π)Ω₁²/2
  double Q0_dstar = 0.0; // (L+2π)ω₁²/2
};

Thresholds thresholds(double L);

struct OmegaCoefficient {
  double Omega = 0.0;  // normal-form coefficient, rhs / ‖U‖²
  double A = 0.0;
  double B = 0.0;
  double rhs = 0.0;    // 9Ω₁²⟨U², Φ̃₂⟩ + ‖U‖⁴_{L⁴}
  double norm2 = 0.0;  // ‖U‖²
};

OmegaCoefficient omega_coefficient(double L);

struct SlopeSum {
  double I = 0.0, II = 0.0, III = 0.0;
  double sum = 0.0;
  double direct = 0.0;  // (L+2π)·rhs + 2‖U‖⁴ before regrouping
  double g = 0.0;       // the bracket deciding the sign of III
};

SlopeSum slope_sum(double L);

// 9 - 16x² + 12x⁴
double quartic_bound_poly(double x);

struct IdentityResiduals {
  double ab_constraint = 0.0;  // sin(LΩ₁)A + 2 sin(πΩ₁)B
  double cos_identity = 0.0;   // 1 - s²/c² - (3/4)cos²(LΩ₁)
  double first_row = 0.0;      // first row of the A, B system
  double g_factored = 0.0;     // g minus its factored form
};

IdentityResiduals identity_residuals(double L);

struct PitchforkReport {
  double L = 0.0;
  double Omega1 = 0.0, omega1 = 0.0;
  double Lambda0 = 0.0, Q0_star = 0.0, Q0_dstar = 0.0;
  double Omega_coef = 0.0;
  double A = 0.0, B = 0.0;
  double norm2 = 0.0;
  double eig_coef = 0.0;  // -2·Omega_coef
  double slope_sum = 0.0;
  double I = 0.0, II = 0.0, III = 0.0;
  // predicted dQ/dΛ on the asymmetric branch at Λ₀: -(L+2π) - 2‖U‖²/Ω
  double dQ_dLambda = 0.0;
};

PitchforkReport pitchfork_report(double L);

// Discrete version of the same coefficient: solve (A_h - ν₁)Φ̃₂ = U_h² with
// ⟨U_h, Φ̃₂⟩_W = 0 by a bordered system, U_h the discrete odd eigenvector
// scaled to the continuum normalization.
struct DiscreteOmega {
  double nu1 = 0.0;  // discrete Ω₁²
  double rhs = 0.0;
  double norm2 = 0.0;
  double Omega = 0.0;
};

DiscreteOmega discrete_omega(const DumbbellGrid& grid);

}  // namespace dumbbell
