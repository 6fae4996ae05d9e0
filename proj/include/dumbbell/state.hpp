#pragma once

#include <array>
#include <string>
#include <vector>

#include "dumbbell/grid.hpp"

namespace dumbbell {

enum class StateTag { Constant, Asymmetric, Symmetric, Other };

const char* tag_name(StateTag t);
StateTag tag_from_name(const std::string& s);

struct SolverTrace {
  std::string method;
  int iterations = 0;
  std::vector<double> residuals;    // Newton: residual norm before each step
  std::vector<double> multipliers;  // Petviashvili: M[u_n]
  std::vector<double> increments;   // sup-norm of successive updates
};

struct StationaryState {
  DumbbellGrid grid;
  double lambda = 0.0;
  GraphFunction phi;
  double Q = 0.0;
  double E = 0.0;
  double residual_norm = 0.0;
  std::array<double, 3> lplus_spectrum_head{};  // NaN when not computed
  int lplus_negative = -1;                     // -1 when not computed
  double lminus_min = 0.0;                     // NaN when not computed
  bool has_spectra = false;
  StateTag tag = StateTag::Other;
  SolverTrace trace;
};

double charge(const GraphFunction& phi);
// ∫|Φ'|² - ∫Φ⁴; the gradient part sums squared interval differences.
double energy(const GraphFunction& phi);
double dirichlet_energy(const GraphFunction& phi);

// -ΔΦ - 2Φ³ - ΛΦ, nodewise.
GraphFunction stationary_residual(const GraphFunction& phi, double lambda);
// Trapezoid-weighted L² norm.
double weighted_norm(const GraphFunction& u);
double weighted_inner(const GraphFunction& u, const GraphFunction& v);

// Mass on the closed ring I+ (resp. I-); the junction contributes weight h.
double ring_charge_plus(const GraphFunction& phi);
double ring_charge_minus(const GraphFunction& phi);

StateTag classify_profile(const GraphFunction& phi);

// Fills Q, E, residual, tag and (optionally) the L± eigenvalue summaries.
StationaryState make_state(const GraphFunction& phi, double lambda, bool with_spectra = true);
void attach_spectra(StationaryState& s);

}  // namespace dumbbell
