#pragma once

#include "dumbbell/state.hpp"

// Symmetric states reduced to the even sector (x -> -x and each ring about its
// midpoint), re-solved in 113-bit floating point. Used where the quantities of
// interest are exponentially small: the charge deficit of the symmetric wave
// and the second eigenvalue of L+.

namespace dumbbell {

enum class Precision { Double, Quad };

struct SymmetricRefinement {
  double lambda = 0.0;
  double charge = 0.0;
  double charge_minus_line = 0.0;  // Q - Q_line(h, Λ), differenced before rounding
  double charge_minus_two_mu = 0.0;
  double lplus_odd_min = 0.0;   // lowest L+ eigenvalue among x-odd functions
  double lplus_even_min = 0.0;  // lowest L+ eigenvalue in the reduced even sector
  double residual = 0.0;        // sup-norm residual of the reduced equation
  int newton_iterations = 0;
};

// Requires a symmetric state on a grid with M and N even.
SymmetricRefinement refine_symmetric(const StationaryState& s, Precision p = Precision::Quad);

struct LineSoliton {
  double charge = 0.0;
  double charge_minus_two_mu = 0.0;
  double peak = 0.0;
  int nodes = 0;
};

// Node-centred discrete soliton of -u'' - 2u³ = Λu on the line with spacing h.
LineSoliton line_soliton(double h, double lambda, Precision p = Precision::Quad);
// Q - Q_line(h, Λ) with Q_line kept in extended precision.
double charge_gap_to_line(double Q, double h, double lambda);

}  // namespace dumbbell
