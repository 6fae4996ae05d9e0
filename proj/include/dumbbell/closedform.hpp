#pragma once

#include <utility>

#include "dumbbell/elliptic.hpp"
#include "dumbbell/grid.hpp"
#include "dumbbell/state.hpp"

namespace dumbbell {

enum class Family { Ring, Segment };  // dnoidal on I+ / cnoidal on I0
enum class Placement { Segment, Ring };

const char* family_name(Family f);

struct MatchedModulus {
  Family family = Family::Ring;
  double mu = 0.0;
  double L = 0.0;
  EllipticModulus k_star = EllipticModulus::from_k(0.0);
  EllipticModulus k0 = EllipticModulus::from_k(0.0);
  double p = 0.0;
  double q = 0.0;
  double residual = 0.0;  // matching equation at k0
};

// Value and x-derivative of a profile on each edge (physical coordinates).
struct GraphProfile {
  EdgeFunction value;
  EdgeFunction slope;
};

StationaryState constant_state(double lambda, const DumbbellGrid& grid, bool with_spectra = true);

// Root of πμ = √(2-k²) K(k) (ring) or μL = √(2k²-1) K(k) (segment).
EllipticModulus solve_k_star(double mu, Family family, double L);
std::pair<double, double> pq_functions(const EllipticModulus& k, double mu, Family family, double L);
// Ring: 2q - p·r(μ,L) with r the explicit G0'/G0 ratio at Lμ.
// Segment: q - 2p tanh(πμ).
double matching_function(const EllipticModulus& k, double mu, Family family, double L);
MatchedModulus solve_k0(double mu, double L, Family family);

GraphProfile dnoidal_profile(const MatchedModulus& m);
GraphProfile cnoidal_profile(const MatchedModulus& m);
StationaryState dnoidal_state(const MatchedModulus& m, const DumbbellGrid& grid, bool with_spectra = false);
StationaryState cnoidal_state(const MatchedModulus& m, const DumbbellGrid& grid, bool with_spectra = false);

GraphProfile sech_profile(double lambda, double L, Placement placement);
GraphFunction sech_seed(const DumbbellGrid& grid, double lambda, Placement placement);

struct AsymptoticCharges {
  double Q_sym;
  double Q_asym;
  double delta_sym;   // Q_sym - 2|Λ|^{1/2}
  double delta_asym;  // Q_asym - 2|Λ|^{1/2}
};
AsymptoticCharges asymptotic_charges(double lambda, double L);

}  // namespace dumbbell
