#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dumbbell/closedform.hpp"
#include "dumbbell/grid.hpp"
#include "dumbbell/state.hpp"

namespace dumbbell {

struct PetviashviliOptions {
  double gamma = 1.5;
  double tol = 1e-14;  // on sup |u_{n+1} - u_n|, relative to max(1, sup|u|)
  int max_iter = 2000;
  bool with_spectra = true;
  bool preserve_symmetry = true;  // stay mirror-symmetric if the seed is
  GraphFunction* last_iterate = nullptr;  // if set, updated every iteration
};

struct NewtonOptions {
  double tol = 1e-12;  // on sup |δ|, relative to max(1, sup|Φ|)
  int max_iter = 50;
  bool with_spectra = true;
  bool preserve_symmetry = true;
  GraphFunction* last_iterate = nullptr;
};

StationaryState petviashvili(const GraphFunction& seed, double lambda, const PetviashviliOptions& opt = {});
StationaryState newton(const GraphFunction& seed, double lambda, const NewtonOptions& opt = {});
// Petviashvili to 1e-10, then a Newton polish.
StationaryState hybrid(const GraphFunction& seed, double lambda, const NewtonOptions& opt = {});

// Gaussian of width |Λ|^{-1/2} (by default) and height |Λ|^{1/2}, centred at
// x = 0 (segment) or x = L + π (ring), in graph distance.
GraphFunction gaussian_seed(const DumbbellGrid& grid, double lambda, Placement placement, double width = 0.0);

// Distance along the graph from x = 0 (Segment) or from x = L + π (Ring).
double graph_distance(const DumbbellGrid& grid, Edge e, double x, Placement placement);
// μ sech(μ d) with d the graph distance above.
GraphFunction sech_by_distance(const DumbbellGrid& grid, double lambda, Placement placement);

StateTag classify_state(const StationaryState& s);

struct BranchRow {
  double lambda = 0.0;
  double Q = 0.0;
  double E = 0.0;
  double lplus_eig2 = 0.0;
  double lplus_eig2_dense = 0.0;  // straight from the dense solver
  bool lplus_eig2_refined = false;
  int lplus_negative = 0;
  double lminus_min = 0.0;
  double residual = 0.0;
  StateTag tag = StateTag::Other;
  std::string method;  // newton / petviashvili
};

struct BranchTable {
  std::string family;
  std::vector<BranchRow> rows;  // lambda descending
  double L = 0.0;
  int N = 0;
  int steps = 0;
  double lambda_start = 0.0;
  double lambda_end = 0.0;
  double newton_tol = 0.0;
  bool truncated = false;       // BranchEnd reached before lambda_end
  double branch_end_lambda = 0.0;
  std::string end_reason;
  std::vector<StationaryState> states;  // filled when requested
};

struct ContinuationOptions {
  NewtonOptions newton{};
  int max_halvings = 3;  // smallest step is nominal / 2^3
  bool keep_states = false;
  // replace unresolvable dense λ₂ on symmetric rows by the extended-precision
  // odd-sector eigenvalue
  bool refine_symmetric = true;
  std::string family;  // empty: taken from the seed's tag
};

BranchTable continue_branch(const StationaryState& seed, double lambda_end, int steps,
                            const ContinuationOptions& opt = {});

// Centered-difference dE/dQ on interior rows (NaN at the two ends).
std::vector<double> slope_dE_dQ(const BranchTable& t);

}  // namespace dumbbell
