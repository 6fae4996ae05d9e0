#include "dumbbell/state.hpp"

#include <cmath>
#include <limits>

#include "dumbbell/errors.hpp"
#include "dumbbell/kernels.hpp"
#include "dumbbell/operators.hpp"

namespace dumbbell {

const char* tag_name(StateTag t) {
  switch (t) {
    case StateTag::Constant: return "constant";
    case StateTag::Asymmetric: return "asymmetric";
    case StateTag::Symmetric: return "symmetric";
    case StateTag::Other: return "other";
  }
  return "other";
}

StateTag tag_from_name(const std::string& s) {
  if (s == "constant") return StateTag::Constant;
  if (s == "asymmetric") return StateTag::Asymmetric;
  if (s == "symmetric") return StateTag::Symmetric;
  if (s == "other") return StateTag::Other;
  throw DataError("unknown state tag '" + s + "'");
}

double weighted_inner(const GraphFunction& u, const GraphFunction& v) {
  require_same_grid(u.grid(), v.grid());
  const auto w = u.grid().weights();
  return kernels::weighted_dot(w, u.view(), v.view());
}

double weighted_norm(const GraphFunction& u) { return std::sqrt(weighted_inner(u, u)); }

double charge(const GraphFunction& phi) { return weighted_inner(phi, phi); }

double dirichlet_energy(const GraphFunction& phi) {
  const DumbbellGrid& g = phi.grid();
  const double h = g.h();
  double s = 0.0;
  auto add = [&](int a, int b) {
    const double d = phi[a] - phi[b];
    s += d * d / h;
  };
  for (int i = 0; i < g.N(); ++i) {
    add(g.ring_minus(i), g.ring_minus(i + 1));
    add(g.ring_plus(i), g.ring_plus(i + 1));
  }
  for (int j = 0; j < g.M(); ++j) add(g.segment(j), g.segment(j + 1));
  return s;
}

double energy(const GraphFunction& phi) {
  const auto w = phi.grid().weights();
  return dirichlet_energy(phi) - kernels::weighted_quartic(w, phi.view());
}

GraphFunction stationary_residual(const GraphFunction& phi, double lambda) {
  const DiscreteOperator A = build_laplacian(phi.grid());
  GraphFunction r(phi.grid());
  kernels::stationary_residual(A.csr(), phi.view(), lambda, r.values());
  return r;
}

namespace {

double ring_charge(const GraphFunction& phi, bool plus) {
  const DumbbellGrid& g = phi.grid();
  double s = 0.0;
  for (int i = 0; i < g.N(); ++i) {
    const double v = plus ? phi[g.ring_plus(i)] : phi[g.ring_minus(i)];
    s += v * v;
  }
  return s * g.h();
}

}  // namespace

double ring_charge_plus(const GraphFunction& phi) { return ring_charge(phi, true); }
double ring_charge_minus(const GraphFunction& phi) { return ring_charge(phi, false); }

StateTag classify_profile(const GraphFunction& phi) {
  const double mx = phi.max(), mn = phi.min();
  const double scale = std::max(std::abs(mx), std::abs(mn));
  if (mx - mn < 1e-6 * scale) return StateTag::Constant;
  const GraphFunction r = phi.reflected();
  GraphFunction d(phi.grid());
  for (int i = 0; i < phi.size(); ++i) d[i] = phi[i] - r[i];
  if (weighted_norm(d) < 1e-6 * weighted_norm(phi)) return StateTag::Symmetric;
  const double Q = charge(phi);
  if (Q > 0 && std::abs(ring_charge_plus(phi) - ring_charge_minus(phi)) / Q > 0.1)
    return StateTag::Asymmetric;
  return StateTag::Other;
}

void attach_spectra(StationaryState& s) {
  const auto lp = eigenvalues_smallest(build_l_plus(s.grid, s.phi, s.lambda), s.grid.size());
  for (std::size_t i = 0; i < 3; ++i)
    s.lplus_spectrum_head[i] = i < lp.size() ? lp[i] : std::numeric_limits<double>::quiet_NaN();
  s.lplus_negative = negative_count(lp, s.lambda);
  s.lminus_min = eigenvalues_smallest(build_l_minus(s.grid, s.phi, s.lambda), 1)[0];
  s.has_spectra = true;
}

StationaryState make_state(const GraphFunction& phi, double lambda, bool with_spectra) {
  StationaryState s;
  s.grid = phi.grid();
  s.lambda = lambda;
  s.phi = phi;
  s.Q = charge(phi);
  s.E = energy(phi);
  s.residual_norm = weighted_norm(stationary_residual(phi, lambda));
  s.tag = classify_profile(phi);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  s.lplus_spectrum_head = {nan, nan, nan};
  s.lminus_min = nan;
  if (with_spectra) attach_spectra(s);
  return s;
}

}  // namespace dumbbell
