#include "dumbbell/solve.hpp"

#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "dumbbell/errors.hpp"
#include "dumbbell/kernels.hpp"
#include "dumbbell/operators.hpp"
#include "dumbbell/symmetric_sector.hpp"

namespace dumbbell {

namespace {

using ColMatrix = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

void require_negative(double lambda, const char* who) {
  if (!(lambda < 0.0) || !std::isfinite(lambda))
    throw DomainError(std::string(who) + ": lambda must be negative");
}

double scale_of(const GraphFunction& u) { return std::max(1.0, u.sup_norm()); }

bool mirror_symmetric(const GraphFunction& u) {
  const DumbbellGrid& g = u.grid();
  double d = 0.0;
  for (int i = 0; i < g.size(); ++i) d = std::max(d, std::abs(u[i] - u[g.reflect(i)]));
  return d <= 1e-10 * scale_of(u);
}

// The equation commutes with x -> -x, so a mirror-symmetric seed can be kept
// in the symmetric subspace. Without this the exponentially soft odd mode of
// L+ lets roundoff break the symmetry at large L|Λ|^{1/2}.
void symmetrize(GraphFunction& u) {
  const DumbbellGrid& g = u.grid();
  for (int i = 0; i < g.size(); ++i) {
    const int j = g.reflect(i);
    if (j > i) u[i] = u[j] = 0.5 * (u[i] + u[j]);
  }
}

}  // namespace

StationaryState petviashvili(const GraphFunction& seed, double lambda, const PetviashviliOptions& opt) {
  require_negative(lambda, "petviashvili");
  if (seed.sup_norm() == 0.0) throw CollapseToZero("petviashvili: zero seed");
  const DumbbellGrid& g = seed.grid();
  const DiscreteOperator K = add_diagonal(build_laplacian(g), std::vector<double>(g.size(), -lambda));
  Eigen::SparseLU<ColMatrix> lu;
  lu.compute(ColMatrix(K.matrix));
  if (lu.info() != Eigen::Success) throw SingularJacobian("petviashvili: (|Λ| - Δ) factorization failed");

  const auto w = g.weights();
  const auto n = static_cast<std::size_t>(g.size());
  GraphFunction u = seed;
  const bool keep_mirror = opt.preserve_symmetry && mirror_symmetric(seed);
  std::vector<double> Ku(n), cube(n);
  Eigen::VectorXd rhs(g.size());
  SolverTrace trace;
  trace.method = "petviashvili";
  double M = std::numeric_limits<double>::quiet_NaN();
  for (int it = 1; it <= opt.max_iter; ++it) {
    kernels::spmv(K.csr(), u.view(), Ku);
    const double num = kernels::weighted_dot(w, Ku, u.view());
    const double den = 2.0 * kernels::weighted_quartic(w, u.view());
    M = num / den;
    kernels::scaled_cube(u.view(), 2.0, cube);
    for (std::size_t i = 0; i < n; ++i) rhs[static_cast<Eigen::Index>(i)] = cube[i];
    const Eigen::VectorXd v = lu.solve(rhs);
    const double factor = std::pow(M, opt.gamma);
    GraphFunction next(g);
    for (std::size_t i = 0; i < n; ++i) next.values()[i] = factor * v[static_cast<Eigen::Index>(i)];
    if (keep_mirror) symmetrize(next);
    const double diff = kernels::max_abs_diff(next.view(), u.view());
    trace.multipliers.push_back(M);
    trace.increments.push_back(diff);
    u = std::move(next);
    if (opt.last_iterate) *opt.last_iterate = u;
    if (!std::isfinite(diff)) break;
    if (u.sup_norm() < 1e-12) {
      std::ostringstream os;
      os << "petviashvili: iterate collapsed to zero at iteration " << it;
      throw CollapseToZero(os.str());
    }
    if (diff < opt.tol * scale_of(u)) {
      trace.iterations = it;
      StationaryState s = make_state(u, lambda, opt.with_spectra);
      s.trace = std::move(trace);
      return s;
    }
  }
  std::ostringstream os;
  os << "petviashvili: no convergence in " << opt.max_iter << " iterations (last M = " << M << ")";
  throw MaxIterExceeded(os.str(), M);
}

StationaryState newton(const GraphFunction& seed, double lambda, const NewtonOptions& opt) {
  require_negative(lambda, "newton");
  const DumbbellGrid& g = seed.grid();
  const DiscreteOperator A = build_laplacian(g);
  const auto n = static_cast<std::size_t>(g.size());
  GraphFunction phi = seed;
  const bool keep_mirror = opt.preserve_symmetry && mirror_symmetric(seed);
  std::vector<double> F(n);
  const std::vector<double> zeros(n, 0.0);
  Eigen::VectorXd rhs(g.size());
  SolverTrace trace;
  trace.method = "newton";
  const auto w = g.weights();
  for (int it = 1; it <= opt.max_iter; ++it) {
    kernels::stationary_residual(A.csr(), phi.view(), lambda, F);
    trace.residuals.push_back(std::sqrt(kernels::weighted_dot(w, F, F)));
    // Residual already at the level roundoff allows: further steps only move
    // along near-null directions of the Jacobian.
    const double sup_phi = phi.sup_norm();
    const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                         (4.0 / (g.h() * g.h()) + std::abs(lambda) + 6.0 * sup_phi * sup_phi) *
                         std::max(1.0, sup_phi);
    if (it > 1 && kernels::max_abs_diff(F, zeros) <= floor) {
      if (sup_phi < 1e-12) throw CollapseToZero("newton: converged to the zero solution");
      trace.iterations = it - 1;
      StationaryState s = make_state(phi, lambda, opt.with_spectra);
      s.trace = std::move(trace);
      return s;
    }
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) d[i] = -lambda - 6.0 * phi.values()[i] * phi.values()[i];
    const DiscreteOperator J = add_diagonal(A, d);
    Eigen::SparseLU<ColMatrix> lu;
    lu.compute(ColMatrix(J.matrix));
    if (lu.info() != Eigen::Success) {
      std::ostringstream os;
      os << "newton: Jacobian factorization failed at iteration " << it << " (Λ=" << lambda << ")";
      throw SingularJacobian(os.str());
    }
    for (std::size_t i = 0; i < n; ++i) rhs[static_cast<Eigen::Index>(i)] = -F[i];
    const Eigen::VectorXd delta = lu.solve(rhs);
    const double step = delta.cwiseAbs().maxCoeff();
    if (!std::isfinite(step) || step > 1e3 * scale_of(phi)) {
      std::ostringstream os;
      os << "newton: step of size " << step << " at iteration " << it << " (Λ=" << lambda
         << "), Jacobian close to singular";
      throw SingularJacobian(os.str());
    }
    for (std::size_t i = 0; i < n; ++i) phi.values()[i] += delta[static_cast<Eigen::Index>(i)];
    if (keep_mirror) symmetrize(phi);
    if (opt.last_iterate) *opt.last_iterate = phi;
    trace.increments.push_back(step);
    if (step < opt.tol * scale_of(phi)) {
      if (phi.sup_norm() < 1e-12) throw CollapseToZero("newton: converged to the zero solution");
      trace.iterations = it;
      kernels::stationary_residual(A.csr(), phi.view(), lambda, F);
      trace.residuals.push_back(std::sqrt(kernels::weighted_dot(w, F, F)));
      StationaryState s = make_state(phi, lambda, opt.with_spectra);
      s.trace = std::move(trace);
      return s;
    }
  }
  std::ostringstream os;
  os << "newton: no convergence in " << opt.max_iter << " iterations (Λ=" << lambda << ")";
  throw MaxIterExceeded(os.str(), std::numeric_limits<double>::quiet_NaN());
}

StationaryState hybrid(const GraphFunction& seed, double lambda, const NewtonOptions& opt) {
  PetviashviliOptions p;
  p.tol = 1e-10;
  p.with_spectra = false;
  p.preserve_symmetry = opt.preserve_symmetry;
  p.last_iterate = opt.last_iterate;
  const StationaryState coarse = petviashvili(seed, lambda, p);
  StationaryState s = newton(coarse.phi, lambda, opt);
  SolverTrace t = coarse.trace;
  t.method = "hybrid";
  t.iterations += s.trace.iterations;
  t.residuals = s.trace.residuals;
  s.trace = std::move(t);
  return s;
}

double graph_distance(const DumbbellGrid& grid, Edge e, double x, Placement placement) {
  const double L = grid.L();
  if (placement == Placement::Segment) {
    if (e == Edge::Segment) return std::abs(x);
    const double along = e == Edge::RingPlus ? x - L : -L - x;
    return L + std::min(along, 2.0 * kPi - along);
  }
  switch (e) {
    case Edge::RingPlus: return std::abs(x - L - kPi);
    case Edge::Segment: return kPi + (L - x);
    case Edge::RingMinus: {
      const double along = -L - x;
      return kPi + 2.0 * L + std::min(along, 2.0 * kPi - along);
    }
  }
  return 0.0;
}

GraphFunction gaussian_seed(const DumbbellGrid& grid, double lambda, Placement placement, double width) {
  require_negative(lambda, "gaussian_seed");
  const double mu = std::sqrt(-lambda);
  const double w = width > 0.0 ? width : 1.0 / mu;
  return sample(grid, [&](Edge e, double x) {
    const double d = graph_distance(grid, e, x, placement) / w;
    return mu * std::exp(-d * d);
  });
}

GraphFunction sech_by_distance(const DumbbellGrid& grid, double lambda, Placement placement) {
  require_negative(lambda, "sech_by_distance");
  const double mu = std::sqrt(-lambda);
  return sample(grid, [&](Edge e, double x) { return mu / std::cosh(mu * graph_distance(grid, e, x, placement)); });
}

StateTag classify_state(const StationaryState& s) { return classify_profile(s.phi); }

namespace {

bool acceptable(StateTag family, StateTag got) {
  switch (family) {
    case StateTag::Constant: return got == StateTag::Constant;
    case StateTag::Asymmetric: return got == StateTag::Asymmetric || got == StateTag::Other;
    case StateTag::Symmetric: return got == StateTag::Symmetric;
    case StateTag::Other: return got != StateTag::Constant;
  }
  return false;
}

// Rough noise floor of the dense symmetric eigensolver for L+.
double dense_floor(const DumbbellGrid& g, double lambda) {
  const double norm = 4.0 / (g.h() * g.h()) + std::abs(lambda);
  return 64.0 * std::numeric_limits<double>::epsilon() * norm;
}

BranchRow make_row(const StationaryState& s, bool refine) {
  BranchRow r;
  r.lambda = s.lambda;
  r.Q = s.Q;
  r.E = s.E;
  r.lplus_eig2_dense = s.lplus_spectrum_head[1];
  r.lplus_eig2 = r.lplus_eig2_dense;
  r.lplus_negative = s.lplus_negative;
  r.lminus_min = s.lminus_min;
  r.residual = s.residual_norm;
  r.tag = s.tag;
  r.method = s.trace.method.empty() ? "seed" : s.trace.method;
  if (refine && s.tag == StateTag::Symmetric && std::abs(r.lplus_eig2_dense) < dense_floor(s.grid, s.lambda) &&
      s.grid.M() % 2 == 0 && s.grid.N() % 2 == 0) {
    const SymmetricRefinement ref = refine_symmetric(s, Precision::Quad);
    r.lplus_eig2 = ref.lplus_odd_min;
    r.lplus_eig2_refined = true;
  }
  return r;
}

}  // namespace

BranchTable continue_branch(const StationaryState& seed, double lambda_end, int steps,
                            const ContinuationOptions& opt) {
  if (steps < 1) throw DomainError("continue_branch: steps must be >= 1");
  require_negative(lambda_end, "continue_branch");
  const StateTag family = opt.family.empty() ? seed.tag : tag_from_name(opt.family);
  BranchTable t;
  t.family = opt.family.empty() ? tag_name(seed.tag) : opt.family;
  t.L = seed.grid.L();
  t.N = seed.grid.N();
  t.steps = steps;
  t.lambda_start = seed.lambda;
  t.lambda_end = lambda_end;
  t.newton_tol = opt.newton.tol;

  StationaryState cur = seed;
  if (!cur.has_spectra) attach_spectra(cur);
  std::vector<StationaryState> kept;
  t.rows.push_back(make_row(cur, opt.refine_symmetric));
  if (opt.keep_states) kept.push_back(cur);

  NewtonOptions inner = opt.newton;
  inner.with_spectra = false;
  const double dl = (lambda_end - seed.lambda) / steps;
  std::optional<GraphFunction> prev_phi;
  double prev_lambda = 0.0;

  for (int i = 1; i <= steps; ++i) {
    const double target = seed.lambda + i * dl;
    bool ok = false;
    std::string why;
    for (int halving = 0; halving <= opt.max_halvings && !ok; ++halving) {
      const int sub = 1 << halving;
      try {
        StationaryState s = cur;
        std::optional<GraphFunction> pp = prev_phi;
        double pl = prev_lambda;
        for (int k = 1; k <= sub; ++k) {
          const double lam = cur.lambda + (target - cur.lambda) * k / sub;
          // secant predictor from the two most recent profiles
          GraphFunction guess = s.phi;
          if (pp) {
            const double f = (lam - s.lambda) / (s.lambda - pl);
            for (int j = 0; j < guess.size(); ++j) guess[j] += f * (s.phi[j] - (*pp)[j]);
          }
          StationaryState nx;
          try {
            nx = newton(guess, lam, inner);
          } catch (const SingularJacobian&) {
            PetviashviliOptions po;
            po.with_spectra = false;
            po.tol = 1e-13;
            nx = petviashvili(s.phi, lam, po);
          }
          if (!acceptable(family, nx.tag)) {
            std::ostringstream os;
            os << "state at Λ=" << lam << " classified as " << tag_name(nx.tag);
            throw ConvergenceFailure(os.str());
          }
          pp = s.phi;
          pl = s.lambda;
          s = std::move(nx);
        }
        prev_phi = pp;
        prev_lambda = pl;
        cur = std::move(s);
        ok = true;
      } catch (const Error& e) {
        why = e.what();
      }
    }
    if (!ok) {
      t.truncated = true;
      t.branch_end_lambda = target;
      t.end_reason = why;
      break;
    }
    attach_spectra(cur);
    t.rows.push_back(make_row(cur, opt.refine_symmetric));
    if (opt.keep_states) kept.push_back(cur);
  }
  // rows ordered toward -∞
  if (lambda_end > seed.lambda) {
    std::reverse(t.rows.begin(), t.rows.end());
    std::reverse(kept.begin(), kept.end());
  }
  t.states = std::move(kept);
  return t;
}

std::vector<double> slope_dE_dQ(const BranchTable& t) {
  std::vector<double> out(t.rows.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i + 1 < t.rows.size(); ++i)
    out[i] = (t.rows[i + 1].E - t.rows[i - 1].E) / (t.rows[i + 1].Q - t.rows[i - 1].Q);
  return out;
}

}  // namespace dumbbell
