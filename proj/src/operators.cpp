#include "dumbbell/operators.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dumbbell/errors.hpp"

namespace dumbbell {

namespace {

using Triplets = std::vector<Eigen::Triplet<double, int>>;

// Incident edge seen from a junction: nearest and next-nearest nodes.
struct Spoke {
  int near;
  int far;
};

// Junction row. The one-sided second difference along each spoke is averaged
// and the one-sided Kirchhoff flux F = sum (4u1 - u2 - 3uJ)/(2h) is added with
// weight 2/(3h); the u2 contributions cancel, leaving a row that is symmetric
// under the trapezoid weights.
void junction_row(Triplets& t, int J, const Spoke (&spokes)[3], double h) {
  const double h2 = h * h;
  for (const Spoke& s : spokes) {
    // -(1/3h²)(uJ - 2u1 + u2)
    t.emplace_back(J, J, -1.0 / (3.0 * h2));
    t.emplace_back(J, s.near, 2.0 / (3.0 * h2));
    t.emplace_back(J, s.far, -1.0 / (3.0 * h2));
    // -(2/3h) (4u1 - u2 - 3uJ)/(2h)
    t.emplace_back(J, s.near, -4.0 / (3.0 * h2));
    t.emplace_back(J, s.far, 1.0 / (3.0 * h2));
    t.emplace_back(J, J, 3.0 / (3.0 * h2));
  }
}

void interior_row(Triplets& t, int r, int left, int right, double h2) {
  t.emplace_back(r, r, 2.0 / h2);
  t.emplace_back(r, left, -1.0 / h2);
  t.emplace_back(r, right, -1.0 / h2);
}

}  // namespace

GraphFunction DiscreteOperator::apply(const GraphFunction& u) const {
  require_same_grid(grid, u.grid());
  GraphFunction out(grid);
  kernels::spmv(csr(), u.view(), out.values());
  return out;
}

kernels::CsrView DiscreteOperator::csr() const {
  return {static_cast<int>(matrix.rows()), matrix.outerIndexPtr(), matrix.innerIndexPtr(),
          matrix.valuePtr()};
}

DiscreteOperator build_laplacian(const DumbbellGrid& g) {
  const int N = g.N(), M = g.M(), D = g.size();
  const double h = g.h(), h2 = h * h;
  Triplets t;
  t.reserve(static_cast<std::size_t>(3 * D + 40));

  for (int i = 1; i < N; ++i) {
    interior_row(t, g.ring_minus(i), g.ring_minus(i - 1), g.ring_minus(i + 1), h2);
    interior_row(t, g.ring_plus(i), g.ring_plus(i - 1), g.ring_plus(i + 1), h2);
  }
  for (int j = 1; j < M; ++j) interior_row(t, g.segment(j), g.segment(j - 1), g.segment(j + 1), h2);

  // far nodes past the opposite end are clamped; their coefficient is zero
  auto seg = [&](int j) { return g.segment(std::clamp(j, 0, M)); };
  const Spoke left[3] = {{seg(1), seg(2)},
                         {g.ring_minus(N - 1), g.ring_minus(N - 2)},
                         {g.ring_minus(1), g.ring_minus(2)}};
  const Spoke right[3] = {{seg(M - 1), seg(M - 2)},
                          {g.ring_plus(1), g.ring_plus(2)},
                          {g.ring_plus(N - 1), g.ring_plus(N - 2)}};
  junction_row(t, g.left_junction(), left, h);
  junction_row(t, g.right_junction(), right, h);

  DiscreteOperator op{g, SparseRowMatrix(D, D)};
  op.matrix.setFromTriplets(t.begin(), t.end());
  // exact cancellation can leave tiny residue from the far-node terms
  op.matrix.prune([h2](int, int, double v) { return std::abs(v) > 1e-12 / h2; });
  op.matrix.makeCompressed();
  return op;
}

DiscreteOperator add_diagonal(const DiscreteOperator& op, const std::vector<double>& d) {
  if (static_cast<int>(d.size()) != op.grid.size()) throw GridMismatch("add_diagonal: size");
  SparseRowMatrix diag(op.grid.size(), op.grid.size());
  Triplets t;
  for (int i = 0; i < op.grid.size(); ++i) t.emplace_back(i, i, d[static_cast<std::size_t>(i)]);
  diag.setFromTriplets(t.begin(), t.end());
  DiscreteOperator out{op.grid, op.matrix + diag};
  out.matrix.makeCompressed();
  return out;
}

namespace {

DiscreteOperator linearization(const DumbbellGrid& g, const GraphFunction& phi, double lambda,
                               double c) {
  require_same_grid(g, phi.grid());
  std::vector<double> d(static_cast<std::size_t>(g.size()));
  for (int i = 0; i < g.size(); ++i) d[static_cast<std::size_t>(i)] = -lambda - c * phi[i] * phi[i];
  return add_diagonal(build_laplacian(g), d);
}

}  // namespace

DiscreteOperator build_l_plus(const DumbbellGrid& g, const GraphFunction& phi, double lambda) {
  return linearization(g, phi, lambda, 6.0);
}

DiscreteOperator build_l_minus(const DumbbellGrid& g, const GraphFunction& phi, double lambda) {
  return linearization(g, phi, lambda, 2.0);
}

Eigen::MatrixXd weighted_similarity(const DiscreteOperator& op) {
  const auto w = op.grid.weights();
  Eigen::MatrixXd S = Eigen::MatrixXd(op.matrix);
  for (int i = 0; i < S.rows(); ++i) {
    const double si = std::sqrt(w[static_cast<std::size_t>(i)]);
    for (int j = 0; j < S.cols(); ++j) S(i, j) *= si / std::sqrt(w[static_cast<std::size_t>(j)]);
  }
  return S;
}

double symmetrization_defect(const DiscreteOperator& op) {
  const Eigen::MatrixXd S = weighted_similarity(op);
  const double scale = S.cwiseAbs().maxCoeff();
  return (S - S.transpose()).cwiseAbs().maxCoeff() / (scale > 0 ? scale : 1.0);
}

namespace {

Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solve_symmetric(const DiscreteOperator& op,
                                                                int count, bool vectors) {
  if (count < 1 || count > op.grid.size()) {
    std::ostringstream os;
    os << "eigen_smallest: count " << count << " outside [1, " << op.grid.size() << "]";
    throw DomainError(os.str());
  }
  Eigen::MatrixXd S = weighted_similarity(op);
  S = 0.5 * (S + S.transpose());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
      S, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    std::ostringstream os;
    os << "symmetric QR did not converge (D=" << op.grid.size() << ", info=" << es.info() << ")";
    throw ConvergenceFailure(os.str());
  }
  return es;
}

}  // namespace

std::vector<EigenPair> eigen_smallest(const DiscreteOperator& op, int count) {
  auto es = solve_symmetric(op, count, true);
  const auto w = op.grid.weights();
  std::vector<EigenPair> out;
  for (int k = 0; k < count; ++k) {
    GraphFunction v(op.grid);
    for (int i = 0; i < op.grid.size(); ++i)
      v[i] = es.eigenvectors()(i, k) / std::sqrt(w[static_cast<std::size_t>(i)]);
    out.push_back({es.eigenvalues()(k), std::move(v)});
  }
  return out;
}

std::vector<double> eigenvalues_smallest(const DiscreteOperator& op, int count) {
  auto es = solve_symmetric(op, count, false);
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) out[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
  return out;
}

int negative_count(const std::vector<double>& eigenvalues, double lambda) {
  const double thr = negative_threshold(lambda);
  return static_cast<int>(std::count_if(eigenvalues.begin(), eigenvalues.end(),
                                        [thr](double e) { return e < thr; }));
}

}  // namespace dumbbell
