#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <vector>

#include "dumbbell/grid.hpp"
#include "dumbbell/kernels.hpp"

namespace dumbbell {

using SparseRowMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor, int>;

// A D x D operator on graph functions. build_laplacian stores -Δ (positive
// semidefinite), so L+ = build_laplacian + diag(-Λ - 6Φ²).
struct DiscreteOperator {
  DumbbellGrid grid;
  SparseRowMatrix matrix;

  GraphFunction apply(const GraphFunction& u) const;
  kernels::CsrView csr() const;
};

DiscreteOperator build_laplacian(const DumbbellGrid& grid);
DiscreteOperator build_l_plus(const DumbbellGrid& grid, const GraphFunction& phi, double lambda);
DiscreteOperator build_l_minus(const DumbbellGrid& grid, const GraphFunction& phi, double lambda);
// A + diag(d)
DiscreteOperator add_diagonal(const DiscreteOperator& op, const std::vector<double>& d);

// W^{1/2} A W^{-1/2} as a dense matrix (not yet symmetrized).
Eigen::MatrixXd weighted_similarity(const DiscreteOperator& op);
// max |S - S^T| / max |S| for S above.
double symmetrization_defect(const DiscreteOperator& op);

struct EigenPair {
  double value;
  GraphFunction vector;  // unit norm in the trapezoid-weighted inner product
};

std::vector<EigenPair> eigen_smallest(const DiscreteOperator& op, int count);
std::vector<double> eigenvalues_smallest(const DiscreteOperator& op, int count);

// Threshold below which an eigenvalue counts as negative.
inline double negative_threshold(double lambda) {
  return -1e-8 * std::max(1.0, std::abs(lambda));
}
int negative_count(const std::vector<double>& eigenvalues, double lambda);

}  // namespace dumbbell
