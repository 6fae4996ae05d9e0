#pragma once

#include <span>

// Vector kernels used by the solvers. `serial` is the plain reference; `omp`
// runs the same loops under OpenMP. The unqualified names dispatch to `omp`.

namespace dumbbell::kernels {

// Borrowed compressed-row view (e.g. of a row-major Eigen sparse matrix).
struct CsrView {
  int rows = 0;
  const int* outer = nullptr;
  const int* inner = nullptr;
  const double* values = nullptr;
};

namespace serial {
void spmv(const CsrView& A, std::span<const double> x, std::span<double> y);
double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double weighted_quartic(std::span<const double> w, std::span<const double> u);
void scaled_cube(std::span<const double> u, double c, std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
// out = A phi - 2 phi^3 - lambda phi
void stationary_residual(const CsrView& A, std::span<const double> phi, double lambda,
                         std::span<double> out);
}  // namespace serial

namespace omp {
void spmv(const CsrView& A, std::span<const double> x, std::span<double> y);
double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b);
double weighted_quartic(std::span<const double> w, std::span<const double> u);
void scaled_cube(std::span<const double> u, double c, std::span<double> out);
double max_abs_diff(std::span<const double> a, std::span<const double> b);
void stationary_residual(const CsrView& A, std::span<const double> phi, double lambda,
                         std::span<double> out);
}  // namespace omp

using omp::max_abs_diff;
using omp::scaled_cube;
using omp::spmv;
using omp::stationary_residual;
using omp::weighted_dot;
using omp::weighted_quartic;

// Below this length the OpenMP loops stay on one thread.
inline constexpr int kParallelMin = 4096;

// Reads DUMBBELL_NLS_THREADS and caps the OpenMP team size accordingly.
// Returns the cap applied, or 0 if the variable is unset/invalid.
int apply_thread_env();

}  // namespace dumbbell::kernels
