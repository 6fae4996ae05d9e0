#include "dumbbell/kernels.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <string>
#include <vector>

namespace dumbbell::kernels {

namespace serial {

void spmv(const CsrView& A, std::span<const double> x, std::span<double> y) {
  for (int r = 0; r < A.rows; ++r) {
    double s = 0.0;
    for (int k = A.outer[r]; k < A.outer[r + 1]; ++k) s += A.values[k] * x[A.inner[k]];
    y[r] = s;
  }
}

double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) s += w[i] * a[i] * b[i];
  return s;
}

double weighted_quartic(std::span<const double> w, std::span<const double> u) {
  double s = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double u2 = u[i] * u[i];
    s += w[i] * u2 * u2;
  }
  return s;
}

void scaled_cube(std::span<const double> u, double c, std::span<double> out) {
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = c * u[i] * u[i] * u[i];
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void stationary_residual(const CsrView& A, std::span<const double> phi, double lambda,
                         std::span<double> out) {
  for (int r = 0; r < A.rows; ++r) {
    double s = 0.0;
    for (int k = A.outer[r]; k < A.outer[r + 1]; ++k) s += A.values[k] * phi[A.inner[k]];
    const double p = phi[r];
    out[r] = s - 2.0 * p * p * p - lambda * p;
  }
}

}  // namespace serial

namespace omp {

void spmv(const CsrView& A, std::span<const double> x, std::span<double> y) {
  const int n = A.rows;
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int k = A.outer[r]; k < A.outer[r + 1]; ++k) s += A.values[k] * x[A.inner[k]];
    y[r] = s;
  }
}

// Sums over fixed blocks of kParallelMin terms, combined in block order, so
// the result does not depend on the team size.
template <class Term>
double block_sum(long n, Term term) {
  const long nb = (n + kParallelMin - 1) / kParallelMin;
  if (nb <= 1) {
    double s = 0.0;
    for (long i = 0; i < n; ++i) s += term(i);
    return s;
  }
  std::vector<double> part(static_cast<std::size_t>(nb), 0.0);
#pragma omp parallel for schedule(static)
  for (long b = 0; b < nb; ++b) {
    double s = 0.0;
    const long hi = std::min(n, (b + 1) * kParallelMin);
    for (long i = b * kParallelMin; i < hi; ++i) s += term(i);
    part[static_cast<std::size_t>(b)] = s;
  }
  double s = 0.0;
  for (double v : part) s += v;
  return s;
}

double weighted_dot(std::span<const double> w, std::span<const double> a, std::span<const double> b) {
  return block_sum(static_cast<long>(w.size()), [&](long i) { return w[i] * a[i] * b[i]; });
}

double weighted_quartic(std::span<const double> w, std::span<const double> u) {
  return block_sum(static_cast<long>(w.size()), [&](long i) {
    const double u2 = u[i] * u[i];
    return w[i] * u2 * u2;
  });
}

void scaled_cube(std::span<const double> u, double c, std::span<double> out) {
  const long n = static_cast<long>(u.size());
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (long i = 0; i < n; ++i) out[i] = c * u[i] * u[i] * u[i];
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  const long n = static_cast<long>(a.size());
  double m = 0.0;
#pragma omp parallel for schedule(static) reduction(max : m) if (n >= kParallelMin)
  for (long i = 0; i < n; ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void stationary_residual(const CsrView& A, std::span<const double> phi, double lambda,
                         std::span<double> out) {
  const int n = A.rows;
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (int r = 0; r < n; ++r) {
    double s = 0.0;
    for (int k = A.outer[r]; k < A.outer[r + 1]; ++k) s += A.values[k] * phi[A.inner[k]];
    const double p = phi[r];
    out[r] = s - 2.0 * p * p * p - lambda * p;
  }
}

}  // namespace omp

int apply_thread_env() {
  const char* env = std::getenv("DUMBBELL_NLS_THREADS");
  if (!env || !*env) return 0;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (*end != '\0' || v < 1 || v > 4096) return 0;
  omp_set_num_threads(static_cast<int>(v));
  return static_cast<int>(v);
}

}  // namespace dumbbell::kernels
