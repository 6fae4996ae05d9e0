// Serial reference vs OpenMP kernels on large dumbbell grids.
// Usage: bench_kernels [N ...]   (default N = 4096 16384 65536)

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "dumbbell/grid.hpp"
#include "dumbbell/kernels.hpp"
#include "dumbbell/operators.hpp"

using namespace dumbbell;
namespace K = dumbbell::kernels;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double ts, double tp, double diff) {
  std::printf("  %-20s serial %9.3f us   omp %9.3f us   speedup %5.2f   |diff| %.1e\n", name, 1e6 * ts, 1e6 * tp,
              ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  K::apply_thread_env();
  std::vector<int> Ns;
  for (int i = 1; i < argc; ++i) Ns.push_back(std::atoi(argv[i]));
  if (Ns.empty()) Ns = {4096, 16384, 65536};
  std::printf("threads: %d\n", omp_get_max_threads());
  int bad = 0;
  for (int N : Ns) {
    const auto g = make_grid(kPi / 2, N);
    const auto A = build_laplacian(g);
    const auto csr = A.csr();
    const int D = g.size();
    const auto w = g.weights();
    std::vector<double> u(D), y1(D), y2(D);
    for (int i = 0; i < D; ++i) u[i] = std::sin(0.37 * i) + 0.1 * std::cos(0.011 * i);
    const int reps = 20;
    std::printf("N=%d (D=%d)\n", N, D);

    auto check = [&](double d, double scale) {
      if (!(d <= 1e-12 * scale)) ++bad;
      return d;
    };
    const double hh = 4.0 / (g.h() * g.h());

    double ts = best_of(reps, [&] { K::serial::spmv(csr, u, y1); });
    double tp = best_of(reps, [&] { K::omp::spmv(csr, u, y2); });
    row("spmv", ts, tp, check(K::serial::max_abs_diff(y1, y2), hh));

    double a = 0, b = 0;
    ts = best_of(reps, [&] { a = K::serial::weighted_dot(w, u, u); });
    tp = best_of(reps, [&] { b = K::omp::weighted_dot(w, u, u); });
    row("weighted_dot", ts, tp, check(std::abs(a - b), std::abs(a)));

    ts = best_of(reps, [&] { a = K::serial::weighted_quartic(w, u); });
    tp = best_of(reps, [&] { b = K::omp::weighted_quartic(w, u); });
    row("weighted_quartic", ts, tp, check(std::abs(a - b), std::abs(a)));

    ts = best_of(reps, [&] { K::serial::scaled_cube(u, 2.0, y1); });
    tp = best_of(reps, [&] { K::omp::scaled_cube(u, 2.0, y2); });
    row("scaled_cube", ts, tp, check(K::serial::max_abs_diff(y1, y2), 1.0));

    ts = best_of(reps, [&] { K::serial::stationary_residual(csr, u, -3.0, y1); });
    tp = best_of(reps, [&] { K::omp::stationary_residual(csr, u, -3.0, y2); });
    row("stationary_residual", ts, tp, check(K::serial::max_abs_diff(y1, y2), hh));

    ts = best_of(reps, [&] { a = K::serial::max_abs_diff(y1, u); });
    tp = best_of(reps, [&] { b = K::omp::max_abs_diff(y1, u); });
    row("max_abs_diff", ts, tp, check(std::abs(a - b), 0.0));
  }
  std::printf(bad ? "MISMATCH between serial and omp kernels\n" : "serial and omp kernels agree\n");
  return bad ? 1 : 0;
}
