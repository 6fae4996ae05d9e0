#include "dumbbell/symmetric_sector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "dumbbell/errors.hpp"

namespace dumbbell {

namespace {

using quad = __float128;

template <class R>
R rabs(R x) { return x < R(0) ? -x : x; }

template <class R>
constexpr R unit_roundoff();
template <>
constexpr double unit_roundoff<double>() { return std::numeric_limits<double>::epsilon(); }
template <>
constexpr quad unit_roundoff<quad>() {
  quad e = 1;
  for (int i = 0; i < 112; ++i) e /= 2;
  return e;
}

// Tridiagonal operator: row i is lo[i] u[i-1] + di[i] u[i] + up[i] u[i+1].
template <class R>
struct Tri {
  std::vector<R> lo, di, up;
  explicit Tri(std::size_t n) : lo(n, R(0)), di(n, R(0)), up(n, R(0)) {}
  std::size_t size() const { return di.size(); }
  std::vector<R> apply(const std::vector<R>& u) const {
    const std::size_t n = size();
    std::vector<R> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      R s = di[i] * u[i];
      if (i > 0) s += lo[i] * u[i - 1];
      if (i + 1 < n) s += up[i] * u[i + 1];
      y[i] = s;
    }
    return y;
  }
};

// Thomas algorithm; throws SingularJacobian on a vanishing pivot.
template <class R>
std::vector<R> thomas(Tri<R> t, std::vector<R> b) {
  const std::size_t n = t.size();
  for (std::size_t i = 1; i < n; ++i) {
    if (t.di[i - 1] == R(0)) throw SingularJacobian("symmetric sector: zero pivot");
    const R m = t.lo[i] / t.di[i - 1];
    t.di[i] -= m * t.up[i - 1];
    b[i] -= m * b[i - 1];
  }
  if (t.di[n - 1] == R(0)) throw SingularJacobian("symmetric sector: zero pivot");
  std::vector<R> x(n);
  x[n - 1] = b[n - 1] / t.di[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = (b[i] - t.up[i] * x[i + 1]) / t.di[i];
  return x;
}

// Number of eigenvalues below x of the symmetric tridiagonal matrix with
// diagonal d and squared off-diagonals p.
template <class R>
int sturm_count(const std::vector<R>& d, const std::vector<R>& p, R x) {
  int neg = 0;
  R q = d[0] - x;
  const R tiny = unit_roundoff<R>() * unit_roundoff<R>();
  for (std::size_t i = 0;; ++i) {
    if (q == R(0)) q = -tiny;
    if (q < R(0)) ++neg;
    if (i + 1 == d.size()) break;
    q = d[i + 1] - x - p[i] / q;
  }
  return neg;
}

template <class R>
R lowest_eigenvalue(const Tri<R>& t, const std::vector<R>& pot) {
  const std::size_t n = t.size();
  std::vector<R> d(n), p(n > 0 ? n - 1 : 0);
  for (std::size_t i = 0; i < n; ++i) d[i] = t.di[i] + pot[i];
  for (std::size_t i = 0; i + 1 < n; ++i) p[i] = t.up[i] * t.lo[i + 1];
  double lo_d = std::numeric_limits<double>::infinity(), hi_d = -lo_d;
  for (std::size_t i = 0; i < n; ++i) {
    double r = 0.0;
    if (i > 0) r += std::sqrt(static_cast<double>(p[i - 1]));
    if (i + 1 < n) r += std::sqrt(static_cast<double>(p[i]));
    lo_d = std::min(lo_d, static_cast<double>(d[i]) - r);
    hi_d = std::max(hi_d, static_cast<double>(d[i]) + r);
  }
  const double pad = 1e-6 * (1.0 + std::abs(lo_d) + std::abs(hi_d));
  R lo = R(lo_d - pad), hi = R(hi_d + pad);
  for (int it = 0; it < 200; ++it) {
    const R mid = (lo + hi) / 2;
    if (mid == lo || mid == hi) break;
    if (sturm_count(d, p, mid) >= 1)
      hi = mid;
    else
      lo = mid;
  }
  return (lo + hi) / 2;
}

// Reduced even-sector layout: segment centre (k = 0) to the right junction
// (k = M/2), then ring nodes 1..N/2 (N/2 is the ring midpoint).
template <class R>
Tri<R> even_laplacian(int half_m, int half_n, R h) {
  const std::size_t n = static_cast<std::size_t>(half_m + 1 + half_n);
  Tri<R> t(n);
  const R c = R(1) / (h * h);
  const std::size_t J = static_cast<std::size_t>(half_m);
  for (std::size_t i = 0; i < n; ++i) {
    t.di[i] = 2 * c;
    t.lo[i] = -c;
    t.up[i] = -c;
  }
  t.up[0] = -2 * c;
  t.lo[0] = 0;
  t.lo[J] = -2 * c / 3;
  t.up[J] = -4 * c / 3;
  t.lo[n - 1] = -2 * c;
  t.up[n - 1] = 0;
  return t;
}

template <class R>
struct Reduced {
  std::vector<R> phi;
  R residual = 0;
  int iterations = 0;
};

template <class R>
Reduced<R> newton_tri(const Tri<R>& A, std::vector<R> phi, R lambda) {
  const std::size_t n = phi.size();
  Reduced<R> out;
  R scale = 1;
  for (const R& v : phi) scale = std::max(scale, rabs(v));
  const R tol = 64 * unit_roundoff<R>() * scale;
  for (int it = 1; it <= 40; ++it) {
    std::vector<R> F = A.apply(phi);
    for (std::size_t i = 0; i < n; ++i) F[i] -= (2 * phi[i] * phi[i] + lambda) * phi[i], F[i] = -F[i];
    Tri<R> J = A;
    for (std::size_t i = 0; i < n; ++i) J.di[i] -= 6 * phi[i] * phi[i] + lambda;
    const std::vector<R> d = thomas(J, F);
    R step = 0;
    for (std::size_t i = 0; i < n; ++i) {
      phi[i] += d[i];
      step = std::max(step, rabs(d[i]));
    }
    out.iterations = it;
    if (step <= tol) break;
    if (it == 40) throw ConvergenceFailure("symmetric sector: Newton did not converge");
  }
  std::vector<R> F = A.apply(phi);
  R res = 0;
  for (std::size_t i = 0; i < n; ++i) res = std::max(res, rabs(F[i] - (2 * phi[i] * phi[i] + lambda) * phi[i]));
  out.residual = res;
  out.phi = std::move(phi);
  return out;
}

template <class R>
struct LineResult {
  R charge;
  R peak;
  int nodes;
};

template <class R>
LineResult<R> line_soliton_impl(double h, double lambda) {
  if (!(lambda < 0.0) || !(h > 0.0)) throw DomainError("line_soliton: need h > 0 and lambda < 0");
  const double mu = std::sqrt(-lambda);
  const int n = static_cast<int>(std::ceil(45.0 / (mu * h))) + 1;
  Tri<R> A(static_cast<std::size_t>(n));
  const R hh = R(h);
  const R c = R(1) / (hh * hh);
  for (int i = 0; i < n; ++i) {
    A.di[i] = 2 * c;
    A.lo[i] = -c;
    A.up[i] = -c;
  }
  A.lo[0] = 0;
  A.up[0] = -2 * c;
  A.up[n - 1] = 0;
  std::vector<R> phi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) phi[i] = R(mu / std::cosh(mu * h * i));
  const Reduced<R> r = newton_tri<R>(A, phi, R(lambda));
  R q = hh * r.phi[0] * r.phi[0];
  R s = 0;
  for (int i = n - 1; i >= 1; --i) s += r.phi[i] * r.phi[i];
  q += 2 * hh * s;
  return {q, r.phi[0], n};
}

template <class R>
SymmetricRefinement refine_impl(const StationaryState& st) {
  const DumbbellGrid& g = st.grid;
  if (g.M() % 2 != 0 || g.N() % 2 != 0)
    throw DomainError("refine_symmetric: requires even M and N");
  if (!(st.lambda < 0.0)) throw DomainError("refine_symmetric: lambda must be negative");
  const GraphFunction& phi = st.phi;
  const double scale = std::max(1.0, phi.sup_norm());
  double defect = 0.0;
  for (int i = 0; i < g.size(); ++i) defect = std::max(defect, std::abs(phi[i] - phi[g.reflect(i)]));
  for (int i = 1; i < g.N(); ++i)
    defect = std::max(defect, std::abs(phi[g.ring_plus(i)] - phi[g.ring_plus(g.N() - i)]));
  if (defect > 1e-6 * scale) {
    std::ostringstream os;
    os << "refine_symmetric: state is not even (defect " << defect << ")";
    throw DomainError(os.str());
  }
  const int hm = g.M() / 2, hn = g.N() / 2;
  const R h = R(g.h());
  const R lambda = R(st.lambda);
  Tri<R> A = even_laplacian<R>(hm, hn, h);
  std::vector<R> u(A.size());
  for (int k = 0; k <= hm; ++k) u[k] = R(phi[g.segment(hm + k)]);
  for (int i = 1; i <= hn; ++i) u[hm + i] = R(phi[g.ring_plus(i)]);
  const Reduced<R> red = newton_tri(A, u, lambda);
  const std::vector<R>& v = red.phi;

  R seg = 0, ring = 0;
  for (int k = 1; k < hm; ++k) seg += v[k] * v[k];
  for (int i = 1; i < hn; ++i) ring += v[hm + i] * v[hm + i];
  const R vJ = v[hm], vmid = v[hm + hn];
  const R Q = h * v[0] * v[0] + 2 * h * (seg + R(1.5) * vJ * vJ + 2 * ring + vmid * vmid);

  std::vector<R> pot(A.size());
  for (std::size_t i = 0; i < A.size(); ++i) pot[i] = -6 * v[i] * v[i] - lambda;
  const R even_min = lowest_eigenvalue(A, pot);

  // x-odd, ring-even sector: Dirichlet at the centre, so drop row/column 0
  Tri<R> O(A.size() - 1);
  std::vector<R> opot(A.size() - 1);
  for (std::size_t i = 1; i < A.size(); ++i) {
    O.di[i - 1] = A.di[i];
    O.lo[i - 1] = i == 1 ? R(0) : A.lo[i];
    O.up[i - 1] = A.up[i];
    opot[i - 1] = pot[i];
  }
  const R odd_min = lowest_eigenvalue(O, opot);

  const LineResult<R> line = line_soliton_impl<R>(g.h(), st.lambda);
  // 2μ itself is only known to double precision
  const R two_mu = 2 * R(std::sqrt(-st.lambda));

  SymmetricRefinement out;
  out.lambda = st.lambda;
  out.charge = static_cast<double>(Q);
  out.charge_minus_line = static_cast<double>(Q - line.charge);
  out.charge_minus_two_mu = static_cast<double>(Q - two_mu);
  out.lplus_odd_min = static_cast<double>(odd_min);
  out.lplus_even_min = static_cast<double>(even_min);
  out.residual = static_cast<double>(red.residual);
  out.newton_iterations = red.iterations;
  return out;
}

}  // namespace

SymmetricRefinement refine_symmetric(const StationaryState& s, Precision p) {
  return p == Precision::Quad ? refine_impl<quad>(s) : refine_impl<double>(s);
}

LineSoliton line_soliton(double h, double lambda, Precision p) {
  LineSoliton out;
  if (p == Precision::Quad) {
    const auto r = line_soliton_impl<quad>(h, lambda);
    out.charge = static_cast<double>(r.charge);
    out.charge_minus_two_mu = static_cast<double>(r.charge - 2 * quad(std::sqrt(-lambda)));
    out.peak = static_cast<double>(r.peak);
    out.nodes = r.nodes;
  } else {
    const auto r = line_soliton_impl<double>(h, lambda);
    out.charge = r.charge;
    out.charge_minus_two_mu = r.charge - 2 * std::sqrt(-lambda);
    out.peak = r.peak;
    out.nodes = r.nodes;
  }
  return out;
}

double charge_gap_to_line(double Q, double h, double lambda) {
  const auto r = line_soliton_impl<quad>(h, lambda);
  return static_cast<double>(quad(Q) - r.charge);
}

}  // namespace dumbbell
