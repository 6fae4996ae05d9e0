#include "dumbbell/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dumbbell/errors.hpp"

namespace dumbbell {

double even_dispersion(double w, double L) {
  return 2.0 * std::sin(w * kPi) * std::cos(w * L) + std::cos(w * kPi) * std::sin(w * L);
}

double odd_dispersion(double w, double L) {
  return 2.0 * std::sin(w * kPi) * std::sin(w * L) - std::cos(w * kPi) * std::cos(w * L);
}

double even_dispersion_tan(double w, double L) { return 2.0 * std::tan(w * kPi) + std::tan(w * L); }
double odd_dispersion_tan(double w, double L) { return 2.0 * std::tan(w * kPi) - 1.0 / std::tan(w * L); }

namespace {

constexpr double kLatticeMerge = 1e-12;
constexpr double kZeroValue = 1e-12;

// Walks the merged lattice {j/2} ∪ {jπ/(2L)} upward from 0.
class Lattice {
 public:
  explicit Lattice(double L) : step_b_(kPi / (2.0 * L)) {}
  double next() {
    const double a = 0.5 * ia_, b = step_b_ * ib_;
    double v;
    if (std::abs(a - b) < kLatticeMerge) {
      v = std::min(a, b);
      ++ia_;
      ++ib_;
    } else if (a < b) {
      v = a;
      ++ia_;
    } else {
      v = b;
      ++ib_;
    }
    return v;
  }

 private:
  double step_b_;
  long ia_ = 0, ib_ = 0;
};

template <class F, class Pole>
std::vector<double> roots_by_lattice(double L, int count, F f, Pole is_pole, const char* name) {
  if (!(L > 0.0)) throw DomainError(std::string(name) + ": L must be positive");
  if (count < 1) throw DomainError(std::string(name) + ": count must be >= 1");
  std::vector<double> out;
  Lattice lat(L);
  double a = lat.next();  // 0
  double fa = f(a);
  long guard = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++guard > 10'000'000) throw BracketingFailure(std::string(name) + ": lattice walk exhausted");
    const double b = lat.next();
    const double fb = f(b);
    // a lattice root leaves no usable sign at a; probe just to its right
    const double a_eff = std::abs(fa) < kZeroValue ? a + 1e-7 * (b - a) : a;
    const double fa_eff = std::abs(fa) < kZeroValue ? f(a_eff) : fa;
    if (std::abs(fb) < kZeroValue) {
      out.push_back(b);
    } else if ((fa_eff < 0) != (fb < 0)) {
      double lo = a_eff, hi = b, flo = fa_eff;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      out.push_back(0.5 * (lo + hi));
    } else if (a > 0.0 && std::abs(fa) >= kZeroValue && is_pole(a) && is_pole(b)) {
      std::ostringstream os;
      os.precision(17);
      os << name << ": no sign change between poles " << a << " and " << b << " (L=" << L << ")";
      throw BracketingFailure(os.str());
    }
    a = b;
    fa = fb;
  }
  out.resize(static_cast<std::size_t>(count));
  return out;
}

}  // namespace

std::vector<double> even_dispersion_roots(double L, int count) {
  auto pole = [L](double w) {
    return std::abs(std::cos(w * kPi)) < 1e-9 || std::abs(std::cos(w * L)) < 1e-9;
  };
  return roots_by_lattice(L, count, [L](double w) { return even_dispersion(w, L); }, pole,
                          "even_dispersion_roots");
}

std::vector<double> odd_dispersion_roots(double L, int count) {
  auto pole = [L](double w) {
    return std::abs(std::cos(w * kPi)) < 1e-9 || std::abs(std::sin(w * L)) < 1e-9;
  };
  return roots_by_lattice(L, count, [L](double w) { return odd_dispersion(w, L); }, pole,
                          "odd_dispersion_roots");
}

std::optional<Resonance> detect_resonance(double L) {
  if (!(L > 0.0)) throw DomainError("detect_resonance: L must be positive");
  for (int n = 1; n <= 64; ++n) {
    const double m = std::round(2.0 * n * L / kPi);
    if (m < 1.0) continue;
    if (std::abs(L - kPi * m / (2.0 * n)) < 1e-9) return Resonance{static_cast<int>(m), n};
  }
  return std::nullopt;
}

EdgeFunction resonant_eigenfunction_formula(double L, const Resonance& r) {
  const double n = r.n;
  const int parity = r.m_even() ? (r.n + r.m / 2) : (r.n + (r.m - 1) / 2);
  const double sgn = (parity % 2 == 0) ? 1.0 : -1.0;
  const bool even = r.m_even();
  return [=](Edge e, double x) {
    switch (e) {
      case Edge::Segment:
        return even ? std::cos(n * x) : std::sin(n * x);
      case Edge::RingPlus:
        return sgn * std::cos(n * (x - L - kPi));
      case Edge::RingMinus: {
        const double v = sgn * std::cos(n * (-x - L - kPi));
        return even ? v : -v;
      }
    }
    return 0.0;
  };
}

GraphFunction resonant_eigenfunction(double L, const Resonance& r, const DumbbellGrid& grid) {
  return sample(grid, resonant_eigenfunction_formula(L, r));
}

EdgeFunction odd_eigenfunction_formula(double L) {
  const double W = odd_dispersion_roots(L, 1)[0];
  const double amp = std::sin(W * L) / std::cos(W * kPi);
  return [=](Edge e, double x) {
    switch (e) {
      case Edge::Segment:
        return std::sin(W * x);
      case Edge::RingPlus:
        return amp * std::cos(W * (x - (L + kPi)));
      case Edge::RingMinus:
        return -amp * std::cos(W * (x + (L + kPi)));
    }
    return 0.0;
  };
}

GraphFunction odd_eigenfunction(double L, const DumbbellGrid& grid) {
  return sample(grid, odd_eigenfunction_formula(L));
}

double odd_eigenfunction_norm2(double L) {
  const double W = odd_dispersion_roots(L, 1)[0];
  const double s = std::sin(W * L), cp = std::cos(W * kPi);
  return L + 2.0 * kPi * s * s / (cp * cp);
}

std::vector<double> SpectrumReport::eigenvalues(int count) const {
  std::vector<double> ev{0.0};
  for (int n : doubles) {
    ev.push_back(double(n) * n);
    ev.push_back(double(n) * n);
  }
  for (double w : even_roots) ev.push_back(w * w);
  for (double w : odd_roots) ev.push_back(w * w);
  std::sort(ev.begin(), ev.end());
  if (static_cast<int>(ev.size()) > count) ev.resize(static_cast<std::size_t>(count));
  return ev;
}

// The last comparison for L >= π is taken as non-strict: at L = 2π the root
// Ω₂ = 1/2 lands exactly on min(1/2, π/L).
bool SpectrumReport::orderings_hold() const {
  if (odd_roots.size() < 2 || even_roots.empty()) return false;
  const double W1 = odd_roots[0], W2 = odd_roots[1], w1 = even_roots[0];
  bool ok = W1 > 0.0 && W1 < w1 && w1 < W2;
  if (L < kPi) {
    ok = ok && W1 < 0.5 && 0.5 < w1 && w1 < std::min(1.0, kPi / (2 * L)) &&
         std::min(1.0, kPi / (2 * L)) <= W2 + 1e-12;
  } else {
    ok = ok && W1 < kPi / (2 * L) && kPi / (2 * L) <= w1 + 1e-12 &&
         w1 <= std::min(0.5, kPi / L) + 1e-12 && std::min(0.5, kPi / L) <= W2 + 1e-12;
  }
  return ok;
}

SpectrumReport spectrum_report(double L, int count) {
  SpectrumReport r;
  r.L = L;
  r.even_roots = even_dispersion_roots(L, count);
  r.odd_roots = odd_dispersion_roots(L, count);
  for (double w : r.even_roots) r.even_residuals.push_back(even_dispersion(w, L));
  for (double w : r.odd_roots) r.odd_residuals.push_back(odd_dispersion(w, L));
  const double largest = std::max(r.even_roots.back(), r.odd_roots.back());
  const int n_max = std::max(1, static_cast<int>(std::ceil(largest)));
  for (int n = 1; n <= n_max; ++n) r.doubles.push_back(n);
  r.resonance = detect_resonance(L);
  return r;
}

}  // namespace dumbbell
