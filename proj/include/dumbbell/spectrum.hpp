#pragma once

#include <optional>
#include <vector>

#include "dumbbell/grid.hpp"

namespace dumbbell {

// Pole-free forms of the two dispersion relations.
double even_dispersion(double omega, double L);  // 2 sin(ωπ) cos(ωL) + cos(ωπ) sin(ωL)
double odd_dispersion(double omega, double L);   // 2 sin(ωπ) sin(ωL) - cos(ωπ) cos(ωL)
// tan/cot forms, for residual reporting only
double even_dispersion_tan(double omega, double L);  // 2 tan(ωπ) + tan(ωL)
double odd_dispersion_tan(double omega, double L);   // 2 tan(ωπ) - cot(ωL)

std::vector<double> even_dispersion_roots(double L, int count);
std::vector<double> odd_dispersion_roots(double L, int count);

struct Resonance {
  int m = 0;
  int n = 0;
  bool m_even() const { return m % 2 == 0; }
};

std::optional<Resonance> detect_resonance(double L);

// The extra eigenfunction for eigenvalue n² that exists at resonance.
GraphFunction resonant_eigenfunction(double L, const Resonance& r, const DumbbellGrid& grid);
EdgeFunction resonant_eigenfunction_formula(double L, const Resonance& r);

// Odd eigenfunction for Ω₁ (sin on the segment, ± cos pieces on the rings).
GraphFunction odd_eigenfunction(double L, const DumbbellGrid& grid);
EdgeFunction odd_eigenfunction_formula(double L);
double odd_eigenfunction_norm2(double L);  // L + 2π sin²(LΩ₁)/cos²(πΩ₁)

struct SpectrumReport {
  double L = 0.0;
  std::vector<int> doubles;  // n, each eigenvalue n² with multiplicity two
  std::vector<double> even_roots;
  std::vector<double> odd_roots;
  std::vector<double> even_residuals;  // pole-free form at the root
  std::vector<double> odd_residuals;
  std::optional<Resonance> resonance;

  // Eigenvalues of -Δ in ascending order with multiplicity, starting at 0.
  std::vector<double> eigenvalues(int count) const;
  bool orderings_hold() const;
};

SpectrumReport spectrum_report(double L, int count);

}  // namespace dumbbell
