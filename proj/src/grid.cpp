#include "dumbbell/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "dumbbell/errors.hpp"

namespace dumbbell {

namespace {

bool commensurate(double L, int N, int* M_out) {
  const double ratio = N * L / kPi;
  const double r = std::round(ratio);
  if (r < 1.0) return false;
  if (std::abs(ratio - r) > 1e-12 * std::max(1.0, ratio)) return false;
  if (M_out) *M_out = static_cast<int>(r);
  return true;
}

}  // namespace

DumbbellGrid::DumbbellGrid(double L, int N, int M)
    : L_(L), N_(N), M_(M), h_(kRingLength / N) {}

int DumbbellGrid::ring_minus(int i) const {
  if (i <= 0 || i >= N_) return left_junction();
  return i - 1;
}

int DumbbellGrid::ring_plus(int i) const {
  if (i <= 0 || i >= N_) return right_junction();
  return N_ + M_ + i - 1;
}

Edge DumbbellGrid::edge_of(int node) const {
  if (node < N_ - 1) return Edge::RingMinus;
  if (node <= N_ - 1 + M_) return Edge::Segment;
  return Edge::RingPlus;
}

// Written so that reflect(i) has exactly the negated coordinate.
double DumbbellGrid::coordinate(int node) const {
  switch (edge_of(node)) {
    case Edge::RingMinus:
      return -(L_ + (N_ - (node + 1)) * h_);
    case Edge::Segment:
      return (2 * (node - (N_ - 1)) - M_) * (0.5 * h_);
    case Edge::RingPlus:
      return L_ + (node - (N_ + M_) + 1) * h_;
  }
  return 0.0;
}

std::vector<double> DumbbellGrid::weights() const {
  std::vector<double> w(static_cast<std::size_t>(size()), h_);
  w[static_cast<std::size_t>(left_junction())] = 1.5 * h_;
  w[static_cast<std::size_t>(right_junction())] = 1.5 * h_;
  return w;
}

int DumbbellGrid::reflect(int node) const {
  switch (edge_of(node)) {
    case Edge::RingMinus:
      return ring_plus(N_ - (node + 1));
    case Edge::Segment:
      return segment(M_ - (node - (N_ - 1)));
    case Edge::RingPlus:
      return ring_minus(N_ - (node - (N_ + M_) + 1));
  }
  return node;
}

DumbbellGrid make_grid(double L, int N) {
  if (!(L > 0.0) || !std::isfinite(L)) throw DomainError("make_grid: L must be positive");
  if (N < 4) throw DomainError("make_grid: N must be at least 4");
  int M = 0;
  if (!commensurate(L, N, &M)) {
    std::ostringstream os;
    os.precision(17);
    os << "N*L/pi is not an integer (L=" << L << ", N=" << N << ")";
    throw NonCommensurateGrid(os.str(), suggest_commensurate_N(L, N));
  }
  return DumbbellGrid(L, N, M);
}

int suggest_commensurate_N(double L, int N_hint) {
  if (!(L > 0.0)) return 0;
  const int lo = std::max(4, N_hint);
  for (int n = lo; n <= lo + 4096; ++n)
    if (commensurate(L, n, nullptr)) return n;
  return 0;
}

GraphFunction::GraphFunction(const DumbbellGrid& g, std::vector<double> v)
    : grid_(g), values_(std::move(v)) {
  if (static_cast<int>(values_.size()) != g.size())
    throw GridMismatch("GraphFunction: value count does not match grid");
}

double GraphFunction::max() const { return *std::max_element(values_.begin(), values_.end()); }
double GraphFunction::min() const { return *std::min_element(values_.begin(), values_.end()); }

double GraphFunction::sup_norm() const {
  double s = 0.0;
  for (double v : values_) s = std::max(s, std::abs(v));
  return s;
}

GraphFunction GraphFunction::reflected() const {
  GraphFunction r(grid_);
  for (int i = 0; i < size(); ++i) r[grid_.reflect(i)] = (*this)[i];
  return r;
}

GraphFunction sample(const DumbbellGrid& grid, const EdgeFunction& f) {
  GraphFunction out(grid);
  for (int i = 0; i < grid.size(); ++i) {
    const double v = f(grid.edge_of(i), grid.coordinate(i));
    if (!std::isfinite(v)) {
      std::ostringstream os;
      os << "sample: non-finite value at node " << i << " (x=" << grid.coordinate(i) << ")";
      throw NonFiniteSample(os.str());
    }
    out[i] = v;
  }
  return out;
}

void require_same_grid(const DumbbellGrid& a, const DumbbellGrid& b) {
  if (!(a == b)) throw GridMismatch("functions live on different grids");
}

}  // namespace dumbbell
