#pragma once

#include <functional>
#include <numbers>
#include <span>
#include <vector>

namespace dumbbell {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kRingLength = 2.0 * kPi;

enum class Edge { RingMinus, Segment, RingPlus };

// Node ordering: ring-minus interior (N-1 nodes), segment (M+1 nodes, the two
// junctions are its endpoints), ring-plus interior (N-1 nodes).
class DumbbellGrid {
 public:
  DumbbellGrid() = default;
  DumbbellGrid(double L, int N, int M);

  double L() const { return L_; }
  int N() const { return N_; }
  int M() const { return M_; }
  double h() const { return h_; }
  int size() const { return M_ + 2 * N_ - 1; }
  double total_length() const { return 2.0 * L_ + 2.0 * kRingLength; }

  // i in 0..N; i = 0 and i = N both resolve to the left junction.
  int ring_minus(int i) const;
  int segment(int j) const { return N_ - 1 + j; }
  // i in 0..N; i = 0 and i = N both resolve to the right junction.
  int ring_plus(int i) const;
  int left_junction() const { return segment(0); }
  int right_junction() const { return segment(M_); }

  Edge edge_of(int node) const;
  // Coordinate on the node's own edge (junctions report the segment value).
  double coordinate(int node) const;
  bool is_junction(int node) const {
    return node == left_junction() || node == right_junction();
  }

  // Composite trapezoid weights; a junction collects h/2 from each of its
  // three incident edges.
  std::vector<double> weights() const;

  // Node index of the mirror image under x -> -x.
  int reflect(int node) const;

  bool operator==(const DumbbellGrid& o) const {
    return N_ == o.N_ && M_ == o.M_ && L_ == o.L_;
  }

 private:
  double L_ = 0.0;
  int N_ = 0;
  int M_ = 0;
  double h_ = 0.0;
};

DumbbellGrid make_grid(double L, int N);

// Smallest N >= N_hint (and >= 4) making N*L/pi an integer, or 0 if none
// below a generous cap.
int suggest_commensurate_N(double L, int N_hint);

class GraphFunction {
 public:
  GraphFunction() = default;
  explicit GraphFunction(const DumbbellGrid& g)
      : grid_(g), values_(static_cast<std::size_t>(g.size()), 0.0) {}
  GraphFunction(const DumbbellGrid& g, std::vector<double> v);

  const DumbbellGrid& grid() const { return grid_; }
  std::vector<double>& values() { return values_; }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> view() const { return values_; }
  int size() const { return static_cast<int>(values_.size()); }
  double& operator[](int i) { return values_[static_cast<std::size_t>(i)]; }
  double operator[](int i) const { return values_[static_cast<std::size_t>(i)]; }

  double max() const;
  double min() const;
  double sup_norm() const;
  GraphFunction reflected() const;

 private:
  DumbbellGrid grid_;
  std::vector<double> values_;
};

using EdgeFunction = std::function<double(Edge, double)>;

GraphFunction sample(const DumbbellGrid& grid, const EdgeFunction& f);

void require_same_grid(const DumbbellGrid& a, const DumbbellGrid& b);

}  // namespace dumbbell
