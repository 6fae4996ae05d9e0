#pragma once

#include <string>
#include <vector>

namespace dumbbell {

// Elliptic modulus kept together with its complement k' = sqrt(1-k²), so
// moduli extremely close to 1 can be specified without cancellation.
class EllipticModulus {
 public:
  static EllipticModulus from_k(double k);
  static EllipticModulus from_complement(double kc);

  double k() const { return k_; }
  double kc() const { return kc_; }
  double m1() const { return kc_ * kc_; }  // 1 - k²
  bool degenerate() const { return kc_ == 0.0; }

 private:
  EllipticModulus(double k, double kc) : k_(k), kc_(kc) {}
  double k_;
  double kc_;
};

struct JacobiTriple {
  double sn;
  double cn;
  double dn;
};

JacobiTriple jacobi(double xi, const EllipticModulus& k);

double complete_K(const EllipticModulus& k);
double complete_E(const EllipticModulus& k);

// Leading terms near k = 1 (logarithmic expansions).
double K_near_one(const EllipticModulus& k);  // log(4/k')
double E_near_one(const EllipticModulus& k);  // 1 + k'²/2 (log(4/k') - 1/2)

// k-derivatives of sn, cn, dn at k = 1 (closed forms).
struct JacobiDerivative {
  double d_sn;
  double d_cn;
  double d_dn;
};
JacobiDerivative dk_jacobi_at_1(double xi);

// ∂dn/∂k at fixed xi for 0 < k < 1 and 0 <= xi < K(k), from
// -k sn cn ∫_0^xi dt / cn²(t).
double dk_dn_variation(double xi, const EllipticModulus& k);

}  // namespace dumbbell

namespace dumbbell {

// One row of the property suite behind `elliptic-check`.
struct EllipticProperty {
  std::string name;
  double value;      // measured quantity
  double lo, hi;     // pass iff lo <= value <= hi
  bool pass() const { return value >= lo && value <= hi; }
};

// Identities on random (ξ, k), periodicity, monotonicity, k = 1 derivative
// formulas vs one-sided differences, first-order dn expansion order, and the
// variation-of-constants derivative vs centred differences.
std::vector<EllipticProperty> elliptic_property_suite(unsigned seed = 20240611u, int samples = 10000);

}  // namespace dumbbell
