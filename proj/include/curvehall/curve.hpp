#pragma once

#include <string>
#include <vector>

#include "curvehall/flatpoly.hpp"
#include "curvehall/laurent.hpp"
#include "curvehall/ring.hpp"

namespace curvehall {

/// Univariate rational function over the ground scalars, as a pair of
/// Laurent polynomials in z.  Equality is decided by cross-multiplication.
struct RatFunc1 {
  ZPoly num, den;

  RatFunc1() = default;
  RatFunc1(ZPoly n, ZPoly d) : num(std::move(n)), den(std::move(d)) {}
  static RatFunc1 one(RingPtr ring);
  // 1 - c z^dir with dir in {1, -1}.
  static RatFunc1 linear(RingPtr ring, const Scalar& c, int dir);

  RatFunc1 operator*(const RatFunc1& o) const;
  RatFunc1 operator/(const RatFunc1& o) const;
  bool operator==(const RatFunc1& o) const;
  // z -> c * z^dir.
  RatFunc1 transformed(const Scalar& c, int dir) const;
};

/// Truncated power series sum_{k>=0} c[k] z^(offset+k), exact coefficients.
class PowerSeries {
 public:
  PowerSeries() = default;
  PowerSeries(RingPtr ring, int offset, std::vector<Scalar> coeffs);
  static PowerSeries zero(RingPtr ring, int len);
  static PowerSeries one(RingPtr ring, int len);

  const RingPtr& ring() const { return ring_; }
  int offset() const { return offset_; }
  int length() const { return static_cast<int>(c_.size()); }
  // Coefficient of z^k.
  Scalar at(int k) const;
  const std::vector<Scalar>& coeffs() const { return c_; }

  PowerSeries operator+(const PowerSeries& o) const;
  PowerSeries operator-(const PowerSeries& o) const;
  PowerSeries operator*(const PowerSeries& o) const;
  PowerSeries operator*(const Scalar& s) const;
  // Requires an invertible lowest coefficient.
  PowerSeries inverse() const;
  PowerSeries operator/(const PowerSeries& o) const { return *this * o.inverse(); }
  // Substitutes z -> c z.
  PowerSeries scaled_arg(const Scalar& c) const;
  // Requires offset >= 1; coefficients may acquire integer denominators.
  PowerSeries exp() const;
  bool operator==(const PowerSeries& o) const;

 private:
  RingPtr ring_;
  int offset_ = 0;
  std::vector<Scalar> c_;
};

// Factored rational kernel scale * z^a * prod (1 - c z) / prod (1 - c' z),
// the common currency between the series and lattice expansions.
struct FactoredKernel {
  RingPtr ring;
  Scalar scale;
  int a = 0;
  std::vector<Scalar> num_c, den_c;

  RatFunc1 rational() const;
  PowerSeries series(int terms) const;
};

/// Kernel in symmetrization form: scale * z^a * prod_{c in plus} (1 - c z)
/// * prod_{c in minus} (1 - c z^-1) / D with D one of (1-z), (1-z^-1), 1.
struct Kernel {
  enum class Den { kZ, kZInv, kNone };

  RingPtr ring;
  int a = 0;
  std::vector<Scalar> plus, minus;
  Den den = Den::kNone;
  Scalar scale;

  RatFunc1 rational() const;
  // Division data: kernel at z = x_i/x_j equals
  // c x_i^p x_j^q prod_b (x_i - b x_j) / (x_i - x_j).
  PairKernel pair_data() const;
  std::string display() const;
};

// The symmetrization kernel of the spherical side: for genus g,
//   zt(z) = (1 - q z^-1) prod_l (1 - a_l z)(1 - abar_l z) / (1 - z).
Kernel zeta_tilde_kernel(RingPtr ring);
// The same function arising as the weight k(z) of the commuting-variety
// side, assembled from p = v^2, x_l = a_l^-1, y_l = v^2 a_l:
//   k(z) = (1 - p^-1 z^-1) prod_l (1 - x_l^-1 z)(1 - y_l^-1 z) / (1 - z).
Kernel k_kernel(RingPtr ring);
// g(z) = z^(g-1) zt(z^-1), the kernel of the nonsymmetric product.
Kernel g_kernel(RingPtr ring);
// g'(z) = zt(z^-1), its untwisted companion.
Kernel gprime_kernel(RingPtr ring);

// Weil zeta of the formal genus-g curve:
//   zeta(z) = prod_l (1 - a_l z)(1 - abar_l z) / ((1 - z)(1 - q z)).
FactoredKernel zeta_function(RingPtr ring);
// h(z) = q^(1-g) zeta(z)/zeta(q^-1 z), the constant-term kernel, in the
// cancelled form q^(1-g)(1 - q^-1 z) prod_l (1 - a_l z)(1 - abar_l z) /
// [(1 - q z) prod_l (1 - a_l^-1 z)(1 - abar_l^-1 z)].
FactoredKernel h_kernel(RingPtr ring);
// h'(z) = z^(2g-2) h(z), the kernel of the twisted constant-term algebra.
FactoredKernel hprime_kernel(RingPtr ring);

// #X(F_{q^d}) = q^d + 1 - sum_l (a_l^d + abar_l^d).
Scalar point_count(RingPtr ring, int d);
// #Pic^0 = prod_l (1 - a_l)(1 - abar_l).
Scalar pic0_order(RingPtr ring);
// [d] = v^(d-1) + v^(d-3) + ... + v^(1-d).
Scalar v_integer(RingPtr ring, int d);
// c_d = v^d #X(F_{q^d}) [d] / d, the Hecke eigenvalue of the degree-d
// average on line bundles.
Scalar hecke_c(RingPtr ring, int d);
// xi(s) = zeta(s)/zeta(q^-1 s) as a power series; xi_1 = q - q^-1 at g=0.
PowerSeries xi_series(RingPtr ring, int terms);

}  // namespace curvehall
