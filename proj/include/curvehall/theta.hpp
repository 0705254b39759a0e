#pragma once

#include "curvehall/shuffle.hpp"

namespace curvehall {

// K-theory-side generators, realized inside the shared ground ring:
//   p = v^2,   x_l = alpha_l^{-1},   y_l = v^2 alpha_l,
// so that p = x_l y_l for every l and the variable identification
// alpha_l <-> x_l^{-1}, abar_l <-> y_l^{-1}, q <-> p^{-1} is the identity
// map on representations.  The identification is an anti-isomorphism on
// products; theta_reverses_order() records the order-reversal flag that
// product comparisons across the map must consult.
Scalar p_scalar(const RingPtr& ring);
Scalar x_scalar(const RingPtr& ring, int l);
Scalar y_scalar(const RingPtr& ring, int l);
constexpr bool theta_reverses_order() { return true; }

// [s] = 1 + q + ... + q^{s-1} and [r]! = [1][2]...[r].
Scalar q_bracket(const RingPtr& ring, int s);
Scalar q_factorial(const RingPtr& ring, int r);

// Symmetrization with the K-side kernel k(z), assembled by the direct
// per-permutation rational sum.  Cross-module identity: equals psi with
// the k kernel computed through the division form.
ZPoly nu(const ZPoly& payload);

// Pullback class of the origin of the commuting variety:
//   prod_{i,j=1}^r kappa(z_i/z_j),  kappa(z) = prod_l (1-x_l z)(1-y_l z),
// expanded as a symmetric Laurent polynomial of rank r.  The i = j factors
// contribute the constant prod_l (1-x_l)^r (1-y_l)^r.
ZPoly skyscraper_class(const RingPtr& ring, int r);

// Rescales a rank-n payload by q^{ng} / #Pic^0(X)^n.  Together with the
// variable identification this realizes the Langlands-type map on
// payloads; in degree one, z^d * skyscraper_class(1) lands on z^d.
ZPoly theta_normalize(const ZPoly& payload);

// Both sides of the trivial-class symmetrization identity: psi with the
// zeta-tilde kernel applied to
//   z^{2 rho} prod_{i<j} prod_l (1 - x_l^{-1} z_j/z_i)(1 - y_l^{-1} z_j/z_i)
// against the closed forms
//   rhs_plain = (-1)^{r(r-1)/2} [r]! prod_{i != j} prod_l
//               (1 - x_l^{-1} z_i/z_j)(1 - y_l^{-1} z_i/z_j)
//   rhs_kappa = (-1)^{r(r-1)/2} [r]! q^{g r(r-1)/2} prod_{i != j} kappa(z_i/z_j).
// The two closed forms differ by the q-power relating the x^{-1}-form and
// kappa-form pair products; the report carries both verdicts.
struct Triv1Report {
  ZPoly lhs;
  ZPoly rhs_plain;
  ZPoly rhs_kappa;
  bool plain_holds = false;
  bool kappa_holds = false;
};
Triv1Report verify_triv1(const RingPtr& ring, int r);

// Image of the rank-r trivial class under the normalized map, as a scalar
// prefactor times the symmetrization of an explicit induction argument
//   argument = z^{-2 rho} prod_{i<j} prod_l (1 - alpha_l z_i/z_j)
//                                           (1 - abar_l z_i/z_j)
// (twisted variant; the plain variant carries z^{-2 g rho}).  The induced
// product behind the twisted argument lives in the order-reversed algebra,
// so its symmetrization uses the reversed kernel (zeta-tilde of 1/z); the
// plain argument pairs with the untwisted curve kernel.  The derived
// prefactor comes from the verified trivial-class identity chain:
//   (-1)^{r(r-1)/2} q^{-g r(r-1)} / [r]!
// and is emitted next to the closed-form prefactor with q-exponent
// -g r(r+1)/2 so downstream consumers can compare the two; `image` is the
// independently computed normalized skyscraper payload.
struct SkyscraperImage {
  Scalar prefactor_derived;
  Scalar prefactor_printed;
  ZPoly argument;
  ZPoly image;
};
SkyscraperImage theta_skyscraper(const RingPtr& ring, int r, bool twisted);

}  // namespace curvehall
