#pragma once

#include <optional>
#include <string>
#include <vector>

#include "curvehall/curve.hpp"
#include "curvehall/flatpoly.hpp"
#include "curvehall/laurent.hpp"

namespace curvehall {

// Clears the kernel factor at z = x_i/x_j against (x_i - x_j): returns the
// Laurent polynomial K(x_i/x_j) * (x_i - x_j) in rank `rank`.
ZPoly kernel_pair_cleared(const Kernel& k, int rank, int i, int j);

// Symmetrization sum_sigma sigma(payload * prod_{i<j} K(x_i/x_j)).
//
// Three routes with one answer: the packed engine (antisymmetrize then
// divide by the Vandermonde determinant, optionally OpenMP parallel), a
// generic serial reference of the same algorithm, and a direct
// rational-function sum that builds each permutation term separately and
// clears denominators at the end.
ZPoly psi(const ZPoly& payload, const Kernel& k, bool parallel = true);
ZPoly psi_reference(const ZPoly& payload, const Kernel& k);
ZPoly psi_direct(const ZPoly& payload, const Kernel& k);

/// Element of the symmetric-function model: a symmetric Laurent polynomial
/// payload of a fixed rank.  Elements remember a preimage under the
/// symmetrization operator when one is known; products prefer the
/// commuting-square route through preimages and fall back to the direct
/// shuffle sum.
class ShuffleElement {
 public:
  ShuffleElement() = default;
  ShuffleElement(ZPoly payload, std::optional<ZPoly> preimage = std::nullopt);

  // psi applied to a monomial payload z^d.
  static ShuffleElement generator(const Kernel& k, const std::vector<int>& d,
                                  bool parallel = true);

  const ZPoly& payload() const { return payload_; }
  int rank() const { return payload_.rank(); }
  const std::optional<ZPoly>& preimage() const { return preimage_; }

  bool operator==(const ShuffleElement& o) const {
    return payload_ == o.payload_;
  }

 private:
  ZPoly payload_;
  std::optional<ZPoly> preimage_;
};

// Minimal representatives of S_{r+s} / (S_r x S_s): permutations increasing
// on both blocks.  perm[i] is the output slot of input i.
std::vector<std::vector<int>> block_shuffles(int r, int s);

// Product in the kernel-K shuffle algebra.
ShuffleElement shuffle_mul(const Kernel& k, const ShuffleElement& a,
                           const ShuffleElement& b, bool parallel = true);
// Direct sum over minimal (rank_a, rank_b) shuffles; independent of the
// commuting-square route.
ZPoly shuffle_mul_direct(const Kernel& k, const ZPoly& a, const ZPoly& b);

// Action of the degree-d average of Hecke modifications on the bundle
// half: multiplies the payload (and preimage, when present) by the scalar
// c_d times the power sum z_1^d + ... + z_r^d.
ShuffleElement hecke_mul(const ShuffleElement& a, int d);

// Wheel locus test: substitutes x_1 = q t, x_2 = w t, x_3 = t with w one
// of the 2g Weil symbols, leaving x_4.. free.  Rank must be at least 3.
// Returns the substituted polynomial; membership in the wheel ideal means
// every choice vanishes.
ZPoly wheel_substitute(const ZPoly& p, int weil_index);
bool wheel_check(const ZPoly& p);

// Determinant of the change-of-basis matrix between the signed monomial
// symmetrizations sigma -> (-1)^l(sigma) sigma(x^I), I ranging over the
// staircase box 0 <= n_i <= r - i, and the Vandermonde-divided basis.
// The result is +-Delta^(-r!/2); returns the sign and exponent along with
// a display string such as "Delta^-1".
struct BasisDet {
  int sign = 1;
  int delta_power = 0;
  std::string display;
};
BasisDet basis_determinant(RingPtr ring, int r);

}  // namespace curvehall
