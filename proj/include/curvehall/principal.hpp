#pragma once

#include <map>
#include <string>
#include <vector>

#include "curvehall/curve.hpp"
#include "curvehall/laurent.hpp"
#include "curvehall/ring.hpp"

namespace curvehall {

/// Finite character set with the eigenvalue data of the twisted zetas.
///
/// A finite abelian group in invariant-factor form stands in for the
/// degree-zero Picard group; its characters are indexed by mixed-radix
/// tuples over the invariants, with index 0 the trivial character.  Every
/// character chi carries 2g eigenvalue scalars beta_1..beta_2g and a half
/// power of gamma_chi = q^-1 prod_i beta_i.  The trivial character is
/// linked to the curve: its eigenvalues are a_1, abar_1, .., a_g, abar_g,
/// so gamma_1 = q^(g-1).  Conjugate characters share parameters through
/// the involution beta -> q/beta; a self-conjugate character gets a list
/// stable under it, and one representative per remaining conjugate pair
/// receives fresh symbols.
///
/// With `link_polynomial` (the default) the eigenvalue list of every
/// nontrivial character ends in {1, q}, the specialization under which the
/// twisted zeta collapses to a polynomial of degree 2g-2.  Without the
/// link the list is fully free; the twisted zeta keeps its denominator and
/// mixed-character symmetrizations acquire genuine poles (see
/// principal_psi).
class CharacterData {
 public:
  static CharacterData make(int genus, std::vector<int> invariants,
                            bool link_polynomial = true);

  const RingPtr& ring() const { return ring_; }
  int genus() const { return ring_->genus(); }
  bool linked() const { return linked_; }
  // Number of characters.
  int size() const { return static_cast<int>(beta_.size()); }
  bool is_trivial(int chi) const { return chi == 0; }
  // Inverse character.
  int conj(int chi) const;
  // Product character.
  int compose(int chi, int rho) const;
  // "1" for the trivial character, otherwise the digit tuple "chi(..)".
  std::string label(int chi) const;

  // Eigenvalue list, 2g entries.
  const std::vector<Scalar>& beta(int chi) const;
  // gamma_chi = q^-1 prod_i beta_i^chi.
  Scalar gamma(int chi) const;
  // The stored half power; its square is gamma(chi), and the half powers
  // of a conjugate pair multiply to q^(g-1).
  Scalar gamma_sqrt(int chi) const;

 private:
  CharacterData() = default;
  void check(int chi) const;

  RingPtr ring_;
  std::vector<int> invariants_;
  bool linked_ = true;
  std::vector<std::vector<Scalar>> beta_;
  std::vector<Scalar> gamma_sqrt_;
};

// zeta^chi(z) = prod_i (1 - beta_i^chi z) / ((1 - z)(1 - q z)).  The
// trivial character reproduces zeta_function on the same ring.
FactoredKernel zeta_chi(const CharacterData& data, int chi);

// Functional equation of the twisted zeta, as an exact identity of
// rational functions in the free eigenvalues:
//   zeta^chi(q^-1 z) = gamma_{chibar}^-1 z^(2g-2) zeta^{chibar}(z^-1).
// The constant is the conjugate character's gamma; the two are tied by
// gamma_chi gamma_chibar = q^(2g-2), so for self-conjugate characters
// (gamma = q^(g-1)) either one may be read on the right.
bool zeta_chi_functional_equation(const CharacterData& data, int chi);

// The character-twisted symmetrization kernel
//   g^chi(z) = gamma_chi^(-1/2) z^(g-1) (1 - q z)
//              prod_i (1 - beta_i^chi z^-1) / (1 - z^-1),
// the cancelled form of (1 - q z^-1)(1 - q z) z^(g-1) gamma_chi^(-1/2)
// zeta^chi(z^-1).  The trivial character yields v^(g-1) g_X.
Kernel kernel_g_chi(const CharacterData& data, int chi);

// xi^chi(s) = zeta^chi(s) / zeta^chi(q^-1 s) to `terms` coefficients; the
// constant term is 1 and the trivial character reproduces xi_series.
// These are the eigenvalues of the twisted theta elements acting on
// rank-one characteristic functions by Hecke modification.
PowerSeries xi_chi_series(const CharacterData& data, int chi, int terms);

// Green pairing of two degree-matched rank-one characteristic functions:
// #Pic^0/(q-1) when the characters agree, zero otherwise.
Scalar principal_pairing(const CharacterData& data, int chi, int rho);

/// Element of the character-graded symmetric model: one Laurent payload
/// per character tuple of the common rank, finitely many nonzero.  Images
/// of principal_psi are invariant under simultaneous permutation of the
/// tuple and the variables; principal_mul assumes that invariance of its
/// inputs.
class PrincipalElement {
 public:
  PrincipalElement() = default;
  PrincipalElement(RingPtr ring, int rank);
  // delta_chi x^d, the rank-one generator.
  static PrincipalElement generator(const CharacterData& data, int chi,
                                    int d);

  const RingPtr& ring() const { return ring_; }
  int rank() const { return rank_; }
  const std::map<std::vector<int>, ZPoly>& components() const {
    return comp_;
  }
  // Zero when the tuple carries no payload.
  ZPoly component(const std::vector<int>& chis) const;
  // Adds into one component, dropping it if the sum vanishes.
  void add(const std::vector<int>& chis, const ZPoly& p);
  bool is_zero() const { return comp_.empty(); }

  bool operator==(const PrincipalElement& o) const {
    return rank_ == o.rank_ && comp_ == o.comp_;
  }
  bool operator!=(const PrincipalElement& o) const { return !(*this == o); }

 private:
  RingPtr ring_;
  int rank_ = 0;
  std::map<std::vector<int>, ZPoly> comp_;
};

// Weighted symmetrization of the monomial delta_chis x^degs: the sum over
// permutations sigma of sigma(x^degs prod_{i<j} K_ij(x_i/x_j)) collected
// by the permuted character tuple, where K_ij is the twisted kernel of
// the character chi_i conj(chi_j).  Rank at most 3.  Poles of equal-slot
// pairs cancel inside each component; mixed pairs are pole-free exactly
// under the {1, q} link, and without it the exact division throws
// DivisionError.
PrincipalElement principal_psi(const CharacterData& data,
                               const std::vector<int>& chis,
                               const std::vector<int>& degs);

// Shuffle product over minimal block shuffles with cross-pair twisted
// kernels; realizes the square m(psi_r f, psi_s h) = psi_{r+s}(f (x) h)
// without reference to preimages.
PrincipalElement principal_mul(const CharacterData& data,
                               const PrincipalElement& a,
                               const PrincipalElement& b);

}  // namespace curvehall
