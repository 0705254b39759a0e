#pragma once

#include <gmpxx.h>

#include <optional>
#include <vector>

#include "curvehall/fseries.hpp"

namespace curvehall {

// Numerical class (rank, degree) of a coherent sheaf.  Rank 0 with d >= 1
// is torsion and has infinite slope.
struct NumClass {
  int r = 0, d = 0;

  bool operator==(const NumClass& o) const { return r == o.r && d == o.d; }
  bool operator!=(const NumClass& o) const { return !(*this == o); }
};

// <F,G> = (1-g) r_F r_G + (r_F d_G - r_G d_F).
long euler_form(int genus, NumClass f, NumClass g);

// mu(a) < mu(b) with mu = d/r, exact; rank 0 counts as +infinity.
bool slope_less(NumClass a, NumClass b);

/// Harder-Narasimhan type: entries with strictly increasing slopes.  The
/// enumeration below keeps every entry of rank >= 1; a torsion entry would
/// have infinite slope and so could only sit last, and the filtrations of
/// interest here stop at finite slope.
using HNType = std::vector<NumClass>;

NumClass hn_weight(const HNType& t);
// sum_{i<j} <t_i, t_j>, the weight of a type in the bundle-count identity.
long hn_exponent(int genus, const HNType& t);

// All HN types of weight (r,d) whose entry slopes lie in [mu_lo, mu_hi].
// Deterministic order: descending lexicographic comparison of the slope
// sequences, then fewer entries first, then descending entry ranks.  The
// one-entry type [(r,d)] is included when its slope fits.
std::vector<HNType> hn_types(int r, int d, const mpq_class& mu_lo,
                             const mpq_class& mu_hi);

// Constant term of the full rank-r degree-d bundle class on the box
// lo <= e_i <= hi:
//   v^{r(r-1)(1-g)/2} sum_{e_1+...+e_r = d} v^{sum_i (2i-1-r) e_i} z^e.
ZPoly onevec_table(RingPtr ring, int r, int d, int lo, int hi);

// Constant-term table of the product 1^ss_{t_1} ... 1^ss_{t_s} on the box,
// via the series shuffle with the constant-term kernel.  Exact: the kernel
// expansion only ever raises later-block exponents and lowers earlier-block
// ones, so inner rank-2 factors are needed on the derived windows
// [d_i - hi, hi] (late block) or [lo, d_i - lo] (early block) only.
ZPoly stratum_table(RingPtr ring, const HNType& t, int lo, int hi);

// Constant-term table of the semistable class 1^ss_{r,d} on the box,
// obtained by subtracting every proper stratum from the full bundle class.
// Strata with an entry slope outside [lo, hi] cannot reach the box (first
// slopes only descend, last only ascend), so the subtraction is finite and
// exact for any box.  Rank is capped at 3: from rank 4 on, types place a
// rank >= 2 block between others, and a middle block shifts both ways, so
// no finite inner window closes the recursion.
ZPoly semistable_table(RingPtr ring, int r, int d, int lo, int hi);

// Table of the slope-truncated bundle class 1^Z_{2,d} for Z = all HN types
// of weight (2,d) with maximal slope <= max_slope.
ZPoly onez_table(RingPtr ring, int d, const mpq_class& max_slope, int lo,
                 int hi);

// Minimum adic degree over all coefficients of the table, with the grading
// deg v = 1, deg a_l = -1; nullopt for the zero table.
std::optional<int> adic_degree(const ZPoly& table);

// Multiplies a rank-2 constant-term table, exact on [lo,hi]^2, by the
// symmetrization-weight factor of the twisted shuffle algebra at the pair
// (z_1, z_2):
//   (1 - q z_1/z_2) prod_l (1 - a_l z_2/z_1)(1 - abar_l z_2/z_1)
//     * (-sum_{k>=1} (z_1/z_2)^k),
// the reciprocal factor expanded against the table's cone.  The result is
// exact on columns e_1 in [lo, hi - 2g] provided the table's true support
// starts above lo; the caller certifies both edges.
ZPoly upsilon_rank2(const ZPoly& table, int lo, int hi);

/// One row of the slope-truncation convergence report.
struct ConvergenceRow {
  mpq_class max_slope;
  int num_types = 0;
  // Adic degree of the transported truncation; nullopt when it vanishes.
  std::optional<int> adic;
};

// Transports the slope truncations 1^Z_{2,d}, Z = {types with max slope
// <= M}, to the commuting-variety side (constant term, symmetrization
// weight, inverse of the rank-2 skyscraper normalization) and reports the
// adic degree for each bound M.  The working box is grown until the
// support of every transported element sits strictly inside the certified
// region, so the reported degrees are degrees of the exact elements.
std::vector<ConvergenceRow> buntriv_convergence(
    RingPtr ring, int d, const std::vector<mpq_class>& bounds);

}  // namespace curvehall
