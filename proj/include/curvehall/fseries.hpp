#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "curvehall/curve.hpp"
#include "curvehall/laurent.hpp"
#include "curvehall/shuffle.hpp"

namespace curvehall {

/// One reciprocal factor 1/(1 - c z_a/z_b), variables 0-based, a != b.
struct RatioFactor {
  int a = 0, b = 0;
  Scalar c;
};

/// Element of the constant-term shuffle algebra: a Laurent polynomial
/// numerator over a multiset of ratio factors, read as its own expansion
/// in the small ratios z_1/z_2, ..., z_{r-1}/z_r.
///
/// Factors with a < b expand directly as geometric series; factors with
/// a > b are expanded through 1/(1 - c w) = -(c w)^{-1}/(1 - (c w)^{-1}),
/// which lands back in the small-ratio cone.  Equality is equality of
/// rational functions, decided by cross-multiplication; two elements with
/// equal expansions in every window are equal in exactly that sense.
class FSeriesElement {
 public:
  FSeriesElement() = default;
  FSeriesElement(ZPoly num, std::vector<RatioFactor> den = {});

  static FSeriesElement monomial(RingPtr ring, const std::vector<int>& d);
  static FSeriesElement one(RingPtr ring);

  const RingPtr& ring() const { return num_.ring(); }
  int rank() const { return num_.rank(); }
  const ZPoly& num() const { return num_; }
  const std::vector<RatioFactor>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  // Denominator as a cleared Laurent polynomial, prod (1 - c z_a/z_b).
  ZPoly den_cleared() const;

  FSeriesElement operator+(const FSeriesElement& o) const;
  FSeriesElement operator-(const FSeriesElement& o) const;
  FSeriesElement operator*(const Scalar& c) const;
  // Pointwise product in the same variables (not the shuffle product).
  FSeriesElement operator*(const FSeriesElement& o) const;

  bool operator==(const FSeriesElement& o) const;
  bool operator!=(const FSeriesElement& o) const { return !(*this == o); }

  std::string to_string() const;

 private:
  ZPoly num_;
  std::vector<RatioFactor> den_;
};

// Shuffle product of the series model: sum over minimal coset
// representatives w of S_{r+s}/(S_r x S_s) of the relabeled pointwise
// product, weighted by kernel factors h(z_i/z_j) over the inversion pairs
// of w (i a second-block value, j a first-block value, i < j).  Numerator
// factors of h are cleared into the numerator, denominator factors join
// the factor multiset.  Practical rank bound r + s <= 6.
FSeriesElement fshuffle_mul(const FactoredKernel& h, const FSeriesElement& a,
                            const FSeriesElement& b);

// Left-to-right fshuffle_mul of rank-one monomials x^{d_1}, ..., x^{d_r};
// the constant-term image of a product of rank-one elements.
FSeriesElement fshuffle_monomials(const FactoredKernel& h, RingPtr ring,
                                  const std::vector<int>& d);

// Embeds the symmetric shuffle model into the series model by dividing the
// payload by prod_{i<j} g(z_i/z_j).  Algebra map onto its image when the
// series product uses h(z) = g(z^{-1})/g(z).
FSeriesElement series_embed(const ShuffleElement& a, const Kernel& g);

// Exact expansion window: all coefficients of z^e with lo <= e <= hi
// coordinatewise, returned as a Laurent polynomial.  The expansion cone
// only ever raises proper prefix sums of e, which bounds the search.
ZPoly expand_window(const FSeriesElement& f, const std::vector<int>& lo,
                    const std::vector<int>& hi);

// Monomial coproduct of an expanded window: splits each z^e after
// position s into a left exponent in s variables and a right exponent in
// rank - s variables.
using SplitKey = std::pair<std::vector<int>, std::vector<int>>;
std::map<SplitKey, Scalar> split_after(const ZPoly& table, int s);

}  // namespace curvehall
