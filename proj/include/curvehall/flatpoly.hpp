#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "curvehall/laurent.hpp"
#include "curvehall/ring.hpp"

namespace curvehall {

// Packed monomial key: 16 biased bytes, z variables first (most
// significant), ground symbols after.  Pure lexicographic order; shifting
// every key by a fixed monomial preserves it, which is what makes merge
// based multiplication and synthetic division linear passes.
struct FKey {
  uint64_t hi = 0, lo = 0;

  bool operator<(const FKey& o) const {
    return hi != o.hi ? hi < o.hi : lo < o.lo;
  }
  bool operator==(const FKey& o) const { return hi == o.hi && lo == o.lo; }

  int byte(int i) const {
    uint64_t w = i < 8 ? hi : lo;
    int k = i & 7;
    return static_cast<int>((w >> (8 * (7 - k))) & 0xff);
  }
  void set_byte(int i, int value) {
    uint64_t m = ~(uint64_t{0xff} << (8 * (7 - (i & 7))));
    uint64_t v = static_cast<uint64_t>(value & 0xff) << (8 * (7 - (i & 7)));
    if (i < 8)
      hi = (hi & m) | v;
    else
      lo = (lo & m) | v;
  }
};

constexpr int kBias = 128;
constexpr int kFlatBytes = 16;

/// Laurent polynomial over combined (z variables + ground symbols) packed
/// exponents with integer coefficients, stored as a sorted term vector.
///
/// This is the throughput engine behind the symmetrization kernels.  It
/// requires every scalar entering it to be an integer multiple of a single
/// monomial; general fractions stay in the generic ZPoly engine.
class FlatPoly {
 public:
  FlatPoly() = default;
  FlatPoly(RingPtr ring, int rank);

  const RingPtr& ring() const { return ring_; }
  int rank() const { return rank_; }
  int width() const { return rank_ + (ring_ ? ring_->nsym() : 0); }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::vector<std::pair<FKey, mpz_class>>& terms() const { return terms_; }

  // Requires strictly ascending keys.
  void set_terms(std::vector<std::pair<FKey, mpz_class>> terms);

  FlatPoly operator+(const FlatPoly& o) const;
  FlatPoly operator-(const FlatPoly& o) const;
  bool operator==(const FlatPoly& o) const;

  // Multiplies by c * x^shift where shift covers all width() positions.
  FlatPoly shifted(const std::vector<int>& shift, const mpz_class& c = 1) const;
  // Multiplies by (x_i - c x_j) with c a monomial scalar (integer
  // coefficient times a symbol monomial).
  FlatPoly mul_binomial(int i, int j, const Scalar& c) const;

  std::vector<int> decode(const FKey& k) const;
  FKey encode(const std::vector<int>& exps) const;

 private:
  RingPtr ring_;
  int rank_ = 0;
  std::vector<std::pair<FKey, mpz_class>> terms_;
};

// Conversion to the packed engine.  Every coefficient must be an integer
// or rational multiple of a single symbol monomial; `denom` returns the
// common positive integer denominator so that zpoly = flat / denom.
FlatPoly flatten(const ZPoly& p, mpz_class& denom);
ZPoly unflatten(const FlatPoly& f, const mpz_class& denom);

// Signed sum over all permutations of the z variables.  The parallel
// variant partitions the permutation list across threads and merges the
// per-permutation results in a fixed order; outputs are identical to the
// serial one, byte for byte.
FlatPoly antisymmetrize_packed(const FlatPoly& p, bool parallel);

// Exact division by prod_{i<j} (x_i - x_j) via per-pair synthetic
// division; throws DivisionError with a witness term if any step leaves a
// remainder.
FlatPoly divide_vandermonde(const FlatPoly& p);

// (f - f|swap(i,i+1)) / (x_i - x_{i+1}).  The parallel variant splits the
// per-group synthetic divisions across threads; output is byte-identical
// to the serial one.
FlatPoly divided_difference(const FlatPoly& f, int i, bool parallel = false);

// antisymmetrize_packed(f) / vandermonde, computed as a chain of divided
// differences along a staircase reduced word of the longest permutation.
// Peak memory stays near the input size instead of the r!-fold blowup of
// materializing the full signed orbit.
FlatPoly antisym_quotient(const FlatPoly& f, bool parallel);

// Per-pair kernel division data for the symmetrization operator: the
// product over pairs i<j of
//   c * x_i^p x_j^q * prod_b (x_i - b x_j) / (x_i - x_j)
// equals the kernel evaluated at z = x_i/x_j.
struct PairKernel {
  std::vector<Scalar> betas;  // monomial scalars b
  int p = 0, q = 0;
  Scalar c;  // monomial scalar
};

// Symmetrization of payload * prod_{i<j} K(x_i/x_j) over S_rank, computed
// as antisym(monomial * binomials * payload) / vandermonde.  The payload
// need not be symmetric.
ZPoly psi_packed(const ZPoly& payload, const PairKernel& pk, bool parallel);

}  // namespace curvehall
