#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "curvehall/ring.hpp"

namespace curvehall {

// Exponent vector in the z variables z_1..z_r.
constexpr int kMaxVars = 8;
using ZExp = std::array<int16_t, kMaxVars>;

inline ZExp zero_zexp() {
  ZExp e{};
  e.fill(0);
  return e;
}

inline int zexp_total(const ZExp& e) {
  int s = 0;
  for (int16_t x : e) s += x;
  return s;
}

struct ZExpGradedLess {
  bool operator()(const ZExp& a, const ZExp& b) const {
    int sa = zexp_total(a), sb = zexp_total(b);
    if (sa != sb) return sa < sb;
    return a < b;
  }
};

/// Laurent polynomial in z_1..z_rank with Scalar coefficients.
///
/// The generic engine: exact, order-agnostic, used as the reference
/// implementation and for every computation whose coefficients are honest
/// fractions rather than monomial-times-integer combinations.
class ZPoly {
 public:
  ZPoly() = default;
  ZPoly(RingPtr ring, int rank);

  static ZPoly monomial(RingPtr ring, int rank, const ZExp& e,
                        const Scalar& c);
  static ZPoly var(RingPtr ring, int rank, int i, int power = 1);
  static ZPoly constant(RingPtr ring, int rank, const Scalar& c);

  const RingPtr& ring() const { return ring_; }
  int rank() const { return rank_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  const std::map<ZExp, Scalar, ZExpGradedLess>& terms() const { return terms_; }

  void add_term(const ZExp& e, const Scalar& c);
  Scalar coeff(const ZExp& e) const;

  ZPoly operator+(const ZPoly& o) const;
  ZPoly operator-(const ZPoly& o) const;
  ZPoly operator*(const ZPoly& o) const;
  ZPoly operator-() const;
  ZPoly operator*(const Scalar& c) const;
  ZPoly& operator+=(const ZPoly& o) { return *this = *this + o; }
  ZPoly& operator-=(const ZPoly& o) { return *this = *this - o; }
  ZPoly& operator*=(const ZPoly& o) { return *this = *this * o; }

  bool operator==(const ZPoly& o) const;
  bool operator!=(const ZPoly& o) const { return !(*this == o); }

  // Applies a permutation of the variables: z_i -> z_{perm[i]} (0-based).
  ZPoly permuted(const std::vector<int>& perm) const;
  // Multiplies every exponent vector by the shift.
  ZPoly shifted(const ZExp& shift) const;
  // Reinterprets in a larger variable set, offsetting variables by `offset`.
  ZPoly embedded(int new_rank, int offset) const;
  // Substitutes z_i -> c_i * z^{images[i]} per variable.
  ZPoly substituted(int new_rank, const std::vector<Scalar>& coeffs,
                    const std::vector<ZExp>& images) const;

  bool is_symmetric() const;

  std::string to_string() const;

 private:
  RingPtr ring_;
  int rank_ = 0;
  std::map<ZExp, Scalar, ZExpGradedLess> terms_;
};

// All permutations of {0..n-1} in lexicographic order.
std::vector<std::vector<int>> all_permutations(int n);
int permutation_sign(const std::vector<int>& perm);
int inversion_count(const std::vector<int>& perm);

// Sum of sign(sigma) * sigma(p) over the full symmetric group.  Serial
// reference implementation; the packed engine has an equivalent parallel
// one and the two are compared in tests.
ZPoly antisymmetrize(const ZPoly& p);

// Sum of sigma(p) over the full symmetric group.
ZPoly symmetrize(const ZPoly& p);

// prod_{i<j} (z_i - z_j).
ZPoly vandermonde(RingPtr ring, int rank);

// Exact division.  Throws DivisionError carrying a remainder witness when
// `den` does not divide `num`; the witness is a nonzero term of the final
// remainder.  Division happens in the ordinary polynomial ring after a
// monomial shift, where graded-lex leads certify divisibility.
struct DivisionError : std::runtime_error {
  explicit DivisionError(const std::string& what) : std::runtime_error(what) {}
};
ZPoly divide_exact(const ZPoly& num, const ZPoly& den);

}  // namespace curvehall
