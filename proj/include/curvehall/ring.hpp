#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace curvehall {

// Exponent vector of a monomial in the ground symbols.  Entry 0 is always
// the exponent of v; a curve of genus g uses entries 1..g for a_1..a_g.
// Extra symbols (character eigenvalues, square roots) sit above those.
constexpr int kMaxSymbols = 12;
using Exp = std::array<int16_t, kMaxSymbols>;

inline Exp zero_exp() {
  Exp e{};
  e.fill(0);
  return e;
}

inline int exp_total(const Exp& e) {
  int s = 0;
  for (int16_t x : e) s += x;
  return s;
}

// Graded-lexicographic order: compare total exponent sum first, then the
// exponent vectors lexicographically.  This is the canonical monomial
// order used for serialization throughout.
struct ExpGradedLess {
  bool operator()(const Exp& a, const Exp& b) const {
    int sa = exp_total(a), sb = exp_total(b);
    if (sa != sb) return sa < sb;
    return a < b;
  }
};

// A formal square root s with s^2 = (the monomial `square`).  Powers of s
// are reduced to exponent 0 or 1, moving pairs into `square`.
struct SqrtRule {
  int sym;
  Exp square;
};

/// Symbol table shared by every scalar of a computation.
///
/// The engine works over a single ground ring of Laurent monomials in v and
/// the Weil-type symbols a_1..a_g (one pair of eigenvalues per handle; the
/// conjugate abar_i = v^-2 a_i^-1 is derived, never stored).  Root-of-unity
/// free: coefficients are integers.
class Ring {
 public:
  static std::shared_ptr<const Ring> curve(int genus);
  // Character ring: v plus 2g eigenvalue symbols b_1..b_{2g} per nontrivial
  // character, plus one square-root symbol per character for the half power
  // of gamma = q^-1 * prod b_i.  Built by principal.hpp.
  static std::shared_ptr<const Ring> make(std::vector<std::string> names,
                                          std::vector<int> weights,
                                          std::vector<SqrtRule> roots,
                                          int genus);

  int nsym() const { return static_cast<int>(names_.size()); }
  int genus() const { return genus_; }
  const std::string& name(int i) const { return names_[i]; }
  // Adic weight of a symbol: deg v = 1, deg a_i = -1.
  int weight(int i) const { return weights_[i]; }
  const std::vector<SqrtRule>& roots() const { return roots_; }

  // Reduces square-root exponents to {0,1} in place.
  void normalize(Exp& e) const;

  int adic_degree(const Exp& e) const {
    int d = 0;
    for (int i = 0; i < nsym(); ++i) d += weights_[i] * e[i];
    return d;
  }

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<SqrtRule> roots_;
  int genus_ = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

// Laurent polynomial in the ground symbols with integer coefficients.
// Keys are kept normalized with respect to the ring's square-root rules.
using SymPoly = std::map<Exp, mpz_class, ExpGradedLess>;

SymPoly sym_add(const SymPoly& a, const SymPoly& b);
SymPoly sym_sub(const SymPoly& a, const SymPoly& b);
SymPoly sym_neg(const SymPoly& a);
SymPoly sym_mul(const Ring& ring, const SymPoly& a, const SymPoly& b);
SymPoly sym_mul_term(const Ring& ring, const SymPoly& a, const Exp& e,
                     const mpz_class& c);
// Integer content, nonnegative; 0 for the zero polynomial.
mpz_class sym_content(const SymPoly& a);
// Componentwise minimum of the exponent vectors (the largest monomial
// dividing every term).  Zero polynomial yields the zero exponent.
Exp sym_min_exp(const SymPoly& a);
// Exact division in the ordinary polynomial ring after shifting exponents
// to be nonnegative.  Returns false if the division leaves a remainder.
bool sym_divide(const Ring& ring, const SymPoly& num, const SymPoly& den,
                SymPoly& quot);
std::string sym_to_string(const Ring& ring, const SymPoly& a);

/// Fraction of two SymPoly values over a shared ring.
///
/// Normalization is lazy: integer content and common monomial factors are
/// stripped and an exact numerator/denominator division is attempted, but
/// no multivariate gcd is ever computed.  Equality is decided by
/// cross-multiplication, which is exact regardless of representation.
class Scalar {
 public:
  Scalar() = default;
  Scalar(RingPtr ring, long value);
  Scalar(RingPtr ring, const mpz_class& value);
  Scalar(RingPtr ring, const mpq_class& value);
  Scalar(RingPtr ring, SymPoly num, SymPoly den);

  static Scalar monomial(RingPtr ring, const Exp& e, const mpz_class& c = 1);
  // v^k
  static Scalar v_pow(RingPtr ring, int k);
  // q = v^-2
  static Scalar q_pow(RingPtr ring, int k);
  // a_i, 1-based
  static Scalar alpha(RingPtr ring, int i);
  // abar_i = v^-2 a_i^-1
  static Scalar alpha_bar(RingPtr ring, int i);

  const RingPtr& ring() const { return ring_; }
  const SymPoly& num() const { return num_; }
  const SymPoly& den() const { return den_; }

  bool is_zero() const { return num_.empty(); }
  bool is_one() const;

  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  Scalar inverse() const;
  Scalar pow(int k) const;

  bool operator==(const Scalar& o) const;
  bool operator!=(const Scalar& o) const { return !(*this == o); }

  // Minimum adic degree of the numerator minus that of the denominator.
  // The grading deg v = 1, deg a_i = -1 makes this the order of vanishing
  // at the adic origin; throws on zero.
  int adic_degree() const;

  // Substitutes rational values for every symbol; values[i] pairs with
  // symbol i.  Throws if a denominator vanishes.
  mpq_class eval(const std::vector<mpq_class>& values) const;

  std::string to_string() const;

 private:
  void normalize();

  RingPtr ring_;
  SymPoly num_, den_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Element a + b*v of the quadratic extension Q(v), v^2 = 1/q0.  Used by the
// finite-field oracle, whose structure constants live in Z[v, v^-1] with
// v^-2 = q0.  Exact: q0 in {2,3} is not a rational square.
struct QExt {
  mpq_class a, b;
  long q0 = 0;

  QExt() = default;
  QExt(mpq_class a0, mpq_class b0, long q) : a(std::move(a0)), b(std::move(b0)), q0(q) {}
  static QExt integer(long n, long q) { return QExt(mpq_class(n), 0, q); }

  QExt operator+(const QExt& o) const;
  QExt operator-(const QExt& o) const;
  QExt operator*(const QExt& o) const;
  QExt operator/(const QExt& o) const;
  QExt operator-() const;
  bool operator==(const QExt& o) const { return a == o.a && b == o.b; }
  bool operator!=(const QExt& o) const { return !(*this == o); }
  bool is_zero() const { return a == 0 && b == 0; }
  std::string to_string() const;
};

// Evaluates a Scalar in the quadratic extension: v specializes to the
// formal square root of 1/q0, and a_i to the supplied rationals (paired
// with symbols 1..g).  Requires a curve ring without square-root symbols.
QExt eval_qsqrt(const Scalar& s, long q0, const std::vector<mpq_class>& alpha);

// Deterministic specialization of the curve symbols for numeric probes:
// returns values for (v, a_1..a_g) as small rationals, none of them 0 or
// +-1 and pairwise distinct.  Same seed, same values, any platform.
std::vector<mpq_class> seeded_specialization(const Ring& ring, uint64_t seed);

}  // namespace curvehall
