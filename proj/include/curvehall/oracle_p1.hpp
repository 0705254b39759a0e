#pragma once

#include <gmpxx.h>

#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "curvehall/ring.hpp"

// Ground truth for the genus zero engine: the Hall algebra of coherent
// sheaves on the projective line over a small prime field, computed by
// direct enumeration over F_q.  Subsheaf counts come from looping over
// pairs of binary forms, extension classes from looping over explicit
// gluing cocycles.  Nothing here touches the symbolic ring beyond the
// evaluation bridge below, so agreement between the two sides of any
// comparison is a genuine two-route check.

namespace curvehall::oracle {

/// Exact element a + b w of Q(w), w = 1/sqrt(q), for a fixed prime q.
/// The prime rides along so products can fold w^2 = 1/q back into the
/// rational part; a scalar with no irrational part normalizes to q = 0
/// and combines with any prime.
class QScalar {
 public:
  QScalar() = default;
  QScalar(long q, const mpq_class& rat, const mpq_class& irr);

  static QScalar rational(const mpq_class& r);
  // w^k, the oracle value of the symbolic v^k.
  static QScalar v_pow(long q, long k);

  long prime() const { return q_; }
  const mpq_class& rat() const { return rat_; }
  const mpq_class& irr() const { return irr_; }
  bool is_zero() const { return rat_ == 0 && irr_ == 0; }

  QScalar operator-() const;
  QScalar& operator+=(const QScalar& o);
  QScalar& operator-=(const QScalar& o);
  QScalar& operator*=(const QScalar& o);
  QScalar& operator/=(const QScalar& o);

  bool operator==(const QScalar& o) const;
  bool operator!=(const QScalar& o) const { return !(*this == o); }

  std::string str() const;

 private:
  void reduce();

  long q_ = 0;
  mpq_class rat_ = 0;
  mpq_class irr_ = 0;
};

QScalar operator+(QScalar a, const QScalar& b);
QScalar operator-(QScalar a, const QScalar& b);
QScalar operator*(QScalar a, const QScalar& b);
QScalar operator/(QScalar a, const QScalar& b);
std::ostream& operator<<(std::ostream& os, const QScalar& s);

// Value of a genus zero symbolic scalar at v = 1/sqrt(q).  Every exponent
// of the numerator and denominator must involve v alone.
QScalar eval_at_prime(const Scalar& s, long q);

/// Isomorphism class of the sheaves the oracle enumerates: a direct sum of
/// line bundle twists in descending order plus at most one length-one
/// skyscraper.  The q + 1 rational points are indexed 0..q, the affine
/// points t = 0..q-1 first and infinity last.
struct SheafClass {
  std::vector<int> bun;
  int tor = -1;

  int rank() const { return static_cast<int>(bun.size()); }
  int degree() const;

  bool operator<(const SheafClass& o) const {
    return std::tie(bun, tor) < std::tie(o.bun, o.tor);
  }
  bool operator==(const SheafClass& o) const {
    return bun == o.bun && tor == o.tor;
  }
  bool operator!=(const SheafClass& o) const { return !(*this == o); }

  std::string str() const;
};

std::ostream& operator<<(std::ostream& os, const SheafClass& v);

SheafClass line_class(int d);
SheafClass bundle_class(int b1, int b2);
SheafClass skyscraper(int point);

// Finitely supported class functions; absent classes are zero.
using HallFn = std::map<SheafClass, QScalar>;

HallFn unit_class(const SheafClass& v);
// The sum of the q + 1 skyscraper classes, one per rational point: the
// degree one generator of the classical Hecke algebra.
HallFn torsion_sum(long q);
// Pointwise difference with zero entries dropped.
HallFn subtract(const HallFn& f, const HallFn& g);

long hom_dim(int a, int b);   // dim Hom(O(a), O(b))
long ext1_dim(int a, int b);  // dim Ext^1(O(a), O(b))

// #Aut of the class as an exact integer, for the shapes SheafClass holds.
mpz_class aut_order(long q, const SheafClass& v);

// Pairs (P, Q) of binary forms of degrees (m, n) over F_q with no common
// projective zero in the algebraic closure, counted literally and divided
// by the q - 1 global scalings.  A negative degree stands for the zero
// map and forces the other form to be a nonzero constant.
mpz_class coprime_form_pairs(long q, int m, int n);

// Subsheaves of V isomorphic to O(e) with quotient isomorphic to quot,
// counted by enumerating the embedding data.
mpz_class count_subsheaves(long q, const SheafClass& v, int e,
                           const SheafClass& quot);

// Middle classes of the q^{dim Ext^1} extension classes of O(e1) by
// O(e2), classified with multiplicity by enumerating Cech gluing
// cocycles.  Memoized; not thread safe.
const std::map<SheafClass, mpz_class>& extension_census(long q, int e1,
                                                        int e2);

// (f * g)(R) = sum over subsheaves N of R of v^{-<R/N, N>} f(R/N) g(N).
// Supported factor shapes: line times line and the mixed products of
// lines with length-one skyscrapers; anything else throws.
HallFn hall_product(long q, const HallFn& f, const HallFn& g);

// Green pairing sum_V f(V) g(V) / #Aut(V).  The twist components of the
// extended algebra pair to v^{-2(1-g) r s} = 1 at genus zero, so they
// never appear.
QScalar green_pairing(long q, const HallFn& f, const HallFn& g);

// Rank (1,1) coproduct cell: v^{<(1,e1),(1,e2)>} / #Ext^1(O(e1), O(e2))
// times sum_xi u(X_xi), the extension-averaged restriction of u to the
// pair (quotient O(e1), subsheaf O(e2)).
QScalar constant_term(long q, const HallFn& u, int e1, int e2);

}  // namespace curvehall::oracle
