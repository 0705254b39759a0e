#include <random>

#include "curvehall/theta.hpp"
#include "doctest.h"

using namespace curvehall;

TEST_CASE("K-side generators satisfy p = x_l y_l and invert the Weil symbols") {
  auto ring = Ring::curve(2);
  for (int l = 1; l <= 2; ++l) {
    CHECK(x_scalar(ring, l) * y_scalar(ring, l) == p_scalar(ring));
    CHECK(x_scalar(ring, l) * Scalar::alpha(ring, l) == Scalar(ring, 1));
    CHECK(y_scalar(ring, l) * Scalar::alpha_bar(ring, l) == Scalar(ring, 1));
  }
  CHECK(p_scalar(ring) * Scalar::q_pow(ring, 1) == Scalar(ring, 1));
}

TEST_CASE("q-brackets expand as geometric sums") {
  auto ring = Ring::curve(0);
  CHECK(q_bracket(ring, 1) == Scalar(ring, 1));
  CHECK(q_bracket(ring, 2) == Scalar(ring, 1) + Scalar::q_pow(ring, 1));
  // [3]! = (1+q)(1+q+q^2)
  Scalar expect = (Scalar(ring, 1) + Scalar::q_pow(ring, 1)) *
                  (Scalar(ring, 1) + Scalar::q_pow(ring, 1) +
                   Scalar::q_pow(ring, 2));
  CHECK(q_factorial(ring, 3) == expect);
}

TEST_CASE("skyscraper class expands the displayed rank-one factorization") {
  auto ring = Ring::curve(1);
  ZPoly sky = skyscraper_class(ring, 1);
  Scalar x1 = x_scalar(ring, 1), y1 = y_scalar(ring, 1);
  ZPoly expect = ZPoly::constant(
      ring, 1, (Scalar(ring, 1) - x1) * (Scalar(ring, 1) - y1));
  CHECK(sky == expect);

  // Genus zero has no Weil factors at all.
  auto ring0 = Ring::curve(0);
  CHECK(skyscraper_class(ring0, 2) ==
        ZPoly::constant(ring0, 2, Scalar(ring0, 1)));
}

TEST_CASE("rank-one skyscraper equals q^-g times the Picard-zero order") {
  for (int g = 1; g <= 2; ++g) {
    auto ring = Ring::curve(g);
    ZPoly sky = skyscraper_class(ring, 1);
    Scalar expect = Scalar::q_pow(ring, -g) * pic0_order(ring);
    CHECK(sky == ZPoly::constant(ring, 1, expect));
  }
}

TEST_CASE("nu agrees with the division-form symmetrization of the k kernel") {
  std::mt19937_64 gen(47);
  for (int g = 0; g <= 2; ++g) {
    auto ring = Ring::curve(g);
    Kernel k = k_kernel(ring);
    // n = 2 with payload 1, and n = 3 with payload z_1 (plus a random case).
    ZPoly one2 = ZPoly::constant(ring, 2, Scalar(ring, 1));
    CHECK(nu(one2) == psi(one2, k));
    ZPoly z1 = ZPoly::var(ring, 3, 0);
    CHECK(nu(z1) == psi(z1, k));
    std::uniform_int_distribution<int> d(-2, 2);
    ZExp e = zero_zexp();
    for (int i = 0; i < 3; ++i) e[i] = static_cast<int16_t>(d(gen));
    ZPoly m = ZPoly::monomial(ring, 3, e, Scalar::v_pow(ring, d(gen)));
    CHECK(nu(m) == psi(m, k));
  }
}

TEST_CASE("degree-one normalization sends twisted monomials to monomials") {
  for (int g = 0; g <= 2; ++g) {
    auto ring = Ring::curve(g);
    for (int d = -2; d <= 2; ++d) {
      ZExp e = zero_zexp();
      e[0] = static_cast<int16_t>(d);
      ZPoly in = skyscraper_class(ring, 1).shifted(e);
      ZPoly expect = ZPoly::monomial(ring, 1, e, Scalar(ring, 1));
      CHECK(theta_normalize(in) == expect);
    }
  }
}

TEST_CASE("trivial-class identity holds in the Weil form") {
  for (auto [r, g] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    auto ring = Ring::curve(g);
    Triv1Report rep = verify_triv1(ring, r);
    CHECK(rep.plain_holds);
    // The kappa form differs by a q-power unless the pair conversion is
    // trivial; both verdicts are carried for reporting.
    bool conversion_trivial = g == 0 || r == 1;
    CHECK(rep.kappa_holds == conversion_trivial);
  }
}

TEST_CASE("skyscraper image factors through the trivial-class identity") {
  for (auto [r, g] : {std::pair{1, 1}, {2, 1}, {2, 2}}) {
    auto ring = Ring::curve(g);
    // The twisted-variant induction multiplies in the order-reversed
    // algebra, whose symmetrization kernel is the reversed one.
    SkyscraperImage sk = theta_skyscraper(ring, r, true);
    ZPoly via_psi = psi(sk.argument, gprime_kernel(ring)) *
                    sk.prefactor_derived;
    CHECK(via_psi == sk.image);
    // Plain variant: same prefactor, rho power scaled by g, plain kernel.
    SkyscraperImage pl = theta_skyscraper(ring, r, false);
    ZPoly via_plain = psi(pl.argument, g_kernel(ring)) *
                      pl.prefactor_derived;
    CHECK(via_plain == pl.image);
    ZExp diff = zero_zexp();
    for (int i = 1; i <= r; ++i)
      diff[i - 1] = static_cast<int16_t>(-(g - 1) * (r + 1 - 2 * i));
    CHECK(pl.argument == sk.argument.shifted(diff));
    CHECK(pl.prefactor_derived == sk.prefactor_derived);
  }
}

TEST_CASE("printed and derived skyscraper prefactors are tracked separately") {
  auto ring = Ring::curve(1);
  SkyscraperImage sk = theta_skyscraper(ring, 2, true);
  // r = 2, g = 1: derived q-exponent -2, closed-form exponent -3.
  CHECK(sk.prefactor_derived * q_factorial(ring, 2) ==
        Scalar(ring, -1) * Scalar::q_pow(ring, -2));
  CHECK(sk.prefactor_printed * q_factorial(ring, 2) ==
        Scalar(ring, -1) * Scalar::q_pow(ring, -3));
  // Rank one: the derived prefactor is exactly 1, matching the degree-one
  // normalization; the closed form would carry q^-g.
  SkyscraperImage one = theta_skyscraper(ring, 1, true);
  CHECK(one.prefactor_derived == Scalar(ring, 1));
  CHECK(one.prefactor_printed == Scalar::q_pow(ring, -1));
}
