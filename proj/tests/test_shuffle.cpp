#include "curvehall/shuffle.hpp"

#include <random>

#include "doctest.h"

using namespace curvehall;

namespace {

ZPoly random_payload(RingPtr ring, int rank, std::mt19937_64& gen, int terms) {
  std::uniform_int_distribution<int> ze(-2, 2);
  std::uniform_int_distribution<int> coef(-3, 3);
  ZPoly p(ring, rank);
  for (int t = 0; t < terms; ++t) {
    ZExp e = zero_zexp();
    for (int i = 0; i < rank; ++i) e[i] = static_cast<int16_t>(ze(gen));
    p.add_term(e, Scalar(ring, coef(gen)));
  }
  return p;
}

}  // namespace

TEST_CASE("three symmetrization routes agree") {
  std::mt19937_64 gen(29);
  int cases = 0;
  for (int g = 0; g <= 2; ++g) {
    auto ring = Ring::curve(g);
    for (const Kernel& k : {g_kernel(ring), zeta_tilde_kernel(ring)}) {
      for (int rank = 2; rank <= 3; ++rank) {
        const int iters = rank == 2 ? 15 : 2;
        for (int it = 0; it < iters; ++it) {
          ZPoly p = random_payload(ring, rank, gen, 3);
          ZPoly a = psi(p, k, true);
          ZPoly b = psi(p, k, false);
          ZPoly c = psi_reference(p, k);
          ZPoly d = psi_direct(p, k);
          CHECK(a == b);
          CHECK(a == c);
          CHECK(a == d);
          CHECK(a.is_symmetric());
          ++cases;
        }
      }
    }
  }
  CHECK(cases >= 100);
}

TEST_CASE("symmetrization is linear and symmetric in its output") {
  auto ring = Ring::curve(1);
  Kernel k = g_kernel(ring);
  std::mt19937_64 gen(31);
  ZPoly p = random_payload(ring, 3, gen, 3);
  ZPoly q = random_payload(ring, 3, gen, 3);
  CHECK(psi(p + q, k) == psi(p, k) + psi(q, k));
}

TEST_CASE("product through preimages equals the direct shuffle sum") {
  std::mt19937_64 gen(37);
  for (int g = 0; g <= 2; ++g) {
    auto ring = Ring::curve(g);
    Kernel k = g_kernel(ring);
    for (auto [r, s] : {std::pair{1, 1}, {1, 2}, {2, 1}, {2, 2}}) {
      // The direct sum at total rank 4 over a genus-2 kernel is heavyweight
      // in the generic engine; the preimage route covers it elsewhere.
      if (r + s >= 4 && g >= 2) continue;
      ZPoly pa = random_payload(ring, r, gen, 2);
      ZPoly pb = random_payload(ring, s, gen, 2);
      ShuffleElement a(psi(pa, k), pa);
      ShuffleElement b(psi(pb, k), pb);
      ShuffleElement square = shuffle_mul(k, a, b);
      ZPoly direct = shuffle_mul_direct(k, a.payload(), b.payload());
      CHECK(square.payload() == direct);
    }
  }
}

TEST_CASE("shuffle product is associative") {
  auto ring = Ring::curve(1);
  Kernel k = g_kernel(ring);
  ShuffleElement a = ShuffleElement::generator(k, {1});
  ShuffleElement b = ShuffleElement::generator(k, {0});
  ShuffleElement c = ShuffleElement::generator(k, {-1});
  ShuffleElement ab_c = shuffle_mul(k, shuffle_mul(k, a, b), c);
  ShuffleElement a_bc = shuffle_mul(k, a, shuffle_mul(k, b, c));
  CHECK(ab_c == a_bc);
}

TEST_CASE("twisted product is the plain product of twist-shifted factors") {
  // With u of rank r and w of rank s, multiplying u by (x_1..x_r)^((1-g)s)
  // and w by (x_1..x_s)^((g-1)r) under the z^(g-1)-twisted kernel equals
  // the untwisted-kernel product of u and w.
  for (int g = 0; g <= 2; ++g) {
    auto ring = Ring::curve(g);
    Kernel gx = g_kernel(ring);
    Kernel gp = gprime_kernel(ring);
    std::mt19937_64 gen(41);
    for (auto [r, s] : {std::pair{1, 1}, {1, 2}, {2, 1}}) {
      ZPoly u = symmetrize(random_payload(ring, r, gen, 2));
      ZPoly w = symmetrize(random_payload(ring, s, gen, 2));
      ZExp eu = zero_zexp(), ew = zero_zexp();
      for (int i = 0; i < r; ++i) eu[i] = static_cast<int16_t>((1 - g) * s);
      for (int i = 0; i < s; ++i) ew[i] = static_cast<int16_t>((g - 1) * r);
      ZPoly lhs = shuffle_mul_direct(gp, u, w);
      ZPoly rhs = shuffle_mul_direct(gx, u.shifted(eu), w.shifted(ew));
      CHECK(lhs == rhs);
    }
  }
}

TEST_CASE("hecke averages multiply by scaled power sums") {
  auto ring = Ring::curve(1);
  Kernel gx = g_kernel(ring);

  SUBCASE("degree one raises a rank-one generator") {
    for (int l = -1; l <= 1; ++l) {
      ShuffleElement a = ShuffleElement::generator(gx, {l});
      ZExp e = zero_zexp();
      e[0] = static_cast<int16_t>(l + 1);
      CHECK(hecke_mul(a, 1).payload() ==
            ZPoly::monomial(ring, 1, e, hecke_c(ring, 1)));
    }
  }
  SUBCASE("different degrees commute") {
    std::mt19937_64 gen(47);
    ShuffleElement a(symmetrize(random_payload(ring, 2, gen, 3)));
    CHECK(hecke_mul(hecke_mul(a, 1), 2) == hecke_mul(hecke_mul(a, 2), 1));
  }
  SUBCASE("commutes with the rank-zero unit action") {
    ShuffleElement u(ZPoly::constant(ring, 0, Scalar(ring, 2)));
    ShuffleElement a = ShuffleElement::generator(gx, {0, 1});
    CHECK(hecke_mul(shuffle_mul(gx, u, a), 1) ==
          shuffle_mul(gx, u, hecke_mul(a, 1)));
  }
  SUBCASE("multiplication by the power sum has no torsion") {
    std::mt19937_64 gen(53);
    for (int it = 0; it < 3; ++it) {
      ZPoly p = symmetrize(random_payload(ring, 2, gen, 2));
      if (p.is_zero()) continue;
      CHECK_FALSE(hecke_mul(ShuffleElement(p), 1).payload().is_zero());
    }
  }
}

TEST_CASE("wheel substitutions kill symmetrized elements") {
  std::mt19937_64 gen(43);
  for (int g = 1; g <= 2; ++g) {
    auto ring = Ring::curve(g);
    Kernel k = g_kernel(ring);
    for (int it = 0; it < 5; ++it) {
      ZPoly p = random_payload(ring, 3, gen, 2);
      ZPoly out = psi(p, k);
      CHECK(wheel_check(out));
    }
    // The constant 1 is symmetric but fails the wheel conditions.
    ZPoly one = ZPoly::constant(ring, 3, Scalar(ring, 1));
    CHECK_FALSE(wheel_check(one));
  }
}

TEST_CASE("wheel test requires rank at least 3") {
  auto ring = Ring::curve(1);
  ZPoly p = ZPoly::constant(ring, 2, Scalar(ring, 1));
  CHECK_THROWS_AS(wheel_substitute(p, 0), std::invalid_argument);
}

TEST_CASE("basis determinant at ranks 2 and 3") {
  auto ring = Ring::curve(1);
  BasisDet d2 = basis_determinant(ring, 2);
  CHECK(d2.sign == 1);
  CHECK(d2.delta_power == -1);
  CHECK(d2.display == "Δ^{-1}");
  BasisDet d3 = basis_determinant(ring, 3);
  CHECK(d3.delta_power == -3);
  CHECK((d3.sign == 1 || d3.sign == -1));
}
