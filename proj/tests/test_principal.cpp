#include "curvehall/principal.hpp"

#include <stdexcept>
#include <vector>

#include "curvehall/shuffle.hpp"
#include "doctest.h"

using namespace curvehall;

namespace {

ZExp exp1(int a) {
  ZExp e = zero_zexp();
  e[0] = static_cast<int16_t>(a);
  return e;
}

ZExp exp2(int a, int b) {
  ZExp e = exp1(a);
  e[1] = static_cast<int16_t>(b);
  return e;
}

ZExp exp3(int a, int b, int c) {
  ZExp e = exp2(a, b);
  e[2] = static_cast<int16_t>(c);
  return e;
}

bool same_multiset(const std::vector<Scalar>& a, std::vector<Scalar> b) {
  if (a.size() != b.size()) return false;
  for (const Scalar& x : a) {
    bool hit = false;
    for (auto it = b.begin(); it != b.end(); ++it) {
      if (*it == x) {
        b.erase(it);
        hit = true;
        break;
      }
    }
    if (!hit) return false;
  }
  return true;
}

struct Cfg {
  int genus;
  std::vector<int> inv;
  bool link;
};

}  // namespace

TEST_CASE("character indices conjugate and compose as the dual group") {
  auto data = CharacterData::make(1, {2, 4});
  CHECK(data.size() == 8);
  CHECK(data.is_trivial(0));
  CHECK(data.conj(0) == 0);
  CHECK(data.label(0) == "1");
  CHECK(data.label(5) == "chi(1,2)");
  CHECK(data.conj(5) == 5);
  for (int chi = 0; chi < data.size(); ++chi) {
    CHECK(data.compose(chi, data.conj(chi)) == 0);
    CHECK(data.conj(data.conj(chi)) == chi);
    CHECK(data.compose(0, chi) == chi);
    for (int rho = 0; rho < data.size(); ++rho)
      CHECK(data.compose(chi, rho) == data.compose(rho, chi));
  }

  CHECK(CharacterData::make(1, {1, 3}).size() == 3);
  CHECK(CharacterData::make(0, {}).size() == 1);
  CHECK_THROWS_AS(CharacterData::make(0, {2}), std::invalid_argument);
  CHECK_THROWS_AS(CharacterData::make(-1, {}), std::invalid_argument);
  CHECK_THROWS_AS(CharacterData::make(1, {0}), std::invalid_argument);
  CHECK_THROWS_AS(CharacterData::make(1, {3}).beta(3), std::invalid_argument);
}

TEST_CASE("gamma constants square and pair correctly across conjugation") {
  for (const Cfg& cfg : {Cfg{1, {3}, false}, Cfg{1, {3}, true},
                         Cfg{2, {3}, false}, Cfg{1, {2}, false},
                         Cfg{2, {2}, false}, Cfg{1, {2, 4}, true}}) {
    auto data = CharacterData::make(cfg.genus, cfg.inv, cfg.link);
    auto ring = data.ring();
    Scalar qg = Scalar::q_pow(ring, cfg.genus - 1);
    CHECK(data.gamma(0) == qg);
    for (int chi = 0; chi < data.size(); ++chi) {
      CAPTURE(chi);
      CHECK(static_cast<int>(data.beta(chi).size()) == 2 * cfg.genus);
      CHECK(data.gamma_sqrt(chi) * data.gamma_sqrt(chi) == data.gamma(chi));
      CHECK(data.gamma_sqrt(chi) * data.gamma_sqrt(data.conj(chi)) == qg);
      std::vector<Scalar> flipped;
      for (const Scalar& b : data.beta(chi))
        flipped.push_back(Scalar::q_pow(ring, 1) / b);
      CHECK(same_multiset(flipped, data.beta(data.conj(chi))));
    }
    for (int l = 1; l <= cfg.genus; ++l) {
      CHECK(data.beta(0)[2 * l - 2] == Scalar::alpha(ring, l));
      CHECK(data.beta(0)[2 * l - 1] == Scalar::alpha_bar(ring, l));
    }
  }
}

TEST_CASE("twisted zetas extend the curve zeta and obey the reflection identity") {
  auto free3 = CharacterData::make(1, {3}, false);
  CHECK(zeta_chi(free3, 0).rational() == zeta_function(free3.ring()).rational());

  for (const Cfg& cfg : {Cfg{1, {3}, false}, Cfg{1, {3}, true},
                         Cfg{2, {3}, false}, Cfg{1, {2}, false},
                         Cfg{2, {2}, false}, Cfg{0, {}, false}}) {
    auto data = CharacterData::make(cfg.genus, cfg.inv, cfg.link);
    for (int chi = 0; chi < data.size(); ++chi) {
      CAPTURE(cfg.genus);
      CAPTURE(chi);
      CHECK(zeta_chi_functional_equation(data, chi));
    }
  }

  // With the polynomial link at genus one the twisted zeta is identically 1,
  // as for a nontrivial character on an elliptic curve.
  auto linked = CharacterData::make(1, {3});
  CHECK(zeta_chi(linked, 1).rational() == RatFunc1::one(linked.ring()));
  CHECK(zeta_chi(linked, 2).rational() == RatFunc1::one(linked.ring()));
}

TEST_CASE("twisted kernels specialize to the spherical kernel") {
  // Trivial character: the spherical kernel rescaled by v^(g-1).
  for (int g : {0, 1, 2}) {
    CAPTURE(g);
    auto data = CharacterData::make(g, {});
    auto ring = data.ring();
    Kernel kt = kernel_g_chi(data, 0);
    Kernel ks = g_kernel(ring);
    CHECK(kt.a == ks.a);
    CHECK(kt.den == ks.den);
    REQUIRE(kt.plus.size() == 1);
    CHECK(kt.plus[0] == Scalar::q_pow(ring, 1));
    CHECK(same_multiset(kt.minus, ks.minus));
    CHECK(kt.scale == Scalar::v_pow(ring, g - 1));
  }

  // Conjugate characters carry reciprocal root lists (up to q) and scales
  // multiplying to v^(2g-2).
  auto data = CharacterData::make(2, {3}, false);
  auto ring = data.ring();
  Kernel k1 = kernel_g_chi(data, 1);
  Kernel k2 = kernel_g_chi(data, 2);
  CHECK(k1.scale * k2.scale == Scalar::v_pow(ring, 2));
  std::vector<Scalar> flipped;
  for (const Scalar& b : k1.minus) flipped.push_back(Scalar::q_pow(ring, 1) / b);
  CHECK(same_multiset(flipped, k2.minus));

  // Linked elliptic model: the nontrivial kernel is (1 - q z)(1 - q z^-1).
  auto linked = CharacterData::make(1, {3});
  auto lring = linked.ring();
  Scalar lone(lring, 1), q1 = Scalar::q_pow(lring, 1);
  ZPoly num(lring, 1);
  num.add_term(exp1(-1), -q1);
  num.add_term(exp1(0), lone + q1 * q1);
  num.add_term(exp1(1), -q1);
  CHECK(kernel_g_chi(linked, 1).rational() ==
        RatFunc1(num, ZPoly::constant(lring, 1, lone)));
}

TEST_CASE("twisted xi series match the untwisted expansion and the linked model") {
  auto data = CharacterData::make(2, {3}, false);
  auto ring = data.ring();
  CHECK(xi_chi_series(data, 0, 8) == xi_series(ring, 8));

  PowerSeries x1 = xi_chi_series(data, 1, 4);
  CHECK(x1.at(0) == Scalar(ring, 1));
  Scalar e1(ring, 0);
  for (const Scalar& b : data.beta(1)) e1 += b;
  Scalar q1 = Scalar::q_pow(ring, 1), qi = Scalar::q_pow(ring, -1);
  CHECK(x1.at(1) == (q1 - qi) - (Scalar(ring, 1) - qi) * e1);

  auto linked = CharacterData::make(1, {3});
  CHECK(xi_chi_series(linked, 1, 6) == PowerSeries::one(linked.ring(), 6));
}

TEST_CASE("the diagonal pairing counts line bundle classes over q minus one") {
  auto data = CharacterData::make(1, {3});
  auto ring = data.ring();
  Scalar expect = pic0_order(ring) / (Scalar::q_pow(ring, 1) - Scalar(ring, 1));
  for (int chi = 0; chi < 3; ++chi)
    CHECK(principal_pairing(data, chi, chi) == expect);
  CHECK(principal_pairing(data, 0, 2) == Scalar(ring, 0));
  CHECK(principal_pairing(data, 2, 1) == Scalar(ring, 0));
}

TEST_CASE("rank one symmetrization returns bare generators") {
  auto data = CharacterData::make(1, {3});
  PrincipalElement g = PrincipalElement::generator(data, 2, -3);
  CHECK(g.rank() == 1);
  CHECK(g.components().size() == 1);
  CHECK(g.component({2}) ==
        ZPoly::monomial(data.ring(), 1, exp1(-3), Scalar(data.ring(), 1)));
  CHECK(principal_psi(data, {2}, {-3}) == g);

  CHECK_THROWS_AS(principal_psi(data, {0, 0, 0, 0}, {0, 0, 0, 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(principal_psi(data, {0, 1}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(principal_psi(data, {3}, {0}), std::invalid_argument);
}

TEST_CASE("two distinct characters produce one Laurent term per ordering") {
  auto data = CharacterData::make(1, {3});
  auto ring = data.ring();
  Scalar one(ring, 1), q1 = Scalar::q_pow(ring, 1);
  PrincipalElement out = principal_psi(data, {1, 2}, {1, 0});
  REQUIRE(out.components().size() == 2);

  // x1 * [(1 + q^2) - q x1/x2 - q x2/x1] in the (chi1, chi2) block.
  ZPoly b12(ring, 2);
  b12.add_term(exp2(1, 0), one + q1 * q1);
  b12.add_term(exp2(2, -1), -q1);
  b12.add_term(exp2(0, 1), -q1);
  CHECK(out.component({1, 2}) == b12);

  ZPoly b21(ring, 2);
  b21.add_term(exp2(0, 1), one + q1 * q1);
  b21.add_term(exp2(-1, 2), -q1);
  b21.add_term(exp2(1, 0), -q1);
  CHECK(out.component({2, 1}) == b21);

  CHECK(out == principal_mul(data, PrincipalElement::generator(data, 1, 1),
                             PrincipalElement::generator(data, 2, 0)));
}

TEST_CASE("block products agree with one-shot symmetrization") {
  auto data = CharacterData::make(1, {3});
  using PE = PrincipalElement;
  PE g0 = PE::generator(data, 0, -1);
  PE g1 = PE::generator(data, 1, 1);
  PE g2 = PE::generator(data, 2, 0);

  CHECK(principal_mul(data, principal_psi(data, {1, 2}, {1, 0}), g0) ==
        principal_psi(data, {1, 2, 0}, {1, 0, -1}));
  CHECK(principal_mul(data, g1, principal_mul(data, g2, g0)) ==
        principal_psi(data, {1, 2, 0}, {1, 0, -1}));
  CHECK(principal_mul(data, g1, PE::generator(data, 1, 0)) ==
        principal_psi(data, {1, 1}, {1, 0}));
  CHECK(principal_mul(data, g0, PE::generator(data, 0, 2)) ==
        principal_psi(data, {0, 0}, {-1, 2}));

  PE unit(data.ring(), 0);
  unit.add({}, ZPoly::constant(data.ring(), 0, Scalar(data.ring(), 1)));
  CHECK(principal_mul(data, unit, g1) == g1);
  CHECK(principal_mul(data, g2, unit) == g2);
}

TEST_CASE("the principal product is associative across character blocks") {
  auto data = CharacterData::make(1, {3});
  using PE = PrincipalElement;
  PE a = PE::generator(data, 0, 2);
  PE b = PE::generator(data, 1, 0);
  PE c = PE::generator(data, 2, -1);
  PE left = principal_mul(data, principal_mul(data, a, b), c);
  PE right = principal_mul(data, a, principal_mul(data, b, c));
  CHECK(left == right);
  CHECK(left == principal_psi(data, {0, 1, 2}, {2, 0, -1}));
  CHECK_FALSE(left.is_zero());
}

TEST_CASE("a trivial character group collapses to the spherical shuffle algebra") {
  for (int g : {0, 1, 2}) {
    CAPTURE(g);
    auto data = CharacterData::make(g, {});
    auto ring = data.ring();
    Kernel gk = g_kernel(ring);
    Scalar unit = Scalar::v_pow(ring, g - 1);
    Scalar one(ring, 1);

    ZPoly pay2 = ZPoly::monomial(ring, 2, exp2(2, -1), one);
    CHECK(principal_psi(data, {0, 0}, {2, -1}).component({0, 0}) ==
          psi(pay2, gk) * unit);

    ZPoly pay3 = ZPoly::monomial(ring, 3, exp3(1, 0, 0), one);
    CHECK(principal_psi(data, {0, 0, 0}, {1, 0, 0}).component({0, 0, 0}) ==
          psi(pay3, gk) * unit.pow(3));

    // Products collapse with one constant per crossing pair.
    ZPoly xa = ZPoly::monomial(ring, 1, exp1(1), one);
    ZPoly xb = ZPoly::monomial(ring, 1, exp1(0), one);
    ZPoly xc = ZPoly::monomial(ring, 1, exp1(-1), one);
    auto ga = PrincipalElement::generator(data, 0, 1);
    auto gb = PrincipalElement::generator(data, 0, 0);
    auto gc = PrincipalElement::generator(data, 0, -1);
    ZPoly ab = shuffle_mul_direct(gk, xa, xb);
    CHECK(principal_mul(data, ga, gb).component({0, 0}) == ab * unit);
    CHECK(principal_mul(data, principal_mul(data, ga, gb), gc)
              .component({0, 0, 0}) ==
          shuffle_mul_direct(gk, ab, xc) * unit.pow(3));
  }
}

TEST_CASE("simultaneous relabeling of slots and characters fixes the image") {
  auto data = CharacterData::make(1, {3});
  PrincipalElement out = principal_psi(data, {0, 1, 2}, {1, 0, -1});
  CHECK(out.components().size() == 6);
  std::vector<int> base = {0, 1, 2};
  ZPoly ref = out.component(base);
  for (const auto& perm : all_permutations(3)) {
    std::vector<int> relabeled(3);
    for (int i = 0; i < 3; ++i) relabeled[perm[i]] = base[i];
    CHECK(out.component(relabeled) == ref.permuted(perm));
  }
}

TEST_CASE("free Frobenius parameters leave a pole between distinct characters") {
  auto free3 = CharacterData::make(1, {3}, false);
  CHECK_THROWS_AS(principal_psi(free3, {1, 2}, {0, 0}), DivisionError);
  // Equal slots compose to the trivial character, whose diagonal pole
  // cancels in the symmetrized sum even with free parameters.
  CHECK_FALSE(principal_psi(free3, {1, 1}, {1, 0}).is_zero());
  // The polynomial link removes the mixed pole.
  CHECK_FALSE(principal_psi(CharacterData::make(1, {3}), {1, 2}, {0, 0}).is_zero());
}
