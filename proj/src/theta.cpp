#include "curvehall/theta.hpp"

#include <stdexcept>

namespace curvehall {

Scalar p_scalar(const RingPtr& ring) { return Scalar::v_pow(ring, 2); }

Scalar x_scalar(const RingPtr& ring, int l) {
  return Scalar::alpha(ring, l).inverse();
}

Scalar y_scalar(const RingPtr& ring, int l) {
  return Scalar::v_pow(ring, 2) * Scalar::alpha(ring, l);
}

Scalar q_bracket(const RingPtr& ring, int s) {
  Scalar out(ring, 0);
  for (int k = 0; k < s; ++k) out += Scalar::q_pow(ring, k);
  return out;
}

Scalar q_factorial(const RingPtr& ring, int r) {
  Scalar out(ring, 1);
  for (int s = 2; s <= r; ++s) out *= q_bracket(ring, s);
  return out;
}

ZPoly nu(const ZPoly& payload) {
  return psi_direct(payload, k_kernel(payload.ring()));
}

namespace {

// prod over the listed ordered pairs (a, b) of prod_c (1 - c z_a / z_b).
ZPoly pair_binomials(const RingPtr& ring, int r,
                     const std::vector<std::pair<int, int>>& pairs,
                     const std::vector<Scalar>& cs) {
  ZPoly out = ZPoly::constant(ring, r, Scalar(ring, 1));
  ZPoly one = out;
  for (auto [a, b] : pairs) {
    for (const Scalar& c : cs) {
      ZExp e = zero_zexp();
      e[a] = 1;
      e[b] = -1;
      out = out * (one - ZPoly::monomial(ring, r, e, c));
    }
  }
  return out;
}

std::vector<Scalar> weil_scalars(const RingPtr& ring) {
  std::vector<Scalar> cs;
  for (int l = 1; l <= ring->genus(); ++l) {
    cs.push_back(Scalar::alpha(ring, l));
    cs.push_back(Scalar::alpha_bar(ring, l));
  }
  return cs;
}

std::vector<Scalar> kside_scalars(const RingPtr& ring) {
  std::vector<Scalar> cs;
  for (int l = 1; l <= ring->genus(); ++l) {
    cs.push_back(x_scalar(ring, l));
    cs.push_back(y_scalar(ring, l));
  }
  return cs;
}

std::vector<std::pair<int, int>> ordered_pairs(int r) {
  std::vector<std::pair<int, int>> ps;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      if (i != j) ps.emplace_back(i, j);
  return ps;
}

std::vector<std::pair<int, int>> upper_pairs(int r) {
  std::vector<std::pair<int, int>> ps;
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j) ps.emplace_back(i, j);
  return ps;
}

Scalar parity_sign(const RingPtr& ring, int r) {
  return Scalar(ring, (r * (r - 1) / 2) % 2 ? -1 : 1);
}

}  // namespace

ZPoly skyscraper_class(const RingPtr& ring, int r) {
  if (r < 1) throw std::invalid_argument("skyscraper class needs rank >= 1");
  Scalar diag(ring, 1);
  for (int l = 1; l <= ring->genus(); ++l) {
    Scalar xl = x_scalar(ring, l), yl = y_scalar(ring, l);
    diag *= ((Scalar(ring, 1) - xl) * (Scalar(ring, 1) - yl)).pow(r);
  }
  return pair_binomials(ring, r, ordered_pairs(r), kside_scalars(ring)) * diag;
}

ZPoly theta_normalize(const ZPoly& payload) {
  const RingPtr& ring = payload.ring();
  const int n = payload.rank();
  Scalar scale = Scalar::q_pow(ring, n * ring->genus()) *
                 pic0_order(ring).pow(n).inverse();
  return payload * scale;
}

Triv1Report verify_triv1(const RingPtr& ring, int r) {
  const int g = ring->genus();
  Triv1Report rep;
  // Argument: z^{2 rho} times the lower-triangular Weil binomials, with
  // x_l^{-1} = alpha_l and y_l^{-1} = abar_l.
  ZExp two_rho = zero_zexp();
  for (int i = 1; i <= r; ++i) two_rho[i - 1] = static_cast<int16_t>(r + 1 - 2 * i);
  std::vector<std::pair<int, int>> lower;
  for (auto [i, j] : upper_pairs(r)) lower.emplace_back(j, i);
  ZPoly arg = pair_binomials(ring, r, lower, weil_scalars(ring))
                  .shifted(two_rho);
  rep.lhs = psi(arg, zeta_tilde_kernel(ring));

  Scalar lead = parity_sign(ring, r) * q_factorial(ring, r);
  rep.rhs_plain =
      pair_binomials(ring, r, ordered_pairs(r), weil_scalars(ring)) * lead;
  rep.rhs_kappa =
      pair_binomials(ring, r, ordered_pairs(r), kside_scalars(ring)) *
      (lead * Scalar::q_pow(ring, g * r * (r - 1) / 2));
  rep.plain_holds = rep.lhs == rep.rhs_plain;
  rep.kappa_holds = rep.lhs == rep.rhs_kappa;
  return rep;
}

SkyscraperImage theta_skyscraper(const RingPtr& ring, int r, bool twisted) {
  const int g = ring->genus();
  SkyscraperImage out;
  out.prefactor_derived = parity_sign(ring, r) *
                          Scalar::q_pow(ring, -g * r * (r - 1)) *
                          q_factorial(ring, r).inverse();
  out.prefactor_printed = parity_sign(ring, r) *
                          Scalar::q_pow(ring, -g * r * (r + 1) / 2) *
                          q_factorial(ring, r).inverse();
  ZExp neg_rho = zero_zexp();
  const int mult = twisted ? 1 : g;
  for (int i = 1; i <= r; ++i)
    neg_rho[i - 1] = static_cast<int16_t>(-mult * (r + 1 - 2 * i));
  out.argument = pair_binomials(ring, r, upper_pairs(r), weil_scalars(ring))
                     .shifted(neg_rho);
  out.image = theta_normalize(skyscraper_class(ring, r));
  return out;
}

}  // namespace curvehall
