#include "curvehall/shuffle.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace curvehall {

ZPoly kernel_pair_cleared(const Kernel& k, int rank, int i, int j) {
  PairKernel pk = k.pair_data();
  RingPtr ring = k.ring;
  ZExp mono = zero_zexp();
  mono[i] = static_cast<int16_t>(pk.p);
  mono[j] = static_cast<int16_t>(pk.q);
  ZPoly out = ZPoly::monomial(ring, rank, mono, pk.c);
  for (const Scalar& b : pk.betas)
    out *= ZPoly::var(ring, rank, i) - ZPoly::var(ring, rank, j) * b;
  return out;
}

ZPoly psi(const ZPoly& payload, const Kernel& k, bool parallel) {
  return psi_packed(payload, k.pair_data(), parallel);
}

ZPoly psi_reference(const ZPoly& payload, const Kernel& k) {
  const int r = payload.rank();
  if (r <= 1) return payload;
  PairKernel pk = k.pair_data();
  RingPtr ring = payload.ring();
  ZExp mono = zero_zexp();
  for (int t = 1; t <= r; ++t)
    mono[t - 1] = static_cast<int16_t>(pk.p * (r - t) + pk.q * (t - 1));
  ZPoly n = payload.shifted(mono);
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      for (const Scalar& b : pk.betas)
        n *= ZPoly::var(ring, r, i) - ZPoly::var(ring, r, j) * b;
  ZPoly a = antisymmetrize(n);
  ZPoly q = divide_exact(a, vandermonde(ring, r));
  return q * pk.c.pow(r * (r - 1) / 2);
}

ZPoly psi_direct(const ZPoly& payload, const Kernel& k) {
  const int r = payload.rank();
  if (r <= 1) return payload;
  RingPtr ring = payload.ring();
  ZPoly total(ring, r);
  for (const auto& perm : all_permutations(r)) {
    // K(x_{perm(i)}/x_{perm(j)}) cleared against its own pair denominator;
    // the product of the pair denominators is sign(perm) * Vandermonde.
    ZPoly t = payload.permuted(perm);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        t *= kernel_pair_cleared(k, r, perm[i], perm[j]);
    if (permutation_sign(perm) < 0)
      total -= t;
    else
      total += t;
  }
  return divide_exact(total, vandermonde(ring, r));
}

ShuffleElement::ShuffleElement(ZPoly payload, std::optional<ZPoly> preimage)
    : payload_(std::move(payload)), preimage_(std::move(preimage)) {
  if (!payload_.is_symmetric())
    throw std::invalid_argument("shuffle element payload must be symmetric");
}

ShuffleElement ShuffleElement::generator(const Kernel& k,
                                         const std::vector<int>& d,
                                         bool parallel) {
  int r = static_cast<int>(d.size());
  ZExp e = zero_zexp();
  for (int i = 0; i < r; ++i) e[i] = static_cast<int16_t>(d[i]);
  ZPoly pre = ZPoly::monomial(k.ring, r, e, Scalar(k.ring, 1));
  return ShuffleElement(psi(pre, k, parallel), pre);
}

std::vector<std::vector<int>> block_shuffles(int r, int s) {
  std::vector<std::vector<int>> out;
  // Choose which output slots receive the second block.
  std::vector<bool> pick(r + s, false);
  std::fill(pick.end() - s, pick.end(), true);
  std::sort(pick.begin(), pick.end());
  do {
    std::vector<int> perm(r + s);
    int a = 0, b = 0;
    std::vector<int> slots_a, slots_b;
    for (int i = 0; i < r + s; ++i)
      (pick[i] ? slots_b : slots_a).push_back(i);
    for (int i = 0; i < r; ++i) perm[i] = slots_a[a++];
    for (int i = 0; i < s; ++i) perm[r + i] = slots_b[b++];
    out.push_back(std::move(perm));
  } while (std::next_permutation(pick.begin(), pick.end()));
  return out;
}

ZPoly shuffle_mul_direct(const Kernel& k, const ZPoly& a, const ZPoly& b) {
  const int r = a.rank(), s = b.rank();
  RingPtr ring = k.ring;
  if (r == 0) return b * a.coeff(zero_zexp());
  if (s == 0) return a * b.coeff(zero_zexp());
  ZPoly ab = a.embedded(r + s, 0) * b.embedded(r + s, r);
  ZPoly total(ring, r + s);
  for (const auto& perm : block_shuffles(r, s)) {
    ZPoly t = ab.permuted(perm);
    int sign = 1;
    for (int i = 0; i < r; ++i) {
      for (int j = r; j < r + s; ++j) {
        int pi = perm[i], pj = perm[j];
        // Cleared kernel at the permuted pair over (x_pi - x_pj); flip to
        // the sorted pair of the common denominator.
        t *= kernel_pair_cleared(k, r + s, pi, pj);
        if (pi > pj) sign = -sign;
      }
    }
    // Multiply by the pair factors this term does not consume.
    ZPoly missing = ZPoly::constant(ring, r + s, Scalar(ring, 1));
    std::vector<std::pair<int, int>> used;
    for (int i = 0; i < r; ++i)
      for (int j = r; j < r + s; ++j)
        used.emplace_back(std::min(perm[i], perm[j]),
                          std::max(perm[i], perm[j]));
    std::sort(used.begin(), used.end());
    for (int i = 0; i < r + s; ++i)
      for (int j = i + 1; j < r + s; ++j)
        if (!std::binary_search(used.begin(), used.end(), std::make_pair(i, j)))
          missing *= ZPoly::var(ring, r + s, i) - ZPoly::var(ring, r + s, j);
    t *= missing;
    if (sign < 0)
      total -= t;
    else
      total += t;
  }
  return divide_exact(total, vandermonde(ring, r + s));
}

ShuffleElement shuffle_mul(const Kernel& k, const ShuffleElement& a,
                           const ShuffleElement& b, bool parallel) {
  const int r = a.rank(), s = b.rank();
  if (a.preimage() && b.preimage()) {
    ZPoly pre = a.preimage()->embedded(r + s, 0) *
                b.preimage()->embedded(r + s, r);
    return ShuffleElement(psi(pre, k, parallel), pre);
  }
  return ShuffleElement(shuffle_mul_direct(k, a.payload(), b.payload()));
}

ShuffleElement hecke_mul(const ShuffleElement& a, int d) {
  if (d < 1) throw std::invalid_argument("hecke degree must be positive");
  const int r = a.rank();
  if (r < 1) throw std::invalid_argument("hecke action needs rank >= 1");
  const RingPtr& ring = a.payload().ring();
  ZPoly ps(ring, r);
  for (int i = 0; i < r; ++i) ps += ZPoly::var(ring, r, i, d);
  ps = ps * hecke_c(ring, d);
  // The multiplier is symmetric, so it slides through the symmetrization
  // and acts on the preimage as well.
  if (a.preimage())
    return ShuffleElement(a.payload() * ps, *a.preimage() * ps);
  return ShuffleElement(a.payload() * ps);
}

ZPoly wheel_substitute(const ZPoly& p, int weil_index) {
  const int r = p.rank();
  if (r < 3) throw std::invalid_argument("wheel test needs rank >= 3");
  RingPtr ring = p.ring();
  const int g = ring->genus();
  if (weil_index < 0 || weil_index >= 2 * g)
    throw std::invalid_argument("weil index");
  int l = weil_index / 2 + 1;
  Scalar w = (weil_index % 2 == 0) ? Scalar::alpha(ring, l)
                                   : Scalar::alpha_bar(ring, l);
  std::vector<Scalar> coeffs;
  std::vector<ZExp> images;
  ZExp t = zero_zexp();
  t[0] = 1;
  coeffs.push_back(Scalar::q_pow(ring, 1));
  images.push_back(t);
  coeffs.push_back(w);
  images.push_back(t);
  coeffs.push_back(Scalar(ring, 1));
  images.push_back(t);
  for (int i = 3; i < r; ++i) {
    ZExp e = zero_zexp();
    e[i - 2] = 1;
    coeffs.push_back(Scalar(ring, 1));
    images.push_back(e);
  }
  return p.substituted(r - 2, coeffs, images);
}

bool wheel_check(const ZPoly& p) {
  const int g = p.ring()->genus();
  for (int w = 0; w < 2 * g; ++w)
    if (!wheel_substitute(p, w).is_zero()) return false;
  return true;
}

BasisDet basis_determinant(RingPtr ring, int r) {
  const auto perms = all_permutations(r);
  const int n = static_cast<int>(perms.size());
  // Staircase exponents 0 <= n_i <= r - i in ascending lex order.
  std::vector<ZExp> cols;
  std::vector<int> cur(r, 0);
  while (true) {
    ZExp e = zero_zexp();
    for (int i = 0; i < r; ++i) e[i] = static_cast<int16_t>(cur[i]);
    cols.push_back(e);
    int pos = r - 1;
    while (pos >= 0) {
      if (cur[pos] < r - 1 - pos) {
        ++cur[pos];
        std::fill(cur.begin() + pos + 1, cur.end(), 0);
        break;
      }
      --pos;
    }
    if (pos < 0) break;
  }
  if (static_cast<int>(cols.size()) != n)
    throw std::logic_error("staircase count mismatch");
  // M[row][col] = (-1)^l(sigma) sigma(x^I).
  std::vector<std::vector<ZPoly>> m(n, std::vector<ZPoly>(n));
  for (int row = 0; row < n; ++row) {
    for (int col = 0; col < n; ++col) {
      ZPoly mono =
          ZPoly::monomial(ring, r, cols[col],
                          Scalar(ring, permutation_sign(perms[row])));
      m[row][col] = mono.permuted(perms[row]);
    }
  }
  // Leibniz expansion; n <= 6 keeps this tame.
  ZPoly det(ring, r);
  for (const auto& rho : all_permutations(n)) {
    ZPoly prod = ZPoly::constant(ring, r, Scalar(ring, 1));
    for (int row = 0; row < n; ++row) prod *= m[row][rho[row]];
    if (permutation_sign(rho) < 0)
      det -= prod;
    else
      det += prod;
  }
  // det(M) = sign * Delta^(n/2); the basis determinant is det(M)/Delta^n.
  ZPoly delta = vandermonde(ring, r);
  ZPoly quot = det;
  for (int k = 0; k < n / 2; ++k) quot = divide_exact(quot, delta);
  Scalar c = quot.coeff(zero_zexp());
  if (!(quot == ZPoly::constant(ring, r, c)) || c.is_zero())
    throw std::logic_error("basis determinant is not +-Delta^(n/2)");
  if (c != Scalar(ring, 1) && c != Scalar(ring, -1))
    throw std::logic_error("basis determinant has non-unit constant");
  BasisDet out;
  out.sign = (c == Scalar(ring, 1)) ? 1 : -1;
  out.delta_power = -n / 2;
  std::ostringstream os;
  if (out.sign < 0) os << "-";
  os << "Δ^{" << out.delta_power << "}";
  out.display = os.str();
  return out;
}

}  // namespace curvehall
