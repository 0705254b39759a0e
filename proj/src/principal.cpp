#include "curvehall/principal.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

#include "curvehall/shuffle.hpp"

namespace curvehall {

CharacterData CharacterData::make(int genus, std::vector<int> invariants,
                                  bool link_polynomial) {
  if (genus < 0) throw std::invalid_argument("genus out of range");
  for (int n : invariants)
    if (n < 1)
      throw std::invalid_argument("invariant factors must be positive");
  std::erase(invariants, 1);
  long total = 1;
  for (int n : invariants) {
    total *= n;
    if (total > 64) throw std::invalid_argument("character set too large");
  }
  const int m = static_cast<int>(total);
  if (genus == 0 && m > 1)
    throw std::invalid_argument("genus zero has only the trivial character");

  CharacterData d;
  d.invariants_ = invariants;
  d.linked_ = link_polynomial;

  auto conj_of = [&invariants](int chi) {
    int out = 0, base = 1;
    for (int n : invariants) {
      int digit = chi % n;
      chi /= n;
      out += ((n - digit) % n) * base;
      base *= n;
    }
    return out;
  };

  std::vector<std::string> names = {"v"};
  std::vector<int> weights = {1};
  for (int l = 1; l <= genus; ++l) {
    names.push_back("a" + std::to_string(l));
    weights.push_back(-1);
  }

  // kind: 0 trivial, 1 fresh representative, 2 conjugate of a
  // representative, 3 self-conjugate.  A self-conjugate list must be
  // stable under beta -> q/beta, so its fresh symbols come in pairs
  // (b, q/b) and only half of them are free.
  struct Plan {
    int kind = -1;
    int rep = -1;
    int first = -1;
    int nfresh = 0;
    int sqrt_sym = -1;
  };
  std::vector<Plan> plan(m);
  plan[0].kind = 0;
  for (int chi = 1; chi < m; ++chi) {
    if (plan[chi].kind >= 0) continue;
    int cj = conj_of(chi);
    Plan& p = plan[chi];
    p.first = static_cast<int>(names.size());
    if (cj == chi) {
      p.kind = 3;
      p.nfresh = genus - (link_polynomial ? 1 : 0);
    } else {
      p.kind = 1;
      p.nfresh = 2 * genus - (link_polynomial ? 2 : 0);
      plan[cj].kind = 2;
      plan[cj].rep = chi;
    }
    for (int t = 1; t <= p.nfresh; ++t) {
      names.push_back("b" + std::to_string(chi) + "_" + std::to_string(t));
      weights.push_back(-1);
    }
  }
  // gamma of a representative is q^-1 (prod of fresh symbols) times q
  // under the link; it is a square of a monomial only when no fresh
  // symbol appears, so each representative with fresh symbols adjoins a
  // square root of its gamma.
  std::vector<SqrtRule> roots;
  for (int chi = 1; chi < m; ++chi) {
    Plan& p = plan[chi];
    if (p.kind != 1 || p.nfresh == 0) continue;
    Exp square = zero_exp();
    square[0] = static_cast<int16_t>(link_polynomial ? 0 : 2);
    for (int t = 0; t < p.nfresh; ++t)
      square[p.first + t] = 1;
    p.sqrt_sym = static_cast<int>(names.size());
    names.push_back("c" + std::to_string(chi));
    weights.push_back(1 - genus);
    roots.push_back(SqrtRule{p.sqrt_sym, square});
  }
  if (names.size() > static_cast<size_t>(kMaxSymbols))
    throw std::invalid_argument("character data exceeds the symbol table");
  RingPtr ring =
      Ring::make(std::move(names), std::move(weights), std::move(roots),
                 genus);
  d.ring_ = ring;

  const Scalar one(ring, 1);
  const Scalar q = Scalar::q_pow(ring, 1);
  d.beta_.resize(m);
  // Trivial and self-conjugate characters have gamma = q^(g-1) on the
  // nose; representatives with fresh symbols overwrite the default below.
  d.gamma_sqrt_.assign(m, Scalar::v_pow(ring, 1 - genus));
  for (int l = 1; l <= genus; ++l) {
    d.beta_[0].push_back(Scalar::alpha(ring, l));
    d.beta_[0].push_back(Scalar::alpha_bar(ring, l));
  }
  for (int chi = 1; chi < m; ++chi) {
    const Plan& p = plan[chi];
    if (p.kind == 2) continue;
    auto fresh = [&](int t) {
      Exp e = zero_exp();
      e[p.first + t] = 1;
      return Scalar::monomial(ring, e);
    };
    std::vector<Scalar>& list = d.beta_[chi];
    if (p.kind == 3) {
      for (int t = 0; t < p.nfresh; ++t) {
        Scalar b = fresh(t);
        list.push_back(b);
        list.push_back(q / b);
      }
    } else {
      for (int t = 0; t < p.nfresh; ++t) list.push_back(fresh(t));
      if (p.sqrt_sym >= 0) {
        Exp e = zero_exp();
        e[p.sqrt_sym] = 1;
        d.gamma_sqrt_[chi] = Scalar::monomial(ring, e);
      }
    }
    if (link_polynomial) {
      list.push_back(one);
      list.push_back(q);
    }
  }
  for (int chi = 1; chi < m; ++chi) {
    const Plan& p = plan[chi];
    if (p.kind != 2) continue;
    for (const Scalar& b : d.beta_[p.rep]) d.beta_[chi].push_back(q / b);
    d.gamma_sqrt_[chi] =
        Scalar::v_pow(ring, 2 - 2 * genus) / d.gamma_sqrt_[p.rep];
  }
  return d;
}

void CharacterData::check(int chi) const {
  if (chi < 0 || chi >= size())
    throw std::invalid_argument("character index out of range");
}

int CharacterData::conj(int chi) const {
  check(chi);
  int out = 0, base = 1;
  for (int n : invariants_) {
    int digit = chi % n;
    chi /= n;
    out += ((n - digit) % n) * base;
    base *= n;
  }
  return out;
}

int CharacterData::compose(int chi, int rho) const {
  check(chi);
  check(rho);
  int out = 0, base = 1;
  for (int n : invariants_) {
    out += ((chi % n + rho % n) % n) * base;
    chi /= n;
    rho /= n;
    base *= n;
  }
  return out;
}

std::string CharacterData::label(int chi) const {
  check(chi);
  if (chi == 0) return "1";
  std::string out = "chi(";
  for (size_t i = 0; i < invariants_.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(chi % invariants_[i]);
    chi /= invariants_[i];
  }
  return out + ")";
}

const std::vector<Scalar>& CharacterData::beta(int chi) const {
  check(chi);
  return beta_[chi];
}

Scalar CharacterData::gamma(int chi) const {
  check(chi);
  Scalar out = Scalar::q_pow(ring_, -1);
  for (const Scalar& b : beta_[chi]) out *= b;
  return out;
}

Scalar CharacterData::gamma_sqrt(int chi) const {
  check(chi);
  return gamma_sqrt_[chi];
}

FactoredKernel zeta_chi(const CharacterData& data, int chi) {
  FactoredKernel f;
  f.ring = data.ring();
  f.scale = Scalar(f.ring, 1);
  f.num_c = data.beta(chi);
  f.den_c.push_back(Scalar(f.ring, 1));
  f.den_c.push_back(Scalar::q_pow(f.ring, 1));
  return f;
}

bool zeta_chi_functional_equation(const CharacterData& data, int chi) {
  RingPtr ring = data.ring();
  const int g = data.genus();
  const int cj = data.conj(chi);
  RatFunc1 lhs =
      zeta_chi(data, chi).rational().transformed(Scalar::q_pow(ring, -1), 1);
  RatFunc1 flipped =
      zeta_chi(data, cj).rational().transformed(Scalar(ring, 1), -1);
  ZExp e = zero_zexp();
  e[0] = static_cast<int16_t>(2 * g - 2);
  RatFunc1 front(ZPoly::monomial(ring, 1, e, data.gamma(cj).inverse()),
                 ZPoly::constant(ring, 1, Scalar(ring, 1)));
  return lhs == front * flipped;
}

Kernel kernel_g_chi(const CharacterData& data, int chi) {
  Kernel k;
  k.ring = data.ring();
  k.a = data.genus() - 1;
  k.plus.push_back(Scalar::q_pow(k.ring, 1));
  k.minus = data.beta(chi);
  k.den = Kernel::Den::kZInv;
  k.scale = data.gamma_sqrt(chi).inverse();
  return k;
}

PowerSeries xi_chi_series(const CharacterData& data, int chi, int terms) {
  PowerSeries zs = zeta_chi(data, chi).series(terms);
  PowerSeries zq = zs.scaled_arg(Scalar::q_pow(data.ring(), -1));
  return zs * zq.inverse();
}

Scalar principal_pairing(const CharacterData& data, int chi, int rho) {
  RingPtr ring = data.ring();
  (void)data.beta(chi);
  (void)data.beta(rho);
  if (chi != rho) return Scalar(ring, 0);
  return pic0_order(ring) /
         (Scalar::q_pow(ring, 1) - Scalar(ring, 1));
}

PrincipalElement::PrincipalElement(RingPtr ring, int rank)
    : ring_(std::move(ring)), rank_(rank) {}

PrincipalElement PrincipalElement::generator(const CharacterData& data,
                                             int chi, int d) {
  (void)data.beta(chi);
  PrincipalElement out(data.ring(), 1);
  ZExp e = zero_zexp();
  e[0] = static_cast<int16_t>(d);
  out.add({chi}, ZPoly::monomial(data.ring(), 1, e, Scalar(data.ring(), 1)));
  return out;
}

ZPoly PrincipalElement::component(const std::vector<int>& chis) const {
  auto it = comp_.find(chis);
  if (it != comp_.end()) return it->second;
  return ZPoly(ring_, rank_);
}

void PrincipalElement::add(const std::vector<int>& chis, const ZPoly& p) {
  if (static_cast<int>(chis.size()) != rank_)
    throw std::invalid_argument("tuple length must match the rank");
  auto it = comp_.find(chis);
  if (it == comp_.end()) {
    if (!p.is_zero()) comp_.emplace(chis, p);
    return;
  }
  it->second += p;
  if (it->second.is_zero()) comp_.erase(it);
}

PrincipalElement principal_psi(const CharacterData& data,
                               const std::vector<int>& chis,
                               const std::vector<int>& degs) {
  const int r = static_cast<int>(chis.size());
  if (degs.size() != chis.size())
    throw std::invalid_argument("character and degree tuples must match");
  if (r < 1 || r > 3)
    throw std::invalid_argument("symmetrization rank must be 1, 2, or 3");
  for (int chi : chis) (void)data.beta(chi);
  RingPtr ring = data.ring();
  ZExp e = zero_zexp();
  for (int i = 0; i < r; ++i) e[i] = static_cast<int16_t>(degs[i]);
  ZPoly base = ZPoly::monomial(ring, r, e, Scalar(ring, 1));
  PrincipalElement out(ring, r);
  if (r == 1) {
    out.add(chis, base);
    return out;
  }
  std::vector<std::vector<Kernel>> k(r, std::vector<Kernel>(r));
  for (int i = 0; i < r; ++i)
    for (int j = i + 1; j < r; ++j)
      k[i][j] =
          kernel_g_chi(data, data.compose(chis[i], data.conj(chis[j])));
  std::map<std::vector<int>, ZPoly> acc;
  for (const auto& perm : all_permutations(r)) {
    ZPoly t = base.permuted(perm);
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j)
        t *= kernel_pair_cleared(k[i][j], r, perm[i], perm[j]);
    std::vector<int> tau(r);
    for (int i = 0; i < r; ++i) tau[perm[i]] = chis[i];
    auto [it, fresh] = acc.emplace(tau, ZPoly(ring, r));
    (void)fresh;
    if (permutation_sign(perm) < 0)
      it->second -= t;
    else
      it->second += t;
  }
  // The pair denominators multiply to sign(perm) times the Vandermonde
  // determinant, so each character component is the accumulated numerator
  // over the full determinant.
  ZPoly van = vandermonde(ring, r);
  for (auto& [tau, p] : acc)
    if (!p.is_zero()) out.add(tau, divide_exact(p, van));
  return out;
}

PrincipalElement principal_mul(const CharacterData& data,
                               const PrincipalElement& a,
                               const PrincipalElement& b) {
  const int r = a.rank(), s = b.rank();
  RingPtr ring = data.ring();
  if (r == 0 || s == 0) {
    const PrincipalElement& big = (r == 0) ? b : a;
    const PrincipalElement& tiny = (r == 0) ? a : b;
    Scalar c = tiny.component({}).coeff(zero_zexp());
    PrincipalElement out(ring, big.rank());
    for (const auto& [tau, p] : big.components()) out.add(tau, p * c);
    return out;
  }
  if (r + s > kMaxVars)
    throw std::invalid_argument("product rank exceeds the variable limit");
  PrincipalElement out(ring, r + s);
  std::map<std::vector<int>, ZPoly> acc;
  const auto shuffles = block_shuffles(r, s);
  for (const auto& [ta, pa] : a.components()) {
    for (const auto& [tb, pb] : b.components()) {
      std::vector<int> tau = ta;
      tau.insert(tau.end(), tb.begin(), tb.end());
      ZPoly ab = pa.embedded(r + s, 0) * pb.embedded(r + s, r);
      std::vector<std::vector<Kernel>> k(r, std::vector<Kernel>(s));
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < s; ++j)
          k[i][j] = kernel_g_chi(
              data, data.compose(tau[i], data.conj(tau[r + j])));
      for (const auto& perm : shuffles) {
        ZPoly t = ab.permuted(perm);
        int sign = 1;
        std::vector<std::pair<int, int>> used;
        for (int i = 0; i < r; ++i) {
          for (int j = r; j < r + s; ++j) {
            int pi = perm[i], pj = perm[j];
            t *= kernel_pair_cleared(k[i][j - r], r + s, pi, pj);
            if (pi > pj) sign = -sign;
            used.emplace_back(std::min(pi, pj), std::max(pi, pj));
          }
        }
        std::sort(used.begin(), used.end());
        // Pair factors no cross kernel consumed, so that the total again
        // sits over the full Vandermonde determinant.
        ZPoly missing = ZPoly::constant(ring, r + s, Scalar(ring, 1));
        for (int i = 0; i < r + s; ++i)
          for (int j = i + 1; j < r + s; ++j)
            if (!std::binary_search(used.begin(), used.end(),
                                    std::make_pair(i, j)))
              missing *=
                  ZPoly::var(ring, r + s, i) - ZPoly::var(ring, r + s, j);
        t *= missing;
        std::vector<int> tout(r + s);
        for (int i = 0; i < r + s; ++i) tout[perm[i]] = tau[i];
        auto [it, fresh] = acc.emplace(tout, ZPoly(ring, r + s));
        (void)fresh;
        if (sign < 0)
          it->second -= t;
        else
          it->second += t;
      }
    }
  }
  ZPoly van = vandermonde(ring, r + s);
  for (auto& [tau, p] : acc)
    if (!p.is_zero()) out.add(tau, divide_exact(p, van));
  return out;
}

}  // namespace curvehall
