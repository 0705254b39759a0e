#include "curvehall/fseries.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace curvehall {

namespace {

// 1 - c z_a/z_b as a Laurent polynomial.
ZPoly ratio_binomial(const RingPtr& ring, int rank, int a, int b,
                     const Scalar& c) {
  ZExp e = zero_zexp();
  e[a] = 1;
  e[b] = -1;
  return ZPoly::constant(ring, rank, Scalar(ring, 1)) -
         ZPoly::monomial(ring, rank, e, c);
}

}  // namespace

FSeriesElement::FSeriesElement(ZPoly num, std::vector<RatioFactor> den)
    : num_(std::move(num)) {
  for (auto& f : den) {
    if (f.a == f.b)
      throw std::invalid_argument("ratio factor needs two distinct variables");
    if (f.a < 0 || f.b < 0 || f.a >= num_.rank() || f.b >= num_.rank())
      throw std::invalid_argument("ratio factor variable out of range");
    if (f.c.is_zero()) continue;
    den_.push_back(std::move(f));
  }
}

FSeriesElement FSeriesElement::monomial(RingPtr ring,
                                        const std::vector<int>& d) {
  int r = static_cast<int>(d.size());
  ZExp e = zero_zexp();
  for (int i = 0; i < r; ++i) e[i] = static_cast<int16_t>(d[i]);
  return FSeriesElement(ZPoly::monomial(ring, r, e, Scalar(ring, 1)));
}

FSeriesElement FSeriesElement::one(RingPtr ring) {
  return FSeriesElement(ZPoly::constant(ring, 0, Scalar(ring, 1)));
}

ZPoly FSeriesElement::den_cleared() const {
  ZPoly out = ZPoly::constant(ring(), rank(), Scalar(ring(), 1));
  for (const auto& f : den_)
    out *= ratio_binomial(ring(), rank(), f.a, f.b, f.c);
  return out;
}

FSeriesElement FSeriesElement::operator+(const FSeriesElement& o) const {
  if (rank() != o.rank())
    throw std::invalid_argument("series addition needs equal ranks");
  // Common denominator: the multiset union of the two factor lists.
  std::vector<char> matched(den_.size(), 0);
  std::vector<RatioFactor> extra;
  for (const auto& f : o.den_) {
    bool found = false;
    for (size_t i = 0; i < den_.size(); ++i) {
      if (!matched[i] && den_[i].a == f.a && den_[i].b == f.b &&
          den_[i].c == f.c) {
        matched[i] = 1;
        found = true;
        break;
      }
    }
    if (!found) extra.push_back(f);
  }
  ZPoly na = num_;
  for (const auto& f : extra) na *= ratio_binomial(ring(), rank(), f.a, f.b, f.c);
  ZPoly nb = o.num_;
  for (size_t i = 0; i < den_.size(); ++i)
    if (!matched[i])
      nb *= ratio_binomial(ring(), rank(), den_[i].a, den_[i].b, den_[i].c);
  std::vector<RatioFactor> merged = den_;
  merged.insert(merged.end(), extra.begin(), extra.end());
  return FSeriesElement(na + nb, std::move(merged));
}

FSeriesElement FSeriesElement::operator-(const FSeriesElement& o) const {
  return *this + o * Scalar(o.ring(), -1);
}

FSeriesElement FSeriesElement::operator*(const Scalar& c) const {
  return FSeriesElement(num_ * c, den_);
}

FSeriesElement FSeriesElement::operator*(const FSeriesElement& o) const {
  if (rank() != o.rank())
    throw std::invalid_argument("pointwise product needs equal ranks");
  std::vector<RatioFactor> den = den_;
  den.insert(den.end(), o.den_.begin(), o.den_.end());
  return FSeriesElement(num_ * o.num_, std::move(den));
}

bool FSeriesElement::operator==(const FSeriesElement& o) const {
  if (rank() != o.rank()) return false;
  return num_ * o.den_cleared() == o.num_ * den_cleared();
}

std::string FSeriesElement::to_string() const {
  std::ostringstream os;
  os << num_.to_string();
  for (const auto& f : den_)
    os << " / (1 - (" << f.c.to_string() << ")*z_" << f.a + 1 << "/z_"
       << f.b + 1 << ")";
  return os.str();
}

FSeriesElement fshuffle_mul(const FactoredKernel& h, const FSeriesElement& a,
                            const FSeriesElement& b) {
  const int r = a.rank(), s = b.rank();
  const RingPtr& ring = h.ring;
  if (r == 0) return b * a.num().coeff(zero_zexp());
  if (s == 0) return a * b.num().coeff(zero_zexp());
  if (r + s > 4)
    throw std::invalid_argument("series shuffle products stop at rank 4");
  FSeriesElement total(ZPoly(ring, r + s));
  ZPoly ab = a.num().embedded(r + s, 0) * b.num().embedded(r + s, r);
  for (const auto& perm : block_shuffles(r, s)) {
    ZPoly num = ab.permuted(perm);
    std::vector<RatioFactor> den;
    for (const auto& f : a.den())
      den.push_back({perm[f.a], perm[f.b], f.c});
    for (const auto& f : b.den())
      den.push_back({perm[r + f.a], perm[r + f.b], f.c});
    // One kernel factor h(z_i/z_j) per inversion of the shuffle: i a
    // second-block value, j a first-block value, i < j.
    for (int t1 = 0; t1 < r; ++t1) {
      for (int t2 = r; t2 < r + s; ++t2) {
        int j = perm[t1], i = perm[t2];
        if (i > j) continue;
        num = num * h.scale;
        if (h.a != 0) {
          ZExp sh = zero_zexp();
          sh[i] = static_cast<int16_t>(h.a);
          sh[j] = static_cast<int16_t>(-h.a);
          num = num.shifted(sh);
        }
        for (const Scalar& c : h.num_c)
          num *= ratio_binomial(ring, r + s, i, j, c);
        for (const Scalar& c : h.den_c) den.push_back({i, j, c});
      }
    }
    total = total + FSeriesElement(std::move(num), std::move(den));
  }
  return total;
}

FSeriesElement fshuffle_monomials(const FactoredKernel& h, RingPtr ring,
                                  const std::vector<int>& d) {
  FSeriesElement acc = FSeriesElement::one(ring);
  for (int di : d)
    acc = fshuffle_mul(h, acc, FSeriesElement::monomial(ring, {di}));
  return acc;
}

FSeriesElement series_embed(const ShuffleElement& a, const Kernel& g) {
  const int r = a.rank();
  const RingPtr& ring = g.ring;
  ZPoly num = a.payload();
  std::vector<RatioFactor> den;
  int pairs = r * (r - 1) / 2;
  if (!g.scale.is_one()) num = num * g.scale.inverse().pow(pairs);
  for (int i = 0; i < r; ++i) {
    for (int j = i + 1; j < r; ++j) {
      if (g.a != 0) {
        ZExp sh = zero_zexp();
        sh[i] = static_cast<int16_t>(-g.a);
        sh[j] = static_cast<int16_t>(g.a);
        num = num.shifted(sh);
      }
      for (const Scalar& c : g.plus) den.push_back({i, j, c});
      for (const Scalar& c : g.minus) den.push_back({j, i, c});
      if (g.den == Kernel::Den::kZ)
        num *= ratio_binomial(ring, r, i, j, Scalar(ring, 1));
      if (g.den == Kernel::Den::kZInv)
        num *= ratio_binomial(ring, r, j, i, Scalar(ring, 1));
    }
  }
  return FSeriesElement(std::move(num), std::move(den));
}

ZPoly expand_window(const FSeriesElement& f, const std::vector<int>& lo,
                    const std::vector<int>& hi) {
  const int r = f.rank();
  if (static_cast<int>(lo.size()) != r || static_cast<int>(hi.size()) != r)
    throw std::invalid_argument("window bounds must match the rank");
  for (int i = 0; i < r; ++i)
    if (lo[i] > hi[i]) throw std::invalid_argument("empty window");
  const RingPtr& ring = f.ring();

  // Rewrite every factor into the small-ratio cone.  A factor against
  // the cone contributes the prefactor -(c z_a/z_b)^-1 and a geometric
  // series in the reciprocal ratio.
  struct ConeFactor {
    int s, t;
    Scalar gamma;
  };
  std::vector<ConeFactor> cone;
  ZExp pre = zero_zexp();
  Scalar prescale(ring, 1);
  for (const auto& fac : f.den()) {
    if (fac.a < fac.b) {
      cone.push_back({fac.a, fac.b, fac.c});
    } else {
      Scalar ci = fac.c.inverse();
      prescale = prescale * (-ci);
      pre[fac.b] += 1;
      pre[fac.a] -= 1;
      cone.push_back({fac.b, fac.a, ci});
    }
  }

  // Every cone step adds to some proper prefix sum of the exponent and
  // leaves the total fixed, so prefix sums of hi bound the search.
  std::vector<long> cap_prefix(std::max(r - 1, 0), 0);
  long losum = 0, hisum = 0, run = 0;
  for (int i = 0; i < r; ++i) {
    losum += lo[i];
    hisum += hi[i];
    if (i < r - 1) {
      run += hi[i];
      cap_prefix[i] = run;
    }
  }

  ZPoly out(ring, r);
  std::vector<long> e(r, 0);
  std::function<void(size_t, const Scalar&)> walk = [&](size_t idx,
                                                        const Scalar& coef) {
    if (idx == cone.size()) {
      for (int i = 0; i < r; ++i)
        if (e[i] < lo[i] || e[i] > hi[i]) return;
      ZExp key = zero_zexp();
      for (int i = 0; i < r; ++i) key[i] = static_cast<int16_t>(e[i]);
      out.add_term(key, coef);
      return;
    }
    const auto& cf = cone[idx];
    long cap = std::numeric_limits<long>::max();
    long prefix = 0;
    for (int m = 0; m < cf.t; ++m) {
      prefix += e[m];
      if (m >= cf.s) cap = std::min(cap, cap_prefix[m] - prefix);
    }
    if (cap < 0) return;
    Scalar c = coef;
    for (long k = 0;; ++k) {
      walk(idx + 1, c);
      if (k == cap) break;
      c = c * cf.gamma;
      ++e[cf.s];
      --e[cf.t];
    }
    e[cf.s] -= cap;
    e[cf.t] += cap;
  };

  for (const auto& [exp, c] : f.num().terms()) {
    long total = 0;
    for (int i = 0; i < r; ++i) {
      e[i] = exp[i] + pre[i];
      total += e[i];
    }
    if (total < losum || total > hisum) continue;
    bool feasible = true;
    long prefix = 0;
    for (int m = 0; m < r - 1; ++m) {
      prefix += e[m];
      if (prefix > cap_prefix[m]) {
        feasible = false;
        break;
      }
    }
    if (!feasible) continue;
    walk(0, c * prescale);
  }
  return out;
}

std::map<SplitKey, Scalar> split_after(const ZPoly& table, int s) {
  const int r = table.rank();
  if (s < 0 || s > r) throw std::invalid_argument("split point out of range");
  std::map<SplitKey, Scalar> out;
  for (const auto& [exp, c] : table.terms()) {
    std::vector<int> left(exp.begin(), exp.begin() + s);
    std::vector<int> right(exp.begin() + s, exp.begin() + r);
    out.emplace(SplitKey{std::move(left), std::move(right)}, c);
  }
  return out;
}

}  // namespace curvehall
