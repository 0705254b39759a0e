#include "curvehall/flatpoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace curvehall {

namespace {

void check_byte(int v) {
  if (v < 0 || v > 255)
    throw std::overflow_error("packed exponent out of byte range");
}

// Extracts the (coefficient, monomial exponent) pair of a scalar that is an
// integer multiple of a single monomial; throws otherwise.
void monomial_parts(const Scalar& s, mpz_class& c, Exp& e) {
  if (s.den().size() != 1)
    throw std::invalid_argument("packed engine needs monomial scalars");
  const auto& [ed, cd] = *s.den().begin();
  if (s.num().empty()) {
    c = 0;
    e = zero_exp();
    return;
  }
  if (s.num().size() != 1)
    throw std::invalid_argument("packed engine needs monomial scalars");
  const auto& [en, cn] = *s.num().begin();
  mpz_class q, r;
  mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
  if (r != 0) throw std::invalid_argument("packed engine needs integer coefficients");
  c = q;
  for (int i = 0; i < kMaxSymbols; ++i) e[i] = static_cast<int16_t>(en[i] - ed[i]);
}

}  // namespace

FlatPoly::FlatPoly(RingPtr ring, int rank) : ring_(std::move(ring)), rank_(rank) {
  if (rank_ + ring_->nsym() > kFlatBytes)
    throw std::invalid_argument("packed width exceeded");
}

void FlatPoly::set_terms(std::vector<std::pair<FKey, mpz_class>> terms) {
  for (size_t i = 1; i < terms.size(); ++i)
    if (!(terms[i - 1].first < terms[i].first))
      throw std::logic_error("terms not ascending");
  terms_ = std::move(terms);
}

std::vector<int> FlatPoly::decode(const FKey& k) const {
  std::vector<int> out(width());
  for (int i = 0; i < width(); ++i) out[i] = k.byte(i) - kBias;
  return out;
}

FKey FlatPoly::encode(const std::vector<int>& exps) const {
  FKey k;
  for (int i = 0; i < kFlatBytes; ++i) k.set_byte(i, kBias);
  for (int i = 0; i < width(); ++i) {
    check_byte(exps[i] + kBias);
    k.set_byte(i, exps[i] + kBias);
  }
  return k;
}

namespace {

std::vector<std::pair<FKey, mpz_class>> merge_terms(
    const std::vector<std::pair<FKey, mpz_class>>& a,
    const std::vector<std::pair<FKey, mpz_class>>& b) {
  std::vector<std::pair<FKey, mpz_class>> out;
  out.reserve(a.size() + b.size());
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first) {
      out.push_back(a[i++]);
    } else if (b[j].first < a[i].first) {
      out.push_back(b[j++]);
    } else {
      mpz_class c = a[i].second + b[j].second;
      if (c != 0) out.emplace_back(a[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

}  // namespace

FlatPoly FlatPoly::operator+(const FlatPoly& o) const {
  FlatPoly out(ring_, rank_);
  out.terms_ = merge_terms(terms_, o.terms_);
  return out;
}

FlatPoly FlatPoly::operator-(const FlatPoly& o) const {
  FlatPoly neg = o;
  for (auto& [k, c] : neg.terms_) c = -c;
  return *this + neg;
}

bool FlatPoly::operator==(const FlatPoly& o) const { return terms_ == o.terms_; }

FlatPoly FlatPoly::shifted(const std::vector<int>& shift, const mpz_class& c) const {
  FlatPoly out(ring_, rank_);
  if (c == 0) return out;
  out.terms_.reserve(terms_.size());
  for (const auto& [k, coef] : terms_) {
    FKey nk = k;
    for (int i = 0; i < width(); ++i) {
      if (shift[i] == 0) continue;
      int v = nk.byte(i) + shift[i];
      check_byte(v);
      nk.set_byte(i, v);
    }
    out.terms_.emplace_back(nk, coef * c);
  }
  return out;
}

FlatPoly FlatPoly::mul_binomial(int i, int j, const Scalar& c) const {
  mpz_class cc;
  Exp ce;
  monomial_parts(c, cc, ce);
  std::vector<int> si(width(), 0), sj(width(), 0);
  si[i] = 1;
  sj[j] = 1;
  for (int t = 0; t < ring_->nsym(); ++t) sj[rank_ + t] += ce[t];
  return shifted(si) - shifted(sj, cc);
}

FlatPoly flatten(const ZPoly& p, mpz_class& denom) {
  FlatPoly out(p.ring(), p.rank());
  const Ring& ring = *p.ring();
  denom = 1;
  std::vector<std::pair<FKey, mpz_class>> raw;
  std::vector<mpz_class> dens;
  std::vector<std::pair<std::vector<int>, mpz_class>> pre;
  for (const auto& [ze, sc] : p.terms()) {
    const SymPoly& d = sc.den();
    if (d.size() != 1)
      throw std::invalid_argument("packed engine needs monomial denominators");
    const Exp& ed = d.begin()->first;
    const mpz_class& cd = d.begin()->second;
    for (const auto& [en, cn] : sc.num()) {
      std::vector<int> exps(out.width());
      for (int i = 0; i < p.rank(); ++i) exps[i] = ze[i];
      for (int t = 0; t < ring.nsym(); ++t)
        exps[p.rank() + t] = en[t] - ed[t];
      pre.emplace_back(std::move(exps), cn);
      dens.push_back(cd);
      mpz_lcm(denom.get_mpz_t(), denom.get_mpz_t(), cd.get_mpz_t());
    }
  }
  for (size_t t = 0; t < pre.size(); ++t) {
    mpz_class scale = denom / dens[t];
    raw.emplace_back(out.encode(pre[t].first), pre[t].second * scale);
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<FKey, mpz_class>> packed;
  for (auto& [k, c] : raw) {
    if (!packed.empty() && packed.back().first == k)
      packed.back().second += c;
    else
      packed.emplace_back(k, std::move(c));
  }
  std::erase_if(packed, [](const auto& t) { return t.second == 0; });
  out.set_terms(std::move(packed));
  return out;
}

ZPoly unflatten(const FlatPoly& f, const mpz_class& denom) {
  ZPoly out(f.ring(), f.rank());
  const Ring& ring = *f.ring();
  SymPoly den;
  den.emplace(zero_exp(), denom);
  const auto& ts = f.terms();
  const int r = f.rank();
  // z bytes lead the key, so terms sharing a z exponent are contiguous;
  // building each coefficient in one pass avoids quadratic scalar sums.
  size_t pos = 0;
  while (pos < ts.size()) {
    size_t end = pos;
    while (end < ts.size()) {
      bool same = true;
      for (int i = 0; i < r && same; ++i)
        same = ts[end].first.byte(i) == ts[pos].first.byte(i);
      if (!same) break;
      ++end;
    }
    ZExp ze = zero_zexp();
    for (int i = 0; i < r; ++i)
      ze[i] = static_cast<int16_t>(ts[pos].first.byte(i) - kBias);
    SymPoly num;
    for (size_t t = pos; t < end; ++t) {
      Exp se = zero_exp();
      for (int s = 0; s < ring.nsym(); ++s)
        se[s] = static_cast<int16_t>(ts[t].first.byte(r + s) - kBias);
      ring.normalize(se);
      num[se] += ts[t].second;  // square-root folding may merge keys
    }
    std::erase_if(num, [](const auto& m) { return m.second == 0; });
    if (!num.empty())
      out.add_term(ze, Scalar(f.ring(), std::move(num), den));
    pos = end;
  }
  return out;
}

namespace {

std::vector<std::pair<FKey, mpz_class>> permute_terms(
    const FlatPoly& p, const std::vector<int>& perm, bool negate) {
  std::vector<std::pair<FKey, mpz_class>> out;
  out.reserve(p.size());
  int r = p.rank();
  for (const auto& [k, c] : p.terms()) {
    FKey nk = k;
    for (int i = 0; i < r; ++i) nk.set_byte(perm[i], k.byte(i));
    out.emplace_back(nk, negate ? -c : c);
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return out;
}

}  // namespace

FlatPoly antisymmetrize_packed(const FlatPoly& p, bool parallel) {
  const auto perms = all_permutations(p.rank());
  const int n = static_cast<int>(perms.size());
  std::vector<std::vector<std::pair<FKey, mpz_class>>> parts(n);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) if (parallel)
#endif
  for (int t = 0; t < n; ++t)
    parts[t] = permute_terms(p, perms[t], permutation_sign(perms[t]) < 0);
  (void)parallel;
  // Fixed-order pairwise reduction: result independent of thread count.
  while (parts.size() > 1) {
    std::vector<std::vector<std::pair<FKey, mpz_class>>> next;
    for (size_t t = 0; t + 1 < parts.size(); t += 2)
      next.push_back(merge_terms(parts[t], parts[t + 1]));
    if (parts.size() % 2) next.push_back(std::move(parts.back()));
    parts = std::move(next);
  }
  FlatPoly out(p.ring(), p.rank());
  out.set_terms(std::move(parts[0]));
  return out;
}

namespace {

// Synthetic division of one group (fixed spectator bytes, byte_i strictly
// descending) by (u - 1): the quotient coefficient at exponent e-1 is the
// sum of all P_{e'} with e' > e-1.  Returns false if the group leaves a
// remainder, with the offending carry in `bad`.
bool divide_group(const std::vector<std::pair<FKey, mpz_class>>& terms,
                  size_t pos, size_t end, int i,
                  std::vector<std::pair<FKey, mpz_class>>& quot,
                  mpz_class& bad) {
  mpz_class carry = 0;
  for (size_t t = pos; t < end; ++t) {
    int e = terms[t].first.byte(i) - kBias;
    carry += terms[t].second;
    if (t + 1 == end) {
      if (carry != 0) {
        bad = carry;
        return false;
      }
      break;
    }
    if (carry == 0) continue;
    int next_e = terms[t + 1].first.byte(i) - kBias;
    for (int f = e - 1; f >= next_e; --f) {
      FKey qk = terms[t].first;
      check_byte(f + kBias);
      qk.set_byte(i, f + kBias);
      quot.emplace_back(qk, carry);
    }
  }
  return true;
}

// Divides by (x_i - x_j) in place.  Works in the substituted coordinates
// u = x_i / x_j, where x_i - x_j = x_j (u - 1): the u-synthetic division
// never touches the spectator bytes, so the groups are independent and the
// parallel variant farms them out, concatenating in group order.
std::vector<std::pair<FKey, mpz_class>> divide_pair(
    std::vector<std::pair<FKey, mpz_class>> terms, int i, int j,
    bool parallel) {
  // Remap to u coordinates: byte_j += byte_i - bias, then undo the x_j of
  // x_j (u - 1): byte_j -= 1.
  for (auto& [k, c] : terms) {
    int bj = k.byte(j) + k.byte(i) - kBias - 1;
    check_byte(bj);
    k.set_byte(j, bj);
  }
  // Sort: spectator bytes ascending, byte_i descending.
  auto mask_key = [i](const FKey& k) {
    FKey m = k;
    m.set_byte(i, 0);
    return m;
  };
  std::sort(terms.begin(), terms.end(), [&](const auto& a, const auto& b) {
    FKey ma = mask_key(a.first), mb = mask_key(b.first);
    if (!(ma == mb)) return ma < mb;
    return a.first.byte(i) > b.first.byte(i);
  });
  std::vector<size_t> starts;
  for (size_t pos = 0; pos < terms.size();) {
    starts.push_back(pos);
    size_t end = pos;
    FKey group = mask_key(terms[pos].first);
    while (end < terms.size() && mask_key(terms[end].first) == group) ++end;
    pos = end;
  }
  starts.push_back(terms.size());
  const int ngroups = static_cast<int>(starts.size()) - 1;
  std::vector<std::vector<std::pair<FKey, mpz_class>>> parts(ngroups);
  std::vector<char> ok(ngroups, 1);
  std::vector<mpz_class> bad(ngroups);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 64) if (parallel)
#endif
  for (int t = 0; t < ngroups; ++t)
    ok[t] = divide_group(terms, starts[t], starts[t + 1], i, parts[t], bad[t])
                ? 1
                : 0;
  (void)parallel;
  for (int t = 0; t < ngroups; ++t) {
    if (ok[t]) continue;
    std::ostringstream os;
    os << "pair division leaves remainder " << bad[t].get_str() << " in pair ("
       << i + 1 << "," << j + 1 << ")";
    throw DivisionError(os.str());
  }
  size_t total = 0;
  for (const auto& p : parts) total += p.size();
  std::vector<std::pair<FKey, mpz_class>> quot;
  quot.reserve(total);
  for (auto& p : parts)
    for (auto& t : p) quot.push_back(std::move(t));
  // Undo the coordinate substitution: byte_j -= byte_i - bias.
  for (auto& [k, c] : quot) {
    int bj = k.byte(j) - (k.byte(i) - kBias);
    check_byte(bj);
    k.set_byte(j, bj);
  }
  std::sort(quot.begin(), quot.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return quot;
}

}  // namespace

FlatPoly divide_vandermonde(const FlatPoly& p) {
  auto terms = p.terms();
  for (int i = 0; i < p.rank(); ++i)
    for (int j = i + 1; j < p.rank(); ++j)
      terms = divide_pair(std::move(terms), i, j, false);
  FlatPoly out(p.ring(), p.rank());
  out.set_terms(std::move(terms));
  return out;
}

FlatPoly divided_difference(const FlatPoly& f, int i, bool parallel) {
  std::vector<int> swap_perm(f.rank());
  std::iota(swap_perm.begin(), swap_perm.end(), 0);
  std::swap(swap_perm[i], swap_perm[i + 1]);
  auto terms = merge_terms(f.terms(), permute_terms(f, swap_perm, true));
  terms = divide_pair(std::move(terms), i, i + 1, parallel);
  FlatPoly out(f.ring(), f.rank());
  out.set_terms(std::move(terms));
  return out;
}

FlatPoly antisym_quotient(const FlatPoly& f, bool parallel) {
  // Staircase reduced word of the longest permutation, applied rightmost
  // letter first; each divided difference lowers the degree, so the chain
  // shrinks toward the quotient instead of materializing the signed orbit.
  FlatPoly out = f;
  const int r = f.rank();
  for (int k = r - 1; k >= 1; --k)
    for (int i = 1; i <= k; ++i) out = divided_difference(out, i - 1, parallel);
  return out;
}

ZPoly psi_packed(const ZPoly& payload, const PairKernel& pk, bool parallel) {
  const int r = payload.rank();
  RingPtr ring = payload.ring();
  if (r == 0) return payload;
  if (r == 1) return payload;
  mpz_class denom;
  FlatPoly f = flatten(payload, denom);
  // One payload monomial at a time, one variable at a time.  The cross
  // factor G_k = (x_1 .. x_{k-1})^p x_k^{q(k-1)+d_k} prod_{i<k} prod_b
  // (x_i - b x_k) is symmetric in the first k-1 variables, so the longest
  // word factors as w0(k) = (s_1 .. s_{k-1}) w0(k-1) and
  //   Q_k = d_1 .. d_{k-1} applied to (Q_{k-1} * G_k),
  // with Q_1 = x_1^{d_1}.  Intermediates stay near the quotient size
  // instead of the full pair-product size.
  FlatPoly acc(ring, r);
  for (const auto& [key, coef] : f.terms()) {
    std::vector<int> e = f.decode(key);
    FKey start = key;
    for (int j = 1; j < r; ++j) start.set_byte(j, kBias);
    FlatPoly q(ring, r);
    q.set_terms({{start, coef}});
    for (int k = 2; k <= r; ++k) {
      std::vector<int> shift(f.width(), 0);
      for (int i = 0; i < k - 1; ++i) shift[i] = pk.p;
      shift[k - 1] = pk.q * (k - 1) + e[k - 1];
      q = q.shifted(shift);
      for (int i = 0; i < k - 1; ++i)
        for (const Scalar& b : pk.betas) q = q.mul_binomial(i, k - 1, b);
      for (int i = k - 2; i >= 0; --i) q = divided_difference(q, i, parallel);
    }
    acc = acc + q;
  }
  ZPoly out = unflatten(acc, denom);
  return out * pk.c.pow(r * (r - 1) / 2);
}

}  // namespace curvehall
