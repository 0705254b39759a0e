#include "curvehall/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace curvehall {

ZPoly::ZPoly(RingPtr ring, int rank) : ring_(std::move(ring)), rank_(rank) {
  if (rank < 0 || rank > kMaxVars) throw std::invalid_argument("rank");
}

ZPoly ZPoly::monomial(RingPtr ring, int rank, const ZExp& e, const Scalar& c) {
  ZPoly p(std::move(ring), rank);
  p.add_term(e, c);
  return p;
}

ZPoly ZPoly::var(RingPtr ring, int rank, int i, int power) {
  if (i < 0 || i >= rank) throw std::invalid_argument("variable index");
  ZExp e = zero_zexp();
  e[i] = static_cast<int16_t>(power);
  Scalar one(ring, 1);
  return monomial(std::move(ring), rank, e, one);
}

ZPoly ZPoly::constant(RingPtr ring, int rank, const Scalar& c) {
  return monomial(std::move(ring), rank, zero_zexp(), c);
}

void ZPoly::add_term(const ZExp& e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Scalar ZPoly::coeff(const ZExp& e) const {
  auto it = terms_.find(e);
  if (it == terms_.end()) return Scalar(ring_, 0);
  return it->second;
}

ZPoly ZPoly::operator+(const ZPoly& o) const {
  ZPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, c);
  return out;
}

ZPoly ZPoly::operator-(const ZPoly& o) const {
  ZPoly out = *this;
  for (const auto& [e, c] : o.terms_) out.add_term(e, -c);
  return out;
}

ZPoly ZPoly::operator-() const {
  ZPoly out(ring_, rank_);
  for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
  return out;
}

ZPoly ZPoly::operator*(const ZPoly& o) const {
  ZPoly out(ring_, std::max(rank_, o.rank_));
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      ZExp e;
      for (int i = 0; i < kMaxVars; ++i)
        e[i] = static_cast<int16_t>(ea[i] + eb[i]);
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

ZPoly ZPoly::operator*(const Scalar& c) const {
  ZPoly out(ring_, rank_);
  if (c.is_zero()) return out;
  for (const auto& [e, cc] : terms_) out.terms_.emplace(e, cc * c);
  return out;
}

bool ZPoly::operator==(const ZPoly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = terms_.begin();
  auto jt = o.terms_.begin();
  for (; it != terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (it->second != jt->second) return false;
  }
  return true;
}

ZPoly ZPoly::permuted(const std::vector<int>& perm) const {
  ZPoly out(ring_, rank_);
  for (const auto& [e, c] : terms_) {
    ZExp p = zero_zexp();
    for (int i = 0; i < rank_; ++i) p[perm[i]] = e[i];
    out.add_term(p, c);
  }
  return out;
}

ZPoly ZPoly::shifted(const ZExp& shift) const {
  ZPoly out(ring_, rank_);
  for (const auto& [e, c] : terms_) {
    ZExp s;
    for (int i = 0; i < kMaxVars; ++i)
      s[i] = static_cast<int16_t>(e[i] + shift[i]);
    out.terms_.emplace(s, c);
  }
  return out;
}

ZPoly ZPoly::embedded(int new_rank, int offset) const {
  ZPoly out(ring_, new_rank);
  for (const auto& [e, c] : terms_) {
    ZExp s = zero_zexp();
    for (int i = 0; i < rank_; ++i) s[i + offset] = e[i];
    out.terms_.emplace(s, c);
  }
  return out;
}

ZPoly ZPoly::substituted(int new_rank, const std::vector<Scalar>& coeffs,
                         const std::vector<ZExp>& images) const {
  ZPoly out(ring_, new_rank);
  for (const auto& [e, c] : terms_) {
    ZExp s = zero_zexp();
    Scalar sc = c;
    for (int i = 0; i < rank_; ++i) {
      if (e[i] == 0) continue;
      for (int j = 0; j < kMaxVars; ++j)
        s[j] = static_cast<int16_t>(s[j] + e[i] * images[i][j]);
      sc *= coeffs[i].pow(e[i]);
    }
    out.add_term(s, sc);
  }
  return out;
}

bool ZPoly::is_symmetric() const {
  if (rank_ <= 1) return true;
  // Transpositions of adjacent variables generate the symmetric group.
  for (int i = 0; i + 1 < rank_; ++i) {
    std::vector<int> perm(rank_);
    std::iota(perm.begin(), perm.end(), 0);
    std::swap(perm[i], perm[i + 1]);
    if (!(permuted(perm) == *this)) return false;
  }
  return true;
}

std::string ZPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) os << " + ";
    first = false;
    std::ostringstream mono;
    bool any = false;
    for (int i = 0; i < rank_; ++i) {
      if (it->first[i] == 0) continue;
      if (any) mono << "*";
      mono << "z" << (i + 1);
      if (it->first[i] != 1) mono << "^" << it->first[i];
      any = true;
    }
    os << "(" << it->second.to_string() << ")";
    if (any) os << "*" << mono.str();
  }
  return os.str();
}

std::vector<std::vector<int>> all_permutations(int n) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

int inversion_count(const std::vector<int>& perm) {
  int inv = 0;
  for (size_t i = 0; i < perm.size(); ++i)
    for (size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) ++inv;
  return inv;
}

int permutation_sign(const std::vector<int>& perm) {
  return inversion_count(perm) % 2 == 0 ? 1 : -1;
}

ZPoly antisymmetrize(const ZPoly& p) {
  ZPoly out(p.ring(), p.rank());
  for (const auto& perm : all_permutations(p.rank())) {
    ZPoly t = p.permuted(perm);
    if (permutation_sign(perm) < 0)
      out -= t;
    else
      out += t;
  }
  return out;
}

ZPoly symmetrize(const ZPoly& p) {
  ZPoly out(p.ring(), p.rank());
  for (const auto& perm : all_permutations(p.rank())) out += p.permuted(perm);
  return out;
}

ZPoly vandermonde(RingPtr ring, int rank) {
  ZPoly out = ZPoly::constant(ring, rank, Scalar(ring, 1));
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j)
      out *= ZPoly::var(ring, rank, i) - ZPoly::var(ring, rank, j);
  return out;
}

ZPoly divide_exact(const ZPoly& num, const ZPoly& den) {
  if (den.is_zero()) throw DivisionError("division by zero polynomial");
  ZPoly quot(num.ring(), num.rank());
  if (num.is_zero()) return quot;
  // Shift to nonnegative exponents; divisibility is unchanged and the
  // graded-lex order on natural exponents is well founded.
  ZExp mn = zero_zexp(), md = zero_zexp();
  bool first = true;
  for (const auto& [e, c] : num.terms()) {
    if (first) mn = e;
    for (int i = 0; i < kMaxVars; ++i) mn[i] = std::min(mn[i], e[i]);
    first = false;
  }
  first = true;
  for (const auto& [e, c] : den.terms()) {
    if (first) md = e;
    for (int i = 0; i < kMaxVars; ++i) md[i] = std::min(md[i], e[i]);
    first = false;
  }
  ZExp neg_mn, neg_md, unshift;
  for (int i = 0; i < kMaxVars; ++i) {
    neg_mn[i] = static_cast<int16_t>(-mn[i]);
    neg_md[i] = static_cast<int16_t>(-md[i]);
    unshift[i] = static_cast<int16_t>(mn[i] - md[i]);
  }
  ZPoly p = num.shifted(neg_mn);
  ZPoly d = den.shifted(neg_md);
  const auto& lead_d = *d.terms().rbegin();
  std::map<ZExp, Scalar, ZExpGradedLess> q;
  while (!p.is_zero()) {
    const auto& lead_p = *p.terms().rbegin();
    ZExp eq;
    for (int i = 0; i < kMaxVars; ++i) {
      int diff = lead_p.first[i] - lead_d.first[i];
      if (diff < 0) {
        throw DivisionError("not divisible; remainder term (" +
                            lead_p.second.to_string() + ") * z^" +
                            [&] {
                              std::ostringstream os;
                              for (int k = 0; k < num.rank(); ++k)
                                os << (k ? "," : "(") << lead_p.first[k] + mn[k];
                              os << ")";
                              return os.str();
                            }());
      }
      eq[i] = static_cast<int16_t>(diff);
    }
    Scalar cq = lead_p.second / lead_d.second;
    q.emplace(eq, cq);
    p -= d * ZPoly::monomial(num.ring(), num.rank(), eq, cq);
  }
  for (const auto& [e, c] : q) {
    ZExp s;
    for (int i = 0; i < kMaxVars; ++i)
      s[i] = static_cast<int16_t>(e[i] + unshift[i]);
    quot.add_term(s, c);
  }
  return quot;
}

}  // namespace curvehall
