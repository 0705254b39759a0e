#include "curvehall/ring.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

namespace curvehall {

std::shared_ptr<const Ring> Ring::curve(int genus) {
  if (genus < 0 || genus + 1 > kMaxSymbols)
    throw std::invalid_argument("genus out of range");
  std::vector<std::string> names = {"v"};
  std::vector<int> weights = {1};
  for (int i = 1; i <= genus; ++i) {
    names.push_back("a" + std::to_string(i));
    weights.push_back(-1);
  }
  return make(std::move(names), std::move(weights), {}, genus);
}

std::shared_ptr<const Ring> Ring::make(std::vector<std::string> names,
                                       std::vector<int> weights,
                                       std::vector<SqrtRule> roots,
                                       int genus) {
  if (names.size() != weights.size() || names.size() > kMaxSymbols)
    throw std::invalid_argument("bad symbol table");
  auto r = std::make_shared<Ring>();
  r->names_ = std::move(names);
  r->weights_ = std::move(weights);
  r->roots_ = std::move(roots);
  r->genus_ = genus;
  return r;
}

void Ring::normalize(Exp& e) const {
  for (const SqrtRule& rule : roots_) {
    int16_t p = e[rule.sym];
    if (p == 0 || p == 1) continue;
    // s^(2k+r) = square^k * s^r with r in {0,1}; floor division handles
    // negative powers.
    int k = (p >= 0) ? p / 2 : -((-p + 1) / 2);
    int rem = p - 2 * k;
    e[rule.sym] = static_cast<int16_t>(rem);
    for (int i = 0; i < nsym(); ++i)
      e[i] = static_cast<int16_t>(e[i] + k * rule.square[i]);
  }
}

SymPoly sym_add(const SymPoly& a, const SymPoly& b) {
  SymPoly out = a;
  for (const auto& [e, c] : b) {
    auto it = out.find(e);
    if (it == out.end()) {
      out.emplace(e, c);
    } else {
      it->second += c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

SymPoly sym_neg(const SymPoly& a) {
  SymPoly out;
  for (const auto& [e, c] : a) out.emplace(e, -c);
  return out;
}

SymPoly sym_sub(const SymPoly& a, const SymPoly& b) { return sym_add(a, sym_neg(b)); }

SymPoly sym_mul_term(const Ring& ring, const SymPoly& a, const Exp& e,
                     const mpz_class& c) {
  SymPoly out;
  if (c == 0) return out;
  for (const auto& [ea, ca] : a) {
    Exp s;
    for (int i = 0; i < kMaxSymbols; ++i)
      s[i] = static_cast<int16_t>(ea[i] + e[i]);
    ring.normalize(s);
    auto it = out.find(s);
    if (it == out.end()) {
      out.emplace(s, ca * c);
    } else {
      it->second += ca * c;
      if (it->second == 0) out.erase(it);
    }
  }
  return out;
}

SymPoly sym_mul(const Ring& ring, const SymPoly& a, const SymPoly& b) {
  SymPoly out;
  const SymPoly& small = a.size() <= b.size() ? a : b;
  const SymPoly& big = a.size() <= b.size() ? b : a;
  for (const auto& [e, c] : small) {
    for (const auto& [eb, cb] : big) {
      Exp s;
      for (int i = 0; i < kMaxSymbols; ++i)
        s[i] = static_cast<int16_t>(e[i] + eb[i]);
      ring.normalize(s);
      auto it = out.find(s);
      if (it == out.end()) {
        out.emplace(s, c * cb);
      } else {
        it->second += c * cb;
        if (it->second == 0) out.erase(it);
      }
    }
  }
  return out;
}

mpz_class sym_content(const SymPoly& a) {
  mpz_class g = 0;
  for (const auto& [e, c] : a) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

Exp sym_min_exp(const SymPoly& a) {
  Exp m = zero_exp();
  bool first = true;
  for (const auto& [e, c] : a) {
    if (first) {
      m = e;
      first = false;
    } else {
      for (int i = 0; i < kMaxSymbols; ++i) m[i] = std::min(m[i], e[i]);
    }
  }
  return m;
}

bool sym_divide(const Ring& ring, const SymPoly& num, const SymPoly& den,
                SymPoly& quot) {
  quot.clear();
  if (den.empty()) return false;
  if (num.empty()) return true;
  // Shift both to ordinary polynomials; divisibility is unaffected.
  Exp mn = sym_min_exp(num), md = sym_min_exp(den);
  Exp shift_n, shift_q;
  for (int i = 0; i < kMaxSymbols; ++i) {
    shift_n[i] = static_cast<int16_t>(-mn[i]);
    shift_q[i] = static_cast<int16_t>(mn[i] - md[i]);
  }
  // Square-root symbols would re-normalize under shifting and break the
  // nonnegativity argument, so bail out to "not divisible" when present
  // with nontrivial exponents; callers treat that as an unreduced fraction.
  for (const SqrtRule& rule : ring.roots()) {
    if (mn[rule.sym] != 0 || md[rule.sym] != 0) return false;
  }
  SymPoly p;
  for (const auto& [e, c] : num) {
    Exp s;
    for (int i = 0; i < kMaxSymbols; ++i)
      s[i] = static_cast<int16_t>(e[i] - mn[i]);
    p.emplace(s, c);
  }
  SymPoly d;
  for (const auto& [e, c] : den) {
    Exp s;
    for (int i = 0; i < kMaxSymbols; ++i)
      s[i] = static_cast<int16_t>(e[i] - md[i]);
    d.emplace(s, c);
  }
  // Ordinary multivariate division: if den | num then the graded-lex lead
  // of den divides the lead of num at every step.
  const auto& [ed, cd] = *d.rbegin();
  SymPoly q;
  while (!p.empty()) {
    const auto& [ep, cp] = *p.rbegin();
    Exp eq;
    for (int i = 0; i < kMaxSymbols; ++i) {
      int diff = ep[i] - ed[i];
      if (diff < 0) return false;
      eq[i] = static_cast<int16_t>(diff);
    }
    mpz_class cq, rem;
    mpz_tdiv_qr(cq.get_mpz_t(), rem.get_mpz_t(), cp.get_mpz_t(), cd.get_mpz_t());
    if (rem != 0) return false;
    q.emplace(eq, cq);
    p = sym_sub(p, sym_mul_term(ring, d, eq, cq));
  }
  // Unshift the quotient.
  for (const auto& [e, c] : q) {
    Exp s;
    for (int i = 0; i < kMaxSymbols; ++i)
      s[i] = static_cast<int16_t>(e[i] + shift_q[i]);
    ring.normalize(s);
    quot.emplace(s, c);
  }
  return true;
}

std::string sym_to_string(const Ring& ring, const SymPoly& a) {
  if (a.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Descending graded-lex.
  for (auto it = a.rbegin(); it != a.rend(); ++it) {
    const auto& [e, c] = *it;
    mpz_class ac = abs(c);
    if (first) {
      if (c < 0) os << "-";
      first = false;
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    bool any = false;
    std::ostringstream mono;
    for (int i = 0; i < ring.nsym(); ++i) {
      if (e[i] == 0) continue;
      if (any) mono << "*";
      mono << ring.name(i);
      if (e[i] != 1) mono << "^" << e[i];
      any = true;
    }
    if (!any) {
      os << ac.get_str();
    } else {
      if (ac != 1) os << ac.get_str() << "*";
      os << mono.str();
    }
  }
  return os.str();
}

Scalar::Scalar(RingPtr ring, long value) : ring_(std::move(ring)) {
  if (value != 0) num_.emplace(zero_exp(), value);
  den_.emplace(zero_exp(), 1);
}

Scalar::Scalar(RingPtr ring, const mpz_class& value) : ring_(std::move(ring)) {
  if (value != 0) num_.emplace(zero_exp(), value);
  den_.emplace(zero_exp(), 1);
}

Scalar::Scalar(RingPtr ring, const mpq_class& value) : ring_(std::move(ring)) {
  if (value != 0) num_.emplace(zero_exp(), value.get_num());
  den_.emplace(zero_exp(), value.get_den());
}

Scalar::Scalar(RingPtr ring, SymPoly num, SymPoly den)
    : ring_(std::move(ring)), num_(std::move(num)), den_(std::move(den)) {
  if (den_.empty()) throw std::domain_error("zero denominator");
  normalize();
}

Scalar Scalar::monomial(RingPtr ring, const Exp& e, const mpz_class& c) {
  SymPoly n;
  Exp en = e;
  ring->normalize(en);
  if (c != 0) n.emplace(en, c);
  SymPoly d;
  d.emplace(zero_exp(), 1);
  return Scalar(std::move(ring), std::move(n), std::move(d));
}

Scalar Scalar::v_pow(RingPtr ring, int k) {
  Exp e = zero_exp();
  e[0] = static_cast<int16_t>(k);
  return monomial(std::move(ring), e);
}

Scalar Scalar::q_pow(RingPtr ring, int k) { return v_pow(std::move(ring), -2 * k); }

Scalar Scalar::alpha(RingPtr ring, int i) {
  if (i < 1 || i > ring->genus()) throw std::invalid_argument("alpha index");
  Exp e = zero_exp();
  e[i] = 1;
  return monomial(std::move(ring), e);
}

Scalar Scalar::alpha_bar(RingPtr ring, int i) {
  if (i < 1 || i > ring->genus()) throw std::invalid_argument("alpha index");
  Exp e = zero_exp();
  e[0] = -2;
  e[i] = -1;
  return monomial(std::move(ring), e);
}

bool Scalar::is_one() const {
  return num_.size() == 1 && den_.size() == 1 &&
         num_.begin()->first == den_.begin()->first &&
         num_.begin()->second == den_.begin()->second;
}

void Scalar::normalize() {
  if (num_.empty()) {
    den_.clear();
    den_.emplace(zero_exp(), 1);
    return;
  }
  // Monomial shift: clear the common monomial factor of the denominator
  // (and numerator) so single-monomial denominators become trivial.
  Exp mn = sym_min_exp(num_), md = sym_min_exp(den_);
  Exp shift;
  bool nontrivial = false;
  for (int i = 0; i < kMaxSymbols; ++i) {
    shift[i] = static_cast<int16_t>(-md[i]);
    if (md[i] != 0) nontrivial = true;
  }
  (void)mn;
  if (nontrivial) {
    num_ = sym_mul_term(*ring_, num_, shift, 1);
    den_ = sym_mul_term(*ring_, den_, shift, 1);
  }
  // Integer content.
  mpz_class g;
  mpz_class gn = sym_content(num_), gd = sym_content(den_);
  mpz_gcd(g.get_mpz_t(), gn.get_mpz_t(), gd.get_mpz_t());
  if (den_.rbegin()->second < 0) g = -g;
  if (g != 1) {
    for (auto& [e, c] : num_) c /= g;
    for (auto& [e, c] : den_) c /= g;
  }
  if (den_.size() == 1 && den_.begin()->second == 1 &&
      den_.begin()->first == zero_exp())
    return;
  // Cheap exact cancellation; skipped for large denominators.
  if (den_.size() <= 64) {
    SymPoly q;
    if (sym_divide(*ring_, num_, den_, q)) {
      num_ = std::move(q);
      den_.clear();
      den_.emplace(zero_exp(), 1);
    }
  }
}

Scalar Scalar::operator+(const Scalar& o) const {
  SymPoly n = sym_add(sym_mul(*ring_, num_, o.den_), sym_mul(*ring_, o.num_, den_));
  SymPoly d = sym_mul(*ring_, den_, o.den_);
  return Scalar(ring_, std::move(n), std::move(d));
}

Scalar Scalar::operator-(const Scalar& o) const {
  SymPoly n = sym_sub(sym_mul(*ring_, num_, o.den_), sym_mul(*ring_, o.num_, den_));
  SymPoly d = sym_mul(*ring_, den_, o.den_);
  return Scalar(ring_, std::move(n), std::move(d));
}

Scalar Scalar::operator*(const Scalar& o) const {
  SymPoly n = sym_mul(*ring_, num_, o.num_);
  SymPoly d = sym_mul(*ring_, den_, o.den_);
  return Scalar(ring_, std::move(n), std::move(d));
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::operator-() const {
  Scalar out = *this;
  out.num_ = sym_neg(out.num_);
  return out;
}

Scalar Scalar::inverse() const {
  if (num_.empty()) throw std::domain_error("division by zero scalar");
  return Scalar(ring_, den_, num_);
}

Scalar Scalar::pow(int k) const {
  if (k == 0) return Scalar(ring_, 1);
  Scalar base = k > 0 ? *this : inverse();
  int n = k > 0 ? k : -k;
  Scalar out(ring_, 1);
  while (n > 0) {
    if (n & 1) out *= base;
    base = base * base;
    n >>= 1;
  }
  return out;
}

bool Scalar::operator==(const Scalar& o) const {
  return sym_mul(*ring_, num_, o.den_) == sym_mul(*ring_, o.num_, den_);
}

int Scalar::adic_degree() const {
  if (num_.empty()) throw std::domain_error("adic degree of zero");
  const Ring& r = *ring_;
  auto min_deg = [&r](const SymPoly& p) {
    int m = 0;
    bool first = true;
    for (const auto& [e, c] : p) {
      int d = r.adic_degree(e);
      if (first || d < m) m = d;
      first = false;
    }
    return m;
  };
  return min_deg(num_) - min_deg(den_);
}

mpq_class Scalar::eval(const std::vector<mpq_class>& values) const {
  if (static_cast<int>(values.size()) != ring_->nsym())
    throw std::invalid_argument("value count");
  auto eval_poly = [&](const SymPoly& p) {
    mpq_class acc = 0;
    for (const auto& [e, c] : p) {
      mpq_class term(c);
      for (int i = 0; i < ring_->nsym(); ++i) {
        if (e[i] == 0) continue;
        if (values[i] == 0) throw std::domain_error("zero specialization");
        mpz_class np = 1, dp = 1;
        mpz_class vn = values[i].get_num(), vd = values[i].get_den();
        int k = e[i] >= 0 ? e[i] : -e[i];
        for (int j = 0; j < k; ++j) {
          np *= vn;
          dp *= vd;
        }
        mpq_class p2 = e[i] >= 0 ? mpq_class(np, dp) : mpq_class(dp, np);
        p2.canonicalize();
        term *= p2;
      }
      acc += term;
    }
    return acc;
  };
  mpq_class d = eval_poly(den_);
  if (d == 0) throw std::domain_error("denominator vanishes at specialization");
  mpq_class out = eval_poly(num_) / d;
  out.canonicalize();
  return out;
}

std::string Scalar::to_string() const {
  if (den_.size() == 1 && den_.begin()->second == 1 &&
      den_.begin()->first == zero_exp())
    return sym_to_string(*ring_, num_);
  return "(" + sym_to_string(*ring_, num_) + ")/(" + sym_to_string(*ring_, den_) + ")";
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) {
  return os << s.to_string();
}

QExt QExt::operator+(const QExt& o) const { return QExt(a + o.a, b + o.b, q0); }
QExt QExt::operator-(const QExt& o) const { return QExt(a - o.a, b - o.b, q0); }
QExt QExt::operator-() const { return QExt(-a, -b, q0); }

QExt QExt::operator*(const QExt& o) const {
  // (a + bv)(c + dv) with v^2 = 1/q0.
  mpq_class inv_q(1, q0);
  QExt out(a * o.a + b * o.b * inv_q, a * o.b + b * o.a, q0);
  out.a.canonicalize();
  out.b.canonicalize();
  return out;
}

QExt QExt::operator/(const QExt& o) const {
  // Conjugate: (c + dv)^-1 = (c - dv)/(c^2 - d^2/q0); the norm is nonzero
  // because 1/q0 is not a rational square.
  mpq_class inv_q(1, o.q0);
  mpq_class norm = o.a * o.a - o.b * o.b * inv_q;
  if (norm == 0) throw std::domain_error("QExt division by zero");
  QExt conj(o.a / norm, -o.b / norm, o.q0);
  return *this * conj;
}

std::string QExt::to_string() const {
  std::ostringstream os;
  os << a.get_str();
  if (b != 0) {
    mpq_class ab = abs(b);
    os << (b > 0 ? " + " : " - ") << ab.get_str() << "*v";
  }
  return os.str();
}

QExt eval_qsqrt(const Scalar& s, long q0, const std::vector<mpq_class>& alpha) {
  const Ring& ring = *s.ring();
  if (!ring.roots().empty())
    throw std::invalid_argument("square-root symbols have no q-sqrt value");
  if (static_cast<int>(alpha.size()) != ring.genus())
    throw std::invalid_argument("alpha count");
  auto eval_poly = [&](const SymPoly& p) {
    // Split by v-parity: monomial v^k m evaluates to (1/q0)^(k/2) m for even
    // k and (1/q0)^((k-1)/2) m * v for odd k.
    QExt acc(0, 0, q0);
    for (const auto& [e, c] : p) {
      mpq_class coef(c);
      for (int i = 1; i < ring.nsym(); ++i) {
        if (e[i] == 0) continue;
        mpq_class base = alpha[i - 1];
        if (base == 0) throw std::domain_error("zero specialization");
        int k = e[i] >= 0 ? e[i] : -e[i];
        mpq_class p2 = 1;
        for (int j = 0; j < k; ++j) p2 *= base;
        if (e[i] < 0) p2 = 1 / p2;
        coef *= p2;
      }
      int k = e[0];
      int half = (k >= 0) ? k / 2 : -((-k + 1) / 2);
      int rem = k - 2 * half;
      mpq_class vpow(1);
      mpq_class inv_q(1, q0);
      if (half >= 0)
        for (int j = 0; j < half; ++j) vpow *= inv_q;
      else
        for (int j = 0; j < -half; ++j) vpow *= q0;
      coef *= vpow;
      coef.canonicalize();
      if (rem == 0)
        acc.a += coef;
      else
        acc.b += coef;
    }
    acc.a.canonicalize();
    acc.b.canonicalize();
    return acc;
  };
  QExt n = eval_poly(s.num());
  QExt d = eval_poly(s.den());
  return n / d;
}

std::vector<mpq_class> seeded_specialization(const Ring& ring, uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_int_distribution<int> num_dist(2, 19);
  std::uniform_int_distribution<int> den_dist(2, 13);
  std::vector<mpq_class> out;
  std::set<std::pair<long, long>> used;
  for (int i = 0; i < ring.nsym(); ++i) {
    while (true) {
      long n = num_dist(gen), d = den_dist(gen);
      mpq_class val(n, d);
      val.canonicalize();
      if (val == 1 || val == 0) continue;
      auto key = std::make_pair(val.get_num().get_si(), val.get_den().get_si());
      if (!used.insert(key).second) continue;
      out.push_back(val);
      break;
    }
  }
  return out;
}

}  // namespace curvehall
