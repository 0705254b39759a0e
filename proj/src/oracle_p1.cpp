#include "curvehall/oracle_p1.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "curvehall/hall.hpp"

namespace curvehall::oracle {

namespace {

long merge_prime(long a, long b) {
  if (a == 0) return b;
  if (b == 0 || a == b) return a;
  throw std::invalid_argument("QScalar: mixed primes");
}

mpz_class zpow(long base, long exp) {
  mpz_class out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                static_cast<unsigned long>(exp));
  return out;
}

long floor_div2(long k) { return k >= 0 ? k / 2 : -((-k + 1) / 2); }

long inv_mod(long a, long p) {
  long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long quo = r / nr;
    std::swap(t -= quo * nt, nt);
    std::swap(r -= quo * nr, nr);
  }
  return ((t % p) + p) % p;
}

// Column rank of a dense matrix over F_p; rows may be empty.
int matrix_rank_mod(std::vector<std::vector<long>> m, long p) {
  int rank = 0;
  int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  int cols = static_cast<int>(m[0].size());
  for (int c = 0; c < cols && rank < rows; ++c) {
    int pivot = -1;
    for (int r = rank; r < rows; ++r)
      if (m[r][c] % p != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(m[rank], m[pivot]);
    long inv = inv_mod(m[rank][c], p);
    for (int j = c; j < cols; ++j) m[rank][j] = m[rank][j] * inv % p;
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][c] % p == 0) continue;
      long f = m[r][c] % p;
      for (int j = c; j < cols; ++j)
        m[r][j] = ((m[r][j] - f * m[rank][j]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

int poly_deg(const std::vector<long>& f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[i] != 0) return i;
  return -1;
}

// Remainder of a mod b over F_p; b nonzero.
std::vector<long> poly_rem(std::vector<long> a, const std::vector<long>& b,
                           long p) {
  int db = poly_deg(b);
  long lead_inv = inv_mod(b[db], p);
  for (int da = poly_deg(a); da >= db; da = poly_deg(a)) {
    long f = a[da] * lead_inv % p;
    for (int j = 0; j <= db; ++j)
      a[da - db + j] = ((a[da - db + j] - f * b[j]) % p + p) % p;
  }
  return a;
}

// Forms have no common projective zero over the closure.  P and Q are
// coefficient vectors indexed by the power of the affine coordinate; the
// declared form degrees are the vector lengths minus one, so a deficient
// actual degree means a zero at infinity.
bool forms_coprime(long q, const std::vector<long>& pf,
                   const std::vector<long>& qf) {
  int dp = poly_deg(pf), dq = poly_deg(qf);
  int m = static_cast<int>(pf.size()) - 1, n = static_cast<int>(qf.size()) - 1;
  if (dp < 0 && dq < 0) return false;
  if (dp < 0) return n == 0;
  if (dq < 0) return m == 0;
  if (dp < m && dq < n) return false;
  std::vector<long> a(pf.begin(), pf.begin() + dp + 1);
  std::vector<long> b(qf.begin(), qf.begin() + dq + 1);
  while (poly_deg(b) >= 0) {
    a = poly_rem(std::move(a), b, q);
    std::swap(a, b);
  }
  return poly_deg(a) == 0;
}

// Advances a base-q odometer; false once it wraps to all zeros.
bool odometer_step(std::vector<long>& digits, long q) {
  for (auto& d : digits) {
    if (++d < q) return true;
    d = 0;
  }
  return false;
}

// Sections of the m-th twist of the extension of O(e1) by O(e2) glued by
// the cocycle c (exponents e2 - e1 + 1 .. -1).  A section is a pair of
// polynomials (f, g) with deg f <= e1 + m whose infinity-chart image is
// regular; g absorbs every nonnegative power of c f, so only the
// coefficients of c f at the exponents e2 + m + 1 .. -1 obstruct.
long h0_twist(long q, int e1, int e2, const std::vector<long>& c, int m) {
  long free_part = std::max(0, e2 + m + 1);
  if (e1 + m < 0) return free_part;
  std::vector<std::vector<long>> gaps;
  for (int j = e2 + m + 1; j <= -1; ++j) {
    std::vector<long> row(e1 + m + 1, 0);
    for (int i = 0; i <= e1 + m; ++i) {
      int idx = (j - i) - (e2 - e1 + 1);
      if (idx >= 0) row[i] = c[idx];
    }
    gaps.push_back(std::move(row));
  }
  return free_part + (e1 + m + 1) - matrix_rank_mod(std::move(gaps), q);
}

// Largest twist of a line subbundle, found by scanning section spaces
// downward; terminates because the top twist is at least ceil(deg / 2).
int splitting_top(long q, int e1, int e2, const std::vector<long>& c) {
  int d = e1 + e2;
  int bot = d - static_cast<int>(floor_div2(d));
  for (int n = e1; n >= bot; --n)
    if (h0_twist(q, e1, e2, c, -n) > 0) return n;
  throw std::logic_error("splitting_top: no subbundle found");
}

}  // namespace

QScalar::QScalar(long q, const mpq_class& rat, const mpq_class& irr)
    : q_(q), rat_(rat), irr_(irr) {
  if (q_ == 0 && irr_ != 0)
    throw std::invalid_argument("QScalar: irrational part needs a prime");
  reduce();
}

QScalar QScalar::rational(const mpq_class& r) { return QScalar(0, r, 0); }

QScalar QScalar::v_pow(long q, long k) {
  long r = ((k % 2) + 2) % 2;
  long t = (k - r) / 2;
  mpq_class val =
      t >= 0 ? mpq_class(mpz_class(1), zpow(q, t)) : mpq_class(zpow(q, -t));
  return r == 0 ? rational(val) : QScalar(q, 0, val);
}

void QScalar::reduce() {
  if (irr_ == 0) q_ = 0;
}

QScalar QScalar::operator-() const { return QScalar(q_, -rat_, -irr_); }

QScalar& QScalar::operator+=(const QScalar& o) {
  q_ = merge_prime(q_, o.q_);
  rat_ += o.rat_;
  irr_ += o.irr_;
  reduce();
  return *this;
}

QScalar& QScalar::operator-=(const QScalar& o) { return *this += -o; }

QScalar& QScalar::operator*=(const QScalar& o) {
  long q = merge_prime(q_, o.q_);
  mpq_class r = rat_ * o.rat_;
  if (irr_ != 0 && o.irr_ != 0) r += irr_ * o.irr_ / q;
  irr_ = rat_ * o.irr_ + irr_ * o.rat_;
  rat_ = r;
  q_ = q;
  reduce();
  return *this;
}

QScalar& QScalar::operator/=(const QScalar& o) {
  if (o.is_zero()) throw std::invalid_argument("QScalar: division by zero");
  if (o.irr_ == 0) {
    rat_ /= o.rat_;
    irr_ /= o.rat_;
    return *this;
  }
  // 1 / (a + b w) = (a - b w) / (a^2 - b^2 / q); w irrational keeps the
  // denominator away from zero.
  mpq_class den = o.rat_ * o.rat_ - o.irr_ * o.irr_ / o.q_;
  QScalar conj(o.q_, o.rat_ / den, -o.irr_ / den);
  return *this *= conj;
}

bool QScalar::operator==(const QScalar& o) const {
  // reduce() clears the prime whenever the irrational part vanishes, so
  // member comparison is exact.
  return q_ == o.q_ && rat_ == o.rat_ && irr_ == o.irr_;
}

std::string QScalar::str() const {
  std::ostringstream os;
  if (irr_ == 0) {
    os << rat_;
  } else {
    if (rat_ != 0) os << rat_ << " + ";
    os << irr_ << "*q^(-1/2)";
  }
  return os.str();
}

QScalar operator+(QScalar a, const QScalar& b) { return a += b; }
QScalar operator-(QScalar a, const QScalar& b) { return a -= b; }
QScalar operator*(QScalar a, const QScalar& b) { return a *= b; }
QScalar operator/(QScalar a, const QScalar& b) { return a /= b; }

std::ostream& operator<<(std::ostream& os, const QScalar& s) {
  return os << s.str();
}

QScalar eval_at_prime(const Scalar& s, long q) {
  auto fold = [q](const SymPoly& p) {
    QScalar acc = QScalar::rational(0);
    for (const auto& [e, c] : p) {
      for (size_t i = 1; i < e.size(); ++i)
        if (e[i] != 0)
          throw std::invalid_argument("eval_at_prime: curve weight present");
      acc += QScalar::rational(mpq_class(c)) * QScalar::v_pow(q, e[0]);
    }
    return acc;
  };
  return fold(s.num()) / fold(s.den());
}

int SheafClass::degree() const {
  int d = tor >= 0 ? 1 : 0;
  for (int b : bun) d += b;
  return d;
}

std::string SheafClass::str() const {
  std::ostringstream os;
  bool first = true;
  for (int b : bun) {
    os << (first ? "" : "+") << "O(" << b << ")";
    first = false;
  }
  if (tor >= 0) os << (first ? "" : "+") << "T" << tor;
  if (first && tor < 0) os << "0";
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const SheafClass& v) {
  return os << v.str();
}

SheafClass line_class(int d) { return SheafClass{{d}, -1}; }

SheafClass bundle_class(int b1, int b2) {
  if (b1 < b2) std::swap(b1, b2);
  return SheafClass{{b1, b2}, -1};
}

SheafClass skyscraper(int point) { return SheafClass{{}, point}; }

HallFn unit_class(const SheafClass& v) {
  return HallFn{{v, QScalar::rational(1)}};
}

HallFn torsion_sum(long q) {
  HallFn out;
  for (int x = 0; x <= q; ++x) out[skyscraper(x)] = QScalar::rational(1);
  return out;
}

HallFn subtract(const HallFn& f, const HallFn& g) {
  HallFn out = f;
  for (const auto& [v, s] : g) out[v] -= s;
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

long hom_dim(int a, int b) { return std::max(0, b - a + 1); }

long ext1_dim(int a, int b) { return std::max(0, a - b - 1); }

mpz_class aut_order(long q, const SheafClass& v) {
  mpz_class units = q - 1;
  if (v.rank() == 0) return v.tor >= 0 ? units : mpz_class(1);
  if (v.rank() == 1) return v.tor >= 0 ? units * units * q : units;
  if (v.rank() == 2 && v.tor < 0) {
    int a = v.bun[0], b = v.bun[1];
    if (a == b) return (zpow(q, 2) - 1) * (zpow(q, 2) - q);
    return units * units * zpow(q, a - b + 1);
  }
  throw std::invalid_argument("aut_order: unsupported class " + v.str());
}

mpz_class coprime_form_pairs(long q, int m, int n) {
  if (m < 0 && n < 0) return 0;
  if (n < 0) return m == 0 ? 1 : 0;
  if (m < 0) return n == 0 ? 1 : 0;
  mpz_class count = 0;
  std::vector<long> pf(m + 1, 0);
  do {
    std::vector<long> qf(n + 1, 0);
    do {
      if (forms_coprime(q, pf, qf)) ++count;
    } while (odometer_step(qf, q));
  } while (odometer_step(pf, q));
  if (count % (q - 1) != 0)
    throw std::logic_error("coprime_form_pairs: count not scaling invariant");
  return count / (q - 1);
}

mpz_class count_subsheaves(long q, const SheafClass& v, int e,
                           const SheafClass& quot) {
  if (v.degree() != e + quot.degree() || v.rank() != 1 + quot.rank()) return 0;
  if (v.rank() == 2 && v.tor < 0) {
    if (quot.rank() != 1 || quot.tor >= 0)
      throw std::invalid_argument("count_subsheaves: unsupported quotient " +
                                  quot.str());
    return coprime_form_pairs(q, v.bun[0] - e, v.bun[1] - e);
  }
  if (v.rank() == 1 && v.tor < 0) {
    int m = v.bun[0];
    if (quot.tor < 0) return 1;  // zero quotient, e == m forced above
    if (m - e != 1) return 0;    // only length one torsion is representable
    // Multiplication by a degree one form; the cokernel is the skyscraper
    // at the zero of the form.
    long count = 0;
    for (long a = 0; a < q; ++a)
      for (long b = 0; b < q; ++b) {
        if (a == 0 && b == 0) continue;
        int root = a == 0 ? static_cast<int>(q)
                          : static_cast<int>((q - b) * inv_mod(a, q) % q);
        if (root == quot.tor) ++count;
      }
    if (count % (q - 1) != 0)
      throw std::logic_error("count_subsheaves: form count not invariant");
    return mpz_class(count) / (q - 1);
  }
  if (v.rank() == 1 && v.tor >= 0) {
    if (quot.rank() != 0 || quot.tor < 0) return 0;
    // Maps into O(m) + T_x are pairs (scalar, section at x); injective
    // exactly when the scalar is nonzero, and then the cokernel is the
    // skyscraper at x whatever the section: q (q - 1) maps over q - 1
    // scalings.
    if (quot.tor != v.tor) return 0;
    return mpz_class(q);
  }
  if (v.rank() == 0) return 0;
  throw std::invalid_argument("count_subsheaves: unsupported class " +
                              v.str());
}

const std::map<SheafClass, mpz_class>& extension_census(long q, int e1,
                                                        int e2) {
  static std::map<std::tuple<long, int, int>, std::map<SheafClass, mpz_class>>
      memo;
  auto key = std::make_tuple(q, e1, e2);
  auto found = memo.find(key);
  if (found != memo.end()) return found->second;

  std::map<SheafClass, mpz_class> out;
  int k = e1 - e2 - 1;
  if (k <= 0) {
    out[bundle_class(e1, e2)] = 1;
  } else {
    std::vector<long> c(k, 0);
    do {
      int b1 = splitting_top(q, e1, e2, c);
      out[bundle_class(b1, e1 + e2 - b1)] += 1;
    } while (odometer_step(c, q));
    mpz_class total = 0;
    for (const auto& [cls, n] : out) total += n;
    if (total != zpow(q, k))
      throw std::logic_error("extension_census: class count mismatch");
  }
  return memo[key] = std::move(out);
}

HallFn hall_product(long q, const HallFn& f, const HallFn& g) {
  HallFn out;
  for (const auto& [fc, fv] : f) {
    for (const auto& [gc, gv] : g) {
      if (fv.is_zero() || gv.is_zero()) continue;
      long ip = euler_form(0, NumClass{fc.rank(), fc.degree()},
                           NumClass{gc.rank(), gc.degree()});
      QScalar w = QScalar::v_pow(q, -ip) * fv * gv;
      auto add = [&](const SheafClass& r, const mpz_class& n) {
        if (n != 0) out[r] += w * QScalar::rational(mpq_class(n));
      };
      bool fline = fc.rank() == 1 && fc.tor < 0;
      bool gline = gc.rank() == 1 && gc.tor < 0;
      bool fsky = fc.rank() == 0 && fc.tor >= 0;
      bool gsky = gc.rank() == 0 && gc.tor >= 0;
      if (fline && gline) {
        int e = gc.bun[0];
        int d = fc.bun[0] + e;
        for (int b2 = std::min(fc.bun[0], e); 2 * b2 <= d; ++b2) {
          SheafClass r = bundle_class(d - b2, b2);
          add(r, count_subsheaves(q, r, e, fc));
        }
      } else if (fsky && gline) {
        int e = gc.bun[0];
        add(line_class(e + 1), count_subsheaves(q, line_class(e + 1), e, fc));
        SheafClass mixed{{e}, fc.tor};
        add(mixed, count_subsheaves(q, mixed, e, fc));
      } else if (fline && gsky) {
        // The only torsion subsheaf of O(c) + T_x is the skyscraper itself,
        // with the line as quotient.
        add(SheafClass{{fc.bun[0]}, gc.tor}, 1);
      } else {
        throw std::invalid_argument("hall_product: unsupported shapes " +
                                    fc.str() + " * " + gc.str());
      }
    }
  }
  for (auto it = out.begin(); it != out.end();)
    it = it->second.is_zero() ? out.erase(it) : std::next(it);
  return out;
}

QScalar green_pairing(long q, const HallFn& f, const HallFn& g) {
  QScalar acc = QScalar::rational(0);
  for (const auto& [v, fv] : f) {
    auto it = g.find(v);
    if (it == g.end()) continue;
    acc += fv * it->second *
           QScalar::rational(mpq_class(mpz_class(1), aut_order(q, v)));
  }
  return acc;
}

QScalar constant_term(long q, const HallFn& u, int e1, int e2) {
  QScalar acc = QScalar::rational(0);
  for (const auto& [mid, n] : extension_census(q, e1, e2)) {
    auto it = u.find(mid);
    if (it == u.end()) continue;
    acc += it->second * QScalar::rational(mpq_class(n));
  }
  long ip = euler_form(0, NumClass{1, e1}, NumClass{1, e2});
  mpq_class ext_inv(mpz_class(1), zpow(q, ext1_dim(e1, e2)));
  return QScalar::v_pow(q, ip) * acc * QScalar::rational(ext_inv);
}

}  // namespace curvehall::oracle
