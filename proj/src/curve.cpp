#include "curvehall/curve.hpp"

#include <sstream>

namespace curvehall {

RatFunc1 RatFunc1::one(RingPtr ring) {
  ZPoly n = ZPoly::constant(ring, 1, Scalar(ring, 1));
  return RatFunc1(n, n);
}

RatFunc1 RatFunc1::linear(RingPtr ring, const Scalar& c, int dir) {
  ZPoly n = ZPoly::constant(ring, 1, Scalar(ring, 1));
  ZExp e = zero_zexp();
  e[0] = static_cast<int16_t>(dir);
  n.add_term(e, -c);
  return RatFunc1(n, ZPoly::constant(ring, 1, Scalar(ring, 1)));
}

RatFunc1 RatFunc1::operator*(const RatFunc1& o) const {
  return RatFunc1(num * o.num, den * o.den);
}

RatFunc1 RatFunc1::operator/(const RatFunc1& o) const {
  if (o.num.is_zero()) throw std::domain_error("rational division by zero");
  return RatFunc1(num * o.den, den * o.num);
}

bool RatFunc1::operator==(const RatFunc1& o) const {
  return num * o.den == o.num * den;
}

RatFunc1 RatFunc1::transformed(const Scalar& c, int dir) const {
  ZExp im = zero_zexp();
  im[0] = static_cast<int16_t>(dir);
  std::vector<Scalar> cs = {c};
  std::vector<ZExp> ims = {im};
  return RatFunc1(num.substituted(1, cs, ims), den.substituted(1, cs, ims));
}

PowerSeries::PowerSeries(RingPtr ring, int offset, std::vector<Scalar> coeffs)
    : ring_(std::move(ring)), offset_(offset), c_(std::move(coeffs)) {}

PowerSeries PowerSeries::zero(RingPtr ring, int len) {
  std::vector<Scalar> c(len, Scalar(ring, 0));
  return PowerSeries(std::move(ring), 0, std::move(c));
}

PowerSeries PowerSeries::one(RingPtr ring, int len) {
  std::vector<Scalar> c(len, Scalar(ring, 0));
  c[0] = Scalar(ring, 1);
  return PowerSeries(std::move(ring), 0, std::move(c));
}

Scalar PowerSeries::at(int k) const {
  int idx = k - offset_;
  if (idx < 0 || idx >= length()) return Scalar(ring_, 0);
  return c_[idx];
}

PowerSeries PowerSeries::operator+(const PowerSeries& o) const {
  // Valid coverage is the intersection of the two windows.
  int lo = std::min(offset_, o.offset_);
  int hi = std::min(offset_ + length(), o.offset_ + o.length());
  std::vector<Scalar> c;
  for (int k = lo; k < hi; ++k) c.push_back(at(k) + o.at(k));
  return PowerSeries(ring_, lo, std::move(c));
}

PowerSeries PowerSeries::operator-(const PowerSeries& o) const {
  int lo = std::min(offset_, o.offset_);
  int hi = std::min(offset_ + length(), o.offset_ + o.length());
  std::vector<Scalar> c;
  for (int k = lo; k < hi; ++k) c.push_back(at(k) - o.at(k));
  return PowerSeries(ring_, lo, std::move(c));
}

PowerSeries PowerSeries::operator*(const PowerSeries& o) const {
  int len = std::min(length(), o.length());
  int off = offset_ + o.offset_;
  std::vector<Scalar> c(len, Scalar(ring_, 0));
  for (int i = 0; i < length(); ++i) {
    if (c_[i].is_zero()) continue;
    for (int j = 0; j < o.length() && i + j < len; ++j)
      c[i + j] += c_[i] * o.c_[j];
  }
  return PowerSeries(ring_, off, std::move(c));
}

PowerSeries PowerSeries::operator*(const Scalar& s) const {
  std::vector<Scalar> c;
  for (const Scalar& x : c_) c.push_back(x * s);
  return PowerSeries(ring_, offset_, std::move(c));
}

PowerSeries PowerSeries::inverse() const {
  if (c_.empty() || c_[0].is_zero())
    throw std::domain_error("series inverse needs invertible lead");
  std::vector<Scalar> c(length(), Scalar(ring_, 0));
  Scalar lead = c_[0].inverse();
  c[0] = lead;
  for (int k = 1; k < length(); ++k) {
    Scalar acc(ring_, 0);
    for (int j = 1; j <= k; ++j) acc += c_[j] * c[k - j];
    c[k] = -(acc * lead);
  }
  return PowerSeries(ring_, -offset_, std::move(c));
}

PowerSeries PowerSeries::scaled_arg(const Scalar& s) const {
  std::vector<Scalar> c;
  Scalar p = s.pow(offset_);
  for (int i = 0; i < length(); ++i) {
    c.push_back(c_[i] * p);
    p *= s;
  }
  return PowerSeries(ring_, offset_, std::move(c));
}

PowerSeries PowerSeries::exp() const {
  if (!at(0).is_zero()) throw std::domain_error("exp needs positive valuation");
  int len = offset_ + length();
  // f as coefficients of z^1..z^{len-1}.
  std::vector<Scalar> f(len, Scalar(ring_, 0));
  for (int k = 1; k < len; ++k) f[k] = at(k);
  std::vector<Scalar> e(len, Scalar(ring_, 0));
  e[0] = Scalar(ring_, 1);
  // (k) e_k = sum_{j=1}^{k} j f_j e_{k-j}.
  for (int k = 1; k < len; ++k) {
    Scalar acc(ring_, 0);
    for (int j = 1; j <= k; ++j) acc += f[j] * Scalar(ring_, j) * e[k - j];
    e[k] = acc / Scalar(ring_, k);
  }
  return PowerSeries(ring_, 0, std::move(e));
}

bool PowerSeries::operator==(const PowerSeries& o) const {
  int lo = std::min(offset_, o.offset_);
  int hi = std::min(offset_ + length(), o.offset_ + o.length());
  for (int k = lo; k < hi; ++k)
    if (at(k) != o.at(k)) return false;
  return true;
}

RatFunc1 FactoredKernel::rational() const {
  ZPoly n = ZPoly::constant(ring, 1, scale);
  ZExp e = zero_zexp();
  e[0] = static_cast<int16_t>(a);
  n *= ZPoly::monomial(ring, 1, e, Scalar(ring, 1));
  RatFunc1 out(n, ZPoly::constant(ring, 1, Scalar(ring, 1)));
  for (const Scalar& c : num_c) out = out * RatFunc1::linear(ring, c, 1);
  for (const Scalar& c : den_c) out = out / RatFunc1::linear(ring, c, 1);
  return out;
}

PowerSeries FactoredKernel::series(int terms) const {
  std::vector<Scalar> c(terms, Scalar(ring, 0));
  if (terms > 0) c[0] = scale;
  PowerSeries s(ring, a, std::move(c));
  for (const Scalar& cc : num_c) {
    std::vector<Scalar> lin = {Scalar(ring, 1), -cc};
    lin.resize(terms, Scalar(ring, 0));
    s = s * PowerSeries(ring, 0, std::move(lin));
  }
  for (const Scalar& cc : den_c) {
    // 1/(1 - c z) = sum c^k z^k.
    std::vector<Scalar> geo;
    Scalar p(ring, 1);
    for (int k = 0; k < terms; ++k) {
      geo.push_back(p);
      p *= cc;
    }
    s = s * PowerSeries(ring, 0, std::move(geo));
  }
  return s;
}

RatFunc1 Kernel::rational() const {
  ZPoly n = ZPoly::constant(ring, 1, scale);
  ZExp e = zero_zexp();
  e[0] = static_cast<int16_t>(a);
  n *= ZPoly::monomial(ring, 1, e, Scalar(ring, 1));
  RatFunc1 out(n, ZPoly::constant(ring, 1, Scalar(ring, 1)));
  for (const Scalar& c : plus) out = out * RatFunc1::linear(ring, c, 1);
  for (const Scalar& c : minus) out = out * RatFunc1::linear(ring, c, -1);
  if (den == Den::kZ) out = out / RatFunc1::linear(ring, Scalar(ring, 1), 1);
  if (den == Den::kZInv) out = out / RatFunc1::linear(ring, Scalar(ring, 1), -1);
  return out;
}

PairKernel Kernel::pair_data() const {
  PairKernel pk;
  pk.p = a - static_cast<int>(minus.size()) + (den == Den::kZInv ? 1 : 0);
  pk.q = -a - static_cast<int>(plus.size()) + (den == Den::kZ ? 1 : 0);
  Scalar c = scale;
  for (const Scalar& g : plus) {
    pk.betas.push_back(g.inverse());
    c *= -g;
  }
  for (const Scalar& d : minus) pk.betas.push_back(d);
  if (den == Den::kZ) c = -c;
  pk.c = c;
  return pk;
}

std::string Kernel::display() const {
  std::ostringstream os;
  if (!scale.is_one()) os << "(" << scale.to_string() << ") * ";
  if (a != 0) os << "z^" << a << " * ";
  for (const Scalar& c : plus) os << "(1 - (" << c.to_string() << ")*z)";
  for (const Scalar& c : minus) os << "(1 - (" << c.to_string() << ")*z^-1)";
  if (den == Den::kZ) os << " / (1 - z)";
  if (den == Den::kZInv) os << " / (1 - z^-1)";
  return os.str();
}

Kernel zeta_tilde_kernel(RingPtr ring) {
  Kernel k;
  k.ring = ring;
  k.a = 0;
  for (int l = 1; l <= ring->genus(); ++l) {
    k.plus.push_back(Scalar::alpha(ring, l));
    k.plus.push_back(Scalar::alpha_bar(ring, l));
  }
  k.minus.push_back(Scalar::q_pow(ring, 1));
  k.den = Kernel::Den::kZ;
  k.scale = Scalar(ring, 1);
  return k;
}

Kernel k_kernel(RingPtr ring) {
  // Assembled from the commuting-variety weights: p = v^2, x_l and y_l with
  // x_l y_l = p.  Internally x_l^-1 = a_l and y_l^-1 = v^-2 a_l^-1, and
  // p^-1 = q; the struct coincides with the spherical kernel, which is the
  // content of the comparison test.
  Kernel k;
  k.ring = ring;
  k.a = 0;
  Scalar v2 = Scalar::v_pow(ring, 2);
  for (int l = 1; l <= ring->genus(); ++l) {
    Scalar x = Scalar::alpha(ring, l).inverse();
    Scalar y = v2 * Scalar::alpha(ring, l);
    k.plus.push_back(x.inverse());
    k.plus.push_back(y.inverse());
  }
  k.minus.push_back(v2.inverse());
  k.den = Kernel::Den::kZ;
  k.scale = Scalar(ring, 1);
  return k;
}

Kernel g_kernel(RingPtr ring) {
  Kernel k;
  k.ring = ring;
  k.a = ring->genus() - 1;
  k.plus.push_back(Scalar::q_pow(ring, 1));
  for (int l = 1; l <= ring->genus(); ++l) {
    k.minus.push_back(Scalar::alpha(ring, l));
    k.minus.push_back(Scalar::alpha_bar(ring, l));
  }
  k.den = Kernel::Den::kZInv;
  k.scale = Scalar(ring, 1);
  return k;
}

Kernel gprime_kernel(RingPtr ring) {
  Kernel k = g_kernel(ring);
  k.a = 0;
  return k;
}

FactoredKernel zeta_function(RingPtr ring) {
  FactoredKernel f;
  f.ring = ring;
  f.scale = Scalar(ring, 1);
  for (int l = 1; l <= ring->genus(); ++l) {
    f.num_c.push_back(Scalar::alpha(ring, l));
    f.num_c.push_back(Scalar::alpha_bar(ring, l));
  }
  f.den_c.push_back(Scalar(ring, 1));
  f.den_c.push_back(Scalar::q_pow(ring, 1));
  return f;
}

FactoredKernel h_kernel(RingPtr ring) {
  FactoredKernel f;
  f.ring = ring;
  f.scale = Scalar::q_pow(ring, 1 - ring->genus());
  f.num_c.push_back(Scalar::q_pow(ring, -1));
  f.den_c.push_back(Scalar::q_pow(ring, 1));
  for (int l = 1; l <= ring->genus(); ++l) {
    f.num_c.push_back(Scalar::alpha(ring, l));
    f.num_c.push_back(Scalar::alpha_bar(ring, l));
    f.den_c.push_back(Scalar::alpha(ring, l).inverse());
    f.den_c.push_back(Scalar::alpha_bar(ring, l).inverse());
  }
  return f;
}

FactoredKernel hprime_kernel(RingPtr ring) {
  FactoredKernel f = h_kernel(ring);
  f.a += 2 * (ring->genus() - 1);
  return f;
}

Scalar point_count(RingPtr ring, int d) {
  Scalar out = Scalar::q_pow(ring, d) + Scalar(ring, 1);
  for (int l = 1; l <= ring->genus(); ++l)
    out -= Scalar::alpha(ring, l).pow(d) + Scalar::alpha_bar(ring, l).pow(d);
  return out;
}

Scalar pic0_order(RingPtr ring) {
  Scalar out(ring, 1);
  Scalar one(ring, 1);
  for (int l = 1; l <= ring->genus(); ++l)
    out *= (one - Scalar::alpha(ring, l)) * (one - Scalar::alpha_bar(ring, l));
  return out;
}

Scalar v_integer(RingPtr ring, int d) {
  Scalar out(ring, 0);
  for (int k = d - 1; k >= 1 - d; k -= 2) out += Scalar::v_pow(ring, k);
  return out;
}

Scalar hecke_c(RingPtr ring, int d) {
  Scalar c = Scalar::v_pow(ring, d) * point_count(ring, d) * v_integer(ring, d);
  return c / Scalar(ring, d);
}

PowerSeries xi_series(RingPtr ring, int terms) {
  FactoredKernel z = zeta_function(ring);
  PowerSeries zs = z.series(terms);
  PowerSeries zq = zs.scaled_arg(Scalar::q_pow(ring, -1));
  return zs * zq.inverse();
}

}  // namespace curvehall
