#include "curvehall/hall.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

#include <algorithm>
#include <cstddef>
#include <stdexcept>

#include "curvehall/curve.hpp"

namespace curvehall {

long euler_form(int genus, NumClass f, NumClass g) {
  return static_cast<long>(1 - genus) * f.r * g.r +
         (static_cast<long>(f.r) * g.d - static_cast<long>(g.r) * f.d);
}

bool slope_less(NumClass a, NumClass b) {
  if (b.r == 0) return a.r > 0;
  if (a.r == 0) return false;
  return static_cast<long>(a.d) * b.r < static_cast<long>(b.d) * a.r;
}

NumClass hn_weight(const HNType& t) {
  NumClass w;
  for (const NumClass& e : t) {
    w.r += e.r;
    w.d += e.d;
  }
  return w;
}

long hn_exponent(int genus, const HNType& t) {
  long s = 0;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = i + 1; j < t.size(); ++j)
      s += euler_form(genus, t[i], t[j]);
  return s;
}

namespace {

mpq_class slope(NumClass e) { return mpq_class(e.d) / e.r; }

long floor_times(const mpq_class& s, int m) {
  mpq_class t = s * m;
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  return f.get_si();
}

long ceil_times(const mpq_class& s, int m) {
  mpq_class t = s * m;
  mpz_class c;
  mpz_cdiv_q(c.get_mpz_t(), t.get_num().get_mpz_t(), t.get_den().get_mpz_t());
  return c.get_si();
}

void extend_types(HNType& cur, NumClass rem, const mpq_class& mu_lo,
                  const mpq_class& mu_hi, std::vector<HNType>& out) {
  if (rem.r == 0) {
    if (rem.d == 0 && !cur.empty()) out.push_back(cur);
    return;
  }
  for (int r1 = 1; r1 <= rem.r; ++r1) {
    // Next slope strictly above the previous entry, inside the window.
    long d_lo = cur.empty() ? ceil_times(mu_lo, r1)
                            : floor_times(slope(cur.back()), r1) + 1;
    long d_hi = floor_times(mu_hi, r1);
    for (long d1 = d_lo; d1 <= d_hi; ++d1) {
      cur.push_back({r1, static_cast<int>(d1)});
      extend_types(cur, {rem.r - r1, rem.d - static_cast<int>(d1)}, mu_lo,
                   mu_hi, out);
      cur.pop_back();
    }
  }
}

bool type_before(const HNType& a, const HNType& b) {
  std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i) {
    mpq_class sa = slope(a[i]), sb = slope(b[i]);
    if (sa != sb) return sa > sb;
  }
  if (a.size() != b.size()) return a.size() < b.size();
  for (std::size_t i = 0; i < n; ++i)
    if (a[i].r != b[i].r) return a[i].r > b[i].r;
  return false;
}

std::vector<int> box_vec(int r, int value) {
  return std::vector<int>(static_cast<std::size_t>(r), value);
}

bool column_empty(const ZPoly& p, int e1) {
  for (const auto& [e, c] : p.terms())
    if (e[0] == e1) return false;
  return true;
}

}  // namespace

std::vector<HNType> hn_types(int r, int d, const mpq_class& mu_lo,
                             const mpq_class& mu_hi) {
  if (r < 1) throw std::invalid_argument("hn_types: rank must be positive");
  std::vector<HNType> out;
  if (mu_lo > mu_hi) return out;
  HNType cur;
  extend_types(cur, {r, d}, mu_lo, mu_hi, out);
  std::sort(out.begin(), out.end(), type_before);
  return out;
}

ZPoly onevec_table(RingPtr ring, int r, int d, int lo, int hi) {
  if (r < 1) throw std::invalid_argument("onevec_table: rank must be positive");
  if (r > kMaxVars)
    throw std::invalid_argument("onevec_table: rank exceeds variable limit");
  ZPoly out(ring, r);
  if (lo > hi) return out;
  long c = static_cast<long>(r) * (r - 1) * (1 - ring->genus()) / 2;
  std::vector<int> e(static_cast<std::size_t>(r), lo);
  for (;;) {
    int last = d;
    for (int i = 0; i + 1 < r; ++i) last -= e[static_cast<std::size_t>(i)];
    if (last >= lo && last <= hi) {
      e[static_cast<std::size_t>(r - 1)] = last;
      long w = c;
      ZExp ze = zero_zexp();
      for (int i = 0; i < r; ++i) {
        w += static_cast<long>(2 * i + 1 - r) * e[static_cast<std::size_t>(i)];
        ze[static_cast<std::size_t>(i)] =
            static_cast<int16_t>(e[static_cast<std::size_t>(i)]);
      }
      out.add_term(ze, Scalar::v_pow(ring, static_cast<int>(w)));
    }
    int i = r - 2;
    while (i >= 0 && e[static_cast<std::size_t>(i)] == hi) {
      e[static_cast<std::size_t>(i)] = lo;
      --i;
    }
    if (i < 0) break;
    ++e[static_cast<std::size_t>(i)];
  }
  return out;
}

ZPoly stratum_table(RingPtr ring, const HNType& t, int lo, int hi) {
  if (t.empty()) throw std::invalid_argument("stratum_table: empty type");
  for (const NumClass& e : t)
    if (e.r < 1)
      throw std::invalid_argument("stratum_table: entries must have rank >= 1");
  NumClass w = hn_weight(t);
  if (w.r > 3)
    throw std::invalid_argument("stratum_table: total rank must be at most 3");
  ZPoly zero(ring, w.r);
  if (lo > hi) return zero;
  if (t.size() == 1) return semistable_table(ring, t[0].r, t[0].d, lo, hi);

  const FactoredKernel h = h_kernel(ring);
  if (t.size() == static_cast<std::size_t>(w.r)) {
    std::vector<int> degrees;
    for (const NumClass& e : t) degrees.push_back(e.d);
    return expand_window(fshuffle_monomials(h, ring, degrees), box_vec(w.r, lo),
                         box_vec(w.r, hi));
  }

  // Mixed pair: one line entry and one rank-2 block.  Late-block exponents
  // only rise across the product and early-block ones only fall, so the
  // block's table is needed on a finite derived window.
  if (t[0].r == 1) {
    int b = t[1].d;
    if (b - hi > hi) return zero;
    ZPoly inner = semistable_table(ring, 2, b, b - hi, hi);
    if (inner.terms().empty()) return zero;
    FSeriesElement prod = fshuffle_mul(
        h, FSeriesElement::monomial(ring, {t[0].d}), FSeriesElement(inner));
    return expand_window(prod, box_vec(3, lo), box_vec(3, hi));
  }
  int a = t[0].d;
  if (lo > a - lo) return zero;
  ZPoly inner = semistable_table(ring, 2, a, lo, a - lo);
  if (inner.terms().empty()) return zero;
  FSeriesElement prod = fshuffle_mul(h, FSeriesElement(inner),
                                     FSeriesElement::monomial(ring, {t[1].d}));
  return expand_window(prod, box_vec(3, lo), box_vec(3, hi));
}

ZPoly semistable_table(RingPtr ring, int r, int d, int lo, int hi) {
  if (r < 1 || r > 3)
    throw std::invalid_argument(
        "semistable_table: rank must be 1..3; from rank 4 on a rank >= 2 "
        "block can sit between others, and a middle block shifts both ways, "
        "so no finite window closes the recursion");
  ZPoly out(ring, r);
  if (lo > hi) return out;
  if (r == 1) {
    if (d >= lo && d <= hi) {
      ZExp e = zero_zexp();
      e[0] = static_cast<int16_t>(d);
      out.add_term(e, Scalar(ring, 1));
    }
    return out;
  }

  out = onevec_table(ring, r, d, lo, hi);
  // Proper strata with an entry slope outside [lo, hi] never reach the box:
  // the leading slope only falls and the trailing one only rises.
  std::vector<HNType> proper;
  for (HNType& t : hn_types(r, d, mpq_class(lo), mpq_class(hi)))
    if (t.size() >= 2) proper.push_back(std::move(t));
  std::vector<ZPoly> parts(proper.size(), ZPoly(ring, r));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t i = 0; i < proper.size(); ++i)
    parts[i] = stratum_table(ring, proper[i], lo, hi);
  for (std::size_t i = 0; i < proper.size(); ++i)
    out -= parts[i] *
           Scalar::v_pow(ring, static_cast<int>(
                                   hn_exponent(ring->genus(), proper[i])));
  return out;
}

ZPoly onez_table(RingPtr ring, int d, const mpq_class& max_slope, int lo,
                 int hi) {
  std::vector<HNType> types =
      hn_types(2, d, mpq_class(d) - max_slope, max_slope);
  std::vector<ZPoly> parts(types.size(), ZPoly(ring, 2));
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::size_t i = 0; i < types.size(); ++i)
    parts[i] = stratum_table(ring, types[i], lo, hi);
  ZPoly out(ring, 2);
  for (std::size_t i = 0; i < types.size(); ++i)
    out += parts[i] *
           Scalar::v_pow(ring, static_cast<int>(
                                   hn_exponent(ring->genus(), types[i])));
  return out;
}

std::optional<int> adic_degree(const ZPoly& table) {
  std::optional<int> best;
  for (const auto& [e, c] : table.terms()) {
    int d = c.adic_degree();
    if (!best || d < *best) best = d;
  }
  return best;
}

ZPoly upsilon_rank2(const ZPoly& table, int lo, int hi) {
  const RingPtr& ring = table.ring();
  if (table.rank() != 2)
    throw std::invalid_argument("upsilon_rank2: table must have rank 2");
  int g = ring->genus();
  int top = hi - 2 * g;
  ZPoly out(ring, 2);
  if (lo > top) return out;

  // (1 - q z_1/z_2) prod_l (1 - a_l z_2/z_1)(1 - abar_l z_2/z_1)
  ZExp up = zero_zexp();
  up[0] = 1;
  up[1] = -1;
  ZExp down = zero_zexp();
  down[0] = -1;
  down[1] = 1;
  ZPoly factors = ZPoly::constant(ring, 2, Scalar(ring, 1)) -
                  ZPoly::monomial(ring, 2, up, Scalar::q_pow(ring, 1));
  for (int l = 1; l <= g; ++l) {
    factors *= ZPoly::constant(ring, 2, Scalar(ring, 1)) -
               ZPoly::monomial(ring, 2, down, Scalar::alpha(ring, l));
    factors *= ZPoly::constant(ring, 2, Scalar(ring, 1)) -
               ZPoly::monomial(ring, 2, down, Scalar::alpha_bar(ring, l));
  }

  for (const auto& [e, c] : table.terms()) {
    for (const auto& [m, cm] : factors.terms()) {
      int b1 = e[0] + m[0];
      int b2 = e[1] + m[1];
      Scalar base = c * cm;
      for (int k = 1; b1 + k <= top; ++k) {
        if (b1 + k < lo) continue;
        ZExp target = zero_zexp();
        target[0] = static_cast<int16_t>(b1 + k);
        target[1] = static_cast<int16_t>(b2 - k);
        out.add_term(target, -base);
      }
    }
  }
  return out;
}

std::vector<ConvergenceRow> buntriv_convergence(
    RingPtr ring, int d, const std::vector<mpq_class>& bounds) {
  if (bounds.empty()) return {};
  for (std::size_t i = 0; i + 1 < bounds.size(); ++i)
    if (!(bounds[i] < bounds[i + 1]))
      throw std::invalid_argument(
          "buntriv_convergence: bounds must strictly increase");
  int g = ring->genus();
  int m_top = static_cast<int>(ceil_times(bounds.back(), 1));
  int lo = d - m_top - 2 * g - 2;
  // Inverse of the skyscraper normalization at rank 2; its adic degree is 0.
  Scalar scale = (pic0_order(ring) * Scalar::q_pow(ring, -g)).pow(2);

  for (int attempt = 0; attempt < 6; ++attempt) {
    // Every truncation lives on the line e1 + e2 = d, so the box [lo, d - lo]
    // holds the complete table through e1 = hi.  A transported column c draws
    // on table cells up to e1 = c + 2g - 1, hence columns through
    // cap = hi + 1 - 2g are exact and nothing past cap is emitted.
    int hi = d - lo;
    int cap = hi + 1 - 2 * g;
    bool interior = true;
    std::vector<ConvergenceRow> rows;
    for (const mpq_class& m : bounds) {
      ZPoly z = onez_table(ring, d, m, lo, hi);
      interior = interior && column_empty(z, lo) && column_empty(z, lo + 1);
      ZPoly u = upsilon_rank2(z, lo, hi + 1);
      // The transported element has finite support; it must vanish before
      // the exactness edges, otherwise the window is too small to read off
      // true degrees.
      for (int e1 : {lo, lo + 1, cap - 1, cap})
        interior = interior && column_empty(u, e1);
      if (!interior) break;
      ConvergenceRow row;
      row.max_slope = m;
      row.num_types =
          static_cast<int>(hn_types(2, d, mpq_class(d) - m, m).size());
      row.adic = adic_degree(u * scale);
      rows.push_back(std::move(row));
    }
    if (interior) return rows;
    lo -= 4;
  }
  throw std::runtime_error(
      "buntriv_convergence: transported support kept reaching the window "
      "edge after repeated enlargement");
}

}  // namespace curvehall
