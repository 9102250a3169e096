#include "arithdisc/kummer.hpp"

#include <sstream>

#include "arithdisc/errors.hpp"

namespace arithdisc {

namespace {

RingPtr z_ring() {
  return make_ring(NumberField::builtin("rational"), std::nullopt,
                   TailMode::ConvergentTail);
}

// Evaluate X^k - (1 - k^2 t) at the series x.
TruncatedSeries eval_p(const TruncatedSeries& x, unsigned k,
                       const LocalizedElement& ksq_t_coeff,
                       const ExactConfig& cfg) {
  TruncatedSeries acc = series_one(x.ring, x.order);
  for (unsigned j = 0; j < k; ++j) acc = series_mul(acc, x, cfg);
  TruncatedSeries rhs = series_one(x.ring, x.order);
  if (x.order > 1) rhs.coeffs[1] = loc_neg(ksq_t_coeff, x.ring->K());
  return series_sub(acc, rhs);
}

}  // namespace

TruncatedSeries hensel_root(unsigned k, unsigned order, const ExactConfig& cfg) {
  if (k < 1 || order < 1) throw Error("hensel_root: need k >= 1, order >= 1");
  // Newton needs divisions by p'(x) (constant term k); work over Z[1/k],
  // integrality of the limit is asserted afterwards.
  auto Qf = NumberField::builtin("rational");
  IntegerElement base = Qf->from_integer(Integer(k));
  RingPtr work = make_ring(Qf, base, TailMode::ConvergentTail);
  const auto& Q = *Qf;
  TruncatedSeries x = series_one(work, 1);
  LocalizedElement ksq{Q.from_integer(Integer(k) * Integer(k)), 0};
  unsigned cur = 1;
  while (cur < order) {
    cur = std::min(2 * cur, order);
    cfg.poll_cancel();
    std::vector<LocalizedElement> cs = x.coeffs;
    cs.resize(cur, LocalizedElement{Q.int_zero(), 0});
    x = series_from_coeffs(work, cur, std::move(cs));
    TruncatedSeries px = eval_p(x, k, ksq, cfg);
    // p'(x) = k x^(k-1)
    TruncatedSeries dpx =
        series_constant(work, cur, LocalizedElement{Q.from_integer(k), 0});
    for (unsigned j = 0; j + 1 < k; ++j) dpx = series_mul(dpx, x, cfg);
    TruncatedSeries delta = series_mul(px, series_inverse(dpx, cfg), cfg);
    x = series_sub(x, delta);
  }
  // The root lies in Z[[t]]: every coefficient must reduce to exponent 0.
  RingPtr zr = z_ring();
  std::vector<LocalizedElement> out(order);
  for (unsigned i = 0; i < order; ++i) {
    LocalizedElement c = loc_reduce(x.coeffs[i], Q, base);
    if (c.denom_exp != 0) throw Error("hensel_root: non-integral coefficient");
    out[i] = c;
  }
  return series_from_coeffs(zr, order, std::move(out));
}

std::pair<LocalizedElement, unsigned> select_twist(unsigned k, const IntegerElement& a,
                                                   const NumberField& field,
                                                   unsigned degree_bound,
                                                   unsigned height_bound,
                                                   const ExactConfig& cfg) {
  if (k < 1) throw Error("select_twist: k >= 1 required");
  LocalizedElement b = unit_ball_search_localized(a, field, degree_bound,
                                                  height_bound, cfg);
  // b not in R: guarantees a prime with negative valuation.
  if (loc_is_integral(b, field, a))
    throw Error("select_twist: search returned an integral element");

  Rational upper = loc_norm_interval(b, field, a, std::max(cfg.prec_start, 32u)).hi;
  Rational radius = make_rational(1, Integer(k) * Integer(k));
  // (ii) m >= floor(2 n log2(max(k,2))) + 1 via bit length of k^(2n).
  Integer kk = Integer(std::max(k, 2u));
  Integer kpow = pow_int(kk, 2 * field.degree());
  unsigned long m_val = mpz_sizeinbase(kpow.get_mpz_t(), 2);  // floor(log2)+1
  unsigned m = static_cast<unsigned>(m_val);
  // (i) minimal power of the certified upper bound below the radius.
  Rational p = pow_rat(upper, m);
  while (p >= radius) {
    p *= upper;
    ++m;
    if (m > 100000) throw Error("select_twist: twist exponent runaway");
  }
  return {b, m};
}

KummerData make_kummer_data(unsigned k, const IntegerElement& a, FieldPtr field,
                            unsigned order, const ExactConfig& cfg) {
  KummerData data;
  data.k = k;
  data.a = a;
  data.f = hensel_root(k, order, cfg);
  auto [b, m] = select_twist(k, a, *field, static_cast<unsigned>(field->degree()),
                             8, cfg);
  data.b = b;
  data.m = m;
  RingPtr target = make_ring(field, a, TailMode::ConvergentTail);
  const auto& K = *field;
  LocalizedElement bm = b;
  LocalizedElement acc{K.int_one(), 0};
  for (unsigned j = 0; j < m; ++j) acc = loc_mul(acc, bm, K);
  data.g = series_compose_ct(data.f, acc, target);
  return data;
}

IntegerElement root_of_unity(const NumberField& field, unsigned k,
                             unsigned height_bound) {
  if (k == 1) return field.int_one();
  const size_t n = field.degree();
  // Odometer over coordinates in -H..H.
  const long H = static_cast<long>(height_bound);
  std::vector<long> cur(n, -H);
  while (true) {
    IntegerElement z;
    z.coords.reserve(n);
    for (long c : cur) z.coords.emplace_back(c);
    if (!z.is_zero()) {
      IntegerElement p = field.pow(z, k);
      if (p == field.int_one()) {
        bool order_k = true;
        for (unsigned d = 1; d < k; ++d) {
          if (k % d != 0) continue;
          if (field.pow(z, d) == field.int_one()) {
            order_k = false;
            break;
          }
        }
        if (order_k) return z;
      }
    }
    size_t pos = 0;
    while (pos < n && ++cur[pos] > H) {
      cur[pos] = -H;
      ++pos;
    }
    if (pos == n) break;
  }
  throw NoRootOfUnity("no exact root of unity of order " + std::to_string(k));
}

std::vector<KummerCheck> kummer_verify(const KummerData& data, FieldPtr field,
                                       unsigned order, const ExactConfig& cfg) {
  std::vector<KummerCheck> checks;
  const auto& K = *field;
  IntegerElement zeta = root_of_unity(K, data.k);

  RingPtr ring = data.g.ring;
  TruncatedSeries g = series_truncate(data.g, order);
  const unsigned N = g.order;

  // q(X) = X^k - (1 - k^2 b^m t): constant coefficient series.
  LocalizedElement bm{K.int_one(), 0};
  for (unsigned j = 0; j < data.m; ++j) bm = loc_mul(bm, data.b, K);
  LocalizedElement k2bm = loc_mul(LocalizedElement{K.from_integer(Integer(data.k) * Integer(data.k)), 0}, bm, K);
  TruncatedSeries q0 = series_one(ring, N);
  if (N > 1) q0.coeffs[1] = loc_neg(k2bm, K);  // 1 - k^2 b^m t

  // (i) q(g) == 0.
  {
    TruncatedSeries gk = series_one(ring, N);
    for (unsigned j = 0; j < data.k; ++j) gk = series_mul(gk, g, cfg);
    bool ok = series_is_zero(series_sub(gk, q0));
    checks.push_back({"q_of_g_zero", ok, ok ? "g^k == 1 - k^2 b^m t mod t^N" : "mismatch"});
  }

  // (ii) prod_{j<k} (X - zeta^j g) == X^k - (1 - k^2 b^m t): expand in X with
  // series coefficients.
  {
    std::vector<TruncatedSeries> poly{series_one(ring, N)};  // leading coeff
    // multiply (X - c_j) progressively; poly holds coefficients high->low.
    for (unsigned j = 0; j < data.k; ++j) {
      TruncatedSeries cj = series_scalar_mul(
          g, LocalizedElement{K.pow(zeta, j), 0});
      std::vector<TruncatedSeries> next(poly.size() + 1, series_zero(ring, N));
      for (size_t d = 0; d < poly.size(); ++d) {
        next[d] = series_add(next[d], poly[d]);                       // X * poly
        next[d + 1] = series_sub(next[d + 1], series_mul(poly[d], cj, cfg));
      }
      poly = std::move(next);
    }
    bool ok = true;
    std::ostringstream detail;
    // Expect X^k - q0-free-term: poly[0] = 1, middles 0, last = -(1 - k^2 b^m t).
    if (!series_equal(poly.front(), series_one(ring, N))) ok = false;
    for (size_t d = 1; d + 1 < poly.size(); ++d)
      if (!series_is_zero(poly[d])) {
        ok = false;
        detail << "X^" << (poly.size() - 1 - d) << " coefficient nonzero; ";
      }
    if (!series_equal(poly.back(), series_neg(q0))) {
      ok = false;
      detail << "constant coefficient mismatch";
    }
    checks.push_back({"kummer_splitting", ok,
                      ok ? "prod (X - zeta^j g) == q(X) mod t^N" : detail.str()});
  }

  // (iii) the k roots are pairwise distinct mod t^N.
  {
    bool ok = true;
    for (unsigned i = 0; i < data.k && ok; ++i)
      for (unsigned j = i + 1; j < data.k && ok; ++j) {
        TruncatedSeries gi = series_scalar_mul(g, LocalizedElement{K.pow(zeta, i), 0});
        TruncatedSeries gj = series_scalar_mul(g, LocalizedElement{K.pow(zeta, j), 0});
        if (series_equal(gi, gj)) ok = false;
      }
    checks.push_back({"roots_distinct", ok,
                      ok ? "zeta^j g pairwise distinct" : "coincident roots"});
  }
  return checks;
}

KummerData conjugate_kummer(const KummerData& data, const NumberField& field,
                            size_t auto_idx) {
  KummerData out = data;
  out.a = field.apply_automorphism(auto_idx, data.a);
  out.b = LocalizedElement{field.apply_automorphism(auto_idx, data.b.num),
                           data.b.denom_exp};
  RingPtr ring = make_ring(data.g.ring->field, out.a, data.g.ring->tag);
  std::vector<LocalizedElement> cs(data.g.order);
  for (unsigned i = 0; i < data.g.order; ++i)
    cs[i] = LocalizedElement{field.apply_automorphism(auto_idx, data.g.coeffs[i].num),
                             data.g.coeffs[i].denom_exp};
  out.g = series_from_coeffs(ring, data.g.order, std::move(cs));
  return out;
}

}  // namespace arithdisc
