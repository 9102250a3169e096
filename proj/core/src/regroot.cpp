#include "arithdisc/regroot.hpp"

#include <algorithm>

#include "arithdisc/errors.hpp"

namespace arithdisc {

SeriesPolynomial make_series_polynomial(std::vector<TruncatedSeries> coeffs) {
  if (coeffs.empty()) throw Error("series polynomial needs coefficients");
  for (size_t i = 1; i < coeffs.size(); ++i)
    if (!ring_compatible(*coeffs[i].ring, *coeffs[0].ring))
      throw Error("series polynomial: mixed rings");
  SeriesPolynomial h;
  h.coeffs = std::move(coeffs);
  h.flags = compute_flags(h);
  return h;
}

NormalizationFlags compute_flags(const SeriesPolynomial& h) {
  NormalizationFlags f;
  const auto& K = h.ring()->K();
  IntegerElement base = h.ring()->base();
  auto const_of = [&](const TruncatedSeries& s) { return s.coeffs.empty() ? LocalizedElement{K.int_zero(), 0} : s.coeffs[0]; };
  f.constant_zero = loc_is_zero(const_of(h.coeffs[0]));
  LocalizedElement one{K.int_one(), 0};
  f.linear_unit = h.coeffs.size() > 1 &&
                  loc_equal(const_of(h.coeffs[1]), one, K, base);
  f.higher_constants_zero = true;
  for (size_t k = 2; k < h.coeffs.size(); ++k)
    if (!loc_is_zero(const_of(h.coeffs[k]))) f.higher_constants_zero = false;
  return f;
}

namespace {

// Substitute t -> c t: coefficient at t^n picks up c^n.
TruncatedSeries sub_ct(const TruncatedSeries& s, const LocalizedElement& c) {
  const auto& K = s.ring->K();
  std::vector<LocalizedElement> out(s.order);
  LocalizedElement cp{K.int_one(), 0};
  for (unsigned n = 0; n < s.order; ++n) {
    out[n] = loc_mul(s.coeffs[n], cp, K);
    if (n + 1 < s.order) cp = loc_mul(cp, c, K);
  }
  return series_from_coeffs(s.ring, s.order, std::move(out));
}

// Multiply coefficient at t^n by c^(n-1) for n >= 1; slot 0 must be zero or
// (for the linear coefficient) equal to c, which maps to 1.
TruncatedSeries beta_step(const TruncatedSeries& s, const LocalizedElement& beta,
                          bool is_linear) {
  const auto& K = s.ring->K();
  IntegerElement base = s.ring->base();
  std::vector<LocalizedElement> out(s.order);
  if (s.order > 0) {
    const LocalizedElement& c0 = s.coeffs[0];
    if (loc_is_zero(c0)) {
      out[0] = c0;
    } else if (is_linear && loc_equal(c0, beta, K, base)) {
      out[0] = LocalizedElement{K.int_one(), 0};
    } else {
      throw Error("normalize_poly: constant slot not divisible by beta");
    }
  }
  LocalizedElement cp{K.int_one(), 0};
  for (unsigned n = 1; n < s.order; ++n) {
    out[n] = loc_mul(s.coeffs[n], cp, K);
    cp = loc_mul(cp, beta, K);
    // cp holds beta^(n-1) when used at slot n; advance after use.
  }
  return series_from_coeffs(s.ring, s.order, std::move(out));
}

}  // namespace

std::pair<SeriesPolynomial, NormalizationRecord> normalize_poly(
    const SeriesPolynomial& h, const ExactConfig& cfg) {
  cfg.poll_cancel();
  const auto& K = h.ring()->K();
  IntegerElement base = h.ring()->base();
  const size_t d = h.degree();

  NormalizationRecord rec;
  rec.scale_a = base;

  // (1) substitute t -> a^E t with E the maximal denominator exponent; this
  // clears every coefficient at t^n, n >= 1.
  unsigned E = 0;
  std::vector<TruncatedSeries> cur = h.coeffs;
  for (auto& p : cur)
    for (auto& c : p.coeffs) {
      c = loc_reduce(c, K, base);
      E = std::max(E, c.denom_exp);
    }
  rec.scale_a_exp = E;
  if (E > 0) {
    LocalizedElement aE{K.pow(base, E), 0};
    for (auto& p : cur) p = sub_ct(p, aE);
  }

  // (2) e = v_t(p_1) must be strictly below every other valuation.
  auto v1 = t_valuation(cur[1]);
  if (!v1) throw ValuationConditionFailed("normalize_poly: p_1 == 0 mod t^N");
  const unsigned e = *v1;
  {
    auto v0 = t_valuation(cur[0]);
    if (v0 && *v0 <= e)
      throw ConstantTermNonzero("normalize_poly: v(p_0) <= v(p_1)");
    for (size_t k = 2; k <= d; ++k) {
      auto vk = t_valuation(cur[k]);
      if (vk && *vk <= e)
        throw ValuationConditionFailed("normalize_poly: v(p_k) <= v(p_1)");
    }
  }
  rec.shift_e = e;
  if (e > 0)
    for (auto& p : cur) p = series_divide_t(p, e);

  // (3) t -> beta t and division by beta with beta = b_{1,0}.
  LocalizedElement beta = loc_reduce(cur[1].coeffs[0], K, base);
  rec.beta = beta;
  for (size_t k = 0; k <= d; ++k) cur[k] = beta_step(cur[k], beta, k == 1);

  SeriesPolynomial out = make_series_polynomial(std::move(cur));
  if (!out.flags.constant_zero || !out.flags.linear_unit)
    throw Error("normalize_poly: normalization did not reach the target shape");
  return {out, rec};
}

SeriesPolynomial replay_normalization(const SeriesPolynomial& h,
                                      const NormalizationRecord& rec,
                                      const ExactConfig& cfg) {
  cfg.poll_cancel();
  const auto& K = h.ring()->K();
  std::vector<TruncatedSeries> cur = h.coeffs;
  if (rec.scale_a_exp > 0) {
    LocalizedElement aE{K.pow(rec.scale_a, rec.scale_a_exp), 0};
    for (auto& p : cur) p = sub_ct(p, aE);
  }
  if (rec.shift_e > 0)
    for (auto& p : cur) p = series_divide_t(p, rec.shift_e);
  for (size_t k = 0; k < cur.size(); ++k)
    cur[k] = beta_step(cur[k], rec.beta, k == 1);
  return make_series_polynomial(std::move(cur));
}

TruncatedSeries eval_poly_at(const SeriesPolynomial& h, const TruncatedSeries& y,
                             const ExactConfig& cfg) {
  unsigned order = std::min(h.order(), y.order);
  TruncatedSeries acc = series_truncate(h.coeffs.back(), order);
  for (size_t k = h.coeffs.size() - 1; k-- > 0;) {
    acc = series_add(series_mul(acc, y, cfg), series_truncate(h.coeffs[k], order));
  }
  return acc;
}

TruncatedSeries recursive_root(const SeriesPolynomial& h, const ExactConfig& cfg) {
  NormalizationFlags flags = compute_flags(h);
  if (!flags.constant_zero)
    throw ConstantTermNonzero("recursive_root: b_{0,0} != 0");
  if (!flags.linear_unit)
    throw Error("recursive_root: polynomial not normalized (b_{1,0} != 1)");
  const auto& K = h.ring()->K();
  IntegerElement base = h.ring()->base();
  const unsigned N = h.order();

  bool all_integral = true;
  for (const auto& p : h.coeffs)
    for (const auto& c : p.coeffs)
      if (!loc_is_integral(c, K, base)) all_integral = false;

  TruncatedSeries y = series_zero(h.ring(), N);
  for (unsigned n = 1; n < N; ++n) {
    cfg.poll_cancel();
    TruncatedSeries val = eval_poly_at(h, series_truncate(y, n + 1), cfg);
    // a_n = -[t^n] h(y_<n): the linear unit makes the slot linear in a_n.
    y.coeffs[n] = loc_neg(val.coeffs[n], K);
  }
  if (all_integral) {
    // Integrality propagation: each a_n is a ring combination of integral
    // data, so the computed coordinates must reduce to exponent zero.
    for (auto& c : y.coeffs) {
      c = loc_reduce(c, K, base);
      if (c.denom_exp != 0)
        throw Error("recursive_root: integrality propagation violated");
    }
  }
  return y;
}

}  // namespace arithdisc
