#include "arithdisc/series.hpp"

#include <algorithm>

#include "arithdisc/errors.hpp"

namespace arithdisc {

RingPtr make_ring(FieldPtr field, std::optional<IntegerElement> denom_base,
                  TailMode tag) {
  if (denom_base && denom_base->is_zero())
    throw Error("make_ring: zero denominator base");
  auto r = std::make_shared<RingDescriptor>();
  r->field = std::move(field);
  r->denom_base = std::move(denom_base);
  r->tag = tag;
  return r;
}

const IntegerElement& RingDescriptor::base_pow(unsigned k) const {
  std::lock_guard<std::mutex> lock(pow_mutex_);
  if (pow_cache_.empty()) pow_cache_.push_back(field->int_one());
  while (pow_cache_.size() <= k)
    pow_cache_.push_back(field->mul(pow_cache_.back(), base()));
  return pow_cache_[k];
}

namespace {

// loc_add with cached denominator powers.
LocalizedElement loc_add_r(const LocalizedElement& x, const LocalizedElement& y,
                           const RingDescriptor& ring) {
  const auto& K = ring.K();
  unsigned m = std::max(x.denom_exp, y.denom_exp);
  IntegerElement xs = x.denom_exp == m
                          ? x.num
                          : K.mul(x.num, ring.base_pow(m - x.denom_exp));
  IntegerElement ys = y.denom_exp == m
                          ? y.num
                          : K.mul(y.num, ring.base_pow(m - y.denom_exp));
  return LocalizedElement{K.add(xs, ys), m};
}

}  // namespace

bool ring_compatible(const RingDescriptor& a, const RingDescriptor& b) {
  if (a.field.get() != b.field.get()) return false;
  if (a.has_base() != b.has_base()) return false;
  if (a.has_base() && !(a.base() == b.base())) return false;
  return true;
}

TruncatedSeries series_zero(RingPtr ring, unsigned order) {
  TruncatedSeries s;
  s.order = order;
  s.coeffs.assign(order, LocalizedElement{ring->field->int_zero(), 0});
  s.ring = std::move(ring);
  return s;
}

TruncatedSeries series_one(RingPtr ring, unsigned order) {
  TruncatedSeries s = series_zero(ring, order);
  if (order > 0) s.coeffs[0] = LocalizedElement{s.ring->field->int_one(), 0};
  return s;
}

TruncatedSeries series_from_coeffs(RingPtr ring, unsigned order,
                                   std::vector<LocalizedElement> coeffs) {
  if (coeffs.size() != order) throw Error("series_from_coeffs: size mismatch");
  TruncatedSeries s;
  s.ring = std::move(ring);
  s.order = order;
  s.coeffs = std::move(coeffs);
  return s;
}

TruncatedSeries series_constant(RingPtr ring, unsigned order,
                                const LocalizedElement& c) {
  TruncatedSeries s = series_zero(std::move(ring), order);
  if (order > 0) s.coeffs[0] = c;
  return s;
}

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (!ring_compatible(*a.ring, *b.ring)) return false;
  unsigned n = std::min(a.order, b.order);
  const auto& K = a.ring->K();
  IntegerElement base = a.ring->base();
  for (unsigned i = 0; i < n; ++i)
    if (!loc_equal(a.coeffs[i], b.coeffs[i], K, base)) return false;
  return true;
}

bool series_is_zero(const TruncatedSeries& a) {
  for (const auto& c : a.coeffs)
    if (!loc_is_zero(c)) return false;
  return true;
}

namespace {

void require_compatible(const TruncatedSeries& a, const TruncatedSeries& b,
                        const char* op) {
  if (!ring_compatible(*a.ring, *b.ring))
    throw Error(std::string(op) + ": ring mismatch");
}

}  // namespace

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_compatible(a, b, "series_add");
  unsigned n = std::min(a.order, b.order);
  std::vector<LocalizedElement> out(n);
  for (unsigned i = 0; i < n; ++i)
    out[i] = loc_add_r(a.coeffs[i], b.coeffs[i], *a.ring);
  return series_from_coeffs(a.ring, n, std::move(out));
}

TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b) {
  return series_add(a, series_neg(b));
}

TruncatedSeries series_neg(const TruncatedSeries& a) {
  TruncatedSeries s = a;
  for (auto& c : s.coeffs) c = loc_neg(c, a.ring->K());
  s.bound_cert.reset();
  return s;
}

TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                           const ExactConfig& cfg) {
  require_compatible(a, b, "series_mul");
  unsigned n = std::min(a.order, b.order);
  const auto& K = a.ring->K();
  const RingDescriptor& ring = *a.ring;
  std::vector<LocalizedElement> out(n, LocalizedElement{K.int_zero(), 0});
  std::vector<bool> a_zero(n), b_zero(n);
  for (unsigned i = 0; i < n; ++i) {
    a_zero[i] = loc_is_zero(a.coeffs[i]);
    b_zero[i] = loc_is_zero(b.coeffs[i]);
  }
  for (unsigned k = 0; k < n; ++k) {
    cfg.poll_cancel();
    // Convolve at the common maximal exponent to avoid rescaling the
    // accumulator per term.
    unsigned M = 0;
    bool any = false;
    for (unsigned i = 0; i <= k; ++i) {
      if (a_zero[i] || b_zero[k - i]) continue;
      M = std::max(M, a.coeffs[i].denom_exp + b.coeffs[k - i].denom_exp);
      any = true;
    }
    if (!any) continue;
    IntegerElement acc = K.int_zero();
    for (unsigned i = 0; i <= k; ++i) {
      if (a_zero[i] || b_zero[k - i]) continue;
      const auto& x = a.coeffs[i];
      const auto& y = b.coeffs[k - i];
      IntegerElement term = K.mul(x.num, y.num);
      unsigned diff = M - (x.denom_exp + y.denom_exp);
      if (diff > 0) term = K.mul(term, ring.base_pow(diff));
      acc = K.add(acc, term);
    }
    out[k] = LocalizedElement{std::move(acc), M};
  }
  return series_from_coeffs(a.ring, n, std::move(out));
}

TruncatedSeries series_scalar_mul(const TruncatedSeries& a, const LocalizedElement& c) {
  TruncatedSeries s = a;
  s.bound_cert.reset();
  for (auto& x : s.coeffs) x = loc_mul(x, c, a.ring->K());
  return s;
}

TruncatedSeries series_shift(const TruncatedSeries& a, unsigned m) {
  TruncatedSeries s;
  s.ring = a.ring;
  s.order = a.order + m;
  s.coeffs.assign(s.order, LocalizedElement{a.ring->field->int_zero(), 0});
  for (unsigned i = 0; i < a.order; ++i) s.coeffs[i + m] = a.coeffs[i];
  return s;
}

TruncatedSeries series_divide_t(const TruncatedSeries& a, unsigned m) {
  if (m > a.order) throw Error("series_divide_t: shift exceeds order");
  for (unsigned i = 0; i < m; ++i)
    if (!loc_is_zero(a.coeffs[i]))
      throw Error("series_divide_t: nonzero low-order coefficient");
  TruncatedSeries s;
  s.ring = a.ring;
  s.order = a.order - m;
  s.coeffs.assign(a.coeffs.begin() + m, a.coeffs.end());
  return s;
}

TruncatedSeries series_truncate(const TruncatedSeries& a, unsigned order) {
  if (order >= a.order) return a;
  TruncatedSeries s;
  s.ring = a.ring;
  s.order = order;
  s.coeffs.assign(a.coeffs.begin(), a.coeffs.begin() + order);
  return s;
}

namespace {

// Inverse of u / a^k in R[1/a]: find v, j with u v = a^j.
LocalizedElement loc_inverse(const LocalizedElement& c, const NumberField& K,
                             const IntegerElement& a, const ExactConfig& cfg) {
  if (loc_is_zero(c)) throw NotUnit("zero constant term");
  Rational unorm = K.norm_interval(c.num, cfg.prec_start).hi + 1;
  Integer ceil_u = unorm.get_num() / unorm.get_den() + 1;
  unsigned cap = static_cast<unsigned>(
      K.degree() * mpz_sizeinbase(ceil_u.get_mpz_t(), 2)) + 8;
  IMat mu = K.mul_matrix_int(c.num);
  for (unsigned j = 0; j <= cap; ++j) {
    IntegerElement rhs = K.pow(a, j);
    auto sol = solve_integer(mu, rhs.coords);
    if (!sol) continue;
    IntegerElement v{*sol};
    if (c.denom_exp >= j)
      return LocalizedElement{K.mul(v, K.pow(a, c.denom_exp - j)), 0};
    return LocalizedElement{v, j - c.denom_exp};
  }
  throw NotUnit("constant term not invertible in the coefficient ring");
}

}  // namespace

TruncatedSeries series_inverse(const TruncatedSeries& a, const ExactConfig& cfg) {
  if (a.order == 0) throw Error("series_inverse: zero order");
  const auto& K = a.ring->K();
  IntegerElement base = a.ring->base();
  LocalizedElement inv0 = loc_inverse(a.coeffs[0], K, base, cfg);
  std::vector<LocalizedElement> out(a.order, LocalizedElement{K.int_zero(), 0});
  out[0] = inv0;
  for (unsigned n = 1; n < a.order; ++n) {
    cfg.poll_cancel();
    LocalizedElement acc{K.int_zero(), 0};
    for (unsigned i = 1; i <= n; ++i) {
      if (loc_is_zero(a.coeffs[i]) || loc_is_zero(out[n - i])) continue;
      acc = loc_add_r(acc, loc_mul(a.coeffs[i], out[n - i], K), *a.ring);
    }
    out[n] = loc_neg(loc_mul(inv0, acc, K), K);
  }
  return series_from_coeffs(a.ring, a.order, std::move(out));
}

TruncatedSeries series_compose_ct(const TruncatedSeries& a,
                                  const LocalizedElement& c, RingPtr target) {
  const auto& K = target->K();
  const auto& src_field = a.ring->K();
  bool same_field = a.ring->field.get() == target->field.get();
  if (!same_field && src_field.degree() != 1)
    throw Error("series_compose_ct: incompatible coefficient fields");
  std::vector<LocalizedElement> out(a.order, LocalizedElement{K.int_zero(), 0});
  LocalizedElement cpow{K.int_one(), 0};
  for (unsigned n = 0; n < a.order; ++n) {
    const LocalizedElement& src = a.coeffs[n];
    LocalizedElement mapped;
    if (same_field) {
      mapped = src;
    } else {
      // Coefficients over Q embed along 1.
      mapped = LocalizedElement{K.from_integer(src.num.coords[0]), src.denom_exp};
    }
    out[n] = loc_mul(mapped, cpow, K);
    if (n + 1 < a.order) cpow = loc_mul(cpow, c, K);
  }
  return series_from_coeffs(std::move(target), a.order, std::move(out));
}

TruncatedSeries series_rebase(const TruncatedSeries& a, RingPtr target,
                              const IntegerElement& cofactor) {
  const auto& K = target->K();
  if (a.ring->field.get() != target->field.get())
    throw Error("series_rebase: field mismatch");
  std::vector<LocalizedElement> out(a.order);
  for (unsigned n = 0; n < a.order; ++n) {
    const LocalizedElement& src = a.coeffs[n];
    out[n] = LocalizedElement{K.mul(src.num, K.pow(cofactor, src.denom_exp)),
                              src.denom_exp};
  }
  return series_from_coeffs(std::move(target), a.order, std::move(out));
}

std::optional<unsigned> t_valuation(const TruncatedSeries& f) {
  for (unsigned i = 0; i < f.order; ++i)
    if (!loc_is_zero(f.coeffs[i])) return i;
  return std::nullopt;
}

WDivResult weierstrass_divide(const TruncatedSeries& f, const TruncatedSeries& g,
                              WDivMode mode, const ExactConfig& cfg) {
  if (!ring_compatible(*f.ring, *g.ring))
    throw Error("weierstrass_divide: ring mismatch");
  auto mval = t_valuation(g);
  if (!mval) throw ZeroDivisor("weierstrass_divide: g == 0 mod t^N");
  const unsigned m = *mval;
  const unsigned N = std::min(f.order, g.order);
  if (m >= N) throw ZeroDivisor("weierstrass_divide: v_t(g) >= order");
  const auto& K = f.ring->K();
  IntegerElement a = f.ring->base();

  // Scale so the shifted divisor has integral constant term.  The quotient's
  // constant slot is pinned to 1, so the scale also has to clear the
  // dividend's leading coefficient for the remainder to start integral.
  LocalizedElement g0_loc = loc_reduce(g.coeffs[m], K, a);
  LocalizedElement f0_loc = loc_reduce(f.coeffs[m], K, a);
  const unsigned e = std::max(g0_loc.denom_exp, f0_loc.denom_exp);
  IntegerElement a_e = K.pow(a, e);
  IntegerElement g0 = K.mul(g0_loc.num, K.pow(a, e - g0_loc.denom_exp));

  // G_i = a^e g_{m+i}, F_i = a^e f_{m+i}, both of order N - m.
  const unsigned M = N - m;
  std::vector<LocalizedElement> G(M), F(M);
  for (unsigned i = 0; i < M; ++i) {
    G[i] = loc_reduce(loc_mul(g.coeffs[m + i], LocalizedElement{a_e, 0}, K), K, a);
    F[i] = loc_reduce(loc_mul(f.coeffs[m + i], LocalizedElement{a_e, 0}, K), K, a);
  }

  auto c1_fn = [&](unsigned prec) { return K.c1_interval(prec); };
  auto cg0_fn = [&](unsigned prec) {
    return K.c1_interval(prec) * K.norm_interval(g0, prec);
  };

  WDivResult res;
  res.scale_exp = e;
  res.shift = m;
  std::vector<LocalizedElement> h(M, LocalizedElement{K.int_zero(), 0});
  std::vector<LocalizedElement> rtail(M, LocalizedElement{K.int_zero(), 0});
  h[0] = LocalizedElement{K.int_one(), 0};
  // Slot 0 has no quotient freedom: r_m = F_0 - g0, integral by the choice
  // of e, exempt from the mode's norm clause.
  rtail[0] = loc_reduce(loc_sub(F[0], LocalizedElement{g0, 0}, K, a), K, a);
  if (!loc_is_integral(rtail[0], K, a))
    throw Error("weierstrass_divide: leading remainder slot not integral");

  for (unsigned n = 1; n < M; ++n) {
    cfg.poll_cancel();
    LocalizedElement b_n = F[n];
    for (unsigned i = 0; i <= n; ++i) {
      unsigned j = n - i;
      if (j == n) continue;  // excludes the unknown h_n term (i.e. i = 0 pairing)
      if (loc_is_zero(G[i]) || loc_is_zero(h[j])) continue;
      b_n = loc_sub(b_n, loc_mul(G[i], h[j], K), K, a);
    }
    b_n = loc_reduce(b_n, K, a);

    bool fast_zero = false;
    if (loc_is_integral(b_n, K, a)) {
      if (mode == WDivMode::BoundQuotient) {
        fast_zero = true;
      } else {
        auto bn_norm = [&](unsigned prec) {
          return loc_norm_interval(b_n, K, a, prec);
        };
        if (certify_less(bn_norm, cg0_fn, cfg) == Certainty::True) fast_zero = true;
      }
    }
    if (fast_zero) {
      h[n] = LocalizedElement{K.int_zero(), 0};
      rtail[n] = b_n;
      continue;
    }

    LocalizedElement hn = bounded_remainder_divide(b_n, g0, K, a, cfg);
    if (mode == WDivMode::BoundQuotient) {
      // Integer transfer: make ||h_n|| < C_1; the residual shifts by
      // g0 * rho which stays in R.
      FieldElement hval = loc_value(hn, K, a);
      IntegerElement rho = round_to_integer(hval, K);
      hn = loc_sub(hn, LocalizedElement{rho, 0}, K, a);
    }
    h[n] = loc_reduce(hn, K, a);
    rtail[n] = loc_reduce(loc_sub(b_n, loc_mul(LocalizedElement{g0, 0}, h[n], K), K, a), K, a);
  }

  // Certify the mode's bound for the recursion slots 1..M-1; escalation
  // happens inside certify_less, undecidable entries are recorded rather
  // than fatal.
  res.bound_status.reserve(M > 0 ? M - 1 : 0);
  for (unsigned n = 1; n < M; ++n) {
    if (mode == WDivMode::BoundRemainder) {
      if (loc_is_zero(rtail[n])) {
        res.bound_status.push_back(Certainty::True);
        continue;
      }
      auto rn = [&](unsigned prec) { return loc_norm_interval(rtail[n], K, a, prec); };
      res.bound_status.push_back(certify_less(rn, cg0_fn, cfg));
    } else {
      if (loc_is_zero(h[n])) {
        res.bound_status.push_back(Certainty::True);
        continue;
      }
      auto hn = [&](unsigned prec) { return loc_norm_interval(h[n], K, a, prec); };
      res.bound_status.push_back(certify_less(hn, c1_fn, cfg));
    }
  }

  // Assemble r = a^e * head + t^m * rtail (identity a^e f = r + a^e g h).
  std::vector<LocalizedElement> rc(N, LocalizedElement{K.int_zero(), 0});
  for (unsigned i = 0; i < m; ++i) {
    rc[i] = loc_reduce(loc_mul(f.coeffs[i], LocalizedElement{a_e, 0}, K), K, a);
    if (!loc_is_integral(rc[i], K, a)) res.nonintegral_head.push_back(i);
  }
  for (unsigned i = 0; i < M; ++i) rc[m + i] = rtail[i];
  res.r = series_from_coeffs(f.ring, N, std::move(rc));
  res.h = series_from_coeffs(f.ring, M, std::move(h));
  return res;
}

std::pair<TruncatedSeries, unsigned> integralize(const TruncatedSeries& g,
                                                 const ExactConfig& cfg) {
  if (!t_valuation(g)) throw ZeroDivisor("integralize: g == 0 mod t^N");
  TruncatedSeries zero = series_zero(g.ring, g.order);
  WDivResult res = weierstrass_divide(zero, g, WDivMode::BoundQuotient, cfg);
  return {res.h, res.scale_exp};
}

BranchLayout BranchLayout::create(FieldPtr field, std::vector<IntegerElement> branch,
                                  size_t one_index) {
  if (branch.size() < 2) throw Error("BranchLayout: need |I| >= 2");
  if (one_index >= branch.size()) throw Error("BranchLayout: one_index out of range");
  BranchLayout l;
  l.field_ = std::move(field);
  l.branch_ = std::move(branch);
  l.one_index_ = one_index;
  const auto& K = *l.field_;
  for (const auto& b : l.branch_) {
    if (b.is_zero() || K.abs_norm(b) <= 1)
      throw Error("BranchLayout: branch elements must be non-invertible");
  }
  for (size_t i = 0; i < l.branch_.size(); ++i)
    for (size_t j = i + 1; j < l.branch_.size(); ++j)
      bezout_coprime(l.branch_[i], l.branch_[j], K);  // throws NotCoprime
  l.a_total_ = K.int_one();
  for (const auto& b : l.branch_) l.a_total_ = K.mul(l.a_total_, b);
  return l;
}

IntegerElement BranchLayout::a_complement(size_t i) const {
  const auto& K = *field_;
  IntegerElement acc = K.int_one();
  for (size_t j = 0; j < branch_.size(); ++j)
    if (j != i) acc = K.mul(acc, branch_[j]);
  return acc;
}

RingPtr BranchLayout::ring_full() const {
  return make_ring(field_, a_total_, TailMode::FormalTail);
}

RingPtr BranchLayout::ring_side(size_t i) const {
  // D_i = D_{I - {i}}: formal tail iff 1 is still in the index set.
  TailMode tag = (i == one_index_) ? TailMode::ConvergentTail : TailMode::FormalTail;
  return make_ring(field_, a_complement(i), tag);
}

RingPtr BranchLayout::ring_side_prime(size_t i) const {
  // D_i' = D_{{i}}: formal tail iff i is the distinguished index.
  TailMode tag = (i == one_index_) ? TailMode::FormalTail : TailMode::ConvergentTail;
  return make_ring(field_, branch_[i], tag);
}

const BranchLayout::SplitCert& BranchLayout::split_cert(size_t i, unsigned m) const {
  std::lock_guard<std::mutex> lock(*memo_mutex_);
  auto key = std::make_pair(i, m);
  auto it = memo_->find(key);
  if (it != memo_->end()) return it->second;
  const auto& K = *field_;
  SplitCert cert;
  cert.ai_m = K.pow(at(i), m);
  cert.aip_m = K.pow(a_complement(i), m);
  auto [alpha, beta] = bezout_coprime(cert.ai_m, cert.aip_m, K);
  cert.alpha = std::move(alpha);
  cert.beta = std::move(beta);
  return memo_->emplace(key, std::move(cert)).first->second;
}

std::pair<LocalizedElement, LocalizedElement> split_element(
    const LocalizedElement& y, size_t i, const BranchLayout& layout) {
  const auto& K = layout.K();
  if (y.denom_exp == 0) return {y, LocalizedElement{K.int_zero(), 0}};
  const unsigned m = y.denom_exp;
  const auto& cert = layout.split_cert(i, m);
  // y = u alpha / a_i'^m + u beta / a_i^m.
  LocalizedElement y_i{K.mul(y.num, cert.alpha), m};
  LocalizedElement y_ip{K.mul(y.num, cert.beta), m};
  return {y_i, y_ip};
}

std::pair<TruncatedSeries, TruncatedSeries> split_series(
    const TruncatedSeries& f, size_t i, const BranchLayout& layout,
    const ExactConfig& cfg) {
  const auto& K = layout.K();
  RingPtr ring_g = layout.ring_side_prime(i);
  RingPtr ring_h = layout.ring_side(i);
  IntegerElement base_g = ring_g->base();
  IntegerElement base_h = ring_h->base();
  const bool designate_h = (i == layout.one_index());

  std::vector<LocalizedElement> gcs(f.order), hcs(f.order);
  for (unsigned n = 0; n < f.order; ++n) {
    cfg.poll_cancel();
    auto [y_i, y_ip] = split_element(f.coeffs[n], i, layout);
    // h collects the R_i part, g the R_i' part.
    LocalizedElement hn = y_i, gn = y_ip;
    // Integer transfer onto the designated side.
    LocalizedElement& des = designate_h ? hn : gn;
    LocalizedElement& oth = designate_h ? gn : hn;
    const IntegerElement& des_base = designate_h ? base_h : base_g;
    FieldElement val = loc_value(des, K, des_base);
    IntegerElement rho = round_to_integer(val, K);
    if (!rho.is_zero()) {
      des = loc_sub(des, LocalizedElement{rho, 0}, K, des_base);
      oth = loc_add(oth, LocalizedElement{rho, 0}, K,
                    designate_h ? base_g : base_h);
    }
    gcs[n] = loc_reduce(gn, K, base_g);
    hcs[n] = loc_reduce(hn, K, base_h);
  }

  TruncatedSeries g = series_from_coeffs(ring_g, f.order, std::move(gcs));
  TruncatedSeries h = series_from_coeffs(ring_h, f.order, std::move(hcs));

  // Certify the designated side below C_1 and attach the certificate.  The
  // rounding step leaves coordinates in [-1/2, 1/2], so the triangle
  // inequality over cached basis norms usually certifies without touching
  // root enclosures; escalate to full interval evaluation only if not.
  TruncatedSeries& des_series = designate_h ? h : g;
  const RingDescriptor& des_ring = designate_h ? *ring_h : *ring_g;
  const IntegerElement des_base = designate_h ? base_h : base_g;
  auto basis_up = K.basis_norms(cfg.prec_start);
  Rational c1_lo(0), c1_hi(0);
  for (const auto& iv : basis_up) {
    c1_lo += iv.lo;
    c1_hi += iv.hi;
  }
  auto c1_fn = [&](unsigned prec) { return K.c1_interval(prec); };
  std::vector<NormEnclosure> cert;
  cert.reserve(f.order);
  for (unsigned n = 0; n < f.order; ++n) {
    const LocalizedElement& c = des_series.coeffs[n];
    if (loc_is_zero(c)) {
      cert.push_back(NormEnclosure{Rational(0), Rational(0), cfg.prec_start});
      continue;
    }
    FieldElement val =
        K.div(K.to_field(c.num), K.to_field(des_ring.base_pow(c.denom_exp)));
    Rational upper(0);
    for (size_t k = 0; k < val.coords.size(); ++k)
      upper += abs(val.coords[k]) * basis_up[k].hi;
    if (upper < c1_lo) {
      cert.push_back(NormEnclosure{Rational(0), upper, cfg.prec_start});
      continue;
    }
    auto nfn = [&](unsigned prec) { return loc_norm_interval(c, K, des_base, prec); };
    if (certify_less(nfn, c1_fn, cfg) != Certainty::True)
      throw Error("split_series: C_1 bound undecidable at precision cap");
    RatInterval iv = loc_norm_interval(c, K, des_base, cfg.prec_start);
    cert.push_back(NormEnclosure{iv.lo, iv.hi, cfg.prec_start});
  }
  des_series.bound_cert = std::move(cert);
  return {g, h};
}

namespace {

BoxInterval laplace_det(const std::vector<std::vector<BoxInterval>>& M,
                        const std::vector<size_t>& rows,
                        const std::vector<size_t>& cols) {
  if (rows.size() == 1) return M[rows[0]][cols[0]];
  BoxInterval acc = BoxInterval::point(Rational(0), Rational(0));
  std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
  for (size_t c = 0; c < cols.size(); ++c) {
    std::vector<size_t> sub_cols;
    for (size_t cc = 0; cc < cols.size(); ++cc)
      if (cc != c) sub_cols.push_back(cols[cc]);
    BoxInterval term = M[rows[0]][cols[c]] * laplace_det(M, sub_rows, sub_cols);
    if (c % 2 == 1) term = term.scaled(Rational(-1));
    acc = acc + term;
  }
  return acc;
}

// Upper bound for max_k sum_j |(M^{-1})_{kj}| where M_{jk} = sigma_j(z_k):
// the operator norm of coordinate extraction (the constant c of the
// integral-basis series decomposition).
Rational coordinate_operator_bound(const NumberField& K, unsigned prec,
                                   const ExactConfig& cfg) {
  const size_t n = K.degree();
  for (unsigned p = prec;; p *= 2) {
    cfg.poll_cancel();
    auto boxes = K.embedding_boxes(p);
    std::vector<std::vector<BoxInterval>> M(n, std::vector<BoxInterval>(n));
    for (size_t k = 0; k < n; ++k) {
      FieldElement bk;
      bk.coords.assign(n, Rational(0));
      bk.coords[k] = 1;
      std::vector<Rational> power = K.power_coords(bk);
      for (size_t j = 0; j < n; ++j) {
        BoxInterval v = BoxInterval::point(Rational(0), Rational(0));
        for (size_t i = n; i-- > 0;) {
          v = v * boxes[j];
          v.re = v.re + RatInterval::point(power[i]);
        }
        M[j][k] = v;
      }
    }
    std::vector<size_t> all(n);
    for (size_t i = 0; i < n; ++i) all[i] = i;
    RatInterval det_sq = laplace_det(M, all, all).modulus_sq();
    if (det_sq.lo <= 0) {
      if (p >= cfg.prec_cap)
        throw Error("coordinate_operator_bound: determinant enclosure touches 0");
      continue;
    }
    Rational det_lo = sqrt_enclosure(det_sq.lo, p).lo;
    Rational best(0);
    for (size_t k = 0; k < n; ++k) {
      Rational row_sum(0);
      for (size_t j = 0; j < n; ++j) {
        BoxInterval cof = BoxInterval::point(Rational(1), Rational(0));
        if (n > 1) {
          std::vector<size_t> rows, cols;
          for (size_t r = 0; r < n; ++r)
            if (r != j) rows.push_back(r);
          for (size_t c = 0; c < n; ++c)
            if (c != k) cols.push_back(c);
          cof = laplace_det(M, rows, cols);
        }
        row_sum += sqrt_enclosure(cof.modulus_sq().hi, p).hi;
      }
      best = std::max(best, Rational(row_sum / det_lo));
    }
    return best;
  }
}

}  // namespace

std::vector<TruncatedSeries> basis_split(const TruncatedSeries& f,
                                         const ExactConfig& cfg) {
  const auto& K = f.ring->K();
  IntegerElement base = f.ring->base();
  const size_t n = K.degree();
  auto zfield = NumberField::builtin("rational");
  RingPtr zring = make_ring(zfield, std::nullopt, f.ring->tag);
  std::vector<std::vector<LocalizedElement>> comps(
      n, std::vector<LocalizedElement>(f.order));
  for (unsigned i = 0; i < f.order; ++i) {
    LocalizedElement c = loc_reduce(f.coeffs[i], K, base);
    if (c.denom_exp != 0) throw NotIntegral("basis_split: coefficient not in R");
    for (size_t k = 0; k < n; ++k)
      comps[k][i] = LocalizedElement{
          IntegerElement{std::vector<Integer>{c.num.coords[k]}}, 0};
  }
  std::vector<TruncatedSeries> out;
  out.reserve(n);
  std::optional<Rational> factor;
  if (f.bound_cert) factor = coordinate_operator_bound(K, cfg.prec_start, cfg);
  for (size_t k = 0; k < n; ++k) {
    TruncatedSeries gk = series_from_coeffs(zring, f.order, std::move(comps[k]));
    if (factor) {
      std::vector<NormEnclosure> cert;
      for (unsigned i = 0; i < f.order; ++i) {
        const auto& src = (*f.bound_cert)[i];
        cert.push_back(NormEnclosure{Rational(0), *factor * src.upper, src.precision});
      }
      gk.bound_cert = std::move(cert);
    }
    out.push_back(std::move(gk));
  }
  return out;
}

std::vector<Rational> coeff_norm_uppers(const TruncatedSeries& f, unsigned prec) {
  std::vector<Rational> uppers;
  uppers.reserve(f.order);
  const auto& K = f.ring->K();
  IntegerElement base = f.ring->base();
  for (unsigned i = 0; i < f.order; ++i) {
    if (f.bound_cert) {
      uppers.push_back((*f.bound_cert)[i].upper);
    } else {
      uppers.push_back(loc_norm_interval(f.coeffs[i], K, base, prec).hi);
    }
  }
  return uppers;
}

GrowthReport growth_report(const TruncatedSeries& f, const Rational& radius,
                           unsigned prec) {
  if (radius <= 0 || radius >= 1) throw Error("growth_report: radius must be in (0,1)");
  auto uppers = coeff_norm_uppers(f, prec);
  GrowthReport rep;
  rep.partial_sum = 0;
  Rational rp(1);
  for (unsigned n = 0; n < f.order; ++n) {
    rep.partial_sum += uppers[n] * rp;
    rp *= radius;
  }
  rep.root_growth = RatInterval::point(Rational(0));
  for (unsigned n = 1; n < f.order; ++n) {
    if (uppers[n] == 0) continue;
    RatInterval root = nth_root_enclosure(uppers[n], n, prec);
    rep.root_growth = interval_max(rep.root_growth, root);
  }
  return rep;
}

}  // namespace arithdisc
