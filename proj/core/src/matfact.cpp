#include "arithdisc/matfact.hpp"

#include <algorithm>
#include <sstream>

#include "arithdisc/errors.hpp"

namespace arithdisc {

SeriesMatrix mat_zero(RingPtr ring, size_t n, unsigned order) {
  SeriesMatrix m;
  m.n = n;
  m.ring = ring;
  m.order = order;
  m.entries.assign(n * n, series_zero(ring, order));
  return m;
}

SeriesMatrix mat_identity(RingPtr ring, size_t n, unsigned order) {
  SeriesMatrix m = mat_zero(ring, n, order);
  for (size_t i = 0; i < n; ++i) m.at(i, i) = series_one(ring, order);
  return m;
}

namespace {

void require_same_shape(const SeriesMatrix& a, const SeriesMatrix& b,
                        const char* op) {
  if (a.n != b.n) throw Error(std::string(op) + ": dimension mismatch");
  if (!ring_compatible(*a.ring, *b.ring))
    throw Error(std::string(op) + ": ring mismatch");
}

void refresh_order(SeriesMatrix& m) {
  unsigned o = m.entries.empty() ? 0 : m.entries.front().order;
  for (const auto& e : m.entries) o = std::min(o, e.order);
  m.order = o;
}

}  // namespace

SeriesMatrix mat_add(const SeriesMatrix& a, const SeriesMatrix& b) {
  require_same_shape(a, b, "mat_add");
  SeriesMatrix m = a;
  for (size_t k = 0; k < m.entries.size(); ++k)
    m.entries[k] = series_add(a.entries[k], b.entries[k]);
  refresh_order(m);
  return m;
}

SeriesMatrix mat_sub(const SeriesMatrix& a, const SeriesMatrix& b) {
  require_same_shape(a, b, "mat_sub");
  SeriesMatrix m = a;
  for (size_t k = 0; k < m.entries.size(); ++k)
    m.entries[k] = series_sub(a.entries[k], b.entries[k]);
  refresh_order(m);
  return m;
}

SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b,
                     const ExactConfig& cfg) {
  require_same_shape(a, b, "mat_mul");
  unsigned order = std::min(a.order, b.order);
  SeriesMatrix m = mat_zero(a.ring, a.n, order);
  for (size_t i = 0; i < a.n; ++i)
    for (size_t j = 0; j < a.n; ++j) {
      cfg.poll_cancel();
      TruncatedSeries acc = series_zero(a.ring, order);
      for (size_t k = 0; k < a.n; ++k)
        acc = series_add(acc, series_mul(a.at(i, k), b.at(k, j), cfg));
      m.at(i, j) = std::move(acc);
    }
  return m;
}

SeriesMatrix mat_scalar_mul(const SeriesMatrix& a, const TruncatedSeries& s) {
  SeriesMatrix m = a;
  for (auto& e : m.entries) e = series_mul(e, s);
  refresh_order(m);
  return m;
}

SeriesMatrix mat_scalar_mul(const SeriesMatrix& a, const LocalizedElement& c) {
  SeriesMatrix m = a;
  for (auto& e : m.entries) e = series_scalar_mul(e, c);
  return m;
}

bool mat_equal(const SeriesMatrix& a, const SeriesMatrix& b) {
  if (a.n != b.n) return false;
  for (size_t k = 0; k < a.entries.size(); ++k)
    if (!series_equal(a.entries[k], b.entries[k])) return false;
  return true;
}

SeriesMatrix mat_truncate(const SeriesMatrix& a, unsigned order) {
  SeriesMatrix m = a;
  for (auto& e : m.entries) e = series_truncate(e, order);
  m.order = std::min(a.order, order);
  return m;
}

SeriesMatrix mat_rebase(const SeriesMatrix& a, RingPtr target,
                        const IntegerElement& cofactor) {
  SeriesMatrix m = a;
  m.ring = target;
  for (auto& e : m.entries) e = series_rebase(e, target, cofactor);
  return m;
}

std::optional<unsigned> mat_t_valuation(const SeriesMatrix& a) {
  std::optional<unsigned> best;
  for (const auto& e : a.entries) {
    auto v = t_valuation(e);
    if (v && (!best || *v < *best)) best = v;
  }
  return best;
}

namespace {

TruncatedSeries laplace_det(const SeriesMatrix& a, std::vector<size_t> rows,
                            std::vector<size_t> cols, const ExactConfig& cfg) {
  if (rows.size() == 1) return a.at(rows[0], cols[0]);
  TruncatedSeries acc = series_zero(a.ring, a.order);
  std::vector<size_t> sub_rows(rows.begin() + 1, rows.end());
  for (size_t c = 0; c < cols.size(); ++c) {
    std::vector<size_t> sub_cols;
    for (size_t cc = 0; cc < cols.size(); ++cc)
      if (cc != c) sub_cols.push_back(cols[cc]);
    TruncatedSeries term =
        series_mul(a.at(rows[0], cols[c]), laplace_det(a, sub_rows, sub_cols, cfg), cfg);
    if (c % 2 == 1) term = series_neg(term);
    acc = series_add(acc, term);
  }
  return acc;
}

}  // namespace

TruncatedSeries mat_determinant(const SeriesMatrix& a, const ExactConfig& cfg) {
  std::vector<size_t> all(a.n);
  for (size_t i = 0; i < a.n; ++i) all[i] = i;
  return laplace_det(a, all, all, cfg);
}

SeriesMatrix mat_adjugate(const SeriesMatrix& a, const ExactConfig& cfg) {
  const size_t n = a.n;
  SeriesMatrix adj = mat_zero(a.ring, n, a.order);
  if (n == 1) {
    adj.at(0, 0) = series_one(a.ring, a.order);
    return adj;
  }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<size_t> rows, cols;
      for (size_t r = 0; r < n; ++r)
        if (r != i) rows.push_back(r);
      for (size_t c = 0; c < n; ++c)
        if (c != j) cols.push_back(c);
      TruncatedSeries minor = laplace_det(a, rows, cols, cfg);
      if ((i + j) % 2 == 1) minor = series_neg(minor);
      adj.at(j, i) = std::move(minor);  // transposed cofactor
    }
  return adj;
}

namespace {

// Coefficient matrices: c[k] is the n x n matrix of k-th coefficients.
using CoeffMat = std::vector<LocalizedElement>;

CoeffMat coeff_at(const SeriesMatrix& a, unsigned k) {
  CoeffMat c(a.n * a.n);
  for (size_t e = 0; e < a.entries.size(); ++e) c[e] = a.entries[e].coeffs[k];
  return c;
}

CoeffMat cm_mul(const CoeffMat& x, const CoeffMat& y, size_t n,
                const NumberField& K, const IntegerElement& base) {
  CoeffMat r(n * n, LocalizedElement{K.int_zero(), 0});
  for (size_t i = 0; i < n; ++i)
    for (size_t k = 0; k < n; ++k) {
      if (loc_is_zero(x[i * n + k])) continue;
      for (size_t j = 0; j < n; ++j)
        r[i * n + j] =
            loc_add(r[i * n + j], loc_mul(x[i * n + k], y[k * n + j], K), K, base);
    }
  return r;
}

}  // namespace

SeriesMatrix mat_inverse(const SeriesMatrix& a, const ExactConfig& cfg) {
  const size_t n = a.n;
  const unsigned N = a.order;
  const auto& K = a.ring->K();
  IntegerElement base = a.ring->base();
  if (N == 0) throw Error("mat_inverse: zero order");

  // Invert the constant matrix over K by Gauss-Jordan, then check that the
  // inverse is representable in the coefficient ring.
  std::vector<FieldElement> c0(n * n), inv0(n * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      c0[i * n + j] = loc_value(a.at(i, j).coeffs[0], K, base);
      inv0[i * n + j] = (i == j) ? K.one() : K.zero();
    }
  for (size_t col = 0; col < n; ++col) {
    size_t pivot = col;
    while (pivot < n && c0[pivot * n + col].is_zero()) ++pivot;
    if (pivot == n) throw NotUnit("mat_inverse: constant term singular");
    if (pivot != col)
      for (size_t c = 0; c < n; ++c) {
        std::swap(c0[pivot * n + c], c0[col * n + c]);
        std::swap(inv0[pivot * n + c], inv0[col * n + c]);
      }
    FieldElement d = c0[col * n + col];
    for (size_t c = 0; c < n; ++c) {
      c0[col * n + c] = K.div(c0[col * n + c], d);
      inv0[col * n + c] = K.div(inv0[col * n + c], d);
    }
    for (size_t r = 0; r < n; ++r) {
      if (r == col || c0[r * n + col].is_zero()) continue;
      FieldElement f = c0[r * n + col];
      for (size_t c = 0; c < n; ++c) {
        c0[r * n + c] = K.sub(c0[r * n + c], K.mul(f, c0[col * n + c]));
        inv0[r * n + c] = K.sub(inv0[r * n + c], K.mul(f, inv0[col * n + c]));
      }
    }
  }
  // Represent the constant inverse in the coefficient ring.
  CoeffMat C0(n * n);
  for (size_t e = 0; e < n * n; ++e) {
    FieldElement v = inv0[e];
    // Find j with base^j * v integral.
    bool done = false;
    for (unsigned j = 0; j <= 8 * (K.degree() + 4); ++j) {
      FieldElement scaled = K.mul(v, K.to_field(K.pow(base, j)));
      if (K.is_integral(scaled)) {
        C0[e] = LocalizedElement{K.to_integral(scaled), j};
        done = true;
        break;
      }
    }
    if (!done) throw NotUnit("mat_inverse: inverse not representable in the ring");
  }

  // Recursion: (sum_k A_k t^k)(sum_k X_k t^k) = 1 determines X_k from
  // X_k = -C0 * sum_{j=1..k} A_j X_{k-j}.
  std::vector<CoeffMat> A(N), X(N);
  for (unsigned k = 0; k < N; ++k) A[k] = coeff_at(a, k);
  X[0] = C0;
  for (unsigned k = 1; k < N; ++k) {
    cfg.poll_cancel();
    CoeffMat acc(n * n, LocalizedElement{K.int_zero(), 0});
    for (unsigned j = 1; j <= k; ++j) {
      CoeffMat term = cm_mul(A[j], X[k - j], n, K, base);
      for (size_t e = 0; e < n * n; ++e) acc[e] = loc_add(acc[e], term[e], K, base);
    }
    CoeffMat xk = cm_mul(C0, acc, n, K, base);
    for (auto& v : xk) v = loc_neg(v, K);
    X[k] = std::move(xk);
  }
  SeriesMatrix out = mat_zero(a.ring, n, N);
  for (size_t e = 0; e < n * n; ++e) {
    std::vector<LocalizedElement> cur(N);
    for (unsigned k = 0; k < N; ++k) cur[k] = loc_reduce(X[k][e], K, base);
    out.entries[e] = series_from_coeffs(a.ring, N, std::move(cur));
  }
  return out;
}

std::pair<SeriesMatrix, SeriesMatrix> split_matrix(const SeriesMatrix& y, size_t i,
                                                   const BranchLayout& layout,
                                                   const ExactConfig& cfg) {
  RingPtr ring_plus = layout.ring_side_prime(i);
  RingPtr ring_minus = layout.ring_side(i);
  SeriesMatrix plus = mat_zero(ring_plus, y.n, y.order);
  SeriesMatrix minus = mat_zero(ring_minus, y.n, y.order);
  for (size_t e = 0; e < y.entries.size(); ++e) {
    auto [g, h] = split_series(y.entries[e], i, layout, cfg);
    plus.entries[e] = std::move(g);
    minus.entries[e] = std::move(h);
  }
  return {plus, minus};
}

FactorizationResult near_identity_factor(const SeriesMatrix& b, size_t i,
                                         const BranchLayout& layout,
                                         const ExactConfig& cfg,
                                         const Rational& tail_radius) {
  const unsigned N = b.order;
  const size_t n = b.n;
  const auto& K = layout.K();
  auto v0 = mat_t_valuation(mat_sub(b, mat_identity(b.ring, n, N)));
  if (v0 && *v0 < 1) throw NotNearIdentity("b is not congruent to 1 mod t");

  RingPtr ring_full = b.ring;
  RingPtr ring_plus = layout.ring_side_prime(i);
  RingPtr ring_minus = layout.ring_side(i);
  IntegerElement cof_plus = layout.a_complement(i);  // base a_i -> a_I
  IntegerElement cof_minus = layout.at(i);           // base a_i' -> a_I

  FactorizationResult res;
  res.left_tag = ring_plus->tag;
  res.right_tag = ring_minus->tag;

  SeriesMatrix y = mat_sub(b, mat_identity(ring_full, n, N));
  SeriesMatrix p_left = mat_identity(ring_plus, n, N);
  SeriesMatrix p_right = mat_identity(ring_minus, n, N);

  const unsigned iter_cap = 32 + 1;  // quadratic progress: <= ceil(log2 N) + 1
  Rational c1_upper = K.c1_interval(cfg.prec_start).hi;
  while (true) {
    auto v = mat_t_valuation(y);
    if (!v) break;
    res.valuation_trace.push_back(*v);
    ++res.iterations;
    if (res.iterations > iter_cap)
      throw Error("near_identity_factor: iteration cap exceeded");

    auto [yp, ym] = split_matrix(y, i, layout, cfg);
    p_left = mat_mul(mat_sub(mat_identity(ring_plus, n, N), yp), p_left, cfg);
    p_right = mat_mul(p_right, mat_sub(mat_identity(ring_minus, n, N), ym), cfg);

    // Tail report for the convergent side at the configured radius.
    {
      std::ostringstream os;
      bool plus_conv = ring_plus->tag == TailMode::ConvergentTail;
      Rational est = pow_rat(tail_radius, res.iterations) * c1_upper /
                     (Rational(1) - tail_radius);
      os << "iter " << res.iterations << ": side "
         << (plus_conv ? "left(D_i')" : "right(D_i)") << " C1-certified; tail r^j*C1/(1-r) <= "
         << rational_to_string(est) << " at r = " << rational_to_string(tail_radius);
      res.bound_reports.push_back(os.str());
    }

    SeriesMatrix ypI = mat_rebase(yp, ring_full, cof_plus);
    SeriesMatrix ymI = mat_rebase(ym, ring_full, cof_minus);
    // y <- y+ y- - y+ y - y y- + y+ y y-.
    SeriesMatrix t1 = mat_mul(ypI, ymI, cfg);
    SeriesMatrix t2 = mat_mul(ypI, y, cfg);
    SeriesMatrix t3 = mat_mul(y, ymI, cfg);
    SeriesMatrix t4 = mat_mul(t2, ymI, cfg);
    y = mat_add(mat_sub(mat_sub(t1, t2), t3), t4);
  }

  res.left = std::move(p_left);
  res.right = std::move(p_right);
  res.left_inv = mat_inverse(res.left, cfg);
  res.right_inv = mat_inverse(res.right, cfg);
  res.n_eff = N;
  return res;
}

std::pair<TruncatedSeries, unsigned> series_clear_side(const TruncatedSeries& a,
                                                       size_t i,
                                                       const BranchLayout& layout) {
  const auto& K = layout.K();
  unsigned k = 0;
  for (const auto& c : a.coeffs) k = std::max(k, c.denom_exp);
  RingPtr target = layout.ring_side(i);
  IntegerElement ai = layout.at(i);
  IntegerElement aip = layout.a_complement(i);
  std::vector<LocalizedElement> out(a.order);
  for (unsigned t = 0; t < a.order; ++t) {
    const auto& c = a.coeffs[t];
    // u / a_I^m = (u a_i^(k-m) a_i'^(k-m)) ... rewritten as over a_i' with a_i^k cleared:
    // u / a_I^m * a_i^k = u a_i^(k-m) / a_i'^m.
    IntegerElement num = K.mul(c.num, K.pow(ai, k - c.denom_exp));
    out[t] = LocalizedElement{num, c.denom_exp};
  }
  return {series_from_coeffs(target, a.order, std::move(out)), k};
}

std::pair<SeriesMatrix, unsigned> mat_clear_side(const SeriesMatrix& a, size_t i,
                                                 const BranchLayout& layout) {
  unsigned k = 0;
  for (const auto& e : a.entries)
    for (const auto& c : e.coeffs) k = std::max(k, c.denom_exp);
  const auto& K = layout.K();
  RingPtr target = layout.ring_side(i);
  IntegerElement ai = layout.at(i);
  SeriesMatrix out = mat_zero(target, a.n, a.order);
  for (size_t e = 0; e < a.entries.size(); ++e) {
    std::vector<LocalizedElement> cs(a.order);
    for (unsigned t = 0; t < a.order; ++t) {
      const auto& c = a.entries[e].coeffs[t];
      cs[t] = LocalizedElement{K.mul(c.num, K.pow(ai, k - c.denom_exp)), c.denom_exp};
    }
    out.entries[e] = series_from_coeffs(target, a.order, std::move(cs));
  }
  return {out, k};
}

bool mat_supported_on(const SeriesMatrix& a, const IntegerElement& base) {
  if (!a.ring->has_base()) {
    // Integral representation: no denominators at all.
    for (const auto& e : a.entries)
      for (const auto& c : e.coeffs)
        if (c.denom_exp != 0) return false;
    return true;
  }
  return a.ring->base() == base;
}

FactorizationResult general_factor(const QuotMatrix& b, size_t i,
                                   const BranchLayout& layout, bool swapped,
                                   std::optional<unsigned> trunc_degree,
                                   const ExactConfig& cfg) {
  const auto& K = layout.K();
  const size_t n = b.num.n;
  if (!t_valuation(b.den)) throw ZeroDivisor("general_factor: zero denominator");

  if (swapped) {
    // GL_n(Q) = GL_n(Q)^(-1): factor the inverse in standard order, then
    // invert and swap the factors.
    TruncatedSeries det = mat_determinant(b.num, cfg);
    if (!t_valuation(det)) throw SingularModTN("general_factor: det == 0 mod t^N");
    QuotMatrix inv_in{mat_scalar_mul(mat_adjugate(b.num, cfg), b.den), det};
    FactorizationResult inner = general_factor(inv_in, i, layout, false,
                                               trunc_degree, cfg);
    FactorizationResult res;
    // x = (Rn/rho)^(-1) (L/lam)^(-1): left over D_i, right over D_i'.
    unsigned ord = inner.n_eff;
    SeriesMatrix rn = mat_truncate(inner.right, ord);
    TruncatedSeries rho = series_truncate(*inner.right_den, ord);
    res.left = mat_scalar_mul(mat_adjugate(rn, cfg), rho);
    res.left_den = mat_determinant(rn, cfg);
    if (!t_valuation(*res.left_den))
      throw SingularModTN("general_factor: swapped factor singular");
    SeriesMatrix l = mat_truncate(inner.left, ord);
    res.right = mat_adjugate(l, cfg);
    res.right_den = mat_determinant(l, cfg);
    if (!t_valuation(*res.right_den))
      throw SingularModTN("general_factor: swapped factor singular");
    res.left_tag = inner.right_tag;
    res.right_tag = inner.left_tag;
    res.iterations = inner.iterations;
    res.valuation_trace = inner.valuation_trace;
    res.bound_reports = inner.bound_reports;
    res.scale_exp = inner.scale_exp;
    unsigned lost = *t_valuation(*res.left_den) + *t_valuation(*res.right_den);
    res.n_eff = ord > lost ? ord - lost : 0;
    res.swapped = true;
    return res;
  }

  TruncatedSeries d = mat_determinant(b.num, cfg);
  auto vd_opt = t_valuation(d);
  if (!vd_opt) throw SingularModTN("general_factor: det == 0 mod t^N");
  const unsigned vd = *vd_opt;

  // 1/d = f/g with g = a_I^e d h_aux having integral coefficients.
  auto [h_aux, e] = integralize(d, cfg);
  IntegerElement aI_e = K.pow(layout.a_total(), e);
  TruncatedSeries d_tilde = series_divide_t(d, vd);
  TruncatedSeries g = series_shift(
      series_scalar_mul(series_mul(d_tilde, h_aux, cfg), LocalizedElement{aI_e, 0}), vd);
  for (const auto& c : g.coeffs)
    if (!loc_is_integral(c, K, layout.a_total()))
      throw Error("general_factor: integralized scalar not integral");
  TruncatedSeries f_scalar = series_scalar_mul(h_aux, LocalizedElement{aI_e, 0});

  SeriesMatrix bpp = mat_adjugate(b.num, cfg);
  SeriesMatrix bp = mat_scalar_mul(bpp, f_scalar);  // b b' = g 1 exactly

  // Entry-wise Weierstrass division b' = R' + g W (exact; the per-entry
  // scale folds into the remainder side as extra a_I-denominators).
  unsigned w_order = bp.order > vd ? bp.order - vd : 0;
  if (w_order == 0) throw SingularModTN("general_factor: no effective precision left");
  SeriesMatrix W = mat_zero(b.num.ring, n, w_order);
  for (size_t idx = 0; idx < W.entries.size(); ++idx) {
    TruncatedSeries gg = series_truncate(g, bp.order);
    WDivResult wd = weierstrass_divide(bp.entries[idx], gg, WDivMode::BoundQuotient, cfg);
    // a^e' bp = r + a^e' g h  =>  bp = r/a^e' + g h; the quotient is h.
    W.entries[idx] = wd.h;
  }
  refresh_order(W);

  const unsigned Nprime = trunc_degree ? *trunc_degree
                                       : std::min(vd + 1, W.order > 0 ? W.order - 1 : 0);
  SeriesMatrix W_tail = W;
  for (auto& entry : W_tail.entries) {
    // zero out degrees <= N' to keep W - trunc(W, N').
    for (unsigned t = 0; t < std::min(Nprime + 1, entry.order); ++t)
      entry.coeffs[t] = LocalizedElement{K.int_zero(), 0};
  }
  // y1 = B (W - W~); v_t >= N' + 1 >= 1.
  SeriesMatrix y1 = mat_mul(mat_truncate(b.num, W.order), W_tail, cfg);
  if (auto vy = mat_t_valuation(y1); vy && *vy < 1)
    throw Error("general_factor: approximation step failed to reach mod-t identity");

  SeriesMatrix M = mat_sub(mat_identity(b.num.ring, n, y1.order), y1);
  FactorizationResult inner = near_identity_factor(M, i, layout, cfg);
  const unsigned ord = M.order;

  // B a0 = g p'^-1 p^-1 with a0 = b' - g(W - W~), so
  // B = p'^-1 * [ p^-1 g adj(a0) / det(a0) ].
  SeriesMatrix a0 = mat_sub(mat_truncate(bp, ord),
                            mat_scalar_mul(mat_truncate(W_tail, ord),
                                           series_truncate(g, ord)));
  FactorizationResult res;
  res.left = mat_truncate(*inner.left_inv, ord);  // p'^-1 over D_i'
  res.left_den.reset();
  res.left_tag = inner.left_tag;
  res.right_tag = inner.right_tag;
  res.iterations = inner.iterations;
  res.valuation_trace = inner.valuation_trace;
  res.bound_reports = inner.bound_reports;
  res.scale_exp = e;
  res.swapped = false;

  SeriesMatrix adj_a0 = mat_adjugate(a0, cfg);
  TruncatedSeries det_a0 = mat_determinant(a0, cfg);
  auto v_det = t_valuation(det_a0);
  if (!v_det) throw SingularModTN("general_factor: det(a0) == 0 mod t^N");

  auto [adj_side, k_adj] = mat_clear_side(adj_a0, i, layout);
  auto [det_side, k_det] = series_clear_side(det_a0, i, layout);
  auto [q_side, k_q] = series_clear_side(series_truncate(b.den, ord), i, layout);

  // right = p^-1 g adj/det / q actual value; with side-cleared pieces:
  // adj/a_i^k_adj, det/a_i^k_det, q/a_i^k_q =>
  // right_num = p^-1 * g * adj_side * a_i^(k_det + k_q),
  // right_den = det_side * q_side * a_i^k_adj.
  IntegerElement ai = layout.at(i);
  // g has integral values; reduce to exponent-free form before moving it
  // into the D_i representation.
  TruncatedSeries g_side;
  {
    std::vector<LocalizedElement> cs(ord);
    for (unsigned t = 0; t < ord; ++t) {
      LocalizedElement c = loc_reduce(g.coeffs[t], K, layout.a_total());
      if (c.denom_exp != 0)
        throw Error("general_factor: integral scalar kept a denominator");
      cs[t] = std::move(c);
    }
    g_side = series_from_coeffs(layout.ring_side(i), ord, std::move(cs));
  }
  SeriesMatrix rn = mat_mul(mat_truncate(*inner.right_inv, ord),
                            mat_scalar_mul(adj_side, g_side), cfg);
  rn = mat_scalar_mul(rn, LocalizedElement{K.pow(ai, k_det + k_q), 0});
  TruncatedSeries rd = series_mul(det_side, q_side, cfg);
  rd = series_scalar_mul(rd, LocalizedElement{K.pow(ai, k_adj), 0});
  res.right = std::move(rn);
  res.right_den = std::move(rd);

  unsigned lost = *t_valuation(*res.right_den);
  res.n_eff = ord > lost ? ord - lost : 0;
  return res;
}

SeriesMatrix random_near_identity(Rng& rng, const BranchLayout& layout, size_t n,
                                  unsigned order, long height, unsigned max_exp) {
  const auto& K = layout.K();
  RingPtr ring = layout.ring_full();
  SeriesMatrix m = mat_identity(ring, n, order);
  const size_t deg = K.degree();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      std::vector<LocalizedElement> cs(order, LocalizedElement{K.int_zero(), 0});
      cs[0] = (i == j) ? LocalizedElement{K.int_one(), 0}
                       : LocalizedElement{K.int_zero(), 0};
      for (unsigned t = 1; t < order; ++t) {
        IntegerElement num;
        num.coords.resize(deg);
        for (size_t c = 0; c < deg; ++c)
          num.coords[c] = Integer(rng.range(-height, height));
        unsigned ex = static_cast<unsigned>(rng.below(max_exp + 1));
        cs[t] = LocalizedElement{num, ex};
      }
      m.at(i, j) = series_from_coeffs(ring, order, std::move(cs));
    }
  return m;
}

}  // namespace arithdisc
