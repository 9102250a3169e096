#include "arithdisc/numfield.hpp"

#include <algorithm>
#include <map>

#include "arithdisc/errors.hpp"

namespace arithdisc {

namespace {

bool integer_coeffs(const QPoly& p) {
  for (const auto& c : p)
    if (!is_integer(c)) return false;
  return true;
}

BoxInterval eval_power_at_box(const std::vector<Rational>& power,
                              const BoxInterval& z) {
  BoxInterval acc = BoxInterval::point(Rational(0), Rational(0));
  for (auto it = power.rbegin(); it != power.rend(); ++it) {
    acc = acc * z;
    acc.re = acc.re + RatInterval::point(*it);
    acc.im = acc.im;  // adding a real constant
  }
  return acc;
}

RatInterval sqrt_interval_enclosure(const RatInterval& sq, unsigned prec) {
  RatInterval lo = sqrt_enclosure(sq.lo, prec);
  RatInterval hi = sqrt_enclosure(sq.hi, prec);
  return {lo.lo, hi.hi};
}

}  // namespace

FieldPtr NumberField::create(QPoly min_poly, std::vector<std::vector<Rational>> basis,
                             std::vector<std::vector<Rational>> automorphism_images,
                             unsigned precision) {
  min_poly = poly_trim(std::move(min_poly));
  int deg = poly_degree(min_poly);
  if (deg < 1) throw Error("nf_create: degree must be at least 1");
  if (min_poly[deg] != 1) throw Error("nf_create: polynomial must be monic");
  if (!integer_coeffs(min_poly)) throw Error("nf_create: integer coefficients required");
  if (!poly_squarefree(min_poly)) throw NotSquarefree("nf_create: min_poly not squarefree");

  auto nf = std::shared_ptr<NumberField>(new NumberField());
  nf->min_poly_ = min_poly;
  nf->n_ = static_cast<size_t>(deg);
  const size_t n = nf->n_;

  if (basis.size() != n) throw BasisSingular("nf_create: basis must have n elements");
  nf->basis_ = QMat(n, n);
  for (size_t j = 0; j < n; ++j) {
    if (basis[j].size() != n) throw BasisSingular("nf_create: basis coordinate size");
    for (size_t i = 0; i < n; ++i) nf->basis_.at(i, j) = basis[j][i];
  }
  auto inv = qmat_inverse(nf->basis_);
  if (!inv) throw BasisSingular("nf_create: change of basis not invertible");
  nf->basis_inv_ = *inv;

  nf->isolate_roots(precision);

  // Integral structure constants give a pure-mpz multiplication fast path.
  {
    nf->int_mult_table_.assign(n * n * n, Integer(0));
    bool integral = true;
    for (size_t i = 0; i < n && integral; ++i)
      for (size_t j = 0; j < n && integral; ++j) {
        FieldElement bi = nf->zero(), bj = nf->zero();
        bi.coords[i] = 1;
        bj.coords[j] = 1;
        FieldElement prod = nf->mul(bi, bj);
        for (size_t k = 0; k < n; ++k) {
          if (!is_integer(prod.coords[k])) {
            integral = false;
            break;
          }
          nf->int_mult_table_[(i * n + j) * n + k] = prod.coords[k].get_num();
        }
      }
    nf->has_int_table_ = integral;
    if (!integral) nf->int_mult_table_.clear();
  }

  // Automorphisms: generator image omega must satisfy min_poly(omega) = 0
  // exactly; the induced matrix must be invertible with integer entries
  // (so that it restricts to R).
  bool have_identity = false;
  for (const auto& img_coords : automorphism_images) {
    if (img_coords.size() != n) throw AutomorphismInvalid("image coordinate size");
    FieldElement omega{img_coords};
    // Evaluate min_poly at omega inside K.
    FieldElement acc = nf->zero();
    for (auto it = min_poly.rbegin(); it != min_poly.rend(); ++it) {
      acc = nf->mul(acc, omega);
      acc = nf->add(acc, nf->from_rational(*it));
    }
    if (!acc.is_zero()) throw AutomorphismInvalid("image is not a root of min_poly");
    // Column j = coords of sigma(b_j): substitute omega into b_j's power poly.
    QMat mat(n, n);
    for (size_t j = 0; j < n; ++j) {
      std::vector<Rational> pw(n);
      for (size_t i = 0; i < n; ++i) pw[i] = nf->basis_.at(i, j);
      FieldElement img = nf->zero();
      for (auto it = pw.rbegin(); it != pw.rend(); ++it) {
        img = nf->mul(img, omega);
        img = nf->add(img, nf->from_rational(*it));
      }
      for (size_t i = 0; i < n; ++i) {
        if (!is_integer(img.coords[i]))
          throw AutomorphismInvalid("automorphism does not preserve R");
        mat.at(i, j) = img.coords[i];
      }
    }
    if (!qmat_inverse(mat)) throw AutomorphismInvalid("automorphism not invertible");
    if (omega == nf->generator()) {
      have_identity = true;
      nf->identity_auto_ = nf->auto_mats_.size();
    }
    nf->auto_images_.push_back(omega);
    nf->auto_mats_.push_back(std::move(mat));
  }
  if (nf->auto_mats_.empty()) {
    nf->auto_images_.push_back(nf->generator());
    nf->auto_mats_.push_back(QMat::identity(n));
    nf->identity_auto_ = 0;
    have_identity = true;
  }
  if (!have_identity) throw AutomorphismInvalid("identity automorphism missing");

  return nf;
}

void NumberField::isolate_roots(unsigned precision) {
  const size_t n = n_;
  if (n == 1) {
    // K = Q; the root is the rational -c0.
    real_.push_back(RatInterval::point(-min_poly_[0]));
    emb_bits_ = precision;
    return;
  }
  auto reals = isolate_real_roots(min_poly_);
  size_t r = reals.size();
  if ((n - r) % 2 != 0) throw IsolationFailed("parity mismatch in root count");
  size_t s = (n - r) / 2;
  for (auto& iv : reals) real_.push_back(refine_root(min_poly_, iv, precision));

  if (s > 0) {
    ReImParts parts = complex_parts(min_poly_);
    QPoly R = resultant_in_v(parts.A, parts.B1);
    QPoly S = resultant_in_u(parts.A, parts.B1);
    if (poly_is_zero(R) || poly_is_zero(S))
      throw IsolationFailed("degenerate resultant system");
    res_u_ = poly_squarefree_part(R);
    res_v_ = poly_squarefree_part(S);
    auto us = isolate_real_roots(res_u_);
    auto vs_all = isolate_real_roots(res_v_);
    std::vector<RatInterval> vs;
    for (auto& iv : vs_all) {
      RatInterval t = iv;
      // Shrink until sign-definite; v = 0 is never a root (squarefree p).
      for (int round = 0; round < 256 && t.lo <= 0 && t.hi >= 0; ++round)
        t = refine_root(res_v_, t, static_cast<unsigned>(round + 4));
      if (t.lo > 0) vs.push_back(t);
    }
    // Candidate boxes: every upper-half-plane root appears among them, each
    // box holds at most one root.  Exclude boxes where p is provably nonzero
    // until exactly s remain.
    struct Cand {
      RatInterval u, v;
      bool alive = true;
    };
    std::vector<Cand> cands;
    for (const auto& u : us)
      for (const auto& v : vs) cands.push_back({u, v, true});
    std::vector<Rational> power(min_poly_.begin(), min_poly_.end());
    unsigned bits = 4;
    for (int round = 0;; ++round) {
      size_t alive = 0;
      for (auto& c : cands) {
        if (!c.alive) continue;
        BoxInterval z{c.u, c.v};
        RatInterval msq = eval_power_at_box(power, z).modulus_sq();
        if (msq.lo > 0) {
          c.alive = false;
          continue;
        }
        ++alive;
      }
      if (alive == s) break;
      if (round > 64) throw IsolationFailed("complex isolation did not converge");
      bits *= 2;
      for (auto& c : cands) {
        if (!c.alive) continue;
        c.u = refine_root(res_u_, c.u, bits);
        c.v = refine_root(res_v_, c.v, bits);
      }
    }
    for (auto& c : cands)
      if (c.alive)
        complex_.emplace_back(refine_root(res_u_, c.u, precision),
                              refine_root(res_v_, c.v, precision));
  }
  if (real_.size() + 2 * complex_.size() != n)
    throw IsolationFailed("embedding count mismatch");
  emb_bits_ = precision;
}

void NumberField::refine_embeddings(unsigned bits) const {
  if (bits <= emb_bits_) return;
  for (auto& iv : real_) iv = refine_root(min_poly_, iv, bits);
  for (auto& [u, v] : complex_) {
    u = refine_root(res_u_, u, bits);
    v = refine_root(res_v_, v, bits);
  }
  emb_bits_ = bits;
}

FieldPtr NumberField::builtin(const std::string& name) {
  std::string key = name;
  if (key == "zeta4") key = "gaussian";
  if (key == "zeta3") key = "eisenstein";
  static std::mutex cache_mutex;
  static std::map<std::string, FieldPtr> cache;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto two_basis = std::vector<std::vector<Rational>>{{Rational(1), Rational(0)},
                                                      {Rational(0), Rational(1)}};
  auto q = [](long v) { return Rational(v); };
  FieldPtr field;
  if (key == "rational") {
    field = create(QPoly{q(0), q(1)}, {{q(1)}}, {{q(0)}});
  } else if (key == "gaussian") {
    field = create(QPoly{q(1), q(0), q(1)}, two_basis,
                   {{q(0), q(1)}, {q(0), q(-1)}});
  } else if (key == "eisenstein") {
    field = create(QPoly{q(1), q(1), q(1)}, two_basis,
                   {{q(0), q(1)}, {q(-1), q(-1)}});
  } else if (key == "sqrt2") {
    field = create(QPoly{q(-2), q(0), q(1)}, two_basis,
                   {{q(0), q(1)}, {q(0), q(-1)}});
  } else if (key == "sqrtm2") {
    field = create(QPoly{q(2), q(0), q(1)}, two_basis,
                   {{q(0), q(1)}, {q(0), q(-1)}});
  } else {
    throw Error("unknown builtin field: " + name);
  }
  std::lock_guard<std::mutex> lock(cache_mutex);
  return cache.emplace(key, std::move(field)).first->second;
}

FieldElement NumberField::one() const { return from_rational(Rational(1)); }

IntegerElement NumberField::int_one() const { return to_integral(one()); }

FieldElement NumberField::from_rational(const Rational& v) const {
  return from_power([&] {
    std::vector<Rational> p(n_, Rational(0));
    p[0] = v;
    return p;
  }());
}

IntegerElement NumberField::from_integer(const Integer& z) const {
  return to_integral(from_rational(Rational(z)));
}

FieldElement NumberField::generator() const {
  std::vector<Rational> p(n_, Rational(0));
  if (n_ >= 2)
    p[1] = 1;
  else
    p[0] = -min_poly_[0];  // the root itself when K = Q
  return from_power(std::move(p));
}

std::vector<Rational> NumberField::to_power(const FieldElement& x) const {
  return qmat_apply(basis_, x.coords);
}

FieldElement NumberField::from_power(std::vector<Rational> p) const {
  p.resize(n_, Rational(0));
  return FieldElement{qmat_apply(basis_inv_, p)};
}

FieldElement NumberField::to_field(const IntegerElement& x) const {
  FieldElement f;
  f.coords.reserve(n_);
  for (const auto& c : x.coords) f.coords.emplace_back(c);
  return f;
}

bool NumberField::is_integral(const FieldElement& x) const {
  for (const auto& c : x.coords)
    if (!is_integer(c)) return false;
  return true;
}

IntegerElement NumberField::to_integral(const FieldElement& x) const {
  IntegerElement r;
  r.coords.reserve(n_);
  for (const auto& c : x.coords) {
    if (!is_integer(c)) throw NotIntegral();
    r.coords.push_back(c.get_num());
  }
  return r;
}

std::optional<Rational> NumberField::as_rational(const FieldElement& x) const {
  auto p = to_power(x);
  for (size_t i = 1; i < p.size(); ++i)
    if (p[i] != 0) return std::nullopt;
  return p[0];
}

FieldElement NumberField::add(const FieldElement& x, const FieldElement& y) const {
  FieldElement r = x;
  for (size_t i = 0; i < n_; ++i) r.coords[i] += y.coords[i];
  return r;
}

FieldElement NumberField::sub(const FieldElement& x, const FieldElement& y) const {
  FieldElement r = x;
  for (size_t i = 0; i < n_; ++i) r.coords[i] -= y.coords[i];
  return r;
}

FieldElement NumberField::neg(const FieldElement& x) const {
  FieldElement r = x;
  for (auto& c : r.coords) c = -c;
  return r;
}

FieldElement NumberField::mul(const FieldElement& x, const FieldElement& y) const {
  QPoly px = poly_trim(to_power(x));
  QPoly py = poly_trim(to_power(y));
  QPoly prod = poly_rem(poly_mul(px, py), min_poly_);
  return from_power(std::move(prod));
}

FieldElement NumberField::div(const FieldElement& x, const FieldElement& y) const {
  if (y.is_zero()) throw NotDivisible("division by zero");
  auto sol = solve_rational(mul_matrix(y), x.coords);
  if (!sol) throw NotDivisible("divisor is a zero divisor");
  return FieldElement{*sol};
}

FieldElement NumberField::pow(const FieldElement& x, unsigned long e) const {
  FieldElement acc = one();
  FieldElement base = x;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

IntegerElement NumberField::add(const IntegerElement& x, const IntegerElement& y) const {
  IntegerElement r = x;
  for (size_t i = 0; i < n_; ++i) r.coords[i] += y.coords[i];
  return r;
}

IntegerElement NumberField::sub(const IntegerElement& x, const IntegerElement& y) const {
  IntegerElement r = x;
  for (size_t i = 0; i < n_; ++i) r.coords[i] -= y.coords[i];
  return r;
}

IntegerElement NumberField::neg(const IntegerElement& x) const {
  IntegerElement r = x;
  for (auto& c : r.coords) c = -c;
  return r;
}

IntegerElement NumberField::mul(const IntegerElement& x, const IntegerElement& y) const {
  if (has_int_table_) {
    IntegerElement r{std::vector<Integer>(n_, Integer(0))};
    for (size_t i = 0; i < n_; ++i) {
      if (x.coords[i] == 0) continue;
      for (size_t j = 0; j < n_; ++j) {
        if (y.coords[j] == 0) continue;
        Integer prod = x.coords[i] * y.coords[j];
        const Integer* row = &int_mult_table_[(i * n_ + j) * n_];
        for (size_t k = 0; k < n_; ++k)
          if (row[k] != 0) r.coords[k] += prod * row[k];
      }
    }
    return r;
  }
  return to_integral(mul(to_field(x), to_field(y)));
}

IntegerElement NumberField::pow(const IntegerElement& x, unsigned long e) const {
  IntegerElement acc = int_one();
  IntegerElement base = x;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    e >>= 1;
    if (e) base = mul(base, base);
  }
  return acc;
}

IntegerElement NumberField::div_exact(const IntegerElement& x,
                                      const IntegerElement& y) const {
  FieldElement q = div(to_field(x), to_field(y));
  if (!is_integral(q)) throw NotDivisible();
  return to_integral(q);
}

FieldElement NumberField::apply_automorphism(size_t idx, const FieldElement& x) const {
  if (idx >= auto_mats_.size()) throw Error("automorphism index out of range");
  return FieldElement{qmat_apply(auto_mats_[idx], x.coords)};
}

IntegerElement NumberField::apply_automorphism(size_t idx,
                                               const IntegerElement& x) const {
  return to_integral(apply_automorphism(idx, to_field(x)));
}

size_t NumberField::compose_automorphisms(size_t i, size_t j) const {
  FieldElement img = apply_automorphism(i, auto_images_[j]);
  for (size_t k = 0; k < auto_images_.size(); ++k)
    if (auto_images_[k] == img) return k;
  throw AutomorphismInvalid("automorphism list not closed under composition");
}

size_t NumberField::identity_automorphism() const { return identity_auto_; }

FieldElement NumberField::norm_to_subfield(const FieldElement& x,
                                           const std::vector<size_t>& coset) const {
  FieldElement acc = one();
  for (size_t idx : coset) acc = mul(acc, apply_automorphism(idx, x));
  return acc;
}

Integer NumberField::abs_norm(const IntegerElement& x) const {
  Rational det = qmat_det(mul_matrix(to_field(x)));
  Rational a = abs(det);
  if (!is_integer(a)) throw Error("abs_norm: non-integral determinant");
  return a.get_num();
}

QMat NumberField::mul_matrix(const FieldElement& x) const {
  QMat m(n_, n_);
  for (size_t j = 0; j < n_; ++j) {
    FieldElement bj;
    bj.coords.assign(n_, Rational(0));
    bj.coords[j] = 1;
    FieldElement img = mul(x, bj);
    for (size_t i = 0; i < n_; ++i) m.at(i, j) = img.coords[i];
  }
  return m;
}

IMat NumberField::mul_matrix_int(const IntegerElement& x) const {
  QMat q = mul_matrix(to_field(x));
  IMat m(n_, n_);
  for (size_t i = 0; i < n_; ++i)
    for (size_t j = 0; j < n_; ++j) {
      if (!is_integer(q.at(i, j)))
        throw NotIntegral("multiplication matrix not integral");
      m.at(i, j) = q.at(i, j).get_num();
    }
  return m;
}

std::vector<RatInterval> NumberField::modulus_sq_intervals(const FieldElement& x,
                                                           unsigned prec) const {
  std::vector<Rational> power = to_power(x);
  // Rational elements embed with the same absolute value everywhere.
  bool constant = true;
  for (size_t i = 1; i < power.size(); ++i)
    if (power[i] != 0) constant = false;
  std::vector<RatInterval> out;
  if (constant) {
    Rational m = power[0] * power[0];
    out.assign(real_.size() + complex_.size(), RatInterval::point(m));
    return out;
  }
  std::lock_guard<std::mutex> lock(emb_mutex_);
  refine_embeddings(prec);
  QPoly pw = poly_trim(power);
  for (const auto& iv : real_) out.push_back(poly_eval_interval(pw, iv).square());
  for (const auto& [u, v] : complex_)
    out.push_back(eval_power_at_box(power, BoxInterval{u, v}).modulus_sq());
  return out;
}

std::vector<BoxInterval> NumberField::embedding_boxes(unsigned prec) const {
  std::lock_guard<std::mutex> lock(emb_mutex_);
  refine_embeddings(prec);
  std::vector<BoxInterval> out;
  for (const auto& iv : real_)
    out.emplace_back(iv, RatInterval::point(Rational(0)));
  for (const auto& [u, v] : complex_) {
    out.emplace_back(u, v);
    out.emplace_back(u, RatInterval{-v.hi, -v.lo});
  }
  return out;
}

RatInterval NumberField::norm_interval(const FieldElement& x, unsigned prec) const {
  if (x.is_zero()) return RatInterval::point(Rational(0));
  auto sqs = modulus_sq_intervals(x, prec);
  RatInterval msq = sqs.front();
  for (size_t i = 1; i < sqs.size(); ++i) msq = interval_max(msq, sqs[i]);
  return sqrt_interval_enclosure(msq, prec);
}

RatInterval NumberField::norm_interval(const IntegerElement& x, unsigned prec) const {
  return norm_interval(to_field(x), prec);
}

NormEnclosure NumberField::arch_norm_enclosure(const FieldElement& x,
                                               unsigned prec) const {
  RatInterval iv = norm_interval(x, prec);
  return NormEnclosure{iv.lo, iv.hi, prec};
}

std::vector<RatInterval> NumberField::basis_norms(unsigned prec) const {
  {
    std::lock_guard<std::mutex> lock(c1_mutex_);
    auto it = basis_norm_cache_.find(prec);
    if (it != basis_norm_cache_.end()) return it->second;
  }
  std::vector<RatInterval> norms;
  norms.reserve(n_);
  for (size_t j = 0; j < n_; ++j) {
    FieldElement bj;
    bj.coords.assign(n_, Rational(0));
    bj.coords[j] = 1;
    norms.push_back(norm_interval(bj, prec));
  }
  std::lock_guard<std::mutex> lock(c1_mutex_);
  return basis_norm_cache_.emplace(prec, std::move(norms)).first->second;
}

RatInterval NumberField::c1_interval(unsigned prec) const {
  RatInterval acc = RatInterval::point(Rational(0));
  for (const auto& iv : basis_norms(prec)) acc = acc + iv;
  return acc;
}

NormEnclosure NumberField::c1_constant(unsigned prec) const {
  RatInterval iv = c1_interval(prec);
  return NormEnclosure{iv.lo, iv.hi, prec};
}

// --- free operations ------------------------------------------------------

IntegerElement round_to_integer(const FieldElement& f, const NumberField&) {
  IntegerElement h;
  h.coords.reserve(f.coords.size());
  for (const auto& lambda : f.coords) h.coords.push_back(round_half_down(lambda));
  return h;
}

namespace {

// Solve g w == rhs (mod a^M R) on the coordinate lattice.
std::optional<IntegerElement> solve_congruence(const NumberField& field,
                                               const IntegerElement& g,
                                               const IntegerElement& rhs,
                                               const IntegerElement& a_pow_M) {
  const size_t n = field.degree();
  IMat mg = field.mul_matrix_int(g);
  IMat mm = field.mul_matrix_int(a_pow_M);
  IMat sys(n, 2 * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      sys.at(i, j) = mg.at(i, j);
      sys.at(i, n + j) = mm.at(i, j);
    }
  auto sol = solve_integer(sys, rhs.coords);
  if (!sol) return std::nullopt;
  IntegerElement w;
  w.coords.assign(sol->begin(), sol->begin() + n);
  return w;
}

}  // namespace

LocalizedElement bounded_remainder_divide(const LocalizedElement& f,
                                          const IntegerElement& g,
                                          const NumberField& field,
                                          const IntegerElement& a,
                                          const ExactConfig& cfg) {
  if (g.is_zero()) throw Error("bounded_remainder_divide: g must be nonzero");
  const unsigned m = f.denom_exp;
  const size_t n = field.degree();

  // Escalation cap from a crude valuation bound on g.
  Rational gnorm_hi = field.norm_interval(g, cfg.prec_start).hi;
  unsigned long cap_log = 0;
  {
    Rational bound = gnorm_hi + 1;
    Integer ceil_b = bound.get_num() / bound.get_den() + 1;
    cap_log = mpz_sizeinbase(ceil_b.get_mpz_t(), 2);
  }
  const unsigned M_cap = m + static_cast<unsigned>(n * cap_log) + 8;

  std::optional<IntegerElement> w;
  unsigned M = m;
  IntegerElement a_pow = field.pow(a, M);
  while (true) {
    cfg.poll_cancel();
    IntegerElement rhs = field.mul(f.num, field.pow(a, M - m));
    w = solve_congruence(field, g, rhs, a_pow);
    if (w) break;
    if (M >= M_cap) throw NoSolution("bounded_remainder_divide: congruence unsolvable");
    unsigned next = M == 0 ? 1 : 2 * M;
    M = std::min(next, M_cap);
    a_pow = field.pow(a, M);
  }

  // Minimal-norm lift of w modulo a^M R.
  FieldElement w_over = field.div(field.to_field(*w), field.to_field(a_pow));
  IntegerElement rho = round_to_integer(w_over, field);
  IntegerElement w_red = field.sub(*w, field.mul(a_pow, rho));

  // Residual r = f - g h with h = w_red / a^M; integral by construction.
  IntegerElement num = field.sub(field.mul(f.num, field.pow(a, M - m)),
                                 field.mul(g, w_red));
  IntegerElement r = field.div_exact(num, a_pow);
  LocalizedElement h{w_red, M};

  auto r_norm = [&](unsigned prec) { return field.norm_interval(r, prec); };
  auto cg = [&](unsigned prec) {
    return field.c1_interval(prec) * field.norm_interval(g, prec);
  };
  if (certify_less(r_norm, cg, cfg) == Certainty::True) return h;

  // Rounding step: subtract g * round(r/g); leaves ||r|| <= C_g / 2.
  IntegerElement rho2 =
      round_to_integer(field.div(field.to_field(r), field.to_field(g)), field);
  r = field.sub(r, field.mul(g, rho2));
  h.num = field.add(h.num, field.mul(a_pow, rho2));
  auto r2_norm = [&](unsigned prec) { return field.norm_interval(r, prec); };
  Certainty res = certify_less(r2_norm, cg, cfg);
  if (res != Certainty::True)
    throw Error("bounded_remainder_divide: norm bound undecidable at precision cap");
  return h;
}

std::pair<IntegerElement, IntegerElement> bezout_coprime(const IntegerElement& x,
                                                         const IntegerElement& y,
                                                         const NumberField& field) {
  if (x.is_zero() || y.is_zero()) throw Error("bezout_coprime: zero argument");
  const size_t n = field.degree();
  IMat mx = field.mul_matrix_int(x);
  IMat my = field.mul_matrix_int(y);
  IMat lattice(n, 2 * n);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      lattice.at(i, j) = mx.at(i, j);
      lattice.at(i, n + j) = my.at(i, j);
    }
  auto sol = solve_integer(lattice, field.int_one().coords);
  if (!sol) {
    SmithResult s = smith_normal_form(lattice);
    Integer index(1);
    for (size_t i = 0; i < n; ++i) index *= s.D.at(i, i);
    throw NotCoprime("ideal (x, y) proper; lattice index " +
                     Integer(abs(index)).get_str());
  }
  IntegerElement alpha, beta;
  alpha.coords.assign(sol->begin(), sol->begin() + n);
  beta.coords.assign(sol->begin() + n, sol->end());

  // Reduce alpha modulo y R for a small canonical certificate.
  IntegerElement rho =
      round_to_integer(field.div(field.to_field(alpha), field.to_field(y)), field);
  alpha = field.sub(alpha, field.mul(y, rho));
  FieldElement bq = field.div(
      field.sub(field.one(), field.mul(field.to_field(alpha), field.to_field(x))),
      field.to_field(y));
  beta = field.to_integral(bq);

  IntegerElement check = field.add(field.mul(alpha, x), field.mul(beta, y));
  if (!(check == field.int_one())) throw Error("bezout_coprime: certificate failed");
  return {alpha, beta};
}

namespace {

// Coordinate tuples in the order 0, 1, -1, 2, -2, ...
Integer unrank_coord(unsigned long r) {
  if (r == 0) return 0;
  long k = static_cast<long>((r + 1) / 2);
  return (r % 2 == 1) ? Integer(k) : Integer(-k);
}

}  // namespace

LocalizedElement unit_ball_search_localized(const IntegerElement& a,
                                            const NumberField& field,
                                            unsigned degree_bound,
                                            unsigned height_bound,
                                            const ExactConfig& cfg) {
  if (a.is_zero() || field.abs_norm(a) <= 1)
    throw Error("unit_ball_search: a must be nonzero and non-invertible");
  const unsigned d = degree_bound;
  std::vector<IntegerElement> a_pows(d + 1);
  a_pows[0] = field.int_one();
  for (unsigned j = 1; j <= d; ++j) a_pows[j] = field.mul(a_pows[j - 1], a);

  const unsigned prec_rank = std::max(cfg.prec_start, 32u);
  struct Cand {
    LocalizedElement le;
    Rational upper;
    size_t order;
  };
  std::vector<Cand> cands;
  std::vector<unsigned long> ranks(d + 1, 0);
  size_t order = 0;
  const unsigned long per_coord = 2 * height_bound + 1;
  while (true) {
    cfg.poll_cancel();
    // Candidate value sum_j c_j a^(-j) = (sum_j c_j a^(d-j)) / a^d.
    IntegerElement num = field.int_zero();
    bool all_zero = true;
    for (unsigned j = 0; j <= d; ++j) {
      Integer c = unrank_coord(ranks[j]);
      if (c != 0) {
        all_zero = false;
        IntegerElement term = a_pows[d - j];
        for (auto& t : term.coords) t *= c;
        num = field.add(num, term);
      }
    }
    if (!all_zero && !num.is_zero()) {
      LocalizedElement le{num, d};
      RatInterval nrm = loc_norm_interval(le, field, a, prec_rank);
      if (nrm.lo < 1) cands.push_back({le, nrm.hi, order});
    }
    ++order;
    // Advance odometer (last coordinate fastest).
    size_t pos = d;
    while (true) {
      if (++ranks[pos] < per_coord) break;
      ranks[pos] = 0;
      if (pos == 0) break;
      --pos;
    }
    if (pos == 0 && ranks[0] == 0) break;
  }

  std::stable_sort(cands.begin(), cands.end(), [](const Cand& x, const Cand& y) {
    if (x.upper != y.upper) return x.upper < y.upper;
    return x.order < y.order;
  });
  auto one_fn = [](unsigned) { return RatInterval::point(Rational(1)); };
  for (const auto& c : cands) {
    auto norm_fn = [&](unsigned prec) { return loc_norm_interval(c.le, field, a, prec); };
    if (certify_less(norm_fn, one_fn, cfg) == Certainty::True) return c.le;
  }
  throw SearchExhausted("unit_ball_search: no certified candidate within bounds");
}

FieldElement unit_ball_search(const IntegerElement& a, const NumberField& field,
                              unsigned degree_bound, unsigned height_bound,
                              const ExactConfig& cfg) {
  LocalizedElement le = unit_ball_search_localized(a, field, degree_bound,
                                                   height_bound, cfg);
  return loc_value(le, field, a);
}

std::vector<IntegerElement> conjugate_coprime_search(
    const NumberField& field, const std::vector<size_t>& galois,
    const IntegerElement& b, size_t count, unsigned height_bound,
    const ExactConfig& cfg) {
  if (b.is_zero()) throw Error("conjugate_coprime_search: b must be nonzero");
  // The supplied automorphisms must form a group.
  bool has_id = false;
  for (size_t i : galois) {
    if (i == field.identity_automorphism()) has_id = true;
    for (size_t j : galois) {
      size_t c = field.compose_automorphisms(i, j);
      if (std::find(galois.begin(), galois.end(), c) == galois.end())
        throw AutomorphismInvalid("galois list not closed under composition");
    }
  }
  if (!has_id) throw AutomorphismInvalid("galois list lacks the identity");

  std::vector<IntegerElement> chosen;
  if (count == 0) return chosen;
  std::vector<IntegerElement> pool{b};
  const size_t n = field.degree();

  auto coprime = [&](const IntegerElement& x, const IntegerElement& y) {
    try {
      bezout_coprime(x, y, field);
      return true;
    } catch (const NotCoprime&) {
      return false;
    }
  };

  for (unsigned h = 1; h <= height_bound && chosen.size() < count; ++h) {
    // Tuples with max |coord| == h; the last coordinate varies slowest.
    std::vector<unsigned long> ranks(n, 0);
    const unsigned long per_coord = 2 * h + 1;
    while (true) {
      cfg.poll_cancel();
      Integer maxabs(0);
      IntegerElement cand;
      cand.coords.resize(n);
      for (size_t i = 0; i < n; ++i) {
        cand.coords[i] = unrank_coord(ranks[n - 1 - i]);
        maxabs = std::max(maxabs, Integer(abs(cand.coords[i])));
      }
      if (maxabs == h) {
        bool ok = !cand.is_zero() && field.abs_norm(cand) > 1;
        std::vector<IntegerElement> orbit;
        if (ok) {
          for (size_t g : galois) {
            IntegerElement img = field.apply_automorphism(g, cand);
            bool dup = false;
            for (const auto& o : orbit)
              if (o == img) dup = true;
            if (!dup) orbit.push_back(img);
          }
          if (orbit.size() != galois.size()) ok = false;  // not primitive
        }
        if (ok) {
          for (size_t i = 0; i < orbit.size() && ok; ++i)
            for (size_t j = i + 1; j < orbit.size() && ok; ++j)
              if (!coprime(orbit[i], orbit[j])) ok = false;
          for (const auto& o : orbit)
            for (const auto& p : pool) {
              if (!ok) break;
              if (!coprime(o, p)) ok = false;
            }
        }
        if (ok) {
          chosen.push_back(cand);
          for (auto& o : orbit) pool.push_back(std::move(o));
          if (chosen.size() == count) return chosen;
        }
      }
      // Odometer with the first rank slot slowest (= e_{n-1} varies last).
      size_t bump = n;
      for (size_t i = n; i-- > 0;) {
        if (ranks[i] + 1 < per_coord) {
          bump = i;
          break;
        }
      }
      if (bump == n) break;
      ++ranks[bump];
      for (size_t i = bump + 1; i < n; ++i) ranks[i] = 0;
    }
  }
  throw SearchExhausted("conjugate_coprime_search: bounds exhausted");
}

// --- LocalizedElement helpers ----------------------------------------------

bool loc_is_zero(const LocalizedElement& x) { return x.num.is_zero(); }

bool loc_equal(const LocalizedElement& x, const LocalizedElement& y,
               const NumberField& field, const IntegerElement& a) {
  if (x.denom_exp == y.denom_exp) return x.num == y.num;
  unsigned m = std::max(x.denom_exp, y.denom_exp);
  IntegerElement xs = field.mul(x.num, field.pow(a, m - x.denom_exp));
  IntegerElement ys = field.mul(y.num, field.pow(a, m - y.denom_exp));
  return xs == ys;
}

LocalizedElement loc_add(const LocalizedElement& x, const LocalizedElement& y,
                         const NumberField& field, const IntegerElement& a) {
  unsigned m = std::max(x.denom_exp, y.denom_exp);
  IntegerElement xs = x.denom_exp == m ? x.num
                                       : field.mul(x.num, field.pow(a, m - x.denom_exp));
  IntegerElement ys = y.denom_exp == m ? y.num
                                       : field.mul(y.num, field.pow(a, m - y.denom_exp));
  return LocalizedElement{field.add(xs, ys), m};
}

LocalizedElement loc_sub(const LocalizedElement& x, const LocalizedElement& y,
                         const NumberField& field, const IntegerElement& a) {
  return loc_add(x, loc_neg(y, field), field, a);
}

LocalizedElement loc_neg(const LocalizedElement& x, const NumberField& field) {
  return LocalizedElement{field.neg(x.num), x.denom_exp};
}

LocalizedElement loc_mul(const LocalizedElement& x, const LocalizedElement& y,
                         const NumberField& field) {
  return LocalizedElement{field.mul(x.num, y.num), x.denom_exp + y.denom_exp};
}

FieldElement loc_value(const LocalizedElement& x, const NumberField& field,
                       const IntegerElement& a) {
  if (x.denom_exp == 0) return field.to_field(x.num);
  return field.div(field.to_field(x.num),
                   field.to_field(field.pow(a, x.denom_exp)));
}

bool loc_is_integral(const LocalizedElement& x, const NumberField& field,
                     const IntegerElement& a) {
  if (x.denom_exp == 0) return true;
  return field.is_integral(loc_value(x, field, a));
}

LocalizedElement loc_reduce(LocalizedElement x, const NumberField& field,
                            const IntegerElement& a) {
  while (x.denom_exp > 0) {
    try {
      x.num = field.div_exact(x.num, a);
      --x.denom_exp;
    } catch (const NotDivisible&) {
      break;
    }
  }
  return x;
}

RatInterval loc_norm_interval(const LocalizedElement& x, const NumberField& field,
                              const IntegerElement& a, unsigned prec) {
  if (x.num.is_zero()) return RatInterval::point(Rational(0));
  if (x.denom_exp == 0) return field.norm_interval(x.num, prec);
  // Per-embedding |sigma(num)| / |sigma(a)|^m; refine until the denominator
  // is bounded away from zero.
  unsigned p = prec;
  for (;;) {
    auto num_sq = field.modulus_sq_intervals(field.to_field(x.num), p);
    auto den_sq = field.modulus_sq_intervals(field.to_field(a), p);
    bool ok = true;
    for (const auto& d : den_sq)
      if (d.lo <= 0) ok = false;
    if (ok) {
      RatInterval best;
      bool first = true;
      for (size_t i = 0; i < num_sq.size(); ++i) {
        RatInterval dpow = den_sq[i];
        RatInterval acc = RatInterval::point(Rational(1));
        unsigned long e = x.denom_exp;
        RatInterval base = dpow;
        while (e) {
          if (e & 1) acc = acc * base;
          e >>= 1;
          if (e) base = base * base;
        }
        RatInterval ratio = interval_div_pos(num_sq[i], acc);
        best = first ? ratio : interval_max(best, ratio);
        first = false;
      }
      return sqrt_interval_enclosure(best, prec);
    }
    p *= 2;
    if (p > (1u << 24)) throw Error("loc_norm_interval: cannot separate a from 0");
  }
}

}  // namespace arithdisc
