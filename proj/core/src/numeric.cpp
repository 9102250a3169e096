#include "arithdisc/numeric.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "arithdisc/errors.hpp"

namespace arithdisc {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw Error("make_rational: zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

Rational parse_rational(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos) {
    return Rational(Integer(text));
  }
  Integer num(text.substr(0, slash));
  Integer den(text.substr(slash + 1));
  return make_rational(num, den);
}

std::string rational_to_string(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return q.get_num().get_str() + "/" + q.get_den().get_str();
}

Integer pow_int(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

Rational pow_rat(const Rational& base, unsigned long e) {
  return make_rational(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
}

bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Integer round_half_down(const Rational& q) {
  // floor(q) unless the fractional part exceeds 1/2; exactly 1/2 stays at floor.
  Integer fl = floor_div(q.get_num(), q.get_den());
  Rational frac = q - Rational(fl);
  if (frac > make_rational(1, 2)) return fl + 1;
  return fl;
}

RatInterval RatInterval::operator*(const RatInterval& o) const {
  Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
  return {std::min(std::min(a, b), std::min(c, d)),
          std::max(std::max(a, b), std::max(c, d))};
}

RatInterval RatInterval::operator*(const Rational& c) const {
  if (c >= 0) return {lo * c, hi * c};
  return {hi * c, lo * c};
}

RatInterval RatInterval::square() const {
  Rational a = lo * lo, b = hi * hi;
  if (lo >= 0) return {a, b};
  if (hi <= 0) return {b, a};
  return {Rational(0), std::max(a, b)};
}

RatInterval RatInterval::abs() const {
  if (lo >= 0) return *this;
  if (hi <= 0) return {-hi, -lo};
  return {Rational(0), std::max(Rational(-lo), hi)};
}

RatInterval interval_max(const RatInterval& a, const RatInterval& b) {
  return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
}

RatInterval interval_div_pos(const RatInterval& a, const RatInterval& b) {
  if (b.lo <= 0) throw Error("interval_div_pos: denominator not positive");
  Rational p = a.lo / b.lo, q = a.lo / b.hi, r = a.hi / b.lo, s = a.hi / b.hi;
  return {std::min(std::min(p, q), std::min(r, s)),
          std::max(std::max(p, q), std::max(r, s))};
}

namespace {

bool perfect_square(const Integer& z, Integer& root) {
  if (z < 0) return false;
  mpz_sqrt(root.get_mpz_t(), z.get_mpz_t());
  return root * root == z;
}

}  // namespace

RatInterval sqrt_enclosure(const Rational& q, unsigned prec_bits) {
  if (q < 0) throw Error("sqrt_enclosure: negative argument");
  if (q == 0) return RatInterval::point(Rational(0));
  Integer rn, rd;
  if (perfect_square(q.get_num(), rn) && perfect_square(q.get_den(), rd)) {
    return RatInterval::point(make_rational(rn, rd));
  }
  // sqrt(n/d) = sqrt(n*d)/d; scale by 4^s so the integer sqrt gives width
  // 1/(d*2^s) <= 2^-prec_bits.
  const Integer& n = q.get_num();
  const Integer& d = q.get_den();
  unsigned long s = prec_bits + 1;
  Integer scaled = n * d;
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), 2 * s);
  Integer x;
  mpz_sqrt(x.get_mpz_t(), scaled.get_mpz_t());
  Integer denom = d;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), s);
  return {make_rational(x, denom), make_rational(x + 1, denom)};
}

RatInterval nth_root_enclosure(const Rational& q, unsigned long n, unsigned prec_bits) {
  if (q < 0) throw Error("nth_root_enclosure: negative argument");
  if (n == 0) throw Error("nth_root_enclosure: zeroth root");
  if (q == 0) return RatInterval::point(Rational(0));
  if (n == 1) return RatInterval::point(q);
  // Integer n-th root of num*den^(n-1) scaled by 2^(n*s).
  const Integer& num = q.get_num();
  const Integer& den = q.get_den();
  unsigned long s = prec_bits + 1;
  Integer scaled = num * pow_int(den, n - 1);
  mpz_mul_2exp(scaled.get_mpz_t(), scaled.get_mpz_t(), n * s);
  Integer x;
  mpz_root(x.get_mpz_t(), scaled.get_mpz_t(), n);
  Integer denom = den;
  mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), s);
  return {make_rational(x, denom), make_rational(x + 1, denom)};
}

Certainty certify_less(const std::function<RatInterval(unsigned)>& x,
                       const std::function<RatInterval(unsigned)>& y,
                       const ExactConfig& cfg) {
  for (unsigned prec = cfg.prec_start;; prec *= 2) {
    cfg.poll_cancel();
    RatInterval ix = x(prec);
    RatInterval iy = y(prec);
    if (ix.hi < iy.lo) return Certainty::True;
    if (ix.lo >= iy.hi) return Certainty::False;
    if (prec >= cfg.prec_cap) return Certainty::Undecidable;
  }
}

std::ostream& operator<<(std::ostream& os, const RatInterval& iv) {
  return os << "[" << rational_to_string(iv.lo) << ", " << rational_to_string(iv.hi)
            << "]";
}

}  // namespace arithdisc
