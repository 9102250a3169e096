#pragma once

#include <gmpxx.h>

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "arithdisc/config.hpp"

namespace arithdisc {

using Integer = mpz_class;
using Rational = mpq_class;

/// mpq_class(n, d) does not canonicalize; this does.
Rational make_rational(const Integer& num, const Integer& den);
Rational parse_rational(const std::string& text);
std::string rational_to_string(const Rational& q);

Integer pow_int(const Integer& base, unsigned long e);
Rational pow_rat(const Rational& base, unsigned long e);
bool is_integer(const Rational& q);
/// Nearest integer with ties broken downward (toward floor).
Integer round_half_down(const Rational& q);
Integer floor_div(const Integer& a, const Integer& b);

/// Closed rational interval [lo, hi].
struct RatInterval {
  Rational lo, hi;

  RatInterval() : lo(0), hi(0) {}
  RatInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  static RatInterval point(const Rational& q) { return {q, q}; }

  Rational width() const { return hi - lo; }
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  bool contains(const RatInterval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }
  bool is_point() const { return lo == hi; }

  RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
  RatInterval operator-(const RatInterval& o) const { return {lo - o.hi, hi - o.lo}; }
  RatInterval operator-() const { return {-hi, -lo}; }
  RatInterval operator*(const RatInterval& o) const;
  RatInterval operator*(const Rational& c) const;

  /// Enclosure of {x^2 : x in this}; lower bound clamps at 0 across sign changes.
  RatInterval square() const;
  /// Enclosure of |x| over the interval.
  RatInterval abs() const;
};

RatInterval interval_max(const RatInterval& a, const RatInterval& b);
/// Division a/b for b with lo > 0.
RatInterval interval_div_pos(const RatInterval& a, const RatInterval& b);

/// Rectangle enclosure of a complex value.
struct BoxInterval {
  RatInterval re, im;

  BoxInterval() = default;
  BoxInterval(RatInterval r, RatInterval i) : re(std::move(r)), im(std::move(i)) {}
  static BoxInterval point(const Rational& r, const Rational& i) {
    return {RatInterval::point(r), RatInterval::point(i)};
  }

  BoxInterval operator+(const BoxInterval& o) const { return {re + o.re, im + o.im}; }
  BoxInterval operator*(const BoxInterval& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  BoxInterval scaled(const Rational& c) const { return {re * c, im * c}; }

  RatInterval modulus_sq() const { return re.square() + im.square(); }
};

/// [l, u] with l^2 <= q <= u^2 and u - l <= 2^-prec_bits.  Exact when q is a
/// perfect rational square.
RatInterval sqrt_enclosure(const Rational& q, unsigned prec_bits);
/// Upper enclosure of q^(1/n) (used by the growth diagnostic).
RatInterval nth_root_enclosure(const Rational& q, unsigned long n, unsigned prec_bits);

enum class Certainty { True, False, Undecidable };

/// Decide `x < y` strictly by recomputing both enclosures at doubling
/// precision until the cap; never silently passes an undecidable comparison.
Certainty certify_less(const std::function<RatInterval(unsigned)>& x,
                       const std::function<RatInterval(unsigned)>& y,
                       const ExactConfig& cfg);

std::ostream& operator<<(std::ostream& os, const RatInterval& iv);

}  // namespace arithdisc
