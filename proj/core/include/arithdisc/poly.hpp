#pragma once

#include <optional>
#include <vector>

#include "arithdisc/numeric.hpp"

namespace arithdisc {

/// Dense univariate polynomial over Q, coeffs[i] = coefficient of x^i.
using QPoly = std::vector<Rational>;

QPoly poly_trim(QPoly p);
int poly_degree(const QPoly& p);  // -1 for the zero polynomial
bool poly_is_zero(const QPoly& p);
QPoly poly_add(const QPoly& a, const QPoly& b);
QPoly poly_sub(const QPoly& a, const QPoly& b);
QPoly poly_mul(const QPoly& a, const QPoly& b);
QPoly poly_scale(const QPoly& a, const Rational& c);
Rational poly_eval(const QPoly& p, const Rational& x);
RatInterval poly_eval_interval(const QPoly& p, const RatInterval& x);
QPoly poly_derivative(const QPoly& p);
/// Euclidean remainder over Q.
QPoly poly_rem(const QPoly& a, const QPoly& b);
QPoly poly_div(const QPoly& a, const QPoly& b);
QPoly poly_gcd(QPoly a, QPoly b);  // monic gcd
bool poly_squarefree(const QPoly& p);
QPoly poly_squarefree_part(const QPoly& p);

/// Resultant of two univariate polynomials (Sylvester determinant with the
/// given formal degrees; pass -1 to use the actual degrees).
Rational poly_resultant(const QPoly& a, const QPoly& b, int deg_a = -1, int deg_b = -1);

struct SturmChain {
  QPoly p;
  std::vector<QPoly> chain;

  static SturmChain build(const QPoly& p);
  int sign_variations(const Rational& x) const;
  /// Number of roots in (a, b].
  int count_roots(const Rational& a, const Rational& b) const;
};

/// Isolating intervals for the real roots of a squarefree polynomial; each
/// returned interval (a, b) has p(a) != 0, p(b) != 0 and exactly one root
/// strictly inside, or is a point [r, r] for an exact rational root.
std::vector<RatInterval> isolate_real_roots(const QPoly& p);

/// Shrink an isolating interval by sign bisection until width <= 2^-bits.
RatInterval refine_root(const QPoly& p, RatInterval iv, unsigned bits);

/// p(u + iv) = A(u, v) + i*v*B1(u, v) for real-coefficient p.  Returned as
/// polynomials in v with QPoly-in-u coefficients: A[j] is the u-polynomial
/// multiplying v^j.
struct ReImParts {
  std::vector<QPoly> A;
  std::vector<QPoly> B1;
};
ReImParts complex_parts(const QPoly& p);

/// Resultant with respect to v of two polynomials given as v-coefficient
/// lists of u-polynomials; computed by evaluation/interpolation.
QPoly resultant_in_v(const std::vector<QPoly>& a, const std::vector<QPoly>& b);
/// Same with the roles of u and v swapped (eliminates u).
QPoly resultant_in_u(const std::vector<QPoly>& a, const std::vector<QPoly>& b);

}  // namespace arithdisc
