#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "arithdisc/config.hpp"
#include "arithdisc/intlinalg.hpp"
#include "arithdisc/numeric.hpp"
#include "arithdisc/poly.hpp"

namespace arithdisc {

/// Element of R = O_K, coordinates w.r.t. the integral basis.
struct IntegerElement {
  std::vector<Integer> coords;

  bool operator==(const IntegerElement& o) const { return coords == o.coords; }
  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
};

/// Element of K, coordinates w.r.t. the integral basis.
struct FieldElement {
  std::vector<Rational> coords;

  bool operator==(const FieldElement& o) const { return coords == o.coords; }
  bool is_zero() const {
    for (const auto& c : coords)
      if (c != 0) return false;
    return true;
  }
};

/// u / a^m in R[1/a]; the base a lives in the surrounding ring descriptor.
struct LocalizedElement {
  IntegerElement num;
  unsigned denom_exp = 0;
};

/// lower <= ||x|| <= upper, computed at the recorded refinement precision.
struct NormEnclosure {
  Rational lower, upper;
  unsigned precision = 0;

  RatInterval interval() const { return {lower, upper}; }
};

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

class NumberField {
 public:
  /// Validates all type invariants: monic squarefree integer polynomial,
  /// invertible basis, exact automorphisms, isolated root enclosures.
  /// Basis elements and automorphism generator images are given by their
  /// power-basis coordinates resp. integral-basis coordinates.
  static FieldPtr create(QPoly min_poly, std::vector<std::vector<Rational>> basis,
                         std::vector<std::vector<Rational>> automorphism_images,
                         unsigned precision = 32);

  /// Presets with verified integral bases: rational, gaussian (= zeta4),
  /// eisenstein (= zeta3), sqrt2, sqrtm2.
  static FieldPtr builtin(const std::string& name);

  size_t degree() const { return n_; }
  size_t real_embeddings() const { return real_.size(); }
  size_t complex_pairs() const { return complex_.size(); }
  size_t automorphism_count() const { return auto_mats_.size(); }
  const QPoly& min_poly() const { return min_poly_; }

  FieldElement zero() const { return FieldElement{std::vector<Rational>(n_, Rational(0))}; }
  FieldElement one() const;
  IntegerElement int_zero() const { return IntegerElement{std::vector<Integer>(n_, Integer(0))}; }
  IntegerElement int_one() const;
  FieldElement from_rational(const Rational& q) const;
  IntegerElement from_integer(const Integer& z) const;
  /// Generator of the power basis (the root of min_poly) as a field element.
  FieldElement generator() const;

  FieldElement to_field(const IntegerElement& x) const;
  bool is_integral(const FieldElement& x) const;
  IntegerElement to_integral(const FieldElement& x) const;  // throws NotIntegral
  /// The rational the element equals, when it lies in Q.
  std::optional<Rational> as_rational(const FieldElement& x) const;

  FieldElement add(const FieldElement& x, const FieldElement& y) const;
  FieldElement sub(const FieldElement& x, const FieldElement& y) const;
  FieldElement neg(const FieldElement& x) const;
  FieldElement mul(const FieldElement& x, const FieldElement& y) const;
  /// Exact division in K; NotDivisible when y is zero or a zero divisor.
  FieldElement div(const FieldElement& x, const FieldElement& y) const;
  FieldElement pow(const FieldElement& x, unsigned long e) const;

  IntegerElement add(const IntegerElement& x, const IntegerElement& y) const;
  IntegerElement sub(const IntegerElement& x, const IntegerElement& y) const;
  IntegerElement neg(const IntegerElement& x) const;
  IntegerElement mul(const IntegerElement& x, const IntegerElement& y) const;
  IntegerElement pow(const IntegerElement& x, unsigned long e) const;
  /// Exact quotient x / y in R; NotDivisible when it does not exist.
  IntegerElement div_exact(const IntegerElement& x, const IntegerElement& y) const;

  FieldElement apply_automorphism(size_t idx, const FieldElement& x) const;
  IntegerElement apply_automorphism(size_t idx, const IntegerElement& x) const;
  /// Index of the composite sigma_i . sigma_j (applies j first).
  size_t compose_automorphisms(size_t i, size_t j) const;
  size_t identity_automorphism() const;
  /// Product over the supplied automorphism coset (N_{K/K0} when the coset
  /// lists Gal(K/K0)).
  FieldElement norm_to_subfield(const FieldElement& x,
                                const std::vector<size_t>& coset) const;

  /// N_{K/Q} up to sign (determinant of multiplication).
  Integer abs_norm(const IntegerElement& x) const;
  QMat mul_matrix(const FieldElement& x) const;
  IMat mul_matrix_int(const IntegerElement& x) const;
  /// Coordinates w.r.t. the power basis 1, gen, gen^2, ...
  std::vector<Rational> power_coords(const FieldElement& x) const {
    return to_power(x);
  }

  /// Interval enclosing ||x|| = max over embeddings of |sigma(x)|; exact
  /// (width 0) for rational x, monotone under precision doubling.
  RatInterval norm_interval(const FieldElement& x, unsigned prec) const;
  RatInterval norm_interval(const IntegerElement& x, unsigned prec) const;
  NormEnclosure arch_norm_enclosure(const FieldElement& x, unsigned prec) const;

  /// C_1 = sum of ||b_i|| over the integral basis: the rounding bound.
  RatInterval c1_interval(unsigned prec) const;
  NormEnclosure c1_constant(unsigned prec) const;
  /// Per-basis-element norm enclosures (cached); C_1 is their sum.
  std::vector<RatInterval> basis_norms(unsigned prec) const;

  /// Per-embedding modulus-squared enclosures of sigma(x); length = r + s
  /// (one entry per conjugate pair).
  std::vector<RatInterval> modulus_sq_intervals(const FieldElement& x,
                                                unsigned prec) const;
  /// Boxes for all n embeddings (conjugates expanded), fixed order.
  std::vector<BoxInterval> embedding_boxes(unsigned prec) const;

 private:
  NumberField() = default;
  void isolate_roots(unsigned precision);
  void refine_embeddings(unsigned bits) const;
  std::vector<Rational> to_power(const FieldElement& x) const;
  FieldElement from_power(std::vector<Rational> p) const;

  QPoly min_poly_;
  size_t n_ = 0;
  QMat basis_;      // column j = power coords of basis element j
  QMat basis_inv_;  // power coords -> integral-basis coords
  std::vector<FieldElement> auto_images_;
  std::vector<QMat> auto_mats_;  // action on integral-basis coords (integer entries)
  size_t identity_auto_ = 0;
  // b_i b_j = sum_k table[(i n + j) n + k] b_k when the structure constants
  // are integral (true for genuine integral bases); fast path for R.
  std::vector<Integer> int_mult_table_;
  bool has_int_table_ = false;
  mutable std::mutex c1_mutex_;
  mutable std::map<unsigned, std::vector<RatInterval>> basis_norm_cache_;

  // Root enclosures. Real roots are intervals of min_poly; complex pairs are
  // (u, v) interval pairs for the squarefree resultant polynomials, v > 0.
  QPoly res_u_, res_v_;
  mutable std::mutex emb_mutex_;
  mutable std::vector<RatInterval> real_;
  mutable std::vector<std::pair<RatInterval, RatInterval>> complex_;
  mutable unsigned emb_bits_ = 0;
};

// --- free operations ------------------------------------------------------

/// Coordinate-wise nearest integer, ties downward;
/// guarantees ||f - h|| <= C_1 / 2.
IntegerElement round_to_integer(const FieldElement& f, const NumberField& field);

/// Bounded-remainder division: h in R[1/a] with f - g h in R and
/// ||f - g h|| < C_g = C_1 ||g||.
/// The denominator exponent escalates (doubling, capped) until the Smith-form
/// congruence becomes solvable.
LocalizedElement bounded_remainder_divide(const LocalizedElement& f,
                                          const IntegerElement& g,
                                          const NumberField& field,
                                          const IntegerElement& a,
                                          const ExactConfig& cfg = default_config());

/// Bezout certificate alpha x + beta y = 1 via the Smith form of the lattice
/// spanned by {x b_i} and {y b_i}; NotCoprime when the ideal (x, y) is proper.
std::pair<IntegerElement, IntegerElement> bezout_coprime(const IntegerElement& x,
                                                         const IntegerElement& y,
                                                         const NumberField& field);

/// Unit-ball search: b = sum c_j a^{-j}, c_j integers, with certified
/// ||b|| < 1.  Among qualifying candidates within the bounds the one of
/// minimal certified upper norm is returned (ties: enumeration order).
FieldElement unit_ball_search(const IntegerElement& a, const NumberField& field,
                              unsigned degree_bound, unsigned height_bound,
                              const ExactConfig& cfg = default_config());
/// Same element in u / a^m form.
LocalizedElement unit_ball_search_localized(const IntegerElement& a,
                                            const NumberField& field,
                                            unsigned degree_bound,
                                            unsigned height_bound,
                                            const ExactConfig& cfg = default_config());

/// Bounded enumeration of `count` primitive non-unit elements
/// whose Galois orbits, together with b, are pairwise coprime.
std::vector<IntegerElement> conjugate_coprime_search(
    const NumberField& field, const std::vector<size_t>& galois,
    const IntegerElement& b, size_t count, unsigned height_bound,
    const ExactConfig& cfg = default_config());

// LocalizedElement helpers; `a` is the shared denominator base.
bool loc_equal(const LocalizedElement& x, const LocalizedElement& y,
               const NumberField& field, const IntegerElement& a);
LocalizedElement loc_add(const LocalizedElement& x, const LocalizedElement& y,
                         const NumberField& field, const IntegerElement& a);
LocalizedElement loc_sub(const LocalizedElement& x, const LocalizedElement& y,
                         const NumberField& field, const IntegerElement& a);
LocalizedElement loc_neg(const LocalizedElement& x, const NumberField& field);
LocalizedElement loc_mul(const LocalizedElement& x, const LocalizedElement& y,
                         const NumberField& field);
bool loc_is_zero(const LocalizedElement& x);
FieldElement loc_value(const LocalizedElement& x, const NumberField& field,
                       const IntegerElement& a);
bool loc_is_integral(const LocalizedElement& x, const NumberField& field,
                     const IntegerElement& a);
/// Strip factors of a from the numerator while exactly divisible.
LocalizedElement loc_reduce(LocalizedElement x, const NumberField& field,
                            const IntegerElement& a);
/// Interval enclosing ||u / a^m|| (per-embedding division).
RatInterval loc_norm_interval(const LocalizedElement& x, const NumberField& field,
                              const IntegerElement& a, unsigned prec);

}  // namespace arithdisc
