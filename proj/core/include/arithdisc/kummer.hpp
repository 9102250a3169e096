#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arithdisc/series.hpp"

namespace arithdisc {

/// Data of a finite-precision cyclic-extension witness: the Hensel root f of
/// X^k - (1 - k^2 t), the twist base b with ||b|| < 1, the twist exponent m,
/// and g(t) = f(b^m t) solving q(X) = X^k - (1 - k^2 b^m t).
struct KummerData {
  unsigned k = 1;
  TruncatedSeries f;     // over Z
  LocalizedElement b;    // over Z[1/a], certified ||b|| < 1
  unsigned m = 1;
  TruncatedSeries g;     // over R[1/a]
  IntegerElement a;      // localization base
};

/// t-adic Newton lift of X^k = 1 - k^2 t starting at 1; every coefficient is
/// asserted to be a rational integer.
TruncatedSeries hensel_root(unsigned k, unsigned order,
                            const ExactConfig& cfg = default_config());

/// Twist selection: b from the unit-ball search, m minimal with
/// (i) upper||b||^m < k^-2 (the exact binomial convergence radius) and
/// (ii) m >= floor(2 n log2(max(k,2))) + 1 (valuation surrogate).
/// Also certifies b is not integral.
std::pair<LocalizedElement, unsigned> select_twist(
    unsigned k, const IntegerElement& a, const NumberField& field,
    unsigned degree_bound, unsigned height_bound,
    const ExactConfig& cfg = default_config());

/// Assemble the full witness at the given order.
KummerData make_kummer_data(unsigned k, const IntegerElement& a, FieldPtr field,
                            unsigned order, const ExactConfig& cfg = default_config());

/// Search for an exact element of multiplicative order k (bounded coordinate
/// height); NoRootOfUnity if none is found.
IntegerElement root_of_unity(const NumberField& field, unsigned k,
                             unsigned height_bound = 4);

struct KummerCheck {
  std::string name;
  bool pass = false;
  std::string details;
};

/// Verification report: q(g) == 0 mod t^N, the full splitting
/// prod_j (X - zeta^j g) == q(X) mod t^N, and pairwise distinctness of the
/// conjugate roots.  Failures become report entries, not exceptions.
std::vector<KummerCheck> kummer_verify(const KummerData& data, FieldPtr field,
                                       unsigned order,
                                       const ExactConfig& cfg = default_config());

/// Apply a field automorphism to all series coefficients and the twist data,
/// producing the conjugate witness over the conjugate base.
KummerData conjugate_kummer(const KummerData& data, const NumberField& field,
                            size_t auto_idx);

}  // namespace arithdisc
