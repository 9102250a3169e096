#pragma once

#include <vector>

#include "arithdisc/series.hpp"

namespace arithdisc {

struct NormalizationFlags {
  bool constant_zero = false;        // b_{0,0} = 0
  bool linear_unit = false;          // b_{1,0} = 1
  bool higher_constants_zero = false;  // b_{k,0} = 0 for k >= 2
};

/// h(Y) = p_d Y^d + ... + p_1 Y + p_0 with truncated-series coefficients
/// over a shared ring.
struct SeriesPolynomial {
  std::vector<TruncatedSeries> coeffs;  // index k = coefficient of Y^k
  NormalizationFlags flags;

  size_t degree() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
  RingPtr ring() const { return coeffs.front().ring; }
  unsigned order() const { return coeffs.front().order; }
};

SeriesPolynomial make_series_polynomial(std::vector<TruncatedSeries> coeffs);
NormalizationFlags compute_flags(const SeriesPolynomial& h);

/// Replayable record of the normalization transforms.
struct NormalizationRecord {
  IntegerElement scale_a;   // substitution t -> a t (a = denom_base^max_exp)
  unsigned scale_a_exp = 0;  // the exponent actually used
  unsigned shift_e = 0;      // power of t divided out of every coefficient
  LocalizedElement beta;     // original b_{1,0} (t -> beta t, divide by beta)
};

/// Normalization pipeline: clear coefficient denominators by t -> a t,
/// divide by
/// t^e (e = v_t(p_1), which must be strictly smaller than every other
/// valuation), then t -> beta t and division by beta so that b_{1,0} = 1.
std::pair<SeriesPolynomial, NormalizationRecord> normalize_poly(
    const SeriesPolynomial& h, const ExactConfig& cfg = default_config());

/// Forward replay of the recorded transforms on an arbitrary polynomial
/// (used to verify that the record reproduces the normalized output).
SeriesPolynomial replay_normalization(const SeriesPolynomial& h,
                                      const NormalizationRecord& rec,
                                      const ExactConfig& cfg = default_config());

/// Coefficient recursion: the unique y == 0 mod t with h(y) == 0 mod t^N.
/// Requires b_{0,0} = 0 and b_{1,0} = 1; each a_n is then determined
/// linearly, and lies in R whenever all b_{k,n} do.
TruncatedSeries recursive_root(const SeriesPolynomial& h,
                               const ExactConfig& cfg = default_config());

/// Evaluate h at a series argument (Horner).
TruncatedSeries eval_poly_at(const SeriesPolynomial& h, const TruncatedSeries& y,
                             const ExactConfig& cfg = default_config());

}  // namespace arithdisc
