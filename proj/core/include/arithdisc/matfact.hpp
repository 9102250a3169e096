#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arithdisc/rng.hpp"
#include "arithdisc/series.hpp"

namespace arithdisc {

/// n x n matrix of truncated series over a shared ring and order.
struct SeriesMatrix {
  size_t n = 0;
  RingPtr ring;
  unsigned order = 0;
  std::vector<TruncatedSeries> entries;  // row-major

  TruncatedSeries& at(size_t i, size_t j) { return entries[i * n + j]; }
  const TruncatedSeries& at(size_t i, size_t j) const { return entries[i * n + j]; }
};

SeriesMatrix mat_zero(RingPtr ring, size_t n, unsigned order);
SeriesMatrix mat_identity(RingPtr ring, size_t n, unsigned order);
SeriesMatrix mat_add(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix mat_sub(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix mat_mul(const SeriesMatrix& a, const SeriesMatrix& b,
                     const ExactConfig& cfg = default_config());
SeriesMatrix mat_scalar_mul(const SeriesMatrix& a, const TruncatedSeries& s);
SeriesMatrix mat_scalar_mul(const SeriesMatrix& a, const LocalizedElement& c);
bool mat_equal(const SeriesMatrix& a, const SeriesMatrix& b);
SeriesMatrix mat_truncate(const SeriesMatrix& a, unsigned order);
SeriesMatrix mat_rebase(const SeriesMatrix& a, RingPtr target,
                        const IntegerElement& cofactor);

/// min over entries of t_valuation; nullopt when the matrix vanishes.
std::optional<unsigned> mat_t_valuation(const SeriesMatrix& a);

/// Laplace expansion; n is small throughout.
TruncatedSeries mat_determinant(const SeriesMatrix& a,
                                const ExactConfig& cfg = default_config());
/// adj(a) with a * adj(a) = det(a) * 1 exactly.
SeriesMatrix mat_adjugate(const SeriesMatrix& a,
                          const ExactConfig& cfg = default_config());
/// Inverse mod t^order; the constant-term matrix must be invertible with an
/// inverse representable in the coefficient ring (NotUnit otherwise).
SeriesMatrix mat_inverse(const SeriesMatrix& a,
                         const ExactConfig& cfg = default_config());

/// Entry-wise additive split: a = plus + minus with plus over D_i' and
/// minus over D_i (valuations preserved, designated side C_1-certified).
std::pair<SeriesMatrix, SeriesMatrix> split_matrix(
    const SeriesMatrix& y, size_t i, const BranchLayout& layout,
    const ExactConfig& cfg = default_config());

struct FactorizationResult {
  SeriesMatrix left;   // p_i' side (accumulated product or factor numerator)
  SeriesMatrix right;  // p_i side
  std::optional<TruncatedSeries> left_den, right_den;  // scalar denominators
  std::optional<SeriesMatrix> left_inv, right_inv;     // b_i' = left^-1, b_i = right^-1
  unsigned iterations = 0;
  std::vector<unsigned> valuation_trace;  // v_t(y_j) per iteration
  TailMode left_tag = TailMode::FormalTail;
  TailMode right_tag = TailMode::FormalTail;
  std::vector<std::string> bound_reports;
  unsigned n_eff = 0;
  unsigned scale_exp = 0;  // a_I-power lost to integralization (general mode)
  bool swapped = false;
};

/// Near-identity factorization: for b == 1 mod t over D_I returns p', p with
/// p' b p == 1 mod t^N and the quotient-field factors b_i' = p'^-1,
/// b_i = p^-1; quadratic valuation progress bounds the iteration count by
/// ceil(log2 N) + 1.
FactorizationResult near_identity_factor(const SeriesMatrix& b, size_t i,
                                         const BranchLayout& layout,
                                         const ExactConfig& cfg = default_config(),
                                         const Rational& tail_radius = Rational(1, 2));

/// Element of GL_n(Q) as matrix-over-D_I divided by a scalar series.
struct QuotMatrix {
  SeriesMatrix num;
  TruncatedSeries den;
};

/// Full factorization pipeline: denominator clearing, adjugate, scalar
/// integralization, dense polynomial approximation (degree trunc_degree,
/// exposed as a tunable), near-identity reduction, and reassembly.  The
/// returned factors carry scalar denominators; effective precision n_eff is
/// reported, never assumed.
FactorizationResult general_factor(const QuotMatrix& b, size_t i,
                                   const BranchLayout& layout, bool swapped = false,
                                   std::optional<unsigned> trunc_degree = std::nullopt,
                                   const ExactConfig& cfg = default_config());

/// Rewrite a D_I-represented matrix as (matrix over D_i) / a_i^k.
std::pair<SeriesMatrix, unsigned> mat_clear_side(const SeriesMatrix& a, size_t i,
                                                 const BranchLayout& layout);
std::pair<TruncatedSeries, unsigned> series_clear_side(const TruncatedSeries& a,
                                                       size_t i,
                                                       const BranchLayout& layout);

/// Structural support-separation check: every coefficient is represented
/// with denominator powers of the ring's base only and the base matches.
bool mat_supported_on(const SeriesMatrix& a, const IntegerElement& base);

/// Seeded random near-identity matrix over the layout's full ring: entries
/// have v_t >= 1, numerator coordinates bounded by height, denominator
/// exponents bounded by max_exp.
SeriesMatrix random_near_identity(Rng& rng, const BranchLayout& layout, size_t n,
                                  unsigned order, long height, unsigned max_exp);

}  // namespace arithdisc
