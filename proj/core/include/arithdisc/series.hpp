#pragma once

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <utility>
#include <vector>

#include "arithdisc/config.hpp"
#include "arithdisc/numfield.hpp"

namespace arithdisc {

/// Which side of the R{t} / R[[t]] asymmetry a ring carries.  At finite
/// truncation the sets coincide; the tag decides which side of a division
/// or split receives the norm bound.
enum class TailMode { FormalTail, ConvergentTail };

struct RingDescriptor {
  FieldPtr field;
  std::optional<IntegerElement> denom_base;  // none: coefficients in R
  TailMode tag = TailMode::FormalTail;

  const NumberField& K() const { return *field; }
  IntegerElement base() const {
    return denom_base ? *denom_base : field->int_one();
  }
  bool has_base() const { return denom_base.has_value(); }
  /// Cached base^k (denominator rescaling is the inner loop of every
  /// coefficient operation).
  const IntegerElement& base_pow(unsigned k) const;

 private:
  mutable std::mutex pow_mutex_;
  mutable std::deque<IntegerElement> pow_cache_;
};
using RingPtr = std::shared_ptr<const RingDescriptor>;

RingPtr make_ring(FieldPtr field, std::optional<IntegerElement> denom_base,
                  TailMode tag);
bool ring_compatible(const RingDescriptor& a, const RingDescriptor& b);

/// Series known modulo t^order; coeffs.size() == order.
struct TruncatedSeries {
  RingPtr ring;
  unsigned order = 0;
  std::vector<LocalizedElement> coeffs;
  std::optional<std::vector<NormEnclosure>> bound_cert;

  const LocalizedElement& at(unsigned i) const { return coeffs[i]; }
};

TruncatedSeries series_zero(RingPtr ring, unsigned order);
TruncatedSeries series_one(RingPtr ring, unsigned order);
TruncatedSeries series_from_coeffs(RingPtr ring, unsigned order,
                                   std::vector<LocalizedElement> coeffs);
TruncatedSeries series_constant(RingPtr ring, unsigned order,
                                const LocalizedElement& c);

bool series_equal(const TruncatedSeries& a, const TruncatedSeries& b);
bool series_is_zero(const TruncatedSeries& a);

TruncatedSeries series_add(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_sub(const TruncatedSeries& a, const TruncatedSeries& b);
TruncatedSeries series_neg(const TruncatedSeries& a);
TruncatedSeries series_mul(const TruncatedSeries& a, const TruncatedSeries& b,
                           const ExactConfig& cfg = default_config());
TruncatedSeries series_scalar_mul(const TruncatedSeries& a, const LocalizedElement& c);
/// Multiply by t^m (raises the order by m).
TruncatedSeries series_shift(const TruncatedSeries& a, unsigned m);
/// Divide by t^m; the first m coefficients must vanish.
TruncatedSeries series_divide_t(const TruncatedSeries& a, unsigned m);
TruncatedSeries series_truncate(const TruncatedSeries& a, unsigned order);
/// Multiplicative inverse mod t^order; NotUnit when the constant term is not
/// invertible in the coefficient ring.
TruncatedSeries series_inverse(const TruncatedSeries& a,
                               const ExactConfig& cfg = default_config());
/// Substitute t -> c t, mapping coefficients into the target ring.  The
/// source must be over the same field or over Q.
TruncatedSeries series_compose_ct(const TruncatedSeries& a,
                                  const LocalizedElement& c, RingPtr target);
/// Reinterpret over a ring whose base is old_base * cofactor.
TruncatedSeries series_rebase(const TruncatedSeries& a, RingPtr target,
                              const IntegerElement& cofactor);

/// Index of the first nonzero coefficient; nullopt means f == 0 mod t^N.
std::optional<unsigned> t_valuation(const TruncatedSeries& f);

enum class WDivMode { BoundRemainder, BoundQuotient };

/// Weierstrass-style division at finite order: a^e f == r + a^e g h
/// (mod t^N) exactly, with
/// h(0) = 1, remainder coefficients at indices >= shift integral, and the
/// mode's norm bound certified coefficient-wise (or recorded undecidable).
struct WDivResult {
  TruncatedSeries r;
  TruncatedSeries h;  // order N - shift
  unsigned scale_exp = 0;
  unsigned shift = 0;
  /// Mode bound per recursion slot 1..N-shift-1 (slot 0 is pinned by
  /// h(0) = 1 and carries no bound).
  std::vector<Certainty> bound_status;
  std::vector<unsigned> nonintegral_head;  // head indices of r not in R
};

WDivResult weierstrass_divide(const TruncatedSeries& f, const TruncatedSeries& g,
                              WDivMode mode,
                              const ExactConfig& cfg = default_config());

/// Integralization: h with h(0) = 1 such that a^e g h has all
/// coefficients in R.
std::pair<TruncatedSeries, unsigned> integralize(const TruncatedSeries& g,
                                                 const ExactConfig& cfg = default_config());

/// Pairwise coprime non-invertible branch elements with a distinguished
/// index that controls the formal/convergent tagging of the side rings.
class BranchLayout {
 public:
  static BranchLayout create(FieldPtr field, std::vector<IntegerElement> branch,
                             size_t one_index);

  const NumberField& K() const { return *field_; }
  FieldPtr field() const { return field_; }
  size_t size() const { return branch_.size(); }
  size_t one_index() const { return one_index_; }
  const IntegerElement& at(size_t i) const { return branch_[i]; }
  /// a_I = product of all branch elements.
  const IntegerElement& a_total() const { return a_total_; }
  /// a_i' = product over the complement of i.
  IntegerElement a_complement(size_t i) const;

  RingPtr ring_full() const;                  // D_I = R_I[[t]]
  RingPtr ring_side(size_t i) const;          // D_i  (base a_i')
  RingPtr ring_side_prime(size_t i) const;    // D_i' (base a_i)

  /// Cached Bezout certificate 1 = alpha a_i^m + beta a_i'^m, the inner
  /// step of every coefficient split.
  struct SplitCert {
    IntegerElement ai_m, aip_m, alpha, beta;
  };
  const SplitCert& split_cert(size_t i, unsigned m) const;

 private:
  FieldPtr field_;
  std::vector<IntegerElement> branch_;
  size_t one_index_ = 0;
  IntegerElement a_total_;
  // Shared across copies; std::map nodes are reference-stable.
  std::shared_ptr<std::mutex> memo_mutex_ = std::make_shared<std::mutex>();
  std::shared_ptr<std::map<std::pair<size_t, unsigned>, SplitCert>> memo_ =
      std::make_shared<std::map<std::pair<size_t, unsigned>, SplitCert>>();
};

/// Additive element split: y = y_i + y_i' with y_i in R_i = R[1/a_i'],
/// y_i' in R_i' =
/// R[1/a_i], via a Bezout certificate for (a_i^m, a_i'^m).
std::pair<LocalizedElement, LocalizedElement> split_element(
    const LocalizedElement& y, size_t i, const BranchLayout& layout);

/// Additive series split: f = g + h with g over D_i', h over D_i,
/// valuations dominated by
/// v_t(f), and the designated side (h when i = one, g otherwise) certified
/// coefficient-wise below C_1.
std::pair<TruncatedSeries, TruncatedSeries> split_series(
    const TruncatedSeries& f, size_t i, const BranchLayout& layout,
    const ExactConfig& cfg = default_config());

/// Integral-basis decomposition: f = sum_k g_k z_k with integer-coefficient
/// g_k; when f carries a
/// bound certificate the g_k inherit one scaled by the coordinate-extraction
/// operator norm.
std::vector<TruncatedSeries> basis_split(const TruncatedSeries& f,
                                         const ExactConfig& cfg = default_config());

struct GrowthReport {
  Rational partial_sum;     // sum of coefficient-norm uppers weighted by radius^n
  RatInterval root_growth;  // max upper ||f_n||^(1/n), 0 for constants
};
GrowthReport growth_report(const TruncatedSeries& f, const Rational& radius,
                           unsigned prec = 32);

/// Upper bounds of coefficient norms (bound_cert if present, else computed).
std::vector<Rational> coeff_norm_uppers(const TruncatedSeries& f, unsigned prec);

}  // namespace arithdisc
