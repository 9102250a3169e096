#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arithdisc/group.hpp"
#include "arithdisc/kummer.hpp"
#include "arithdisc/matfact.hpp"
#include "arithdisc/series.hpp"

namespace arithdisc {

/// Gal(K/K0) realized by field automorphisms: element g of the abstract
/// group acts as automorphism auto_of[g]; composition and faithfulness are
/// verified (right-action convention x^(gh) = (x^g)^h).
struct GaloisRealization {
  FiniteGroup gamma;
  std::vector<size_t> auto_of;

  static GaloisRealization create(const NumberField& field, FiniteGroup gamma,
                                  std::vector<size_t> auto_of);
};

/// I = {1} disjoint-union J x Gamma with the translation action
/// (j, g')^g = (j, g' g) and 1 fixed.
class PatchingIndex {
 public:
  static PatchingIndex build(std::vector<std::string> j_labels, FiniteGroup gamma);

  size_t size() const { return 1 + j_labels_.size() * gamma_.order(); }
  size_t one() const { return 0; }
  size_t num_j() const { return j_labels_.size(); }
  const FiniteGroup& gamma() const { return gamma_; }
  const std::string& j_label(size_t j) const { return j_labels_[j]; }

  /// Index of (j, g) inside I.
  size_t pair_index(size_t j, size_t g) const;
  /// Unique (j, g) with i = j^g; requires i != one().
  std::pair<size_t, size_t> decompose(size_t i) const;
  /// i^g.
  size_t act(size_t g, size_t i) const;

 private:
  std::vector<std::string> j_labels_;
  FiniteGroup gamma_ = FiniteGroup::trivial();
};

PatchingIndex build_index(std::vector<std::string> j_labels, FiniteGroup gamma);

/// tau_i = tau_j^(g') for i = j^(g'), with equivariance and generation
/// verified exhaustively.
std::vector<size_t> assign_generators(const FiniteGroup& h,
                                      const std::vector<size_t>& listing,
                                      const PatchingIndex& index,
                                      const GroupAction& gamma_on_h);

/// a_1 must be a Gamma-fixed non-unit; each c_j comes from the conjugate-
/// coprime search seeded with the product of everything chosen so far, and
/// a_(j,g) = c_j^g.  Verified: pairwise coprimality, equivariance, and
/// Gamma-fixedness of a_I.
std::vector<IntegerElement> choose_branch_elements(
    const NumberField& field, const GaloisRealization& gal,
    const IntegerElement& a1, const PatchingIndex& index, unsigned height_bound,
    const ExactConfig& cfg = default_config());

struct PatchingData {
  FieldPtr field;
  GaloisRealization gal;
  PatchingIndex index;
  std::vector<IntegerElement> branch;  // per i in I, branch[0] = a_1
  FiniteGroup H = FiniteGroup::trivial();
  GroupAction gamma_on_H;
  FiniteGroup G1 = FiniteGroup::trivial();
  GroupAction g1_on_H;
  GroupAction gamma_on_G1;
  std::vector<size_t> tau;  // tau[i] for i in I (slot 0 unused)
  std::vector<KummerData> kummer_list;  // per j
  unsigned order = 32;
};

enum class CheckStatus { Pass, Fail, Undecidable, ErrorStatus };

struct CheckEntry {
  std::string name;
  CheckStatus status = CheckStatus::ErrorStatus;
  std::string details;
};

/// Full condition sweep: group conditions (equivariance, generation,
/// subgroup compatibility, index size), branch-element
/// conditions, per-j Kummer verification, conjugate re-verification, and
/// matrix factorization spot checks at n = |G|.  Always returns a report;
/// failures become entries.
std::vector<CheckEntry> validate_patching(const PatchingData& data,
                                          unsigned spot_checks, uint64_t seed,
                                          const ExactConfig& cfg = default_config());

}  // namespace arithdisc
