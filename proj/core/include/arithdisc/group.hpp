#pragma once

#include <optional>
#include <string>
#include <vector>

#include "arithdisc/errors.hpp"

namespace arithdisc {

/// Finite group as a multiplication table; all axioms verified exhaustively
/// on construction.
class FiniteGroup {
 public:
  static FiniteGroup from_table(std::vector<std::vector<size_t>> table,
                                std::vector<std::string> labels = {});
  static FiniteGroup cyclic(size_t m);
  static FiniteGroup trivial();

  size_t order() const { return table_.size(); }
  size_t mul(size_t a, size_t b) const { return table_[a][b]; }
  size_t identity() const { return identity_; }
  size_t inverse(size_t a) const { return inverse_[a]; }
  size_t element_order(size_t a) const;
  const std::string& label(size_t a) const { return labels_[a]; }
  const std::vector<std::vector<size_t>>& table() const { return table_; }

  /// Closure of a generating subset.
  std::vector<size_t> generated_subgroup(const std::vector<size_t>& gens) const;
  bool generates(const std::vector<size_t>& gens) const;

 private:
  std::vector<std::vector<size_t>> table_;
  std::vector<size_t> inverse_;
  std::vector<std::string> labels_;
  size_t identity_ = 0;
};

/// Exhaustive isomorphism search (small orders only).
bool groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b);

/// Action of a group on a set or on another group, as a table
/// act[g][x] = x^g.  Right-action convention: x^(gh) = (x^g)^h.
class GroupAction {
 public:
  static GroupAction on_set(const FiniteGroup& acting, size_t set_size,
                            std::vector<std::vector<size_t>> table);
  /// Target a group: each map must additionally be an automorphism.
  static GroupAction on_group(const FiniteGroup& acting, const FiniteGroup& target,
                              std::vector<std::vector<size_t>> table);
  static GroupAction trivial(const FiniteGroup& acting, size_t set_size);

  size_t apply(size_t g, size_t x) const { return table_[g][x]; }
  size_t set_size() const { return table_.empty() ? 0 : table_[0].size(); }
  const std::vector<std::vector<size_t>>& table() const { return table_; }

 private:
  std::vector<std::vector<size_t>> table_;
};

/// (g1, h1)(g2, h2) = (g1 g2, h1^(g2) h2), matching right-exponent notation.
struct SemidirectProduct {
  FiniteGroup group;
  // pair index = g * |H| + h
  size_t embed_left(size_t g) const;   // (g, 1)
  size_t embed_right(size_t h) const;  // (1, h)
  size_t project_left(size_t idx) const;
  size_t left_order = 0, right_order = 0;
};

SemidirectProduct semidirect_product(const FiniteGroup& gamma, const FiniteGroup& h,
                                     const GroupAction& action);

}  // namespace arithdisc
