#include "arithdisc/group.hpp"

#include <algorithm>
#include <numeric>

namespace arithdisc {

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<size_t>> table,
                                    std::vector<std::string> labels) {
  FiniteGroup g;
  const size_t m = table.size();
  if (m == 0) throw Error("group: empty table");
  for (const auto& row : table) {
    if (row.size() != m) throw Error("group: table not square");
    for (size_t v : row)
      if (v >= m) throw Error("group: index out of range");
  }
  // identity
  std::optional<size_t> id;
  for (size_t e = 0; e < m; ++e) {
    bool ok = true;
    for (size_t x = 0; x < m; ++x)
      if (table[e][x] != x || table[x][e] != x) ok = false;
    if (ok) {
      id = e;
      break;
    }
  }
  if (!id) throw Error("group: no identity element");
  // inverses
  std::vector<size_t> inv(m, m);
  for (size_t a = 0; a < m; ++a) {
    for (size_t b = 0; b < m; ++b)
      if (table[a][b] == *id && table[b][a] == *id) {
        inv[a] = b;
        break;
      }
    if (inv[a] == m) throw Error("group: missing inverse");
  }
  // associativity, exhaustive
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b)
      for (size_t c = 0; c < m; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]])
          throw Error("group: associativity fails");
  g.table_ = std::move(table);
  g.inverse_ = std::move(inv);
  g.identity_ = *id;
  if (labels.empty()) {
    labels.resize(m);
    for (size_t i = 0; i < m; ++i) labels[i] = "g" + std::to_string(i);
  }
  if (labels.size() != m) throw Error("group: label count mismatch");
  g.labels_ = std::move(labels);
  return g;
}

FiniteGroup FiniteGroup::cyclic(size_t m) {
  std::vector<std::vector<size_t>> t(m, std::vector<size_t>(m));
  for (size_t a = 0; a < m; ++a)
    for (size_t b = 0; b < m; ++b) t[a][b] = (a + b) % m;
  std::vector<std::string> labels(m);
  for (size_t i = 0; i < m; ++i) labels[i] = std::to_string(i);
  return from_table(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

size_t FiniteGroup::element_order(size_t a) const {
  size_t cur = a, ord = 1;
  while (cur != identity_) {
    cur = mul(cur, a);
    ++ord;
    if (ord > order()) throw Error("group: order computation diverged");
  }
  return ord;
}

std::vector<size_t> FiniteGroup::generated_subgroup(
    const std::vector<size_t>& gens) const {
  std::vector<bool> in(order(), false);
  std::vector<size_t> members{identity_};
  in[identity_] = true;
  std::vector<size_t> frontier = members;
  while (!frontier.empty()) {
    std::vector<size_t> next;
    for (size_t x : frontier)
      for (size_t gidx : gens) {
        size_t y = mul(x, gidx);
        if (!in[y]) {
          in[y] = true;
          members.push_back(y);
          next.push_back(y);
        }
        size_t z = mul(x, inverse(gidx));
        if (!in[z]) {
          in[z] = true;
          members.push_back(z);
          next.push_back(z);
        }
      }
    frontier = std::move(next);
  }
  std::sort(members.begin(), members.end());
  return members;
}

bool FiniteGroup::generates(const std::vector<size_t>& gens) const {
  return generated_subgroup(gens).size() == order();
}

bool groups_isomorphic(const FiniteGroup& a, const FiniteGroup& b) {
  const size_t m = a.order();
  if (m != b.order()) return false;
  std::vector<size_t> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (perm[a.identity()] != b.identity()) continue;
    bool ok = true;
    for (size_t x = 0; x < m && ok; ++x)
      for (size_t y = 0; y < m && ok; ++y)
        if (perm[a.mul(x, y)] != b.mul(perm[x], perm[y])) ok = false;
    if (ok) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

GroupAction GroupAction::on_set(const FiniteGroup& acting, size_t set_size,
                                std::vector<std::vector<size_t>> table) {
  if (table.size() != acting.order()) throw Error("action: table rows");
  for (const auto& row : table) {
    if (row.size() != set_size) throw Error("action: table cols");
    for (size_t v : row)
      if (v >= set_size) throw Error("action: index range");
  }
  // identity acts trivially
  for (size_t x = 0; x < set_size; ++x)
    if (table[acting.identity()][x] != x) throw Error("action: identity not trivial");
  // right-action compatibility: x^(gh) = (x^g)^h
  for (size_t g = 0; g < acting.order(); ++g)
    for (size_t h = 0; h < acting.order(); ++h)
      for (size_t x = 0; x < set_size; ++x)
        if (table[acting.mul(g, h)][x] != table[h][table[g][x]])
          throw Error("action: compatibility fails");
  GroupAction a;
  a.table_ = std::move(table);
  return a;
}

GroupAction GroupAction::on_group(const FiniteGroup& acting, const FiniteGroup& target,
                                  std::vector<std::vector<size_t>> table) {
  GroupAction a = on_set(acting, target.order(), std::move(table));
  for (size_t g = 0; g < acting.order(); ++g) {
    // each map must be a bijective homomorphism of the target
    std::vector<bool> seen(target.order(), false);
    for (size_t x = 0; x < target.order(); ++x) {
      size_t y = a.apply(g, x);
      if (seen[y]) throw NotAutomorphismAction("action map not bijective");
      seen[y] = true;
    }
    for (size_t x = 0; x < target.order(); ++x)
      for (size_t y = 0; y < target.order(); ++y)
        if (a.apply(g, target.mul(x, y)) !=
            target.mul(a.apply(g, x), a.apply(g, y)))
          throw NotAutomorphismAction("action map not a homomorphism");
  }
  return a;
}

GroupAction GroupAction::trivial(const FiniteGroup& acting, size_t set_size) {
  std::vector<std::vector<size_t>> t(acting.order(), std::vector<size_t>(set_size));
  for (auto& row : t)
    for (size_t x = 0; x < set_size; ++x) row[x] = x;
  GroupAction a;
  a.table_ = std::move(t);
  return a;
}

size_t SemidirectProduct::embed_left(size_t g) const { return g * right_order; }
size_t SemidirectProduct::embed_right(size_t h) const { return h; }
size_t SemidirectProduct::project_left(size_t idx) const { return idx / right_order; }

SemidirectProduct semidirect_product(const FiniteGroup& gamma, const FiniteGroup& h,
                                     const GroupAction& action) {
  if (action.set_size() != h.order())
    throw NotAutomorphismAction("semidirect: action target mismatch");
  // revalidate as automorphism action on h
  GroupAction checked = GroupAction::on_group(gamma, h, action.table());
  const size_t gm = gamma.order(), hm = h.order();
  const size_t m = gm * hm;
  std::vector<std::vector<size_t>> t(m, std::vector<size_t>(m));
  auto idx = [hm](size_t g, size_t x) { return g * hm + x; };
  for (size_t g1 = 0; g1 < gm; ++g1)
    for (size_t h1 = 0; h1 < hm; ++h1)
      for (size_t g2 = 0; g2 < gm; ++g2)
        for (size_t h2 = 0; h2 < hm; ++h2) {
          // (g1, h1)(g2, h2) = (g1 g2, h1^(g2) h2)
          size_t g3 = gamma.mul(g1, g2);
          size_t h3 = h.mul(checked.apply(g2, h1), h2);
          t[idx(g1, h1)][idx(g2, h2)] = idx(g3, h3);
        }
  std::vector<std::string> labels(m);
  for (size_t g = 0; g < gm; ++g)
    for (size_t x = 0; x < hm; ++x)
      labels[idx(g, x)] = "(" + gamma.label(g) + "," + h.label(x) + ")";
  SemidirectProduct sp;
  sp.group = FiniteGroup::from_table(std::move(t), std::move(labels));
  sp.left_order = gm;
  sp.right_order = hm;
  return sp;
}

}  // namespace arithdisc
