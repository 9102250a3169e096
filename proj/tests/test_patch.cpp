#include <doctest.h>

#include <array>

#include "arithdisc/patch.hpp"

using namespace arithdisc;

namespace {

// Gamma = Z/2 acting on H = Z/3 by inversion.
GroupAction inversion_action(const FiniteGroup& z2, const FiniteGroup& z3) {
  std::vector<std::vector<size_t>> t(2, std::vector<size_t>(3));
  for (size_t x = 0; x < 3; ++x) {
    t[0][x] = x;
    t[1][x] = (3 - x) % 3;
  }
  return GroupAction::on_group(z2, z3, t);
}

PatchingData flagship_data(unsigned order = 16, unsigned height = 8) {
  PatchingData data;
  data.field = NumberField::builtin("eisenstein");
  data.order = order;
  data.gal = GaloisRealization::create(*data.field, FiniteGroup::cyclic(2), {0, 1});
  data.H = FiniteGroup::cyclic(3);
  data.gamma_on_H = inversion_action(data.gal.gamma, data.H);
  data.G1 = FiniteGroup::trivial();
  data.g1_on_H = GroupAction::trivial(data.G1, 3);
  data.gamma_on_G1 = GroupAction::trivial(data.gal.gamma, 1);
  data.index = build_index({"0", "1", "2"}, data.gal.gamma);
  data.tau = assign_generators(data.H, {0, 1, 2}, data.index, data.gamma_on_H);
  data.branch = choose_branch_elements(*data.field, data.gal,
                                       data.field->from_integer(2), data.index,
                                       height);
  for (size_t j = 0; j < data.index.num_j(); ++j) {
    size_t i = data.index.pair_index(j, data.gal.gamma.identity());
    unsigned k = static_cast<unsigned>(data.H.element_order(data.tau[i]));
    data.kummer_list.push_back(
        make_kummer_data(k, data.branch[i], data.field, data.order));
  }
  return data;
}

}  // namespace

TEST_CASE("finite groups: axioms, orders, closure") {
  auto z6 = FiniteGroup::cyclic(6);
  CHECK(z6.order() == 6);
  CHECK(z6.element_order(1) == 6);
  CHECK(z6.element_order(2) == 3);
  CHECK(z6.inverse(1) == 5);
  CHECK(z6.generates({1}));
  CHECK_FALSE(z6.generates({2}));
  CHECK(z6.generated_subgroup({2}).size() == 3);

  // broken table: constant rows have no identity
  std::vector<std::vector<size_t>> bad(2, std::vector<size_t>(2, 0));
  CHECK_THROWS_AS(FiniteGroup::from_table(bad), Error);
}

TEST_CASE("semidirect products") {
  SUBCASE("trivial action gives the direct product Z/2 x Z/3 = Z/6") {
    auto z2 = FiniteGroup::cyclic(2);
    auto z3 = FiniteGroup::cyclic(3);
    auto sp = semidirect_product(z2, z3, GroupAction::trivial(z2, 3));
    CHECK(sp.group.order() == 6);
    CHECK(groups_isomorphic(sp.group, FiniteGroup::cyclic(6)));
  }

  SUBCASE("Z/2 on Z/3 by inversion: the symmetric group on 3 letters") {
    auto z2 = FiniteGroup::cyclic(2);
    auto z3 = FiniteGroup::cyclic(3);
    auto sp = semidirect_product(z2, z3, inversion_action(z2, z3));
    CHECK(sp.group.order() == 6);
    CHECK_FALSE(groups_isomorphic(sp.group, FiniteGroup::cyclic(6)));
    // exhaustive isomorphism against the permutation-composition table of S3
    std::vector<std::array<size_t, 3>> perms{{0, 1, 2}, {1, 2, 0}, {2, 0, 1},
                                             {1, 0, 2}, {2, 1, 0}, {0, 2, 1}};
    std::vector<std::vector<size_t>> s3(6, std::vector<size_t>(6));
    for (size_t a = 0; a < 6; ++a)
      for (size_t b = 0; b < 6; ++b) {
        std::array<size_t, 3> comp{};
        for (size_t x = 0; x < 3; ++x) comp[x] = perms[b][perms[a][x]];
        for (size_t c = 0; c < 6; ++c)
          if (perms[c] == comp) s3[a][b] = c;
      }
    CHECK(groups_isomorphic(sp.group, FiniteGroup::from_table(s3)));
  }

  SUBCASE("Z/2 on Z/2: Klein four-group") {
    auto z2 = FiniteGroup::cyclic(2);
    auto sp = semidirect_product(z2, z2, GroupAction::trivial(z2, 2));
    CHECK(sp.group.order() == 4);
    for (size_t x = 0; x < 4; ++x) CHECK(sp.group.mul(x, x) == sp.group.identity());
  }

  SUBCASE("non-automorphism action rejected") {
    auto z2 = FiniteGroup::cyclic(2);
    auto z4 = FiniteGroup::cyclic(4);
    // x -> x+2 is an involution of the set but no group homomorphism
    std::vector<std::vector<size_t>> t(2, std::vector<size_t>(4));
    for (size_t x = 0; x < 4; ++x) {
      t[0][x] = x;
      t[1][x] = (x + 2) % 4;
    }
    CHECK_THROWS_AS(GroupAction::on_group(z2, z4, t), NotAutomorphismAction);
  }
}

TEST_CASE("build_index") {
  SUBCASE("J = {j}, trivial group: I = {1, j}") {
    auto idx = build_index({"j"}, FiniteGroup::trivial());
    CHECK(idx.size() == 2);
    CHECK(idx.act(0, 1) == 1);
  }

  SUBCASE("J = {j}, Z/2: fixed point plus a swapped pair") {
    auto idx = build_index({"j"}, FiniteGroup::cyclic(2));
    CHECK(idx.size() == 3);
    CHECK(idx.act(1, 0) == 0);  // 1^g = 1
    CHECK(idx.act(1, idx.pair_index(0, 0)) == idx.pair_index(0, 1));
    CHECK(idx.act(1, idx.pair_index(0, 1)) == idx.pair_index(0, 0));
    // unique decomposition i = j^g
    auto [j, g] = idx.decompose(idx.pair_index(0, 1));
    CHECK(j == 0);
    CHECK(g == 1);
  }

  SUBCASE("J = {j1, j2}, Z/2: two free orbits") {
    auto idx = build_index({"j1", "j2"}, FiniteGroup::cyclic(2));
    CHECK(idx.size() == 5);
  }

  SUBCASE("empty J rejected") {
    CHECK_THROWS_AS(build_index({}, FiniteGroup::cyclic(2)), EmptyJ);
  }
}

TEST_CASE("assign_generators") {
  auto z2 = FiniteGroup::cyclic(2);
  auto z3 = FiniteGroup::cyclic(3);
  auto act = inversion_action(z2, z3);

  SUBCASE("trivial H") {
    auto idx = build_index({"j"}, FiniteGroup::trivial());
    auto h1 = FiniteGroup::trivial();
    auto tau = assign_generators(h1, {0}, idx, GroupAction::trivial(h1, 1));
    CHECK(tau[1] == 0);
  }

  SUBCASE("H = Z/3 with inversion: conjugates get inverses") {
    auto idx = build_index({"0", "1", "2"}, z2);
    auto tau = assign_generators(z3, {0, 1, 2}, idx, act);
    // tau_(j, conj) = inverse of tau_j
    for (size_t j = 0; j < 3; ++j) {
      CHECK(tau[idx.pair_index(j, 0)] == j);
      CHECK(tau[idx.pair_index(j, 1)] == (3 - j) % 3);
    }
  }

  SUBCASE("non-bijective listing rejected") {
    auto idx = build_index({"0", "1", "2"}, z2);
    CHECK_THROWS_AS(assign_generators(z3, {0, 1, 1}, idx, act),
                    ListingNotBijective);
  }

  SUBCASE("Klein four-group: generation check") {
    auto v4g = semidirect_product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2),
                                  GroupAction::trivial(FiniteGroup::cyclic(2), 2));
    auto v4 = v4g.group;
    auto idx = build_index({"a", "b", "c", "d"}, FiniteGroup::trivial());
    auto tau = assign_generators(v4, {0, 1, 2, 3}, idx,
                                 GroupAction::trivial(FiniteGroup::trivial(), 4));
    CHECK(tau.size() == 5);
  }
}

TEST_CASE("choose_branch_elements") {
  SUBCASE("rational field, trivial group: c = 3 next to a_1 = 2") {
    auto Q = NumberField::builtin("rational");
    auto gal = GaloisRealization::create(*Q, FiniteGroup::trivial(), {0});
    auto idx = build_index({"j"}, gal.gamma);
    auto branch = choose_branch_elements(*Q, gal, Q->from_integer(2), idx, 8);
    REQUIRE(branch.size() == 2);
    CHECK(branch[0] == Q->from_integer(2));
    CHECK(branch[1] == Q->from_integer(3));
  }

  SUBCASE("eisenstein flagship: norm-7 conjugate pair") {
    auto Qz = NumberField::builtin("eisenstein");
    auto gal = GaloisRealization::create(*Qz, FiniteGroup::cyclic(2), {0, 1});
    auto idx = build_index({"j"}, gal.gamma);
    auto branch = choose_branch_elements(*Qz, gal, Qz->from_integer(2), idx, 8);
    REQUIRE(branch.size() == 3);
    CHECK(Qz->abs_norm(branch[1]) == 7);
    CHECK(branch[2] == Qz->apply_automorphism(1, branch[1]));
    // a_I = 2 * N(c_j) = 14, rational
    IntegerElement aI = Qz->mul(Qz->mul(branch[0], branch[1]), branch[2]);
    CHECK(aI.coords[1] == 0);
    CHECK(aI.coords[0] == 14);
  }

  SUBCASE("unit a_1 rejected") {
    auto Q = NumberField::builtin("rational");
    auto gal = GaloisRealization::create(*Q, FiniteGroup::trivial(), {0});
    auto idx = build_index({"j"}, gal.gamma);
    CHECK_THROWS(choose_branch_elements(*Q, gal, Q->from_integer(1), idx, 8));
  }
}

TEST_CASE("validate_patching") {
  SUBCASE("trivial problem passes vacuously") {
    PatchingData data;
    data.field = NumberField::builtin("rational");
    data.order = 8;
    data.gal = GaloisRealization::create(*data.field, FiniteGroup::trivial(), {0});
    data.H = FiniteGroup::trivial();
    data.gamma_on_H = GroupAction::trivial(data.gal.gamma, 1);
    data.G1 = FiniteGroup::trivial();
    data.g1_on_H = GroupAction::trivial(data.G1, 1);
    data.gamma_on_G1 = GroupAction::trivial(data.gal.gamma, 1);
    data.index = build_index({"j"}, data.gal.gamma);
    data.tau = assign_generators(data.H, {0}, data.index, data.gamma_on_H);
    data.branch = choose_branch_elements(*data.field, data.gal,
                                         data.field->from_integer(2), data.index, 8);
    data.kummer_list.push_back(
        make_kummer_data(1, data.branch[1], data.field, data.order));
    auto entries = validate_patching(data, 1, 7);
    for (const auto& e : entries) {
      INFO(e.name, ": ", e.details);
      CHECK(e.status == CheckStatus::Pass);
    }
  }

  SUBCASE("flagship drill at reduced order") {
    PatchingData data = flagship_data(8);
    auto entries = validate_patching(data, 1, 11);
    REQUIRE(!entries.empty());
    for (const auto& e : entries) {
      INFO(e.name, ": ", e.details);
      CHECK(e.status == CheckStatus::Pass);
    }
  }

  SUBCASE("sabotage: non-coprime branch elements fail, never silently pass") {
    PatchingData data = flagship_data(8);
    data.branch[1] = data.branch[0];  // duplicate kills coprimality
    auto entries = validate_patching(data, 1, 11);
    bool coprime_failed = false;
    for (const auto& e : entries)
      if (e.name == "branch/pairwise_coprime" && e.status != CheckStatus::Pass)
        coprime_failed = true;
    CHECK(coprime_failed);
  }

  SUBCASE("sabotage: broken tau listing breaks generation") {
    PatchingData data = flagship_data(8);
    // overwrite tau with a constant listing: no longer generates H
    for (size_t i = 1; i < data.tau.size(); ++i) data.tau[i] = 0;
    auto entries = validate_patching(data, 0, 11);
    bool gen_failed = false;
    for (const auto& e : entries)
      if (e.name == "group/H_generated" && e.status == CheckStatus::Fail)
        gen_failed = true;
    CHECK(gen_failed);
  }
}
