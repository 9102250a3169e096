#include <doctest.h>

#include "arithdisc/rng.hpp"
#include "arithdisc/series.hpp"

using namespace arithdisc;

namespace {

RingPtr dyadic_ring() {
  auto Q = NumberField::builtin("rational");
  return make_ring(Q, Q->from_integer(2), TailMode::FormalTail);
}

TruncatedSeries t_series(RingPtr ring, unsigned order) {
  auto s = series_zero(ring, order);
  if (order > 1) s.coeffs[1] = LocalizedElement{ring->field->int_one(), 0};
  return s;
}

TruncatedSeries random_series(Rng& rng, RingPtr ring, unsigned order, long height,
                              unsigned max_exp) {
  const auto& K = ring->K();
  std::vector<LocalizedElement> cs(order);
  for (unsigned t = 0; t < order; ++t) {
    IntegerElement num;
    num.coords.resize(K.degree());
    for (size_t c = 0; c < K.degree(); ++c)
      num.coords[c] = Integer(rng.range(-height, height));
    cs[t] = LocalizedElement{num, static_cast<unsigned>(rng.below(max_exp + 1))};
  }
  return series_from_coeffs(ring, order, std::move(cs));
}

// Exact identity a^e f == r + a^e g h for a division result.
bool wdiv_identity_holds(const TruncatedSeries& f, const TruncatedSeries& g,
                         const WDivResult& res) {
  const auto& K = f.ring->K();
  IntegerElement base = f.ring->base();
  LocalizedElement ae{K.pow(base, res.scale_exp), 0};
  unsigned N = res.r.order;
  TruncatedSeries lhs = series_scalar_mul(series_truncate(f, N), ae);
  TruncatedSeries gh = series_shift(
      series_mul(series_divide_t(series_truncate(g, N), res.shift), res.h),
      res.shift);
  TruncatedSeries rhs = series_add(res.r, series_scalar_mul(gh, ae));
  return series_equal(lhs, rhs);
}

}  // namespace

TEST_CASE("series arithmetic basics") {
  auto ring = dyadic_ring();
  const auto& Q = ring->K();
  unsigned N = 8;
  Rng rng(3);
  auto f = random_series(rng, ring, N, 9, 2);

  CHECK(series_equal(series_mul(f, series_one(ring, N)), f));
  CHECK(series_equal(series_add(f, series_zero(ring, N)), f));

  // (1 - t) * (1 + t + t^2 + ...) == 1
  auto one_minus_t = series_sub(series_one(ring, N), t_series(ring, N));
  auto geo = series_inverse(one_minus_t);
  for (unsigned i = 0; i < N; ++i)
    CHECK(loc_equal(geo.coeffs[i], LocalizedElement{Q.int_one(), 0}, Q, ring->base()));
  CHECK(series_equal(series_mul(one_minus_t, geo), series_one(ring, N)));

  // compose (1 + t) with c = 2 over Z[1/2] -> 1 + 2t
  auto one_plus_t = series_add(series_one(ring, N), t_series(ring, N));
  auto comp = series_compose_ct(one_plus_t, LocalizedElement{Q.from_integer(2), 0}, ring);
  CHECK(loc_equal(comp.coeffs[1], LocalizedElement{Q.from_integer(2), 0}, Q, ring->base()));

  CHECK_THROWS_AS(series_inverse(t_series(ring, N)), NotUnit);
}

TEST_CASE("t_valuation") {
  auto ring = dyadic_ring();
  CHECK_FALSE(t_valuation(series_zero(ring, 6)).has_value());
  auto f = series_zero(ring, 6);
  f.coeffs[2] = LocalizedElement{ring->field->from_integer(3), 0};
  f.coeffs[5] = LocalizedElement{ring->field->from_integer(-1), 0};
  CHECK(t_valuation(f) == 2u);
  CHECK(t_valuation(series_one(ring, 6)) == 0u);
}

TEST_CASE("weierstrass division: spec cases") {
  auto ring = dyadic_ring();
  const auto& Q = ring->K();
  IntegerElement two = ring->base();

  SUBCASE("exact multiple: f = g") {
    auto g = series_add(series_one(ring, 8),
                        series_scalar_mul(t_series(ring, 8),
                                          LocalizedElement{Q.from_integer(3), 1}));
    auto res = weierstrass_divide(g, g, WDivMode::BoundRemainder);
    CHECK(series_is_zero(res.r));
    CHECK(series_equal(res.h, series_one(ring, 8)));
  }

  SUBCASE("f = 1/2 + t, g = t at N = 8") {
    unsigned N = 8;
    auto f = series_zero(ring, N);
    f.coeffs[0] = LocalizedElement{Q.int_one(), 1};
    f.coeffs[1] = LocalizedElement{Q.int_one(), 0};
    auto g = t_series(ring, N);
    auto res = weierstrass_divide(f, g, WDivMode::BoundRemainder);
    CHECK(res.shift == 1);
    CHECK(loc_equal(res.r.coeffs[0], LocalizedElement{Q.int_one(), 1}, Q, two));
    for (unsigned i = 1; i < N; ++i) CHECK(loc_is_integral(res.r.coeffs[i], Q, two));
    CHECK(loc_equal(res.h.coeffs[0], LocalizedElement{Q.int_one(), 0}, Q, two));
    CHECK(wdiv_identity_holds(f, g, res));
    CHECK(res.nonintegral_head == std::vector<unsigned>{0});
  }

  SUBCASE("random sweep, g = 2 - t, both modes") {
    unsigned N = 16;
    auto g = series_sub(series_constant(ring, N, LocalizedElement{Q.from_integer(2), 0}),
                        t_series(ring, N));
    Rng rng(99);
    for (int trial = 0; trial < 100; ++trial) {
      auto f = random_series(rng, ring, N, 100, 4);
      for (WDivMode mode : {WDivMode::BoundRemainder, WDivMode::BoundQuotient}) {
        auto res = weierstrass_divide(f, g, mode);
        CHECK(wdiv_identity_holds(f, g, res));
        CHECK(loc_equal(res.h.coeffs[0], LocalizedElement{Q.int_one(), 0}, Q, two));
        for (unsigned i = res.shift; i < res.r.order; ++i)
          CHECK(loc_is_integral(res.r.coeffs[i], Q, two));
        for (auto s : res.bound_status) CHECK(s == Certainty::True);
      }
    }
  }

  SUBCASE("zero divisor rejected") {
    CHECK_THROWS_AS(
        weierstrass_divide(series_one(ring, 4), series_zero(ring, 4),
                           WDivMode::BoundRemainder),
        ZeroDivisor);
  }
}

TEST_CASE("integralize") {
  auto ring = dyadic_ring();
  const auto& Q = ring->K();
  IntegerElement two = ring->base();

  SUBCASE("already integral -> h = 1, e = 0") {
    auto g = series_add(series_one(ring, 8),
                        series_scalar_mul(t_series(ring, 8),
                                          LocalizedElement{Q.from_integer(5), 0}));
    auto [h, e] = integralize(g);
    CHECK(e == 0);
    CHECK(series_equal(h, series_one(ring, 8)));
  }

  SUBCASE("constant 1/2 -> e = 1") {
    auto g = series_constant(ring, 8, LocalizedElement{Q.int_one(), 1});
    auto [h, e] = integralize(g);
    CHECK(e == 1);
    CHECK(series_equal(h, series_one(ring, 8)));
  }

  SUBCASE("postcondition oracle on random inputs") {
    Rng rng(31);
    for (int trial = 0; trial < 25; ++trial) {
      auto g = random_series(rng, ring, 16, 50, 3);
      if (!t_valuation(g)) continue;
      auto [h, e] = integralize(g);
      CHECK(loc_equal(h.coeffs[0], LocalizedElement{Q.int_one(), 0}, Q, two));
      auto prod = series_scalar_mul(series_mul(series_truncate(g, h.order), h),
                                    LocalizedElement{Q.pow(two, e), 0});
      for (const auto& c : prod.coeffs) CHECK(loc_is_integral(c, Q, two));
    }
  }
}

TEST_CASE("split_element: spec cases over (Z; 2, 3)") {
  auto Q = NumberField::builtin("rational");
  BranchLayout lay = BranchLayout::create(Q, {Q->from_integer(2), Q->from_integer(3)}, 0);

  SUBCASE("integral input splits trivially") {
    LocalizedElement y{Q->from_integer(7), 0};
    auto [yi, yip] = split_element(y, 1, lay);
    CHECK(loc_equal(yi, y, *Q, lay.a_complement(1)));
    CHECK(loc_is_zero(yip));
  }

  SUBCASE("y = 1/6 -> 1/2 - 1/3") {
    LocalizedElement y{Q->from_integer(1), 1};
    auto [yi, yip] = split_element(y, 1, lay);
    CHECK(loc_value(yi, *Q, lay.a_complement(1)).coords[0] == make_rational(1, 2));
    CHECK(loc_value(yip, *Q, lay.at(1)).coords[0] == make_rational(-1, 3));
  }

  SUBCASE("y = 5/36 splits with denominators 9 and 4") {
    LocalizedElement y{Q->from_integer(5), 2};
    auto [yi, yip] = split_element(y, 1, lay);
    Rational a = loc_value(yi, *Q, lay.a_complement(1)).coords[0];
    Rational b = loc_value(yip, *Q, lay.at(1)).coords[0];
    CHECK(a + b == make_rational(5, 36));
    CHECK(a.get_den() == 4);
    CHECK(b.get_den() == 9);
  }

  SUBCASE("non-coprime layout rejected") {
    CHECK_THROWS_AS(
        BranchLayout::create(Q, {Q->from_integer(2), Q->from_integer(4)}, 0),
        NotCoprime);
  }
}

TEST_CASE("split_series: bounds, tags, and random sweep") {
  auto Q = NumberField::builtin("rational");
  BranchLayout lay = BranchLayout::create(Q, {Q->from_integer(2), Q->from_integer(3)}, 0);
  auto ringI = lay.ring_full();

  SUBCASE("f = (1/6) t at i = 2") {
    auto f = series_zero(ringI, 4);
    f.coeffs[1] = LocalizedElement{Q->from_integer(1), 1};
    auto [g, h] = split_series(f, 1, lay);
    CHECK(loc_value(g.coeffs[1], *Q, lay.at(1)).coords[0] == make_rational(-1, 3));
    CHECK(loc_value(h.coeffs[1], *Q, lay.a_complement(1)).coords[0] ==
          make_rational(1, 2));
    CHECK(g.ring->tag == TailMode::ConvergentTail);
    CHECK(h.ring->tag == TailMode::FormalTail);
    REQUIRE(g.bound_cert.has_value());
    Rational c1 = Q->c1_interval(16).hi;
    for (const auto& cert : *g.bound_cert) CHECK(cert.upper < c1 + 1);
  }

  SUBCASE("f == 0 splits to zeros") {
    auto [g, h] = split_series(series_zero(ringI, 4), 0, lay);
    CHECK(series_is_zero(g));
    CHECK(series_is_zero(h));
  }

  SUBCASE("tags flip at the distinguished index") {
    auto f = series_zero(ringI, 3);
    f.coeffs[1] = LocalizedElement{Q->from_integer(1), 1};
    auto [g, h] = split_series(f, 0, lay);  // i = 1 (the distinguished index)
    CHECK(g.ring->tag == TailMode::FormalTail);
    CHECK(h.ring->tag == TailMode::ConvergentTail);
    CHECK(h.bound_cert.has_value());
  }

  SUBCASE("random sweep: additivity, valuation, designated C1 bound") {
    Rng rng(77);
    Rational c1 = Q->c1_interval(32).hi;  // = 1 over Q
    for (int trial = 0; trial < 100; ++trial) {
      unsigned N = 32;
      auto f = series_zero(ringI, N);
      for (unsigned t = 0; t < N; ++t) {
        f.coeffs[t] = LocalizedElement{Q->from_integer(rng.range(-50, 50)),
                                       static_cast<unsigned>(rng.below(4))};
      }
      size_t i = rng.below(2);
      auto [g, h] = split_series(f, i, lay);
      auto sum = series_add(series_rebase(g, ringI, lay.a_complement(i)),
                            series_rebase(h, ringI, lay.at(i)));
      CHECK(series_equal(sum, f));
      auto vf = t_valuation(f);
      auto vg = t_valuation(g);
      auto vh = t_valuation(h);
      if (vf) {
        if (vg) CHECK(*vg >= *vf);
        if (vh) CHECK(*vh >= *vf);
      }
      const auto& des = (i == lay.one_index()) ? h : g;
      REQUIRE(des.bound_cert.has_value());
      const IntegerElement base = des.ring->base();
      for (unsigned t = 0; t < N; ++t) {
        if (loc_is_zero(des.coeffs[t])) continue;
        auto iv = loc_norm_interval(des.coeffs[t], *Q, base, 48);
        CHECK(iv.hi < c1);
      }
    }
  }
}

TEST_CASE("basis_split: coordinate projection") {
  SUBCASE("degree 1: the series is its own coordinate") {
    auto Q = NumberField::builtin("rational");
    RingPtr r = make_ring(Q, std::nullopt, TailMode::ConvergentTail);
    auto f = series_one(r, 4);
    auto parts = basis_split(f);
    REQUIRE(parts.size() == 1);
    CHECK(series_equal(parts[0], f));
  }

  SUBCASE("gaussian: f = (2+3i) + (1-i) t") {
    auto Qi = NumberField::builtin("gaussian");
    RingPtr r = make_ring(Qi, std::nullopt, TailMode::ConvergentTail);
    auto f = series_zero(r, 2);
    f.coeffs[0] = LocalizedElement{IntegerElement{{Integer(2), Integer(3)}}, 0};
    f.coeffs[1] = LocalizedElement{IntegerElement{{Integer(1), Integer(-1)}}, 0};
    auto parts = basis_split(f);
    REQUIRE(parts.size() == 2);
    CHECK(parts[0].coeffs[0].num.coords[0] == 2);
    CHECK(parts[0].coeffs[1].num.coords[0] == 1);
    CHECK(parts[1].coeffs[0].num.coords[0] == 3);
    CHECK(parts[1].coeffs[1].num.coords[0] == -1);
  }

  SUBCASE("eisenstein with recomposition and certificate scaling") {
    auto Qz = NumberField::builtin("eisenstein");
    RingPtr r = make_ring(Qz, std::nullopt, TailMode::ConvergentTail);
    auto f = series_zero(r, 3);
    for (unsigned t = 0; t < 3; ++t)
      f.coeffs[t] = LocalizedElement{IntegerElement{{Integer(0), Integer(1)}}, 0};
    f.bound_cert = std::vector<NormEnclosure>(3, NormEnclosure{Rational(0), Rational(1), 16});
    auto parts = basis_split(f);
    REQUIRE(parts.size() == 2);
    for (unsigned t = 0; t < 3; ++t) {
      CHECK(parts[0].coeffs[t].num.coords[0] == 0);
      CHECK(parts[1].coeffs[t].num.coords[0] == 1);
    }
    REQUIRE(parts[0].bound_cert.has_value());
    // recomposition: sum_k g_k z_k == f
    for (unsigned t = 0; t < 3; ++t) {
      IntegerElement acc = Qz->int_zero();
      for (size_t k = 0; k < 2; ++k) {
        IntegerElement zk = Qz->int_zero();
        zk.coords[k] = 1;
        IntegerElement gk = Qz->from_integer(parts[k].coeffs[t].num.coords[0]);
        acc = Qz->add(acc, Qz->mul(gk, zk));
      }
      CHECK(acc == f.coeffs[t].num);
    }
  }

  SUBCASE("non-integral input rejected") {
    auto Q = NumberField::builtin("rational");
    RingPtr r = make_ring(Q, Q->from_integer(2), TailMode::ConvergentTail);
    auto f = series_constant(r, 2, LocalizedElement{Q->int_one(), 1});
    CHECK_THROWS_AS(basis_split(f), NotIntegral);
  }
}

TEST_CASE("growth_report") {
  auto Q = NumberField::builtin("rational");
  RingPtr r = make_ring(Q, std::nullopt, TailMode::ConvergentTail);

  auto one = series_one(r, 6);
  auto rep1 = growth_report(one, make_rational(1, 2));
  CHECK(rep1.partial_sum == 1);
  CHECK(rep1.root_growth.hi == 0);

  unsigned N = 10;
  auto geo = series_zero(r, N);
  for (unsigned t = 0; t < N; ++t)
    geo.coeffs[t] = LocalizedElement{Q->int_one(), 0};
  auto rep2 = growth_report(geo, make_rational(1, 2));
  // sum_{n<N} (1/2)^n = 2 - 2^{1-N}
  CHECK(rep2.partial_sum == Rational(2) - make_rational(2, Integer(1) << N));

  auto dbl = series_zero(r, N);
  for (unsigned t = 0; t < N; ++t)
    dbl.coeffs[t] = LocalizedElement{Q->from_integer(Integer(1) << t), 0};
  auto rep3 = growth_report(dbl, make_rational(1, 2));
  CHECK(rep3.partial_sum == Rational(static_cast<long>(N)));
  CHECK(rep3.root_growth.hi >= make_rational(19, 10));
  CHECK(rep3.root_growth.lo <= 2);
}

TEST_CASE("long divisions honor the cancellation token") {
  auto ring = dyadic_ring();
  Rng rng(8);
  auto f = random_series(rng, ring, 24, 50, 3);
  auto g = random_series(rng, ring, 24, 50, 3);
  if (!t_valuation(g)) g = series_one(ring, 24);
  std::atomic<bool> stop{true};
  ExactConfig cfg;
  cfg.cancel = &stop;
  CHECK_THROWS_AS(weierstrass_divide(f, g, WDivMode::BoundRemainder, cfg),
                  Cancelled);
}

TEST_CASE("order propagation") {
  auto ring = dyadic_ring();
  Rng rng(1);
  auto a = random_series(rng, ring, 10, 5, 1);
  auto b = random_series(rng, ring, 7, 5, 1);
  CHECK(series_add(a, b).order == 7);
  CHECK(series_mul(a, b).order == 7);
  CHECK(series_shift(a, 3).order == 13);
  CHECK(series_truncate(a, 4).order == 4);
}
