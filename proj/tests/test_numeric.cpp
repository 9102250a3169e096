#include <doctest.h>

#include "arithdisc/numeric.hpp"

using namespace arithdisc;

TEST_CASE("rational parsing round-trips") {
  CHECK(parse_rational("3/4") == make_rational(3, 4));
  CHECK(parse_rational("-7") == Rational(-7));
  CHECK(rational_to_string(make_rational(6, 4)) == "3/2");
  CHECK(rational_to_string(Rational(5)) == "5");
}

TEST_CASE("round_half_down ties go downward") {
  CHECK(round_half_down(make_rational(1, 2)) == 0);
  CHECK(round_half_down(make_rational(-1, 2)) == -1);
  CHECK(round_half_down(make_rational(3, 2)) == 1);
  CHECK(round_half_down(make_rational(2, 3)) == 1);
  CHECK(round_half_down(make_rational(-2, 3)) == -1);
  CHECK(round_half_down(Rational(4)) == 4);
}

TEST_CASE("sqrt enclosure is tight and exact on squares") {
  RatInterval s = sqrt_enclosure(make_rational(9, 4), 10);
  CHECK(s.is_point());
  CHECK(s.lo == make_rational(3, 2));

  RatInterval r2 = sqrt_enclosure(Rational(2), 40);
  CHECK(r2.lo * r2.lo <= 2);
  CHECK(r2.hi * r2.hi >= 2);
  CHECK(r2.width() <= make_rational(1, Integer(1) << 40));
}

TEST_CASE("interval arithmetic encloses products") {
  RatInterval a(make_rational(-1, 2), Rational(2));
  RatInterval b(Rational(-3), Rational(1));
  RatInterval p = a * b;
  // sample points stay inside
  for (int i = -1; i <= 4; ++i)
    for (int j = -6; j <= 2; ++j) {
      Rational x = make_rational(i, 2), y = make_rational(j, 2);
      if (a.contains(x) && b.contains(y)) CHECK(p.contains(x * y));
    }
  CHECK(a.square().lo == 0);
  CHECK(a.square().hi == 4);
}

TEST_CASE("certify_less escalates and refuses to lie") {
  ExactConfig cfg;
  cfg.prec_start = 4;
  cfg.prec_cap = 64;
  auto half = [](unsigned) { return RatInterval::point(make_rational(1, 2)); };
  auto one = [](unsigned) { return RatInterval::point(Rational(1)); };
  CHECK(certify_less(half, one, cfg) == Certainty::True);
  CHECK(certify_less(one, half, cfg) == Certainty::False);
  // sqrt(2) vs itself: genuinely undecidable for nested non-point enclosures
  auto rt2 = [](unsigned p) { return sqrt_enclosure(Rational(2), p); };
  CHECK(certify_less(rt2, rt2, cfg) == Certainty::Undecidable);
}

TEST_CASE("nth root enclosure") {
  RatInterval r = nth_root_enclosure(Rational(8), 3, 20);
  CHECK(r.lo <= 2);
  CHECK(r.hi >= 2);
  RatInterval g = nth_root_enclosure(Rational(2), 2, 20);
  CHECK(g.lo * g.lo <= 2);
  CHECK(g.hi * g.hi >= 2);
}
