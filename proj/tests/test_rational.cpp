#include <doctest.h>

#include "maxbv/random_gen.hpp"
#include "maxbv/rational.hpp"

using namespace maxbv;

TEST_CASE("parsing and canonical form") {
  CHECK(Rat::parse("3/6") == Rat(1, 2));
  CHECK(Rat::parse("-4/8") == Rat(-1, 2));
  CHECK(Rat::parse("7") == Rat(7));
  CHECK(Rat::parse("0.25") == Rat(1, 4));
  CHECK(Rat::parse("1e-3").to_double() == doctest::Approx(1e-3).epsilon(1e-12));
  CHECK(Rat(2, 4).den_string() == "2");
  CHECK(Rat(-3, -6) == Rat(1, 2));
  CHECK_THROWS_AS(Rat::parse("1/0"), Error);
  CHECK_THROWS_AS(Rat::parse("abc"), Error);
}

TEST_CASE("field axioms on random rationals") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    Rat a(rng.range(-50, 50), rng.range(1, 40));
    Rat b(rng.range(-50, 50), rng.range(1, 40));
    Rat c(rng.range(-50, 50), rng.range(1, 40));
    CHECK(a + b == b + a);
    CHECK((a + b) + c == a + (b + c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a - a == Rat(0));
    if (!b.is_zero()) CHECK(a / b * b == a);
  }
}

TEST_CASE("dyadic conversions are exact") {
  CHECK(Rat::from_double(0.1).to_double() == 0.1);
  CHECK(Rat::from_double(-3.5) == Rat(-7, 2));
  CHECK(Rat::pow2(-3) == Rat(1, 8));
  CHECK(Rat::pow2(4) == Rat(16));
}

TEST_CASE("fixed point sum is a certified lower bound") {
  FixedPointSum s;
  Rat third(1, 3);
  for (int i = 0; i < 3; ++i) s.add_floor(third);
  CHECK(s.value() <= Rat(1));
  CHECK((Rat(1) - s.value()).to_double() < 1e-30);
}
