#include <doctest.h>

#include "maxbv/random_gen.hpp"
#include "maxbv/step_fn.hpp"

using namespace maxbv;

namespace {
StepFn chi01(long half) {
  return StepFn::indicator(Interval(Rat(-half), Rat(half)), Interval(Rat(0), Rat(1)));
}
}  // namespace

TEST_CASE("construction, merge, validation") {
  StepFn f = StepFn(Interval(Rat(-8), Rat(8)), {Rat(0), Rat(1)}, {Rat(0), Rat(1), Rat(0)});
  CHECK(f.piece_count() == 3);

  StepFn merged(Interval(Rat(0), Rat(2)), {Rat(1)}, {Rat(5), Rat(5)});
  CHECK(merged.piece_count() == 1);
  CHECK(merged == StepFn::constant(Interval(Rat(0), Rat(2)), Rat(5)));

  CHECK_THROWS_AS(StepFn(Interval(Rat(0), Rat(2)), {Rat(1), Rat(0)}, {Rat(1), Rat(2), Rat(3)}),
                  Error);
  CHECK_THROWS_AS(StepFn(Interval(Rat(0), Rat(2)), {Rat(1)}, {Rat(1)}), Error);
  CHECK_THROWS_AS(StepFn(Interval(Rat(0), Rat(2)), {Rat(3)}, {Rat(1), Rat(2)}), Error);
}

TEST_CASE("integration") {
  StepFn f = chi01(8);
  CHECK(integral_abs(f, Interval(Rat(-8), Rat(8))) == Rat(1));
  CHECK(integral_abs(f, Interval(Rat(1, 2), Rat(3, 2))) == Rat(1, 2));
  CHECK(integral_abs(StepFn::constant(f.domain(), Rat(0))) == Rat(0));
  CHECK_THROWS_AS(integral_abs(f, Interval(Rat(-9), Rat(0))), Error);

  // additivity over adjacent windows
  Rng rng(7);
  for (int i = 0; i < 30; ++i) {
    StepFn g = random_stepfn(rng.next(), 8, Rat(-3), Rat(3), Interval(Rat(-4), Rat(4)));
    Rat a(rng.range(-16, 14), 4), b, c;
    b = a + Rat(rng.range(1, 8), 4);
    c = b + Rat(rng.range(1, 8), 4);
    if (c > Rat(4)) continue;
    CHECK(integral_abs(g, Interval(a, c)) ==
          integral_abs(g, Interval(a, b)) + integral_abs(g, Interval(b, c)));
  }
}

TEST_CASE("lp norms") {
  StepFn f = chi01(8);
  CHECK(lp_norm(f, Rat(1)) == doctest::Approx(1.0));
  CHECK(lp_norm(f, Rat(2)) == doctest::Approx(1.0));
  StepFn g = StepFn::constant(Interval(Rat(0), Rat(2)), Rat(3));
  CHECK(lp_inner_sum(g, 2) == Rat(18));
  CHECK(lp_norm(g, Rat(2)) == doctest::Approx(std::sqrt(18.0)));
  CHECK_THROWS_AS(lp_norm(f, Rat(1, 2)), Error);
}

TEST_CASE("variation and bv norm") {
  CHECK(variation(chi01(8)) == Rat(2));
  CHECK(variation(StepFn::constant(Interval(Rat(0), Rat(1)), Rat(9))) == Rat(0));
  StepFn f(Interval(Rat(0), Rat(4)), {Rat(1), Rat(2), Rat(3)}, {Rat(0), Rat(1), Rat(3), Rat(0)});
  CHECK(variation(f) == Rat(6));
  CHECK(bv_norm(chi01(8)) == Rat(3));
  CHECK(bv_norm(StepFn::constant(Interval(Rat(0), Rat(1)), Rat(0))) == Rat(0));
  Rat d(1, 16);
  StepFn thin = StepFn::indicator(Interval(Rat(-2), Rat(2)), Interval(Rat(0), d));
  CHECK(bv_norm(thin) == d + Rat(2));

  // inserting a redundant breakpoint must not change the variation
  StepFn squeezed(Interval(Rat(0), Rat(4)), {Rat(1), Rat(3, 2), Rat(2), Rat(3)},
                  {Rat(0), Rat(1), Rat(1), Rat(3), Rat(0)});
  CHECK(variation(squeezed) == Rat(6));
  CHECK(squeezed == f);
}

TEST_CASE("canonical representative at breakpoints") {
  StepFn f = chi01(8);
  CHECK(canonical_at(f, Rat(1, 2)) == Rat(1));
  // limsup of shrinking-interval averages favours the larger side: brute-force
  // averages over (1 - h, 1 + eps*h) approach max(1, 0) = 1 as h -> 0.
  {
    Rat x(1);
    for (int k = 4; k <= 10; k += 3) {
      Rat h = Rat::pow2(-k);
      Rat eps_h = h / Rat(64);
      Rat avg = integral_abs(f, Interval(x - h, x + eps_h)) / (h + eps_h);
      CHECK(avg <= Rat(1));
      CHECK((Rat(1) - avg).to_double() < 0.05);
    }
    CHECK(canonical_at(f, x) == Rat(1));
  }
  StepFn g(Interval(Rat(0), Rat(2)), {Rat(1)}, {Rat(2), Rat(5)});
  CHECK(canonical_at(g, Rat(1)) == Rat(5));
  CHECK(canonical_at(g, Rat(0)) == Rat(2));
  CHECK(canonical_at(g, Rat(2)) == Rat(5));
  CHECK_THROWS_AS(canonical_at(g, Rat(3)), Error);
}

TEST_CASE("rearrangement") {
  StepFn f = StepFn::indicator(Interval(Rat(-2), Rat(2)), Interval(Rat(0), Rat(1)));
  RearrangedFn r = rearrangement(f);
  CHECK(r.fn.domain() == Interval(Rat(0), Rat(4)));
  CHECK(r.at(Rat(1, 2)) == Rat(1));
  CHECK(r.at(Rat(2)) == Rat(0));

  StepFn g(Interval(Rat(0), Rat(3)), {Rat(1), Rat(2)}, {Rat(3), Rat(1), Rat(2)});
  RearrangedFn rg = rearrangement(g);
  CHECK(rg.fn.values() == std::vector<Rat>{Rat(3), Rat(2), Rat(1)});

  // equimeasurable and integral preserving, exactly
  Rng rng(11);
  for (int i = 0; i < 40; ++i) {
    StepFn h = random_stepfn(rng.next(), 10, Rat(-3), Rat(3), Interval(Rat(-2), Rat(2)));
    RearrangedFn rh = rearrangement(h);
    CHECK(integral_abs(rh.fn) == integral_abs(h));
    for (int q = 0; q < 8; ++q) {
      Rat t(rng.range(0, 12), 4);
      CHECK(distribution_above(h, t) == distribution_above(rh.fn, t));
    }
    // non-increasing values
    for (size_t p = 0; p + 1 < rh.fn.values().size(); ++p)
      CHECK(rh.fn.values()[p + 1] < rh.fn.values()[p]);
  }
}

TEST_CASE("positive and negative parts") {
  StepFn f(Interval(Rat(0), Rat(2)), {Rat(1)}, {Rat(2), Rat(-3)});
  auto [fp, fm] = pos_neg_parts(f);
  CHECK(fp.values() == std::vector<Rat>{Rat(2), Rat(0)});
  CHECK(fm.values() == std::vector<Rat>{Rat(0), Rat(3)});

  StepFn g = StepFn::constant(Interval(Rat(0), Rat(1)), Rat(4));
  auto [gp, gm] = pos_neg_parts(g);
  CHECK(gp == g);
  CHECK(gm.is_zero());

  Rng rng(3);
  for (int i = 0; i < 30; ++i) {
    StepFn h = random_stepfn(rng.next(), 8, Rat(-3), Rat(3), Interval(Rat(0), Rat(1)));
    auto [hp, hm] = pos_neg_parts(h);
    CHECK(variation(h) <= variation(hp) + variation(hm));
  }
}

TEST_CASE("support neighborhoods") {
  StepFn f = chi01(8);
  CHECK(support_neighborhood(f, Rat(1)) == Interval(Rat(-1), Rat(2)));
  Rat d(1, 8), R(2);
  StepFn thin = StepFn::indicator(Interval(Rat(-4), Rat(4)), Interval(Rat(0), d));
  CHECK(support_neighborhood(thin, R).length() == Rat(2) * R + d);

  StepFn two(Interval(Rat(-2), Rat(8)), {Rat(0), Rat(1), Rat(5), Rat(6)},
             {Rat(0), Rat(1), Rat(0), Rat(1), Rat(0)});
  CHECK(support_neighborhood(two, Rat(1)) == Interval(Rat(-1), Rat(7)));
  CHECK(support_union_length(two, Rat(1)) == Rat(6));   // [-1,2] and [4,7]
  CHECK(support_union_length(two, Rat(3)) == Rat(12));  // merged hull [-3,9]
  CHECK_THROWS_AS(support_hull(StepFn::constant(f.domain(), Rat(0))), Error);
}

TEST_CASE("zero extension keeps mass and variation") {
  StepFn f = StepFn::indicator(Interval(Rat(0), Rat(1)), Interval(Rat(0), Rat(1)));
  StepFn g = f.extended_to(Interval(Rat(-4), Rat(4)));
  CHECK(integral_abs(g) == Rat(1));
  CHECK(variation(g) == Rat(2));
  CHECK(g == StepFn::indicator(Interval(Rat(-4), Rat(4)), Interval(Rat(0), Rat(1))));
}
