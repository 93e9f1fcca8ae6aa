#include <doctest.h>

#include "brute_oracle.hpp"
#include "maxbv/random_gen.hpp"

using namespace maxbv;
using maxbv::testing::GridSup;
using maxbv::testing::brute_force_grid_sup;

namespace {
StepFn chi01(long half) {
  return StepFn::indicator(Interval(Rat(-half), Rat(half)), Interval(Rat(0), Rat(1)));
}
}  // namespace

TEST_CASE("worked examples") {
  StepFn f = chi01(8);
  {
    MaxQueryResult r = maximal_eval(f, Rat(3, 2), Rat(1));
    CHECK(r.value == Rat(1, 2));
    CHECK(r.witness == Interval(Rat(1, 2), Rat(3, 2)));
    CHECK_FALSE(r.degenerate);
    // enumeration oracle converges to 1/2 from below
    GridSup brute = brute_force_grid_sup(f, Rat(3, 2), Rat(1), 10);
    CHECK(brute.value <= r.value);
    CHECK((r.value - brute.value).to_double() < 1e-2);
  }
  {
    MaxQueryResult r = maximal_eval(f, Rat(3), Rat(1));
    CHECK(r.value == Rat(0));
  }
  {
    MaxQueryResult r = maximal_eval(f, Rat(-1), std::nullopt);
    CHECK(r.value == Rat(1, 2));
    CHECK(r.witness == Interval(Rat(-1), Rat(1)));
  }
  StepFn c = StepFn::constant(Interval(Rat(0), Rat(4)), Rat(-7));
  for (long num : {0L, 1L, 5L, 8L}) {
    CHECK(maximal_eval(c, Rat(num, 2), Rat(1)).value == Rat(7));
  }
  CHECK_THROWS_AS(maximal_eval(f, Rat(9), Rat(1)), Error);
  CHECK_THROWS_AS(maximal_eval(f, Rat(0), Rat(-1)), Error);
  CHECK_THROWS_AS(maximal_eval(f, Rat(0), Rat(0)), Error);
}

TEST_CASE("exact value dominates the grid oracle and the gap closes") {
  Rng rng(2024);
  for (int inst = 0; inst < 10; ++inst) {
    StepFn f = random_stepfn(rng.next(), 6, Rat(-2), Rat(2), Interval(Rat(-1), Rat(1)));
    std::optional<Rat> R =
        (inst % 3 == 0) ? std::optional<Rat>{} : std::optional<Rat>{Rat(1, 4)};
    MaxEvaluator ev(f, R);
    for (int q = 0; q < 3; ++q) {
      Rat x(rng.range(-63, 63), 64);
      Rat exact = ev.eval(x).value;
      GridSup prev;
      Rat prev_gap(1000);
      for (int k : {8, 10, 12}) {
        GridSup brute = brute_force_grid_sup(f, x, R, k, prev.has ? &prev : nullptr);
        if (!brute.has) continue;
        CHECK(brute.value <= exact);
        Rat gap = exact - brute.value;
        CHECK(gap <= prev_gap);
        prev_gap = gap;
        prev = brute;
      }
      CHECK(prev_gap.to_double() < 0.5);
    }
  }
}

TEST_CASE("pointwise properties, exact") {
  Rng rng(99);
  for (int inst = 0; inst < 20; ++inst) {
    Interval dom(Rat(-2), Rat(2));
    StepFn f = random_stepfn(rng.next(), 8, Rat(-2), Rat(2), dom);
    StepFn g = random_stepfn(rng.next(), 8, Rat(-2), Rat(2), dom);
    Rat r1(1, 4), r2(1);
    Rat c(rng.range(-8, 8), 4);
    StepFn cf = f.scaled(c);
    StepFn fg = add(f, g);
    MaxEvaluator e1(f, r1), e2(f, r2), einf(f, std::nullopt);
    MaxEvaluator eg(g, r2), efg(fg, r2), ecf(cf, r2);
    for (int q = 0; q < 6; ++q) {
      Rat x(rng.range(-32, 32), 16);
      Rat m1 = e1.eval(x).value;
      Rat m2 = e2.eval(x).value;
      // domination of the canonical value
      CHECK(m1 >= canonical_at(f.abs(), x));
      // monotone in R
      CHECK(m1 <= m2);
      CHECK(m2 <= einf.eval(x).value);
      // essential sup bound
      CHECK(m2 <= f.ess_sup_abs());
      // homogeneity
      CHECK(ecf.eval(x).value == c.abs() * m2);
      // sublinearity
      CHECK(efg.eval(x).value <= m2 + eg.eval(x).value);
    }
  }
}

TEST_CASE("witness invariants") {
  Rng rng(5);
  for (int inst = 0; inst < 10; ++inst) {
    StepFn f = random_stepfn(rng.next(), 6, Rat(0), Rat(2), Interval(Rat(-2), Rat(2)));
    Rat R(1, 2);
    MaxEvaluator ev(f, R);
    for (int q = 0; q < 5; ++q) {
      Rat x(rng.range(-16, 16), 8);
      MaxQueryResult r = ev.eval(x);
      CHECK(f.domain().contains(r.witness.lo));
      CHECK(f.domain().contains(r.witness.hi));
      CHECK_FALSE(r.degenerate);  // never fires for step inputs
      CHECK(r.witness.length() <= R);
      CHECK(r.witness.lo <= x);
      CHECK(x <= r.witness.hi);
      // the witness average equals the value, exactly
      Rat avg = integral_abs(f, r.witness) / r.witness.length();
      CHECK(avg == r.value);
    }
  }
}
