#include <doctest.h>

#include <cmath>

#include "maxbv/checks1d.hpp"
#include "maxbv/random_gen.hpp"

using namespace maxbv;

namespace {
StepFn chi01(long half) {
  return StepFn::indicator(Interval(Rat(-half), Rat(half)), Interval(Rat(0), Rat(1)));
}
}  // namespace

TEST_CASE("bd bound on the indicator: measured 2 against bound 9") {
  CheckReport r = check_bd_bound(chi01(12), Rat(1), 1e-6);
  CHECK(r.passed);
  CHECK(r.get("l1_maximal") == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(r.bound == doctest::Approx(9.0));
  CHECK(r.margin == doctest::Approx(7.0).epsilon(1e-3));

  CheckReport z = check_bd_bound(StepFn::constant(Interval(Rat(0), Rat(1)), Rat(0)), Rat(1), 1e-6);
  CHECK(z.passed);
}

TEST_CASE("bd check fails when the slack is made impossible") {
  CheckReport r = check_bd_bound(chi01(12), Rat(1), -8.0);
  CHECK_FALSE(r.passed);
  CHECK(r.margin < 0);
}

TEST_CASE("bd bound on random families") {
  Rng rng(1);
  for (int i = 0; i < 25; ++i) {
    StepFn f = random_stepfn(rng.next(), 20, Rat(-2), Rat(2), Interval(Rat(-4), Rat(4)));
    for (const char* rs : {"1/4", "1", "4"}) {
      CheckReport r = check_bd_bound(f, Rat::parse(rs), 1e-6);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("weak type on the indicator matches the closed form 2/(t+1)") {
  StepFn f = chi01(24);
  std::vector<Rat> ts;
  for (int j = 1; j <= 50; ++j) ts.push_back(Rat(j, 8));
  CheckReport r = check_weak_type(f, ts, 1e-6);
  CHECK(r.passed);

  // closed form: lambda{Mf > s} = 2/s - 1 for s < 1, so (Mf)*(t) = 2/(t+1);
  // the sampled distribution must track it closely.
  ProfileOptions opts;
  opts.tol = 1e-5;
  SampledProfile prof = maximal_profile(f, std::nullopt, opts);
  // the closed form caps at sup Mf = 1, so probe arguments t > 1
  for (double td : {1.5, 2.0, 4.0, 6.0}) {
    double target = 2.0 / (td + 1.0);
    double level = target + 1e-6;
    double meas = 0;
    for (size_t i = 0; i + 1 < prof.nodes.size(); ++i) {
      double hi = std::max(prof.values[i].to_double(), prof.values[i + 1].to_double());
      if (hi > level) meas += (prof.nodes[i + 1] - prof.nodes[i]).to_double();
    }
    CHECK(meas == doctest::Approx(td).epsilon(0.02));
  }
  CHECK_THROWS_AS(check_weak_type(f, {Rat(-1)}, 1e-6), Error);
}

TEST_CASE("weak type accepts the zero function") {
  StepFn z = StepFn::constant(Interval(Rat(0), Rat(1)), Rat(0));
  CheckReport r = check_weak_type(z, {Rat(1, 4), Rat(1), Rat(4)}, 1e-6);
  CHECK(r.passed);
}

TEST_CASE("weak type on random functions") {
  Rng rng(2);
  for (int i = 0; i < 15; ++i) {
    StepFn f = random_stepfn(rng.next(), 10, Rat(-2), Rat(2), Interval(Rat(-2), Rat(2)));
    if (f.is_zero()) continue;
    StepFn g = f.extended_to(Interval(Rat(-12), Rat(12)));
    Rat l1 = integral_abs(g);
    CheckReport r = check_weak_type(g, {l1 / Rat(4), l1, Rat(4) * l1}, 1e-6);
    CHECK(r.passed);
  }
}

TEST_CASE("poincare: indicator cross-check of the derivative energy") {
  // At R=1 the maximizer at x in (1,2) is the pinned interval [x-1, x], so
  // the profile ramps linearly and the energy is 2 int_1^2 1 dx = 2. The 1/x
  // branch needs R >= x; at R=2 it spans (1,2) and the energy becomes
  // 2(int_1^2 x^-4 + int_2^3 1/4) = 13/12. Simpson quadrature gives the
  // Mobius part independently.
  auto simpson = [](auto fn, double a, double b, int n) {
    double h = (b - a) / n, s = fn(a) + fn(b);
    for (int i = 1; i < n; ++i) s += fn(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
  };
  double mobius = 2.0 * simpson([](double x) { return 1.0 / (x * x * x * x); }, 1.0, 2.0, 4096);
  CHECK(mobius == doctest::Approx(7.0 / 12.0).epsilon(1e-10));

  StepFn f = StepFn::indicator(Interval(Rat(-4), Rat(5)), Interval(Rat(0), Rat(1)));
  CheckReport r = check_poincare(f, Rat(1), 1e-9);
  CHECK(r.passed);
  CHECK(r.get("energy_dm") == doctest::Approx(2.0).epsilon(2e-4));
  CHECK(r.get("lambda_neighborhood") == doctest::Approx(3.0));
  CHECK(r.get("l2_sq") == doctest::Approx(1.0));

  CheckReport r20 = check_poincare(f, Rat(2), 1e-9);
  CHECK(r20.passed);
  CHECK(r20.get("energy_dm") == doctest::Approx(mobius + 0.5).epsilon(2e-4));

  // homogeneity smoke test: both sides scale by c^2
  CheckReport r2 = check_poincare(f.scaled(Rat(3)), Rat(1), 1e-9);
  CHECK(r2.passed);
  CHECK(r2.get("l2_sq") == doctest::Approx(9.0));
  CHECK(r2.get("energy_dm") == doctest::Approx(18.0).epsilon(2e-4));

  CHECK_THROWS_AS(check_poincare(chi01(1), Rat(2), 1e-9), Error);  // margin too small
}

TEST_CASE("poincare on random compactly supported functions") {
  Rng rng(3);
  for (int i = 0; i < 12; ++i) {
    for (const char* rs : {"1/2", "2"}) {
      Rat R = Rat::parse(rs);
      StepFn f = random_stepfn_supported(rng.next(), 12, Rat(2), Interval(Rat(-8), Rat(8)),
                                         R + Rat(1));
      CheckReport r = check_poincare(f, R, 1e-9);
      CHECK(r.passed);
    }
  }
}

TEST_CASE("dyadic counterexample structure") {
  StepFn f1 = dyadic_counterexample(1, Rat(2));
  // blocks [1, 3/2] and [1/2, 3/4] plus the left block
  CHECK(variation(f1) == Rat(6));
  CHECK(canonical_at(f1, Rat(5, 4)) == Rat(1));
  CHECK(canonical_at(f1, Rat(9, 16)) == Rat(1));
  CHECK(canonical_at(f1, Rat(7, 8)) == Rat(0));

  CHECK(variation(dyadic_counterexample(20, Rat(2))) == Rat(44));
  CHECK(variation(dyadic_counterexample(10, Rat(2))) == Rat(24));

  // mass: left_len + sum of block lengths = left_len + 1 - 2^-(n_max+1)
  for (int nm : {1, 5, 12}) {
    StepFn f = dyadic_counterexample(nm, Rat(3));
    CHECK(integral_abs(f) == Rat(3) + Rat(1) - Rat::pow2(-(nm + 1)));
  }
  CHECK_THROWS_AS(dyadic_counterexample(0, Rat(1)), Error);
}

TEST_CASE("counterexample check: stable maximal variation under truncation growth") {
  CheckReport r = check_counterexample(20, Rat(1, 4), 1e-3);
  CHECK(r.passed);
  CHECK(r.get("N") == 4);
  CHECK(r.get("variation_f") == doctest::Approx(44.0));
  CHECK(r.get("rel_change") < 0.01);
  CHECK(r.get("v_maximal_nmax") <= r.bound + 1e-3);
  CHECK_THROWS_AS(check_counterexample(20, Rat(2), 1e-3), Error);  // R >= 1 rejected
}

TEST_CASE("convergence of small-scale maximal functions") {
  // chi: ||M_a chi - chi||_1 = a exactly (two linear ramps of area a/2);
  // cross-check with a brute-force midpoint integral of the evaluator.
  StepFn f = StepFn::indicator(Interval(Rat(-2), Rat(3)), Interval(Rat(0), Rat(1)));
  {
    Rat a(1, 4);
    MaxEvaluator ev(f, a);
    double acc = 0;
    int n = 4000;
    for (int i = 0; i < n; ++i) {
      Rat x = Rat(-2) + Rat(5) * Rat(2 * i + 1) / Rat(2 * n);
      acc += (ev.eval(x).value - canonical_at(f, x)).to_double();
    }
    acc *= 5.0 / n;
    CHECK(acc == doctest::Approx(0.25).epsilon(1e-2));
  }
  std::vector<Rat> scales;
  for (int k = 1; k <= 8; ++k) scales.push_back(Rat::pow2(-k));
  CheckReport r = check_convergence(f, scales, 1e-9, 1e-3);
  CHECK(r.passed);
  CHECK(r.get("l1_diff_0") == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(r.get("l1_diff_7") == doctest::Approx(1.0 / 256).epsilon(1e-4));

  // constant functions have zero difference at every scale
  CheckReport rc =
      check_convergence(StepFn::constant(Interval(Rat(0), Rat(1)), Rat(5)), scales, 1e-9, 1e-3);
  CHECK(rc.passed);
  CHECK(rc.get("l1_diff_0") == doctest::Approx(0.0));

  Rng rng(4);
  for (int i = 0; i < 8; ++i) {
    StepFn g = random_stepfn(rng.next(), 10, Rat(0), Rat(2), Interval(Rat(-2), Rat(2)));
    CheckReport rr = check_convergence(g, scales, 1e-9, 1e-3);
    CHECK(rr.passed);
    // contraction at every scale, recovery at the smallest
    CHECK(rr.get("min_variation_maximal") <=
          rr.get("variation_abs_f") * (1 + 1e-12) + 1e-9);
    CHECK(rr.get("variation_abs_f") <=
          rr.get("smallest_scale_variation_maximal") + 1e-3);
  }

  // pieces at least twice the largest scale: V(M_a f) = V(f) at every scale
  for (int i = 0; i < 6; ++i) {
    std::vector<Rat> vals;
    for (int p = 0; p < 4; ++p) vals.push_back(Rat(rng.range(0, 32), 16));
    StepFn g(Interval(Rat(-2), Rat(2)), {Rat(-1), Rat(0), Rat(1)}, std::move(vals));
    CheckReport rr = check_convergence(g, scales, 1e-9, 1e-3);
    CHECK(rr.passed);
    CHECK(rr.get("variation_abs_f") <= rr.get("min_variation_maximal") + 1e-3);
  }
  CHECK_THROWS_AS(check_convergence(f, {Rat(1, 4), Rat(1, 2)}, 1e-9, 1e-3), Error);
}

TEST_CASE("growth table in R") {
  StepFn f = chi01(2);
  CheckReport rep;
  Table t = growth_table_1d(f, {Rat(1), Rat(4), Rat(16), Rat(64)}, &rep);
  CHECK(t.rows.size() == 4);
  CHECK(rep.passed);
  // the expected l1 values follow 1 + 1/R + 2 log R
  auto l1_of = [&](size_t row) { return std::stod(t.rows[row][1]); };
  CHECK(l1_of(0) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(l1_of(1) == doctest::Approx(1.0 + 0.25 + 2 * std::log(4.0)).epsilon(1e-4));
  CHECK(l1_of(2) == doctest::Approx(1.0 + 1.0 / 16 + 2 * std::log(16.0)).epsilon(1e-4));
  CHECK(l1_of(3) == doctest::Approx(1.0 + 1.0 / 64 + 2 * std::log(64.0)).epsilon(1e-4));
  CHECK(rep.get("envelope_max_over_min") < 10.0);

  CheckReport zrep;
  growth_table_1d(StepFn::constant(Interval(Rat(0), Rat(1)), Rat(0)),
                  {Rat(1), Rat(4), Rat(16), Rat(64)}, &zrep);
  CHECK(zrep.passed);
}
