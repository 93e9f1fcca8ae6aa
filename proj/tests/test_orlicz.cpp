#include <doctest.h>

#include <cmath>

#include "maxbv/orlicz.hpp"
#include "maxbv/random_gen.hpp"

using namespace maxbv;

namespace {

/// Scalar oracle for the constant case: solve u log u = 1 by bisection; the
/// Luxemburg norm of c on measure 1 at r = 1 is then c / u.
double solve_u_log_u() {
  double lo = 1.0, hi = 3.0;
  for (int i = 0; i < 200; ++i) {
    double mid = 0.5 * (lo + hi);
    (mid * std::log(mid) < 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("modular values") {
  StepFn ge = StepFn::constant(Interval(Rat(0), Rat(1)), Rat::from_double(M_E));
  CHECK(orlicz_modular(ge, 1.0, 1.0) == doctest::Approx(M_E).epsilon(1e-12));
  // t >= ess sup kills log+
  CHECK(orlicz_modular(ge, M_E, 1.0) == 0.0);
  CHECK(orlicz_modular(ge, 5.0, 2.0) == 0.0);
  // defining equation of the norm for g = 1
  const double u = solve_u_log_u();
  StepFn g1 = StepFn::constant(Interval(Rat(0), Rat(1)), Rat(1));
  CHECK(orlicz_modular(g1, 1.0 / u, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(orlicz_modular(g1, 0.0, 1.0), Error);
  CHECK_THROWS_AS(orlicz_modular(g1, 1.0, 0.5), Error);
  // strictly decreasing in t while positive
  double prev = orlicz_modular(g1, 0.05, 1.0);
  for (double t : {0.1, 0.2, 0.4, 0.8}) {
    double m = orlicz_modular(g1, t, 1.0);
    CHECK(m < prev);
    prev = m;
  }
}

TEST_CASE("luxemburg norm against the scalar oracle") {
  const double u = solve_u_log_u();
  CHECK(1.0 / u == doctest::Approx(0.5671432904097838).epsilon(1e-12));

  StepFn g1 = StepFn::constant(Interval(Rat(0), Rat(1)), Rat(1));
  CHECK(luxemburg_norm(g1, 1.0, 1e-12) == doctest::Approx(1.0 / u).epsilon(1e-9));

  StepFn ge = StepFn::constant(Interval(Rat(0), Rat(1)), Rat::from_double(M_E));
  CHECK(luxemburg_norm(ge, 1.0, 1e-12) == doctest::Approx(M_E / u).epsilon(1e-9));

  StepFn z = StepFn::constant(Interval(Rat(0), Rat(1)), Rat(0));
  CHECK(luxemburg_norm(z, 1.0, 1e-10) == 0.0);

  // homogeneity
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    StepFn f = random_stepfn(rng.next(), 8, Rat(0), Rat(4), Interval(Rat(0), Rat(2)));
    if (f.is_zero()) continue;
    double base = luxemburg_norm(f, 1.0, 1e-12);
    double scaled = luxemburg_norm(f.scaled(Rat(3)), 1.0, 1e-12);
    CHECK(scaled == doctest::Approx(3.0 * base).epsilon(1e-8));
    // modular at the returned norm stays <= 1
    CHECK(orlicz_modular(f, base, 1.0) <= 1.0 + 1e-12);
  }
}

TEST_CASE("log+ y <= y^alpha / alpha pointwise") {
  for (double y : {0.25, 1.0, 1.5, 3.0, 10.0, 1e6}) {
    for (double alpha : {0.5, 1.0, 2.0}) {
      const double lp = y > 1.0 ? std::log(y) : 0.0;
      CHECK(lp <= std::pow(y, alpha) / alpha + 1e-15);
    }
  }
}

TEST_CASE("embedding check on grids") {
  GridFn2D one(Rect{0, 1, 0, 1}, 4, 4, Eigen::ArrayXXd::Constant(4, 4, 1.0));
  CheckReport r = check_embedding(one, 1.0, 2, 1e-8);
  CHECK(r.passed);
  CHECK(r.get("luxemburg") == doctest::Approx(0.5671432904).epsilon(1e-6));
  CHECK(r.get("l2") == doctest::Approx(1.0));

  GridFn2D zero(Rect{0, 1, 0, 1}, 4, 4, Eigen::ArrayXXd::Zero(4, 4));
  CHECK(check_embedding(zero, 1.0, 2, 1e-8).passed);

  Rng rng(9);
  for (int i = 0; i < 30; ++i) {
    GridFn2D g = random_gridfn(rng.next(), Rect{0, 1, 0, 1}, 16, 16, 4.0);
    CHECK(check_embedding(g, 1.0, 2, 1e-8).passed);
    CHECK(check_embedding(g, 2.0, 2, 1e-8).passed);
  }
  CHECK_THROWS_AS(check_embedding(one, 1.0, 3, 1e-8), Error);
}
