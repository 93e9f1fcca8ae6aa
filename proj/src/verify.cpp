#include "maxbv/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "maxbv/checks1d.hpp"
#include "maxbv/io.hpp"
#include "maxbv/orlicz.hpp"
#include "maxbv/random_gen.hpp"

namespace maxbv {

bool SuiteResult::all_passed() const {
  return std::all_of(reports.begin(), reports.end(),
                     [](const CheckReport& r) { return r.passed; });
}

namespace {

StepFn chi01(double half_window) {
  Rat w = Rat::from_double(half_window);
  return StepFn::indicator(Interval(-w, w), Interval(Rat(0), Rat(1)));
}

/// Aggregates a seeded family: every instance must pass; the first failing
/// instance is embedded for replay.
CheckReport aggregate_family(const std::string& claim_id, const std::string& family_tag,
                             int count,
                             const std::function<CheckReport(uint64_t, int, std::string*)>& one,
                             uint64_t seed) {
  CheckReport agg;
  agg.claim_id = claim_id;
  int failures = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  for (int i = 0; i < count; ++i) {
    std::string instance_json;
    // the family tag (not the claim id) feeds the instance seed, so claims
    // that scan a parameter reuse the same drawn functions
    CheckReport r = one(mix_seed(seed, family_tag + "#" + std::to_string(i)), i, &instance_json);
    min_margin = std::min(min_margin, r.margin);
    if (!r.passed) {
      ++failures;
      if (agg.instance_json.empty()) agg.instance_json = instance_json;
    }
  }
  agg.measure("instances", count);
  agg.measure("failures", failures);
  agg.measure("min_margin", min_margin);
  agg.margin = min_margin;
  agg.passed = failures == 0;
  agg.provenance = {"seeded-family"};
  return agg;
}

CheckReport run_remark_log(long R) {
  CheckReport rep;
  rep.claim_id = "remark-log.R" + std::to_string(R);
  StepFn f = chi01(12.0);
  ProfileOptions opts;
  opts.tol = 1e-7;
  SampledProfile prof = maximal_profile(f, Rat(R), opts);
  const double expected = 1.0 + 1.0 / R + 2.0 * std::log(static_cast<double>(R));
  const double l1_err = std::abs(prof.l1_estimate - expected);
  const double var_err = std::abs(prof.variation_lower.to_double() - 2.0);
  rep.measure("l1_maximal", prof.l1_estimate);
  rep.measure("l1_expected", expected);
  rep.measure("l1_abs_err", l1_err);
  rep.measure_exact("variation_maximal", prof.variation_lower);
  rep.measure("var_abs_err", var_err);
  rep.bound = 1e-6;
  rep.margin = 1e-6 - std::max(l1_err, var_err);
  rep.passed = l1_err <= 1e-6 && var_err <= 1e-6;
  rep.provenance = {"profile", "closed-form"};
  return rep;
}

const std::vector<ClaimSpec>& registry() {
  static const std::vector<ClaimSpec> claims = [] {
    std::vector<ClaimSpec> v;

    for (long R : {1L, 2L, 4L, 8L}) {
      v.push_back({"remark-log.R" + std::to_string(R), "remark-log",
                   "||M_R chi||_1 = 1 + 1/R + 2 log R ; |D M_R chi|(R) = 2",
                   "chi_[0,1] on [-12,12]", 1e-6, "abs error <= 1e-6",
                   [R](uint64_t) { return run_remark_log(R); }});
    }

    v.push_back({"bd.chi", "bd",
                 "||M_R f||_1 <= 3(1+2 log+ R)||f||_1 + 3|D|f||(I)",
                 "chi_[0,1] on [-12,12], R=1", 1e-6, "3(1+2log+R)||f||_1 + 3 V(|f|)",
                 [](uint64_t) {
                   CheckReport r = check_bd_bound(chi01(12.0), Rat(1), 1e-6);
                   r.claim_id = "bd.chi";
                   return r;
                 }});
    for (const char* rs : {"1/4", "1", "4"}) {
      std::string id = std::string("bd.random.R") + rs;
      Rat R = Rat::parse(rs);
      v.push_back({id, "bd", "||M_R f||_1 <= 3(1+2 log+ R)||f||_1 + 3|D|f||(I)",
                   "200 random step functions, <= 20 pieces, domain [-4,4]", 1e-6,
                   "3(1+2log+R)||f||_1 + 3 V(|f|) and V(M_R f) <= V(|f|)",
                   [id, R](uint64_t seed) {
                     return aggregate_family(
                         id, "bd.random", 200,
                         [R](uint64_t s, int, std::string* inst) {
                           StepFn f = random_stepfn(s, 20, Rat(-2), Rat(2),
                                                    Interval(Rat(-4), Rat(4)));
                           Json in{{"check", "bd"}, {"R", R.to_string()},
                                   {"tol", 1e-6}, {"f", stepfn_to_json(f)}};
                           *inst = in.dump();
                           return check_bd_bound(f, R, 1e-6);
                         },
                         seed);
                   }});
    }

    v.push_back({"weak.chi", "weak-type", "(Mf)*(t) <= 2||f||_1/t",
                 "chi_[0,1] on [-24,24], 50-point t-grid", 1e-6, "2||f||_1/t",
                 [](uint64_t) {
                   StepFn f = chi01(24.0);
                   std::vector<Rat> ts;
                   for (int j = 1; j <= 50; ++j) ts.push_back(Rat(j, 8));
                   CheckReport r = check_weak_type(f, ts, 1e-6);
                   r.claim_id = "weak.chi";
                   return r;
                 }});
    v.push_back({"weak.random", "weak-type", "(Mf)*(t) <= 2||f||_1/t",
                 "50 random step functions, t in {1/4,1,4} ||f||_1", 1e-6, "2||f||_1/t",
                 [](uint64_t seed) {
                   return aggregate_family(
                       "weak.random", "weak.random", 50,
                       [](uint64_t s, int, std::string* inst) {
                         StepFn f = random_stepfn(s, 10, Rat(-2), Rat(2),
                                                  Interval(Rat(-2), Rat(2)));
                         if (f.is_zero())
                           f = StepFn::indicator(f.domain(), Interval(Rat(0), Rat(1)));
                         Interval window(Rat(-12), Rat(12));
                         StepFn g = f.extended_to(window);
                         Rat l1 = integral_abs(g);
                         std::vector<Rat> ts{l1 / Rat(4), l1, Rat(4) * l1};
                         Json tj = Json::array();
                         for (const Rat& t : ts) tj.push_back(t.to_string());
                         Json in{{"check", "weak"}, {"thresholds", tj},
                                 {"tol", 1e-6}, {"f", stepfn_to_json(g)}};
                         *inst = in.dump();
                         return check_weak_type(g, ts, 1e-6);
                       },
                       seed);
                 }});

    v.push_back({"poincare.chi", "poincare",
                 "||f||_2^2 <= min{(3(1+2log+R))^2/lambda(N) ||f||_BV^2 + (lambda(N)^2/2)||DM_Rf||_2^2, lambda(N)^2 ||DM_Rf||_2^2}",
                 "chi_[0,1] on [-4,5], R in {1,2}", 1e-4,
                 "energy cross-check: 2 at R=1, 13/12 at R=2 (2 int_1^2 x^-4 = 7/12 branch)",
                 [](uint64_t) {
                   StepFn f = StepFn::indicator(Interval(Rat(-4), Rat(5)),
                                                Interval(Rat(0), Rat(1)));
                   // Closed forms: at R=1 the maximizer is the pinned interval
                   // [x-1, x], so the profile ramps linearly and the energy is
                   // 2; at R=2 the 1/x branch appears on (1,2) and the energy
                   // is 2(int_1^2 x^-4 + int_2^3 1/4) = 13/12.
                   CheckReport r = check_poincare(f, Rat(1), 1e-9);
                   r.claim_id = "poincare.chi";
                   const double e_err1 = std::abs(r.get("energy_dm") - 2.0);
                   CheckReport r2 = check_poincare(f, Rat(2), 1e-9);
                   const double e_err2 = std::abs(r2.get("energy_dm") - 13.0 / 12.0);
                   r.measure("energy_abs_err_R1", e_err1);
                   r.measure("energy_R2", r2.get("energy_dm"));
                   r.measure("energy_abs_err_R2", e_err2);
                   r.passed = r.passed && r2.passed && e_err1 <= 1e-4 && e_err2 <= 1e-4;
                   r.margin = std::min({r.margin, 1e-4 - e_err1, 1e-4 - e_err2});
                   return r;
                 }});
    for (const char* rs : {"1/2", "2"}) {
      std::string id = std::string("poincare.random.R") + rs;
      Rat R = Rat::parse(rs);
      v.push_back({id, "poincare",
                   "||f||_2^2 <= min{(3(1+2log+R))^2/lambda(N) ||f||_BV^2 + (lambda(N)^2/2)||DM_Rf||_2^2, lambda(N)^2 ||DM_Rf||_2^2}",
                   "50 compactly supported random step functions", 1e-9,
                   "poincare minimum", [id, R](uint64_t seed) {
                     return aggregate_family(
                         id, "poincare.random", 50,
                         [R](uint64_t s, int, std::string* inst) {
                           StepFn f = random_stepfn_supported(
                               s, 12, Rat(2), Interval(Rat(-8), Rat(8)), R + Rat(1));
                           Json in{{"check", "poincare"}, {"R", R.to_string()},
                                   {"tol", 1e-9}, {"f", stepfn_to_json(f)}};
                           *inst = in.dump();
                           return check_poincare(f, R, 1e-9);
                         },
                         seed);
                   }});
    }

    v.push_back({"counterexample.R1/4", "counterexample",
                 "|D M_R f|(R) <= 2 + 2(N+1) ; V(f) = 2(n_max+2)",
                 "dyadic block family, n_max in {10,20}, R = 1/4", 1e-3,
                 "2 + 2(N+1) + tail", [](uint64_t) {
                   CheckReport r = check_counterexample(20, Rat(1, 4), 1e-3);
                   r.claim_id = "counterexample.R1/4";
                   return r;
                 }});

    v.push_back({"charact.chi", "charact",
                 "||M_a f - f||_1 -> 0 ; V(f) <= liminf V(M_a f)",
                 "chi_[0,1] on [-2,3], scales 2^-1..2^-8", 1e-9, "0.05 ||f||_BV",
                 [](uint64_t) {
                   StepFn f = StepFn::indicator(Interval(Rat(-2), Rat(3)),
                                                Interval(Rat(0), Rat(1)));
                   std::vector<Rat> scales;
                   for (int k = 1; k <= 8; ++k) scales.push_back(Rat::pow2(-k));
                   CheckReport r = check_convergence(f, scales, 1e-9, 1e-3);
                   r.claim_id = "charact.chi";
                   const bool min_form = variation(f.abs()).to_double() <=
                                         r.get("min_variation_maximal") + 1e-3;
                   r.passed = r.passed && min_form;
                   return r;
                 }});
    v.push_back({"charact.random", "charact",
                 "||M_a f - f||_1 -> 0 ; V(f) <= liminf V(M_a f)",
                 "20 nonnegative random step functions with unit-wide pieces, scales 2^-1..2^-8",
                 1e-9, "0.05 ||f||_BV and V(f) <= min_k V(M_{2^-k} f) + 1e-3",
                 [](uint64_t seed) {
                   return aggregate_family(
                       "charact.random", "charact.random", 20,
                       [](uint64_t s, int, std::string* inst) {
                         // Pieces at least 1 wide (= 2 * largest scale): the
                         // maximal function then passes through every piece
                         // value, so even the minimum over scales of
                         // V(M_a f) reaches V(f) and the min-form assertion
                         // is exact, not just the small-scale limit.
                         Rng rng(s);
                         std::vector<Rat> vals;
                         for (int p = 0; p < 4; ++p)
                           vals.push_back(Rat(rng.range(0, 32), 16));
                         StepFn f(Interval(Rat(-2), Rat(2)), {Rat(-1), Rat(0), Rat(1)},
                                  std::move(vals));
                         std::vector<Rat> scales;
                         for (int k = 1; k <= 8; ++k) scales.push_back(Rat::pow2(-k));
                         Json sj = Json::array();
                         for (const Rat& a : scales) sj.push_back(a.to_string());
                         Json in{{"check", "convergence"}, {"scales", sj},
                                 {"mono_tol", 1e-9}, {"var_tol", 1e-3},
                                 {"f", stepfn_to_json(f)}};
                         *inst = in.dump();
                         CheckReport r = check_convergence(f, scales, 1e-9, 1e-3);
                         const bool min_form =
                             variation(f.abs()).to_double() <=
                             r.get("min_variation_maximal") + 1e-3;
                         r.passed = r.passed && min_form;
                         return r;
                       },
                       seed);
                 }});

    v.push_back({"blowup.family", "blowup",
                 "tv(M^1 f_delta) = Theta(delta log 1/delta) ; ratio -> infinity",
                 "f_delta = chi_[0,delta]^2, delta in 2^-3..2^-6, R=4", 0.2,
                 "family oracle +-20%", [](uint64_t) {
                   std::vector<Rat> deltas;
                   for (int k = 3; k <= 6; ++k) deltas.push_back(Rat::pow2(-k));
                   return blowup_experiment(deltas, 4.0, 8).report;
                 }});

    v.push_back({"growth.2d", "growth",
                 "||S_R f||_1 <= c(||f||_BV + (log+ R)^d ||f||_1)",
                 "two-bump 128x128 grid on [0,48]^2, R in {1,4,16,64}", 10.0,
                 "envelope max/min < 10", [](uint64_t) {
                   Eigen::ArrayXXd a = Eigen::ArrayXXd::Zero(128, 128);
                   for (int i = 16; i < 20; ++i)
                     for (int j = 16; j < 20; ++j) a(i, j) = 1.0;
                   for (int i = 80; i < 84; ++i)
                     for (int j = 80; j < 84; ++j) a(i, j) = 2.0;
                   GridFn2D g(Rect{0, 48, 0, 48}, 128, 128, std::move(a));
                   CheckReport rep;
                   growth_table_2d(g, {1, 4, 16, 64}, &rep);
                   return rep;
                 }});
    v.push_back({"growth.1d", "growth",
                 "int_U M_R f <= c(||f||_BV + ||f||_1 log+ R)",
                 "chi_[0,1], R in {1,4,16,64}", 10.0, "envelope max/min < 10",
                 [](uint64_t) {
                   StepFn f = chi01(2.0);
                   CheckReport rep;
                   growth_table_1d(f, {Rat(1), Rat(4), Rat(16), Rat(64)}, &rep);
                   return rep;
                 }});

    v.push_back({"orlicz.lux1", "orlicz",
                 "||g||_{L(log+L)^r} = inf{t > 0: integral (|g|/t)(log+ |g|/t)^r <= 1}",
                 "g = 1 on measure 1, r = 1", 1e-4, "u log u = 1 oracle",
                 [](uint64_t) {
                   CheckReport rep;
                   rep.claim_id = "orlicz.lux1";
                   StepFn g = StepFn::constant(Interval(Rat(0), Rat(1)), Rat(1));
                   const double lux = luxemburg_norm(g, 1.0, 1e-12);
                   const double oracle = 0.5671432904097838;  // 1/u with u log u = 1
                   rep.measure("luxemburg", lux);
                   rep.measure("oracle", oracle);
                   rep.bound = 1e-4;
                   rep.margin = 1e-4 - std::abs(lux - oracle);
                   rep.passed = rep.margin >= 0;
                   rep.provenance = {"bisection", "scalar-oracle"};
                   return rep;
                 }});
    v.push_back({"orlicz.lux_e", "orlicz",
                 "||g||_{L(log+L)^r} = inf{t > 0: integral (|g|/t)(log+ |g|/t)^r <= 1}",
                 "g = e on measure 1, r = 1", 1e-4, "e / u with u log u = 1",
                 [](uint64_t) {
                   CheckReport rep;
                   rep.claim_id = "orlicz.lux_e";
                   StepFn g = StepFn::constant(Interval(Rat(0), Rat(1)),
                                               Rat::from_double(M_E));
                   const double lux = luxemburg_norm(g, 1.0, 1e-12);
                   const double oracle = M_E * 0.5671432904097838;
                   rep.measure("luxemburg", lux);
                   rep.measure("oracle", oracle);
                   rep.bound = 1e-4;
                   rep.margin = 1e-4 - std::abs(lux - oracle);
                   rep.passed = rep.margin >= 0;
                   rep.provenance = {"bisection", "scalar-oracle"};
                   return rep;
                 }});
    for (int r_exp : {1, 2}) {
      std::string id = "orlicz.embedding.r" + std::to_string(r_exp);
      v.push_back({id, "orlicz",
                   "||g||_{L(log+L)^r(E)} <= (r(d-1))^{r(d-1)/d} ||g||_{L^{d/(d-1)}(E)}",
                   "100 random 16x16 grids on [0,1]^2", 1e-8, "r^{r/2} ||g||_2",
                   [id, r_exp](uint64_t seed) {
                     return aggregate_family(
                         id, "orlicz.embedding", 100,
                         [r_exp](uint64_t s, int, std::string* inst) {
                           GridFn2D g =
                               random_gridfn(s, Rect{0, 1, 0, 1}, 16, 16, 4.0);
                           Json in{{"check", "embedding"}, {"r", r_exp},
                                   {"tol", 1e-8}, {"g", gridfn_to_json(g)}};
                           *inst = in.dump();
                           return check_embedding(g, r_exp, 2, 1e-8);
                         },
                         seed);
                   }});
    }

    return v;
  }();
  return claims;
}

}  // namespace

const std::vector<ClaimSpec>& all_claims() { return registry(); }

std::vector<std::string> suite_names() {
  return {"bd",      "remark-log", "weak-type", "poincare", "counterexample",
          "charact", "blowup",     "growth",    "orlicz",   "all"};
}

SuiteResult run_suite(const std::string& suite_name, uint64_t seed) {
  auto names = suite_names();
  if (std::find(names.begin(), names.end(), suite_name) == names.end())
    throw Error(ErrorCode::UnknownSuite, "unknown suite '" + suite_name + "'");

  SuiteResult out;
  out.suite = suite_name;
  out.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  for (const ClaimSpec& c : all_claims()) {
    if (suite_name != "all" && c.suite != suite_name) continue;
    CheckReport r = c.run(mix_seed(seed, c.claim_id));
    r.claim_id = c.claim_id;  // reports always carry the registry id
    out.reports.push_back(std::move(r));
  }
  std::sort(out.reports.begin(), out.reports.end(),
            [](const CheckReport& a, const CheckReport& b) { return a.claim_id < b.claim_id; });
  out.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace maxbv
