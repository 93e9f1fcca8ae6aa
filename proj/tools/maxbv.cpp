#include <CLI11.hpp>
#include <iostream>

#include "maxbv/checks1d.hpp"
#include "maxbv/io.hpp"
#include "maxbv/orlicz.hpp"
#include "maxbv/verify.hpp"

using namespace maxbv;

namespace {

// "p/q", integer, decimal, or "2^-k" / "2^k".
Rat parse_rat_token(std::string s) {
  auto caret = s.find('^');
  if (caret != std::string::npos && s.substr(0, caret) == "2") {
    long e = std::stol(s.substr(caret + 1));
    return Rat::pow2(e);
  }
  return Rat::parse(s);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
  std::vector<Rat> out;
  for (const std::string& tok : split(s, ',')) out.push_back(parse_rat_token(tok));
  return out;
}

// "2^-3..2^-6" expands to descending dyadic powers; otherwise a comma list.
std::vector<Rat> parse_delta_spec(const std::string& s) {
  auto dots = s.find("..");
  if (dots != std::string::npos) {
    Rat a = parse_rat_token(s.substr(0, dots));
    Rat b = parse_rat_token(s.substr(dots + 2));
    std::vector<Rat> out;
    Rat cur = a;
    out.push_back(cur);
    int guard = 0;
    while (b < cur) {
      cur = cur / Rat(2);
      out.push_back(cur);
      if (++guard > 64) throw Error(ErrorCode::UsageError, "delta range too long");
    }
    if (!(out.back() == b))
      throw Error(ErrorCode::UsageError, "delta range endpoints must be dyadic powers apart");
    return out;
  }
  return parse_rat_list(s);
}

std::optional<Rat> parse_cap(const std::string& s) {
  if (s == "inf" || s == "infinity") return std::nullopt;
  Rat r = parse_rat_token(s);
  if (r.sign() <= 0) throw Error(ErrorCode::NonPositiveR, "need R > 0");
  return r;
}

void emit(const std::string& out_path, const std::string& content) {
  if (out_path.empty())
    std::cout << content;
  else
    write_file_atomic(out_path, content);
}

int finish_report(const CheckReport& rep, const std::string& out_path) {
  Json j = report_to_json(rep);
  emit(out_path, j.dump(2) + "\n");
  return rep.passed ? 0 : 1;
}

CheckReport replay_instance(const Json& inst) {
  const std::string check = inst.at("check").get<std::string>();
  if (check == "bd")
    return check_bd_bound(stepfn_from_json(inst.at("f")), Rat::parse(inst.at("R")),
                          inst.at("tol").get<double>());
  if (check == "weak") {
    std::vector<Rat> ts;
    for (const auto& t : inst.at("thresholds")) ts.push_back(Rat::parse(t));
    return check_weak_type(stepfn_from_json(inst.at("f")), ts, inst.at("tol").get<double>());
  }
  if (check == "poincare")
    return check_poincare(stepfn_from_json(inst.at("f")), Rat::parse(inst.at("R")),
                          inst.at("tol").get<double>());
  if (check == "convergence") {
    std::vector<Rat> scales;
    for (const auto& a : inst.at("scales")) scales.push_back(Rat::parse(a));
    return check_convergence(stepfn_from_json(inst.at("f")), scales,
                             inst.at("mono_tol").get<double>(),
                             inst.at("var_tol").get<double>());
  }
  if (check == "embedding")
    return check_embedding(gridfn_from_json(inst.at("g")), inst.at("r").get<double>(), 2,
                           inst.at("tol").get<double>());
  throw Error(ErrorCode::UsageError, "instance kind '" + check + "' is not replayable");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"maxbv: exact local maximal operators on step functions, with verification suites"};
  app.require_subcommand(1);

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "exact M_R f at one point");
  std::string ev_f, ev_r = "inf", ev_x;
  eval_cmd->add_option("--f", ev_f, "step function JSON file")->required();
  eval_cmd->add_option("--R", ev_r, "diameter cap (rational or 'inf')");
  eval_cmd->add_option("--x", ev_x, "query point (rational)")->required();

  // profile
  auto* prof_cmd = app.add_subcommand("profile", "adaptive exact profile of M_R f (CSV)");
  std::string pf_f, pf_r = "inf", pf_out;
  double pf_tol = 1e-6;
  prof_cmd->add_option("--f", pf_f)->required();
  prof_cmd->add_option("--R", pf_r);
  prof_cmd->add_option("--tol", pf_tol);
  prof_cmd->add_option("--out", pf_out, "CSV output path (default stdout)");

  // check <kind>
  auto* check_cmd = app.add_subcommand("check", "run one checker, emit a report");
  check_cmd->require_subcommand(1);
  std::string ck_f, ck_r = "1", ck_out, ck_ts, ck_scales = "1/2,1/4,1/8,1/16,1/32,1/64,1/128,1/256", ck_rs = "1,4,16,64";
  double ck_tol = 1e-6;
  int ck_nmax = 20;
  auto* ck_bd = check_cmd->add_subcommand("bd", "L1 and variation bounds for M_R");
  ck_bd->add_option("--f", ck_f)->required();
  ck_bd->add_option("--R", ck_r);
  ck_bd->add_option("--tol", ck_tol);
  ck_bd->add_option("--out", ck_out);
  auto* ck_weak = check_cmd->add_subcommand("weak", "weak type (1,1) with constant 2");
  ck_weak->add_option("--f", ck_f)->required();
  ck_weak->add_option("--t", ck_ts, "comma list of thresholds")->required();
  ck_weak->add_option("--tol", ck_tol);
  ck_weak->add_option("--out", ck_out);
  auto* ck_poin = check_cmd->add_subcommand("poincare", "Poincare-type inequality");
  ck_poin->add_option("--f", ck_f)->required();
  ck_poin->add_option("--R", ck_r);
  ck_poin->add_option("--tol", ck_tol);
  ck_poin->add_option("--out", ck_out);
  auto* ck_ce = check_cmd->add_subcommand("counterexample", "dyadic block family");
  ck_ce->add_option("--nmax", ck_nmax);
  ck_ce->add_option("--R", ck_r);
  ck_ce->add_option("--tol", ck_tol);
  ck_ce->add_option("--out", ck_out);
  auto* ck_conv = check_cmd->add_subcommand("convergence", "M_a f -> f and semicontinuity");
  ck_conv->add_option("--f", ck_f)->required();
  ck_conv->add_option("--scales", ck_scales);
  ck_conv->add_option("--out", ck_out);
  auto* ck_g1 = check_cmd->add_subcommand("growth1d", "L1 growth in R");
  ck_g1->add_option("--f", ck_f)->required();
  ck_g1->add_option("--Rs", ck_rs);
  ck_g1->add_option("--out", ck_out);

  // grid <kind>
  auto* grid_cmd = app.add_subcommand("grid", "2D grid experiments");
  grid_cmd->require_subcommand(1);
  std::string gr_f, gr_out, gr_deltas = "2^-3..2^-6", gr_rs = "1,4,16,64";
  double gr_r = 4.0;
  int gr_strip = 8;
  auto* gr_blow = grid_cmd->add_subcommand("blowup", "corner-block ratio divergence");
  gr_blow->add_option("--deltas", gr_deltas);
  gr_blow->add_option("--R", gr_r);
  gr_blow->add_option("--strip-cells", gr_strip);
  gr_blow->add_option("--out", gr_out, "CSV output path");
  auto* gr_growth = grid_cmd->add_subcommand("growth", "L1 growth table in R");
  gr_growth->add_option("--f", gr_f)->required();
  gr_growth->add_option("--Rs", gr_rs);
  gr_growth->add_option("--out", gr_out);
  auto* gr_tv = grid_cmd->add_subcommand("tv", "discrete total variation + coarea");
  gr_tv->add_option("--f", gr_f)->required();
  gr_tv->add_option("--out", gr_out);

  // orlicz
  auto* orl_cmd = app.add_subcommand("orlicz", "Orlicz L(log+L)^r norms");
  orl_cmd->require_subcommand(1);
  std::string or_f, or_out;
  double or_r = 1.0, or_tol = 1e-10;
  auto* or_norm = orl_cmd->add_subcommand("norm", "Luxemburg norm by bisection");
  or_norm->add_option("--f", or_f)->required();
  or_norm->add_option("--r", or_r);
  or_norm->add_option("--tol", or_tol);
  or_norm->add_option("--out", or_out);

  // suite
  auto* suite_cmd = app.add_subcommand("suite", "run a registered verification suite");
  std::string su_name, su_out;
  uint64_t su_seed = 7;
  suite_cmd->add_option("name", su_name, "suite name (or 'all')")->required();
  suite_cmd->add_option("--seed", su_seed);
  suite_cmd->add_option("--out", su_out, "JSON output path (default stdout)");

  // replay
  auto* replay_cmd = app.add_subcommand("replay", "re-run the instance embedded in a report");
  std::string rp_file;
  replay_cmd->add_option("report", rp_file, "report JSON file")->required();

  try {
    app.parse(argc, argv);

    if (eval_cmd->parsed()) {
      StepFn f = stepfn_from_json(load_json(ev_f));
      MaxQueryResult r = maximal_eval(f, Rat::parse(ev_x), parse_cap(ev_r));
      std::cout << "value " << r.value.to_string() << " (" << r.value.to_double() << ")\n"
                << "witness [" << r.witness.lo.to_string() << ", " << r.witness.hi.to_string()
                << "]" << (r.degenerate ? " (limit)" : "") << "\n";
      return 0;
    }
    if (prof_cmd->parsed()) {
      StepFn f = stepfn_from_json(load_json(pf_f));
      ProfileOptions opts;
      opts.tol = pf_tol;
      SampledProfile p = maximal_profile(f, parse_cap(pf_r), opts);
      emit(pf_out, profile_to_csv(p, "plumbing"));
      std::cerr << "nodes " << p.nodes.size() << "  l1 " << p.l1_estimate << "  variation "
                << p.variation_lower.to_double() << (p.converged ? "" : "  (budget exceeded)")
                << "\n";
      return 0;
    }
    if (check_cmd->parsed()) {
      if (ck_bd->parsed())
        return finish_report(
            check_bd_bound(stepfn_from_json(load_json(ck_f)), parse_rat_token(ck_r), ck_tol),
            ck_out);
      if (ck_weak->parsed())
        return finish_report(
            check_weak_type(stepfn_from_json(load_json(ck_f)), parse_rat_list(ck_ts), ck_tol),
            ck_out);
      if (ck_poin->parsed())
        return finish_report(
            check_poincare(stepfn_from_json(load_json(ck_f)), parse_rat_token(ck_r), ck_tol),
            ck_out);
      if (ck_ce->parsed())
        return finish_report(check_counterexample(ck_nmax, parse_rat_token(ck_r), ck_tol),
                             ck_out);
      if (ck_conv->parsed())
        return finish_report(check_convergence(stepfn_from_json(load_json(ck_f)),
                                               parse_rat_list(ck_scales), 1e-9, 1e-3),
                             ck_out);
      if (ck_g1->parsed()) {
        CheckReport rep;
        Table t = growth_table_1d(stepfn_from_json(load_json(ck_f)), parse_rat_list(ck_rs), &rep);
        emit(ck_out, table_to_csv(t));
        return rep.passed ? 0 : 1;
      }
    }
    if (grid_cmd->parsed()) {
      if (gr_blow->parsed()) {
        BlowupResult res = blowup_experiment(parse_delta_spec(gr_deltas), gr_r, gr_strip);
        emit(gr_out, table_to_csv(res.table));
        std::cerr << report_to_json(res.report).dump(2) << "\n";
        return res.report.passed ? 0 : 1;
      }
      if (gr_growth->parsed()) {
        GridFn2D g = gridfn_from_json(load_json(gr_f));
        std::vector<double> rs;
        for (const Rat& r : parse_rat_list(gr_rs)) rs.push_back(r.to_double());
        CheckReport rep;
        Table t = growth_table_2d(g, rs, &rep);
        emit(gr_out, table_to_csv(t));
        return rep.passed ? 0 : 1;
      }
      if (gr_tv->parsed()) {
        GridFn2D g = gridfn_from_json(load_json(gr_f));
        TVResult tv = discrete_tv(g);
        Json j{{"tv", tv.tv}, {"coarea_tv", tv.coarea_tv}, {"levels_used", tv.levels_used},
               {"provenance", "plumbing"}};
        emit(gr_out, j.dump(2) + "\n");
        return 0;
      }
    }
    if (orl_cmd->parsed() && or_norm->parsed()) {
      Json j = load_json(or_f);
      double lux;
      if (j.contains("nx"))
        lux = luxemburg_norm(gridfn_from_json(j), or_r, or_tol);
      else
        lux = luxemburg_norm(stepfn_from_json(j), or_r, or_tol);
      Json outj{{"luxemburg", lux}, {"r", or_r}, {"tol", or_tol}, {"provenance", "plumbing"}};
      emit(or_out, outj.dump(2) + "\n");
      return 0;
    }
    if (suite_cmd->parsed()) {
      SuiteResult s = run_suite(su_name, su_seed);
      emit(su_out, suite_result_to_json(s).dump(2) + "\n");
      std::cerr << "suite " << s.suite << ": " << s.reports.size() << " claims, "
                << (s.all_passed() ? "all passed" : "FAILURES") << " (" << s.wall_seconds
                << " s)\n";
      return s.all_passed() ? 0 : 1;
    }
    if (replay_cmd->parsed()) {
      Json rep = load_json(rp_file);
      if (!rep.contains("instance")) {
        std::cerr << "nothing to replay: report carries no instance\n";
        return 2;
      }
      CheckReport r = replay_instance(rep["instance"]);
      std::cout << report_to_json(r).dump(2) << "\n";
      return r.passed ? 0 : 1;
    }
    std::cerr << "no subcommand matched (hint: maxbv --help)\n";
    return 2;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << " (hint: maxbv --help)\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
