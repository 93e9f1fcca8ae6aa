#include "maxbv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace maxbv {

namespace {

Json rat_to_json(const Rat& r) {
  if (r.is_integer()) {
    double d = r.to_double();
    if (std::abs(d) < 9e15) return static_cast<long long>(d);
  }
  return r.to_string();
}

Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
  if (j.is_number_float()) return Rat::from_double(j.get<double>());
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected rational as string or integer");
}

}  // namespace

Json stepfn_to_json(const StepFn& f) {
  Json j;
  j["domain"] = Json::array({rat_to_json(f.domain().lo), rat_to_json(f.domain().hi)});
  Json bps = Json::array();
  for (const Rat& b : f.breakpoints()) bps.push_back(rat_to_json(b));
  Json vals = Json::array();
  for (const Rat& v : f.values()) vals.push_back(rat_to_json(v));
  j["breakpoints"] = std::move(bps);
  j["values"] = std::move(vals);
  return j;
}

StepFn stepfn_from_json(const Json& j) {
  if (!j.contains("domain") || !j.contains("values"))
    throw Error(ErrorCode::ParseError, "step function JSON needs domain and values");
  Interval dom(rat_from_json(j["domain"][0]), rat_from_json(j["domain"][1]));
  std::vector<Rat> bps;
  if (j.contains("breakpoints"))
    for (const auto& b : j["breakpoints"]) bps.push_back(rat_from_json(b));
  std::vector<Rat> vals;
  for (const auto& v : j["values"]) vals.push_back(rat_from_json(v));
  return StepFn(dom, std::move(bps), std::move(vals));
}

Json gridfn_to_json(const GridFn2D& g) {
  Json j;
  j["rect"] = Json::array({g.rect().x_lo, g.rect().x_hi, g.rect().y_lo, g.rect().y_hi});
  j["nx"] = g.nx();
  j["ny"] = g.ny();
  Json vals = Json::array();
  for (int row = 0; row < g.ny(); ++row)
    for (int i = 0; i < g.nx(); ++i) vals.push_back(g.values()(i, row));
  j["values"] = std::move(vals);
  return j;
}

GridFn2D gridfn_from_json(const Json& j) {
  if (!j.contains("rect") || !j.contains("nx") || !j.contains("ny") || !j.contains("values"))
    throw Error(ErrorCode::ParseError, "grid JSON needs rect, nx, ny, values");
  Rect r{j["rect"][0].get<double>(), j["rect"][1].get<double>(), j["rect"][2].get<double>(),
         j["rect"][3].get<double>()};
  int nx = j["nx"].get<int>();
  int ny = j["ny"].get<int>();
  std::vector<double> vals;
  for (const auto& v : j["values"]) vals.push_back(v.get<double>());
  return grid_new(r, nx, ny, vals);
}

Json report_to_json(const CheckReport& r) {
  Json j;
  j["claim_id"] = r.claim_id;
  Json m = Json::object();
  for (const auto& [k, v] : r.measured) m[k] = v;
  j["measured"] = std::move(m);
  if (!r.exact.empty()) {
    Json e = Json::object();
    for (const auto& [k, v] : r.exact) e[k] = v;
    j["exact"] = std::move(e);
  }
  j["bound"] = r.bound;
  j["margin"] = r.margin;
  j["passed"] = r.passed;
  j["provenance"] = r.provenance;
  if (!r.notes.empty()) j["notes"] = r.notes;
  if (!r.instance_json.empty()) j["instance"] = Json::parse(r.instance_json);
  return j;
}

Json suite_result_to_json(const SuiteResult& s) {
  Json j;
  j["suite"] = s.suite;
  j["seed"] = s.seed;
  j["version"] = s.version;
  Json reps = Json::array();
  for (const CheckReport& r : s.reports) reps.push_back(report_to_json(r));
  j["reports"] = std::move(reps);
  j["all_passed"] = s.all_passed();
  return j;
}

std::string table_to_csv(const Table& t) {
  std::ostringstream os;
  for (size_t i = 0; i < t.columns.size(); ++i) {
    if (i) os << ',';
    os << t.columns[i];
  }
  os << '\n';
  for (const auto& row : t.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      os << row[i];
    }
    os << '\n';
  }
  return os.str();
}

std::string profile_to_csv(const SampledProfile& p, const std::string& provenance) {
  std::ostringstream os;
  os << "node(exact),node(decimal),value(exact),value(decimal),provenance\n";
  char buf[64];
  for (size_t i = 0; i < p.nodes.size(); ++i) {
    os << p.nodes[i].to_string() << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", p.nodes[i].to_double());
    os << buf << ',' << p.values[i].to_string() << ',';
    std::snprintf(buf, sizeof(buf), "%.17g", p.values[i].to_double());
    os << buf << ',' << provenance << '\n';
  }
  return os.str();
}

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::UsageError, "cannot open '" + tmp + "' for writing");
    out << content;
    if (!out.good()) throw Error(ErrorCode::UsageError, "write failed for '" + tmp + "'");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw Error(ErrorCode::UsageError, "rename failed for '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::UsageError, "cannot open '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::ParseError, std::string("bad JSON in '") + path + "': " + e.what());
  }
}

}  // namespace maxbv
