#pragma once

#include <json.hpp>
#include <string>

#include "maxbv/grid2d.hpp"
#include "maxbv/profile.hpp"
#include "maxbv/report.hpp"
#include "maxbv/step_fn.hpp"
#include "maxbv/verify.hpp"

namespace maxbv {

using Json = nlohmann::ordered_json;

Json stepfn_to_json(const StepFn& f);
StepFn stepfn_from_json(const Json& j);

Json gridfn_to_json(const GridFn2D& g);
GridFn2D gridfn_from_json(const Json& j);

Json report_to_json(const CheckReport& r);

Json suite_result_to_json(const SuiteResult& s);

std::string table_to_csv(const Table& t);

/// Profile CSV: node(exact), node(decimal), value(exact), value(decimal), provenance.
std::string profile_to_csv(const SampledProfile& p, const std::string& provenance);

/// Write via temp file + rename so interrupted runs never leave partial output.
void write_file_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

Json load_json(const std::string& path);

}  // namespace maxbv
