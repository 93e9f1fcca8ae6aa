#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "maxbv/report.hpp"

namespace maxbv {

inline constexpr const char* kToolkitVersion = "maxbv 0.1.0";

/// One registered claim: a seeded, reproducible experiment bound to a formula
/// anchor that must appear verbatim in the claims manifest (docs/claims.txt).
struct ClaimSpec {
  std::string claim_id;
  std::string suite;
  std::string anchor;
  std::string generator;
  double tolerance;
  std::string bound_expr;
  std::function<CheckReport(uint64_t seed)> run;
};

struct SuiteResult {
  std::string suite;
  uint64_t seed = 0;
  std::vector<CheckReport> reports;
  double wall_seconds = 0;  // printed to stderr, never serialized
  std::string version = kToolkitVersion;

  bool all_passed() const;
};

const std::vector<ClaimSpec>& all_claims();
std::vector<std::string> suite_names();

/// Runs the named suite (or "all"); deterministic in (suite_name, seed).
SuiteResult run_suite(const std::string& suite_name, uint64_t seed);

}  // namespace maxbv
