#pragma once

#include <string>
#include <utility>
#include <vector>

#include "maxbv/rational.hpp"

namespace maxbv {

/// Outcome of one verified claim: named measured quantities, the bound they
/// were held against, and the worst margin (bound + tol - measured; negative
/// means failure). Ordered containers keep serialization deterministic.
struct CheckReport {
  std::string claim_id;
  std::vector<std::pair<std::string, double>> measured;
  std::vector<std::pair<std::string, std::string>> exact;
  double bound = 0;
  double margin = 0;
  bool passed = false;
  std::vector<std::string> provenance;
  std::string notes;
  /// Serialized offending instance (JSON), present when a random-family claim fails.
  std::string instance_json;

  void measure(const std::string& name, double v) { measured.emplace_back(name, v); }
  void measure_exact(const std::string& name, const Rat& v) {
    measured.emplace_back(name, v.to_double());
    exact.emplace_back(name, v.to_string());
  }
  double get(const std::string& name) const;
};

/// Plain column-oriented table for CSV emission; every row carries a provenance tag.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

}  // namespace maxbv
