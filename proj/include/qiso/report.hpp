#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "qiso/words.hpp"

namespace qiso {

struct CheckResult {
  std::string name;
  nlohmann::json params = nlohmann::json::object();
  nlohmann::json data = nlohmann::json::object();
  bool pass = false;
  double wall_ms = 0.0;
  nlohmann::json witness;  // null unless a failure pins concrete indices
};

struct DecayTable {
  std::string window;
  std::string prefix_source;
  std::vector<double> norms;  // indexed by prefix length 1..n
};

struct Report {
  nlohmann::json config_echo;
  std::vector<CheckResult> checks;
  std::vector<DecayTable> decay;

  int pass_count() const;
  int fail_count() const;
  bool all_pass() const { return fail_count() == 0; }
};

/// with_wall=false removes timing fields, leaving the deterministic part.
nlohmann::json report_to_json(const Report& r, bool with_wall = true);

void write_report(const Report& r, const std::string& path);

/// CSV rows window,prefix_source,n,norm for external plotting.
void write_decay_csv(const Report& r, const std::string& path);

/// Companion CSV path for a report path ("x.json" -> "x.decay.csv").
std::string decay_csv_path(const std::string& report_path);

}  // namespace qiso
