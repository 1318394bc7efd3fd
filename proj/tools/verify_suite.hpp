#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ghat/group.hpp"

namespace ghat {

struct RunConfig {
  GroupDescriptor group = GroupDescriptor::su2();
  double band = 72.0;  // lambda cutoff
  int margin = 3;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;
  std::string out_path;

  double tol(const std::string& key, double dflt) const {
    auto it = tolerances.find(key);
    return it == tolerances.end() ? dflt : it->second;
  }
};

struct CheckResult {
  std::string name;
  std::string status;  // "pass" | "fail" | "skip"
  double measured = 0.0;
  double threshold = 0.0;
  std::string note;
  double seconds = 0.0;  // wall time since the previous check finished
};

// Runs every module-level invariant at the configured scale; checks that need
// more margin than configured are reported as skipped.
std::vector<CheckResult> run_invariant_suite(const RunConfig& cfg);

std::string suite_to_json(const RunConfig& cfg, const std::vector<CheckResult>& results);

}  // namespace ghat
