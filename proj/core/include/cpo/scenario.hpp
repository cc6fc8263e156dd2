#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "cpo/config.hpp"

namespace cpo {

struct RunOptions {
  std::filesystem::path out_dir = ".";
  unsigned jobs = 1;
};

/// One embedded consistency check. relation is "<", "<=" or "==".
struct CheckResult {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string relation = "<";
  bool passed = false;
  std::string note;
};

struct RunResult {
  /// 0 all checks pass, 1 run error, 2 some check failed.
  int exit_code = 1;
  std::vector<CheckResult> checks;
  std::vector<std::string> files;  ///< relative to out_dir
  std::string error;
  nlohmann::json metadata;
};

/// Runs the configured scenario and writes its CSV tables, metadata.json and report.json
/// into options.out_dir. Library errors are caught: the run is then marked incomplete in
/// the metadata and exit_code is 1. I/O errors while writing the metadata itself propagate.
RunResult run_scenario(const ScenarioConfig& config, const RunOptions& options = {});

/// Version of this build.
std::string version_string();

}  // namespace cpo
