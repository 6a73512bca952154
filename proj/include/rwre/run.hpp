#pragma once

#include <string>

#include <json.hpp>

#include "rwre/config.hpp"

namespace rwre {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunResult {
  nlohmann::json manifest;
  int exit_code = 0;
};

// Executes one named pipeline (simulate, regen-scan, cascade, estimate,
// oracle, verdict), writing its statistic files and a manifest.json under
// config.out_dir. All numeric outputs are bit-reproducible for a fixed
// (config, version), independent of worker count.
RunResult run_subcommand(const ExperimentConfig& config,
                         const std::string& subcommand);

}  // namespace rwre
