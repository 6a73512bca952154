#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "rwre/environment.hpp"

namespace rwre {

struct Budget {
  std::int64_t n_steps = 100000;
  std::int64_t replicas = 1000;
  std::int64_t diag_replicas = 0;  // H/N0 divergence diagnostics; 0 -> replicas
  std::int64_t step_cap = 10000000;
  std::int64_t barrier = 1000;
  std::int64_t confirm_distance = 0;  // 0 -> default L + R
  std::int64_t cascade_lo = -500;
  std::int64_t cascade_hi = 500;
  std::int64_t search_cap_levels = 64;
  std::int64_t nbar_samples = 1000;
  std::int64_t dump_trajectories = 8;  // simulate: how many replicas to dump
};

struct Thresholds {
  double sigma_mult = 4.0;    // agreement / separation multiplier
  double growth_tol = 0.05;   // relative growth per cap doubling => DIVERGING
  double censor_max = 0.05;   // max censored fraction for a Ballistic verdict
};

struct ExperimentConfig {
  EnvironmentLaw law;
  Budget budget;
  Thresholds thresholds;
  std::uint64_t master_seed = 0;
  bool quenched = false;
  // execution options, not part of the semantic hash
  int workers = 1;
  std::string out_dir = "out";
  std::string in_dir;  // regen-scan input (defaults to out_dir)
  bool raw = false;
  bool strict = false;
};

// Parses a law description ({kind, support, atoms|p_atoms|alpha}).
EnvironmentLaw parse_law(const nlohmann::json& spec);

// Parses a full experiment config; collects every violated field into one
// ConfigError message.
ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig load_config(const std::string& path);

nlohmann::json law_to_json(const EnvironmentLaw& law);
nlohmann::json config_to_json(const ExperimentConfig& config);

// FNV-1a over the canonical dump of the semantic fields (law, budget,
// thresholds, seed, quenched). Worker count and output paths do not
// contribute.
std::uint64_t config_hash(const ExperimentConfig& config);

std::int64_t effective_confirm_distance(const ExperimentConfig& config);

// Replica count for the divergence diagnostics: heavy-tailed laws need far
// more replicas there than the slope leg tolerates.
std::int64_t effective_diag_replicas(const Budget& budget);

}  // namespace rwre
