#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mtgg/equilibrium.hpp"
#include "mtgg/policy.hpp"

namespace mtgg {

enum class OutputFormat { kCsv, kJson };

enum class PolicySource { kMin, kExplicit, kSolveFirst };

struct PolicySelection {
  PolicySource source = PolicySource::kMin;
  double a2 = -1.0;  // used when source == kExplicit
  double tau = 0.0;
};

struct DeviationSettings {
  bool enabled = false;
  int grid_side = 9;        // grid_side x grid_side alternatives
  double a2_span = 1.0;     // half-width around the profile a2
  double tau_span = 2.0;    // half-width around the profile tau
  bool include_br_curve = true;
  std::uint64_t trials = 100'000;
};

struct SimSettings {
  std::uint64_t trials = 10'000;
  std::uint64_t seed = 0;
  PolicySelection policy;
  std::vector<double> noise_sweep;  // alpha^2 values; empty = single run
  DeviationSettings deviation;
};

struct BrCurveSettings {
  double y2_min = -20.0;
  double y2_max = 20.0;
  int points = 201;
};

struct VerifySettings {
  std::uint64_t mc_samples = 1'000'000;
  int oracle_points = 50;
  int diagonal_points = 100;
  int sign_points = 1000;
  int monotone_instances = 20;
  int monotone_grid = 100;
  std::uint64_t deviation_trials = 100'000;
  std::uint64_t seed = 2026;
  // Test hook: forces the closed-form belief path to use w_var = 0 so the
  // identity checks must fail (negative control).
  bool corrupt_w_var = false;
};

struct OutputSettings {
  std::string path;  // empty: print the record/table to stdout
  OutputFormat format = OutputFormat::kJson;
};

struct ExperimentConfig {
  GameParams game;
  SolveConfig solve;
  SimSettings sim;
  BrCurveSettings br_curve;
  VerifySettings verify;
  std::vector<double> rho_list;  // for sweep-rho
  OutputSettings output;
  int threads = 0;  // 0: MTGG_THREADS env var, then hardware
};

// Parses a config object; also accepts a previously emitted record (any
// object carrying a "config" key), so runs can be reproduced directly from
// their outputs. Throws ConfigError naming the offending field.
ExperimentConfig config_from_json(const nlohmann::json& j);
ExperimentConfig load_config(const std::filesystem::path& path);

nlohmann::json config_to_json(const ExperimentConfig& config);

// FNV-1a over the canonical (sorted-key) dump, as "fnv1a:<16 hex digits>".
std::string config_hash(const ExperimentConfig& config);

}  // namespace mtgg
