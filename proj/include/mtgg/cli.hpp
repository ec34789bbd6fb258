#pragma once

#include <ostream>

#include "mtgg/config.hpp"

namespace mtgg::cli {

// Exit-code contract, stable across versions.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitSolverFailure = 3;
inline constexpr int kExitVerifyFailed = 4;

inline constexpr const char* kToolName = "mtgg";
inline constexpr const char* kToolVersion = "0.1.0";

// Each command validates its config, runs, writes the record/table to the
// configured destination, logs a one-line summary, and returns an exit code.
int run_solve(const ExperimentConfig& config, std::ostream& log);
int run_sweep_rho(const ExperimentConfig& config, std::ostream& log);
int run_br_curve(const ExperimentConfig& config, std::ostream& log);
int run_simulate(const ExperimentConfig& config, std::ostream& log);
int run_verify(const ExperimentConfig& config, std::ostream& log);

}  // namespace mtgg::cli
