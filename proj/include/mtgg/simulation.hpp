#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "mtgg/policy.hpp"

namespace mtgg {

// Undirected K-regular graph with sorted neighbor lists.
struct RegularGraph {
  int n = 0;
  int k = 0;
  std::vector<std::vector<int>> adjacency;
};

// Circulant construction: node i is adjacent to i +- 1, ..., i +- k/2
// (mod n); odd k additionally links i to i + n/2 (needs even n).
// Throws ConfigError when no such connected graph exists.
RegularGraph make_regular_graph(int n, int k);

// Per-edge payoff of agent i: matching the neighbor on the chosen task
// earns 1/deg_i, and the chosen task's difficulty costs theta_t / n
// regardless of the neighbor.
double pairwise_utility(int a_i, int a_j, double theta1, double theta2,
                        int deg_i, int deg_j, int n);

// Sum of pairwise utilities of `node` over its neighborhood.
double local_utility(int node, std::span<const int> actions, double theta1,
                     double theta2, const RegularGraph& graph);

struct PureEquilibria {
  bool has_11 = false;
  bool has_22 = false;
};

// Pure Nash equilibria of the two-player coordination game, classified by
// theta1 - theta2 against L = n / min(deg_i, deg_j); the middle band keeps
// both symmetric equilibria (boundaries inclusive).
PureEquilibria classify_pure_equilibria(double theta1, double theta2,
                                        int deg_i, int deg_j, int n);

struct EstimateWithError {
  double value = 0.0;
  double std_err = 0.0;  // +inf when trials < 2
};

struct SimReport {
  EstimateWithError mean_payoff_per_agent;
  EstimateWithError coordination_rate;  // fraction of edges with equal actions
  EstimateWithError task1_share;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  bool degenerate_stats = false;  // trials < 2: std errors are infinite
};

// Monte Carlo game evaluation: per trial draw the difficulties and all
// signals, apply each node's policy, and accumulate local utilities.
// Per-trial RNG streams derive from (seed, trial), and per-trial statistics
// reduce with pairwise summation, so any thread count reproduces the
// single-threaded result exactly. Diffuse instances draw the difficulties
// from the wide proposal N(0, 1e4 * alpha_t^2).
SimReport simulate(const GameParams& params, const RegularGraph& graph,
                   std::span<const AffinePolicy> profile, std::uint64_t trials,
                   std::uint64_t seed, int threads = 1);

struct CandidateEstimate {
  std::string label;
  double gain = 0.0;
  double std_err = 0.0;
};

struct DeviationReport {
  double gain = 0.0;      // largest estimated unilateral improvement
  double std_err = 0.0;   // standard error of that candidate
  std::string best_label;
  std::vector<CandidateEstimate> candidates;
};

// Estimates the best unilateral deviation of a focal agent (node 0) from a
// homogeneous profile, over a grid of alternative affine policies plus,
// optionally, the exact best-response switching curve as the strongest
// competitor. All candidates share each trial's random draws, and only the
// focal action changes, so the gain estimates are paired differences.
DeviationReport deviation_gain(const GameParams& params,
                               const RegularGraph& graph,
                               const AffinePolicy& profile_policy,
                               std::span<const AffinePolicy> focal_policy_grid,
                               std::uint64_t trials, std::uint64_t seed,
                               bool include_br_curve = true, int threads = 1);

}  // namespace mtgg
