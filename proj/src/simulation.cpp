#include "mtgg/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <stdexcept>

#include "mtgg/accumulate.hpp"
#include "mtgg/errors.hpp"
#include "mtgg/parallel.hpp"
#include "mtgg/rng.hpp"

namespace mtgg {

namespace {

// Mirrors the wide proposal used when sampling from an improper diffuse
// marginal; difficulties are drawn from N(0, factor * alpha_t^2).
constexpr double kDiffuseProposalFactor = 1e4;

bool is_connected(const RegularGraph& g) {
  if (g.n == 0) return false;
  std::vector<char> seen(g.n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int node = frontier.front();
    frontier.pop();
    for (int next : g.adjacency[node]) {
      if (!seen[next]) {
        seen[next] = 1;
        ++reached;
        frontier.push(next);
      }
    }
  }
  return reached == g.n;
}

struct TrialDraw {
  double theta1;
  double theta2;
  std::vector<Observation> signals;
};

// Fixed draw layout per trial: theta1, theta2, then (z1, z2) per agent in
// node order. Both simulate() and deviation_gain() rely on this layout so
// they see identical worlds for identical seeds.
TrialDraw draw_trial(const GameParams& params, int n_agents,
                     rng::Stream& stream) {
  const double var1 = params.diffuse
                          ? kDiffuseProposalFactor * params.alpha1_sq
                          : params.sigma1_sq;
  const double var2 = params.diffuse
                          ? kDiffuseProposalFactor * params.alpha2_sq
                          : params.sigma2_sq;
  TrialDraw draw;
  draw.theta1 = stream.next_normal(0.0, var1);
  draw.theta2 = stream.next_normal(0.0, var2);
  draw.signals.resize(n_agents);
  for (int i = 0; i < n_agents; ++i) {
    draw.signals[i] = {draw.theta1 + stream.next_normal(0.0, params.alpha1_sq),
                       draw.theta2 + stream.next_normal(0.0, params.alpha2_sq)};
  }
  return draw;
}

EstimateWithError summarize(std::span<const double> per_trial) {
  const MeanAndStdErr stats = mean_and_std_err(per_trial);
  return {stats.mean, stats.std_err};
}

}  // namespace

RegularGraph make_regular_graph(int n, int k) {
  if (n < 2) {
    throw ConfigError("make_regular_graph: need at least 2 nodes");
  }
  if (k < 1 || k > n - 1) {
    throw ConfigError("make_regular_graph: degree must lie in [1, n - 1]");
  }
  if ((static_cast<long long>(n) * k) % 2 != 0) {
    throw ConfigError("make_regular_graph: n * k must be even");
  }
  if (k % 2 != 0 && n % 2 != 0) {
    throw ConfigError(
        "make_regular_graph: odd degree needs an even node count");
  }

  RegularGraph graph;
  graph.n = n;
  graph.k = k;
  graph.adjacency.resize(n);
  for (int i = 0; i < n; ++i) {
    std::set<int> neighbors;
    for (int off = 1; off <= k / 2; ++off) {
      neighbors.insert(((i + off) % n + n) % n);
      neighbors.insert(((i - off) % n + n) % n);
    }
    if (k % 2 != 0) {
      neighbors.insert((i + n / 2) % n);
    }
    graph.adjacency[i].assign(neighbors.begin(), neighbors.end());
    if (static_cast<int>(graph.adjacency[i].size()) != k) {
      throw ConfigError("make_regular_graph: circulant offsets collide");
    }
  }
  if (!is_connected(graph)) {
    throw ConfigError("make_regular_graph: construction is disconnected");
  }
  return graph;
}

double pairwise_utility(int a_i, int a_j, double theta1, double theta2,
                        int deg_i, int deg_j, int n) {
  (void)deg_j;  // each agent's coordination term is scaled by its own degree
  if (deg_i < 1 || n < 1) {
    throw std::domain_error("pairwise_utility: degrees and n must be positive");
  }
  if (a_i == kTask1) {
    return (a_j == kTask1 ? 1.0 / deg_i : 0.0) - theta1 / n;
  }
  return (a_j == kTask2 ? 1.0 / deg_i : 0.0) - theta2 / n;
}

double local_utility(int node, std::span<const int> actions, double theta1,
                     double theta2, const RegularGraph& graph) {
  const int deg = static_cast<int>(graph.adjacency[node].size());
  double total = 0.0;
  for (int j : graph.adjacency[node]) {
    total += pairwise_utility(actions[node], actions[j], theta1, theta2, deg,
                              static_cast<int>(graph.adjacency[j].size()),
                              graph.n);
  }
  return total;
}

PureEquilibria classify_pure_equilibria(double theta1, double theta2,
                                        int deg_i, int deg_j, int n) {
  if (deg_i < 1 || deg_j < 1 || n < 1) {
    throw std::domain_error(
        "classify_pure_equilibria: degrees and n must be positive");
  }
  const double level = static_cast<double>(n) / std::min(deg_i, deg_j);
  const double diff = theta1 - theta2;
  return {diff <= level, diff >= -level};
}

SimReport simulate(const GameParams& params, const RegularGraph& graph,
                   std::span<const AffinePolicy> profile, std::uint64_t trials,
                   std::uint64_t seed, int threads) {
  params.validate();
  if (trials < 1) {
    throw ConfigError("simulate: trials must be at least 1");
  }
  if (profile.size() != static_cast<std::size_t>(graph.n)) {
    throw ConfigError("simulate: profile size must match the graph");
  }

  const std::size_t n_trials = trials;
  std::vector<double> payoff(n_trials);
  std::vector<double> coord(n_trials);
  std::vector<double> share(n_trials);

  const int n = graph.n;
  const double edge_count = 0.5 * n * graph.k;

  parallel_for(n_trials, resolve_threads(threads),
               [&](std::size_t begin, std::size_t end) {
                 std::vector<int> actions(n);
                 for (std::size_t t = begin; t < end; ++t) {
                   rng::Stream stream(rng::derive_seed(seed, t));
                   const TrialDraw draw = draw_trial(params, n, stream);
                   int ones = 0;
                   for (int i = 0; i < n; ++i) {
                     actions[i] = apply_policy(profile[i], draw.signals[i]);
                     if (actions[i] == kTask1) ++ones;
                   }
                   double total_payoff = 0.0;
                   double matched_half_edges = 0.0;
                   for (int i = 0; i < n; ++i) {
                     total_payoff += local_utility(i, actions, draw.theta1,
                                                   draw.theta2, graph);
                     for (int j : graph.adjacency[i]) {
                       if (actions[i] == actions[j]) matched_half_edges += 1.0;
                     }
                   }
                   payoff[t] = total_payoff / n;
                   coord[t] = 0.5 * matched_half_edges / edge_count;
                   share[t] = static_cast<double>(ones) / n;
                 }
               });

  SimReport report;
  report.mean_payoff_per_agent = summarize(payoff);
  report.coordination_rate = summarize(coord);
  report.task1_share = summarize(share);
  report.trials = trials;
  report.seed = seed;
  report.degenerate_stats = trials < 2;
  return report;
}

DeviationReport deviation_gain(const GameParams& params,
                               const RegularGraph& graph,
                               const AffinePolicy& profile_policy,
                               std::span<const AffinePolicy> focal_policy_grid,
                               std::uint64_t trials, std::uint64_t seed,
                               bool include_br_curve, int threads) {
  params.validate();
  if (trials < 1) {
    throw ConfigError("deviation_gain: trials must be at least 1");
  }
  if (focal_policy_grid.empty() && !include_br_curve) {
    throw ConfigError("deviation_gain: no candidate policies");
  }

  constexpr int kFocal = 0;  // WLOG on a vertex-transitive circulant
  const int n = graph.n;
  const int deg = static_cast<int>(graph.adjacency[kFocal].size());
  const std::size_t n_grid = focal_policy_grid.size();
  const std::size_t n_candidates = n_grid + (include_br_curve ? 1 : 0);

  // Per-candidate per-trial paired differences V(candidate) - V(profile).
  std::vector<std::vector<double>> diffs(n_candidates,
                                         std::vector<double>(trials));

  parallel_for(trials, resolve_threads(threads),
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t t = begin; t < end; ++t) {
                   rng::Stream stream(rng::derive_seed(seed, t));
                   const TrialDraw draw = draw_trial(params, n, stream);

                   int neighbors_on_task1 = 0;
                   for (int j : graph.adjacency[kFocal]) {
                     if (apply_policy(profile_policy, draw.signals[j]) ==
                         kTask1) {
                       ++neighbors_on_task1;
                     }
                   }
                   // Focal local utility takes only two values per trial.
                   const double v1 =
                       static_cast<double>(neighbors_on_task1) / deg -
                       deg * draw.theta1 / n;
                   const double v2 =
                       static_cast<double>(deg - neighbors_on_task1) / deg -
                       deg * draw.theta2 / n;

                   const Observation& own = draw.signals[kFocal];
                   const int base_action = apply_policy(profile_policy, own);
                   const double base_value =
                       base_action == kTask1 ? v1 : v2;

                   for (std::size_t c = 0; c < n_grid; ++c) {
                     const int action =
                         apply_policy(focal_policy_grid[c], own);
                     diffs[c][t] =
                         (action == kTask1 ? v1 : v2) - base_value;
                   }
                   if (include_br_curve) {
                     const double boundary =
                         switching_curve_point(params, profile_policy, own.y2)
                             .xi_star;
                     const int action =
                         own.y1 <= boundary ? kTask1 : kTask2;
                     diffs[n_grid][t] =
                         (action == kTask1 ? v1 : v2) - base_value;
                   }
                 }
               });

  DeviationReport report;
  report.candidates.reserve(n_candidates);
  report.gain = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < n_candidates; ++c) {
    const MeanAndStdErr stats = mean_and_std_err(diffs[c]);
    std::string label;
    if (c < n_grid) {
      const AffinePolicy& p = focal_policy_grid[c];
      label = "grid(a2=" + std::to_string(p.a2) +
              ", tau=" + std::to_string(p.tau) + ")";
    } else {
      label = "br-curve";
    }
    report.candidates.push_back({label, stats.mean, stats.std_err});
    if (stats.mean > report.gain) {
      report.gain = stats.mean;
      report.std_err = stats.std_err;
      report.best_label = label;
    }
  }
  return report;
}

}  // namespace mtgg
