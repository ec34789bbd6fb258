#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "mtgg/policy.hpp"

namespace mtgg {

struct ProjectionSample {
  double y2 = 0.0;
  double g_of_y2 = 0.0;
};

struct SolveConfig {
  std::uint64_t sample_count = 10'000;  // M
  int max_iters = 100;
  double conv_tol = 1e-4;   // on max(|da2|, |dtau|)
  std::uint64_t seed = 0;
  double init_a2 = -1.0;    // must be negative
  double init_tau = 0.0;
  double relaxation = 1.0;  // omega in (0, 1]; 1 = plain iteration
  double root_tol = 1e-10;
  int threads = 1;          // <= 0: resolve from environment/hardware

  void validate() const;
};

struct SolveResult {
  double a2_star = 0.0;
  double tau_star = 0.0;
  double residual_error = 0.0;  // mean squared projection residual
  int iterations = 0;
  bool converged = false;
  std::vector<std::pair<double, double>> trajectory;  // (a2, tau), init first
};

// M i.i.d. draws from the marginal of Y2 = Theta2 + Z2, i.e. N(0, s2 + a2).
// Diffuse instances use the wide proposal N(0, 1e4 * alpha2_sq) since the
// true marginal is improper in the limit.
std::vector<double> sample_y2(const GameParams& params, std::uint64_t count,
                              std::uint64_t seed);

struct AffineFit {
  double a2 = 0.0;       // policy coefficient: boundary is y1 = -a2*y2 + tau
  double tau = 0.0;
  double residual = 0.0; // attained mean squared error of the fit
};

// Least-squares projection of sampled switching-curve points onto affine
// boundaries. The fitted line xi ~ slope*y2 + intercept is reported in
// policy form (a2 = -slope, tau = intercept) so that (1, a2, tau) obeys the
// decision rule y1 + a2*y2 <= tau.
AffineFit project_affine(std::span<const ProjectionSample> samples);

// Fixed-point iteration: compute the switching curve against the current
// homogeneous profile (1, a2, tau) at a fixed sample set, refit, repeat
// until max(|da2|, |dtau|) <= conv_tol or max_iters.
SolveResult solve_affine_bne(const GameParams& params, const SolveConfig& cfg);

}  // namespace mtgg
