#pragma once

#include <string>
#include <vector>

#include "mtgg/config.hpp"
#include "mtgg/policy.hpp"

namespace mtgg::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double margin = 0.0;  // worst observed slack, in units named by `detail`
  std::string detail;
};

// E[Phi(W)] = 1/2 identity and its shifted generalization: the closed-form
// belief path against exact values and the Monte Carlo estimator. The
// corrupt_w_var hook forces the closed-form side to w_var = 0 so the
// off-center comparisons must fail.
CheckResult lemma1_identity(const VerifySettings& settings, int threads);

// Diffuse margin: zero on the diagonal within 1e-12 and carrying the sign
// of y2 - y1 off it.
CheckResult diffuse_sign_structure(const GameParams& diffuse_params,
                                   const VerifySettings& settings);

// Random a1 > 0, a2 < 0 instances: the sampled switching curve is strictly
// increasing and the implicit slope matches central finite differences to
// 1e-5 relative.
CheckResult switching_monotonicity(const VerifySettings& settings);

// Closed-form E[Phi(c - W)] against its Monte Carlo estimator on random
// (c, w_var) points; 4 standard errors.
CheckResult oracle_equivalence_cdf(const VerifySettings& settings,
                                   int threads);

// Closed-form neighbor belief against the two-stage Monte Carlo oracle on
// random instances, policies, and observations; 4 standard errors.
CheckResult oracle_equivalence_belief(const VerifySettings& settings,
                                      int threads);

// Unilateral-deviation certificate for the min policy on a diffuse
// instance: best estimated gain over the alternative grid plus the exact
// best-response curve must stay within 3 standard errors of zero.
CheckResult deviation_min_policy(const GameParams& diffuse_params,
                                 const VerifySettings& settings, int threads);

// Builds the grid_side x grid_side policy grid centered on `center` used by
// deviation tests: a1 = 1, a2 in center.a2 +- a2_span, tau in
// center.tau +- tau_span.
std::vector<AffinePolicy> deviation_grid(const AffinePolicy& center,
                                         int grid_side, double a2_span,
                                         double tau_span);

}  // namespace mtgg::checks
