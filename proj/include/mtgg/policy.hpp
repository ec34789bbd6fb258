#pragma once

#include "mtgg/math.hpp"

namespace mtgg {

inline constexpr int kTask1 = 1;
inline constexpr int kTask2 = 2;

// One game instance: two Gaussian task difficulties, per-task signal noise,
// and a K-regular interaction graph on N agents. When `diffuse` is set the
// prior variances are ignored by every computation (exact infinite-variance
// limit rather than a large finite stand-in).
struct GameParams {
  double sigma1_sq = 1.0;
  double sigma2_sq = 1.0;
  double alpha1_sq = 1.0;
  double alpha2_sq = 1.0;
  int n_agents = 2;
  int degree = 1;
  bool diffuse = false;

  double density() const {
    return static_cast<double>(degree) / static_cast<double>(n_agents);
  }
  PosteriorParams posterior1() const;
  PosteriorParams posterior2() const;

  // Throws ConfigError naming the offending field.
  void validate() const;
};

// Decision rule: task 1 iff a1*y1 + a2*y2 <= tau (ties go to task 1).
struct AffinePolicy {
  double a1 = 1.0;
  double a2 = -1.0;
  double tau = 0.0;
};

struct Observation {
  double y1 = 0.0;
  double y2 = 0.0;
};

int apply_policy(const AffinePolicy& p, const Observation& y);

/// The take-the-smaller-signal policy (1, -1, 0).
AffinePolicy min_policy();

// Everything needed to evaluate the probability a neighbor picks task 1,
// precomputed from one game instance and the neighbor's policy.
struct BeliefContext {
  PosteriorParams post1;
  PosteriorParams post2;
  AffinePolicy neighbor_policy;
  double noise_scale = 1.0;  // sqrt(a1^2 alpha1^2 + a2^2 alpha2^2)
  double w_var = 1.0;        // (a1^2 st1 + a2^2 st2) / noise_scale^2; 1 in the diffuse limit
};

BeliefContext make_belief_context(const GameParams& params,
                                  const AffinePolicy& neighbor_policy);

/// P(neighbor picks task 1 | own observation y), in (0, 1).
double belief(const BeliefContext& ctx, const Observation& y);

// Independent two-stage Monte Carlo evaluation of the same probability:
// draw the difficulties from the posterior given y, then the neighbor's
// signals, then apply the neighbor's decision rule. Exists to validate the
// closed form; never used inside solvers.
McEstimate mc_belief_two_stage(const GameParams& params,
                               const AffinePolicy& neighbor_policy,
                               const Observation& y, const McConfig& cfg);

// Best-response margin against a homogeneous profile on a K-regular graph:
//   K*pi(y) - K/2 - (rho*K/2)*(d1*y1 - d2*y2),  rho = K/N.
// Nonnegative means task 1 is a best response.
double br_lhs_minus_rhs(const GameParams& params,
                        const AffinePolicy& profile_policy,
                        const Observation& y);

// Diffuse-limit margin against min-policy opponents:
//   F(y) = Phi((y2-y1)/sqrt(2*(alpha1^2+alpha2^2))) - 1/2 + (rho/2)*(y2-y1).
// Vanishes on the diagonal and has the sign of y2 - y1 everywhere.
double diffuse_F(const GameParams& params, const Observation& y);

// Switching decomposition G(xi, y2) = G1 - G2 with xi in the y1 slot:
// G1 is the neighbor belief (strictly decreasing in xi when a1 > 0),
// G2 = 1/2 + (rho/2)(d1*xi - d2*y2) is affine increasing.
double switching_g1(const GameParams& params, const AffinePolicy& profile,
                    double xi, double y2);
double switching_g2(const GameParams& params, const AffinePolicy& profile,
                    double xi, double y2);
double switching_G(const GameParams& params, const AffinePolicy& profile,
                   double xi, double y2);

struct RootResult {
  double xi_star = 0.0;
  int iterations = 0;
};

// Unique root of G(., y2): the best response picks task 1 iff y1 <= xi_star.
// Brackets by geometric expansion around the point where G1's argument mean
// vanishes, bisects to width <= tol, then takes one guarded Newton step.
// Throws SolverError if expansion fails (numerically extreme parameters).
RootResult switching_curve_point(const GameParams& params,
                                 const AffinePolicy& profile, double y2,
                                 double tol = 1e-10);

// Implicit derivative g'(y2) = -(dG/dy2)/(dG/dxi) at the curve point.
// Positive whenever a1 > 0 and a2 < 0.
double switching_curve_slope(const GameParams& params,
                             const AffinePolicy& profile, double y2);

}  // namespace mtgg
