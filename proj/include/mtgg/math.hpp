#pragma once

#include <cstdint>

namespace mtgg {

// Scalar Gaussian N(mean, variance); variance 0 denotes a point mass.
struct GaussianScalar {
  double mean = 0.0;
  double variance = 0.0;
};

// Posterior of a task difficulty given one private signal:
//   Theta | Y = y  ~  N(d * y, sigma_tilde_sq)
// with d = s2/(s2 + a2) and sigma_tilde_sq = a2*s2/(s2 + a2) for prior
// variance s2 and noise variance a2. The diffuse limit has d = 1 and
// sigma_tilde_sq equal to the noise variance.
struct PosteriorParams {
  double d = 1.0;
  double sigma_tilde_sq = 0.0;
};

struct McConfig {
  std::uint64_t sample_count = 1'000'000;
  std::uint64_t seed = 0;
};

struct McEstimate {
  double estimate = 0.0;
  double std_err = 0.0;
};

/// Standard normal CDF, accurate to ~1e-15 absolute (erfc formulation).
double std_normal_cdf(double x);

/// Standard normal density.
double std_normal_pdf(double x);

PosteriorParams posterior_params(double prior_var, double noise_var,
                                 bool diffuse = false);

// E[Phi(c - W)] for W ~ N(0, w_var). Reduces to Phi(c / sqrt(1 + w_var))
// because an independent standard normal X gives
// E[Phi(c - W)] = P(X + W <= c). Cross-checked against the Monte Carlo
// estimator below in the test suite.
double expected_cdf_shift(double c, double w_var);

// Sample-mean Monte Carlo estimate of E[Phi(c - W)] with its standard
// error. Deterministic for a given seed and sample count, independent of
// any internal chunking.
McEstimate mc_expected_cdf_shift(double c, double w_var, const McConfig& cfg);

}  // namespace mtgg
