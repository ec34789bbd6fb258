#include "mtgg/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "mtgg/accumulate.hpp"
#include "mtgg/errors.hpp"
#include "mtgg/parallel.hpp"
#include "mtgg/rng.hpp"

namespace mtgg {

namespace {
// Wide sampling proposal replacing the improper diffuse marginal of Y2.
constexpr double kDiffuseProposalFactor = 1e4;
// Tolerance for the in-iteration monotonicity audit; roots carry error of
// the order of the bisection width.
constexpr double kMonotoneSlack = 1e-8;
}  // namespace

void SolveConfig::validate() const {
  if (sample_count < 2) {
    throw ConfigError("solve.samples must be at least 2");
  }
  if (max_iters < 1) {
    throw ConfigError("solve.max_iters must be at least 1");
  }
  if (!(conv_tol > 0.0) || !std::isfinite(conv_tol)) {
    throw ConfigError("solve.conv_tol must be positive");
  }
  if (!(init_a2 < 0.0) || !std::isfinite(init_a2)) {
    throw ConfigError("solve.init_a2 must be negative");
  }
  if (!std::isfinite(init_tau)) {
    throw ConfigError("solve.init_tau must be finite");
  }
  if (!(relaxation > 0.0) || relaxation > 1.0) {
    throw ConfigError("solve.relaxation must lie in (0, 1]");
  }
  if (!(root_tol > 0.0) || !std::isfinite(root_tol)) {
    throw ConfigError("solve.root_tol must be positive");
  }
}

std::vector<double> sample_y2(const GameParams& params, std::uint64_t count,
                              std::uint64_t seed) {
  if (count < 2) {
    throw ConfigError("sample_y2 requires at least 2 samples");
  }
  const double variance =
      params.diffuse ? kDiffuseProposalFactor * params.alpha2_sq
                     : params.sigma2_sq + params.alpha2_sq;
  std::vector<double> samples(count);
  constexpr std::uint64_t kChunk = 1u << 16;
  const std::uint64_t chunks = (count + kChunk - 1) / kChunk;
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    rng::Stream stream(rng::derive_seed(seed, chunk));
    const std::uint64_t end = std::min(count, (chunk + 1) * kChunk);
    for (std::uint64_t i = chunk * kChunk; i < end; ++i) {
      samples[i] = stream.next_normal(0.0, variance);
    }
  }
  return samples;
}

AffineFit project_affine(std::span<const ProjectionSample> samples) {
  const std::size_t n = samples.size();
  if (n < 2) {
    throw std::domain_error("project_affine: need at least 2 samples");
  }

  double mean_y = 0.0, mean_g = 0.0;
  for (const auto& s : samples) {
    mean_y += s.y2;
    mean_g += s.g_of_y2;
  }
  mean_y /= static_cast<double>(n);
  mean_g /= static_cast<double>(n);

  double cov = 0.0, var = 0.0;
  for (const auto& s : samples) {
    const double dy = s.y2 - mean_y;
    cov += dy * (s.g_of_y2 - mean_g);
    var += dy * dy;
  }
  if (var == 0.0) {
    throw std::domain_error(
        "project_affine: all y2 values identical (rank-deficient fit)");
  }

  const double slope = cov / var;
  const double intercept = mean_g - slope * mean_y;
  double residual = 0.0;
  for (const auto& s : samples) {
    const double r = slope * s.y2 + intercept - s.g_of_y2;
    residual += r * r;
  }
  residual /= static_cast<double>(n);
  return {-slope, intercept, residual};
}

SolveResult solve_affine_bne(const GameParams& params, const SolveConfig& cfg) {
  params.validate();
  cfg.validate();

  // One sample set, drawn up front and held fixed across iterations, so the
  // fixed point of the iteration is deterministic.
  std::vector<double> y2s = sample_y2(params, cfg.sample_count, cfg.seed);
  std::sort(y2s.begin(), y2s.end());

  const int threads = resolve_threads(cfg.threads);
  const std::size_t count = y2s.size();
  std::vector<ProjectionSample> samples(count);
  for (std::size_t i = 0; i < count; ++i) samples[i].y2 = y2s[i];

  SolveResult result;
  double a2 = cfg.init_a2;
  double tau = cfg.init_tau;
  result.trajectory.emplace_back(a2, tau);

  for (int iter = 0; iter < cfg.max_iters; ++iter) {
    const AffinePolicy profile{1.0, a2, tau};
    try {
      parallel_for(count, threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          samples[i].g_of_y2 =
              switching_curve_point(params, profile, samples[i].y2,
                                    cfg.root_tol)
                  .xi_star;
        }
      });
    } catch (const SolverError& e) {
      throw SolverError(std::string("solve_affine_bne: iteration ") +
                        std::to_string(iter + 1) + ": " + e.what());
    }

    if (a2 < 0.0) {
      // Theorem-2 regime: the sampled curve must be increasing. A violation
      // means the root solver or the instance is broken; fail loudly.
      for (std::size_t i = 1; i < count; ++i) {
        if (samples[i].g_of_y2 < samples[i - 1].g_of_y2 - kMonotoneSlack) {
          throw SolverError(
              "solve_affine_bne: switching curve not increasing at sample " +
              std::to_string(i) + " (iteration " + std::to_string(iter + 1) +
              ")");
        }
      }
    }

    const AffineFit fit = project_affine(samples);
    const double next_a2 = a2 + cfg.relaxation * (fit.a2 - a2);
    const double next_tau = tau + cfg.relaxation * (fit.tau - tau);
    const double delta =
        std::max(std::abs(next_a2 - a2), std::abs(next_tau - tau));

    a2 = next_a2;
    tau = next_tau;
    result.trajectory.emplace_back(a2, tau);
    result.iterations = iter + 1;
    result.residual_error = fit.residual;

    if (delta <= cfg.conv_tol) {
      result.converged = true;
      break;
    }
  }

  result.a2_star = a2;
  result.tau_star = tau;
  return result;
}

}  // namespace mtgg
