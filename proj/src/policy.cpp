#include "mtgg/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "mtgg/accumulate.hpp"
#include "mtgg/errors.hpp"
#include "mtgg/rng.hpp"

namespace mtgg {

PosteriorParams GameParams::posterior1() const {
  return posterior_params(sigma1_sq, alpha1_sq, diffuse);
}

PosteriorParams GameParams::posterior2() const {
  return posterior_params(sigma2_sq, alpha2_sq, diffuse);
}

void GameParams::validate() const {
  if (n_agents < 2) {
    throw ConfigError("game.n_agents must be at least 2");
  }
  if (degree < 1 || degree > n_agents - 1) {
    throw ConfigError("game.degree must lie in [1, n_agents - 1]");
  }
  if (!(alpha1_sq > 0.0) || !std::isfinite(alpha1_sq)) {
    throw ConfigError("game.alpha1_sq must be a positive finite variance");
  }
  if (!(alpha2_sq > 0.0) || !std::isfinite(alpha2_sq)) {
    throw ConfigError("game.alpha2_sq must be a positive finite variance");
  }
  if (!diffuse) {
    if (!(sigma1_sq > 0.0) || !std::isfinite(sigma1_sq)) {
      throw ConfigError("game.sigma1_sq must be a positive finite variance");
    }
    if (!(sigma2_sq > 0.0) || !std::isfinite(sigma2_sq)) {
      throw ConfigError("game.sigma2_sq must be a positive finite variance");
    }
  }
}

int apply_policy(const AffinePolicy& p, const Observation& y) {
  return (p.a1 * y.y1 + p.a2 * y.y2 <= p.tau) ? kTask1 : kTask2;
}

AffinePolicy min_policy() { return {1.0, -1.0, 0.0}; }

BeliefContext make_belief_context(const GameParams& params,
                                  const AffinePolicy& neighbor_policy) {
  const double a1 = neighbor_policy.a1;
  const double a2 = neighbor_policy.a2;
  if (a1 == 0.0 && a2 == 0.0) {
    throw std::domain_error("belief: neighbor policy has zero weight vector");
  }
  const PosteriorParams p1 = params.posterior1();
  const PosteriorParams p2 = params.posterior2();
  const double noise_sq = a1 * a1 * params.alpha1_sq + a2 * a2 * params.alpha2_sq;
  const double w_var =
      (a1 * a1 * p1.sigma_tilde_sq + a2 * a2 * p2.sigma_tilde_sq) / noise_sq;
  return {p1, p2, neighbor_policy, std::sqrt(noise_sq), w_var};
}

double belief(const BeliefContext& ctx, const Observation& y) {
  if (!std::isfinite(y.y1) || !std::isfinite(y.y2)) {
    throw std::domain_error("belief: non-finite observation");
  }
  const AffinePolicy& p = ctx.neighbor_policy;
  const double c = (p.tau - ctx.post1.d * p.a1 * y.y1 -
                    ctx.post2.d * p.a2 * y.y2) / ctx.noise_scale;
  return expected_cdf_shift(c, ctx.w_var);
}

McEstimate mc_belief_two_stage(const GameParams& params,
                               const AffinePolicy& neighbor_policy,
                               const Observation& y, const McConfig& cfg) {
  if (cfg.sample_count < 1) {
    throw std::domain_error("mc_belief_two_stage: sample_count must be >= 1");
  }
  const PosteriorParams p1 = params.posterior1();
  const PosteriorParams p2 = params.posterior2();
  const double mean1 = p1.d * y.y1;
  const double mean2 = p2.d * y.y2;

  constexpr std::uint64_t kChunk = 1u << 16;
  const std::uint64_t n = cfg.sample_count;
  const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
  std::vector<double> sums(chunks);
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    rng::Stream stream(rng::derive_seed(cfg.seed, chunk));
    const std::uint64_t begin = chunk * kChunk;
    const std::uint64_t end = std::min(n, begin + kChunk);
    KahanSum hits;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double theta1 = stream.next_normal(mean1, p1.sigma_tilde_sq);
      const double theta2 = stream.next_normal(mean2, p2.sigma_tilde_sq);
      const Observation neighbor_obs{
          theta1 + stream.next_normal(0.0, params.alpha1_sq),
          theta2 + stream.next_normal(0.0, params.alpha2_sq)};
      hits.add(apply_policy(neighbor_policy, neighbor_obs) == kTask1 ? 1.0
                                                                     : 0.0);
    }
    sums[chunk] = hits.value();
  }
  const double count = static_cast<double>(n);
  const double mean = pairwise_sum(sums) / count;
  if (n < 2) {
    return {mean, std::numeric_limits<double>::infinity()};
  }
  // Bernoulli samples: sum of squares equals the sum.
  double variance = count * mean * (1.0 - mean) / (count - 1.0);
  if (variance < 0.0) variance = 0.0;
  return {mean, std::sqrt(variance / count)};
}

namespace {

// Precomputed pieces of G for one (instance, profile) pair; every public
// switching-curve operation funnels through this.
struct SwitchContext {
  double d1, d2;
  double a1, a2, tau;
  double rho;
  double noise_scale;  // sqrt(a1^2 alpha1^2 + a2^2 alpha2^2)
  double total_scale;  // noise_scale * sqrt(1 + w_var)

  static SwitchContext make(const GameParams& params,
                            const AffinePolicy& profile) {
    const PosteriorParams p1 = params.posterior1();
    const PosteriorParams p2 = params.posterior2();
    const double a1 = profile.a1;
    const double a2 = profile.a2;
    if (a1 == 0.0 && a2 == 0.0) {
      throw std::domain_error("switching curve: profile has zero weight vector");
    }
    const double noise_sq =
        a1 * a1 * params.alpha1_sq + a2 * a2 * params.alpha2_sq;
    const double w_var =
        (a1 * a1 * p1.sigma_tilde_sq + a2 * a2 * p2.sigma_tilde_sq) / noise_sq;
    return {p1.d,
            p2.d,
            a1,
            a2,
            profile.tau,
            params.density(),
            std::sqrt(noise_sq),
            std::sqrt(noise_sq) * std::sqrt(1.0 + w_var)};
  }

  double u(double xi, double y2) const {
    return (tau - a1 * d1 * xi - a2 * d2 * y2) / total_scale;
  }
  double g1(double xi, double y2) const { return std_normal_cdf(u(xi, y2)); }
  double g2(double xi, double y2) const {
    return 0.5 + 0.5 * rho * (d1 * xi - d2 * y2);
  }
  double g(double xi, double y2) const { return g1(xi, y2) - g2(xi, y2); }

  double dg_dxi(double xi, double y2) const {
    return -std_normal_pdf(u(xi, y2)) * a1 * d1 / total_scale -
           0.5 * rho * d1;
  }
  double dg_dy2(double xi, double y2) const {
    return -std_normal_pdf(u(xi, y2)) * a2 * d2 / total_scale +
           0.5 * rho * d2;
  }
};

RootResult solve_root(const SwitchContext& ctx, double y2, double tol) {
  if (!(ctx.a1 > 0.0)) {
    throw std::domain_error("switching curve: requires a1 > 0");
  }
  if (!(tol > 0.0)) {
    throw std::domain_error("switching curve: tol must be positive");
  }
  // Center of G1's transition: the xi where the belief argument mean is 0.
  const double xi0 = (ctx.tau - ctx.a2 * ctx.d2 * y2) / (ctx.a1 * ctx.d1);
  if (!std::isfinite(xi0)) {
    throw SolverError("switching_curve_point: non-finite bracket center");
  }

  int iterations = 0;
  double lo = xi0, hi = xi0;
  double g_lo = ctx.g(lo, y2);
  double g_hi = g_lo;
  constexpr int kMaxDoublings = 200;

  // G is strictly decreasing in xi, so expand one side until it straddles 0.
  double step = 1.0 + 0.125 * std::abs(xi0);
  for (int i = 0; g_lo < 0.0; ++i, step *= 2.0) {
    if (i >= kMaxDoublings || !std::isfinite(g_lo)) {
      throw SolverError(
          "switching_curve_point: bracket expansion failed at y2 = " +
          std::to_string(y2));
    }
    lo -= step;
    g_lo = ctx.g(lo, y2);
    ++iterations;
  }
  step = 1.0 + 0.125 * std::abs(xi0);
  for (int i = 0; g_hi > 0.0; ++i, step *= 2.0) {
    if (i >= kMaxDoublings || !std::isfinite(g_hi)) {
      throw SolverError(
          "switching_curve_point: bracket expansion failed at y2 = " +
          std::to_string(y2));
    }
    hi += step;
    g_hi = ctx.g(hi, y2);
    ++iterations;
  }

  if (g_lo == 0.0) return {lo, iterations};
  if (g_hi == 0.0) return {hi, iterations};

  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval at floating-point limit
    const double g_mid = ctx.g(mid, y2);
    ++iterations;
    if (g_mid > 0.0) {
      lo = mid;
    } else if (g_mid < 0.0) {
      hi = mid;
    } else {
      return {mid, iterations};
    }
  }

  // One Newton polish step, kept only if it stays inside the bracket.
  double root = 0.5 * (lo + hi);
  const double deriv = ctx.dg_dxi(root, y2);
  if (deriv < 0.0) {
    const double polished = root - ctx.g(root, y2) / deriv;
    ++iterations;
    if (polished > lo && polished < hi) root = polished;
  }
  return {root, iterations};
}

}  // namespace

double br_lhs_minus_rhs(const GameParams& params,
                        const AffinePolicy& profile_policy,
                        const Observation& y) {
  const SwitchContext ctx = SwitchContext::make(params, profile_policy);
  return static_cast<double>(params.degree) * ctx.g(y.y1, y.y2);
}

double diffuse_F(const GameParams& params, const Observation& y) {
  if (!params.diffuse) {
    throw std::domain_error("diffuse_F: instance is not diffuse");
  }
  const double spread = y.y2 - y.y1;
  const double scale =
      std::sqrt(2.0 * (params.alpha1_sq + params.alpha2_sq));
  return std_normal_cdf(spread / scale) - 0.5 + 0.5 * params.density() * spread;
}

double switching_g1(const GameParams& params, const AffinePolicy& profile,
                    double xi, double y2) {
  return SwitchContext::make(params, profile).g1(xi, y2);
}

double switching_g2(const GameParams& params, const AffinePolicy& profile,
                    double xi, double y2) {
  return SwitchContext::make(params, profile).g2(xi, y2);
}

double switching_G(const GameParams& params, const AffinePolicy& profile,
                   double xi, double y2) {
  return SwitchContext::make(params, profile).g(xi, y2);
}

RootResult switching_curve_point(const GameParams& params,
                                 const AffinePolicy& profile, double y2,
                                 double tol) {
  return solve_root(SwitchContext::make(params, profile), y2, tol);
}

double switching_curve_slope(const GameParams& params,
                             const AffinePolicy& profile, double y2) {
  const SwitchContext ctx = SwitchContext::make(params, profile);
  const double xi = solve_root(ctx, y2, 1e-12).xi_star;
  const double d_xi = ctx.dg_dxi(xi, y2);
  if (d_xi == 0.0) {
    throw SolverError("switching_curve_slope: dG/dxi vanished");
  }
  return -ctx.dg_dy2(xi, y2) / d_xi;
}

}  // namespace mtgg
