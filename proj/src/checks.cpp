#include "mtgg/checks.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mtgg/parallel.hpp"
#include "mtgg/rng.hpp"
#include "mtgg/simulation.hpp"

namespace mtgg::checks {

namespace {

std::string describe(double worst, const std::string& what) {
  std::ostringstream out;
  out << what << " (worst margin " << worst << ")";
  return out.str();
}

double uniform_in(rng::Stream& stream, double lo, double hi) {
  return lo + (hi - lo) * stream.next_uniform01();
}

}  // namespace

std::vector<AffinePolicy> deviation_grid(const AffinePolicy& center,
                                         int grid_side, double a2_span,
                                         double tau_span) {
  std::vector<AffinePolicy> grid;
  grid.reserve(static_cast<std::size_t>(grid_side) * grid_side);
  for (int i = 0; i < grid_side; ++i) {
    for (int j = 0; j < grid_side; ++j) {
      const double fi = grid_side > 1
                            ? -1.0 + 2.0 * i / (grid_side - 1.0)
                            : 0.0;
      const double fj = grid_side > 1
                            ? -1.0 + 2.0 * j / (grid_side - 1.0)
                            : 0.0;
      grid.push_back(
          {1.0, center.a2 + fi * a2_span, center.tau + fj * tau_span});
    }
  }
  return grid;
}

CheckResult lemma1_identity(const VerifySettings& settings, int threads) {
  (void)threads;
  CheckResult result{"lemma1_identity", true, 0.0, ""};

  // Exact center value through the closed form.
  const double center = expected_cdf_shift(0.0, 1.0);
  double worst = std::abs(center - 0.5);
  bool ok = worst <= 1e-12;

  // Monte Carlo confirmation of the same identity.
  const McEstimate mc0 =
      mc_expected_cdf_shift(0.0, 1.0, {settings.mc_samples, settings.seed});
  const double z0 = std::abs(mc0.estimate - 0.5) / mc0.std_err;
  ok = ok && z0 <= 3.0;

  // Shifted comparisons exercised through the belief path, where the test
  // hook can corrupt the variance of W.
  GameParams diffuse;
  diffuse.diffuse = true;
  diffuse.alpha1_sq = 1.0;
  diffuse.alpha2_sq = 1.0;
  diffuse.n_agents = 10;
  diffuse.degree = 4;
  BeliefContext ctx = make_belief_context(diffuse, min_policy());
  if (settings.corrupt_w_var) {
    ctx.w_var = 0.0;
  }
  const double spread_scale = std::sqrt(2.0);  // alpha1^2 + alpha2^2 = 2
  double worst_z = z0;
  for (double c : {0.5, 1.0, 2.0}) {
    const Observation y{0.0, c * spread_scale};
    const double closed = belief(ctx, y);
    const McEstimate mc = mc_expected_cdf_shift(
        c, 1.0, {settings.mc_samples, rng::derive_seed(settings.seed, 17)});
    const double z = std::abs(closed - mc.estimate) / (mc.std_err + 1e-15);
    worst_z = std::max(worst_z, z);
    ok = ok && z <= 4.0;
  }

  result.passed = ok;
  result.margin = worst_z;
  result.detail = describe(worst_z,
                           "E[Phi(W)] identity and shifted closed form vs MC, "
                           "worst z-score");
  return result;
}

CheckResult diffuse_sign_structure(const GameParams& diffuse_params,
                                   const VerifySettings& settings) {
  CheckResult result{"diffuse_sign_structure", true, 0.0, ""};
  rng::Stream stream(rng::derive_seed(settings.seed, 1));

  double worst_diag = 0.0;
  for (int i = 0; i < settings.diagonal_points; ++i) {
    const double t = uniform_in(stream, -10.0, 10.0);
    worst_diag =
        std::max(worst_diag, std::abs(diffuse_F(diffuse_params, {t, t})));
  }
  bool ok = worst_diag <= 1e-12;

  int sign_matches = 0;
  for (int i = 0; i < settings.sign_points; ++i) {
    double y1 = uniform_in(stream, -10.0, 10.0);
    double y2 = uniform_in(stream, -10.0, 10.0);
    if (std::abs(y1 - y2) < 1e-6) {
      y2 += (y2 >= y1 ? 1e-3 : -1e-3);
    }
    const double f = diffuse_F(diffuse_params, {y1, y2});
    if ((f > 0.0) == (y2 > y1) && f != 0.0) ++sign_matches;
  }
  ok = ok && sign_matches == settings.sign_points;

  result.passed = ok;
  result.margin = worst_diag;
  std::ostringstream detail;
  detail << "diagonal |F| max " << worst_diag << ", sign matches "
         << sign_matches << "/" << settings.sign_points;
  result.detail = detail.str();
  return result;
}

CheckResult switching_monotonicity(const VerifySettings& settings) {
  CheckResult result{"switching_monotonicity", true, 0.0, ""};
  rng::Stream stream(rng::derive_seed(settings.seed, 2));

  bool ok = true;
  double worst_rel = 0.0;
  int violations = 0;
  for (int inst = 0; inst < settings.monotone_instances; ++inst) {
    GameParams params;
    params.sigma1_sq = uniform_in(stream, 0.3, 3.0);
    params.sigma2_sq = uniform_in(stream, 0.3, 3.0);
    params.alpha1_sq = uniform_in(stream, 0.3, 3.0);
    params.alpha2_sq = uniform_in(stream, 0.3, 3.0);
    params.n_agents = 10;
    params.degree = 1 + static_cast<int>(stream.next_u64() % 9);
    AffinePolicy profile;
    profile.a1 = uniform_in(stream, 0.5, 2.0);
    profile.a2 = -uniform_in(stream, 0.3, 3.0);
    profile.tau = uniform_in(stream, -2.0, 2.0);

    double previous = 0.0;
    for (int g = 0; g < settings.monotone_grid; ++g) {
      const double y2 =
          -15.0 + 30.0 * g / std::max(settings.monotone_grid - 1, 1);
      const double xi = switching_curve_point(params, profile, y2).xi_star;
      if (g > 0 && xi <= previous) {
        ++violations;
        ok = false;
      }
      previous = xi;
    }

    for (double y2 : {-10.0, 0.0, 10.0}) {
      const double analytic = switching_curve_slope(params, profile, y2);
      const double h = 1e-4;
      const double fd =
          (switching_curve_point(params, profile, y2 + h, 1e-12).xi_star -
           switching_curve_point(params, profile, y2 - h, 1e-12).xi_star) /
          (2.0 * h);
      const double rel =
          std::abs(analytic - fd) / std::max(std::abs(fd), 1e-12);
      worst_rel = std::max(worst_rel, rel);
      ok = ok && analytic > 0.0 && rel <= 1e-5;
    }
  }

  result.passed = ok;
  result.margin = worst_rel;
  std::ostringstream detail;
  detail << violations << " monotonicity violations, worst slope-vs-FD "
         << worst_rel;
  result.detail = detail.str();
  return result;
}

CheckResult oracle_equivalence_cdf(const VerifySettings& settings,
                                   int threads) {
  CheckResult result{"oracle_equivalence_cdf", true, 0.0, ""};
  rng::Stream stream(rng::derive_seed(settings.seed, 3));

  const int points = settings.oracle_points;
  std::vector<double> cs(points), vs(points), zs(points);
  for (int i = 0; i < points; ++i) {
    cs[i] = uniform_in(stream, -5.0, 5.0);
    vs[i] = uniform_in(stream, 0.0, 10.0);
  }
  parallel_for(points, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const double closed = expected_cdf_shift(cs[i], vs[i]);
      const McEstimate mc = mc_expected_cdf_shift(
          cs[i], vs[i],
          {settings.mc_samples, rng::derive_seed(settings.seed, 100 + i)});
      zs[i] = std::abs(closed - mc.estimate) / (mc.std_err + 1e-15);
    }
  });
  const double worst = *std::max_element(zs.begin(), zs.end());
  result.passed = worst <= 4.0;
  result.margin = worst;
  result.detail =
      describe(worst, "closed form vs MC over random (c, w_var), worst z");
  return result;
}

CheckResult oracle_equivalence_belief(const VerifySettings& settings,
                                      int threads) {
  CheckResult result{"oracle_equivalence_belief", true, 0.0, ""};
  rng::Stream stream(rng::derive_seed(settings.seed, 4));

  const int points = settings.oracle_points;
  struct Case {
    GameParams params;
    AffinePolicy neighbor;
    Observation y;
  };
  std::vector<Case> cases(points);
  for (auto& c : cases) {
    c.params.sigma1_sq = uniform_in(stream, 0.3, 3.0);
    c.params.sigma2_sq = uniform_in(stream, 0.3, 3.0);
    c.params.alpha1_sq = uniform_in(stream, 0.3, 3.0);
    c.params.alpha2_sq = uniform_in(stream, 0.3, 3.0);
    c.params.n_agents = 10;
    c.params.degree = 4;
    c.neighbor.a1 = uniform_in(stream, 0.5, 2.0);
    c.neighbor.a2 = uniform_in(stream, -3.0, 3.0);
    if (std::abs(c.neighbor.a2) < 0.05) c.neighbor.a2 = 0.05;
    c.neighbor.tau = uniform_in(stream, -2.0, 2.0);
    c.y = {uniform_in(stream, -3.0, 3.0), uniform_in(stream, -3.0, 3.0)};
  }

  std::vector<double> zs(points);
  parallel_for(points, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Case& c = cases[i];
      const double closed =
          belief(make_belief_context(c.params, c.neighbor), c.y);
      const McEstimate mc = mc_belief_two_stage(
          c.params, c.neighbor, c.y,
          {settings.mc_samples, rng::derive_seed(settings.seed, 200 + i)});
      zs[i] = std::abs(closed - mc.estimate) / (mc.std_err + 1e-15);
    }
  });
  const double worst = *std::max_element(zs.begin(), zs.end());
  result.passed = worst <= 4.0;
  result.margin = worst;
  result.detail = describe(
      worst, "belief closed form vs two-stage MC on random points, worst z");
  return result;
}

CheckResult deviation_min_policy(const GameParams& diffuse_params,
                                 const VerifySettings& settings, int threads) {
  CheckResult result{"deviation_min_policy", true, 0.0, ""};

  const RegularGraph graph =
      make_regular_graph(diffuse_params.n_agents, diffuse_params.degree);
  const std::vector<AffinePolicy> grid =
      deviation_grid(min_policy(), 9, 1.0, 2.0);
  const DeviationReport report = deviation_gain(
      diffuse_params, graph, min_policy(), grid, settings.deviation_trials,
      rng::derive_seed(settings.seed, 5), /*include_br_curve=*/true, threads);

  result.passed = report.gain <= 3.0 * report.std_err;
  result.margin = report.gain;
  std::ostringstream detail;
  detail << "best gain " << report.gain << " (std err " << report.std_err
         << ", candidate " << report.best_label << ")";
  result.detail = detail.str();
  return result;
}

}  // namespace mtgg::checks
