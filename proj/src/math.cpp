#include "mtgg/math.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "mtgg/accumulate.hpp"
#include "mtgg/rng.hpp"

namespace mtgg {

namespace {
constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;
constexpr std::uint64_t kMcChunk = 1u << 16;
}  // namespace

double std_normal_cdf(double x) {
  if (!std::isfinite(x)) {
    throw std::domain_error("std_normal_cdf: non-finite input");
  }
  // erfc keeps full relative accuracy in the left tail, where the naive
  // 0.5*(1 + erf(.)) formulation cancels.
  return 0.5 * std::erfc(-x * kInvSqrt2);
}

double std_normal_pdf(double x) {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

PosteriorParams posterior_params(double prior_var, double noise_var,
                                 bool diffuse) {
  if (!(noise_var > 0.0) || !std::isfinite(noise_var)) {
    throw std::domain_error("posterior_params: noise variance must be positive");
  }
  if (diffuse) {
    return {1.0, noise_var};
  }
  if (!(prior_var > 0.0) || !std::isfinite(prior_var)) {
    throw std::domain_error("posterior_params: prior variance must be positive");
  }
  const double total = prior_var + noise_var;
  return {prior_var / total, noise_var * prior_var / total};
}

double expected_cdf_shift(double c, double w_var) {
  if (!std::isfinite(c)) {
    throw std::domain_error("expected_cdf_shift: non-finite location");
  }
  if (!(w_var >= 0.0) || !std::isfinite(w_var)) {
    throw std::domain_error("expected_cdf_shift: variance must be >= 0");
  }
  return std_normal_cdf(c / std::sqrt(1.0 + w_var));
}

McEstimate mc_expected_cdf_shift(double c, double w_var, const McConfig& cfg) {
  if (!std::isfinite(c)) {
    throw std::domain_error("mc_expected_cdf_shift: non-finite location");
  }
  if (!(w_var >= 0.0) || !std::isfinite(w_var)) {
    throw std::domain_error("mc_expected_cdf_shift: variance must be >= 0");
  }
  if (cfg.sample_count < 1) {
    throw std::domain_error("mc_expected_cdf_shift: sample_count must be >= 1");
  }

  const std::uint64_t n = cfg.sample_count;
  const std::uint64_t chunks = (n + kMcChunk - 1) / kMcChunk;
  const double w_std = std::sqrt(w_var);

  std::vector<double> sums(chunks);
  std::vector<double> sq_sums(chunks);
  for (std::uint64_t chunk = 0; chunk < chunks; ++chunk) {
    rng::Stream stream(rng::derive_seed(cfg.seed, chunk));
    const std::uint64_t begin = chunk * kMcChunk;
    const std::uint64_t end = std::min(n, begin + kMcChunk);
    KahanSum sum;
    KahanSum sq;
    for (std::uint64_t i = begin; i < end; ++i) {
      const double value = std_normal_cdf(c - w_std * stream.next_normal());
      sum.add(value);
      sq.add(value * value);
    }
    sums[chunk] = sum.value();
    sq_sums[chunk] = sq.value();
  }

  const double total = pairwise_sum(sums);
  const double total_sq = pairwise_sum(sq_sums);
  const double mean = total / static_cast<double>(n);
  if (n < 2) {
    return {mean, std::numeric_limits<double>::infinity()};
  }
  const double count = static_cast<double>(n);
  double variance = (total_sq - count * mean * mean) / (count - 1.0);
  if (variance < 0.0) variance = 0.0;  // rounding guard
  return {mean, std::sqrt(variance / count)};
}

MeanAndStdErr mean_and_std_err(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n == 0) {
    return {0.0, std::numeric_limits<double>::infinity()};
  }
  const double mean = pairwise_sum(values) / static_cast<double>(n);
  if (n < 2) {
    return {mean, std::numeric_limits<double>::infinity()};
  }
  std::vector<double> sq(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = values[i] - mean;
    sq[i] = d * d;
  }
  const double variance = pairwise_sum(sq) / static_cast<double>(n - 1);
  return {mean, std::sqrt(variance / static_cast<double>(n))};
}

}  // namespace mtgg
