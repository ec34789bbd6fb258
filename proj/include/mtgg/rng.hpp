#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace mtgg::rng {

// SplitMix64 finalizer. Used both as the generator step and to derive
// independent substream seeds, so that per-agent / per-trial streams are
// reproducible from one master seed regardless of evaluation order.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  return mix64(mix64(master + 0x9E3779B97F4A7C15ull) ^
               (stream + 0xD1B54A32D192ED03ull));
}

// Splittable SplitMix64 stream. Normal draws use basic Box-Muller (two
// uniforms per draw, no pair caching) so every draw consumes a fixed
// amount of state.
class Stream {
 public:
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64() {
    state_ += 0x9E3779B97F4A7C15ull;
    return mix64(state_);
  }

  // Uniform on the open interval (0, 1).
  double next_uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  double next_normal() {
    const double u1 = next_uniform01();
    const double u2 = next_uniform01();
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(2.0 * std::numbers::pi * u2);
  }

  double next_normal(double mean, double variance) {
    return mean + std::sqrt(variance) * next_normal();
  }

 private:
  std::uint64_t state_;
};

}  // namespace mtgg::rng
