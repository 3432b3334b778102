#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace membrane {

// Counter-based random stream (SplitMix64 core): draw j of stream s under
// seed q is a pure function of (q, s, j). Streams are cheap to construct per
// trajectory, so parallel ensembles reproduce bit-for-bit regardless of how
// trajectories are scheduled across threads.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) noexcept
      : state_(mix(seed + kGamma * (stream + 1))) {}

  std::uint64_t next_u64() noexcept {
    state_ += kGamma;
    return mix(state_);
  }

  // Uniform in (0, 1]; never 0, so it is safe under a logarithm.
  double next_uniform_pos() noexcept {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1p-53;
  }

  // Uniform in [0, 1).
  double next_uniform() noexcept {
    return static_cast<double>(next_u64() >> 11) * 0x1p-53;
  }

  // Independent standard normals via Box-Muller (two uniforms, two normals).
  std::pair<double, double> next_gaussian_pair() noexcept {
    const double u1 = next_uniform_pos();
    const double u2 = next_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
  }

  static constexpr std::uint64_t mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ULL;
  std::uint64_t state_;
};

}  // namespace membrane
