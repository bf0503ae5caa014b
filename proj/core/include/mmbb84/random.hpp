#pragma once

#include <cstdint>
#include <random>

namespace mmbb84 {

/// Seeded random source. Every stochastic operation in the library takes a
/// RandomStream by reference and consumes a documented number of draws, so a
/// run is a pure function of its seed. All variates are derived from raw
/// mt19937_64 output through fixed arithmetic (no std::*_distribution), which
/// keeps replays bit-identical.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  bool next_bit() { return (next_u64() >> 63) != 0; }

  /// Uniform double in [0, 1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Uniform integer in [0, bound). bound must be positive.
  std::uint64_t next_below(std::uint64_t bound);

  /// Standard normal via Box-Muller (one fresh pair of uniforms per call).
  double next_gaussian();

 private:
  std::mt19937_64 engine_;
};

/// Stable seed derivation for parallel work items, e.g. one session at one
/// sweep grid point gets derive_seed(base, point_index, session_index).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a, std::uint64_t b);

}  // namespace mmbb84
