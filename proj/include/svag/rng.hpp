#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

namespace svag {

/// Mixes (seed, stream) into an independent substream seed. Used to give every
/// replication / sweep cell its own generator so runs are reproducible and
/// order-independent under parallel execution.
std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream);

/// Seeded generator with portable sampling primitives. All distributions are
/// implemented here instead of <random>'s distribution classes, whose output
/// is implementation-defined; traces must be reproducible byte for byte.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Unbiased draw from {0, ..., n-1} (Lemire's multiply-shift rejection).
  std::size_t uniform_index(std::size_t n);

  /// Uniform on [0, 1) with 53 random mantissa bits.
  double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller; the paired value is cached.
  double gaussian();

 private:
  std::mt19937_64 engine_;
  double cached_gaussian_ = 0.0;
  bool has_cached_ = false;
};

}  // namespace svag
