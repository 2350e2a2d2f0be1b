#pragma once

#include <cstdint>
#include <optional>
#include <random>

namespace mfo {

/**
 * Seeded random stream shared by every optimizer, sampler and benchmark.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the
 * standard. The std:: distributions are implementation-defined, so uniform
 * and normal variates are derived here explicitly:
 *   - uniform(): top 53 bits of one engine word scaled by 2^-53, in [0, 1).
 *   - normal():  Marsaglia polar method on uniform() pairs; the second
 *                variate of each accepted pair is cached for the next call.
 *
 * Same seed => bit-identical stream on any conforming toolchain.
 */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  double normal();

  /// Uniform integer in [0, n) by rejection; n must be positive.
  std::uint64_t below(std::uint64_t n);

 private:
  std::mt19937_64 engine_;
  std::uint64_t seed_;
  std::optional<double> spare_;
};

/// Derives an independent child seed (splitmix64 finalizer) for side streams
/// such as benchmark noise, so they never alias the optimizer's stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) noexcept;

}  // namespace mfo
