#ifndef FROBCAT_RNG_HPP_
#define FROBCAT_RNG_HPP_

#include <cstdint>

namespace frobcat {

// Reproducible random streams. Sampled oracle reports are part of the
// artifact's output contract, so the generator is pinned bit-for-bit:
//
//   * stream state is derived from (seed, stream index) with one round of
//     SplitMix64: z = (s + index + 1) * 0x9E3779B97F4A7C15 mixed as below;
//   * the stream itself is Marsaglia xorshift64 with the 12/25/27 triple,
//     scaled by 0x2545F4914F6CDD1D (the "xorshift64*" multiplier);
//   * bounded draws are next() % n.
//
// A second implementation following these rules reproduces every report.
class Rng {
 public:
  explicit Rng(uint64_t state) : state_(state == 0 ? 0x9E3779B97F4A7C15ULL : state) {}

  static uint64_t split_mix(uint64_t x) {
    uint64_t z = x + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Independent stream k of a base seed; used for per-sample parallelism.
  static Rng stream(uint64_t seed, uint64_t index) { return Rng(split_mix(seed + index + 1)); }

  uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  /// Uniform-ish draw in [0, n); n must be positive.
  int below(int n) { return static_cast<int>(next() % static_cast<uint64_t>(n)); }

 private:
  uint64_t state_;
};

}  // namespace frobcat

#endif  // FROBCAT_RNG_HPP_
