#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <utility>

namespace crowdflow {

// Pinned pseudo-random generator. Every place the project needs randomness
// (scene synthesis, train/test shuffling, test data) goes through this class
// so that generated files reproduce bit-for-bit across platforms and across
// ports to other languages. The algorithm is xorshift64* (Marsaglia/Vigna):
//
//   s ^= s >> 12;  s ^= s << 25;  s ^= s >> 27;
//   output = s * 0x2545F4914F6CDD1D
//
// Stream seeding uses one SplitMix64 finalizer step over
// (seed + stream_id * 0x9E3779B97F4A7C15), and falls back to the golden-ratio
// constant when the mixed state comes out zero (xorshift state must be
// nonzero). docs/FORMATS.md restates the full recipe for re-implementers.
class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed, std::uint64_t stream_id = 0) {
    std::uint64_t z = seed + stream_id * 0x9E3779B97F4A7C15ULL;
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    z ^= z >> 31;
    state_ = z != 0 ? z : 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform in [0, 1): top 53 bits scaled by 2^-53.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + uniform01() * (hi - lo); }

  // Uniform integer in [0, n). Modulo bias is negligible for the small n
  // used here (shuffles, test-case sizing) and keeps the recipe trivial.
  std::uint64_t uniform_index(std::uint64_t n) { return next() % n; }

  // Standard normal pair via Box-Muller; u1 is flipped into (0, 1] so the
  // logarithm never sees zero.
  std::pair<double, double> normal_pair() {
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(theta), r * std::sin(theta)};
  }

 private:
  std::uint64_t state_;
};

}  // namespace crowdflow
