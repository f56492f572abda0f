#pragma once

#include <bit>
#include <cstdint>

namespace modwalk {

/// SplitMix64: the finalizer is a bijection on 64-bit words, so distinct
/// (seed, stream) pairs give distinct, decorrelated sequences.  Chosen for
/// reproducibility across platforms: the whole state fits one word and the
/// output is fully specified by the two constants below.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9E3779B97F4A7C15ULL;
    return mix(state_);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

/// Per-trajectory random stream: trajectory j under master seed s starts at
/// mix(s XOR golden·(j+1)), so streams are independent of execution order and
/// of each other for practical purposes.
class TrajectoryRng {
 public:
  TrajectoryRng(std::uint64_t seed, std::uint64_t trajectory)
      : engine_(SplitMix64::mix(seed ^ (0x9E3779B97F4A7C15ULL * (trajectory + 1)))) {}

  std::uint64_t next_u64() { return engine_.next(); }

  /// Uniform index in 0..8.  Modular reduction of a 64-bit draw; the bias is
  /// below 2^-60, far under anything observable here.
  int next_generator_index() { return static_cast<int>(next_u64() % 9); }

  /// Fair sign in {-1, +1}.
  int next_sign() { return (next_u64() & 1) ? 1 : -1; }

  /// Geometric law P(K = k) = 2^-k, k >= 1: position of the first set bit in
  /// a uniform word.  The 2^-64 all-zero tail folds into K = 64.
  std::uint64_t next_geometric() {
    std::uint64_t draw = next_u64();
    if (draw == 0) return 64;
    return static_cast<std::uint64_t>(std::countr_zero(draw)) + 1;
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

 private:
  SplitMix64 engine_;
};

}  // namespace modwalk
