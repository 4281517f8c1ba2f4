#pragma once

#include <cstdint>

namespace ulf {

/// Counter-based pseudorandom stream. The state is an arithmetic counter and
/// every output is a finalizer of (seed, stream, counter), so identical
/// (seed, stream) pairs produce identical sequences on every platform and
/// streams can be handed to workers independently. No global state.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::uint64_t stream_id)
      : seed_(seed), stream_(stream_id), counter_(0) {
    base_ = mix(mix(seed + kGamma) ^ mix(~stream_id));
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_; }

  std::uint64_t next_u64() {
    ++counter_;
    return mix(base_ + counter_ * kGamma);
  }

  /// Uniform draw from {0, ..., bound-1} by 128-bit multiply-shift.
  /// Bias is bound/2^64 (< 2^-56 for bound < 256), far below anything the
  /// statistical suites can resolve.
  std::uint32_t next_below(std::uint32_t bound) {
    return static_cast<std::uint32_t>(
        (static_cast<unsigned __int128>(next_u64()) * bound) >> 64);
  }

  /// Uniform double in [0, 1) with 53 random bits.
  double next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;

  // SplitMix64 finalizer.
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }

  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t base_;
  std::uint64_t counter_;
};

}  // namespace ulf
