#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace moq {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64). Identical seeds give
/// identical streams; split() derives independent child seeds.
class RandomSource {
 public:
  static constexpr const char* kAlgorithm = "mt19937_64";

  explicit RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const noexcept { return seed_; }

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on the open interval (0, 1).
  double uniform_open() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }

  double exponential(double rate) { return -std::log(uniform_open()) / rate; }

  /// Child stream keyed by stream_id; the parent stream is not advanced.
  RandomSource split(std::uint64_t stream_id) const { return RandomSource(splitmix64(seed_ ^ splitmix64(stream_id + 1))); }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace moq
