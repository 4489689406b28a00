#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace hivelab::rmt {

/// Counter-based random stream: draw k of stream s under master seed m is a
/// fixed-point function of (m, s, k) only, so trials can own disjoint streams
/// and replay identically regardless of scheduling.
class RngStream {
 public:
  RngStream(std::uint64_t master_seed, std::uint64_t stream_index)
      : key_(mix64(master_seed ^ mix64(stream_index + kGamma))),
        seed_(master_seed),
        stream_(stream_index) {}

  std::uint64_t master_seed() const { return seed_; }
  std::uint64_t stream_index() const { return stream_; }

  std::uint64_t next_u64() { return mix64(key_ + kGamma * ++counter_); }

  /// Uniform on [0,1) with 53-bit resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  /// Standard normal via Box-Muller; the second value of each pair is cached.
  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0,1], keeps the log finite
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(a);
    have_spare_ = true;
    return r * std::cos(a);
  }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

  static std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xFF51AFD7ED558CCDULL;
    z ^= z >> 33;
    z *= 0xC4CEB9FE1A85EC53ULL;
    z ^= z >> 33;
    return z;
  }

  std::uint64_t key_;
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace hivelab::rmt
