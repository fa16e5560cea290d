#pragma once

#include <cstdint>
#include <limits>
#include <numbers>
#include <string_view>

namespace srw {

// Portable generator: xoshiro256** seeded through splitmix64. All
// distributions below are written out by hand so the draw sequence does not
// depend on the standard library implementation.
class RngStream {
 public:
  RngStream(std::uint64_t seed, std::string_view label) {
    std::uint64_t x = seed ^ label_hash(label);
    for (auto& s : state_) s = splitmix64(x);
  }

  std::uint64_t next() {
    const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double angle() { return uniform(0.0, 2.0 * std::numbers::pi); }

  // Unbiased integer in [0, n) (Lemire's multiply-and-reject). n must be > 0.
  std::uint64_t index(std::uint64_t n) {
    __uint128_t m = static_cast<__uint128_t>(next()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<__uint128_t>(next()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  static constexpr std::uint64_t splitmix64(std::uint64_t& x) {
    std::uint64_t z = (x += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // FNV-1a.
  static constexpr std::uint64_t label_hash(std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : label) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return h;
  }

 private:
  static constexpr std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4]{};
};

namespace stream {
inline constexpr std::string_view kDeployment = "deployment";
inline constexpr std::string_view kMobility = "mobility";
inline constexpr std::string_view kWalk = "walk";
inline constexpr std::string_view kHarness = "harness";
}  // namespace stream

}  // namespace srw
