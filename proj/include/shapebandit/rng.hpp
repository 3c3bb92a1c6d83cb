#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <string_view>

namespace shapebandit {

// splitmix64 step; used both as a stream deriver and as a seed scrambler.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Sub-stream seed for (master, purpose-tag, index). Adding new tags or indices
// never perturbs existing streams.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view tag, std::uint64_t index) {
  std::uint64_t s = master;
  std::uint64_t a = splitmix64(s);
  s ^= fnv1a64(tag);
  std::uint64_t b = splitmix64(s);
  s ^= index * 0x9e3779b97f4a7c15ULL;
  std::uint64_t c = splitmix64(s);
  return a ^ (b << 1) ^ c;
}

// mt19937_64 with hand-rolled draw helpers so that all outputs are a pure
// function of the seed (std::normal_distribution keeps hidden spare state and
// is not bit-stable across standard libraries).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in {0, ..., n-1}; n >= 1.
  std::uint64_t uniform_int(std::uint64_t n) {
    // Rejection sampling for exact uniformity.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  bool bernoulli(double p) { return uniform01() < p; }

  // Standard normal via Box-Muller (one value per call, no cached spare).
  double normal() {
    double u1 = 1.0 - uniform01();  // (0, 1]
    double u2 = uniform01();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace shapebandit
