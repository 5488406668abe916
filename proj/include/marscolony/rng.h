#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace marscolony {

// SplitMix64 finalizer; used to derive independent seeds from (seed, label).
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// FNV-1a 64-bit.
constexpr std::uint64_t fnv1a64(std::string_view bytes,
                                std::uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Deterministic random stream. Wraps mt19937_64 (whose output sequence is
// fixed by the standard) and does its own range reduction, so draws are
// identical across standard library implementations.
class Rng {
 public:
  Rng() : Rng(0) {}
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  // Child stream for `label`, independent of how many draws were taken here.
  static Rng derive(std::uint64_t root_seed, std::string_view label) {
    return Rng(splitmix64(root_seed ^ splitmix64(fnv1a64(label))));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) {
    if (p <= 0.0) return false;
    if (p >= 1.0) return true;
    return uniform() < p;
  }

  // Uniform in [0, n); n must be > 0. Lemire's nearly-divisionless method.
  std::uint64_t below(std::uint64_t n) {
    unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
    auto low = static_cast<std::uint64_t>(m);
    if (low < n) {
      const std::uint64_t threshold = (0 - n) % n;
      while (low < threshold) {
        m = static_cast<unsigned __int128>(next_u64()) * n;
        low = static_cast<std::uint64_t>(m);
      }
    }
    return static_cast<std::uint64_t>(m >> 64);
  }

  // Uniform integer in the closed range [lo, hi].
  int uniform_int(int lo, int hi) {
    return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  friend bool operator==(const Rng&, const Rng&) = default;

 private:
  std::mt19937_64 engine_;
};

// One stream per simulation phase. Draws in one phase never shift another
// phase's sequence.
struct RngStreams {
  Rng init;
  Rng movement;
  Rng pairing;
  Rng interaction;
  Rng events;
  Rng arrivals;
  Rng stressor;
  Rng mortality;

  static RngStreams from_seed(std::uint64_t seed) {
    return RngStreams{
        Rng::derive(seed, "init"),     Rng::derive(seed, "movement"),
        Rng::derive(seed, "pairing"),  Rng::derive(seed, "interaction"),
        Rng::derive(seed, "events"),   Rng::derive(seed, "arrivals"),
        Rng::derive(seed, "stressor"), Rng::derive(seed, "mortality"),
    };
  }

  friend bool operator==(const RngStreams&, const RngStreams&) = default;
};

}  // namespace marscolony
