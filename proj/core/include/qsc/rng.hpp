#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qsc {

/// Deterministic seeded generator.  Substream k of master seed s is seeded
/// with splitmix64(s + k), which is the splitting rule recorded in protocol
/// transcripts; identical seeds replay identical runs bit for bit.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(splitmix64(seed)) {}

  std::uint64_t seed() const { return seed_; }

  Rng substream(std::uint64_t k) const { return Rng(seed_ + 0x9e3779b97f4a7c15ull * (k + 1)); }

  /// Uniform double in [0, 1) with 53 random bits; avoids the
  /// implementation-defined std distributions so output is portable.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  std::uint64_t next_u64() { return engine_(); }

  /// Index sampled proportionally to the (nonnegative) weights.
  int categorical(const std::vector<double>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double r = uniform() * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      acc += weights[i];
      if (r < acc) return static_cast<int>(i);
    }
    return static_cast<int>(weights.size()) - 1;
  }

  static std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

}  // namespace qsc
