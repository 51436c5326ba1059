#pragma once

#include <cstdint>
#include <random>

namespace eslab {

/// Seeded random source with explicit, portable draw semantics.
///
/// std::mt19937_64 is bit-stable across platforms, but the standard
/// distributions are not; every draw used by the lab goes through the
/// helpers below so that a seed pins byte-identical outputs everywhere.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next_u64() { return gen_(); }

  /// Uniform double in [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Uniform integer in [0, n). Rejection-sampled, no modulo bias.
  int uniform_int(int n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % bound;
    std::uint64_t x;
    do {
      x = gen_();
    } while (x >= limit);
    return static_cast<int>(x % bound);
  }

 private:
  std::mt19937_64 gen_;
};

/// splitmix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Combines a base seed with stream labels, e.g. (seed, kind, index).
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a,
                                 std::uint64_t b = 0) {
  return mix64(mix64(mix64(seed) ^ a) ^ b);
}

/// Stream labels for the lab's RNG derivations.
namespace stream {
inline constexpr std::uint64_t kEpisode = 0x45505349ULL;   // layout + exploration
inline constexpr std::uint64_t kInit = 0x494e4954ULL;      // weight init
inline constexpr std::uint64_t kReplay = 0x5245504cULL;    // minibatch sampling
inline constexpr std::uint64_t kEval = 0x4556414cULL;      // greedy evaluation
inline constexpr std::uint64_t kBench = 0x42454e43ULL;     // bench simulations
inline constexpr std::uint64_t kOracle = 0x4f52434cULL;    // oracle layouts
}  // namespace stream

}  // namespace eslab
