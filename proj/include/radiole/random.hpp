#pragma once

#include <cstdint>
#include <limits>

namespace radiole {

/// Purpose tags that separate independent random decisions. Any two draws
/// with different tags are independent even at the same (node, round).
namespace purpose {
inline constexpr std::uint64_t kProtocol = 1;
inline constexpr std::uint64_t kCandidate = 2;
inline constexpr std::uint64_t kIdentifier = 3;
inline constexpr std::uint64_t kDecay = 4;
inline constexpr std::uint64_t kFastDecay = 5;
inline constexpr std::uint64_t kSharedCluster = 6;
inline constexpr std::uint64_t kCodeGeneration = 7;
inline constexpr std::uint64_t kCodeSample = 8;
inline constexpr std::uint64_t kGraph = 9;
inline constexpr std::uint64_t kTrial = 10;
inline constexpr std::uint64_t kUnclusteredDecay = 11;
}  // namespace purpose

/// splitmix64 output function; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Sequential generator (splitmix64) satisfying UniformRandomBitGenerator,
/// for bulk sampling where per-draw keying is not needed.
class Stream {
 public:
  using result_type = std::uint64_t;
  explicit Stream(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
  result_type operator()() {
    state_ += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() { return to_unit((*this)()); }

 private:
  std::uint64_t state_;
};

/// Counter-based randomness keyed by (trial, purpose, node, round).
///
/// Every draw is a pure function of its key, so the order in which nodes are
/// visited, or whether a draw is evaluated at all, never changes any other
/// draw.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t master_seed = 0, std::uint64_t trial = 0)
      : master_seed_(master_seed), trial_(trial), key_(mix64(mix64(master_seed) ^ (trial * 0xD6E8FEB86659FD93ULL))) {}

  std::uint64_t master_seed() const { return master_seed_; }
  std::uint64_t trial() const { return trial_; }
  RandomSource for_trial(std::uint64_t trial) const { return RandomSource(master_seed_, trial); }

  std::uint64_t bits(std::uint64_t tag, std::uint64_t node, std::uint64_t round) const {
    std::uint64_t h = mix64(key_ ^ (tag * 0xA24BAED4963EE407ULL));
    h = mix64(h ^ (node * 0x9FB21C651E98DF25ULL));
    return mix64(h ^ round);
  }
  double uniform(std::uint64_t tag, std::uint64_t node, std::uint64_t round) const {
    return to_unit(bits(tag, node, round));
  }
  bool bernoulli(double p, std::uint64_t tag, std::uint64_t node, std::uint64_t round) const {
    return uniform(tag, node, round) < p;
  }
  /// True with probability exactly 2^-exponent (exponent <= 64).
  bool coin_pow2(unsigned exponent, std::uint64_t tag, std::uint64_t node, std::uint64_t round) const {
    if (exponent == 0) return true;
    const std::uint64_t x = bits(tag, node, round);
    if (exponent >= 64) return x == 0;
    return (x & ((std::uint64_t{1} << exponent) - 1)) == 0;
  }
  Stream stream(std::uint64_t tag, std::uint64_t a, std::uint64_t b = 0) const { return Stream(bits(tag, a, b)); }

 private:
  std::uint64_t master_seed_;
  std::uint64_t trial_;
  std::uint64_t key_;
};

}  // namespace radiole
