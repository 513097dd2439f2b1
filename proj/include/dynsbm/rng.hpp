#pragma once

#include <cstdint>

// Counter-based random streams. Every draw is a pure function of
// (seed, stream, counter), so pair-level sampling can run in any order
// (or in parallel) and still produce bit-identical sequences.

namespace dynsbm {

// SplitMix64 finalizer (Steele, Lea, Flood 2014).
inline std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t hash3(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  return mix64(a ^ mix64(b ^ mix64(c)));
}

// Uniform in [0, 1) with 53 random bits.
inline double to_unit(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// Stream tags keep independent purposes on non-overlapping keys. The time
// index (or run index) is folded into the low bits.
enum class Stream : std::uint64_t {
  InitialMembership = 1,
  Edge = 2,
  MembershipChange = 3,
  MinoritySelect = 4,
  NoisyLabel = 5,
  NoisyTarget = 6,
  Kmeans = 7,
  MonteCarlo = 8,
  ParamDraw = 9,
};

inline std::uint64_t stream_key(Stream s, std::uint64_t index = 0) {
  return (static_cast<std::uint64_t>(s) << 48) ^ index;
}

inline double uniform_at(std::uint64_t seed, Stream s, std::uint64_t index,
                         std::uint64_t counter) {
  return to_unit(hash3(seed, stream_key(s, index), counter));
}

// Sequential view of a counter stream, for inherently ordered draws
// (k-means seeding, Fisher-Yates shuffles).
class SeqRng {
 public:
  SeqRng(std::uint64_t seed, Stream s, std::uint64_t index = 0)
      : seed_(seed), key_(stream_key(s, index)) {}

  std::uint64_t next() { return hash3(seed_, key_, counter_++); }

  double uniform() { return to_unit(next()); }

  // Uniform integer in [0, bound). Fixed-point multiply keeps it exact
  // and branch-free; bound must be positive.
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

}  // namespace dynsbm
