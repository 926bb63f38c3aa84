#pragma once

#include <cstdint>

// Counter-based randomness ("sbmclique-rng v1").
//
// Every random quantity in the library is a pure function of a 64-bit seed
// and a small tuple of integer keys (a stream tag plus indices).  There is no
// mutable generator state shared between call sites, so sampling is
// order-independent and safe to parallelize: the draw for edge (i, j) is the
// same no matter which thread asks for it, or in which order.

namespace sbmclique::rng {

inline constexpr const char* kGeneratorName = "sbmclique-rng";
inline constexpr int kGeneratorVersion = 1;

// Stream tags keep unrelated uses of the same seed decorrelated.
enum class Stream : std::uint64_t {
  kAssignment = 1,
  kAssignmentResample = 2,
  kEdge = 3,
  kPairShuffle = 4,
  kReplicate = 5,
  kTrial = 6,
  kGeneric = 7,
};

// SplitMix64 finalizer; bijective on 64-bit words.
constexpr std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t key(std::uint64_t seed, Stream stream) {
  return mix(seed ^ mix(static_cast<std::uint64_t>(stream)));
}
constexpr std::uint64_t key(std::uint64_t seed, Stream stream, std::uint64_t a) {
  return mix(key(seed, stream) ^ a);
}
constexpr std::uint64_t key(std::uint64_t seed, Stream stream, std::uint64_t a,
                            std::uint64_t b) {
  return mix(key(seed, stream, a) ^ b);
}
constexpr std::uint64_t key(std::uint64_t seed, Stream stream, std::uint64_t a,
                            std::uint64_t b, std::uint64_t c) {
  return mix(key(seed, stream, a, b) ^ c);
}

constexpr double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

// Uniform draw in [0, 1) for one keyed counter.
constexpr double uniform(std::uint64_t seed, Stream stream, std::uint64_t a) {
  return to_unit(key(seed, stream, a));
}
constexpr double uniform(std::uint64_t seed, Stream stream, std::uint64_t a,
                         std::uint64_t b) {
  return to_unit(key(seed, stream, a, b));
}

// Small sequential engine for shuffles; seeded from a keyed counter so a
// shuffle is itself a pure function of (seed, keys).
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t x = state_;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
  }

  double uniform() { return to_unit(next()); }

  // Uniform integer in [0, bound) via 128-bit multiply (bias < 2^-64).
  std::uint64_t below(std::uint64_t bound) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next()) * bound) >> 64);
  }

 private:
  std::uint64_t state_;
};

}  // namespace sbmclique::rng
