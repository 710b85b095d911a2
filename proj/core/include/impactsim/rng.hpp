#pragma once

// SplitMix64 with counter-addressable substreams.  Trial i of a run draws
// only from the engine returned by trial_substream(seed, i), whose initial
// state is the i-th raw output of a master SplitMix64 seeded with the run
// seed.  Substream derivation is O(1) in i, so disjoint trial ranges can be
// generated in parallel and merged byte-identically to sequential output.

#include <cstdint>

namespace impactsim {

class SplitMix64 {
 public:
  explicit constexpr SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr std::uint64_t kGamma = 0x9e3779b97f4a7c15ull;

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  constexpr std::uint64_t next() { return mix(state_ += kGamma); }

  // 53-bit uniform in [0, 1).
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

inline constexpr SplitMix64 trial_substream(std::uint64_t seed, std::uint64_t trial) {
  // i-th output of a master SplitMix64 seeded with `seed`, computed directly.
  return SplitMix64(SplitMix64::mix(seed + (trial + 1) * SplitMix64::kGamma));
}

}  // namespace impactsim
