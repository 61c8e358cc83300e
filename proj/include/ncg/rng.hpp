#pragma once

#include <cstdint>

// Counter-based randomness.
//
// Every random decision in the library is drawn from a SplitMix64 stream whose
// seed is derived from a master seed plus a tuple of integer ids (trial, round,
// vertex, ...) through the SplitMix64 finalizer. Streams keyed by distinct
// tuples are statistically independent, so trials and per-vertex draws can be
// generated in any order (or concurrently) and still reproduce bit-identically
// from the master seed.

namespace ncg {

inline uint64_t sm64_finalize(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

// Fold one id into a stream key.
inline uint64_t mix64(uint64_t key, uint64_t id) {
  return sm64_finalize(key + 0x9e3779b97f4a7c15ull * (id + 1));
}

template <class... Ids>
uint64_t stream_key(uint64_t seed, Ids... ids) {
  uint64_t key = seed;
  ((key = mix64(key, static_cast<uint64_t>(ids))), ...);
  return key;
}

class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    return sm64_finalize(z);
  }

  // Uniform double in [0, 1) with 53 random bits.
  double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  // Unbiased uniform integer in [0, bound) via rejection.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }

 private:
  uint64_t state_;
};

template <class... Ids>
SplitMix64 substream(uint64_t seed, Ids... ids) {
  return SplitMix64(stream_key(seed, ids...));
}

}  // namespace ncg
