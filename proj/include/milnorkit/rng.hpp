#pragma once

#include <cstdint>

namespace milnorkit {

// splitmix64: the reference 64-bit state-increment generator.  Chosen because
// the whole algorithm fits in four lines that cannot drift between platforms;
// every sampled run is replayable from (seed, sample index) alone.
struct SplitMix64 {
  uint64_t state = 0;

  uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Unbiased draw in [0, bound) by rejection.
  uint64_t below(uint64_t bound) {
    uint64_t threshold = -bound % bound;
    for (;;) {
      uint64_t x = next();
      if (x >= threshold) return x % bound;
    }
  }
};

// Per-sample stream: offset the seed along the same increment the generator
// uses internally, then burn one output so nearby indices decorrelate.
inline SplitMix64 substream(uint64_t seed, uint64_t index) {
  SplitMix64 s{seed ^ (0x9E3779B97F4A7C15ULL * (index + 1))};
  s.next();
  return s;
}

}  // namespace milnorkit
