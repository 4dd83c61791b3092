#pragma once

#include <bit>
#include <cstdint>

namespace hdlab {

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline uint64_t mix2(uint64_t a, uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

inline int ceil_log2(uint64_t v) {
  if (v <= 1) return 0;
  return 64 - std::countl_zero(v - 1);
}

/// Shared public-coin tape. Both parties of a session draw from one tape in
/// lockstep; identical seed gives an identical draw sequence, and every draw
/// is counted so CostReport.random_bits_drawn is exact.
class RandomTape {
 public:
  explicit RandomTape(uint64_t seed) : seed_(seed) {}

  uint64_t seed() const { return seed_; }
  uint64_t bits_drawn() const { return bits_drawn_; }

  uint64_t next_bits(int k) {
    if (k == 0) return 0;
    if (buffered_ < k) refill();
    uint64_t v = (k >= 64) ? buffer_ : (buffer_ & ((uint64_t{1} << k) - 1));
    buffer_ >>= (k >= 64) ? 63 : k;  // shift by 64 is UB; k==64 empties below
    if (k >= 64) buffer_ = 0;
    buffered_ -= k;
    bits_drawn_ += k;
    return v;
  }

  bool next_bit() { return next_bits(1) != 0; }

  /// Uniform draw on [0, range). Ranges are rounded up to a power of two and
  /// rejection-sampled so the stated range is honored exactly.
  uint64_t uniform(uint64_t range) {
    if (range <= 1) return 0;
    int b = ceil_log2(range);
    for (;;) {
      uint64_t v = next_bits(b);
      if (v < range) return v;
    }
  }

 private:
  void refill() {
    // 64 fresh bits; anything left in the buffer is discarded (draws stay
    // aligned, the discarded bits are not counted as drawn).
    buffer_ = splitmix64(seed_ ^ (0xa0761d6478bd642full * ++word_index_));
    buffered_ = 64;
  }

  uint64_t seed_;
  uint64_t word_index_ = 0;
  uint64_t buffer_ = 0;
  int buffered_ = 0;
  uint64_t bits_drawn_ = 0;
};

/// Per-trial tape seed: seed xor trial index.
inline uint64_t trial_seed(uint64_t seed, uint64_t trial) { return seed ^ trial; }

// ---------------------------------------------------------------------------
// Tape-seeded hash families. A protocol draws a 64-bit salt from the tape and
// then evaluates the induced function on arbitrary values; both parties see
// the same salt, so they agree on every evaluation.
// ---------------------------------------------------------------------------

inline uint64_t hash64(uint64_t salt, uint64_t value) { return mix2(salt, value); }

/// Uniform on [0, range) as a function of (salt, value): rejection sampling
/// over a counter-extended stream, mirroring RandomTape::uniform.
inline uint64_t bounded_hash(uint64_t salt, uint64_t value, uint64_t range) {
  if (range <= 1) return 0;
  int b = ceil_log2(range);
  uint64_t mask = (b >= 64) ? ~uint64_t{0} : ((uint64_t{1} << b) - 1);
  for (uint64_t ctr = 0;; ++ctr) {
    uint64_t v = mix2(salt + 0x632be59bd9b4e019ull * ctr, value) & mask;
    if (v < range) return v;
  }
}

/// len pseudorandom bits (len <= 64) as a function of (salt, value).
inline uint64_t hash_bits(uint64_t salt, uint64_t value, int len) {
  uint64_t v = mix2(salt, value);
  return (len >= 64) ? v : (v & ((uint64_t{1} << len) - 1));
}

}  // namespace hdlab
