#pragma once

#include <bit>

#include "hdlab/bits.hpp"
#include "hdlab/protocol.hpp"

namespace hdlab {

/// One-sided equality test: b rounds of random inner-product fingerprints
/// over the shared tape, one bit sent by each party per round. Equal inputs
/// are always accepted; unequal inputs survive each round with probability
/// exactly 1/2, so the accept rate is 2^-b. Costs 2b bits, independent of n.
inline SymmetricProtocol<BitString> equality_protocol(int b) {
  if (b < 1) throw ShapeError("equality_protocol: need b >= 1");
  SymmetricProtocol<BitString> p;
  p.name = "equality[b=" + std::to_string(b) + "]";
  p.oblivious = true;
  p.run = [b](const BitString& x, const BitString& y, Session& s) {
    x.require_same_length(y, "equality_protocol");
    int agree = 1;
    size_t full = x.size() / 64;
    int tail = static_cast<int>(x.size() % 64);
    for (int j = 0; j < b; ++j) {
      // Both parties read the same random vector off the tape in lockstep.
      uint64_t pa = 0, pb = 0;
      for (size_t w = 0; w < full; ++w) {
        uint64_t r = s.tape().next_bits(64);
        pa ^= r & x.words()[w];
        pb ^= r & y.words()[w];
      }
      if (tail) {
        uint64_t r = s.tape().next_bits(tail);
        pa ^= r & x.words()[full];
        pb ^= r & y.words()[full];
      }
      int bit_a = std::popcount(pa) & 1;
      int bit_b = std::popcount(pb) & 1;
      s.send('A', 1);
      s.send('B', 1);
      if (bit_a != bit_b) agree = 0;
    }
    return agree;
  };
  return p;
}

}  // namespace hdlab
