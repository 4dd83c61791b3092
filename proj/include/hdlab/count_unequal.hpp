#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "hdlab/bits.hpp"
#include "hdlab/protocol.hpp"
#include "hdlab/sidon.hpp"

namespace hdlab {

/// Output code for the counting protocols when more than r blocks differ.
constexpr int kMoreThanR = -3;

struct CountParams {
  int r = 1;
  double delta = 0.125;
  uint64_t label_range = 0;  // per-coordinate labels h(j) ~ [ceil(5 r^2 / delta)]
  uint64_t hash_range = 0;   // per-value hashes ~ [ceil(10 r / delta)]
  int payload_bits = 0;
  int sidon_width = 0;  // 2r-Sidon over label||hash payloads
};

inline CountParams derive_count_params(int r, double delta) {
  if (r < 1) throw ShapeError("count_unequal_blocks: need r >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ShapeError("count_unequal_blocks: delta in (0,1)");
  CountParams p;
  p.r = r;
  p.delta = delta;
  p.label_range = static_cast<uint64_t>(std::ceil(5.0 * r * r / delta));
  p.hash_range = static_cast<uint64_t>(std::ceil(10.0 * r / delta));
  p.payload_bits = ceil_log2(p.label_range) + ceil_log2(p.hash_range);
  p.sidon_width = sidon_width(p.payload_bits, 2 * r);
  return p;
}

struct CountResult {
  bool more_than_r = false;
  size_t count = 0;
  std::vector<uint64_t> labels;  // recovered label set, canonical order

  int as_output() const { return more_than_r ? kMoreThanR : static_cast<int>(count); }
};

/// Core of the counting protocol over any block sequence, given 64-bit
/// content keys per block. Each coordinate gets a random label and each value
/// a random hash; one 2r-Sidon XOR exchange recovers the label/hash set of
/// the differing coordinates, whose label count is |Delta| unless a collision
/// occurred (probability <= delta). Costs 2 * sidon_width bits regardless of
/// n or the block contents.
template <typename KeyA, typename KeyB>
inline CountResult count_unequal_core(size_t n, KeyA&& key_a, KeyB&& key_b,
                                      const CountParams& p, Session& s) {
  std::vector<uint64_t> labels(n);
  for (size_t j = 0; j < n; ++j) labels[j] = s.tape().uniform(p.label_range);
  uint64_t hash_salt = s.tape().next_bits(64);
  uint64_t enc_seed = s.tape().next_bits(64);

  SidonEncoding enc = lazy_sidon(p.payload_bits, 2 * p.r, enc_seed);
  SidonExchange ex(&enc);
  int hash_bits_count = ceil_log2(p.hash_range);
  for (size_t j = 0; j < n; ++j) {
    uint64_t ha = bounded_hash(mix2(hash_salt, j), key_a(j), p.hash_range);
    uint64_t hb = bounded_hash(mix2(hash_salt, j), key_b(j), p.hash_range);
    ex.add_a((labels[j] << hash_bits_count) | ha);
    ex.add_b((labels[j] << hash_bits_count) | hb);
  }
  auto recovered = ex.exchange(s);

  CountResult res;
  if (!recovered) {
    res.more_than_r = true;
    return res;
  }
  for (uint64_t payload : *recovered) {
    uint64_t label = payload >> hash_bits_count;
    if (res.labels.empty() || res.labels.back() != label) res.labels.push_back(label);
  }
  // recovered payloads are sorted, so equal labels are adjacent
  res.count = res.labels.size();
  if (res.count > static_cast<size_t>(p.r)) {
    res.more_than_r = true;
    res.labels.clear();
    res.count = 0;
  }
  return res;
}

/// The large-alphabet difference counter as a runnable protocol over blocked
/// strings: with probability >= 1-delta returns |Delta| exactly when
/// |Delta| <= r, and kMoreThanR otherwise.
inline SymmetricProtocol<BlockedString> count_unequal_blocks(int r, double delta) {
  CountParams params = derive_count_params(r, delta);
  SymmetricProtocol<BlockedString> p;
  p.name = "count_unequal[r=" + std::to_string(r) + "]";
  p.oblivious = true;
  p.run = [params](const BlockedString& x, const BlockedString& y, Session& s) {
    x.require_same_shape(y, "count_unequal_blocks");
    auto res = count_unequal_core(
        x.block_count(), [&](size_t j) { return x.blocks[j].fold_key(); },
        [&](size_t j) { return y.blocks[j].fold_key(); }, params, s);
    return res.as_output();
  };
  return p;
}

}  // namespace hdlab
