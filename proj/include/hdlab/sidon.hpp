#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "hdlab/errors.hpp"
#include "hdlab/protocol.hpp"
#include "hdlab/random.hpp"

namespace hdlab {

/// k-Sidon encoding of l-bit payloads into s = 2kl+1 bits: XORs of up to k
/// distinct codewords identify the underlying payload set. Small payload
/// spaces use an explicit table (verifiable exhaustively); large ones use a
/// seeded generator evaluated on demand.
struct SidonEncoding {
  int payload_bits = 0;  // l
  int order = 0;         // k
  int width = 0;         // s
  uint64_t seed = 0;
  std::vector<std::vector<uint64_t>> table;  // empty when lazy

  size_t words() const { return static_cast<size_t>((width + 63) / 64); }
  uint64_t payload_space() const { return uint64_t{1} << payload_bits; }
  bool lazy() const { return table.empty(); }

  std::vector<uint64_t> encode(uint64_t payload) const {
    if (!lazy()) return table[payload];
    std::vector<uint64_t> out(words());
    fill_words(payload, out.data());
    return out;
  }

  void xor_into(std::vector<uint64_t>& acc, uint64_t payload) const {
    if (!lazy()) {
      const auto& row = table[payload];
      for (size_t i = 0; i < row.size(); ++i) acc[i] ^= row[i];
      return;
    }
    uint64_t tmp[16];
    fill_words(payload, tmp);
    for (size_t i = 0; i < words(); ++i) acc[i] ^= tmp[i];
  }

 private:
  void fill_words(uint64_t payload, uint64_t* out) const {
    size_t nw = words();
    for (size_t i = 0; i < nw; ++i) out[i] = mix2(seed + i * 0x9e3779b97f4a7c15ull, payload);
    int tail = width % 64;
    if (tail) out[nw - 1] &= (uint64_t{1} << tail) - 1;
  }
};

inline int sidon_width(int l, int k) { return 2 * k * l + 1; }

struct SidonCounterexample {
  std::vector<uint64_t> u, v;
};

constexpr uint64_t kSidonVerifyGuard = uint64_t{1} << 21;

namespace detail {

inline uint64_t subset_count_upto(uint64_t p, int k) {
  // sum of C(p, j) for j <= k, saturating well above the guard
  long double total = 0, c = 1;
  for (int j = 0; j <= k; ++j) {
    total += c;
    if (total > 1e18L) return ~uint64_t{0};
    c = c * static_cast<long double>(p - j) / static_cast<long double>(j + 1);
  }
  return static_cast<uint64_t>(total);
}

}  // namespace detail

/// Exhaustive Sidon check over all payload subsets of size <= k. Returns the
/// first colliding pair (U, V) verbatim, or nullopt on pass.
inline std::optional<SidonCounterexample> verify_sidon(const SidonEncoding& enc, int k) {
  uint64_t p = enc.payload_space();
  uint64_t count = detail::subset_count_upto(p, k);
  if (count > kSidonVerifyGuard) throw CapacityError("verify_sidon", count, kSidonVerifyGuard);

  std::map<std::vector<uint64_t>, std::vector<uint64_t>> seen;  // xor value -> subset
  std::vector<uint64_t> subset;
  std::vector<uint64_t> acc(enc.words(), 0);
  std::optional<SidonCounterexample> result;

  // Enumerate subsets by cardinality, then lexicographically, maintaining the
  // running XOR; the first collision reported is the smallest one.
  auto rec = [&](auto&& self, uint64_t start, int remaining) -> void {
    if (result) return;
    if (remaining == 0) {
      auto [it, fresh] = seen.try_emplace(acc, subset);
      if (!fresh) result = SidonCounterexample{it->second, subset};
      return;
    }
    for (uint64_t u = start; u + remaining <= p && !result; ++u) {
      enc.xor_into(acc, u);
      subset.push_back(u);
      self(self, u + 1, remaining - 1);
      subset.pop_back();
      enc.xor_into(acc, u);
    }
  };
  for (int size = 0; size <= k && !result; ++size) rec(rec, 0, size);
  return result;
}

constexpr int kSidonTableGuardBits = 22;
constexpr int kSidonResampleBudget = 64;

/// Random-table k-Sidon encoding of width 2kl+1. When the payload space is
/// small enough to enumerate (2^l <= 64) the table is verified exhaustively,
/// resampling until valid; existence is guaranteed, so a budget overrun
/// signals a generator defect rather than bad luck.
inline SidonEncoding build_sidon(int l, int k, uint64_t seed) {
  if (l < 1 || k < 1) throw ShapeError("build_sidon: need l >= 1, k >= 1");
  if (l > kSidonTableGuardBits)
    throw CapacityError("build_sidon", uint64_t{1} << l, uint64_t{1} << kSidonTableGuardBits);
  SidonEncoding enc;
  enc.payload_bits = l;
  enc.order = k;
  enc.width = sidon_width(l, k);
  for (int attempt = 0; attempt < kSidonResampleBudget; ++attempt) {
    enc.seed = mix2(seed, attempt);
    enc.table.assign(enc.payload_space(), {});
    RandomTape tape(enc.seed);
    for (uint64_t u = 0; u < enc.payload_space(); ++u) {
      std::vector<uint64_t> row(enc.words());
      for (auto& w : row) w = tape.next_bits(64);
      int tail = enc.width % 64;
      if (tail) row.back() &= (uint64_t{1} << tail) - 1;
      enc.table[u] = std::move(row);
    }
    if (enc.payload_space() > 64) return enc;  // beyond the exhaustive-check guard
    if (!verify_sidon(enc, k)) return enc;
  }
  throw std::runtime_error("build_sidon: verification budget exhausted (generator defect?)");
}

/// Seeded lazy encoding for protocol use at payload widths where a table
/// cannot be materialized. Same widths as build_sidon.
inline SidonEncoding lazy_sidon(int l, int k, uint64_t seed) {
  if (l < 1 || k < 1) throw ShapeError("lazy_sidon: need l >= 1, k >= 1");
  SidonEncoding enc;
  enc.payload_bits = l;
  enc.order = k;
  enc.width = sidon_width(l, k);
  enc.seed = seed;
  if (enc.words() > 16) throw CapacityError("lazy_sidon", enc.words(), 16);
  return enc;
}

// ---------------------------------------------------------------------------
// XOR exchange
// ---------------------------------------------------------------------------

/// One Sidon XOR exchange between the two parties. Each side accumulates the
/// XOR of its encoded payloads; the exchange costs 2*width bits. Decoding is
/// done by the engine from both parties' payload multisets (the value an
/// unbounded party would extract: the odd-multiplicity payload set, which the
/// Sidon property makes the unique preimage when its size is within order).
class SidonExchange {
 public:
  explicit SidonExchange(const SidonEncoding* enc)
      : enc_(enc), acc_a_(enc->words(), 0), acc_b_(enc->words(), 0) {}

  void add_a(uint64_t payload) {
    enc_->xor_into(acc_a_, payload);
    payloads_.push_back(payload);
  }
  void add_b(uint64_t payload) {
    enc_->xor_into(acc_b_, payload);
    payloads_.push_back(payload);
  }

  /// Runs the exchange: both parties send their accumulator. Returns the
  /// recovered payload set in canonical (sorted) order, or nullopt when the
  /// odd-multiplicity set exceeds the encoding order (decode failure).
  std::optional<std::vector<uint64_t>> exchange(Session& s) {
    s.send('A', enc_->width);
    s.send('B', enc_->width);
    std::sort(payloads_.begin(), payloads_.end());
    std::vector<uint64_t> odd;
    for (size_t i = 0; i < payloads_.size();) {
      size_t j = i;
      while (j < payloads_.size() && payloads_[j] == payloads_[i]) ++j;
      if ((j - i) % 2 == 1) odd.push_back(payloads_[i]);
      i = j;
    }
    if (odd.size() > static_cast<size_t>(enc_->order)) {
      if (s.instrument()) s.note("sidon_decode_overflow");
      return std::nullopt;
    }
    if (s.instrument()) {
      // The decoded set must reproduce the exchanged XOR exactly.
      std::vector<uint64_t> check(enc_->words(), 0);
      for (uint64_t u : odd) enc_->xor_into(check, u);
      for (size_t i = 0; i < check.size(); ++i)
        if (check[i] != (acc_a_[i] ^ acc_b_[i])) {
          s.note("sidon_recovery_mismatch");
          break;
        }
      s.note("sidon_recovery_checked");
    }
    return odd;
  }

 private:
  const SidonEncoding* enc_;
  std::vector<uint64_t> acc_a_, acc_b_;
  std::vector<uint64_t> payloads_;
};

}  // namespace hdlab
