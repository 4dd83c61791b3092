#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hdlab/errors.hpp"

namespace hdlab {

/// Fixed-length binary string. Bit i lives in word i/64 at position i%64
/// (little-endian within machine words); text form is ASCII 0/1 with bit 0
/// first, so ordering never depends on the in-memory layout.
class BitString {
 public:
  BitString() = default;

  explicit BitString(size_t len) : len_(len), words_((len + 63) / 64, 0) {}

  static BitString from_string(const std::string& s) {
    BitString b(s.size());
    for (size_t i = 0; i < s.size(); ++i) {
      if (s[i] == '1') {
        b.set(i, true);
      } else if (s[i] != '0') {
        throw ShapeError("BitString::from_string: character is not 0/1");
      }
    }
    return b;
  }

  static BitString from_mask(uint64_t mask, size_t len) {
    BitString b(len);
    if (len > 0) b.words_[0] = (len >= 64) ? mask : (mask & ((uint64_t{1} << len) - 1));
    return b;
  }

  size_t size() const { return len_; }
  bool empty() const { return len_ == 0; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set(size_t i, bool v) {
    uint64_t m = uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= m;
    } else {
      words_[i >> 6] &= ~m;
    }
  }

  void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  size_t weight() const {
    size_t w = 0;
    for (uint64_t x : words_) w += std::popcount(x);
    return w;
  }

  BitString operator^(const BitString& o) const {
    require_same_length(o, "xor");
    BitString r = *this;
    for (size_t i = 0; i < words_.size(); ++i) r.words_[i] ^= o.words_[i];
    return r;
  }

  bool operator==(const BitString& o) const { return len_ == o.len_ && words_ == o.words_; }
  bool operator!=(const BitString& o) const { return !(*this == o); }
  bool operator<(const BitString& o) const {
    if (len_ != o.len_) return len_ < o.len_;
    return std::lexicographical_compare(words_.rbegin(), words_.rend(),
                                        o.words_.rbegin(), o.words_.rend());
  }

  std::string to_string() const {
    std::string s(len_, '0');
    for (size_t i = 0; i < len_; ++i)
      if (get(i)) s[i] = '1';
    return s;
  }

  const std::vector<uint64_t>& words() const { return words_; }

  /// 1-positions in increasing order.
  std::vector<uint32_t> ones() const {
    std::vector<uint32_t> out;
    for (size_t w = 0; w < words_.size(); ++w) {
      uint64_t x = words_[w];
      while (x) {
        out.push_back(static_cast<uint32_t>(w * 64 + std::countr_zero(x)));
        x &= x - 1;
      }
    }
    return out;
  }

  /// Fold to 64 bits; used as a content key for tape-seeded hash functions.
  uint64_t fold_key() const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ (uint64_t)len_;
    for (uint64_t x : words_) {
      h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 0xbf58476d1ce4e5b9ull;
      h ^= h >> 31;
    }
    return h;
  }

  void require_same_length(const BitString& o, const char* op) const {
    if (len_ != o.len_)
      throw ShapeError(std::string(op) + ": length mismatch (" + std::to_string(len_) +
                       " vs " + std::to_string(o.len_) + ")");
  }

 private:
  size_t len_ = 0;
  std::vector<uint64_t> words_;
};

struct BitStringHash {
  size_t operator()(const BitString& b) const { return static_cast<size_t>(b.fold_key()); }
};

inline size_t hamming_distance(const BitString& x, const BitString& y) {
  x.require_same_length(y, "hamming_distance");
  size_t d = 0;
  const auto& xw = x.words();
  const auto& yw = y.words();
  for (size_t i = 0; i < xw.size(); ++i) d += std::popcount(xw[i] ^ yw[i]);
  return d;
}

inline BitString concat(const BitString& a, const BitString& b) {
  BitString r(a.size() + b.size());
  for (size_t i = 0; i < a.size(); ++i) r.set(i, a.get(i));
  for (size_t i = 0; i < b.size(); ++i) r.set(a.size() + i, b.get(i));
  return r;
}

/// d blocks of n bits each; inputs to the blocked Hamming-distance problems.
struct BlockedString {
  size_t block_len = 0;
  std::vector<BitString> blocks;

  BlockedString() = default;
  BlockedString(size_t count, size_t len) : block_len(len), blocks(count, BitString(len)) {}

  size_t block_count() const { return blocks.size(); }

  void check_block(const BitString& b) const {
    if (b.size() != block_len) throw ShapeError("BlockedString: block length mismatch");
  }

  void set_block(size_t i, const BitString& b) {
    check_block(b);
    blocks[i] = b;
  }

  BitString flatten() const {
    BitString r(block_count() * block_len);
    size_t off = 0;
    for (const auto& b : blocks) {
      for (size_t i = 0; i < block_len; ++i)
        if (b.get(i)) r.set(off + i, true);
      off += block_len;
    }
    return r;
  }

  void require_same_shape(const BlockedString& o, const char* op) const {
    if (block_len != o.block_len || blocks.size() != o.blocks.size())
      throw ShapeError(std::string(op) + ": blocked shape mismatch");
  }

  bool operator==(const BlockedString& o) const {
    return block_len == o.block_len && blocks == o.blocks;
  }

  /// Text form: blocks joined by '|'.
  std::string to_string() const {
    std::string s;
    for (size_t i = 0; i < blocks.size(); ++i) {
      if (i) s += '|';
      s += blocks[i].to_string();
    }
    return s;
  }

  static BlockedString from_string(const std::string& s) {
    BlockedString r;
    size_t pos = 0;
    while (pos <= s.size()) {
      size_t bar = s.find('|', pos);
      std::string part = s.substr(pos, bar == std::string::npos ? bar : bar - pos);
      r.blocks.push_back(BitString::from_string(part));
      if (bar == std::string::npos) break;
      pos = bar + 1;
    }
    if (r.blocks.empty()) throw ShapeError("BlockedString::from_string: empty");
    r.block_len = r.blocks[0].size();
    for (const auto& b : r.blocks) r.check_block(b);
    return r;
  }
};

/// Multiset of the nonzero per-block distances, stored sorted.
struct DistanceSignature {
  std::vector<size_t> dists;  // sorted ascending, no zeros

  DistanceSignature() = default;
  DistanceSignature(std::initializer_list<size_t> v) : dists(v) {
    std::sort(dists.begin(), dists.end());
    for (size_t d : dists)
      if (d == 0) throw ShapeError("DistanceSignature: zero entry");
  }

  bool operator==(const DistanceSignature& o) const { return dists == o.dists; }
  bool operator!=(const DistanceSignature& o) const { return !(*this == o); }
  bool empty() const { return dists.empty(); }
  size_t total() const {
    size_t t = 0;
    for (size_t d : dists) t += d;
    return t;
  }

  std::string to_string() const {
    std::string s = "{";
    for (size_t i = 0; i < dists.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(dists[i]);
    }
    return s + "}";
  }
};

inline DistanceSignature distance_signature(const BlockedString& x, const BlockedString& y) {
  x.require_same_shape(y, "distance_signature");
  DistanceSignature sig;
  for (size_t i = 0; i < x.blocks.size(); ++i) {
    size_t d = hamming_distance(x.blocks[i], y.blocks[i]);
    if (d > 0) sig.dists.push_back(d);
  }
  std::sort(sig.dists.begin(), sig.dists.end());
  return sig;
}

// ---------------------------------------------------------------------------
// Hamming slice enumeration
// ---------------------------------------------------------------------------

constexpr int kSliceGuardN = 28;

inline uint64_t binomial(uint64_t n, uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  uint64_t r = 1;
  for (uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Streams the weight-w strings of length n as masks, in increasing numeric
/// order (Gosper's hack). Guarded at n <= 28.
class SliceEnumerator {
 public:
  SliceEnumerator(int n, int w) : n_(n), w_(w) {
    if (n <= 0 || w < 0 || w > n) throw ShapeError("slice_enumerate: need 0 <= w <= n, n > 0");
    if (n > kSliceGuardN)
      throw CapacityError("slice_enumerate", static_cast<unsigned long long>(n), kSliceGuardN);
    cur_ = (w == 0) ? 0 : ((uint64_t{1} << w) - 1);
    done_ = false;
  }

  std::optional<uint64_t> next() {
    if (done_) return std::nullopt;
    uint64_t out = cur_;
    if (w_ == 0) {
      done_ = true;
      return out;
    }
    uint64_t c = cur_ & (~cur_ + 1);
    uint64_t r = cur_ + c;
    uint64_t next = (((r ^ cur_) >> 2) / c) | r;
    if (next >= (uint64_t{1} << n_)) {
      done_ = true;
    } else {
      cur_ = next;
    }
    return out;
  }

  int n() const { return n_; }
  int w() const { return w_; }

 private:
  int n_, w_;
  uint64_t cur_;
  bool done_;
};

template <typename Fn>
inline void slice_for_each(int n, int w, Fn&& fn) {
  SliceEnumerator e(n, w);
  while (auto m = e.next()) fn(*m);
}

/// Materializes the slice; additionally guarded on the count itself.
inline std::vector<BitString> slice_strings(int n, int w) {
  uint64_t count = binomial(n, w);
  constexpr uint64_t kMaterializeGuard = uint64_t{1} << 22;
  if (count > kMaterializeGuard) throw CapacityError("slice_strings", count, kMaterializeGuard);
  std::vector<BitString> out;
  out.reserve(count);
  slice_for_each(n, w, [&](uint64_t m) { out.push_back(BitString::from_mask(m, n)); });
  return out;
}

// ---------------------------------------------------------------------------
// Ground truth for the named problems
// ---------------------------------------------------------------------------

/// Output alphabet conventions shared across the lab: protocols and truth
/// functions return small non-negative ints; kBot is the composed problems'
/// "more than r differences" output; kGapStar marks a GapHD promise gap.
constexpr int kBot = -1;
constexpr int kGapStar = -2;

inline int truth_hd(size_t k, const BitString& x, const BitString& y) {
  return hamming_distance(x, y) == k ? 1 : 0;
}

/// 1 iff exactly two unequal blocks, each at distance k.
inline int truth_hdkk(size_t k, const BlockedString& x, const BlockedString& y) {
  DistanceSignature want{k, k};
  return distance_signature(x, y) == want ? 1 : 0;
}

inline int truth_hd44(const BlockedString& x, const BlockedString& y) {
  return truth_hdkk(4, x, y);
}

inline int truth_gaphd(double gamma, const BitString& x, const BitString& y) {
  double d = static_cast<double>(hamming_distance(x, y));
  double n = static_cast<double>(x.size());
  if (d <= gamma * n) return 1;
  if (d >= (1.0 - gamma) * n) return 0;
  return kGapStar;
}

// ---------------------------------------------------------------------------
// Set families (ground set [n], sets as sorted index vectors)
// ---------------------------------------------------------------------------

struct SetFamily {
  int ground_n = 0;
  std::vector<std::vector<uint32_t>> sets;
  bool allow_duplicates = false;

  void add(std::vector<uint32_t> s) {
    std::sort(s.begin(), s.end());
    for (uint32_t e : s)
      if (static_cast<int>(e) >= ground_n) throw ShapeError("SetFamily: element out of range");
    if (!allow_duplicates) {
      for (const auto& t : sets)
        if (t == s) throw ShapeError("SetFamily: duplicate set");
    }
    sets.push_back(std::move(s));
  }

  size_t size() const { return sets.size(); }
};

inline std::vector<uint32_t> set_intersection(const std::vector<uint32_t>& a,
                                              const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline std::vector<uint32_t> set_union(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline std::vector<uint32_t> set_difference(const std::vector<uint32_t>& a,
                                            const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
  return r;
}

inline size_t symmdiff_size(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  size_t i = 0, j = 0, d = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) {
      ++i;
      ++j;
    } else if (a[i] < b[j]) {
      ++i;
      ++d;
    } else {
      ++j;
      ++d;
    }
  }
  return d + (a.size() - i) + (b.size() - j);
}

}  // namespace hdlab

template <>
struct std::hash<hdlab::BitString> {
  size_t operator()(const hdlab::BitString& b) const noexcept {
    return static_cast<size_t>(b.fold_key());
  }
};
