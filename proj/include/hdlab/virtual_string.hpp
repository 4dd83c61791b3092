#pragma once

#include <cstdint>
#include <variant>
#include <vector>

#include "hdlab/bits.hpp"
#include "hdlab/codes.hpp"
#include "hdlab/errors.hpp"

namespace hdlab {

// A VirtualString declares a (possibly astronomically large) length and pairs
// with another VirtualString of the same scheme to yield an exact Hamming
// distance. This lets the indicator encodings of length 2^n flow through
// oracle queries without being materialized.

struct VsExplicit {
  BitString bits;
};

/// The flattened blocked string; distance sums per-block distances.
struct VsFlattened {
  const BlockedString* rows;
};

/// Per-block indicator code over the 2^block_len alphabet, concatenated.
/// Pairwise distance is 2 * (number of unequal blocks).
struct VsRowIndicator {
  const BlockedString* rows;
};

/// Per-block parity code, concatenated: one bit per block.
struct VsParityConcat {
  const BlockedString* rows;
};

/// Per-block application of an explicit code, concatenated. Each side carries
/// its own table so two-player codes pair E1 against E2.
struct VsCodeConcat {
  const BlockedString* rows;
  const Code* code;
};

/// Indicator code over a symbol string in [alphabet]^n.
struct VsSymbolIndicator {
  const std::vector<int>* symbols;
  int alphabet;
};

/// Per-coordinate F_d of symbol-code codewords, concatenated. Distances come
/// from the exact combinatorial count, never from materialized tuples.
struct VsFdConcat {
  const std::vector<const SymbolCode*>* codes;
  const std::vector<int>* symbols;
  int d;
};

struct VirtualString {
  std::variant<VsExplicit, VsFlattened, VsRowIndicator, VsParityConcat, VsCodeConcat,
               VsSymbolIndicator, VsFdConcat>
      payload;
  // Fixed-length suffix with a prefix of ones; lets a query shift the distance
  // by a known amount (|ones_a - ones_b|) to hit an oracle's fixed parameter.
  uint64_t pad_len = 0;
  uint64_t pad_ones = 0;
};

inline uint64_t ipow(uint64_t b, int e) {
  uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// |F_d(x) symdiff F_d(y)| = 2k^d - 2(k - a/2)^d for weight-k sets at
/// distance a (a is even since the weights agree).
inline uint64_t fd_distance_value(uint64_t k, uint64_t a, int d) {
  return 2 * ipow(k, d) - 2 * ipow(k - a / 2, d);
}

namespace detail {

struct VsLength {
  bool exact = true;
  uint64_t value = 0;
};

inline VsLength vs_payload_length(const VirtualString& v) {
  VsLength out;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, VsExplicit>) {
          out.value = p.bits.size();
        } else if constexpr (std::is_same_v<T, VsFlattened>) {
          out.value = p.rows->block_count() * p.rows->block_len;
        } else if constexpr (std::is_same_v<T, VsRowIndicator>) {
          if (p.rows->block_len >= 57) {
            out.exact = false;
          } else {
            out.value = p.rows->block_count() << p.rows->block_len;
          }
        } else if constexpr (std::is_same_v<T, VsParityConcat>) {
          out.value = p.rows->block_count();
        } else if constexpr (std::is_same_v<T, VsCodeConcat>) {
          out.value = p.rows->block_count() * p.code->m;
        } else if constexpr (std::is_same_v<T, VsSymbolIndicator>) {
          out.value = p.symbols->size() * static_cast<uint64_t>(p.alphabet);
        } else if constexpr (std::is_same_v<T, VsFdConcat>) {
          uint64_t total = 0;
          for (const SymbolCode* c : *p.codes) total += ipow(c->m, p.d);
          out.value = total;
        }
      },
      v.payload);
  return out;
}

}  // namespace detail

inline bool vs_length_exact(const VirtualString& v) { return detail::vs_payload_length(v).exact; }

inline uint64_t vs_length(const VirtualString& v) {
  auto l = detail::vs_payload_length(v);
  if (!l.exact) throw CapacityError("vs_length", 64, 57);
  return l.value + v.pad_len;
}

/// Exact Hamming distance of two virtual strings of the same scheme.
inline uint64_t vs_distance(const VirtualString& a, const VirtualString& b) {
  if (a.payload.index() != b.payload.index())
    throw ShapeError("vs_distance: scheme mismatch");
  if (a.pad_len != b.pad_len) throw ShapeError("vs_distance: pad length mismatch");
  uint64_t base = std::visit(
      [&](const auto& pa) -> uint64_t {
        using T = std::decay_t<decltype(pa)>;
        const auto& pb = std::get<T>(b.payload);
        if constexpr (std::is_same_v<T, VsExplicit>) {
          return hamming_distance(pa.bits, pb.bits);
        } else if constexpr (std::is_same_v<T, VsFlattened>) {
          pa.rows->require_same_shape(*pb.rows, "vs_distance");
          uint64_t d = 0;
          for (size_t i = 0; i < pa.rows->block_count(); ++i)
            d += hamming_distance(pa.rows->blocks[i], pb.rows->blocks[i]);
          return d;
        } else if constexpr (std::is_same_v<T, VsRowIndicator>) {
          pa.rows->require_same_shape(*pb.rows, "vs_distance");
          uint64_t unequal = 0;
          for (size_t i = 0; i < pa.rows->block_count(); ++i)
            if (!(pa.rows->blocks[i] == pb.rows->blocks[i])) ++unequal;
          return 2 * unequal;
        } else if constexpr (std::is_same_v<T, VsParityConcat>) {
          pa.rows->require_same_shape(*pb.rows, "vs_distance");
          uint64_t odd = 0;
          for (size_t i = 0; i < pa.rows->block_count(); ++i)
            if (hamming_distance(pa.rows->blocks[i], pb.rows->blocks[i]) % 2 == 1) ++odd;
          return odd;
        } else if constexpr (std::is_same_v<T, VsCodeConcat>) {
          pa.rows->require_same_shape(*pb.rows, "vs_distance");
          if (pa.code->m != pb.code->m) throw ShapeError("vs_distance: code widths differ");
          uint64_t d = 0;
          if (pa.code == pb.code && !pa.code->pair_dist.empty()) {
            for (size_t i = 0; i < pa.rows->block_count(); ++i)
              d += pa.code->codeword_distance(pa.code->index_of(pa.rows->blocks[i]),
                                              pb.code->index_of(pb.rows->blocks[i]));
          } else {
            for (size_t i = 0; i < pa.rows->block_count(); ++i)
              d += symmdiff_size(pa.code->codeword(pa.rows->blocks[i]),
                                 pb.code->codeword(pb.rows->blocks[i]));
          }
          return d;
        } else if constexpr (std::is_same_v<T, VsSymbolIndicator>) {
          if (pa.alphabet != pb.alphabet || pa.symbols->size() != pb.symbols->size())
            throw ShapeError("vs_distance: symbol shape mismatch");
          uint64_t unequal = 0;
          for (size_t i = 0; i < pa.symbols->size(); ++i)
            if ((*pa.symbols)[i] != (*pb.symbols)[i]) ++unequal;
          return 2 * unequal;
        } else if constexpr (std::is_same_v<T, VsFdConcat>) {
          if (pa.codes != pb.codes || pa.d != pb.d)
            throw ShapeError("vs_distance: Fd scheme mismatch");
          uint64_t d = 0;
          for (size_t i = 0; i < pa.symbols->size(); ++i) {
            const SymbolCode* c = (*pa.codes)[i];
            uint64_t a_i = c->distance((*pa.symbols)[i], (*pb.symbols)[i]);
            d += fd_distance_value(c->weight, a_i, pa.d);
          }
          return d;
        }
      },
      a.payload);
  uint64_t pad = (a.pad_ones > b.pad_ones) ? a.pad_ones - b.pad_ones : b.pad_ones - a.pad_ones;
  return base + pad;
}

// ---------------------------------------------------------------------------
// Materialization (tests only use this to check the evaluators against
// explicit strings at small sizes).
// ---------------------------------------------------------------------------

constexpr uint64_t kMaterializeGuardBits = uint64_t{1} << 26;

/// Tuple set F_d(s) = s^d as indices in [m]^d (row-major mixed radix).
inline std::vector<uint32_t> fd_tuple_set(const std::vector<uint32_t>& s, size_t m, int d) {
  uint64_t total = ipow(m, d);
  if (total > kMaterializeGuardBits) throw CapacityError("fd_tuple_set", total, kMaterializeGuardBits);
  std::vector<uint32_t> out;
  std::vector<size_t> pos(d, 0);
  out.reserve(ipow(s.size(), d));
  if (s.empty() && d > 0) return out;
  for (;;) {
    uint64_t idx = 0;
    for (int t = 0; t < d; ++t) idx = idx * m + s[pos[t]];
    out.push_back(static_cast<uint32_t>(idx));
    int t = d - 1;
    while (t >= 0 && ++pos[t] == s.size()) pos[t--] = 0;
    if (t < 0) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline BitString vs_materialize(const VirtualString& v) {
  uint64_t len = vs_length(v);
  if (len > kMaterializeGuardBits) throw CapacityError("vs_materialize", len, kMaterializeGuardBits);
  BitString out(len);
  uint64_t off = 0;
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, VsExplicit>) {
          for (size_t i = 0; i < p.bits.size(); ++i) out.set(i, p.bits.get(i));
          off = p.bits.size();
        } else if constexpr (std::is_same_v<T, VsFlattened>) {
          BitString f = p.rows->flatten();
          for (size_t i = 0; i < f.size(); ++i) out.set(i, f.get(i));
          off = f.size();
        } else if constexpr (std::is_same_v<T, VsRowIndicator>) {
          uint64_t block = uint64_t{1} << p.rows->block_len;
          for (size_t i = 0; i < p.rows->block_count(); ++i) {
            uint64_t sym = p.rows->blocks[i].words().empty() ? 0 : p.rows->blocks[i].words()[0];
            out.set(off + sym, true);
            off += block;
          }
        } else if constexpr (std::is_same_v<T, VsParityConcat>) {
          for (size_t i = 0; i < p.rows->block_count(); ++i)
            out.set(off++, p.rows->blocks[i].weight() % 2 == 1);
        } else if constexpr (std::is_same_v<T, VsCodeConcat>) {
          for (size_t i = 0; i < p.rows->block_count(); ++i) {
            for (uint32_t c : p.code->codeword(p.rows->blocks[i])) out.set(off + c, true);
            off += p.code->m;
          }
        } else if constexpr (std::is_same_v<T, VsSymbolIndicator>) {
          for (size_t i = 0; i < p.symbols->size(); ++i) {
            out.set(off + (*p.symbols)[i], true);
            off += p.alphabet;
          }
        } else if constexpr (std::is_same_v<T, VsFdConcat>) {
          for (size_t i = 0; i < p.symbols->size(); ++i) {
            const SymbolCode* c = (*p.codes)[i];
            for (uint32_t t : fd_tuple_set(c->codewords[(*p.symbols)[i]], c->m, p.d))
              out.set(off + t, true);
            off += ipow(c->m, p.d);
          }
        }
      },
      v.payload);
  for (uint64_t i = 0; i < v.pad_ones; ++i) out.set(off + i, true);
  return out;
}

}  // namespace hdlab
