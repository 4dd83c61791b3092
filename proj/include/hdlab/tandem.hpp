#pragma once

#include <memory>
#include <vector>

#include "hdlab/base_matrix.hpp"
#include "hdlab/codes.hpp"
#include "hdlab/oracle.hpp"

namespace hdlab {

/// The recovered multiset is inconsistent with the power sums: either a
/// corrupted input or a protocol defect.
struct InconsistentRecovery : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Equality-oracle protocol in tandem form: one query function per query
/// serves both parties, plus an output map over the q answers.
struct TandemProtocol {
  int q = 1;
  int alphabet = 2;                      // N
  std::vector<std::vector<int>> queries;  // q tables of size N
  std::vector<int> rho;                   // 2^q entries; bit i of the index = answer of query i

  int eval(int x, int y) const {
    int idx = 0;
    for (int i = 0; i < q; ++i)
      if (queries[i][x] == queries[i][y]) idx |= 1 << i;
    return rho[idx];
  }

  void validate() const {
    if (static_cast<int>(queries.size()) != q) throw ShapeError("TandemProtocol: q mismatch");
    for (const auto& t : queries)
      if (static_cast<int>(t.size()) != alphabet)
        throw ShapeError("TandemProtocol: query table size mismatch");
    if (rho.size() != (size_t{1} << q)) throw ShapeError("TandemProtocol: rho size mismatch");
  }
};

/// The partition-intersection family: q random colorings, an arbitrary output
/// map of the agreement pattern. Tandem by construction.
inline TandemProtocol partition_tandem(int q, int N, uint64_t seed, int colors = 0,
                                       int lambda = 2) {
  TandemProtocol t;
  t.q = q;
  t.alphabet = N;
  if (colors <= 0) colors = std::max(2, N / 2);
  for (int i = 0; i < q; ++i) {
    std::vector<int> table(N);
    for (int v = 0; v < N; ++v)
      table[v] = static_cast<int>(bounded_hash(mix2(seed, i * 131 + 7), v, colors));
    t.queries.push_back(std::move(table));
  }
  for (size_t a = 0; a < (size_t{1} << q); ++a)
    t.rho.push_back(static_cast<int>(bounded_hash(mix2(seed, 0xabc), a, lambda)));
  t.validate();
  return t;
}

/// Lemma-B.2 compilation: E_i(x) is the indicator of a_i(x) with every
/// coordinate duplicated 2^(i-1) times; the concatenation has weight 2^q - 1
/// and its distance encodes the query answers bitwise, so a fixed decode map
/// recovers the protocol output from the distance alone.
struct TandemCompiled {
  SymbolCode code;
  std::vector<int> rho;
  int q = 0;

  /// D(dist): query i answered equal iff bit (i-1) of dist/2 is 0.
  int decode_distance(uint64_t dist) const {
    uint64_t half = dist / 2;
    int idx = 0;
    for (int i = 0; i < q; ++i)
      if (((half >> i) & 1) == 0) idx |= 1 << i;
    return rho[idx];
  }
};

inline TandemCompiled tandem_to_code(const TandemProtocol& t) {
  t.validate();
  TandemCompiled out;
  out.q = t.q;
  out.rho = t.rho;
  out.code.alphabet = t.alphabet;
  out.code.weight = (size_t{1} << t.q) - 1;
  size_t m = 0;
  for (int i = 0; i < t.q; ++i) m += static_cast<size_t>(t.alphabet) << i;
  out.code.m = m;
  for (int x = 0; x < t.alphabet; ++x) {
    std::vector<uint32_t> cw;
    size_t off = 0;
    for (int i = 0; i < t.q; ++i) {
      size_t reps = size_t{1} << i;
      size_t base = off + static_cast<size_t>(t.queries[i][x]) * reps;
      for (size_t r = 0; r < reps; ++r) cw.push_back(static_cast<uint32_t>(base + r));
      off += static_cast<size_t>(t.alphabet) << i;
    }
    out.code.codewords.push_back(std::move(cw));
  }
  return out;
}

// ---------------------------------------------------------------------------
// F_d encodings and Newton-identity recovery
// ---------------------------------------------------------------------------

constexpr int kFdGuardD = 4;
constexpr int kFdGuardN = 12;

/// F_d(x) = x^d as an explicit subset of [n]^d. Guarded.
inline std::vector<uint32_t> f_d_encode(const BitString& x, int d) {
  if (d < 1 || d > kFdGuardD) throw CapacityError("f_d_encode d", d, kFdGuardD);
  if (static_cast<int>(x.size()) > kFdGuardN)
    throw CapacityError("f_d_encode n", x.size(), kFdGuardN);
  return fd_tuple_set(x.ones(), x.size(), d);
}

/// Exact |F_d(x) symdiff F_d(y)| = 2k^d - 2(k - dist/2)^d for weight-k sets.
inline uint64_t f_d_distance(const BitString& x, const BitString& y, int d) {
  x.require_same_length(y, "f_d_distance");
  if (x.weight() != y.weight()) throw ShapeError("f_d_distance: weights differ");
  return fd_distance_value(x.weight(), hamming_distance(x, y), d);
}

/// Inverts the power sums sum_i (k - a_i/2)^d for d in [r] into the unique
/// multiset of `count` even values in [0, 2k]. Exhaustive enumeration with a
/// uniqueness assertion; zero or multiple matches raise InconsistentRecovery.
inline std::vector<int> newton_recover(const std::vector<long long>& power_sums, int r, int k,
                                       int count) {
  if (count > r) throw ShapeError("newton_recover: count > r");
  if (static_cast<int>(power_sums.size()) < r)
    throw ShapeError("newton_recover: need sums for every d in [r]");
  std::vector<int> current;
  std::vector<std::vector<int>> matches;
  std::vector<long long> sums(r, 0);
  auto rec = [&](auto&& self, int min_value) -> void {
    if (static_cast<int>(current.size()) == count) {
      for (int d = 0; d < r; ++d)
        if (sums[d] != power_sums[d]) return;
      matches.push_back(current);
      return;
    }
    for (int a = min_value; a <= 2 * k; a += 2) {
      long long base = k - a / 2;
      long long pw = 1;
      for (int d = 0; d < r; ++d) {
        pw *= base;
        sums[d] += pw;
      }
      current.push_back(a);
      self(self, a);
      current.pop_back();
      pw = 1;
      for (int d = 0; d < r; ++d) {
        pw *= base;
        sums[d] -= pw;
      }
    }
  };
  rec(rec, 0);
  if (matches.size() != 1)
    throw InconsistentRecovery("newton_recover: " + std::to_string(matches.size()) +
                               " candidate multisets match the power sums");
  return matches[0];
}

}  // namespace hdlab
