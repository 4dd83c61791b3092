#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hdlab/bits.hpp"
#include "hdlab/errors.hpp"
#include "hdlab/random.hpp"

namespace hdlab {

/// A base problem for composition: an N x N symmetric matrix with entries in
/// a small alphabet [lambda], i.e. an exact truth table at desk scale.
struct BaseMatrix {
  int n_rows = 0;
  int lambda = 2;
  std::vector<int> entries;  // row-major

  static BaseMatrix from_entries(int n, std::vector<int> vals) {
    BaseMatrix m;
    m.n_rows = n;
    m.entries = std::move(vals);
    if (m.entries.size() != static_cast<size_t>(n) * n)
      throw ShapeError("BaseMatrix: entry count mismatch");
    int mx = 0;
    for (int v : m.entries) {
      if (v < 0) throw ShapeError("BaseMatrix: negative entry");
      mx = std::max(mx, v);
    }
    m.lambda = mx + 1;
    m.check_symmetric();
    return m;
  }

  static BaseMatrix xor_matrix() { return from_entries(2, {0, 1, 1, 0}); }

  int at(int x, int y) const { return entries[static_cast<size_t>(x) * n_rows + y]; }

  void check_symmetric() const {
    for (int i = 0; i < n_rows; ++i)
      for (int j = i + 1; j < n_rows; ++j)
        if (at(i, j) != at(j, i)) throw ShapeError("BaseMatrix: not symmetric");
  }
};

/// The balanced deterministic communication tree synthesized for a matrix:
/// Alice announces her row index bit by bit, then Bob announces the entry bit
/// by bit. Complete, zero-error, depth ceil(log N) + ceil(log lambda).
/// Rounds past the native depth are no-ops (both parties send 0), which is
/// how shorter trees are padded to a session-wide common depth.
struct BaseTree {
  const BaseMatrix* matrix = nullptr;
  int x_bits = 0;
  int v_bits = 0;

  explicit BaseTree(const BaseMatrix* m)
      : matrix(m), x_bits(ceil_log2(m->n_rows)), v_bits(ceil_log2(m->lambda)) {}

  int native_depth() const { return x_bits + v_bits; }

  /// 'A' if Alice speaks at round t, 'B' otherwise.
  char label(int t) const { return t < x_bits ? 'A' : 'B'; }

  /// Message of the round-t speaker; path packs earlier messages LSB-first.
  /// own_input is the speaker's input (row index for A, column for B).
  int message(int t, uint64_t path, int own_input) const {
    if (t >= native_depth()) return 0;  // padding rounds
    if (t < x_bits) return (own_input >> t) & 1;
    int x = static_cast<int>(path & ((uint64_t{1} << x_bits) - 1));
    if (x_bits == 0) x = 0;
    int v = matrix->at(x, own_input);
    return (v >> (t - x_bits)) & 1;
  }

  /// Leaf label once depth rounds have been played.
  int leaf_value(uint64_t path) const {
    uint64_t v = (path >> x_bits) & ((uint64_t{1} << v_bits) - 1);
    if (v_bits == 0) v = 0;
    return static_cast<int>(v);
  }
};

// ---------------------------------------------------------------------------
// Permutation-invariant aggregation functions g
// ---------------------------------------------------------------------------

struct PermInvariantG {
  std::string name;
  int r = 1;
  // Evaluator over the multiset of base answers, received sorted.
  std::function<int(const std::vector<int>&)> eval_sorted;

  int eval(std::vector<int> multiset) const {
    std::sort(multiset.begin(), multiset.end());
    return eval_sorted(multiset);
  }
};

/// 1 iff exactly r of the answers equal 1 (yields r-Hamming Distance when the
/// bases are the 2x2 xor matrix, and {k,k}-Hamming Distance from HD_k bases).
inline PermInvariantG g_hd_count(int r) {
  PermInvariantG g;
  g.name = "hd-count";
  g.r = r;
  g.eval_sorted = [r](const std::vector<int>& z) {
    int ones = 0;
    for (int v : z)
      if (v == 1) ++ones;
    return ones == r ? 1 : 0;
  };
  return g;
}

inline PermInvariantG g_exists_one(int r) {
  PermInvariantG g;
  g.name = "exists-one";
  g.r = r;
  g.eval_sorted = [](const std::vector<int>& z) {
    for (int v : z)
      if (v == 1) return 1;
    return 0;
  };
  return g;
}

/// min(sum of answers, r) -- a small-threshold aggregate.
inline PermInvariantG g_max_sum_threshold(int r) {
  PermInvariantG g;
  g.name = "max-sum-threshold";
  g.r = r;
  g.eval_sorted = [r](const std::vector<int>& z) {
    long long sum = 0;
    for (int v : z) sum += v;
    return static_cast<int>(std::min<long long>(sum, r));
  };
  return g;
}

inline PermInvariantG g_from_name(const std::string& name, int r) {
  if (name == "hd-count") return g_hd_count(r);
  if (name == "exists-one") return g_exists_one(r);
  if (name == "max-sum-threshold") return g_max_sum_threshold(r);
  throw ShapeError("unknown g registry name: " + name);
}

/// The composed problem g[P_1 * ... * P_n] with its parameters.
struct CompositionSpec {
  std::vector<BaseMatrix> bases;
  int r = 1;
  double delta = 0.125;
  PermInvariantG g;

  size_t n() const { return bases.size(); }

  int lambda() const {
    int l = 1;
    for (const auto& b : bases) l = std::max(l, b.lambda);
    return l;
  }

  int max_tree_depth() const {
    int d = 0;
    for (const auto& b : bases) d = std::max(d, BaseTree(&b).native_depth());
    return d;
  }

  void validate() const {
    if (bases.empty()) throw ShapeError("CompositionSpec: no base matrices");
    if (r < 0) throw ShapeError("CompositionSpec: r < 0");
    for (const auto& b : bases) b.check_symmetric();
  }

  void check_input(const std::vector<int>& x) const {
    if (x.size() != bases.size()) throw ShapeError("CompositionSpec: input arity mismatch");
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] < 0 || x[i] >= bases[i].n_rows)
        throw ShapeError("CompositionSpec: symbol outside base domain");
  }

  /// Exact composed truth: kBot past r differences, else g over the answers
  /// on the differing coordinates.
  int truth(const std::vector<int>& x, const std::vector<int>& y) const {
    check_input(x);
    check_input(y);
    std::vector<int> answers;
    size_t diff = 0;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) {
        ++diff;
        answers.push_back(bases[i].at(x[i], y[i]));
      }
    if (diff > static_cast<size_t>(r)) return kBot;
    return g.eval(std::move(answers));
  }
};

}  // namespace hdlab
