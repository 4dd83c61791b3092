#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdlab/codes.hpp"

namespace hdlab {

/// The sparsified code's output weights contradict the triangle bound; the
/// evidence string names the offending codewords. This is how a source that
/// is not an extended f-code announces itself.
struct SparsifyError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

template <typename Fn>
inline void for_each_subset_of_size(uint32_t pool_mask, int size, Fn&& fn) {
  std::vector<int> elems;
  for (int i = 0; i < 32; ++i)
    if (pool_mask & (uint32_t{1} << i)) elems.push_back(i);
  std::vector<int> pick;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (static_cast<int>(pick.size()) == size) {
      uint32_t m = 0;
      for (int e : pick) m |= uint32_t{1} << e;
      fn(m);
      return;
    }
    for (size_t i = start; i + (size - pick.size()) <= elems.size(); ++i) {
      pick.push_back(elems[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
}

inline std::vector<uint32_t> intersect_sorted(const std::vector<uint32_t>& a,
                                              const std::vector<uint32_t>& b) {
  return set_intersection(a, b);
}

}  // namespace detail

/// The padded-then-shifted transformation: restrict a slice code to the
/// weight-k ball by padding with a fixed tail and xoring off a base codeword.
/// Output codewords all carry the same weight g(2k) <= f(2) * k when the
/// source transfers distances uniformly.
inline Code sparsify(const Code& src, int k) {
  if (src.n % 2 != 0) throw ShapeError("sparsify: source domain is not a slice C(2N,N)");
  int big_n = src.n / 2;  // N
  if (k < 1 || k >= big_n) throw ShapeError("sparsify: need 1 <= k < N");
  if (src.domain_size() != binomial(src.n, big_n))
    throw ShapeError("sparsify: source code must be exhaustive over the slice");

  // F'(x) = F(x union ([2N] \ [N+k])), for x a weight-k subset of [N].
  auto padded = [&](const BitString& x_small) {
    BitString full(src.n);
    for (uint32_t i : x_small.ones()) full.set(i, true);
    for (size_t i = big_n + k; i < src.n; ++i) full.set(i, true);
    return full;
  };
  // base point [k] = {0..k-1}
  BitString base_small(big_n);
  for (int i = 0; i < k; ++i) base_small.set(i, true);
  const auto& base_cw = src.codeword(padded(base_small));

  // output domain: weight-k subsets of [N] \ [k], relabeled to [N-k]
  int n_out = big_n - k;
  Code out;
  out.name = src.name + "/sparsified(k=" + std::to_string(k) + ")";
  out.n = n_out;
  out.m = src.m;
  size_t weight = 0;
  bool first = true;
  for (const auto& x_rel : slice_strings(n_out, k)) {
    BitString x_small(big_n);
    for (uint32_t i : x_rel.ones()) x_small.set(k + i, true);
    const auto& cw = src.codeword(padded(x_small));
    std::vector<uint32_t> shifted;
    size_t ai = 0, bi = 0;
    while (ai < cw.size() || bi < base_cw.size()) {
      if (bi == base_cw.size() || (ai < cw.size() && cw[ai] < base_cw[bi]))
        shifted.push_back(cw[ai++]);
      else if (ai == cw.size() || base_cw[bi] < cw[ai])
        shifted.push_back(base_cw[bi++]);
      else
        ++ai, ++bi;
    }
    if (first) {
      weight = shifted.size();
      first = false;
    } else if (shifted.size() != weight) {
      throw SparsifyError("sparsify: non-uniform output weight (" +
                          std::to_string(shifted.size()) + " vs " + std::to_string(weight) +
                          " at " + x_rel.to_string() +
                          "); source is not an extended f-code");
    }
    out.add(x_rel, std::move(shifted));
  }

  // Triangle bound r <= f(2) * k, with f(2) measured on a distance-2 pair.
  BitString probe = base_small;
  probe.flip(0);
  probe.flip(k);  // swap one element: distance 2
  size_t f2 = symmdiff_size(src.codeword(padded(base_small)), src.codeword(padded(probe)));
  if (weight > f2 * static_cast<size_t>(k))
    throw SparsifyError("sparsify: output weight " + std::to_string(weight) +
                        " exceeds f(2)*k = " + std::to_string(f2 * k) +
                        "; source is not an extended f-code");
  return out;
}

/// Component codes E_l and their fresh layers Delta_E for a code on the full
/// weight-k ball over [n], keyed by subset bitmask.
struct DeltaDecomposition {
  int n = 0, k = 0;
  std::unordered_map<uint32_t, std::vector<uint32_t>> e_table;      // E_{|y|}(y)
  std::unordered_map<uint32_t, std::vector<uint32_t>> delta_table;  // Delta_E(y)
  std::vector<long long> delta_size;   // per level l; -1 when non-uniform
  std::vector<long long> gamma_size;   // |E_l(y)| per level; -1 when non-uniform

  const std::vector<uint32_t>& e_of(uint32_t mask) const { return e_table.at(mask); }
  const std::vector<uint32_t>& delta_of(uint32_t mask) const { return delta_table.at(mask); }
};

constexpr int kDeltaGuardN = 14;
constexpr int kDeltaGuardK = 5;

/// E_l(y) for one subset directly from the code (used by the sunflower image
/// checks, which probe arbitrary subsets without a full decomposition).
inline std::vector<uint32_t> component_code_of(const Code& code, int k,
                                               const std::vector<uint32_t>& y) {
  int n = static_cast<int>(code.n);
  uint32_t ymask = 0;
  for (uint32_t e : y) ymask |= uint32_t{1} << e;
  uint32_t pool = (n >= 32 ? ~uint32_t{0} : ((uint32_t{1} << n) - 1)) & ~ymask;
  std::vector<uint32_t> acc;
  bool first = true;
  detail::for_each_subset_of_size(pool, k - static_cast<int>(y.size()), [&](uint32_t add) {
    BitString x(n);
    uint32_t full = ymask | add;
    for (int i = 0; i < n; ++i)
      if (full & (uint32_t{1} << i)) x.set(i, true);
    const auto& cw = code.codeword(x);
    if (first) {
      acc = cw;
      first = false;
    } else if (!acc.empty()) {
      acc = detail::intersect_sorted(acc, cw);
    }
  });
  return acc;
}

/// Full decomposition over all subsets of size <= k. Guarded at n <= 14,
/// k <= 5; the domain must be the entire ball.
inline DeltaDecomposition delta_decompose(const Code& code, int k) {
  int n = static_cast<int>(code.n);
  if (n > kDeltaGuardN) throw CapacityError("delta_decompose n", n, kDeltaGuardN);
  if (k > kDeltaGuardK) throw CapacityError("delta_decompose k", k, kDeltaGuardK);
  if (code.domain_size() != binomial(n, k))
    throw ShapeError("delta_decompose: domain must be all weight-k strings over [n]");
  for (const auto& x : code.domain)
    if (x.weight() != static_cast<size_t>(k))
      throw ShapeError("delta_decompose: non weight-k domain string");

  DeltaDecomposition dd;
  dd.n = n;
  dd.k = k;
  uint32_t all = (n >= 32) ? ~uint32_t{0} : ((uint32_t{1} << n) - 1);

  // codeword lookup by mask for the top level
  std::unordered_map<uint32_t, const std::vector<uint32_t>*> top;
  for (size_t i = 0; i < code.domain_size(); ++i)
    top[static_cast<uint32_t>(code.domain[i].words()[0])] = &code.codewords[i];

  // E_l from the top level down: E_l(y) = intersection of E_{l+1}(y+{e}).
  // This equals the definition intersecting over all weight-k supersets.
  std::vector<std::vector<uint32_t>> levels(k + 1);
  detail::for_each_subset_of_size(all, k, [&](uint32_t m) { levels[k].push_back(m); });
  for (uint32_t m : levels[k]) dd.e_table[m] = *top.at(m);
  for (int l = k - 1; l >= 0; --l) {
    detail::for_each_subset_of_size(all, l, [&](uint32_t m) { levels[l].push_back(m); });
    for (uint32_t m : levels[l]) {
      std::vector<uint32_t> acc;
      bool first = true;
      for (int e = 0; e < n; ++e) {
        if (m & (uint32_t{1} << e)) continue;
        const auto& up = dd.e_table.at(m | (uint32_t{1} << e));
        if (first) {
          acc = up;
          first = false;
        } else {
          acc = detail::intersect_sorted(acc, up);
        }
        if (acc.empty()) break;
      }
      dd.e_table[m] = std::move(acc);
    }
  }

  // Delta_E(y) = E(y) minus the union over all proper subsets.
  for (int l = 0; l <= k; ++l) {
    for (uint32_t m : levels[l]) {
      std::vector<uint32_t> uni;
      for (uint32_t sub = (m - 1) & m;; sub = (sub - 1) & m) {
        uni = set_union(uni, dd.e_table.at(sub));
        if (sub == 0) break;
      }
      if (m == 0)
        dd.delta_table[m] = dd.e_table.at(m);
      else
        dd.delta_table[m] = set_difference(dd.e_table.at(m), uni);
    }
  }

  dd.delta_size.assign(k + 1, 0);
  dd.gamma_size.assign(k + 1, 0);
  for (int l = 0; l <= k; ++l) {
    long long ds = -2, gs = -2;
    for (uint32_t m : levels[l]) {
      long long d = static_cast<long long>(dd.delta_table.at(m).size());
      long long g = static_cast<long long>(dd.e_table.at(m).size());
      if (ds == -2) ds = d;
      if (gs == -2) gs = g;
      if (d != ds) ds = -1;
      if (g != gs) gs = -1;
    }
    dd.delta_size[l] = ds;
    dd.gamma_size[l] = gs;
  }
  return dd;
}

/// Lemma-style checks on a decomposition; each returns true on success and
/// otherwise describes the first violation.
inline bool check_delta_disjoint(const DeltaDecomposition& dd, std::string* violation = nullptr) {
  std::vector<std::pair<uint32_t, const std::vector<uint32_t>*>> items;
  items.reserve(dd.delta_table.size());
  for (const auto& [m, v] : dd.delta_table) items.emplace_back(m, &v);
  for (size_t i = 0; i < items.size(); ++i)
    for (size_t j = i + 1; j < items.size(); ++j) {
      if (items[i].second->empty() || items[j].second->empty()) continue;
      if (!set_intersection(*items[i].second, *items[j].second).empty()) {
        if (violation)
          *violation = "Delta sets of masks " + std::to_string(items[i].first) + " and " +
                       std::to_string(items[j].first) + " intersect";
        return false;
      }
    }
  return true;
}

inline bool check_disjoint_union(const DeltaDecomposition& dd, const Code& code,
                                 std::string* violation = nullptr) {
  for (size_t i = 0; i < code.domain_size(); ++i) {
    uint32_t m = static_cast<uint32_t>(code.domain[i].words()[0]);
    std::vector<uint32_t> uni;
    size_t total = 0;
    uint32_t sub = m;
    for (;;) {
      const auto& d = dd.delta_table.at(sub);
      total += d.size();
      uni = set_union(uni, d);
      if (sub == 0) break;
      sub = (sub - 1) & m;
    }
    if (uni != code.codewords[i] || total != code.codewords[i].size()) {
      if (violation)
        *violation = "disjoint union fails at " + code.domain[i].to_string();
      return false;
    }
  }
  return true;
}

inline bool check_monotone(const DeltaDecomposition& dd, std::string* violation = nullptr) {
  for (const auto& [m, ev] : dd.e_table) {
    for (int e = 0; e < dd.n; ++e) {
      uint32_t up = m | (uint32_t{1} << e);
      if (up == m) continue;
      auto it = dd.e_table.find(up);
      if (it == dd.e_table.end()) continue;
      if (set_intersection(ev, it->second) != ev) {
        if (violation)
          *violation = "monotonicity fails between masks " + std::to_string(m) + " and " +
                       std::to_string(up);
        return false;
      }
    }
  }
  return true;
}

}  // namespace hdlab
