#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hdlab/codes.hpp"

namespace hdlab {

/// Backtracking existence search for f-codes at a fixed (n, m): domain
/// elements ordered by weight then lexicographically, pairwise distance
/// constraints propagated before branching, first codeword pinned to 0^m
/// (shifting preserves all distances, so this loses no codes).
struct SearchConfig {
  int n = 3;
  int m = 4;
  PartialF f;
  enum class Domain { Cube, Slice } domain = Domain::Cube;
  int slice_weight = 0;  // defaults to n/2
  uint64_t budget = 1 << 22;
  size_t max_codes = 8;
  bool analytic_prefilter = true;
};

struct SearchResult {
  std::vector<Code> codes;
  bool exhausted = false;  // full space explored (after symmetry reduction)
  uint64_t nodes_explored = 0;
  bool prefiltered = false;
  std::string prefilter_reason;
  bool budget_exceeded = false;
};

namespace detail {

inline std::vector<BitString> search_domain(const SearchConfig& cfg) {
  std::vector<BitString> d;
  if (cfg.domain == SearchConfig::Domain::Cube) {
    if (cfg.n > 14) throw CapacityError("search_fcodes cube", cfg.n, 14);
    for (uint64_t mask = 0; mask < (uint64_t{1} << cfg.n); ++mask)
      d.push_back(BitString::from_mask(mask, cfg.n));
  } else {
    int w = cfg.slice_weight > 0 ? cfg.slice_weight : cfg.n / 2;
    d = slice_strings(cfg.n, w);
  }
  std::stable_sort(d.begin(), d.end(), [](const BitString& a, const BitString& b) {
    if (a.weight() != b.weight()) return a.weight() < b.weight();
    return a < b;
  });
  return d;
}

/// Triangle and parity feasibility over all domain triples whose pairwise
/// distances are constrained: dist(Ex,Ez) <= dist(Ex,Ey) + dist(Ey,Ez) and
/// the three values must have even total.
inline std::string prefilter_reason(const SearchConfig& cfg,
                                    const std::vector<BitString>& domain) {
  for (const auto& [d, v] : cfg.f.values)
    if (v > static_cast<size_t>(cfg.m))
      return "f(" + std::to_string(d) + ") = " + std::to_string(v) + " exceeds m";
  if (domain.size() > 512) return "";  // triple scan guard; backtracking decides
  for (size_t a = 0; a < domain.size(); ++a)
    for (size_t b = a + 1; b < domain.size(); ++b) {
      size_t dab = hamming_distance(domain[a], domain[b]);
      if (!cfg.f.defined(dab)) continue;
      for (size_t c = b + 1; c < domain.size(); ++c) {
        size_t dbc = hamming_distance(domain[b], domain[c]);
        size_t dac = hamming_distance(domain[a], domain[c]);
        if (!cfg.f.defined(dbc) || !cfg.f.defined(dac)) continue;
        size_t fab = cfg.f.at(dab), fbc = cfg.f.at(dbc), fac = cfg.f.at(dac);
        size_t hi = std::max({fab, fbc, fac});
        size_t lo = fab + fbc + fac - hi;
        if (hi > lo)
          return "triangle violated on distances (" + std::to_string(dab) + "," +
                 std::to_string(dbc) + "," + std::to_string(dac) + ")";
        if ((fab + fbc + fac) % 2 != 0)
          return "parity violated on distances (" + std::to_string(dab) + "," +
                 std::to_string(dbc) + "," + std::to_string(dac) + ")";
      }
    }
  return "";
}

template <typename Fn>
inline void for_each_mask_at_distance(uint32_t base, int m, int radius, Fn&& fn) {
  std::vector<int> pick;
  auto rec = [&](auto&& self, int start, uint32_t cur) -> void {
    if (static_cast<int>(pick.size()) == radius) {
      fn(cur);
      return;
    }
    for (int i = start; i + (radius - static_cast<int>(pick.size())) <= m; ++i) {
      pick.push_back(i);
      self(self, i + 1, cur ^ (uint32_t{1} << i));
      pick.pop_back();
    }
  };
  rec(rec, 0, base);
}

}  // namespace detail

inline SearchResult search_fcodes(const SearchConfig& cfg) {
  if (cfg.m > 24) throw CapacityError("search_fcodes m", cfg.m, 24);
  SearchResult res;
  auto domain = detail::search_domain(cfg);
  size_t dsz = domain.size();

  if (cfg.analytic_prefilter) {
    std::string reason = detail::prefilter_reason(cfg, domain);
    if (!reason.empty()) {
      res.prefiltered = true;
      res.prefilter_reason = reason;
      res.exhausted = true;
      return res;
    }
  }

  // pairwise distances with a constraint entry when f is defined
  std::vector<std::vector<int>> want(dsz, std::vector<int>(dsz, -1));
  for (size_t i = 0; i < dsz; ++i)
    for (size_t j = 0; j < dsz; ++j) {
      if (i == j) continue;
      size_t d = hamming_distance(domain[i], domain[j]);
      if (cfg.f.defined(d)) want[i][j] = static_cast<int>(cfg.f.at(d));
    }

  std::vector<uint32_t> assign(dsz, 0);
  bool stopped = false;

  auto emit = [&]() {
    Code c;
    c.name = "searched";
    c.n = cfg.n;
    c.m = cfg.m;
    for (size_t i = 0; i < dsz; ++i) {
      std::vector<uint32_t> cw;
      for (int b = 0; b < cfg.m; ++b)
        if (assign[i] & (uint32_t{1} << b)) cw.push_back(b);
      c.add(domain[i], std::move(cw));
    }
    res.codes.push_back(std::move(c));
  };

  auto rec = [&](auto&& self, size_t pos) -> void {
    if (stopped) return;
    if (pos == dsz) {
      emit();
      if (res.codes.size() >= cfg.max_codes) stopped = true;
      return;
    }
    if (++res.nodes_explored > cfg.budget) {
      res.budget_exceeded = true;
      stopped = true;
      return;
    }
    // check a candidate against every earlier constraint
    auto feasible = [&](uint32_t cand) {
      for (size_t j = 0; j < pos; ++j)
        if (want[pos][j] >= 0 &&
            std::popcount(cand ^ assign[j]) != want[pos][j])
          return false;
      return true;
    };
    // branch over the tightest earlier constraint's Hamming sphere
    int best_j = -1;
    for (size_t j = 0; j < pos; ++j)
      if (want[pos][j] >= 0 &&
          (best_j < 0 || want[pos][j] < want[pos][best_j]))
        best_j = static_cast<int>(j);
    if (pos == 0) {
      assign[0] = 0;  // symmetry: shift any code so E(x0) = 0
      self(self, 1);
      return;
    }
    if (best_j < 0) {
      for (uint64_t cand = 0; cand < (uint64_t{1} << cfg.m) && !stopped; ++cand) {
        if (!feasible(static_cast<uint32_t>(cand))) continue;
        assign[pos] = static_cast<uint32_t>(cand);
        self(self, pos + 1);
      }
      return;
    }
    detail::for_each_mask_at_distance(assign[best_j], cfg.m, want[pos][best_j],
                                      [&](uint32_t cand) {
                                        if (stopped || !feasible(cand)) return;
                                        assign[pos] = cand;
                                        self(self, pos + 1);
                                      });
  };
  rec(rec, 0);

  // stopping early (budget or max_codes cap) means the space was not covered
  res.exhausted = !stopped;
  return res;
}

}  // namespace hdlab
