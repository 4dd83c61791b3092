#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hdlab/bits.hpp"
#include "hdlab/errors.hpp"

namespace hdlab {

/// Partial distance-transfer function f: D subset of N -> N. Queries outside
/// the domain are errors, matching the partial-function semantics.
struct PartialF {
  std::map<size_t, size_t> values;

  bool defined(size_t d) const { return values.count(d) != 0; }

  size_t at(size_t d) const {
    auto it = values.find(d);
    if (it == values.end())
      throw ShapeError("PartialF: " + std::to_string(d) + " outside dom(f)");
    return it->second;
  }

  void set(size_t d, size_t v) { values[d] = v; }

  /// Text form: comma list of d:value, e.g. "2:4,4:6,6:8".
  static PartialF parse(const std::string& s) {
    PartialF f;
    size_t pos = 0;
    while (pos < s.size()) {
      size_t comma = s.find(',', pos);
      std::string item = s.substr(pos, comma == std::string::npos ? comma : comma - pos);
      size_t colon = item.find(':');
      if (colon == std::string::npos) throw ParseError("PartialF: missing ':' in '" + item + "'", 1);
      f.set(std::stoul(item.substr(0, colon)), std::stoul(item.substr(colon + 1)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return f;
  }

  std::string to_string() const {
    std::string s;
    for (const auto& [d, v] : values) {
      if (!s.empty()) s += ',';
      s += std::to_string(d) + ":" + std::to_string(v);
    }
    return s;
  }
};

/// Explicit encoding table over an explicit domain of equal-length strings.
/// Codewords are stored sparsely as sorted 1-position sets; sparsified codes
/// have constant weight, so this stays small even when m is large.
struct Code {
  size_t n = 0;  // domain string length
  size_t m = 0;  // codeword length
  std::vector<BitString> domain;
  std::vector<std::vector<uint32_t>> codewords;
  std::string name;

  std::unordered_map<BitString, uint32_t, BitStringHash> index;
  std::vector<uint16_t> pair_dist;  // optional |domain|^2 cache

  size_t domain_size() const { return domain.size(); }

  void add(const BitString& x, std::vector<uint32_t> codeword) {
    if (x.size() != n) throw ShapeError("Code::add: domain string length mismatch");
    if (!codeword.empty() && codeword.back() >= m)
      throw ShapeError("Code::add: codeword coordinate out of range");
    if (index.count(x)) throw ShapeError("Code::add: duplicate domain string");
    index.emplace(x, static_cast<uint32_t>(domain.size()));
    domain.push_back(x);
    codewords.push_back(std::move(codeword));
  }

  uint32_t index_of(const BitString& x) const {
    auto it = index.find(x);
    if (it == index.end()) throw ShapeError("Code: string not in domain");
    return it->second;
  }

  const std::vector<uint32_t>& codeword(const BitString& x) const {
    return codewords[index_of(x)];
  }

  size_t codeword_distance(uint32_t i, uint32_t j) const {
    if (!pair_dist.empty()) return pair_dist[i * domain.size() + j];
    return symmdiff_size(codewords[i], codewords[j]);
  }

  /// Precompute the pairwise distance table (guarded; distances must fit u16).
  void build_distance_cache() {
    size_t d = domain.size();
    if (d * d > (uint64_t{1} << 24)) throw CapacityError("Code::build_distance_cache", d * d, 1 << 24);
    pair_dist.assign(d * d, 0);
    for (size_t i = 0; i < d; ++i)
      for (size_t j = i; j < d; ++j) {
        size_t v = symmdiff_size(codewords[i], codewords[j]);
        pair_dist[i * d + j] = static_cast<uint16_t>(v);
        pair_dist[j * d + i] = static_cast<uint16_t>(v);
      }
  }
};

/// Pair of encodings on a common domain and output length; distances are
/// measured across players, so f(0) need not be zero.
struct TwoPlayerCode {
  Code e1, e2;
  std::string name;

  void check_shapes() const {
    if (e1.m != e2.m || e1.n != e2.n || e1.domain != e2.domain)
      throw ShapeError("TwoPlayerCode: shapes differ between players");
  }
};

struct FcodeViolation {
  BitString x, y;
  size_t dist;
  size_t expected;
  size_t got;

  std::string to_string() const {
    return x.to_string() + " vs " + y.to_string() + ": dist=" + std::to_string(dist) +
           " expected f=" + std::to_string(expected) + " got " + std::to_string(got);
  }
};

constexpr uint64_t kVerifyGuard = 10000;  // max domain size for exhaustive verification

/// Exhaustive f-code check over all domain pairs whose distance lies in
/// dom(f). Violations are reported verbatim; empty result means pass.
inline std::vector<FcodeViolation> verify_fcode(const Code& code, const PartialF& f,
                                                size_t max_violations = 16) {
  if (code.domain_size() > kVerifyGuard)
    throw CapacityError("verify_fcode", code.domain_size(), kVerifyGuard);
  std::vector<FcodeViolation> out;
  for (size_t i = 0; i < code.domain_size() && out.size() < max_violations; ++i)
    for (size_t j = i + 1; j < code.domain_size() && out.size() < max_violations; ++j) {
      size_t d = hamming_distance(code.domain[i], code.domain[j]);
      if (!f.defined(d)) continue;
      size_t got = symmdiff_size(code.codewords[i], code.codewords[j]);
      if (got != f.at(d)) out.push_back({code.domain[i], code.domain[j], d, f.at(d), got});
    }
  return out;
}

/// Two-player variant: checks dist(E1(x), E2(y)) across all ordered pairs,
/// including x == y when 0 is in dom(f).
inline std::vector<FcodeViolation> verify_two_player_fcode(const Code& e1, const Code& e2,
                                                           const PartialF& f,
                                                           size_t max_violations = 16) {
  if (e1.m != e2.m || e1.n != e2.n || e1.domain != e2.domain)
    throw ShapeError("verify_two_player_fcode: shapes differ between players");
  if (e1.domain_size() > kVerifyGuard)
    throw CapacityError("verify_two_player_fcode", e1.domain_size(), kVerifyGuard);
  std::vector<FcodeViolation> out;
  for (size_t i = 0; i < e1.domain_size() && out.size() < max_violations; ++i)
    for (size_t j = 0; j < e1.domain_size() && out.size() < max_violations; ++j) {
      size_t d = hamming_distance(e1.domain[i], e1.domain[j]);
      if (!f.defined(d)) continue;
      size_t got = symmdiff_size(e1.codewords[i], e2.codewords[j]);
      if (got != f.at(d)) out.push_back({e1.domain[i], e1.domain[j], d, f.at(d), got});
    }
  return out;
}

inline std::vector<FcodeViolation> verify_two_player_fcode(const TwoPlayerCode& tp,
                                                           const PartialF& f,
                                                           size_t max_violations = 16) {
  tp.check_shapes();
  return verify_two_player_fcode(tp.e1, tp.e2, f, max_violations);
}

/// Measures f on a code assumed uniform per distance: f(d) := distance of the
/// first pair at domain distance d. Returns the observed table.
inline PartialF measure_f(const Code& code, const std::vector<size_t>& dom) {
  PartialF f;
  for (size_t d : dom) {
    bool found = false;
    for (size_t i = 0; i < code.domain_size() && !found; ++i)
      for (size_t j = i + 1; j < code.domain_size() && !found; ++j)
        if (hamming_distance(code.domain[i], code.domain[j]) == d) {
          f.set(d, symmdiff_size(code.codewords[i], code.codewords[j]));
          found = true;
        }
    if (!found) throw ShapeError("measure_f: no pair at distance " + std::to_string(d));
  }
  return f;
}

/// Encoding table over a symbol alphabet [N] (tandem compilations live here).
struct SymbolCode {
  int alphabet = 0;  // N
  size_t m = 0;
  std::vector<std::vector<uint32_t>> codewords;  // one per symbol
  size_t weight = 0;                             // |E(x)|, uniform by construction

  size_t distance(int a, int b) const { return symmdiff_size(codewords[a], codewords[b]); }
};

}  // namespace hdlab
