#pragma once

#include <cmath>
#include <functional>

#include "hdlab/bits.hpp"
#include "hdlab/protocol.hpp"

namespace hdlab {

/// Coordinate-sampling protocol for GapHD_gamma: sample |S| coordinates with
/// replacement off the tape, Alice sends x_S, Bob thresholds the mismatch
/// count at |S|/2. Error <= delta on promise inputs by the Hoeffding bound;
/// gap inputs get an unspecified answer (flagged under instrumentation).
inline size_t gap_hd_sample_size(double gamma, double delta) {
  if (!(gamma > 0.0 && gamma < 0.5)) throw ShapeError("gap_hd: gamma in (0, 1/2)");
  if (!(delta > 0.0 && delta < 1.0)) throw ShapeError("gap_hd: delta in (0,1)");
  double margin = 1.0 - 2.0 * gamma;
  return static_cast<size_t>(std::ceil(2.0 / (margin * margin) * std::log(2.0 / delta)));
}

inline SymmetricProtocol<BitString> gap_hd_protocol(double gamma, double delta) {
  size_t samples = gap_hd_sample_size(gamma, delta);
  SymmetricProtocol<BitString> p;
  p.name = "gap_hd";
  p.oblivious = true;
  p.run = [samples, gamma](const BitString& x, const BitString& y, Session& s) {
    x.require_same_length(y, "gap_hd_protocol");
    size_t mismatches = 0;
    for (size_t t = 0; t < samples; ++t) {
      size_t i = s.tape().uniform(x.size());
      if (x.get(i) != y.get(i)) ++mismatches;
    }
    s.send('A', samples);  // x_S
    s.send('B', 1);        // verdict
    if (s.instrument()) {
      double d = static_cast<double>(hamming_distance(x, y));
      double n = static_cast<double>(x.size());
      if (d > gamma * n && d < (1.0 - gamma) * n) s.note("gaphd_gap_input");
    }
    return 2 * mismatches < samples ? 1 : 0;
  };
  return p;
}

// ---------------------------------------------------------------------------
// Embedding an arbitrary one-way protocol into a single GapHD query
// ---------------------------------------------------------------------------

/// One-way public-coin protocol: Alice sends A(r, x) of exactly c bits, Bob
/// announces B(msg, y, r). Correctness >= 2/3 on every pair is the caller's
/// obligation; the embedding search will fail otherwise.
struct OneWayProtocol {
  int c = 1;
  std::function<uint32_t(uint64_t, const BitString&)> message;
  std::function<int(uint32_t, const BitString&, uint64_t)> decide;
};

/// The c-bit random-hash equality protocol (one-sided, error 2^-c on unequal
/// inputs): the standard test subject for the embedding.
inline OneWayProtocol one_way_equality_hash(int c) {
  OneWayProtocol p;
  p.c = c;
  p.message = [c](uint64_t r, const BitString& x) {
    return static_cast<uint32_t>(hash_bits(r, x.fold_key(), c));
  };
  p.decide = [c](uint32_t msg, const BitString& y, uint64_t r) {
    return msg == static_cast<uint32_t>(hash_bits(r, y.fold_key(), c)) ? 1 : 0;
  };
  return p;
}

struct GapEmbedding {
  int n = 0, c = 0;
  uint64_t w = 0, L = 0;
  int t = 0;
  double gamma = 0.0;
  std::vector<uint64_t> seeds;
  const OneWayProtocol* protocol = nullptr;

  struct Report {
    uint64_t max_dist_ones = 0;   // largest distance among P=1 pairs
    uint64_t min_dist_zeros = 0;  // smallest distance among P=0 pairs
    int attempts = 0;
  } report;

  /// Per-seed block: the one-hot message padded with w zeros (weight 1).
  BitString phi(const BitString& x) const {
    BitString out(L);
    for (int i = 0; i < t; ++i) {
      uint32_t msg = protocol->message(seeds[i], x);
      out.set(static_cast<uint64_t>(i) * 2 * w + msg, true);
    }
    return out;
  }

  /// Per-seed block: the accept-set indicator padded with its complement
  /// (weight exactly w).
  BitString psi(const BitString& y) const {
    BitString out(L);
    for (int i = 0; i < t; ++i) {
      uint64_t off = static_cast<uint64_t>(i) * 2 * w;
      for (uint64_t msg = 0; msg < w; ++msg) {
        int accept = protocol->decide(static_cast<uint32_t>(msg), y, seeds[i]);
        if (accept)
          out.set(off + msg, true);
        else
          out.set(off + w + msg, true);
      }
    }
    return out;
  }
};

/// Theorem-A.1-style embedding: sample seed tuples until every pair lands on
/// the right side of the GapHD_gamma threshold, with t = ceil(3/eps^2 * n),
/// eps = 1/6, w = 2^c, L = 2tw and gamma = 1/2 - 1/(12w). n <= 8 so the
/// verification is exhaustive over all pairs.
inline GapEmbedding embed_into_gaphd(
    const OneWayProtocol& p, const std::function<int(const BitString&, const BitString&)>& truth,
    int n, int max_attempts, uint64_t seed) {
  if (n > 8) throw CapacityError("embed_into_gaphd", n, 8);
  GapEmbedding emb;
  emb.n = n;
  emb.c = p.c;
  emb.w = uint64_t{1} << p.c;
  const double eps = 1.0 / 6.0;
  emb.t = static_cast<int>(std::ceil(3.0 / (eps * eps) * n));
  emb.L = 2ull * emb.t * emb.w;
  emb.gamma = 0.5 - 1.0 / (12.0 * static_cast<double>(emb.w));
  emb.protocol = &p;

  std::vector<BitString> inputs;
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) inputs.push_back(BitString::from_mask(m, n));

  RandomTape tape(seed);
  double gap_lo = emb.gamma * static_cast<double>(emb.L);
  double gap_hi = (1.0 - emb.gamma) * static_cast<double>(emb.L);
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    emb.seeds.clear();
    for (int i = 0; i < emb.t; ++i) emb.seeds.push_back(tape.next_bits(64));

    // per-seed answer tables make the exhaustive pair check cheap
    std::vector<std::vector<uint32_t>> msg_of(emb.t, std::vector<uint32_t>(inputs.size()));
    std::vector<std::vector<uint64_t>> accept_mask(emb.t,
                                                   std::vector<uint64_t>(inputs.size(), 0));
    for (int i = 0; i < emb.t; ++i)
      for (size_t v = 0; v < inputs.size(); ++v) {
        msg_of[i][v] = p.message(emb.seeds[i], inputs[v]);
        for (uint64_t msg = 0; msg < emb.w; ++msg)
          if (p.decide(static_cast<uint32_t>(msg), inputs[v], emb.seeds[i]))
            accept_mask[i][v] |= uint64_t{1} << msg;
      }

    bool ok = true;
    uint64_t max_ones = 0, min_zeros = ~uint64_t{0};
    for (size_t a = 0; a < inputs.size() && ok; ++a)
      for (size_t b = 0; b < inputs.size() && ok; ++b) {
        uint64_t dist = 0;
        for (int i = 0; i < emb.t; ++i) {
          int out = (accept_mask[i][b] >> msg_of[i][a]) & 1;
          dist += emb.w + 1 - 2 * static_cast<uint64_t>(out);
        }
        if (truth(inputs[a], inputs[b]) == 1) {
          max_ones = std::max(max_ones, dist);
          if (static_cast<double>(dist) > gap_lo) ok = false;
        } else {
          min_zeros = std::min(min_zeros, dist);
          if (static_cast<double>(dist) < gap_hi) ok = false;
        }
      }
    if (ok) {
      emb.report.max_dist_ones = max_ones;
      emb.report.min_dist_zeros = min_zeros;
      emb.report.attempts = attempt;
      return emb;
    }
  }
  throw std::runtime_error(
      "embed_into_gaphd: seed search budget exhausted (protocol error above 1/3?)");
}

}  // namespace hdlab
