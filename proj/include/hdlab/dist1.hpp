#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "hdlab/base_matrix.hpp"
#include "hdlab/protocol.hpp"
#include "hdlab/sidon.hpp"

namespace hdlab {

// Parallel simulation under the one-difference promise: the players hash and
// role-tag every coordinate, recover the unordered hash/role pair of the
// unique differing coordinate from a 2-Sidon XOR, then run all colliding
// communication trees in lockstep, recovering each round's two messages from
// another 2-Sidon XOR. Cost is independent of n.

struct Dist1Params {
  double delta = 0.125;
  uint64_t hash_range = 0;  // ceil(10 / delta)
  int role_len = 0;         // 10 + ceil(log2(1/delta))
  int hash_bits = 0;
  int l1 = 0, s1 = 0;  // hash||role payload and its 2-Sidon width
  int s2 = 0;          // per-round role||message payload width
  int l3 = 0, s3 = 0;  // hash||leaf payload and its width
  int depth = 0;       // common (padded) tree depth
  int lambda_bits = 0;
};

inline Dist1Params derive_dist1_params(double delta, int depth, int lambda) {
  if (!(delta > 0.0 && delta < 1.0)) throw ShapeError("dist1: delta in (0,1)");
  Dist1Params p;
  p.delta = delta;
  p.hash_range = static_cast<uint64_t>(std::ceil(10.0 / delta));
  p.role_len = 10 + ceil_log2(static_cast<uint64_t>(std::ceil(1.0 / delta)));
  p.hash_bits = ceil_log2(p.hash_range);
  p.l1 = p.hash_bits + p.role_len;
  if (p.l1 > 62) throw CapacityError("dist1 payload bits", p.l1, 62);
  p.s1 = sidon_width(p.l1, 2);
  p.s2 = sidon_width(2, 2);
  p.lambda_bits = std::max(1, ceil_log2(static_cast<uint64_t>(lambda)));
  p.l3 = p.hash_bits + p.lambda_bits;
  p.s3 = sidon_width(p.l3, 2);
  p.depth = depth;
  return p;
}

/// Fixed bit cost of one dist1 run (three exchange kinds, depth rounds).
inline uint64_t dist1_bits(const Dist1Params& p) {
  return 2ull * (p.s1 + static_cast<uint64_t>(p.depth) * p.s2 + p.s3);
}

/// Runs the promise protocol on the coordinates `coords` of a composed input.
/// Under the promise (exactly one differing coordinate among coords) the
/// output is that coordinate's base answer with probability >= 1 - delta.
/// Off-promise the output is unspecified; every abort path still performs all
/// exchanges so the bit cost never depends on the input.
inline int dist1_run(const CompositionSpec& spec, std::span<const size_t> coords,
                     const std::vector<int>& x, const std::vector<int>& y,
                     const Dist1Params& p, Session& s) {
  // Step 1-2 draws: hash family, role family, pair-recovery encoding.
  uint64_t hash_salt = s.tape().next_bits(64);
  uint64_t role_salt = s.tape().next_bits(64);
  uint64_t enc1_seed = s.tape().next_bits(64);
  uint64_t enc2_seed = s.tape().next_bits(64);
  uint64_t enc3_seed = s.tape().next_bits(64);

  auto hash_of = [&](size_t j, int v) {
    return bounded_hash(mix2(hash_salt, j), static_cast<uint64_t>(v), p.hash_range);
  };
  auto role_of = [&](size_t j, int v) {
    return hash_bits(mix2(role_salt, j), static_cast<uint64_t>(v), p.role_len);
  };

  SidonEncoding enc1 = lazy_sidon(p.l1, 2, enc1_seed);
  SidonExchange ex1(&enc1);
  for (size_t j : coords) {
    ex1.add_a((hash_of(j, x[j]) << p.role_len) | role_of(j, x[j]));
    ex1.add_b((hash_of(j, y[j]) << p.role_len) | role_of(j, y[j]));
  }
  auto pair = ex1.exchange(s);

  bool abort = false;
  uint64_t h1 = 0, h2 = 0;
  int role_bit_h1 = 0;  // which player the h1-hashing party simulates
  uint64_t role_mask = (p.role_len >= 64) ? ~uint64_t{0} : ((uint64_t{1} << p.role_len) - 1);
  if (!pair || pair->size() != 2) {
    abort = true;  // empty: full hash+role collision; other sizes: off-promise
    if (s.instrument()) s.note("dist1_abort_collision");
  } else {
    uint64_t rho1 = (*pair)[0] & role_mask, rho2 = (*pair)[1] & role_mask;
    h1 = (*pair)[0] >> p.role_len;
    h2 = (*pair)[1] >> p.role_len;
    if (rho1 == rho2) {
      abort = true;  // equal role strings cannot assign sides; output 0
      if (s.instrument()) s.note("dist1_role_collision");
    } else if (h1 == h2) {
      abort = true;  // hash collision: role assignment would be ambiguous
      if (s.instrument()) s.note("dist1_hash_collision");
    } else {
      int pos = std::countr_zero(rho1 ^ rho2);
      role_bit_h1 = static_cast<int>((rho1 >> pos) & 1);
    }
  }

  // Step 3: each colliding coordinate's deterministic tree (zero-error).
  // Step 4: lockstep rounds. Each party keeps its own view of S and paths.
  std::vector<size_t> sa, sb;
  std::vector<uint64_t> path_a, path_b;
  if (!abort) {
    for (size_t j : coords) {
      if (uint64_t h = hash_of(j, x[j]); h == h1 || h == h2) {
        sa.push_back(j);
        path_a.push_back(0);
      }
      if (uint64_t h = hash_of(j, y[j]); h == h1 || h == h2) {
        sb.push_back(j);
        path_b.push_back(0);
      }
    }
  }

  SidonEncoding enc2 = build_sidon(2, 2, enc2_seed);
  auto round_payload = [&](size_t j, int v, uint64_t path, int t) -> uint64_t {
    BaseTree tree(&spec.bases[j]);
    int role = (hash_of(j, v) == h1) ? role_bit_h1 : 1 - role_bit_h1;
    char role_char = role == 0 ? 'A' : 'B';
    int msg = (t < tree.native_depth() && tree.label(t) == role_char)
                  ? tree.message(t, path, v)
                  : 0;
    return (static_cast<uint64_t>(role) << 1) | static_cast<uint64_t>(msg);
  };

  for (int t = 0; t < p.depth; ++t) {
    SidonExchange ex2(&enc2);
    if (!abort) {
      for (size_t idx = 0; idx < sa.size(); ++idx)
        ex2.add_a(round_payload(sa[idx], x[sa[idx]], path_a[idx], t));
      for (size_t idx = 0; idx < sb.size(); ++idx)
        ex2.add_b(round_payload(sb[idx], y[sb[idx]], path_b[idx], t));
      if (s.instrument()) {
        // lockstep fidelity: equal-input coordinates contribute equal payloads
        for (size_t ia = 0; ia < sa.size(); ++ia)
          for (size_t ib = 0; ib < sb.size(); ++ib)
            if (sa[ia] == sb[ib] && x[sa[ia]] == y[sb[ib]] &&
                round_payload(sa[ia], x[sa[ia]], path_a[ia], t) !=
                    round_payload(sb[ib], y[sb[ib]], path_b[ib], t))
              s.note("dist1_lockstep_violation");
      }
    }
    auto msgs = ex2.exchange(s);
    if (abort) continue;
    if (!msgs || msgs->size() != 2 || ((*msgs)[0] >> 1) == ((*msgs)[1] >> 1)) {
      abort = true;  // off-promise; keep exchanging for cost parity
      if (s.instrument()) s.note("dist1_round_decode_failure");
      continue;
    }
    int msg_for_role[2];
    msg_for_role[(*msgs)[0] >> 1] = static_cast<int>((*msgs)[0] & 1);
    msg_for_role[(*msgs)[1] >> 1] = static_cast<int>((*msgs)[1] & 1);
    for (size_t idx = 0; idx < sa.size(); ++idx) {
      BaseTree tree(&spec.bases[sa[idx]]);
      int m = (t < tree.native_depth() && tree.label(t) == 'B') ? msg_for_role[1]
                                                                : msg_for_role[0];
      path_a[idx] |= static_cast<uint64_t>(m) << t;
    }
    for (size_t idx = 0; idx < sb.size(); ++idx) {
      BaseTree tree(&spec.bases[sb[idx]]);
      int m = (t < tree.native_depth() && tree.label(t) == 'B') ? msg_for_role[1]
                                                                : msg_for_role[0];
      path_b[idx] |= static_cast<uint64_t>(m) << t;
    }
  }

  // Step 5: leaf-value recovery.
  SidonEncoding enc3 = lazy_sidon(p.l3, 2, enc3_seed);
  SidonExchange ex3(&enc3);
  if (!abort) {
    for (size_t idx = 0; idx < sa.size(); ++idx) {
      BaseTree tree(&spec.bases[sa[idx]]);
      uint64_t leaf = static_cast<uint64_t>(tree.leaf_value(path_a[idx]));
      ex3.add_a((hash_of(sa[idx], x[sa[idx]]) << p.lambda_bits) | leaf);
    }
    for (size_t idx = 0; idx < sb.size(); ++idx) {
      BaseTree tree(&spec.bases[sb[idx]]);
      uint64_t leaf = static_cast<uint64_t>(tree.leaf_value(path_b[idx]));
      ex3.add_b((hash_of(sb[idx], y[sb[idx]]) << p.lambda_bits) | leaf);
    }
  }
  auto leaves = ex3.exchange(s);
  if (abort || !leaves) return 0;
  uint64_t lambda_mask = (uint64_t{1} << p.lambda_bits) - 1;
  if (leaves->size() != 2) {
    if (s.instrument()) s.note("dist1_leaf_decode_failure");
    return 0;
  }
  uint64_t l0 = (*leaves)[0] & lambda_mask;
  uint64_t l1v = (*leaves)[1] & lambda_mask;
  if (l0 != l1v && s.instrument()) s.note("dist1_leaf_mismatch");
  return static_cast<int>(l0);  // both carry the common leaf under the promise
}

}  // namespace hdlab
