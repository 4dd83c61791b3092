#pragma once

#include <cmath>
#include <memory>

#include "hdlab/base_matrix.hpp"
#include "hdlab/count_unequal.hpp"
#include "hdlab/dist1.hpp"
#include "hdlab/equality.hpp"

namespace hdlab {

/// All derived ranges and widths for a distance-r composition, centralized so
/// cost reports are reproducible from (r, delta, depth, lambda) alone.
struct ComposeParams {
  int r = 1;
  double delta = 0.125;
  CountParams count;         // step 1 gate at error delta/10
  uint64_t label_range = 0;  // h(j) ~ [ceil(5 r^2 / delta)]
  uint64_t hash_range = 0;   // hash_j ~ [ceil(10 r / delta)]
  int label_bits = 0, hash_bits = 0;
  int l_main = 0, s_main = 0;  // 2r-Sidon over label||hash
  Dist1Params d1;              // per-class promise protocol at delta/(10 r)

  uint64_t expected_bits() const {
    return 2ull * count.sidon_width + 2ull * s_main +
           static_cast<uint64_t>(r) * dist1_bits(d1);
  }
};

inline ComposeParams derive_compose_params(int r, double delta, int depth, int lambda) {
  if (r < 1) throw ShapeError("compose_distance_r: need r >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ShapeError("compose_distance_r: delta in (0,1)");
  ComposeParams p;
  p.r = r;
  p.delta = delta;
  p.count = derive_count_params(r, delta / 10.0);
  p.label_range = static_cast<uint64_t>(std::ceil(5.0 * r * r / delta));
  p.hash_range = static_cast<uint64_t>(std::ceil(10.0 * r / delta));
  p.label_bits = ceil_log2(p.label_range);
  p.hash_bits = ceil_log2(p.hash_range);
  p.l_main = p.label_bits + p.hash_bits;
  p.s_main = sidon_width(p.l_main, 2 * r);
  p.d1 = derive_dist1_params(delta / (10.0 * r), depth, lambda);
  return p;
}

/// The distance-r composition protocol: outputs kBot when more than r
/// coordinates differ, otherwise g applied to the base answers on the
/// differing coordinates, each side failing with probability <= delta.
/// Always runs every exchange and exactly r dist1 instances (empty classes
/// are padding), so bits_sent depends only on (r, delta, depth, lambda).
inline SymmetricProtocol<std::vector<int>> compose_distance_r(
    std::shared_ptr<const CompositionSpec> spec) {
  spec->validate();
  ComposeParams params =
      derive_compose_params(spec->r, spec->delta, spec->max_tree_depth(), spec->lambda());
  SymmetricProtocol<std::vector<int>> p;
  p.name = "compose[r=" + std::to_string(spec->r) + ",g=" + spec->g.name + "]";
  p.oblivious = true;
  p.run = [spec, params](const std::vector<int>& x, const std::vector<int>& y, Session& s) {
    spec->check_input(x);
    spec->check_input(y);
    size_t n = spec->n();

    // Step 1: gate on |Delta| <= r with error delta/10.
    auto gate = count_unequal_core(
        n, [&](size_t j) { return static_cast<uint64_t>(x[j]); },
        [&](size_t j) { return static_cast<uint64_t>(y[j]); }, params.count, s);
    bool bot = gate.more_than_r;

    // Step 2: per-coordinate labels and per-value hashes.
    std::vector<uint64_t> label(n);
    for (size_t j = 0; j < n; ++j) label[j] = s.tape().uniform(params.label_range);
    uint64_t hash_salt = s.tape().next_bits(64);
    uint64_t enc_seed = s.tape().next_bits(64);

    // Step 3: one 2r-Sidon exchange recovers the label||hash set of the
    // differing coordinates.
    SidonEncoding enc = lazy_sidon(params.l_main, 2 * params.r, enc_seed);
    SidonExchange ex(&enc);
    for (size_t j = 0; j < n; ++j) {
      uint64_t ha = bounded_hash(mix2(hash_salt, j), static_cast<uint64_t>(x[j]),
                                 params.hash_range);
      uint64_t hb = bounded_hash(mix2(hash_salt, j), static_cast<uint64_t>(y[j]),
                                 params.hash_range);
      ex.add_a((label[j] << params.hash_bits) | ha);
      ex.add_b((label[j] << params.hash_bits) | hb);
    }
    auto recovered = ex.exchange(s);

    std::vector<uint64_t> labels_hit;
    if (!recovered) {
      bot = true;
    } else {
      for (uint64_t payload : *recovered) {
        uint64_t l = payload >> params.hash_bits;
        if (labels_hit.empty() || labels_hit.back() != l) labels_hit.push_back(l);
      }
      if (labels_hit.size() > static_cast<size_t>(params.r)) {
        bot = true;
        if (s.instrument()) s.note("compose_label_overflow");
      }
    }
    if (bot) labels_hit.clear();

    // Step 4: one dist1 instance per recovered label class, padded to r runs.
    std::vector<int> answers;
    std::vector<size_t> coords;
    for (int cls = 0; cls < params.r; ++cls) {
      coords.clear();
      if (cls < static_cast<int>(labels_hit.size())) {
        for (size_t j = 0; j < n; ++j)
          if (label[j] == labels_hit[cls]) coords.push_back(j);
      }
      int ans = dist1_run(*spec, coords, x, y, params.d1, s);
      if (cls < static_cast<int>(labels_hit.size())) answers.push_back(ans);
    }

    if (bot) return kBot;
    return spec->g.eval(std::move(answers));
  };
  return p;
}

/// k-Hamming Distance built as the distance-k composition of 2x2 xor bases
/// with g = hd-count (k = 0 degenerates to the equality fingerprint). The
/// cost never depends on n.
inline SymmetricProtocol<BitString> hd_k_protocol(size_t k, double delta, size_t n) {
  SymmetricProtocol<BitString> p;
  p.name = "hd_k[k=" + std::to_string(k) + "]";
  p.oblivious = true;
  if (n == 0) {
    // empty inputs are at distance 0
    p.run = [k](const BitString&, const BitString&, Session&) { return k == 0 ? 1 : 0; };
    return p;
  }
  if (k == 0) {
    int b = std::max(1, ceil_log2(static_cast<uint64_t>(std::ceil(1.0 / delta))));
    auto eq = equality_protocol(b);
    p.run = [eq](const BitString& x, const BitString& y, Session& s) {
      return eq.run(x, y, s);
    };
    return p;
  }
  auto spec = std::make_shared<CompositionSpec>();
  spec->bases.assign(n, BaseMatrix::xor_matrix());
  spec->r = static_cast<int>(k);
  spec->delta = delta;
  spec->g = g_hd_count(static_cast<int>(k));
  auto composed = compose_distance_r(spec);
  p.run = [composed](const BitString& x, const BitString& y, Session& s) {
    x.require_same_length(y, "hd_k_protocol");
    std::vector<int> xs(x.size()), ys(y.size());
    for (size_t i = 0; i < x.size(); ++i) {
      xs[i] = x.get(i);
      ys[i] = y.get(i);
    }
    int out = composed.run(xs, ys, s);
    return out == kBot ? 0 : out;
  };
  return p;
}

}  // namespace hdlab
