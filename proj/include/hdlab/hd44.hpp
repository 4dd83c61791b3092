#pragma once

#include <cmath>

#include "hdlab/compose.hpp"
#include "hdlab/count_unequal.hpp"

namespace hdlab {

struct Hd44Params {
  double delta = 0.125;
  int boost_rounds = 0;   // ceil(log2(3/delta)) unless overridden
  double count_delta = 0;  // delta/3 for the two-unequal-rows check
  double sub_delta = 0;    // delta/(6 * boost_rounds) per HD_4 subcall
};

inline Hd44Params derive_hd44_params(double delta, int boost_override = 0) {
  if (!(delta > 0.0 && delta < 1.0)) throw ShapeError("hd44_protocol: delta in (0,1)");
  Hd44Params p;
  p.delta = delta;
  p.boost_rounds = boost_override > 0
                       ? boost_override
                       : std::max(1, ceil_log2(static_cast<uint64_t>(std::ceil(3.0 / delta))));
  p.count_delta = delta / 3.0;
  p.sub_delta = delta / (6.0 * p.boost_rounds);
  return p;
}

namespace detail {

inline BitString gather_rows(const BlockedString& x, const std::vector<uint8_t>& side,
                             uint8_t want) {
  size_t count = 0;
  for (uint8_t s : side)
    if (s == want) ++count;
  BitString out(count * x.block_len);
  size_t off = 0;
  for (size_t i = 0; i < x.block_count(); ++i) {
    if (side[i] != want) continue;
    for (size_t b = 0; b < x.block_len; ++b)
      if (x.blocks[i].get(b)) out.set(off + b, true);
    off += x.block_len;
  }
  return out;
}

}  // namespace detail

/// The randomized {4,4}-Hamming-distance protocol: check there are precisely
/// two unequal rows, then repeatedly split the rows into two random parts and
/// certify distance 4 on each part with HD_4 subprotocols. Accepts iff the
/// row check passed and some round certified both parts. All rounds always
/// run, so the cost is input-independent.
///
/// exact_subcalls substitutes the HD_4 subprotocol with the exact predicate;
/// the one-sidedness tests use it to isolate the splitting logic.
inline SymmetricProtocol<BlockedString> hd44_protocol(double delta,
                                                      bool exact_subcalls = false,
                                                      int boost_override = 0) {
  Hd44Params params = derive_hd44_params(delta, boost_override);
  CountParams count_params = derive_count_params(2, params.count_delta);
  SymmetricProtocol<BlockedString> p;
  p.name = "hd44";
  p.oblivious = !exact_subcalls;
  p.run = [params, count_params, exact_subcalls](const BlockedString& x,
                                                 const BlockedString& y, Session& s) {
    x.require_same_shape(y, "hd44_protocol");
    size_t n = x.block_count();

    // Step 1: rows as symbols of a 2^len-ary alphabet; require exactly two
    // unequal ones.
    auto count = count_unequal_core(
        n, [&](size_t j) { return x.blocks[j].fold_key(); },
        [&](size_t j) { return y.blocks[j].fold_key(); }, count_params, s);
    bool two_rows = !count.more_than_r && count.count == 2;

    // Step 2: boosted random split; each part checked with HD_4.
    bool certified = false;
    std::vector<uint8_t> side(n);
    for (int round = 0; round < params.boost_rounds; ++round) {
      for (size_t i = 0; i < n; ++i) side[i] = static_cast<uint8_t>(s.tape().next_bit());
      BitString xa = detail::gather_rows(x, side, 0);
      BitString ya = detail::gather_rows(y, side, 0);
      BitString xb = detail::gather_rows(x, side, 1);
      BitString yb = detail::gather_rows(y, side, 1);
      int ok_a, ok_b;
      if (exact_subcalls) {
        ok_a = hamming_distance(xa, ya) == 4;
        ok_b = hamming_distance(xb, yb) == 4;
      } else {
        auto hd4a = hd_k_protocol(4, params.sub_delta, xa.size());
        auto hd4b = hd_k_protocol(4, params.sub_delta, xb.size());
        ok_a = hd4a.run(xa, ya, s);
        ok_b = hd4b.run(xb, yb, s);
      }
      if (ok_a && ok_b) certified = true;
      if (s.instrument()) {
        s.note("hd44_rounds");
        if (ok_a && ok_b) s.note("hd44_round_certified");
      }
    }
    return (two_rows && certified) ? 1 : 0;
  };
  return p;
}

}  // namespace hdlab
