#pragma once

#include "hdlab/bits.hpp"

namespace hdlab {

/// p(x) = (x, x, 0, ..., 0) with n blocks of n bits: one distance-k' pair
/// becomes a {k',k'} signature, so HD_k'(x,y) = HD_{k',k'}(p(x), p(y)).
inline BlockedString pad_hdk_to_hdkk(const BitString& x, size_t n) {
  if (x.size() != n) throw ShapeError("pad_hdk_to_hdkk: |x| must equal n");
  BlockedString out(n, n);
  out.set_block(0, x);
  out.set_block(1, x);
  return out;
}

}  // namespace hdlab
