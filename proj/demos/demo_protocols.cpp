// Runs the named protocols once each on small inputs and prints their
// outputs and costs.

#include <iostream>

#include "hdlab/hdlab.hpp"

using namespace hdlab;

int main() {
  const double delta = 0.125;

  // A {4,4} instance: 6 rows of 8 bits, rows 1 and 4 at distance 4.
  auto sl = slice_strings(8, 4);
  auto neighbor_at4 = [&](const BitString& row) {
    for (const auto& cand : sl)
      if (hamming_distance(row, cand) == 4) return cand;
    return row;
  };
  BlockedString x(6, 8), y(6, 8);
  for (size_t i = 0; i < 6; ++i) x.set_block(i, sl[(i * 11) % sl.size()]);
  y = x;
  y.blocks[1] = neighbor_at4(x.blocks[1]);
  y.blocks[4] = neighbor_at4(x.blocks[4]);
  std::cout << "input signature: " << distance_signature(x, y).to_string() << "\n\n";

  auto p1 = hd44_protocol(delta);
  auto out1 = run_protocol(p1, x, y, 7);
  std::cout << "randomized {4,4} protocol: output " << out1.output << " (truth "
            << truth_hd44(x, y) << "), " << out1.cost.to_string() << "\n";

  // The deterministic {2,2} oracle protocol on a {2,2} instance.
  BlockedString u(4, 4), v(4, 4);
  u.set_block(0, BitString::from_string("1100"));
  v.set_block(0, BitString::from_string("1001"));
  u.set_block(2, BitString::from_string("0110"));
  v.set_block(2, BitString::from_string("0101"));
  auto tree2 = hd22_oracle_tree();
  auto run2 = run_oracle_protocol(tree2, u, v);
  std::cout << "{2,2} oracle protocol:     output " << run2.output << " (truth "
            << truth_hdkk(2, u, v) << "), " << run2.query_count << " oracle queries\n";

  // The conditional {4,4} oracle protocol, instantiated with the product
  // code on the weight-4 slice of 8-bit strings.
  auto pc = protocol3_code_single(make_product_slice_code(4));
  std::cout << "product code transfer:     f(2)=" << pc->f2 << " f(4)=" << pc->f4
            << " f(6)=" << pc->f6 << "  (2 f(4) = " << 2 * pc->f4
            << " vs f(2)+f(6) = " << pc->f2 + pc->f6 << ")\n";
  auto tree3 = hd44_conditional_tree(pc, 4);
  BlockedString a(4, 8), b(4, 8);
  for (size_t i = 0; i < 4; ++i) a.set_block(i, sl[i * 7]);
  b = a;
  b.blocks[0] = sl[12];
  b.blocks[2] = sl[30];
  auto run3 = run_oracle_protocol(tree3, a, b);
  std::cout << "conditional {4,4} oracle:  output " << run3.output << " (truth "
            << truth_hd44(a, b) << ") on signature "
            << distance_signature(a, b).to_string() << "\n";

  // Cost of the k-Hamming-Distance protocol never depends on n.
  for (size_t n : {16u, 256u, 4096u}) {
    auto p = hd_k_protocol(2, delta, n);
    BitString s(n), t(n);
    t.flip(0);
    t.flip(n / 2);
    auto out = run_protocol(p, s, t, 3);
    std::cout << "hd_2 at n=" << n << ": output " << out.output << ", bits "
              << out.cost.bits_sent << "\n";
  }
  return 0;
}
