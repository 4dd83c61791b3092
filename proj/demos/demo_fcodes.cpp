// Builds the example distance-transfer codes, prints their measured
// transfers, and shows the decomposition and search tools.

#include <iostream>

#include "hdlab/hdlab.hpp"

using namespace hdlab;

int main() {
  for (const auto& code : {make_repetition_code(6, 2), make_parity_code(6),
                           make_merged_indicator_code(8, 6), make_product_slice_code(4),
                           make_affine_slice_code(4, 2, 1)}) {
    std::cout << code.name << " (n=" << code.n << ", m=" << code.m << "): f =";
    std::map<size_t, std::set<size_t>> transfer;
    for (size_t i = 0; i < code.domain_size(); ++i)
      for (size_t j = i + 1; j < code.domain_size(); ++j)
        transfer[hamming_distance(code.domain[i], code.domain[j])].insert(
            symmdiff_size(code.codewords[i], code.codewords[j]));
    for (const auto& [d, vals] : transfer) {
      std::cout << " " << d << "->";
      bool first = true;
      for (size_t v : vals) {
        std::cout << (first ? "" : "|") << v;
        first = false;
      }
    }
    std::cout << "\n";
  }

  std::cout << "\ndelta decomposition of affine(2,1) on the weight-4 ball over [12]:\n";
  auto ball = make_affine_ball_code(12, 4, 2, 1);
  auto dd = delta_decompose(ball, 4);
  for (int l = 0; l <= 4; ++l)
    std::cout << "  level " << l << ": |Delta| = " << dd.delta_size[l]
              << ", |E_l| = " << dd.gamma_size[l] << "\n";

  std::cout << "\nsearching width-6 codes for f(d) = 2d on the 3-cube:\n";
  SearchConfig cfg;
  cfg.n = 3;
  cfg.m = 6;
  for (int d = 0; d <= 3; ++d) cfg.f.set(d, 2 * d);
  cfg.max_codes = 2;
  auto res = search_fcodes(cfg);
  std::cout << "  found " << res.codes.size() << " code(s), explored " << res.nodes_explored
            << " nodes\n";
  return 0;
}
