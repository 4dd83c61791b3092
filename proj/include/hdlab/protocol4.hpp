#pragma once

#include <memory>

#include "hdlab/tandem.hpp"

namespace hdlab {

/// A distance-r composition of tandem-compiled base problems, solvable by a
/// deterministic Hamming-distance oracle protocol.
struct Protocol4Spec {
  std::vector<TandemProtocol> bases;      // one per coordinate
  std::vector<TandemCompiled> compiled;   // Lemma-B.2 compilations
  std::vector<const SymbolCode*> codes;   // per-coordinate views for Fd queries
  int r = 1;
  PermInvariantG g;
  size_t k = 0;  // common codeword weight 2^q - 1

  size_t n() const { return bases.size(); }

  void check_input(const std::vector<int>& x) const {
    if (x.size() != bases.size()) throw ShapeError("protocol4: input arity mismatch");
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] < 0 || x[i] >= bases[i].alphabet)
        throw ShapeError("protocol4: symbol outside base alphabet");
  }

  /// Composed ground truth by direct evaluation.
  int truth(const std::vector<int>& x, const std::vector<int>& y) const {
    check_input(x);
    check_input(y);
    std::vector<int> answers;
    size_t diff = 0;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] != y[i]) {
        ++diff;
        answers.push_back(bases[i].eval(x[i], y[i]));
      }
    if (diff > static_cast<size_t>(r)) return kBot;
    return g.eval(std::move(answers));
  }
};

inline std::shared_ptr<Protocol4Spec> make_protocol4_spec(std::vector<TandemProtocol> bases,
                                                          int r, PermInvariantG g) {
  auto spec = std::make_shared<Protocol4Spec>();
  spec->bases = std::move(bases);
  spec->r = r;
  spec->g = std::move(g);
  if (spec->bases.empty()) throw ShapeError("protocol4: no bases");
  int q = spec->bases[0].q;
  for (const auto& b : spec->bases) {
    b.validate();
    if (b.q != q) throw ShapeError("protocol4: bases must share q");
    // one decode map serves every coordinate, so the output tables must agree
    if (b.rho != spec->bases[0].rho)
      throw ShapeError("protocol4: bases must share the output map rho");
  }
  for (const auto& b : spec->bases) spec->compiled.push_back(tandem_to_code(b));
  for (const auto& c : spec->compiled) spec->codes.push_back(&c.code);
  spec->k = spec->compiled[0].code.weight;
  return spec;
}

/// The deterministic oracle protocol: threshold queries on the symbol
/// indicators determine |Delta| (or bail out with kBot); then for each
/// d in [r] the exact total T_d of the F_d-composed code distances is read
/// off by scanning candidates with padded HD_{2rk^d} queries; Newton
/// recovery turns the power sums into the multiset of per-coordinate code
/// distances, and the decode map plus g give the output.
inline OracleTree<std::vector<int>> protocol4_tree(std::shared_ptr<const Protocol4Spec> spec) {
  OracleTree<std::vector<int>> tree;
  tree.name = "protocol4[r=" + std::to_string(spec->r) + "]";
  size_t cost = static_cast<size_t>(spec->r) + 1;
  for (int d = 1; d <= spec->r; ++d)
    cost += 2 * static_cast<size_t>(spec->r) * ipow(spec->k, d) + 1;
  tree.declared_cost = cost;

  tree.node_at = [spec](std::span<const int> answers) -> OracleNode<std::vector<int>> {
    using Input = std::vector<int>;
    int alphabet = spec->bases[0].alphabet;
    auto indicator = [alphabet](const Input& z) {
      return VirtualString{VsSymbolIndicator{&z, alphabet}};
    };

    size_t pos = 0;
    // Stage 1: |Delta| via EQ, HD_2, ..., HD_2r on the symbol indicators.
    int count = -1;
    for (int j = 0; j <= spec->r; ++j) {
      if (pos == answers.size()) {
        OracleKind kind = (j == 0) ? OracleKind::eq() : OracleKind::hd(2 * j);
        return OracleNode<Input>::query(kind, indicator, indicator);
      }
      if (answers[pos++] == 1) {
        count = j;
        break;
      }
    }
    if (count < 0) return OracleNode<Input>::make_leaf(kBot);
    if (count == 0) return OracleNode<Input>::make_leaf(spec->g.eval({}));

    // Stage 2: exact T_d by scanning candidates with padded threshold queries.
    std::vector<uint64_t> t_d;
    for (int d = 1; d <= spec->r; ++d) {
      uint64_t m_d = 2 * static_cast<uint64_t>(spec->r) * ipow(spec->k, d);
      bool found = false;
      for (uint64_t j = 0; j <= m_d; ++j) {
        if (pos == answers.size()) {
          auto build_a = [spec, d, j, m_d](const Input& z) {
            return VirtualString{VsFdConcat{&spec->codes, &z, d}, m_d, m_d - j};
          };
          auto build_b = [spec, d, m_d](const Input& z) {
            return VirtualString{VsFdConcat{&spec->codes, &z, d}, m_d, 0};
          };
          return OracleNode<Input>::query(OracleKind::hd(m_d), build_a, build_b);
        }
        if (answers[pos++] == 1) {
          t_d.push_back(j);
          found = true;
          break;
        }
      }
      if (!found)
        throw InconsistentRecovery("protocol4: T_" + std::to_string(d) +
                                   " scan exhausted every candidate");
    }

    // Stage 3: Newton recovery of the code-distance multiset, then g o D.
    std::vector<long long> sums;
    for (int d = 1; d <= spec->r; ++d)
      sums.push_back(static_cast<long long>(count) *
                         static_cast<long long>(ipow(spec->k, d)) -
                     static_cast<long long>(t_d[d - 1] / 2));
    std::vector<int> dists =
        newton_recover(sums, spec->r, static_cast<int>(spec->k), count);
    std::vector<int> outputs;
    for (int a : dists)
      outputs.push_back(spec->compiled[0].decode_distance(static_cast<uint64_t>(a)));
    return OracleNode<Input>::make_leaf(spec->g.eval(std::move(outputs)));
  };
  return tree;
}

}  // namespace hdlab
