#pragma once

#include <memory>

#include "hdlab/codes.hpp"
#include "hdlab/oracle.hpp"

namespace hdlab {

/// The deterministic {2,2}-Hamming-distance oracle protocol: three queries on
/// every path (exactly-two-unequal-rows via HD_4 on row indicators, total
/// distance via HD_4 on the raw strings, all-row-distances-even via EQ on the
/// parity code), accepting only when all three pass.
inline OracleTree<BlockedString> hd22_oracle_tree() {
  OracleTree<BlockedString> t;
  t.name = "hd22_tree";
  t.declared_cost = 3;
  t.node_at = [](std::span<const int> answers) -> OracleNode<BlockedString> {
    auto indicator = [](const BlockedString& z) {
      return VirtualString{VsRowIndicator{&z}};
    };
    auto flattened = [](const BlockedString& z) { return VirtualString{VsFlattened{&z}}; };
    auto parity = [](const BlockedString& z) { return VirtualString{VsParityConcat{&z}}; };
    switch (answers.size()) {
      case 0:
        return OracleNode<BlockedString>::query(OracleKind::hd(4), indicator, indicator);
      case 1:
        return OracleNode<BlockedString>::query(OracleKind::hd(4), flattened, flattened);
      case 2:
        return OracleNode<BlockedString>::query(OracleKind::eq(), parity, parity);
      default: {
        int ok = answers[0] && answers[1] && answers[2];
        return OracleNode<BlockedString>::make_leaf(ok);
      }
    }
  };
  return t;
}

/// Everything hd44_conditional_tree needs to know about its code, measured
/// and verified at construction. Single-player codes share one table between
/// the players.
struct Protocol3Code {
  std::shared_ptr<Code> e1, e2;
  size_t f0 = 0, f2 = 0, f4 = 0, f6 = 0;
};

/// Builds the conditional {4,4} oracle protocol from a code that transfers
/// distances {2,4,6} non-affinely at this n. The code is verified as an
/// f-code over its slice domain up front; affine codes are rejected since the
/// final query could not separate {2,6} from {4,4}.
inline OracleTree<BlockedString> hd44_conditional_tree(std::shared_ptr<Protocol3Code> pc,
                                                       size_t n_rows) {
  PartialF f;
  f.set(0, pc->f0);
  f.set(2, pc->f2);
  f.set(4, pc->f4);
  f.set(6, pc->f6);
  auto violations = verify_two_player_fcode(*pc->e1, *pc->e2, f, 1);
  if (!violations.empty())
    throw ShapeError("hd44_conditional_tree: code fails f-code verification: " +
                     violations[0].to_string());
  if (2 * pc->f4 == pc->f2 + pc->f6)
    throw ShapeError("hd44_conditional_tree: code is affine at this n; "
                     "2 f(4) == f(2) + f(6) cannot be separated");

  // Equal rows contribute f(0) each across players; the two unequal rows
  // contribute f(4)+f(4) in the accepting case.
  uint64_t final_k = 2 * pc->f4 + (n_rows - 2) * pc->f0;

  OracleTree<BlockedString> t;
  t.name = "hd44_conditional";
  t.declared_cost = 4;
  t.node_at = [pc, final_k](std::span<const int> answers) -> OracleNode<BlockedString> {
    auto indicator = [](const BlockedString& z) {
      return VirtualString{VsRowIndicator{&z}};
    };
    auto flattened = [](const BlockedString& z) { return VirtualString{VsFlattened{&z}}; };
    auto parity = [](const BlockedString& z) { return VirtualString{VsParityConcat{&z}}; };
    auto coded1 = [pc](const BlockedString& z) {
      return VirtualString{VsCodeConcat{&z, pc->e1.get()}};
    };
    auto coded2 = [pc](const BlockedString& z) {
      return VirtualString{VsCodeConcat{&z, pc->e2.get()}};
    };
    // A failed check rejects immediately; the code queries only ever see
    // inputs that survived the earlier filters (the code is defined on the
    // slice, and off-slice rows cannot pass the evenness check anyway).
    if (!answers.empty() && answers.back() == 0)
      return OracleNode<BlockedString>::make_leaf(0);
    switch (answers.size()) {
      case 0:  // precisely two unequal rows
        return OracleNode<BlockedString>::query(OracleKind::hd(4), indicator, indicator);
      case 1:  // total distance 8
        return OracleNode<BlockedString>::query(OracleKind::hd(8), flattened, flattened);
      case 2:  // every row distance even: {2,6} or {4,4} remain
        return OracleNode<BlockedString>::query(OracleKind::eq(), parity, parity);
      case 3:  // 2 f(4) vs f(2)+f(6) separates the two cases
        return OracleNode<BlockedString>::query(OracleKind::hd(final_k), coded1, coded2);
      default:
        return OracleNode<BlockedString>::make_leaf(1);
    }
  };
  return t;
}

/// Single-player convenience: both players apply the same code (f(0) = 0).
inline std::shared_ptr<Protocol3Code> protocol3_code_single(Code code) {
  auto pc = std::make_shared<Protocol3Code>();
  PartialF measured = measure_f(code, {2, 4, 6});
  pc->f0 = 0;
  pc->f2 = measured.at(2);
  pc->f4 = measured.at(4);
  pc->f6 = measured.at(6);
  pc->e1 = std::make_shared<Code>(std::move(code));
  pc->e2 = pc->e1;
  return pc;
}

/// Two-player variant: f measured across players, including f(0).
inline std::shared_ptr<Protocol3Code> protocol3_code_two_player(TwoPlayerCode code) {
  auto pc = std::make_shared<Protocol3Code>();
  code.check_shapes();
  pc->e1 = std::make_shared<Code>(std::move(code.e1));
  pc->e2 = std::make_shared<Code>(std::move(code.e2));
  const Code& e1 = *pc->e1;
  const Code& e2 = *pc->e2;
  pc->f0 = symmdiff_size(e1.codewords[0], e2.codewords[0]);
  bool have2 = false, have4 = false, have6 = false;
  for (size_t i = 0; i < e1.domain_size() && !(have2 && have4 && have6); ++i)
    for (size_t j = 0; j < e1.domain_size() && !(have2 && have4 && have6); ++j) {
      size_t d = hamming_distance(e1.domain[i], e1.domain[j]);
      size_t got = symmdiff_size(e1.codewords[i], e2.codewords[j]);
      if (d == 2 && !have2) pc->f2 = got, have2 = true;
      if (d == 4 && !have4) pc->f4 = got, have4 = true;
      if (d == 6 && !have6) pc->f6 = got, have6 = true;
    }
  if (!(have2 && have4 && have6))
    throw ShapeError("protocol3_code_two_player: domain has no pairs at distances 2,4,6");
  return pc;
}

}  // namespace hdlab
