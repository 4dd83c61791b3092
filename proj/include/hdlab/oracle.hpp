#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "hdlab/errors.hpp"
#include "hdlab/virtual_string.hpp"

namespace hdlab {

/// A GapHD query landed in the promise gap while the oracle was in strict
/// mode. Default mode instead answers as if dist <= gamma*n; strict mode
/// exists to catch construction bugs in reductions that promise gap-freeness.
struct GapViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct OracleKind {
  enum Tag { EQ, HD, GapHD } tag = EQ;
  uint64_t k = 0;       // HD parameter
  double gamma = 0.25;  // GapHD parameter
  bool strict_gap = false;

  static OracleKind eq() { return {EQ, 0, 0, false}; }
  static OracleKind hd(uint64_t k) { return {HD, k, 0, false}; }
  static OracleKind gap_hd(double gamma, bool strict = false) {
    return {GapHD, 0, gamma, strict};
  }

  std::string name() const {
    switch (tag) {
      case EQ:
        return "EQ";
      case HD:
        return "HD_" + std::to_string(k);
      case GapHD:
        return "GapHD";
    }
    return "?";
  }
};

/// Exact oracle answers; oracles are idealized resources and are never
/// approximated by the engine.
inline int oracle_answer(const OracleKind& kind, const VirtualString& a,
                         const VirtualString& b) {
  uint64_t d = vs_distance(a, b);
  switch (kind.tag) {
    case OracleKind::EQ:
      return d == 0 ? 1 : 0;
    case OracleKind::HD:
      return d == kind.k ? 1 : 0;
    case OracleKind::GapHD: {
      double len = static_cast<double>(vs_length(a));
      if (static_cast<double>(d) <= kind.gamma * len) return 1;
      if (static_cast<double>(d) >= (1.0 - kind.gamma) * len) return 0;
      if (kind.strict_gap) throw GapViolation("GapHD query inside the gap");
      return 1;
    }
  }
  return 0;
}

/// One node of a deterministic oracle protocol: either a leaf with an output
/// label, or an oracle query with one builder per party.
template <typename Input>
struct OracleNode {
  bool leaf = false;
  int output = 0;
  OracleKind kind;
  std::function<VirtualString(const Input&)> build_a, build_b;

  static OracleNode make_leaf(int out) {
    OracleNode n;
    n.leaf = true;
    n.output = out;
    return n;
  }
  static OracleNode query(OracleKind k, std::function<VirtualString(const Input&)> a,
                          std::function<VirtualString(const Input&)> b) {
    OracleNode n;
    n.kind = k;
    n.build_a = std::move(a);
    n.build_b = std::move(b);
    return n;
  }
};

/// Deterministic tree addressed by the answer path; node_at returns the node
/// reached after the given sequence of oracle answers. Trees too large to
/// materialize are expressed directly as a function of the path.
template <typename Input>
struct OracleTree {
  std::string name;
  size_t declared_cost = 0;
  std::function<OracleNode<Input>(std::span<const int> answers)> node_at;
};

struct OracleRun {
  int output = 0;
  size_t query_count = 0;
  std::map<std::string, uint64_t> queries_by_kind;
  std::vector<int> answers;
};

template <typename Input>
inline OracleRun run_oracle_protocol(const OracleTree<Input>& tree, const Input& x,
                                     const Input& y) {
  OracleRun run;
  for (;;) {
    OracleNode<Input> node = tree.node_at(run.answers);
    if (node.leaf) {
      run.output = node.output;
      return run;
    }
    if (run.query_count >= tree.declared_cost)
      throw ShapeError("run_oracle_protocol: path exceeds declared cost in " + tree.name);
    int ans = oracle_answer(node.kind, node.build_a(x), node.build_b(y));
    ++run.query_count;
    ++run.queries_by_kind[node.kind.name()];
    run.answers.push_back(ans);
  }
}

}  // namespace hdlab
