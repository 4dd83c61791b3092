#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "hdlab/cost.hpp"
#include "hdlab/oracle.hpp"
#include "hdlab/random.hpp"

namespace hdlab {

/// One protocol run: a shared public-coin tape, cost accounting, and an
/// optional transcript sink. Sessions are independent of each other; a single
/// session is single-threaded.
class Session {
 public:
  explicit Session(uint64_t seed) : tape_(seed) {}

  RandomTape& tape() { return tape_; }

  /// Record a message of nbits from the given party ('A' or 'B').
  void send(char party, uint64_t nbits) {
    cost_.bits_sent += nbits;
    if (transcript_)
      transcript_->push_back(std::string("SEND ") + party + " " + std::to_string(nbits));
  }

  int query(const OracleKind& kind, const VirtualString& a, const VirtualString& b) {
    int ans = oracle_answer(kind, a, b);
    ++cost_.oracle_queries[kind.name()];
    if (transcript_)
      transcript_->push_back("QUERY " + kind.name() + " " + std::to_string(ans));
    return ans;
  }

  void record_output(int value) {
    if (transcript_) transcript_->push_back("OUTPUT " + std::to_string(value));
  }

  CostReport finish() {
    cost_.random_bits_drawn = tape_.bits_drawn();
    return cost_;
  }

  void capture_transcript(std::vector<std::string>* sink) { transcript_ = sink; }

  /// Instrumented runs perform extra internal consistency assertions and
  /// count notable events (recovery mismatches, role collisions, ...).
  void set_instrument(bool on) { instrument_ = on; }
  bool instrument() const { return instrument_; }
  void note(const std::string& key, uint64_t delta = 1) { notes_[key] += delta; }
  const std::map<std::string, uint64_t>& notes() const { return notes_; }

 private:
  RandomTape tape_;
  CostReport cost_;
  std::vector<std::string>* transcript_ = nullptr;
  bool instrument_ = false;
  std::map<std::string, uint64_t> notes_;
};

/// A runnable randomized two-party protocol over inputs of type Input.
/// Oblivious protocols promise bits_sent independent of the input values at
/// fixed parameters; the flag is asserted by tests, not trusted.
template <typename Input>
struct SymmetricProtocol {
  std::string name;
  bool oblivious = true;
  std::function<int(const Input&, const Input&, Session&)> run;
};

struct RunOutcome {
  int output = 0;
  CostReport cost;
};

template <typename Input>
inline RunOutcome run_protocol(const SymmetricProtocol<Input>& p, const Input& x,
                               const Input& y, uint64_t seed) {
  Session s(seed);
  RunOutcome out;
  out.output = p.run(x, y, s);
  s.record_output(out.output);
  out.cost = s.finish();
  return out;
}

template <typename Input>
inline RunOutcome run_protocol_transcribed(const SymmetricProtocol<Input>& p, const Input& x,
                                           const Input& y, uint64_t seed,
                                           std::vector<std::string>& transcript) {
  Session s(seed);
  s.capture_transcript(&transcript);
  RunOutcome out;
  out.output = p.run(x, y, s);
  s.record_output(out.output);
  out.cost = s.finish();
  return out;
}

// ---------------------------------------------------------------------------
// Error estimation
// ---------------------------------------------------------------------------

struct WilsonInterval {
  double low = 0.0, high = 1.0;
};

/// 95% Wilson score interval for e errors in t trials.
inline WilsonInterval wilson95(uint64_t errors, uint64_t trials) {
  if (trials == 0) return {0.0, 1.0};
  const double z = 1.959963984540054;
  double n = static_cast<double>(trials);
  double p = static_cast<double>(errors) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (p + z2 / (2 * n)) / denom;
  double half = z * std::sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

struct ErrorEstimate {
  uint64_t trials = 0;
  uint64_t errors = 0;
  double rate = 0.0;
  WilsonInterval interval;
  CostReport total_cost;
};

/// Fraction of (case, fresh tape) runs disagreeing with the truth function.
/// Trial i uses the tape seed (seed xor i), so a parallel fan-out would
/// reproduce the sequential result exactly.
template <typename Input>
inline ErrorEstimate estimate_error(
    const SymmetricProtocol<Input>& p,
    const std::function<std::pair<Input, Input>(uint64_t)>& case_source,
    const std::function<int(const Input&, const Input&)>& truth_fn, uint64_t trials,
    uint64_t seed) {
  if (trials == 0) throw ShapeError("estimate_error: trials must be >= 1");
  ErrorEstimate est;
  est.trials = trials;
  for (uint64_t t = 0; t < trials; ++t) {
    auto [x, y] = case_source(t);
    RunOutcome out = run_protocol(p, x, y, trial_seed(seed, t));
    if (out.output != truth_fn(x, y)) ++est.errors;
    est.total_cost += out.cost;
  }
  est.rate = static_cast<double>(est.errors) / static_cast<double>(trials);
  est.interval = wilson95(est.errors, est.trials);
  return est;
}

}  // namespace hdlab
