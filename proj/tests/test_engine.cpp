#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "hdlab/equality.hpp"
#include "hdlab/oracle.hpp"
#include "hdlab/protocol.hpp"
#include "hdlab/random.hpp"
#include "hdlab/virtual_string.hpp"

using namespace hdlab;

TEST(Tape, DeterminismAndRanges) {
  RandomTape a(42), b(42), c(43);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(a.next_bits(13), b.next_bits(13));
  bool differs = false;
  for (int i = 0; i < 100; ++i)
    if (a.next_bits(17) != c.next_bits(17)) differs = true;
  EXPECT_TRUE(differs);

  RandomTape t(7);
  std::vector<int> counts(5, 0);
  for (int i = 0; i < 50000; ++i) {
    uint64_t v = t.uniform(5);
    ASSERT_LT(v, 5u);
    ++counts[v];
  }
  for (int v : counts) {  // loose uniformity: each value near 10000
    EXPECT_GT(v, 9300);
    EXPECT_LT(v, 10700);
  }
  EXPECT_GT(t.bits_drawn(), 0u);
}

TEST(Tape, BoundedHashIsAFunction) {
  for (uint64_t salt : {1ull, 99ull}) {
    for (uint64_t v = 0; v < 50; ++v) {
      uint64_t h = bounded_hash(salt, v, 160);
      ASSERT_LT(h, 160u);
      ASSERT_EQ(h, bounded_hash(salt, v, 160));
    }
  }
}

TEST(Engine, ReplayDeterminism) {
  auto eq = equality_protocol(3);
  BitString x = BitString::from_string("1011001110100101");
  BitString y = BitString::from_string("1011001110100100");
  std::vector<std::string> t1, t2;
  auto r1 = run_protocol_transcribed(eq, x, y, 12345, t1);
  auto r2 = run_protocol_transcribed(eq, x, y, 12345, t2);
  EXPECT_EQ(r1.output, r2.output);
  EXPECT_TRUE(r1.cost == r2.cost);
  EXPECT_EQ(t1, t2);
}

TEST(Engine, TranscriptGolden) {
  auto eq = equality_protocol(2);
  BitString x = BitString::from_string("11001010");
  BitString y = BitString::from_string("11001010");
  std::vector<std::string> lines;
  run_protocol_transcribed(eq, x, y, 7, lines);

  std::ifstream golden(std::string(HDLAB_SOURCE_DIR) + "/tests/golden/transcript_equality.txt");
  ASSERT_TRUE(golden.good());
  std::vector<std::string> expected;
  std::string line;
  while (std::getline(golden, line)) expected.push_back(line);
  EXPECT_EQ(lines, expected);
}

TEST(Oracle, ExactAnswers) {
  BitString x = BitString::from_string("1100");
  VirtualString a{VsExplicit{x}}, b{VsExplicit{x}};
  EXPECT_EQ(oracle_answer(OracleKind::eq(), a, b), 1);

  // indicator-encoded rows: two unequal symbols cost distance 4 regardless of
  // the alphabet size
  BlockedString u(5, 10), v(5, 10);
  u.set_block(1, BitString::from_string("1111100000"));
  v.set_block(1, BitString::from_string("0000011111"));
  u.set_block(4, BitString::from_string("1000000000"));
  v.set_block(4, BitString::from_string("0000000001"));
  VirtualString iu{VsRowIndicator{&u}}, iv{VsRowIndicator{&v}};
  EXPECT_EQ(vs_distance(iu, iv), 4u);
  EXPECT_EQ(oracle_answer(OracleKind::hd(4), iu, iv), 1);

  // {2,6} signature pair has total distance 8
  BlockedString p(3, 8), q(3, 8);
  p.set_block(0, BitString::from_string("11000000"));
  q.set_block(0, BitString::from_string("01100000"));
  p.set_block(2, BitString::from_string("11111100"));
  q.set_block(2, BitString::from_string("00000110"));
  VirtualString fp{VsFlattened{&p}}, fq{VsFlattened{&q}};
  EXPECT_EQ(oracle_answer(OracleKind::hd(8), fp, fq), 1);
}

TEST(Oracle, GapModes) {
  BitString x = BitString::from_string("110000");
  BitString y = BitString::from_string("000011");  // dist 4 = (2/3) n: in gap for gamma=0.25
  VirtualString a{VsExplicit{x}}, b{VsExplicit{y}};
  EXPECT_EQ(oracle_answer(OracleKind::gap_hd(0.25), a, b), 1);  // default: <=gamma branch
  EXPECT_THROW(oracle_answer(OracleKind::gap_hd(0.25, true), a, b), GapViolation);
  EXPECT_EQ(oracle_answer(OracleKind::gap_hd(0.45), a, b), 0);  // 4 >= 0.55*6
}

TEST(Oracle, VirtualStringsAgreeWithMaterialization) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    size_t rows = 2 + rng() % 4, len = 3 + rng() % 6;
    BlockedString u(rows, len), v(rows, len);
    for (size_t i = 0; i < rows; ++i) {
      u.set_block(i, BitString::from_mask(rng(), len));
      v.set_block(i, BitString::from_mask(rng(), len));
    }
    for (auto make : {+[](const BlockedString& z) { return VirtualString{VsFlattened{&z}}; },
                      +[](const BlockedString& z) { return VirtualString{VsRowIndicator{&z}}; },
                      +[](const BlockedString& z) { return VirtualString{VsParityConcat{&z}}; }}) {
      VirtualString a = make(u), b = make(v);
      ASSERT_EQ(vs_distance(a, b), hamming_distance(vs_materialize(a), vs_materialize(b)));
      ASSERT_EQ(vs_length(a), vs_materialize(a).size());
    }
  }
}

TEST(Oracle, ExhaustiveAgreementAtTinySizes) {
  // every pair of 2-row, 2-bit blocked strings, every blocked scheme
  BlockedString u(2, 2), v(2, 2);
  for (uint64_t um = 0; um < 16; ++um)
    for (uint64_t vm = 0; vm < 16; ++vm) {
      u.blocks[0] = BitString::from_mask(um & 3, 2);
      u.blocks[1] = BitString::from_mask(um >> 2, 2);
      v.blocks[0] = BitString::from_mask(vm & 3, 2);
      v.blocks[1] = BitString::from_mask(vm >> 2, 2);
      for (auto make :
           {+[](const BlockedString& z) { return VirtualString{VsFlattened{&z}}; },
            +[](const BlockedString& z) { return VirtualString{VsRowIndicator{&z}}; },
            +[](const BlockedString& z) { return VirtualString{VsParityConcat{&z}}; }}) {
        VirtualString a = make(u), b = make(v);
        uint64_t want = hamming_distance(vs_materialize(a), vs_materialize(b));
        ASSERT_EQ(vs_distance(a, b), want);
        ASSERT_EQ(oracle_answer(OracleKind::eq(), a, b), want == 0 ? 1 : 0);
        ASSERT_EQ(oracle_answer(OracleKind::hd(2), a, b), want == 2 ? 1 : 0);
      }
    }
}

TEST(Oracle, PaddingShiftsDistance) {
  BitString x = BitString::from_string("1100");
  BitString y = BitString::from_string("1010");
  VirtualString a{VsExplicit{x}, 10, 7};
  VirtualString b{VsExplicit{y}, 10, 0};
  EXPECT_EQ(vs_distance(a, b), 2u + 7u);
  EXPECT_EQ(vs_length(a), 14u);
  EXPECT_EQ(hamming_distance(vs_materialize(a), vs_materialize(b)), 9u);
}

TEST(Oracle, SingleNodeTreeAndCostGuard) {
  OracleTree<BitString> t;
  t.name = "eq_once";
  t.declared_cost = 1;
  t.node_at = [](std::span<const int> answers) -> OracleNode<BitString> {
    if (answers.empty())
      return OracleNode<BitString>::query(
          OracleKind::eq(), [](const BitString& z) { return VirtualString{VsExplicit{z}}; },
          [](const BitString& z) { return VirtualString{VsExplicit{z}}; });
    return OracleNode<BitString>::make_leaf(answers[0]);
  };
  BitString x = BitString::from_string("0101");
  auto run = run_oracle_protocol(t, x, x);
  EXPECT_EQ(run.output, 1);
  EXPECT_EQ(run.query_count, 1u);
  EXPECT_EQ(run.queries_by_kind.at("EQ"), 1u);
}

TEST(Estimate, ExactProtocolHasZeroError) {
  SymmetricProtocol<BitString> exact;
  exact.name = "exact_eq";
  exact.run = [](const BitString& x, const BitString& y, Session&) {
    return x == y ? 1 : 0;
  };
  std::function<std::pair<BitString, BitString>(uint64_t)> cases = [](uint64_t t) {
    BitString x = BitString::from_mask(splitmix64(t), 12);
    return std::make_pair(x, t % 2 ? x : BitString::from_mask(splitmix64(t ^ 999), 12));
  };
  std::function<int(const BitString&, const BitString&)> truth =
      [](const BitString& x, const BitString& y) { return x == y ? 1 : 0; };
  auto est = estimate_error(exact, cases, truth, 2000, 1);
  EXPECT_EQ(est.errors, 0u);
  EXPECT_EQ(est.rate, 0.0);
}

TEST(Estimate, WilsonEndpointsSolveTheScoreEquation) {
  // Wilson endpoints p satisfy (phat - p)^2 = z^2 p (1-p) / n.
  const double z = 1.959963984540054;
  for (auto [e, n] : {std::pair{5ull, 100ull}, {0ull, 50ull}, {49ull, 50ull}, {250ull, 1000ull}}) {
    auto w = wilson95(e, n);
    double phat = double(e) / double(n);
    for (double p : {w.low, w.high}) {
      if (p <= 0.0 || p >= 1.0) continue;  // clamped ends
      double lhs = (phat - p) * (phat - p);
      double rhs = z * z * p * (1 - p) / double(n);
      EXPECT_NEAR(lhs, rhs, 1e-9);
    }
    EXPECT_LE(w.low, phat + 1e-12);
    EXPECT_GE(w.high, phat - 1e-12);
  }
}

TEST(Estimate, EqualityUnequalRateWithinBound) {
  // accept rate of unequal pairs under b=2 fingerprints is exactly 2^-2;
  // the protocol errs exactly when it accepts
  auto eq = equality_protocol(2);
  std::function<std::pair<BitString, BitString>(uint64_t)> cases = [](uint64_t t) {
    BitString x = BitString::from_mask(splitmix64(t * 2 + 1), 16);
    BitString y = x;
    y.flip(static_cast<size_t>(splitmix64(t) % 16));
    return std::make_pair(x, y);
  };
  std::function<int(const BitString&, const BitString&)> truth = [](const BitString&,
                                                                    const BitString&) {
    return 0;
  };
  const uint64_t trials = 100000;
  auto est = estimate_error(eq, cases, truth, trials, 99);
  double sigma = std::sqrt(0.25 * 0.75 / double(trials));
  EXPECT_LE(est.rate, 0.25 + 3 * sigma);
  EXPECT_GE(est.rate, 0.25 - 3 * sigma);
}
