#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "hdlab/gap_hd.hpp"
#include "hdlab/io.hpp"
#include "hdlab/padding.hpp"
#include "hdlab/protocol4.hpp"
#include "hdlab/tandem.hpp"

using namespace hdlab;

TEST(GapHd, PromiseSidesAndCost) {
  const double gamma = 0.25, delta = 0.05;
  auto p = gap_hd_protocol(gamma, delta);
  const size_t n = 64;
  BitString x(n);
  for (size_t i = 0; i < n; i += 2) x.set(i, true);

  // dist 0: always accept (sampled substrings equal)
  for (uint64_t t = 0; t < 500; ++t)
    ASSERT_EQ(run_protocol(p, x, x, trial_seed(2, t)).output, 1);

  const int trials = 3000;
  double sigma = std::sqrt(delta * (1 - delta) / trials);
  // dist exactly gamma n: accept w.p. >= 1-delta
  BitString y = x;
  for (size_t i = 0; i < gamma * n; ++i) y.flip(i);
  int acc = 0;
  for (int t = 0; t < trials; ++t) acc += run_protocol(p, x, y, trial_seed(5, t)).output;
  EXPECT_GE(acc / double(trials), 1 - delta - 3 * sigma);

  // dist exactly (1-gamma) n: reject w.p. >= 1-delta
  BitString z = x;
  for (size_t i = 0; i < (1 - gamma) * n; ++i) z.flip(i);
  int rej = 0;
  for (int t = 0; t < trials; ++t) rej += 1 - run_protocol(p, x, z, trial_seed(6, t)).output;
  EXPECT_GE(rej / double(trials), 1 - delta - 3 * sigma);

  auto out = run_protocol(p, x, y, 1);
  EXPECT_EQ(out.cost.bits_sent, gap_hd_sample_size(gamma, delta) + 1);

  // gap inputs are flagged under instrumentation
  BitString mid = x;
  for (size_t i = 0; i < n / 2; ++i) mid.flip(i);
  Session s(4);
  s.set_instrument(true);
  p.run(x, mid, s);
  EXPECT_EQ(s.notes().count("gaphd_gap_input"), 1u);
}

TEST(Embedding, EqualityAtN4) {
  auto oneway = one_way_equality_hash(2);
  std::function<int(const BitString&, const BitString&)> truth =
      [](const BitString& a, const BitString& b) { return a == b ? 1 : 0; };
  auto emb = embed_into_gaphd(oneway, truth, 4, 100, 2024);
  EXPECT_EQ(emb.w, 4u);
  EXPECT_EQ(emb.t, 432);
  EXPECT_EQ(emb.L, 3456u);
  EXPECT_NEAR(emb.gamma, 0.5 - 1.0 / 48.0, 1e-12);

  // the materialized encodings have the promised block weights and solve the
  // problem with one strict GapHD query on every pair
  for (uint64_t a = 0; a < 16; ++a) {
    BitString x = BitString::from_mask(a, 4);
    BitString phi = emb.phi(x);
    BitString psi = emb.psi(x);
    EXPECT_EQ(phi.weight(), static_cast<size_t>(emb.t));      // one per block
    EXPECT_EQ(psi.weight(), static_cast<size_t>(emb.t) * 4);  // w per block
    for (uint64_t b = 0; b < 16; ++b) {
      BitString y = BitString::from_mask(b, 4);
      VirtualString va{VsExplicit{phi}}, vb{VsExplicit{emb.psi(y)}};
      ASSERT_EQ(oracle_answer(OracleKind::gap_hd(emb.gamma, /*strict=*/true), va, vb),
                truth(x, y));
    }
  }

  std::ostringstream report;
  write_embedding_report(report, emb);
  EXPECT_NE(report.str().find("# L: 3456"), std::string::npos);
}

TEST(Embedding, PerSeedBlockDistances) {
  // correct seeds give per-block distance w-1 on accepting pairs, w+1 else
  auto oneway = one_way_equality_hash(2);
  BitString x = BitString::from_string("1010");
  uint64_t r = 99;
  uint32_t msg = oneway.message(r, x);
  int out = oneway.decide(msg, x, r);
  EXPECT_EQ(out, 1);  // equality accepts itself under any seed
  // build the padded blocks by hand
  GapEmbedding emb;
  emb.n = 4;
  emb.c = 2;
  emb.w = 4;
  emb.t = 1;
  emb.L = 8;
  emb.protocol = &oneway;
  emb.seeds = {r};
  EXPECT_EQ(hamming_distance(emb.phi(x), emb.psi(x)), emb.w - 1);
}

TEST(Tandem, CompilationMatchesProtocol) {
  // exhaustive at N <= 64, q <= 3: D(dist(E(x),E(y))) equals the protocol
  for (int q = 1; q <= 3; ++q) {
    for (uint64_t seed : {1ull, 2ull, 3ull}) {
      auto t = partition_tandem(q, 64, seed);
      auto compiled = tandem_to_code(t);
      EXPECT_EQ(compiled.code.weight, (size_t{1} << q) - 1);
      for (int x = 0; x < t.alphabet; ++x) {
        EXPECT_EQ(compiled.code.codewords[x].size(), compiled.code.weight);
        for (int y = 0; y < t.alphabet; ++y) {
          uint64_t dist = compiled.code.distance(x, y);
          ASSERT_EQ(compiled.decode_distance(dist), t.eval(x, y));
        }
      }
    }
  }
}

TEST(Tandem, EqualInputsDecodeThroughDistanceZero) {
  auto t = partition_tandem(2, 8, 5);
  auto compiled = tandem_to_code(t);
  EXPECT_EQ(compiled.decode_distance(0), t.rho[(1 << 2) - 1]);  // all queries equal
}

TEST(Fd, EncodingAndDistance) {
  BitString x = BitString::from_string("110100");  // {0,1,3}, k=3
  auto f1 = f_d_encode(x, 1);
  EXPECT_EQ(f1, (std::vector<uint32_t>{0, 1, 3}));

  // d=2: |F_2| = k^2 and the distance formula matches brute force
  BitString y = BitString::from_string("110001");  // dist(x,y) = 2
  ASSERT_EQ(hamming_distance(x, y), 2u);
  auto fx = f_d_encode(x, 2), fy = f_d_encode(y, 2);
  EXPECT_EQ(fx.size(), 9u);
  EXPECT_EQ(symmdiff_size(fx, fy), f_d_distance(x, y, 2));
  EXPECT_EQ(f_d_distance(x, y, 2), 2u * 9 - 2 * 4);  // 2k^d - 2(k - 1)^d = 10

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    int n = 6 + static_cast<int>(rng() % 4);
    auto sl = slice_strings(n, 3);
    const BitString& a = sl[rng() % sl.size()];
    const BitString& b = sl[rng() % sl.size()];
    for (int d = 1; d <= 3; ++d)
      ASSERT_EQ(symmdiff_size(f_d_encode(a, d), f_d_encode(b, d)), f_d_distance(a, b, d));
  }
}

TEST(Newton, RecoveryExamplesAndUniqueness) {
  // r=2, k=3, sums (3, 5) -> {2,4}: (3-1)+(3-2)=3, 4+1=5
  EXPECT_EQ(newton_recover({3, 5}, 2, 3, 2), (std::vector<int>{2, 4}));
  // count 0: empty multiset, zero sums
  EXPECT_EQ(newton_recover({0, 0}, 2, 3, 0), (std::vector<int>{}));
  // corrupted sums: no match
  EXPECT_THROW(newton_recover({1, 100}, 2, 3, 2), InconsistentRecovery);

  // exhaustive injectivity: all multisets of size <= 3 with even values in
  // [0, 8] have distinct power-sum vectors within each size class
  const int r = 3, k = 4;
  for (int count = 0; count <= 3; ++count) {
    std::map<std::vector<long long>, std::vector<int>> seen;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int min_v) -> void {
      if (static_cast<int>(cur.size()) == count) {
        std::vector<long long> sums(r, 0);
        for (int a : cur) {
          long long pw = 1, base = k - a / 2;
          for (int d = 0; d < r; ++d) {
            pw *= base;
            sums[d] += pw;
          }
        }
        auto [it, fresh] = seen.emplace(sums, cur);
        ASSERT_TRUE(fresh) << "collision between two multisets of size " << count;
        // and newton_recover returns exactly this multiset
        ASSERT_EQ(newton_recover(sums, r, k, count), cur);
        return;
      }
      for (int a = min_v; a <= 2 * k; a += 2) {
        cur.push_back(a);
        self(self, a);
        cur.pop_back();
      }
    };
    rec(rec, 0);
  }
}

TEST(Protocol4, EndToEndAgainstBruteForce) {
  // partition-tandem bases with a shared rho, n=6 coordinates over [8], r=2
  std::vector<TandemProtocol> bases;
  auto first = partition_tandem(2, 8, 100);
  for (int i = 0; i < 6; ++i) {
    auto t = partition_tandem(2, 8, 100 + i);
    t.rho = first.rho;  // one decode map for the whole family
    bases.push_back(t);
  }
  auto spec = make_protocol4_spec(bases, 2, g_max_sum_threshold(2));
  auto tree = protocol4_tree(spec);

  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 5000; ++trial) {
    std::vector<int> x(6), y(6);
    for (int i = 0; i < 6; ++i) x[i] = static_cast<int>(rng() % 8);
    y = x;
    int diffs = static_cast<int>(rng() % 4);
    for (int d = 0; d < diffs; ++d) {
      int i = static_cast<int>(rng() % 6);
      y[i] = (y[i] + 1 + static_cast<int>(rng() % 7)) % 8;
    }
    auto run = run_oracle_protocol(tree, x, y);
    ASSERT_EQ(run.output, spec->truth(x, y));
    ASSERT_LE(run.query_count, tree.declared_cost);
  }

  // all-equal inputs: |Delta| = 0, g of the empty multiset
  std::vector<int> x(6, 3);
  EXPECT_EQ(run_oracle_protocol(tree, x, x).output, spec->g.eval({}));

  // |Delta| = r+1 gives bot
  std::vector<int> y = x;
  y[0] = 0;
  y[2] = 1;
  y[4] = 2;
  EXPECT_EQ(run_oracle_protocol(tree, x, y).output, kBot);
}

TEST(Protocol4, ThreeQueryBasesWeightSeven) {
  // q=3 compilations (codeword weight 7): longer threshold scans and a wider
  // distance range through the decode map
  std::vector<TandemProtocol> bases;
  auto first = partition_tandem(3, 6, 900, 3, 3);
  for (int i = 0; i < 5; ++i) {
    auto t = partition_tandem(3, 6, 900 + i, 3, 3);
    t.rho = first.rho;
    bases.push_back(t);
  }
  auto spec = make_protocol4_spec(bases, 2, g_max_sum_threshold(2));
  ASSERT_EQ(spec->k, 7u);
  auto tree = protocol4_tree(spec);
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 800; ++trial) {
    std::vector<int> x(5), y(5);
    for (int i = 0; i < 5; ++i) x[i] = static_cast<int>(rng() % 6);
    y = x;
    int diffs = static_cast<int>(rng() % 4);
    for (int u = 0; u < diffs; ++u) {
      int i = static_cast<int>(rng() % 5);
      y[i] = (y[i] + 1 + static_cast<int>(rng() % 5)) % 6;
    }
    auto run = run_oracle_protocol(tree, x, y);
    ASSERT_EQ(run.output, spec->truth(x, y));
    ASSERT_LE(run.query_count, tree.declared_cost);
  }
}

TEST(Protocol4, NonSeparatingBaseStillCorrect) {
  // a base whose colorings do not separate some pairs: differing coordinates
  // can have codeword distance 0, and the recovered multiset must still feed
  // g with the right number of answers
  TandemProtocol t;
  t.q = 1;
  t.alphabet = 4;
  t.queries = {{0, 0, 1, 1}};  // pairs (0,1) and (2,3) are never separated
  t.rho = {0, 1};              // output 1 iff the query answered "equal"
  auto spec = make_protocol4_spec(std::vector<TandemProtocol>(4, t), 2, g_max_sum_threshold(2));
  auto tree = protocol4_tree(spec);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      std::vector<int> x = {a, 2, 1, 3}, y = {b, 2, 1, 3};
      ASSERT_EQ(run_oracle_protocol(tree, x, y).output, spec->truth(x, y))
          << a << " vs " << b;
    }
}

TEST(Padding, HdkToHdkkExhaustive) {
  const size_t n = 6, kprime = 2;
  for (uint64_t a = 0; a < 64; ++a)
    for (uint64_t b = 0; b < 64; ++b) {
      BitString x = BitString::from_mask(a, n), y = BitString::from_mask(b, n);
      BlockedString px = pad_hdk_to_hdkk(x, n), py = pad_hdk_to_hdkk(y, n);
      ASSERT_EQ(truth_hd(kprime, x, y), truth_hdkk(kprime, px, py));
    }
  // signature spot checks
  BitString x = BitString::from_mask(0b110000, n);
  BitString y = BitString::from_mask(0b000011, n);  // distance 4 = k'+2
  EXPECT_EQ(distance_signature(pad_hdk_to_hdkk(x, n), pad_hdk_to_hdkk(y, n)),
            (DistanceSignature{4, 4}));
  EXPECT_TRUE(
      distance_signature(pad_hdk_to_hdkk(x, n), pad_hdk_to_hdkk(x, n)).empty());
}

TEST(VirtualStrings, CodedSchemesAgreeWithMaterialization) {
  // the symbol-indicator and Fd-concat evaluators against explicit strings
  auto t = partition_tandem(2, 5, 9);
  auto compiled = tandem_to_code(t);
  std::vector<const SymbolCode*> codes(3, &compiled.code);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<int> xs = {int(rng() % 5), int(rng() % 5), int(rng() % 5)};
    std::vector<int> ys = {int(rng() % 5), int(rng() % 5), int(rng() % 5)};
    VirtualString ia{VsSymbolIndicator{&xs, 5}}, ib{VsSymbolIndicator{&ys, 5}};
    ASSERT_EQ(vs_distance(ia, ib), hamming_distance(vs_materialize(ia), vs_materialize(ib)));
    for (int d = 1; d <= 2; ++d) {
      VirtualString fa{VsFdConcat{&codes, &xs, d}}, fb{VsFdConcat{&codes, &ys, d}};
      ASSERT_EQ(vs_distance(fa, fb),
                hamming_distance(vs_materialize(fa), vs_materialize(fb)));
      ASSERT_EQ(vs_length(fa), vs_materialize(fa).size());
    }
  }
}

TEST(Embedding, ConstantOneProtocolVerifiesTrivially) {
  // a protocol that always accepts: the 0-side condition is vacuous and any
  // seed tuple verifies on the first attempt
  OneWayProtocol p;
  p.c = 1;
  p.message = [](uint64_t, const BitString&) -> uint32_t { return 0; };
  p.decide = [](uint32_t, const BitString&, uint64_t) { return 1; };
  std::function<int(const BitString&, const BitString&)> truth =
      [](const BitString&, const BitString&) { return 1; };
  auto emb = embed_into_gaphd(p, truth, 3, 5, 77);
  EXPECT_EQ(emb.report.attempts, 1);
}

TEST(TandemIo, RoundTrip) {
  auto t = partition_tandem(2, 8, 42);
  std::stringstream ss;
  write_tandem(ss, t);
  auto back = read_tandem(ss);
  EXPECT_EQ(back.q, t.q);
  EXPECT_EQ(back.alphabet, t.alphabet);
  EXPECT_EQ(back.queries, t.queries);
  EXPECT_EQ(back.rho, t.rho);
}

TEST(MatrixIo, RoundTripAndSpecLoader) {
  BaseMatrix m = BaseMatrix::from_entries(3, {0, 1, 2, 1, 0, 1, 2, 1, 0});
  m.lambda = 3;
  std::stringstream ss;
  write_base_matrix(ss, m);
  auto back = read_base_matrix(ss);
  EXPECT_EQ(back.n_rows, 3);
  EXPECT_EQ(back.lambda, 3);
  EXPECT_EQ(back.entries, m.entries);

  std::stringstream bad("3 2\n0 1 5\n1 0 1\n5 1 0\n");
  EXPECT_THROW(read_base_matrix(bad), ParseError);  // entries exceed alphabet
  std::stringstream truncated("3 2\n0 1\n");
  EXPECT_THROW(read_base_matrix(truncated), ParseError);

  {
    std::ofstream f("/tmp/hdlab_unit_m.mat");
    write_base_matrix(f, m);
  }
  auto spec = load_composition_spec({"/tmp/hdlab_unit_m.mat", "/tmp/hdlab_unit_m.mat"}, 1,
                                    0.125, "exists-one");
  EXPECT_EQ(spec->n(), 2u);
  EXPECT_EQ(spec->lambda(), 3);
  EXPECT_EQ(spec->truth({0, 1}, {0, 2}), 1);  // one diff, base answer 1
}
