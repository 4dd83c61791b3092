#include <gtest/gtest.h>

#include <map>
#include <numeric>
#include <random>

#include "hdlab/bits.hpp"

using namespace hdlab;

namespace {

BitString bs(const std::string& s) { return BitString::from_string(s); }

// Independent per-bit distance oracle for the derived expectations below.
size_t naive_distance(const BitString& x, const BitString& y) {
  size_t d = 0;
  for (size_t i = 0; i < x.size(); ++i)
    if (x.get(i) != y.get(i)) ++d;
  return d;
}

uint64_t factorial_binomial(int n, int k) {
  // C(n, k) via factorials with long double, rounded; independent of the
  // multiplicative implementation in the library.
  long double r = 1;
  for (int i = 1; i <= n; ++i) r *= i;
  for (int i = 1; i <= k; ++i) r /= i;
  for (int i = 1; i <= n - k; ++i) r /= i;
  return static_cast<uint64_t>(r + 0.5L);
}

}  // namespace

TEST(BitString, HammingDistanceExamples) {
  EXPECT_EQ(hamming_distance(bs("1010"), bs("1010")), 0u);
  EXPECT_EQ(hamming_distance(bs("1100"), bs("0110")), 2u);
  EXPECT_EQ(hamming_distance(bs("111000"), bs("000111")), 6u);
}

TEST(BitString, LengthMismatchIsError) {
  EXPECT_THROW(hamming_distance(bs("10"), bs("100")), ShapeError);
}

TEST(BitString, RoundTripAndOnes) {
  std::string s = "0110100111010001";
  EXPECT_EQ(bs(s).to_string(), s);
  auto ones = bs("01101").ones();
  EXPECT_EQ(ones, (std::vector<uint32_t>{1, 2, 4}));
}

TEST(BitString, DistanceEqualsWeightOfXorExhaustiveSmall) {
  for (int n = 1; n <= 8; ++n)
    for (uint64_t a = 0; a < (uint64_t{1} << n); ++a)
      for (uint64_t b = 0; b < (uint64_t{1} << n); ++b) {
        BitString x = BitString::from_mask(a, n);
        BitString y = BitString::from_mask(b, n);
        ASSERT_EQ(hamming_distance(x, y), (x ^ y).weight());
        ASSERT_EQ(hamming_distance(x, y), naive_distance(x, y));
      }
}

TEST(BitString, DistanceEqualsWeightOfXorSampledAt16) {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 20000; ++t) {
    BitString x = BitString::from_mask(rng(), 16);
    BitString y = BitString::from_mask(rng(), 16);
    ASSERT_EQ(hamming_distance(x, y), (x ^ y).weight());
  }
}

TEST(Slice, CountsAndDeterminism) {
  auto s42 = slice_strings(4, 2);
  EXPECT_EQ(s42.size(), 6u);
  auto s40 = slice_strings(4, 0);
  ASSERT_EQ(s40.size(), 1u);
  EXPECT_EQ(s40[0].to_string(), "0000");
  // C(6,3) = 20 against an independent factorial computation
  EXPECT_EQ(slice_strings(6, 3).size(), factorial_binomial(6, 3));
  EXPECT_EQ(slice_strings(6, 3).size(), 20u);

  for (auto [n, w] : {std::pair{7, 3}, {10, 5}, {12, 4}}) {
    auto v1 = slice_strings(n, w);
    auto v2 = slice_strings(n, w);
    EXPECT_EQ(v1.size(), factorial_binomial(n, w));
    ASSERT_TRUE(v1 == v2);  // deterministic order
    for (const auto& x : v1) ASSERT_EQ(x.weight(), static_cast<size_t>(w));
    for (size_t i = 1; i < v1.size(); ++i) ASSERT_FALSE(v1[i] == v1[i - 1]);
  }
}

TEST(Slice, GuardAndBadArgs) {
  EXPECT_THROW(SliceEnumerator(29, 2), CapacityError);
  EXPECT_THROW(SliceEnumerator(4, 5), ShapeError);
  try {
    SliceEnumerator e(30, 1);
    FAIL() << "guard did not fire";
  } catch (const CapacityError& e) {
    EXPECT_EQ(e.limit, 28ull);
  }
}

TEST(Signature, ExamplesAndErrors) {
  BlockedString x(3, 4), y(3, 4);
  EXPECT_TRUE(distance_signature(x, y).empty());

  x.set_block(0, bs("0011"));
  x.set_block(1, bs("0101"));
  x.set_block(2, bs("0011"));
  y.set_block(0, bs("0011"));
  y.set_block(1, bs("0110"));
  y.set_block(2, bs("1100"));
  // per-row oracle: dists 0, 2, 4
  EXPECT_EQ(naive_distance(x.blocks[1], y.blocks[1]), 2u);
  EXPECT_EQ(naive_distance(x.blocks[2], y.blocks[2]), 4u);
  EXPECT_EQ(distance_signature(x, y), (DistanceSignature{2, 4}));

  BlockedString z(2, 4);
  EXPECT_THROW(distance_signature(x, z), ShapeError);
}

TEST(Signature, TwoRowsAtDistanceFour) {
  BlockedString x(5, 8), y(5, 8);
  x.set_block(1, bs("11110000"));
  y.set_block(1, bs("11001100"));
  x.set_block(3, bs("10101010"));
  y.set_block(3, bs("01100110"));
  ASSERT_EQ(naive_distance(x.blocks[1], y.blocks[1]), 4u);
  ASSERT_EQ(naive_distance(x.blocks[3], y.blocks[3]), 4u);
  EXPECT_EQ(distance_signature(x, y), (DistanceSignature{4, 4}));
  EXPECT_EQ(truth_hd44(x, y), 1);
}

TEST(Signature, InvarianceUnderPermutations) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    size_t rows = 2 + rng() % 5, len = 3 + rng() % 9;
    BlockedString x(rows, len), y(rows, len);
    for (size_t i = 0; i < rows; ++i) {
      x.set_block(i, BitString::from_mask(rng(), len));
      y.set_block(i, BitString::from_mask(rng(), len));
    }
    auto sig = distance_signature(x, y);

    // common block permutation
    std::vector<size_t> perm(rows);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    // plus a common within-block permutation, one per block
    BlockedString px(rows, len), py(rows, len);
    for (size_t i = 0; i < rows; ++i) {
      std::vector<size_t> inner(len);
      std::iota(inner.begin(), inner.end(), 0);
      std::shuffle(inner.begin(), inner.end(), rng);
      BitString bx(len), by(len);
      for (size_t b = 0; b < len; ++b) {
        bx.set(inner[b], x.blocks[perm[i]].get(b));
        by.set(inner[b], y.blocks[perm[i]].get(b));
      }
      px.set_block(i, bx);
      py.set_block(i, by);
    }
    ASSERT_EQ(distance_signature(px, py), sig);
  }
}

TEST(Truth, NamedProblems) {
  EXPECT_EQ(truth_hd(2, bs("1100"), bs("0110")), 1);
  EXPECT_EQ(truth_hd(3, bs("1100"), bs("0110")), 0);

  // signature {2,6} input is a 0 of HD44
  BlockedString x(4, 8), y(4, 8);
  x.set_block(0, bs("11000000"));
  y.set_block(0, bs("01100000"));
  x.set_block(2, bs("11111100"));
  y.set_block(2, bs("00000110"));
  ASSERT_EQ(naive_distance(x.blocks[0], y.blocks[0]), 2u);
  ASSERT_EQ(naive_distance(x.blocks[2], y.blocks[2]), 6u);
  EXPECT_EQ(distance_signature(x, y), (DistanceSignature{2, 6}));
  EXPECT_EQ(truth_hd44(x, y), 0);

  // GapHD with dist = n/2 is inside the gap
  EXPECT_EQ(truth_gaphd(1.0 / 3.0, bs("101010"), bs("101101")), kGapStar);
  EXPECT_EQ(truth_gaphd(1.0 / 3.0, bs("110000"), bs("110000")), 1);
  EXPECT_EQ(truth_gaphd(1.0 / 3.0, bs("111111"), bs("000000")), 0);
}

// truth(HD44) = 1 exactly when the signature is {4,4}: the direct two-row
// definition against the signature characterization, exhaustive over the two
// varying rows on the 2n=6 slice plus sampled many-row perturbations.
TEST(Truth, Hd44MatchesSignatureOnSlice) {
  auto slice = slice_strings(6, 3);
  ASSERT_EQ(slice.size(), 20u);
  BlockedString x(4, 6), y(4, 6);
  x.set_block(0, slice[7]);
  y.set_block(0, slice[7]);
  x.set_block(3, slice[2]);
  y.set_block(3, slice[2]);
  for (const auto& a : slice)
    for (const auto& b : slice)
      for (const auto& c : slice)
        for (const auto& d : slice) {
          x.blocks[1] = a;
          y.blocks[1] = b;
          x.blocks[2] = c;
          y.blocks[2] = d;
          // direct definition: exactly two unequal rows, both at distance 4
          int unequal = 0, at4 = 0;
          for (size_t i = 0; i < 4; ++i) {
            size_t dd = naive_distance(x.blocks[i], y.blocks[i]);
            if (dd > 0) ++unequal;
            if (dd == 4) ++at4;
          }
          int direct = (unequal == 2 && at4 == 2) ? 1 : 0;
          ASSERT_EQ(truth_hd44(x, y), direct);
          ASSERT_EQ(truth_hd44(x, y),
                    distance_signature(x, y) == DistanceSignature({4, 4}) ? 1 : 0);
        }
}

TEST(Blocked, TextForms) {
  BlockedString x(2, 3);
  x.set_block(0, bs("101"));
  x.set_block(1, bs("010"));
  EXPECT_EQ(x.to_string(), "101|010");
  EXPECT_TRUE(BlockedString::from_string("101|010") == x);
  EXPECT_THROW(BlockedString::from_string("10|010"), ShapeError);
}

TEST(SetFamily, BasicsAndOps) {
  SetFamily f;
  f.ground_n = 5;
  f.add({1, 2});
  f.add({2, 3});
  EXPECT_THROW(f.add({2, 1}), ShapeError);  // duplicate after sorting
  EXPECT_THROW(f.add({7}), ShapeError);     // out of range
  EXPECT_EQ(set_intersection({1, 2, 4}, {2, 4, 5}), (std::vector<uint32_t>{2, 4}));
  EXPECT_EQ(symmdiff_size({1, 2, 4}, {2, 4, 5}), 2u);
}
