#include <gtest/gtest.h>

#include <random>

#include "hdlab/delta.hpp"
#include "hdlab/make_code.hpp"
#include "hdlab/sunflower.hpp"

using namespace hdlab;

TEST(Sparsify, AffineSourceWeightsAndBound) {
  // affine(2,1) on the slice C(14,7), sparsified at k=3: output weight is
  // g(2k) = 2*2k + 2 = 14, within f(2)*k = 6*3 = 18
  auto src = make_affine_slice_code(7, 2, 1);
  auto out = sparsify(src, 3);
  EXPECT_EQ(out.n, 4u);  // N - k = 7 - 3
  for (const auto& cw : out.codewords) EXPECT_EQ(cw.size(), 14u);
  // still an f-code for the same affine transfer on {2,4,6}
  PartialF f;
  for (int d = 2; d <= 6; d += 2) f.set(d, 2 * d + 2);
  EXPECT_TRUE(verify_fcode(out, f).empty());
}

TEST(Sparsify, RepetitionSourceWeightIsSlopeTimes2k) {
  auto src = make_affine_slice_code(6, 3, 0);  // pure repetition, slope 3
  auto out = sparsify(src, 2);
  // g(2k) = 3 * 2k = 12: alpha copies of a distance-2k pair
  for (const auto& cw : out.codewords) EXPECT_EQ(cw.size(), 12u);
}

TEST(Sparsify, RejectsNonSliceSources) {
  auto cube_code = make_repetition_code(4, 2);
  EXPECT_THROW(sparsify(cube_code, 2), ShapeError);
}

TEST(Delta, AffineBallDecomposition) {
  // affine(2,1), k=4, n=12: delta_1 = 2, delta_k = 1, delta_2 = delta_3 = 0
  auto code = make_affine_ball_code(12, 4, 2, 1);
  auto dd = delta_decompose(code, 4);
  EXPECT_EQ(dd.delta_size[1], 2);
  EXPECT_EQ(dd.delta_size[2], 0);
  EXPECT_EQ(dd.delta_size[3], 0);
  EXPECT_EQ(dd.delta_size[4], 1);
  EXPECT_EQ(dd.delta_size[0], 0);

  std::string v;
  EXPECT_TRUE(check_delta_disjoint(dd, &v)) << v;
  EXPECT_TRUE(check_disjoint_union(dd, code, &v)) << v;
  EXPECT_TRUE(check_monotone(dd, &v)) << v;

  // g(2t) = 2 delta_k + 2t delta_1 reproduces the affine transfer
  for (int t = 1; t <= 4; ++t) {
    size_t g2t = 2 * 1 + 2 * t * 2;
    EXPECT_EQ(g2t, static_cast<size_t>(2 * (2 * t) + 2));
  }
}

TEST(Delta, RepetitionBall) {
  // repetition(alpha): Delta({i}) has size alpha, Delta(x) empty at the top
  auto code = make_repetition_ball_code(8, 3, 2);
  auto dd = delta_decompose(code, 3);
  EXPECT_EQ(dd.delta_size[1], 2);
  EXPECT_EQ(dd.delta_size[3], 0);
  std::string v;
  EXPECT_TRUE(check_delta_disjoint(dd, &v)) << v;
  EXPECT_TRUE(check_disjoint_union(dd, code, &v)) << v;
}

TEST(Delta, SparsifiedProductDecomposes) {
  auto ball = sparsify(make_product_slice_code(7), 3);  // ball over [4]
  EXPECT_EQ(ball.n, 4u);
  auto dd = delta_decompose(ball, 3);
  std::string v;
  EXPECT_TRUE(check_delta_disjoint(dd, &v)) << v;
  EXPECT_TRUE(check_disjoint_union(dd, ball, &v)) << v;
  EXPECT_TRUE(check_monotone(dd, &v)) << v;
}

TEST(Delta, DirectProductBallMatchesSparsification) {
  // the direct ball construction is codeword-for-codeword the sparsified
  // slice code, checked where the slice source is still materializable
  auto via_sparsify = sparsify(make_product_slice_code(7), 3);
  auto direct = make_product_ball_code(4, 3);
  ASSERT_EQ(via_sparsify.domain_size(), direct.domain_size());
  ASSERT_EQ(via_sparsify.m, direct.m);
  for (size_t i = 0; i < direct.domain_size(); ++i) {
    ASSERT_TRUE(via_sparsify.domain[i] == direct.domain[i]);
    ASSERT_EQ(via_sparsify.codewords[i], direct.codewords[i]);
  }
}

TEST(Delta, Guards) {
  auto code = make_affine_ball_code(8, 3, 1, 1);
  EXPECT_THROW(delta_decompose(code, 6), CapacityError);
  Code partial;
  partial.n = 8;
  partial.m = 4;
  partial.add(BitString::from_string("11100000"), {0});
  EXPECT_THROW(delta_decompose(partial, 3), ShapeError);
}

TEST(Sunflower, BasicDetection) {
  EXPECT_TRUE(sunflower_check({{1, 2}, {1, 3}, {1, 4}}).is_sunflower);
  EXPECT_EQ(sunflower_check({{1, 2}, {1, 3}, {1, 4}}).kernel, (std::vector<uint32_t>{1}));
  auto r = sunflower_check({{1, 2}, {2, 3}, {1, 3}});  // triangle: intersections differ
  EXPECT_FALSE(r.is_sunflower);
  EXPECT_TRUE(sunflower_check({{0, 1, 2}}).is_sunflower);
  EXPECT_TRUE(sunflower_check(std::vector<std::vector<uint32_t>>{}).is_sunflower);
}

TEST(Sunflower, EquidistantLargeFamiliesAreSunflowers) {
  // k=2, n=10: every pairwise-equidistant family of 9 > k 2^k = 8 sets is a
  // sunflower (and they exist: the stars)
  size_t families = 0, sunflowers = 0;
  for_each_equidistant_family(10, 2, 9, [&](const std::vector<std::vector<uint32_t>>& fam) {
    ++families;
    if (sunflower_check(fam).is_sunflower) ++sunflowers;
  });
  EXPECT_EQ(families, 10u);  // one star per center
  EXPECT_EQ(sunflowers, families);
}

TEST(Sunflower, SmallEquidistantFamiliesNeedNotBe) {
  // the bound in the proposition is needed: a triangle of 2-sets is
  // pairwise equidistant but no sunflower
  size_t non_sunflowers = 0;
  for_each_equidistant_family(5, 2, 3, [&](const std::vector<std::vector<uint32_t>>& fam) {
    if (!sunflower_check(fam).is_sunflower) ++non_sunflowers;
  });
  EXPECT_GT(non_sunflowers, 0u);
}

namespace {

SetFamily random_sunflower(int n, int l, int petals, std::mt19937_64& rng) {
  for (int attempt = 0; attempt < 100; ++attempt) {
    int kernel_size = static_cast<int>(rng() % l);
    std::vector<uint32_t> pool(n);
    std::iota(pool.begin(), pool.end(), 0);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<uint32_t> kernel(pool.begin(), pool.begin() + kernel_size);
    size_t need = static_cast<size_t>(petals) * (l - kernel_size);
    if (kernel_size + need > static_cast<size_t>(n)) continue;
    SetFamily fam;
    fam.ground_n = n;
    size_t next = kernel_size;
    for (int p = 0; p < petals; ++p) {
      std::vector<uint32_t> s = kernel;
      for (int e = 0; e < l - kernel_size; ++e) s.push_back(pool[next++]);
      fam.add(s);
    }
    return fam;
  }
  throw std::runtime_error("random_sunflower: could not fit");
}

}  // namespace

TEST(Sunflower, ImagesOfSunflowersAreSunflowers) {
  std::mt19937_64 rng(3);
  std::vector<Code> codes;
  codes.push_back(make_affine_ball_code(12, 4, 2, 1));
  codes.push_back(make_repetition_ball_code(12, 4, 2));
  codes.push_back(make_indicator_ball_code(12, 4));
  codes.push_back(make_product_ball_code(12, 4));

  for (const auto& code : codes) {
    int k = 4;
    for (int trial = 0; trial < 50; ++trial) {
      int l = 1 + static_cast<int>(rng() % k);
      int petals = 2 + static_cast<int>(rng() % 3);
      SetFamily fam = random_sunflower(static_cast<int>(code.n), l, petals, rng);
      auto rep = image_sunflower_check(code, k, fam);
      ASSERT_TRUE(rep.family_is_sunflower);
      ASSERT_TRUE(rep.image_is_sunflower) << code.name;
      ASSERT_TRUE(rep.kernel_matches) << code.name;
    }
  }
}
