#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hdlab/bits.hpp"
#include "hdlab/delta.hpp"

namespace hdlab {

struct SunflowerResult {
  bool is_sunflower = false;
  std::vector<uint32_t> kernel;
  size_t witness_i = 0, witness_j = 0;  // offending pair when not a sunflower
};

/// Detects a common pairwise intersection. Families of size <= 1 are
/// sunflowers by convention (kernel: the set itself, or empty).
inline SunflowerResult sunflower_check(const std::vector<std::vector<uint32_t>>& sets) {
  SunflowerResult r;
  if (sets.size() <= 1) {
    r.is_sunflower = true;
    if (!sets.empty()) r.kernel = sets[0];
    return r;
  }
  r.kernel = set_intersection(sets[0], sets[1]);
  for (size_t i = 0; i < sets.size(); ++i)
    for (size_t j = i + 1; j < sets.size(); ++j)
      if (set_intersection(sets[i], sets[j]) != r.kernel) {
        r.witness_i = i;
        r.witness_j = j;
        return r;
      }
  r.is_sunflower = true;
  return r;
}

inline SunflowerResult sunflower_check(const SetFamily& fam) {
  return sunflower_check(fam.sets);
}

struct ImageSunflowerReport {
  bool family_is_sunflower = false;
  bool image_is_sunflower = false;
  bool kernel_matches = false;
  std::vector<uint32_t> family_kernel;
  std::vector<uint32_t> image_kernel;
  std::vector<uint32_t> expected_kernel;  // E_{l'}(family kernel)
  size_t distinct_images = 0;

  bool pass() const { return image_is_sunflower && kernel_matches; }
};

/// Maps an l-set sunflower through the component code E_l of a ball code and
/// re-tests: the image (as a set family, duplicates collapsed) must again be
/// a sunflower, with kernel E_{l'} of the source kernel.
inline ImageSunflowerReport image_sunflower_check(const Code& ball_code, int k,
                                                  const SetFamily& fam) {
  ImageSunflowerReport rep;
  auto base = sunflower_check(fam);
  rep.family_is_sunflower = base.is_sunflower;
  if (!base.is_sunflower) return rep;
  rep.family_kernel = base.kernel;

  std::set<std::vector<uint32_t>> distinct;
  for (const auto& s : fam.sets) distinct.insert(component_code_of(ball_code, k, s));
  rep.distinct_images = distinct.size();
  std::vector<std::vector<uint32_t>> images(distinct.begin(), distinct.end());
  auto img = sunflower_check(images);
  rep.image_is_sunflower = img.is_sunflower;
  rep.image_kernel = img.kernel;
  rep.expected_kernel = component_code_of(ball_code, k, rep.family_kernel);
  rep.kernel_matches = img.is_sunflower && rep.image_kernel == rep.expected_kernel;
  return rep;
}

/// Enumerates all families of exactly `size` distinct k-subsets of [n] whose
/// pairwise distances are all equal (the hypothesis of the
/// equidistant-implies-sunflower proposition). Backtracking over the sets in
/// lexicographic order; the callback receives each complete family.
template <typename Fn>
inline void for_each_equidistant_family(int n, int k, size_t size, Fn&& fn) {
  if (n > 20 || k > 4) throw CapacityError("for_each_equidistant_family", n, 20);
  std::vector<std::vector<uint32_t>> all;
  slice_for_each(n, k, [&](uint64_t m) {
    std::vector<uint32_t> s;
    for (int i = 0; i < n; ++i)
      if (m & (uint64_t{1} << i)) s.push_back(i);
    all.push_back(std::move(s));
  });
  std::vector<size_t> chosen;
  std::optional<size_t> common_dist;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (chosen.size() == size) {
      std::vector<std::vector<uint32_t>> fam;
      for (size_t idx : chosen) fam.push_back(all[idx]);
      fn(fam);
      return;
    }
    for (size_t c = start; c < all.size(); ++c) {
      bool ok = true;
      std::optional<size_t> dist = common_dist;
      for (size_t idx : chosen) {
        size_t d = symmdiff_size(all[idx], all[c]);
        if (!dist) {
          dist = d;
        } else if (*dist != d) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      auto saved = common_dist;
      common_dist = dist;
      chosen.push_back(c);
      self(self, c + 1);
      chosen.pop_back();
      common_dist = saved;
    }
  };
  rec(rec, 0);
}

}  // namespace hdlab
