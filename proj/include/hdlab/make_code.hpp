#pragma once

#include <string>
#include <vector>

#include "hdlab/codes.hpp"
#include "hdlab/random.hpp"

namespace hdlab {

namespace detail {

constexpr int kCubeGuardBits = 16;

inline std::vector<BitString> cube_domain(int n) {
  if (n < 1 || n > kCubeGuardBits)
    throw CapacityError("cube domain", n < 1 ? 0 : (uint64_t{1} << n),
                        uint64_t{1} << kCubeGuardBits);
  std::vector<BitString> d;
  d.reserve(uint64_t{1} << n);
  for (uint64_t m = 0; m < (uint64_t{1} << n); ++m) d.push_back(BitString::from_mask(m, n));
  return d;
}

/// Construction-time check of a freshly built code against its declared f:
/// exhaustive when the domain fits the verification guard, deterministic
/// sampling otherwise.
inline void verify_on_construction(const Code& code, const PartialF& f) {
  if (code.domain_size() <= kVerifyGuard) {
    auto violations = verify_fcode(code, f, 1);
    if (!violations.empty())
      throw std::runtime_error("make_code(" + code.name + "): construction verification: " +
                               violations[0].to_string());
    return;
  }
  size_t d = code.domain_size();
  for (uint64_t t = 0; t < 200000; ++t) {
    size_t i = splitmix64(t) % d, j = splitmix64(t ^ 0xc0ffee) % d;
    size_t dist = hamming_distance(code.domain[i], code.domain[j]);
    if (!f.defined(dist)) continue;
    if (symmdiff_size(code.codewords[i], code.codewords[j]) != f.at(dist))
      throw std::runtime_error("make_code(" + code.name + "): sampled verification failed");
  }
}

}  // namespace detail

/// x -> x repeated alpha times; an f-code for f(d) = alpha d on the cube.
inline Code make_repetition_code(int n, int alpha) {
  if (alpha < 0) throw ShapeError("make_repetition_code: alpha >= 0");
  Code c;
  c.name = "repetition(" + std::to_string(alpha) + ")";
  c.n = n;
  c.m = static_cast<size_t>(alpha) * n;
  PartialF f;
  for (int d = 0; d <= n; ++d) f.set(d, static_cast<size_t>(alpha) * d);
  for (const auto& x : detail::cube_domain(n)) {
    std::vector<uint32_t> cw;
    for (uint32_t i : x.ones())
      for (int t = 0; t < alpha; ++t) cw.push_back(static_cast<uint32_t>(t * n + i));
    std::sort(cw.begin(), cw.end());
    c.add(x, std::move(cw));
  }
  detail::verify_on_construction(c, f);
  return c;
}

/// One-hot over the 2^n-ary alphabet: f(0) = 0, f(d) = 2 for d >= 1.
inline Code make_indicator_code(int n) {
  Code c;
  c.name = "indicator";
  c.n = n;
  c.m = uint64_t{1} << n;
  PartialF f;
  f.set(0, 0);
  for (int d = 1; d <= n; ++d) f.set(d, 2);
  for (const auto& x : detail::cube_domain(n))
    c.add(x, {static_cast<uint32_t>(x.words()[0])});
  detail::verify_on_construction(c, f);
  return c;
}

/// Greedy merged-indicator: the domain is split into parts whose members are
/// pairwise farther than min_sep apart, and the code is one-hot over part
/// indices. An f-code for f(d) = 2 on d in [1, min_sep].
inline Code make_merged_indicator_code(int n, int min_sep) {
  if (min_sep < 1) throw ShapeError("make_merged_indicator_code: min_sep >= 1");
  auto domain = detail::cube_domain(n);
  std::vector<std::vector<size_t>> parts;
  std::vector<uint32_t> part_of(domain.size());
  for (size_t i = 0; i < domain.size(); ++i) {
    bool placed = false;
    for (size_t p = 0; p < parts.size() && !placed; ++p) {
      bool ok = true;
      for (size_t j : parts[p])
        if (hamming_distance(domain[i], domain[j]) <= static_cast<size_t>(min_sep)) {
          ok = false;
          break;
        }
      if (ok) {
        parts[p].push_back(i);
        part_of[i] = static_cast<uint32_t>(p);
        placed = true;
      }
    }
    if (!placed) {
      part_of[i] = static_cast<uint32_t>(parts.size());
      parts.push_back({i});
    }
  }
  Code c;
  c.name = "merged_indicator(" + std::to_string(min_sep) + ")";
  c.n = n;
  c.m = parts.size();
  for (size_t i = 0; i < domain.size(); ++i) c.add(domain[i], {part_of[i]});
  PartialF f;
  f.set(0, 0);
  for (int d = 1; d <= std::min(min_sep, n); ++d) f.set(d, 2);
  detail::verify_on_construction(c, f);
  return c;
}

/// x -> parity of x; an f-code for f(d) = d mod 2.
inline Code make_parity_code(int n) {
  Code c;
  c.name = "parity";
  c.n = n;
  c.m = 1;
  PartialF f;
  for (int d = 0; d <= n; ++d) f.set(d, d % 2);
  for (const auto& x : detail::cube_domain(n)) {
    std::vector<uint32_t> cw;
    if (x.weight() % 2 == 1) cw.push_back(0);
    c.add(x, std::move(cw));
  }
  detail::verify_on_construction(c, f);
  return c;
}

/// x -> x (x) x (outer product) on the slice C(2n', n'); an f_n-code for
/// f(d) = 2 d n' - d^2/2 at even d. Non-affine, but the transfer depends on
/// n', so it is a standing finite-n example only.
inline Code make_product_slice_code(int half) {
  int n = 2 * half;
  Code c;
  c.name = "product_slice";
  c.n = n;
  c.m = static_cast<size_t>(n) * n;
  PartialF f;
  for (int d = 0; d <= n; d += 2)
    f.set(d, static_cast<size_t>(2 * d * half - d * d / 2));
  for (const auto& x : slice_strings(n, half)) {
    auto ones = x.ones();
    std::vector<uint32_t> cw;
    cw.reserve(ones.size() * ones.size());
    for (uint32_t i : ones)
      for (uint32_t j : ones) cw.push_back(i * n + j);
    std::sort(cw.begin(), cw.end());
    c.add(x, std::move(cw));
  }
  detail::verify_on_construction(c, f);
  return c;
}

namespace detail {

/// alpha repetitions plus beta indicator layers over an explicit domain; the
/// affine family f(d) = alpha d + 2 beta on even d >= 2.
inline Code affine_over_domain(std::vector<BitString> domain, int n, int alpha, int beta,
                               const std::string& name) {
  if (alpha < 0 || beta < 0) throw ShapeError("affine code: alpha, beta >= 0");
  Code c;
  c.name = name;
  c.n = n;
  size_t rep_width = static_cast<size_t>(alpha) * n;
  c.m = rep_width + static_cast<size_t>(beta) * domain.size();
  for (size_t idx = 0; idx < domain.size(); ++idx) {
    std::vector<uint32_t> cw;
    for (uint32_t i : domain[idx].ones())
      for (int t = 0; t < alpha; ++t) cw.push_back(static_cast<uint32_t>(t * n + i));
    for (int t = 0; t < beta; ++t)
      cw.push_back(static_cast<uint32_t>(rep_width + t * domain.size() + idx));
    std::sort(cw.begin(), cw.end());
    c.add(domain[idx], std::move(cw));
  }
  return c;
}

}  // namespace detail

/// Affine family on the slice C(2n', n').
inline Code make_affine_slice_code(int half, int alpha, int beta) {
  int n = 2 * half;
  Code c = detail::affine_over_domain(slice_strings(n, half), n, alpha, beta,
                                      "affine(" + std::to_string(alpha) + "," +
                                          std::to_string(beta) + ")");
  PartialF f;
  for (int d = 2; d <= n; d += 2) f.set(d, static_cast<size_t>(alpha * d + 2 * beta));
  detail::verify_on_construction(c, f);
  return c;
}

/// Affine family directly on the weight-k ball domain over [n]; the shape the
/// Delta-decomposition machinery consumes.
inline Code make_affine_ball_code(int n, int k, int alpha, int beta) {
  Code c = detail::affine_over_domain(slice_strings(n, k), n, alpha, beta,
                                      "affine_ball(" + std::to_string(alpha) + "," +
                                          std::to_string(beta) + ")");
  PartialF f;
  for (int d = 2; d <= 2 * k; d += 2) f.set(d, static_cast<size_t>(alpha * d + 2 * beta));
  detail::verify_on_construction(c, f);
  return c;
}

inline Code make_repetition_ball_code(int n, int k, int alpha) {
  return make_affine_ball_code(n, k, alpha, 0);
}

inline Code make_indicator_ball_code(int n, int k) {
  return make_affine_ball_code(n, k, 0, 1);
}

/// The sparsified product code on the weight-k ball over [n], built directly:
/// with N = n+k, each x is embedded as x+k joined with the fixed tail
/// [2N] \ [N+k], outer-producted, and shifted by the base point's image.
/// Identical to sparsify(make_product_slice_code(N), k) without ever
/// materializing the slice code.
inline Code make_product_ball_code(int n, int k) {
  int big_n = n + k;
  int width = 2 * big_n;
  auto outer = [&](const std::vector<uint32_t>& s) {
    std::vector<uint32_t> cw;
    cw.reserve(s.size() * s.size());
    for (uint32_t i : s)
      for (uint32_t j : s) cw.push_back(i * width + j);
    std::sort(cw.begin(), cw.end());
    return cw;
  };
  std::vector<uint32_t> base;
  for (int i = 0; i < k; ++i) base.push_back(i);
  for (int i = big_n + k; i < width; ++i) base.push_back(i);
  auto base_cw = outer(base);

  Code c;
  c.name = "product_ball";
  c.n = n;
  c.m = static_cast<size_t>(width) * width;
  for (const auto& x : slice_strings(n, k)) {
    std::vector<uint32_t> s;
    for (uint32_t i : x.ones()) s.push_back(i + k);
    for (int i = big_n + k; i < width; ++i) s.push_back(static_cast<uint32_t>(i));
    std::vector<uint32_t> cw;
    const auto a = outer(s);
    std::set_symmetric_difference(a.begin(), a.end(), base_cw.begin(), base_cw.end(),
                                  std::back_inserter(cw));
    c.add(x, std::move(cw));
  }
  PartialF f;  // the slice transfer survives sparsification
  for (int d = 2; d <= 2 * k; d += 2)
    f.set(d, static_cast<size_t>(2 * d * big_n - d * d / 2));
  detail::verify_on_construction(c, f);
  return c;
}

/// Named dispatcher used by the CLI and the file tools.
inline Code make_code(const std::string& kind, int n, int alpha = 2, int beta = 1,
                      int min_sep = 6) {
  if (kind == "repetition") return make_repetition_code(n, alpha);
  if (kind == "indicator") return make_indicator_code(n);
  if (kind == "merged_indicator") return make_merged_indicator_code(n, min_sep);
  if (kind == "parity") return make_parity_code(n);
  if (kind == "product_slice") return make_product_slice_code(n / 2);
  if (kind == "affine") return make_affine_slice_code(n / 2, alpha, beta);
  throw ShapeError("make_code: unknown kind " + kind);
}

}  // namespace hdlab
