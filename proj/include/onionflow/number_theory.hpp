#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "onionflow/error.hpp"
#include "onionflow/geometry.hpp"

namespace onionflow {

inline constexpr std::int64_t kSieveLimit = 1'000'000;

/// Smallest prime factor of every k <= kSieveLimit (spf[0] = spf[1] = 0).
/// Built on first use; read-only afterwards.
inline const std::vector<std::int32_t>& smallest_prime_factors() {
  static const std::vector<std::int32_t> spf = [] {
    std::vector<std::int32_t> table(static_cast<std::size_t>(kSieveLimit) + 1, 0);
    for (std::int64_t i = 2; i <= kSieveLimit; ++i) {
      if (table[static_cast<std::size_t>(i)] != 0) continue;
      for (std::int64_t j = i; j <= kSieveLimit; j += i) {
        if (table[static_cast<std::size_t>(j)] == 0) table[static_cast<std::size_t>(j)] = static_cast<std::int32_t>(i);
      }
    }
    return table;
  }();
  return spf;
}

inline int mobius(std::int64_t k) {
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "mobius is defined for k >= 1");
  int sign = 1;
  if (k <= kSieveLimit) {
    const auto& spf = smallest_prime_factors();
    while (k > 1) {
      const std::int64_t p = spf[static_cast<std::size_t>(k)];
      k /= p;
      if (k % p == 0) return 0;
      sign = -sign;
    }
    return sign;
  }
  for (std::int64_t p = 2; p * p <= k; ++p) {
    if (k % p != 0) continue;
    k /= p;
    if (k % p == 0) return 0;
    sign = -sign;
  }
  if (k > 1) sign = -sign;
  return sign;
}

namespace detail {

inline void guard_product(std::int64_t m, std::int64_t n) {
  if (m < 0 || n < 0) throw Error(ErrorCode::kInvalidArgument, "negative side length");
  if (m != 0 && n > (std::int64_t{1} << 62) / m) {
    throw Error(ErrorCode::kOverflow, std::to_string(m) + " * " + std::to_string(n) + " exceeds 2^62");
  }
}

/// Möbius-sum count of coprime pairs in {1..m} x {1..n}; zero when either
/// side is empty.
inline std::int64_t coprime_pairs(std::int64_t m, std::int64_t n) {
  guard_product(m, n);
  std::int64_t total = 0;
  const std::int64_t upto = std::min(m, n);
  for (std::int64_t d = 1; d <= upto; ++d) {
    const int mu = mobius(d);
    if (mu != 0) total += mu * (m / d) * (n / d);
  }
  return total;
}

}  // namespace detail

/// Number of primitive vectors (coprime pairs) in {1..m} x {1..n}.
inline std::int64_t primitive_count_anchored(std::int64_t m, std::int64_t n) {
  if (m < 1 || n < 1) throw Error(ErrorCode::kInvalidArgument, "side lengths must be >= 1");
  return detail::coprime_pairs(m, n);
}

/// The block {a+1..a+m} x {b+1..b+n}.
struct LatticeRect {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t m = 1;
  std::int64_t n = 1;
};

inline std::int64_t primitive_count_rect(const LatticeRect& r) {
  if (r.m < 1 || r.n < 1 || r.a < 0 || r.b < 0) {
    throw Error(ErrorCode::kInvalidArgument, "rectangle needs m, n >= 1 and a, b >= 0");
  }
  detail::guard_product(r.a + r.m, r.b + r.n);
  return detail::coprime_pairs(r.a + r.m, r.b + r.n) - detail::coprime_pairs(r.a + r.m, r.b) -
         detail::coprime_pairs(r.a, r.b + r.n) + detail::coprime_pairs(r.a, r.b);
}

/// |vertices| / (w h)^{1/3} for the chain's bounding box w x h, with each
/// side floored at 1.
inline double jarnik_ratio(const GridChain& chain) {
  if (chain.empty()) return 0.0;
  auto [x_lo, x_hi] = std::minmax_element(chain.vertices.begin(), chain.vertices.end(),
                                          [](const GridPoint& p, const GridPoint& q) { return p.x < q.x; });
  auto [y_lo, y_hi] = std::minmax_element(chain.vertices.begin(), chain.vertices.end(),
                                          [](const GridPoint& p, const GridPoint& q) { return p.y < q.y; });
  const double w = std::max<double>(1.0, static_cast<double>(x_hi->x - x_lo->x));
  const double h = std::max<double>(1.0, static_cast<double>(y_hi->y - y_lo->y));
  return static_cast<double>(chain.size()) / std::cbrt(w * h);
}

}  // namespace onionflow
