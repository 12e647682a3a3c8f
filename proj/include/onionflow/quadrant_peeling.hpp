#pragma once

// Peeling of the quarter-infinite grid N^2. The removed points of column x
// are always its lowest a[x] points, so the whole state is the profile
// a[0] >= a[1] >= ... and the current hull boundary is the lower convex
// chain of the staircase points (x, a[x]), closed off by the vertical ray
// above column 0 and the horizontal ray along the x-axis.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "onionflow/error.hpp"
#include "onionflow/geometry.hpp"

namespace onionflow {

struct QuadrantProfile {
  std::int64_t n = 0;
  /// a[x] points removed from column x; the last entry is the first zero.
  std::vector<std::int64_t> a{0};
  std::int64_t s = 0;
  std::vector<std::int64_t> layer_sizes;

  /// First column with nothing removed yet.
  std::int64_t x_end() const { return static_cast<std::int64_t>(a.size()) - 1; }

  std::int64_t column(std::int64_t x) const {
    return x < static_cast<std::int64_t>(a.size()) ? a[static_cast<std::size_t>(x)] : 0;
  }
};

inline constexpr std::int64_t kMaxQuadrantIterations = 1'000'000;

/// Strict vertices of the current hull boundary in order of increasing x,
/// from (0, a[0]) down to (x_end, 0).
///
/// Within a run of equal a[x] only the leftmost column can be a vertex, so
/// the chain is built over run starts only.
inline GridChain staircase_hull(const QuadrantProfile& profile) {
  const auto& a = profile.a;
  std::vector<GridPoint> hull;
  hull.push_back({0, a[0]});
  for (std::size_t x = 1; x < a.size(); ++x) {
    if (a[x] == a[x - 1]) continue;
    const GridPoint p{static_cast<std::int64_t>(x), a[x]};
    while (hull.size() >= 2 && orientation(hull[hull.size() - 2], hull.back(), p) <= 0) hull.pop_back();
    hull.push_back(p);
  }
  return {std::move(hull)};
}

/// Removes the next layer in place.
inline void advance(QuadrantProfile& profile) {
  // Both ends of the chain are vertices: (0, a[0]) turns from the vertical
  // ray and the edge into (x_end, 0) always falls strictly, since a[x] > 0
  // before x_end.
  const auto hull = staircase_hull(profile);
  for (const auto& v : hull.vertices) ++profile.a[static_cast<std::size_t>(v.x)];
  if (profile.a.back() != 0) profile.a.push_back(0);
  const auto count = static_cast<std::int64_t>(hull.size());
  profile.layer_sizes.push_back(count);
  profile.s += count;
  ++profile.n;
}

inline QuadrantProfile quadrant_peel_step(QuadrantProfile profile) {
  advance(profile);
  return profile;
}

inline QuadrantProfile quadrant_run(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "iteration count must be >= 1");
  if (n > kMaxQuadrantIterations) {
    throw Error(ErrorCode::kResourceLimit, "quadrant runs are capped at 10^6 iterations");
  }
  QuadrantProfile profile;
  profile.a.reserve(static_cast<std::size_t>(n) + 1);
  profile.layer_sizes.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) advance(profile);
  return profile;
}

/// Diagonal coordinate K of the boundary of the set still present.
inline double k_n(const QuadrantProfile& profile) {
  return diagonal_intersection(staircase_hull(profile));
}

/// Profile of the mirror image (x, y) -> (y, x): the conjugate partition.
inline std::vector<std::int64_t> conjugate_profile(const std::vector<std::int64_t>& a) {
  const std::int64_t height = a.empty() ? 0 : a.front();
  std::vector<std::int64_t> b(static_cast<std::size_t>(height) + 1, 0);
  for (const auto ax : a) {
    for (std::int64_t y = 0; y < ax; ++y) ++b[static_cast<std::size_t>(y)];
  }
  return b;
}

struct HyperbolaFit {
  std::int64_t x_alpha = 0;
  double ratio = 0.0;
  /// No column deviated before the profile reached zero; x_alpha is x_end.
  bool saturated = false;
};

/// First integer x > K where |a[x] - K^2/x| > alpha * K^2/x, with K the
/// current diagonal coordinate.
inline HyperbolaFit hyperbola_fit_extent(const QuadrantProfile& profile, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw Error(ErrorCode::kInvalidArgument, "alpha must lie in (0, 1)");
  const double k = k_n(profile);
  if (!(k > 0.0)) throw Error(ErrorCode::kDegenerateInput, "profile has not been peeled");
  const double k2 = k * k;
  const std::int64_t end = profile.x_end();
  for (auto x = static_cast<std::int64_t>(std::floor(k)) + 1; x < end; ++x) {
    const double f = k2 / static_cast<double>(x);
    if (std::abs(static_cast<double>(profile.a[static_cast<std::size_t>(x)]) - f) > alpha * f) {
      return {x, static_cast<double>(x) / k, false};
    }
  }
  return {end, static_cast<double>(end) / k, true};
}

/// Inverts K = 2 (n / (3c))^{3/4} for c.
inline double estimate_c_quadrant(double k, std::int64_t n) {
  if (!(k > 0.0)) throw Error(ErrorCode::kInvalidArgument, "K must be positive");
  return static_cast<double>(n) / (3.0 * std::pow(k / 2.0, 4.0 / 3.0));
}

/// y-value of the flow solution started from the two coordinate axes.
inline double hyperbola_y(double t, double x) {
  return 4.0 / std::pow(3.0, 1.5) * std::pow(t, 1.5) / x;
}

/// Samples of the flow solution from the axes at time t for x in
/// [x_lo, x_hi], in increasing x.
inline FloatChain hyperbola_reference(double t, double x_lo, double x_hi, int samples = 256) {
  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "time must be positive");
  if (!(x_lo > 0.0 && x_hi > x_lo) || samples < 2) {
    throw Error(ErrorCode::kInvalidArgument, "need 0 < x_lo < x_hi and >= 2 samples");
  }
  FloatChain chain;
  chain.vertices.reserve(static_cast<std::size_t>(samples));
  // Geometric spacing keeps both arms of the curve resolved.
  const double ratio = std::pow(x_hi / x_lo, 1.0 / (samples - 1));
  double x = x_lo;
  for (int i = 0; i < samples; ++i, x *= ratio) {
    const double xi = (i == samples - 1) ? x_hi : x;
    chain.vertices.push_back({xi, hyperbola_y(t, xi)});
  }
  return chain;
}

}  // namespace onionflow
