#pragma once

// Slow, independent reference implementations used to check the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "onionflow/geometry.hpp"

namespace oracle {

using onionflow::FloatChain;
using onionflow::FloatPoint;
using onionflow::GridPoint;

inline std::int64_t cross3(GridPoint a, GridPoint b, GridPoint c) {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// Strict hull vertices: points not inside any triangle of, and not on any
/// segment between, other points.
inline std::set<GridPoint> brute_force_hull(const std::vector<GridPoint>& input) {
  const std::set<GridPoint> unique(input.begin(), input.end());
  const std::vector<GridPoint> pts(unique.begin(), unique.end());
  const std::size_t n = pts.size();
  std::set<GridPoint> out;
  for (std::size_t i = 0; i < n; ++i) {
    const GridPoint p = pts[i];
    bool vertex = true;
    for (std::size_t a = 0; a < n && vertex; ++a) {
      if (a == i) continue;
      for (std::size_t b = a + 1; b < n && vertex; ++b) {
        if (b == i) continue;
        const GridPoint q = pts[a], r = pts[b];
        if (cross3(q, r, p) == 0 && std::min(q.x, r.x) <= p.x && p.x <= std::max(q.x, r.x) &&
            std::min(q.y, r.y) <= p.y && p.y <= std::max(q.y, r.y)) {
          vertex = false;
        }
        for (std::size_t c = b + 1; c < n && vertex; ++c) {
          if (c == i) continue;
          const GridPoint s = pts[c];
          const auto area = cross3(q, r, s);
          if (area == 0) continue;
          const auto d1 = cross3(q, r, p), d2 = cross3(r, s, p), d3 = cross3(s, q, p);
          const bool inside = area > 0 ? (d1 >= 0 && d2 >= 0 && d3 >= 0) : (d1 <= 0 && d2 <= 0 && d3 <= 0);
          if (inside) vertex = false;
        }
      }
    }
    if (vertex) out.insert(p);
  }
  return out;
}

inline std::int64_t gcd_count(std::int64_t a, std::int64_t b, std::int64_t m, std::int64_t n) {
  std::int64_t count = 0;
  for (std::int64_t x = a + 1; x <= a + m; ++x) {
    for (std::int64_t y = b + 1; y <= b + n; ++y) count += std::gcd(x, y) == 1;
  }
  return count;
}

/// Convex k-gon inscribed in a random ellipse, counterclockwise.
template <class Rng>
FloatChain random_convex_polygon(Rng& rng, int k) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const FloatPoint c{u(rng), u(rng)};
  const double rx = 0.2 + 0.5 * u(rng), ry = 0.2 + 0.5 * u(rng), tilt = std::numbers::pi * u(rng);
  std::vector<double> angles(static_cast<std::size_t>(k));
  for (auto& a : angles) a = 2.0 * std::numbers::pi * u(rng);
  std::sort(angles.begin(), angles.end());
  FloatChain chain;
  for (const double a : angles) {
    const double x = rx * std::cos(a), y = ry * std::sin(a);
    chain.vertices.push_back({c.x + x * std::cos(tilt) - y * std::sin(tilt), c.y + x * std::sin(tilt) + y * std::cos(tilt)});
  }
  return chain;
}

inline double segment_distance(FloatPoint p, FloatPoint a, FloatPoint b) {
  const double dx = b.x - a.x, dy = b.y - a.y;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0 ? ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * dx), p.y - (a.y + t * dy));
}

/// Largest distance from `per_edge` samples on each edge of `from` to the
/// boundary of `to`.
inline double sampled_directed(const FloatChain& from, const FloatChain& to, int per_edge) {
  double worst = 0.0;
  const std::size_t k = from.size(), l = to.size();
  for (std::size_t i = 0; i < k; ++i) {
    const FloatPoint a = from[i], b = from[(i + 1) % k];
    for (int s = 0; s < per_edge; ++s) {
      const double t = static_cast<double>(s) / per_edge;
      const FloatPoint p{a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)};
      double best = 1e300;
      for (std::size_t j = 0; j < l; ++j) best = std::min(best, segment_distance(p, to[j], to[(j + 1) % l]));
      worst = std::max(worst, best);
    }
  }
  return worst;
}

inline double sampled_hausdorff(const FloatChain& a, const FloatChain& b, int per_edge) {
  return std::max(sampled_directed(a, b, per_edge), sampled_directed(b, a, per_edge));
}

}  // namespace oracle
