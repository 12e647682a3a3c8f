#pragma once

// Planar primitives shared by the peeling and flow code: exact lattice
// orientation, strict convex hulls, areas, Hausdorff distance between convex
// chains, circumcircles and grid-preserving (unimodular) maps.

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "onionflow/error.hpp"

namespace onionflow {

// Wide enough for exact cross products of 32-bit coordinates.
__extension__ typedef __int128 int128;

struct GridPoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend constexpr auto operator<=>(const GridPoint&, const GridPoint&) = default;
};

struct FloatPoint {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const FloatPoint&, const FloatPoint&) = default;
  friend constexpr FloatPoint operator+(FloatPoint a, FloatPoint b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr FloatPoint operator-(FloatPoint a, FloatPoint b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr FloatPoint operator*(double s, FloatPoint a) { return {s * a.x, s * a.y}; }
  friend constexpr FloatPoint operator*(FloatPoint a, double s) { return {s * a.x, s * a.y}; }
};

inline constexpr double dot(FloatPoint a, FloatPoint b) { return a.x * b.x + a.y * b.y; }
inline constexpr double cross(FloatPoint a, FloatPoint b) { return a.x * b.y - a.y * b.x; }
inline double norm(FloatPoint a) { return std::hypot(a.x, a.y); }
inline double distance(FloatPoint a, FloatPoint b) { return norm(a - b); }

inline FloatPoint to_float(GridPoint p, double scale = 1.0) {
  return {static_cast<double>(p.x) * scale, static_cast<double>(p.y) * scale};
}

/// Largest admissible |coordinate| for lattice points handed to the exact
/// predicates.
inline constexpr std::int64_t kMaxGridCoordinate = (std::int64_t{1} << 31) - 1;

inline void validate_grid_point(GridPoint p) {
  if (p.x > kMaxGridCoordinate || p.x < -kMaxGridCoordinate || p.y > kMaxGridCoordinate ||
      p.y < -kMaxGridCoordinate) {
    throw Error(ErrorCode::kOutOfRange,
                "(" + std::to_string(p.x) + ", " + std::to_string(p.y) + ") exceeds 2^31");
  }
}

/// Sign of the turn a -> b -> c: +1 left, -1 right, 0 collinear. Exact for
/// validated lattice points (products are formed in 128-bit arithmetic).
inline int orientation(GridPoint a, GridPoint b, GridPoint c) {
  const int128 abx = b.x - a.x, aby = b.y - a.y;
  const int128 acx = c.x - a.x, acy = c.y - a.y;
  const int128 det = abx * acy - aby * acx;
  return (det > 0) - (det < 0);
}

inline int orientation(FloatPoint a, FloatPoint b, FloatPoint c) {
  const double det = cross(b - a, c - a);
  return (det > 0.0) - (det < 0.0);
}

/// Vertices of a strictly convex polygon in counterclockwise order. Chains of
/// one or two vertices are the degenerate hulls of a point and a segment.
template <class Point>
struct ConvexChain {
  std::vector<Point> vertices;

  std::size_t size() const noexcept { return vertices.size(); }
  bool empty() const noexcept { return vertices.empty(); }
  const Point& operator[](std::size_t i) const { return vertices[i]; }

  friend bool operator==(const ConvexChain&, const ConvexChain&) = default;
};

using GridChain = ConvexChain<GridPoint>;
using FloatChain = ConvexChain<FloatPoint>;

namespace detail {

inline bool lex_less(const FloatPoint& a, const FloatPoint& b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}
inline bool lex_less(const GridPoint& a, const GridPoint& b) { return a < b; }

/// Andrew's monotone chain over distinct points that are sorted along some
/// direction (lexicographic by (x, y) or by (y, x)). Collinear points are
/// dropped, so the result holds only strict vertices, counterclockwise.
template <class Point>
std::vector<Point> monotone_chain(std::span<const Point> sorted) {
  const std::size_t n = sorted.size();
  if (n <= 2) return {sorted.begin(), sorted.end()};
  std::vector<Point> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && orientation(hull[k - 2], hull[k - 1], sorted[i]) <= 0) --k;
    hull[k++] = sorted[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && orientation(hull[k - 2], hull[k - 1], sorted[i]) <= 0) --k;
    hull[k++] = sorted[i];
  }
  hull.resize(k - 1);
  // All points collinear: the two passes meet at the extremes only.
  if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
  return hull;
}

}  // namespace detail

/// Strict convex hull of lattice points, counterclockwise from the
/// lexicographically smallest vertex. Boundary points that are not corners
/// are excluded.
inline GridChain convex_hull(std::span<const GridPoint> points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyInput, "convex_hull of no points");
  std::vector<GridPoint> sorted(points.begin(), points.end());
  for (const auto& p : sorted) validate_grid_point(p);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return {detail::monotone_chain<GridPoint>(sorted)};
}

inline FloatChain convex_hull(std::span<const FloatPoint> points) {
  if (points.empty()) throw Error(ErrorCode::kEmptyInput, "convex_hull of no points");
  std::vector<FloatPoint> sorted(points.begin(), points.end());
  for (const auto& p : sorted) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::kDegenerateInput, "non-finite point");
    }
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const FloatPoint& a, const FloatPoint& b) { return detail::lex_less(a, b); });
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  return {detail::monotone_chain<FloatPoint>(sorted)};
}

/// Shoelace area of a closed polygon given by its vertices in order.
/// Positive for counterclockwise input.
inline double signed_area(std::span<const FloatPoint> polygon) {
  const std::size_t n = polygon.size();
  if (n < 3) return 0.0;
  // Accumulate relative to the first vertex to limit cancellation.
  const FloatPoint o = polygon[0];
  double twice = 0.0;
  for (std::size_t i = 1; i + 1 < n; ++i) twice += cross(polygon[i] - o, polygon[i + 1] - o);
  return 0.5 * twice;
}

inline double polygon_area(const FloatChain& chain) {
  if (chain.size() < 3) throw Error(ErrorCode::kDegenerateChain, "area needs >= 3 vertices");
  return std::abs(signed_area(chain.vertices));
}

inline double polygon_area(const GridChain& chain) {
  if (chain.size() < 3) throw Error(ErrorCode::kDegenerateChain, "area needs >= 3 vertices");
  int128 twice = 0;
  const std::size_t n = chain.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = chain[i];
    const auto& b = chain[(i + 1) % n];
    twice += static_cast<int128>(a.x) * b.y - static_cast<int128>(b.x) * a.y;
  }
  if (twice < 0) twice = -twice;
  return static_cast<double>(twice) / 2.0;
}

inline double point_segment_distance(FloatPoint p, FloatPoint a, FloatPoint b) {
  const FloatPoint ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 == 0.0) return distance(p, a);
  const double t = std::clamp(dot(p - a, ab) / len2, 0.0, 1.0);
  return distance(p, a + t * ab);
}

/// Distance from p to the boundary of a chain: the closed polygon for three or
/// more vertices, the segment or point otherwise.
inline double distance_to_boundary(FloatPoint p, std::span<const FloatPoint> chain) {
  const std::size_t n = chain.size();
  if (n == 1) return distance(p, chain[0]);
  if (n == 2) return point_segment_distance(p, chain[0], chain[1]);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    best = std::min(best, point_segment_distance(p, chain[i], chain[(i + 1) % n]));
  }
  return best;
}

/// max over vertices of `from` of the distance to the boundary of `to`.
/// For convex chains this equals the directed Hausdorff distance between the
/// boundaries, since the maximum is attained at a vertex.
inline double directed_hausdorff(std::span<const FloatPoint> from, std::span<const FloatPoint> to) {
  double worst = 0.0;
  for (const auto& p : from) worst = std::max(worst, distance_to_boundary(p, to));
  return worst;
}

inline double hausdorff_distance(const FloatChain& a, const FloatChain& b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::kEmptyInput, "hausdorff of empty chain");
  return std::max(directed_hausdorff(a.vertices, b.vertices),
                  directed_hausdorff(b.vertices, a.vertices));
}

inline FloatChain to_float(const GridChain& chain, double scale = 1.0) {
  FloatChain out;
  out.vertices.reserve(chain.size());
  for (const auto& p : chain.vertices) out.vertices.push_back(to_float(p, scale));
  return out;
}

struct Circle {
  FloatPoint center;
  double radius = 0.0;
};

/// Twice the triangle area below this fraction of the squared longest side
/// counts as collinear.
inline constexpr double kCollinearTolerance = 1e-12;

/// Circle through p, q, r; std::nullopt when the triple is straight
/// (collinear within kCollinearTolerance).
inline std::optional<Circle> circumcircle(FloatPoint p, FloatPoint q, FloatPoint r) {
  if (p == q || q == r || p == r) {
    throw Error(ErrorCode::kDegenerateInput, "circumcircle needs three distinct points");
  }
  const FloatPoint a = p - q;
  const FloatPoint b = r - q;
  const double twice_area = cross(a, b);
  const double longest2 = std::max({dot(a, a), dot(b, b), dot(r - p, r - p)});
  if (std::abs(twice_area) < kCollinearTolerance * longest2) return std::nullopt;
  const double a2 = dot(a, a);
  const double b2 = dot(b, b);
  const double d = 2.0 * twice_area;
  const FloatPoint offset{(b.y * a2 - a.y * b2) / d, (a.x * b2 - b.x * a2) / d};
  return Circle{q + offset, norm(offset)};
}

/// Integer 2x2 matrix with determinant +1 or -1; a bijection of Z^2.
class UnimodularMap {
 public:
  UnimodularMap() = default;
  UnimodularMap(std::int64_t m11, std::int64_t m12, std::int64_t m21, std::int64_t m22)
      : m11_(m11), m12_(m12), m21_(m21), m22_(m22) {
    const int128 det = static_cast<int128>(m11) * m22 - static_cast<int128>(m12) * m21;
    if (det != 1 && det != -1) {
      throw Error(ErrorCode::kInvalidArgument, "matrix determinant is not +-1");
    }
  }

  static UnimodularMap identity() { return {}; }

  std::int64_t m11() const { return m11_; }
  std::int64_t m12() const { return m12_; }
  std::int64_t m21() const { return m21_; }
  std::int64_t m22() const { return m22_; }
  std::int64_t determinant() const { return m11_ * m22_ - m12_ * m21_; }

  GridPoint apply(GridPoint p) const {
    return {m11_ * p.x + m12_ * p.y, m21_ * p.x + m22_ * p.y};
  }
  FloatPoint apply(FloatPoint p) const {
    return {static_cast<double>(m11_) * p.x + static_cast<double>(m12_) * p.y,
            static_cast<double>(m21_) * p.x + static_cast<double>(m22_) * p.y};
  }
  GridPoint operator()(GridPoint p) const { return apply(p); }

  UnimodularMap inverse() const {
    const std::int64_t det = determinant();
    return {det * m22_, -det * m12_, -det * m21_, det * m11_};
  }

  /// this * other, i.e. apply `other` first.
  UnimodularMap then_after(const UnimodularMap& other) const {
    return {m11_ * other.m11_ + m12_ * other.m21_, m11_ * other.m12_ + m12_ * other.m22_,
            m21_ * other.m11_ + m22_ * other.m21_, m21_ * other.m12_ + m22_ * other.m22_};
  }

  friend bool operator==(const UnimodularMap&, const UnimodularMap&) = default;

 private:
  std::int64_t m11_ = 1, m12_ = 0, m21_ = 0, m22_ = 1;
};

namespace detail {

struct Bezout {
  std::int64_t g, s, t;  // s*a + t*b = g >= 0
};

inline Bezout extended_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t r0 = a, r1 = b, s0 = 1, s1 = 0, t0 = 0, t1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    r0 = std::exchange(r1, r0 - q * r1);
    s0 = std::exchange(s1, s0 - q * s1);
    t0 = std::exchange(t1, t0 - q * t1);
  }
  if (r0 < 0) return {-r0, -s0, -t0};
  return {r0, s0, t0};
}

inline std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace detail

/// Unimodular M with M*v1 = (1, 0) and |slope(M*v2)| >= 2.
///
/// v1 is first sent to (1, 0) using a Bezout identity; a horizontal shear
/// (x, y) -> (x - k*y, y) then brings the x-coordinate of the image of v2 to
/// within half of its y-coordinate. k is the floor or ceiling of x2/y2,
/// whichever gives the steeper slope, with ties going to the floor.
inline UnimodularMap grid_preserving_normalize(GridPoint v1, GridPoint v2) {
  validate_grid_point(v1);
  validate_grid_point(v2);
  const int128 det = static_cast<int128>(v1.x) * v2.y - static_cast<int128>(v1.y) * v2.x;
  if (det == 0) throw Error(ErrorCode::kDependentVectors, "v1 and v2 are parallel or zero");
  const auto [g, s, t] = detail::extended_gcd(v1.x, v1.y);
  if (g != 1) throw Error(ErrorCode::kNotPrimitive, "gcd of v1 coordinates is " + std::to_string(g));

  const UnimodularMap to_axis(s, t, -v1.y, v1.x);
  const GridPoint w = to_axis.apply(v2);  // w.y != 0 by independence

  const std::int64_t lo = detail::floor_div(w.x, w.y);
  const std::int64_t hi = (w.x % w.y == 0) ? lo : lo + 1;
  const auto residual = [&](std::int64_t k) {
    const std::int64_t r = w.x - k * w.y;
    return r < 0 ? -r : r;
  };
  const std::int64_t k = residual(hi) < residual(lo) ? hi : lo;
  const UnimodularMap shear(1, -k, 0, 1);
  return shear.then_after(to_axis);
}

/// Coordinate c where the polyline through the chain's vertices (taken in
/// order, not closed) meets the diagonal y = x at (c, c).
template <class Point>
double diagonal_intersection(const ConvexChain<Point>& chain) {
  const auto& v = chain.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double x = static_cast<double>(v[i].x);
    const double y = static_cast<double>(v[i].y);
    if (x == y) return x;
    if (i + 1 == v.size()) break;
    const double nx = static_cast<double>(v[i + 1].x);
    const double ny = static_cast<double>(v[i + 1].y);
    const double d0 = y - x;
    const double d1 = ny - nx;
    if ((d0 < 0.0) != (d1 < 0.0) && d1 != 0.0) {
      const double t = d0 / (d0 - d1);
      return x + t * (nx - x);
    }
  }
  throw Error(ErrorCode::kNoCrossing, "chain does not meet y = x");
}

}  // namespace onionflow
