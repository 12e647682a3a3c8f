#pragma once

// Bounded convex regions in the plane: the five built-in test shapes plus
// user polygons, disks and parametric curves. A region answers three
// questions: which x-span does a horizontal line cut out of it, what is its
// area, and what does its boundary look like when sampled.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "onionflow/error.hpp"
#include "onionflow/geometry.hpp"

namespace onionflow {

enum class RegionKind { kParametricCurve, kPolygon, kSquare, kTriangle, kHalfDisk, kDisk };

inline const char* to_string(RegionKind kind) {
  switch (kind) {
    case RegionKind::kParametricCurve: return "parametric-curve";
    case RegionKind::kPolygon: return "polygon";
    case RegionKind::kSquare: return "square";
    case RegionKind::kTriangle: return "triangle";
    case RegionKind::kHalfDisk: return "half-disk";
    case RegionKind::kDisk: return "disk";
  }
  return "?";
}

/// Convex polygon, stored counterclockwise without collinear vertices.
struct PolygonShape {
  std::vector<FloatPoint> vertices;
};

struct DiskShape {
  FloatPoint center;
  double radius = 0.0;
};

/// Upper half of a disk: the flat side lies on y = center.y.
struct HalfDiskShape {
  FloatPoint center;
  double radius = 0.0;
};

/// Closed curve t -> curve(t), t in [0, 2pi). The region is the convex hull
/// of the curve, approximated by the hull of `samples` equally spaced
/// parameter values.
struct CurveShape {
  std::string curve_name;
  std::function<FloatPoint(double)> curve;
  int samples = 0;
  PolygonShape hull;
};

inline constexpr int kMinCurveSamples = 10000;

class Region {
 public:
  using Shape = std::variant<PolygonShape, DiskShape, HalfDiskShape, CurveShape>;

  Region(std::string name, RegionKind kind, Shape shape)
      : name_(std::move(name)), kind_(kind), shape_(std::move(shape)) {}

  static Region polygon(std::string name, std::span<const FloatPoint> vertices,
                        RegionKind kind = RegionKind::kPolygon) {
    auto hull = convex_hull(vertices);
    if (hull.size() < 3) throw Error(ErrorCode::kDegenerateInput, "polygon region has no area");
    return Region(std::move(name), kind, PolygonShape{std::move(hull.vertices)});
  }

  static Region square(std::string name, FloatPoint origin, double side) {
    if (!(side > 0.0)) throw Error(ErrorCode::kInvalidArgument, "square side must be positive");
    const std::vector<FloatPoint> v{origin,
                                    {origin.x + side, origin.y},
                                    {origin.x + side, origin.y + side},
                                    {origin.x, origin.y + side}};
    return polygon(std::move(name), v, RegionKind::kSquare);
  }

  static Region triangle(std::string name, FloatPoint a, FloatPoint b, FloatPoint c) {
    const std::vector<FloatPoint> v{a, b, c};
    return polygon(std::move(name), v, RegionKind::kTriangle);
  }

  static Region disk(std::string name, FloatPoint center, double diameter) {
    if (!(diameter > 0.0)) throw Error(ErrorCode::kInvalidArgument, "disk diameter must be positive");
    return Region(std::move(name), RegionKind::kDisk, DiskShape{center, diameter / 2.0});
  }

  static Region half_disk(std::string name, FloatPoint center, double diameter) {
    if (!(diameter > 0.0)) {
      throw Error(ErrorCode::kInvalidArgument, "half-disk diameter must be positive");
    }
    return Region(std::move(name), RegionKind::kHalfDisk, HalfDiskShape{center, diameter / 2.0});
  }

  static Region curve(std::string name, std::string curve_name,
                      std::function<FloatPoint(double)> fn, int samples = 16384) {
    if (samples < kMinCurveSamples) {
      throw Error(ErrorCode::kInvalidArgument,
                  "parametric regions need at least " + std::to_string(kMinCurveSamples) + " samples");
    }
    std::vector<FloatPoint> pts;
    pts.reserve(static_cast<std::size_t>(samples));
    for (int i = 0; i < samples; ++i) {
      pts.push_back(fn(2.0 * std::numbers::pi * i / samples));
    }
    auto hull = convex_hull(pts);
    if (hull.size() < 3) throw Error(ErrorCode::kDegenerateInput, "curve encloses no area");
    CurveShape shape{std::move(curve_name), std::move(fn), samples, PolygonShape{std::move(hull.vertices)}};
    return Region(std::move(name), RegionKind::kParametricCurve, std::move(shape));
  }

  const std::string& name() const { return name_; }
  RegionKind kind() const { return kind_; }
  const Shape& shape() const { return shape_; }

  /// Polygon that stands in for this region, if it is polygonal or a curve.
  const PolygonShape* polygon_shape() const {
    if (const auto* p = std::get_if<PolygonShape>(&shape_)) return p;
    if (const auto* c = std::get_if<CurveShape>(&shape_)) return &c->hull;
    return nullptr;
  }

  double area() const {
    if (const auto* p = polygon_shape()) return std::abs(signed_area(p->vertices));
    if (const auto* d = std::get_if<DiskShape>(&shape_)) return std::numbers::pi * d->radius * d->radius;
    const auto& h = std::get<HalfDiskShape>(shape_);
    return 0.5 * std::numbers::pi * h.radius * h.radius;
  }

  /// Lowest and highest y of the region.
  std::pair<double, double> y_range() const {
    if (const auto* p = polygon_shape()) {
      double lo = p->vertices.front().y, hi = lo;
      for (const auto& v : p->vertices) {
        lo = std::min(lo, v.y);
        hi = std::max(hi, v.y);
      }
      return {lo, hi};
    }
    if (const auto* d = std::get_if<DiskShape>(&shape_)) {
      return {d->center.y - d->radius, d->center.y + d->radius};
    }
    const auto& h = std::get<HalfDiskShape>(shape_);
    return {h.center.y, h.center.y + h.radius};
  }

  /// x-extent of the region scaled by `scale` along the line y = row (in
  /// scaled units). Rows within `slack` of the region are clamped onto it.
  std::optional<std::pair<double, double>> row_span(double row, double scale, double slack) const {
    if (const auto* p = polygon_shape()) return polygon_row_span(*p, row, scale, slack);
    const bool half = std::holds_alternative<HalfDiskShape>(shape_);
    const FloatPoint c = half ? std::get<HalfDiskShape>(shape_).center : std::get<DiskShape>(shape_).center;
    const double r = (half ? std::get<HalfDiskShape>(shape_).radius : std::get<DiskShape>(shape_).radius) * scale;
    const double cx = c.x * scale, cy = c.y * scale;
    const double lo_y = half ? cy : cy - r;
    if (row < lo_y - slack || row > cy + r + slack) return std::nullopt;
    const double dy = row - cy;
    const double w2 = r * r - dy * dy;
    const double w = w2 > 0.0 ? std::sqrt(w2) : 0.0;
    return std::pair{cx - w, cx + w};
  }

 private:
  static std::optional<std::pair<double, double>> polygon_row_span(const PolygonShape& poly, double row,
                                                                   double scale, double slack) {
    const auto& v = poly.vertices;
    double lo_y = v.front().y * scale, hi_y = lo_y;
    for (const auto& p : v) {
      lo_y = std::min(lo_y, p.y * scale);
      hi_y = std::max(hi_y, p.y * scale);
    }
    if (row < lo_y - slack || row > hi_y + slack) return std::nullopt;
    row = std::clamp(row, lo_y, hi_y);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
      const FloatPoint a = v[i] * scale;
      const FloatPoint b = v[(i + 1) % n] * scale;
      if (row < std::min(a.y, b.y) || row > std::max(a.y, b.y)) continue;
      if (a.y == b.y) {
        lo = std::min({lo, a.x, b.x});
        hi = std::max({hi, a.x, b.x});
        continue;
      }
      const double x = a.x + (row - a.y) * (b.x - a.x) / (b.y - a.y);
      lo = std::min(lo, x);
      hi = std::max(hi, x);
    }
    if (lo > hi) return std::nullopt;
    return std::pair{lo, hi};
  }

  std::string name_;
  RegionKind kind_;
  Shape shape_;
};

/// The curve whose hull is the first built-in test region.
inline FloatPoint rounded_triangle_curve(double a) {
  return {std::pow((1.0 - std::sin(a)) / 2.0, 2.0), std::pow((1.0 - std::sin(a + 2.0)) / 2.0, 1.3)};
}

inline Region region_r1(int samples = 16384) {
  return Region::curve("r1", "r1", rounded_triangle_curve, samples);
}
inline Region region_r2() { return Region::square("r2", {0.0, 0.0}, 1.0); }
inline Region region_r3() { return Region::triangle("r3", {0.0, 0.0}, {1.0, 0.75}, {0.4, 1.0}); }
inline Region region_r4() { return Region::half_disk("r4", {0.5, 0.0}, 1.0); }
inline Region region_r5() { return Region::disk("r5", {0.5, 0.5}, 1.0); }

/// Built-in region by id (r1..r5) or by its descriptive alias.
inline Region builtin_region(const std::string& name, int curve_samples = 16384) {
  if (name == "r1" || name == "curve") return region_r1(curve_samples);
  if (name == "r2" || name == "square") return region_r2();
  if (name == "r3" || name == "triangle") return region_r3();
  if (name == "r4" || name == "half-disk") return region_r4();
  if (name == "r5" || name == "disk") return region_r5();
  throw Error(ErrorCode::kInvalidArgument, "unknown built-in region '" + name + "'");
}

inline std::function<FloatPoint(double)> builtin_curve(const std::string& name) {
  if (name == "r1" || name == "rounded-triangle") return rounded_triangle_curve;
  if (name == "circle") {
    return [](double a) { return FloatPoint{0.5 + 0.5 * std::cos(a), 0.5 + 0.5 * std::sin(a)}; };
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown built-in curve '" + name + "'");
}

}  // namespace onionflow
