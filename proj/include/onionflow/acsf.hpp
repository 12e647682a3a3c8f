#pragma once

// Front-tracking simulation of the affine curve-shortening flow on closed
// convex curves. Each sample moves toward the center of the circle through
// itself and its two neighbours at speed r^{-1/3}, plus a tangential term
// that pushes it away from the nearer neighbour to keep the spacing even.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "onionflow/error.hpp"
#include "onionflow/geometry.hpp"
#include "onionflow/region.hpp"

namespace onionflow {

inline constexpr std::size_t kMinFrontSamples = 8;

/// Closed sampled curve, counterclockwise, with the flow time it has
/// accumulated.
class FrontCurve {
 public:
  FrontCurve() = default;

  /// Validates the samples: at least eight, finite, no repeated neighbours,
  /// and convex up to rounding. Clockwise input is reversed.
  explicit FrontCurve(std::vector<FloatPoint> points, double elapsed_time = 0.0)
      : points_(std::move(points)), elapsed_time_(elapsed_time) {
    if (points_.size() < kMinFrontSamples) {
      throw Error(ErrorCode::kDegenerateInput, "a front needs at least 8 samples");
    }
    for (const auto& p : points_) {
      if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
        throw Error(ErrorCode::kDegenerateInput, "non-finite sample");
      }
    }
    if (signed_area(points_) < 0.0) std::reverse(points_.begin(), points_.end());
    const std::size_t m = points_.size();
    for (std::size_t i = 0; i < m; ++i) {
      const FloatPoint e0 = at(i) - at(i + m - 1);
      const FloatPoint e1 = at(i + 1) - at(i);
      if (norm(e1) == 0.0) throw Error(ErrorCode::kDegenerateInput, "repeated consecutive samples");
      if (cross(e0, e1) < -1e-9 * norm(e0) * norm(e1)) {
        throw Error(ErrorCode::kInvalidArgument, "front curve is not convex");
      }
    }
    if (turning_number() != 1) throw Error(ErrorCode::kInvalidArgument, "front curve is not simple");
  }

  const std::vector<FloatPoint>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  double elapsed_time() const { return elapsed_time_; }
  double area() const { return signed_area(points_); }

  /// Cyclic access.
  const FloatPoint& at(std::size_t i) const { return points_[i % points_.size()]; }

  double min_spacing() const {
    double d = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < size(); ++i) d = std::min(d, distance(at(i), at(i + 1)));
    return d;
  }

  double max_spacing() const {
    double d = 0.0;
    for (std::size_t i = 0; i < size(); ++i) d = std::max(d, distance(at(i), at(i + 1)));
    return d;
  }

  FloatPoint centroid() const {
    const double a = area();
    double cx = 0.0, cy = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      const FloatPoint p = at(i), q = at(i + 1);
      const double w = cross(p, q);
      cx += (p.x + q.x) * w;
      cy += (p.y + q.y) * w;
    }
    return {cx / (6.0 * a), cy / (6.0 * a)};
  }

  /// Total rotation of the edge direction around the curve, in turns.
  long turning_number() const {
    double total = 0.0;
    for (std::size_t i = 0; i < size(); ++i) {
      const FloatPoint e0 = at(i + 1) - at(i);
      const FloatPoint e1 = at(i + 2) - at(i + 1);
      total += std::atan2(cross(e0, e1), dot(e0, e1));
    }
    return std::lround(total / (2.0 * std::numbers::pi));
  }

  FloatChain as_chain() const { return FloatChain{points_}; }

 private:
  friend FrontCurve unchecked_front(std::vector<FloatPoint> points, double elapsed_time);

  std::vector<FloatPoint> points_;
  double elapsed_time_ = 0.0;
};

/// Builds a front without the convexity check; used for the evolving curve,
/// which may pick up rounding-level dents on flat stretches.
inline FrontCurve unchecked_front(std::vector<FloatPoint> points, double elapsed_time) {
  FrontCurve curve;
  curve.points_ = std::move(points);
  curve.elapsed_time_ = elapsed_time;
  return curve;
}

struct StepParams {
  /// Time step is c_step * d_min^{4/3}. The explicit scheme needs roughly
  /// c_step < 1.5 (d/r)^{2/3}, about 0.05 for 1024 samples on a circle.
  double c_step = 0.02;
  /// Tangential speed is lambda * |v| * |ln(d_prev / d_next)|.
  double lambda = 0.5;
  /// No sample moves farther than this multiple of d_min in one step.
  double max_displacement = 0.4;
  /// Spacing ratio (max / min) that triggers a uniform resample.
  double resample_ratio = 10.0;

  void validate() const {
    if (!(c_step > 0.0)) throw Error(ErrorCode::kInvalidArgument, "c_step must be positive");
    if (!(lambda >= 0.0)) throw Error(ErrorCode::kInvalidArgument, "lambda must be nonnegative");
    if (!(max_displacement > 0.0)) throw Error(ErrorCode::kInvalidArgument, "max_displacement must be positive");
    if (!(resample_ratio > 1.0)) throw Error(ErrorCode::kInvalidArgument, "resample_ratio must exceed 1");
  }
};

/// m points spaced evenly by arclength along the closed polygon, starting at
/// its first vertex.
inline std::vector<FloatPoint> resample_uniform(std::span<const FloatPoint> polygon, std::size_t m) {
  const std::size_t n = polygon.size();
  std::vector<double> cumulative(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    cumulative[i + 1] = cumulative[i] + distance(polygon[i], polygon[(i + 1) % n]);
  }
  const double perimeter = cumulative[n];
  std::vector<FloatPoint> out;
  out.reserve(m);
  std::size_t edge = 0;
  for (std::size_t k = 0; k < m; ++k) {
    const double s = perimeter * static_cast<double>(k) / static_cast<double>(m);
    while (edge + 1 < n && cumulative[edge + 1] <= s) ++edge;
    const double len = cumulative[edge + 1] - cumulative[edge];
    const double t = len > 0.0 ? (s - cumulative[edge]) / len : 0.0;
    const FloatPoint a = polygon[edge];
    const FloatPoint b = polygon[(edge + 1) % n];
    out.push_back(a + t * (b - a));
  }
  return out;
}

namespace detail {

/// Splits m samples over pieces of the given lengths, at least one each,
/// proportionally to length (largest remainder, ties to the earlier piece).
inline std::vector<std::size_t> allocate_samples(std::span<const double> lengths, std::size_t m) {
  const std::size_t pieces = lengths.size();
  if (m < pieces) throw Error(ErrorCode::kInvalidArgument, "fewer samples than boundary corners");
  double total = 0.0;
  for (double l : lengths) total += l;
  const double spare = static_cast<double>(m - pieces);
  std::vector<std::size_t> counts(pieces, 1);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t used = pieces;
  for (std::size_t i = 0; i < pieces; ++i) {
    const double share = spare * lengths[i] / total;
    const auto whole = static_cast<std::size_t>(std::floor(share));
    counts[i] += whole;
    used += whole;
    remainders.emplace_back(share - static_cast<double>(whole), i);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& l, const auto& r) { return l.first > r.first; });
  for (std::size_t k = 0; used < m; ++k, ++used) ++counts[remainders[k % pieces].second];
  return counts;
}

inline std::vector<FloatPoint> sample_polygon_with_corners(std::span<const FloatPoint> vertices, std::size_t m) {
  const std::size_t n = vertices.size();
  std::vector<double> lengths(n);
  for (std::size_t i = 0; i < n; ++i) lengths[i] = distance(vertices[i], vertices[(i + 1) % n]);
  const auto counts = allocate_samples(lengths, m);
  std::vector<FloatPoint> out;
  out.reserve(m);
  for (std::size_t i = 0; i < n; ++i) {
    const FloatPoint a = vertices[i];
    const FloatPoint b = vertices[(i + 1) % n];
    for (std::size_t k = 0; k < counts[i]; ++k) {
      out.push_back(a + (static_cast<double>(k) / static_cast<double>(counts[i])) * (b - a));
    }
  }
  return out;
}

}  // namespace detail

/// m samples on the region boundary, roughly uniform in arclength. Corners of
/// polygonal regions (and of the half-disk) are always among the samples.
inline FrontCurve sample_region_boundary(const Region& region, std::size_t m) {
  if (m < kMinFrontSamples) throw Error(ErrorCode::kInvalidArgument, "need at least 8 samples");
  const auto& shape = region.shape();
  if (const auto* poly = std::get_if<PolygonShape>(&shape)) {
    return FrontCurve(detail::sample_polygon_with_corners(poly->vertices, m));
  }
  if (const auto* curve = std::get_if<CurveShape>(&shape)) {
    return FrontCurve(resample_uniform(curve->hull.vertices, m));
  }
  std::vector<FloatPoint> pts;
  pts.reserve(m);
  if (const auto* disk = std::get_if<DiskShape>(&shape)) {
    for (std::size_t k = 0; k < m; ++k) {
      const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
      pts.push_back({disk->center.x + disk->radius * std::cos(a), disk->center.y + disk->radius * std::sin(a)});
    }
    return FrontCurve(std::move(pts));
  }
  const auto& half = std::get<HalfDiskShape>(shape);
  const double r = half.radius;
  const std::vector<double> lengths{2.0 * r, std::numbers::pi * r};
  const auto counts = detail::allocate_samples(lengths, m);
  for (std::size_t k = 0; k < counts[0]; ++k) {
    pts.push_back({half.center.x - r + 2.0 * r * static_cast<double>(k) / static_cast<double>(counts[0]),
                   half.center.y});
  }
  for (std::size_t k = 0; k < counts[1]; ++k) {
    const double a = std::numbers::pi * static_cast<double>(k) / static_cast<double>(counts[1]);
    pts.push_back({half.center.x + r * std::cos(a), half.center.y + r * std::sin(a)});
  }
  return FrontCurve(std::move(pts));
}

/// Per-sample velocity (normal plus tangential) of the current front.
inline std::vector<FloatPoint> front_velocities(const FrontCurve& curve, double lambda) {
  const std::size_t m = curve.size();
  std::vector<FloatPoint> vel(m);
  for (std::size_t i = 0; i < m; ++i) {
    const FloatPoint prev = curve.at(i + m - 1);
    const FloatPoint p = curve.at(i);
    const FloatPoint next = curve.at(i + 1);
    const auto circle = circumcircle(prev, p, next);
    if (!circle) continue;  // straight: no motion
    const FloatPoint inward = (1.0 / circle->radius) * (circle->center - p);
    const double speed = 1.0 / std::cbrt(circle->radius);
    FloatPoint v = speed * inward;
    if (lambda > 0.0) {
      FloatPoint tangent{-inward.y, inward.x};
      if (dot(tangent, next - p) < 0.0) tangent = -1.0 * tangent;
      const double d_prev = distance(p, prev);
      const double d_next = distance(next, p);
      // Positive when next is the farther neighbour.
      v = v + (lambda * speed * std::log(d_next / d_prev)) * tangent;
    }
    vel[i] = v;
  }
  return vel;
}

/// One explicit step. Throws kStepRejected if the result is not a simple
/// positively oriented curve; the caller should retry with a smaller c_step.
inline FrontCurve acsf_step(const FrontCurve& curve, const StepParams& params) {
  params.validate();
  const std::size_t m = curve.size();
  const double d_min = curve.min_spacing();
  const auto vel = front_velocities(curve, params.lambda);
  double max_speed = 0.0;
  for (const auto& v : vel) max_speed = std::max(max_speed, norm(v));
  double dt = params.c_step * std::pow(d_min, 4.0 / 3.0);
  if (dt * max_speed > params.max_displacement * d_min) dt = params.max_displacement * d_min / max_speed;

  std::vector<FloatPoint> next(m);
  for (std::size_t i = 0; i < m; ++i) next[i] = curve.at(i) + dt * vel[i];
  FrontCurve moved = unchecked_front(std::move(next), curve.elapsed_time() + dt);

  if (!(moved.area() > 0.0)) throw Error(ErrorCode::kStepRejected, "area became nonpositive");
  if (!(moved.min_spacing() > 0.0)) throw Error(ErrorCode::kStepRejected, "samples collided");
  for (std::size_t i = 0; i < m; ++i) {
    // An edge that swings by more than a right angle means a fold.
    const FloatPoint before = curve.at(i + 1) - curve.at(i);
    const FloatPoint after = moved.at(i + 1) - moved.at(i);
    if (dot(before, after) <= 0.0) throw Error(ErrorCode::kStepRejected, "edge reversed");
  }
  if (moved.turning_number() != 1) throw Error(ErrorCode::kStepRejected, "front self-intersects");

  if (moved.max_spacing() > params.resample_ratio * moved.min_spacing()) {
    return unchecked_front(resample_uniform(moved.points(), m), moved.elapsed_time());
  }
  return moved;
}

struct FlowResult {
  FrontCurve curve;
  double t = 0.0;
  std::int64_t steps = 0;
};

inline constexpr std::int64_t kDefaultMaxSteps = 20'000'000;

namespace detail {

/// Steps until the area drops to `target_area`, halving c_step on rejects.
inline std::int64_t advance_to_area(FrontCurve& curve, double target_area, StepParams& params,
                                    std::int64_t max_steps) {
  std::int64_t steps = 0;
  int halvings = 0;
  while (curve.area() > target_area) {
    if (steps >= max_steps) {
      throw Error(ErrorCode::kNonConvergence, "step limit reached before the target area");
    }
    try {
      curve = acsf_step(curve, params);
      ++steps;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kStepRejected || ++halvings > 40) throw;
      params.c_step /= 2.0;
    }
  }
  return steps;
}

}  // namespace detail

/// Flows until the enclosed area is at most target_fraction of the start.
inline FlowResult run_until_area(FrontCurve curve, double target_fraction, StepParams params = {},
                                 std::int64_t max_steps = kDefaultMaxSteps) {
  if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "target fraction must lie in (0, 1)");
  }
  params.validate();
  const double target = target_fraction * curve.area();
  const auto steps = detail::advance_to_area(curve, target, params, max_steps);
  const double t = curve.elapsed_time();
  return {std::move(curve), t, steps};
}

/// One run through several decreasing area fractions; a snapshot per fraction.
inline std::vector<FlowResult> run_through_area_fractions(FrontCurve curve, std::span<const double> fractions,
                                                          StepParams params = {},
                                                          std::int64_t max_steps = kDefaultMaxSteps) {
  params.validate();
  const double initial = curve.area();
  std::vector<FlowResult> out;
  double previous = 1.0;
  std::int64_t steps = 0;
  for (const double fraction : fractions) {
    if (!(fraction > 0.0 && fraction < 1.0) || fraction > previous) {
      throw Error(ErrorCode::kInvalidArgument, "fractions must be decreasing within (0, 1)");
    }
    previous = fraction;
    steps += detail::advance_to_area(curve, fraction * initial, params, max_steps - steps);
    out.push_back({curve, curve.elapsed_time(), steps});
  }
  return out;
}

/// Time at which a circle of radius r0 collapses.
inline double circle_collapse_time(double r0) { return 0.75 * std::pow(r0, 4.0 / 3.0); }

/// Exact radius of a circle of initial radius r0 after flowing for time t.
inline double circle_radius(double r0, double t) {
  if (!(r0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "radius must be positive");
  if (t < 0.0) throw Error(ErrorCode::kInvalidArgument, "time must be nonnegative");
  const double collapse = circle_collapse_time(r0);
  if (t > collapse) {
    throw Error(ErrorCode::kCollapsed, "circle collapses at t = " + std::to_string(collapse));
  }
  return std::pow(std::max(0.0, std::pow(r0, 4.0 / 3.0) - 4.0 * t / 3.0), 0.75);
}

/// Time at which the circle's area has shrunk to `fraction` of the start.
inline double circle_time_to_area_fraction(double r0, double fraction) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw Error(ErrorCode::kInvalidArgument, "fraction must lie in (0, 1]");
  return circle_collapse_time(r0) * (1.0 - std::pow(fraction, 2.0 / 3.0));
}

/// Ratio of largest to smallest distance from the centroid.
inline double radius_spread(const FrontCurve& curve) {
  const FloatPoint c = curve.centroid();
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (const auto& p : curve.points()) {
    const double r = distance(p, c);
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  return hi / lo;
}

/// radius_spread after mapping the curve by the inverse square root of its
/// second-moment matrix; 1 for an ellipse, invariant under linear maps.
inline double affine_roundness(const FrontCurve& curve) {
  const FloatPoint c = curve.centroid();
  // Area second moments (common factor dropped).
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  const std::size_t m = curve.size();
  for (std::size_t i = 0; i < m; ++i) {
    const FloatPoint p = curve.at(i) - c, q = curve.at(i + 1) - c;
    const double w = cross(p, q);  // twice the triangle (c, p, q)
    sxx += w * (p.x * p.x + p.x * q.x + q.x * q.x);
    syy += w * (p.y * p.y + p.y * q.y + q.y * q.y);
    sxy += w * (2 * p.x * p.y + p.x * q.y + q.x * p.y + 2 * q.x * q.y);
  }
  sxy /= 2.0;
  // Inverse square root of the symmetric positive matrix [[sxx, sxy], [sxy, syy]].
  const double tr = sxx + syy;
  const double det = sxx * syy - sxy * sxy;
  const double s = std::sqrt(det);
  const double t = std::sqrt(tr + 2.0 * s);
  // sqrt(A) = (A + s I) / t, so inverse = t (A + s I)^{-1}.
  const double a11 = sxx + s, a12 = sxy, a22 = syy + s;
  const double d = a11 * a22 - a12 * a12;
  const double i11 = t * a22 / d, i12 = -t * a12 / d, i22 = t * a11 / d;
  double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const FloatPoint p = curve.at(i) - c;
    const FloatPoint q{i11 * p.x + i12 * p.y, i12 * p.x + i22 * p.y};
    lo = std::min(lo, norm(q));
    hi = std::max(hi, norm(q));
  }
  return hi / lo;
}

/// Applies x -> M x + shift to every sample.
inline FrontCurve linear_image(const FrontCurve& curve, double m11, double m12, double m21, double m22,
                               FloatPoint shift = {}) {
  std::vector<FloatPoint> pts;
  pts.reserve(curve.size());
  for (const auto& p : curve.points()) {
    pts.push_back({m11 * p.x + m12 * p.y + shift.x, m21 * p.x + m22 * p.y + shift.y});
  }
  return FrontCurve(std::move(pts), curve.elapsed_time());
}

}  // namespace onionflow
