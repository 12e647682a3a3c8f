#pragma once

// Convex-layer decomposition ("peeling") of finite lattice sets that are
// stored one [x_min, x_max] interval per row. Hull vertices of such a set are
// always row extremes, so each layer is found from at most two points per row
// and removing it keeps the row-interval form.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "onionflow/error.hpp"
#include "onionflow/geometry.hpp"
#include "onionflow/region.hpp"

namespace onionflow {

struct RowInterval {
  std::int64_t x_min = 0;
  std::int64_t x_max = -1;

  bool empty() const { return x_min > x_max; }
  std::int64_t size() const { return empty() ? 0 : x_max - x_min + 1; }

  friend bool operator==(const RowInterval&, const RowInterval&) = default;
};

class RowIntervalSet {
 public:
  RowIntervalSet() = default;

  /// Row i holds the points with y = y_base + i.
  RowIntervalSet(std::int64_t y_base, std::vector<RowInterval> rows)
      : y_base_(y_base), rows_(std::move(rows)) {
    for (auto& row : rows_) {
      if (row.empty()) row = RowInterval{};
      validate_grid_point({row.x_min, y_base_});
      validate_grid_point({row.x_max, y_base_ + static_cast<std::int64_t>(rows_.size())});
      count_ += row.size();
    }
    trim();
  }

  /// Builds the set from arbitrary points; every row must be contiguous.
  static RowIntervalSet from_points(std::span<const GridPoint> points) {
    if (points.empty()) return {};
    std::map<std::int64_t, std::vector<std::int64_t>> by_row;
    for (const auto& p : points) {
      validate_grid_point(p);
      by_row[p.y].push_back(p.x);
    }
    const std::int64_t y_lo = by_row.begin()->first;
    const std::int64_t y_hi = by_row.rbegin()->first;
    std::vector<RowInterval> rows(static_cast<std::size_t>(y_hi - y_lo + 1));
    for (auto& [y, xs] : by_row) {
      std::sort(xs.begin(), xs.end());
      xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
      if (xs.back() - xs.front() + 1 != static_cast<std::int64_t>(xs.size())) {
        throw Error(ErrorCode::kInvalidArgument, "row y=" + std::to_string(y) + " is not an interval");
      }
      rows[static_cast<std::size_t>(y - y_lo)] = {xs.front(), xs.back()};
    }
    return {y_lo, std::move(rows)};
  }

  std::int64_t y_base() const { return y_base_; }
  const std::vector<RowInterval>& rows() const { return rows_; }
  std::int64_t point_count() const { return count_; }
  bool empty() const { return count_ == 0; }

  const RowInterval* row_at(std::int64_t y) const {
    if (y < y_base_ || y >= y_base_ + static_cast<std::int64_t>(rows_.size())) return nullptr;
    return &rows_[static_cast<std::size_t>(y - y_base_)];
  }

  bool contains(GridPoint p) const {
    const auto* row = row_at(p.y);
    return row != nullptr && !row->empty() && row->x_min <= p.x && p.x <= row->x_max;
  }

  /// Leftmost and rightmost point of every nonempty row, sorted by (y, x).
  std::vector<GridPoint> row_extremes() const {
    std::vector<GridPoint> out;
    out.reserve(2 * rows_.size());
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const auto& row = rows_[i];
      if (row.empty()) continue;
      const std::int64_t y = y_base_ + static_cast<std::int64_t>(i);
      out.push_back({row.x_min, y});
      if (row.x_max != row.x_min) out.push_back({row.x_max, y});
    }
    return out;
  }

  std::vector<GridPoint> points() const {
    std::vector<GridPoint> out;
    out.reserve(static_cast<std::size_t>(count_));
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const std::int64_t y = y_base_ + static_cast<std::int64_t>(i);
      for (std::int64_t x = rows_[i].x_min; x <= rows_[i].x_max; ++x) out.push_back({x, y});
    }
    return out;
  }

  /// Removes p, which must be the leftmost or rightmost point of its row.
  void remove_extreme(GridPoint p) {
    const auto* cell = row_at(p.y);
    if (cell == nullptr || cell->empty()) {
      throw Error(ErrorCode::kInvalidArgument, "point is not in the set");
    }
    auto& row = rows_[static_cast<std::size_t>(p.y - y_base_)];
    if (p.x == row.x_min) {
      ++row.x_min;
    } else if (p.x == row.x_max) {
      --row.x_max;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "point is not a row extreme");
    }
    if (row.empty()) row = RowInterval{};
    --count_;
  }

  /// Drops empty rows at both ends.
  void trim() {
    std::size_t lo = 0;
    while (lo < rows_.size() && rows_[lo].empty()) ++lo;
    std::size_t hi = rows_.size();
    while (hi > lo && rows_[hi - 1].empty()) --hi;
    if (lo == 0 && hi == rows_.size()) return;
    rows_ = std::vector<RowInterval>(rows_.begin() + static_cast<std::ptrdiff_t>(lo),
                                     rows_.begin() + static_cast<std::ptrdiff_t>(hi));
    y_base_ = rows_.empty() ? 0 : y_base_ + static_cast<std::int64_t>(lo);
  }

  friend bool operator==(const RowIntervalSet&, const RowIntervalSet&) = default;

 private:
  std::int64_t y_base_ = 0;
  std::vector<RowInterval> rows_;
  std::int64_t count_ = 0;
};

/// One iteration of peeling.
struct LayerRecord {
  std::int64_t index = 0;
  GridChain vertices;
  std::int64_t vertex_count = 0;
  std::int64_t remaining_points = 0;
};

/// Lattice points within this distance (in lattice units) outside a region
/// boundary still count as on the boundary; absorbs floating-point noise.
inline constexpr double kRasterSlack = 1e-9;

/// Lattice points p with p/n in the closed region.
inline RowIntervalSet rasterize(const Region& region, std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "grid density n must be >= 1");
  const double scale = static_cast<double>(n);
  const auto [lo_y, hi_y] = region.y_range();
  const auto y_first = static_cast<std::int64_t>(std::ceil(lo_y * scale - kRasterSlack));
  const auto y_last = static_cast<std::int64_t>(std::floor(hi_y * scale + kRasterSlack));
  std::vector<RowInterval> rows;
  if (y_last >= y_first) rows.reserve(static_cast<std::size_t>(y_last - y_first + 1));
  for (std::int64_t y = y_first; y <= y_last; ++y) {
    const auto span = region.row_span(static_cast<double>(y), scale, kRasterSlack);
    if (!span) {
      rows.push_back({});
      continue;
    }
    rows.push_back({static_cast<std::int64_t>(std::ceil(span->first - kRasterSlack)),
                    static_cast<std::int64_t>(std::floor(span->second + kRasterSlack))});
  }
  return {y_first, std::move(rows)};
}

/// Lattice rectangle {0..width-1} x {0..height-1}.
inline RowIntervalSet grid_rectangle(std::int64_t width, std::int64_t height) {
  if (width < 1 || height < 1) throw Error(ErrorCode::kInvalidArgument, "grid sides must be >= 1");
  return {0, std::vector<RowInterval>(static_cast<std::size_t>(height), RowInterval{0, width - 1})};
}

inline RowIntervalSet grid_square(std::int64_t side) { return grid_rectangle(side, side); }

/// Rotates a chain so its lexicographically smallest vertex comes first.
template <class Point>
ConvexChain<Point> canonical(ConvexChain<Point> chain) {
  auto smallest = std::min_element(chain.vertices.begin(), chain.vertices.end(),
                                   [](const Point& a, const Point& b) { return detail::lex_less(a, b); });
  std::rotate(chain.vertices.begin(), smallest, chain.vertices.end());
  return chain;
}

/// Current convex hull, from the row extremes only.
inline GridChain hull_chain(const RowIntervalSet& set) {
  if (set.empty()) throw Error(ErrorCode::kEmptyInput, "hull of an empty set");
  const auto extremes = set.row_extremes();
  return canonical(GridChain{detail::monotone_chain<GridPoint>(extremes)});
}

/// Peels `set` in place; `index` labels the resulting record.
inline LayerRecord peel_in_place(RowIntervalSet& set, std::int64_t index) {
  if (set.empty()) throw Error(ErrorCode::kEmptyInput, "peeling an empty set");
  const auto extremes = set.row_extremes();
  GridChain layer{detail::monotone_chain<GridPoint>(extremes)};
  for (const auto& v : layer.vertices) set.remove_extreme(v);
  set.trim();
  const auto count = static_cast<std::int64_t>(layer.size());
  return {index, canonical(std::move(layer)), count, set.point_count()};
}

inline std::pair<RowIntervalSet, LayerRecord> peel_step(RowIntervalSet set) {
  auto record = peel_in_place(set, 1);
  return {std::move(set), std::move(record)};
}

/// Peels to exhaustion, handing every layer to `on_layer`. Returns the
/// number of layers.
inline std::int64_t peel_all(RowIntervalSet set, const std::function<void(const LayerRecord&)>& on_layer) {
  std::int64_t index = 0;
  while (!set.empty()) {
    const auto record = peel_in_place(set, ++index);
    if (on_layer) on_layer(record);
  }
  return index;
}

inline std::int64_t layer_count(RowIntervalSet set) {
  if (set.empty()) throw Error(ErrorCode::kEmptyInput, "layer_count of an empty set");
  return peel_all(std::move(set), {});
}

struct PeelResult {
  RowIntervalSet remaining;
  std::int64_t iterations = 0;
};

/// Peels until at most `fraction` of the starting points remain.
inline PeelResult peel_until_fraction(RowIntervalSet set, double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "fraction must lie in (0, 1)");
  }
  const double target = fraction * static_cast<double>(set.point_count());
  std::int64_t iterations = 0;
  while (!set.empty() && static_cast<double>(set.point_count()) > target) {
    peel_in_place(set, ++iterations);
  }
  return {std::move(set), iterations};
}

/// Peels through several decreasing point-count fractions in one pass and
/// reports the iteration count and the remaining set at each of them.
inline std::vector<PeelResult> peel_through_fractions(RowIntervalSet set, std::span<const double> fractions) {
  std::vector<PeelResult> out;
  const double initial = static_cast<double>(set.point_count());
  std::int64_t iterations = 0;
  double previous = 1.0;
  for (const double fraction : fractions) {
    if (!(fraction > 0.0 && fraction < 1.0) || fraction > previous) {
      throw Error(ErrorCode::kInvalidArgument, "fractions must be decreasing within (0, 1)");
    }
    previous = fraction;
    while (!set.empty() && static_cast<double>(set.point_count()) > fraction * initial) {
      peel_in_place(set, ++iterations);
    }
    out.push_back({set, iterations});
  }
  return out;
}

/// The lattice image of a set under a unimodular map.
inline RowIntervalSet transform(const RowIntervalSet& set, const UnimodularMap& map) {
  auto pts = set.points();
  for (auto& p : pts) p = map.apply(p);
  return RowIntervalSet::from_points(pts);
}

}  // namespace onionflow
