#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

#include "onionflow/grid_peeling.hpp"
#include "onionflow/quadrant_peeling.hpp"
#include "oracles.hpp"

using namespace onionflow;

namespace {

std::set<GridPoint> vertex_set(const GridChain& c) { return {c.vertices.begin(), c.vertices.end()}; }

/// Layers by repeated brute-force hulls of the explicit point list.
std::vector<std::set<GridPoint>> brute_force_layers(std::vector<GridPoint> pts) {
  std::vector<std::set<GridPoint>> layers;
  while (!pts.empty()) {
    auto layer = oracle::brute_force_hull(pts);
    std::erase_if(pts, [&](const GridPoint& p) { return layer.count(p) > 0; });
    layers.push_back(std::move(layer));
  }
  return layers;
}

std::vector<std::set<GridPoint>> library_layers(const RowIntervalSet& set) {
  std::vector<std::set<GridPoint>> layers;
  peel_all(set, [&](const LayerRecord& r) { layers.push_back(vertex_set(r.vertices)); });
  return layers;
}

}  // namespace

TEST(RowIntervalSet, FromPointsAndContains) {
  const std::vector<GridPoint> ok{{1, 0}, {2, 0}, {0, 1}, {1, 1}, {2, 1}, {3, 1}};
  const auto set = RowIntervalSet::from_points(ok);
  EXPECT_EQ(set.point_count(), 6);
  EXPECT_TRUE(set.contains({3, 1}));
  EXPECT_FALSE(set.contains({0, 0}));
  const std::vector<GridPoint> gap{{0, 0}, {2, 0}};
  EXPECT_THROW(RowIntervalSet::from_points(gap), Error);
}

TEST(RowIntervalSet, RemoveExtremeOnly) {
  auto set = grid_rectangle(3, 1);
  EXPECT_THROW(set.remove_extreme({1, 0}), Error);
  set.remove_extreme({0, 0});
  set.remove_extreme({2, 0});
  set.remove_extreme({1, 0});
  set.trim();
  EXPECT_TRUE(set.empty());
  EXPECT_TRUE(set.rows().empty());
}

TEST(Rasterize, SmallExamples) {
  const auto sq = rasterize(region_r2(), 2);
  EXPECT_EQ(sq.point_count(), 9);
  ASSERT_EQ(sq.rows().size(), 3u);
  for (const auto& row : sq.rows()) EXPECT_EQ(row, (RowInterval{0, 2}));
  const auto disk = rasterize(region_r5(), 2);
  EXPECT_EQ(disk.point_count(), 5);
  for (const GridPoint p : {GridPoint{1, 1}, GridPoint{0, 1}, GridPoint{2, 1}, GridPoint{1, 0}, GridPoint{1, 2}}) {
    EXPECT_TRUE(disk.contains(p));
  }
}

TEST(Rasterize, TriangleCountMatchesArea) {
  const auto set = rasterize(region_r3(), 1000);
  const double area = 0.5 * std::abs(1.0 * 1.0 - 0.4 * 0.75);
  EXPECT_NEAR(static_cast<double>(set.point_count()) / 1e6, area, 0.005 * area);
}

TEST(Rasterize, EmptyIntersectionIsEmptySet) {
  const Region tiny = Region::square("tiny", {0.1, 0.1}, 0.2);
  EXPECT_TRUE(rasterize(tiny, 2).empty());
}

TEST(PeelStep, ThreeByThree) {
  auto [after1, l1] = peel_step(grid_square(3));
  EXPECT_EQ(vertex_set(l1.vertices), (std::set<GridPoint>{{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
  EXPECT_EQ(after1.point_count(), 5);
  EXPECT_EQ(l1.remaining_points, 5);
  auto [after2, l2] = peel_step(after1);
  EXPECT_EQ(vertex_set(l2.vertices), (std::set<GridPoint>{{1, 0}, {2, 1}, {1, 2}, {0, 1}}));
  EXPECT_EQ(after2.point_count(), 1);
  auto [after3, l3] = peel_step(after2);
  EXPECT_EQ(l3.vertex_count, 1);
  EXPECT_TRUE(after3.empty());
  EXPECT_THROW(peel_step(after3), Error);
}

TEST(PeelUntilFraction, Examples) {
  EXPECT_EQ(peel_until_fraction(grid_square(3), 0.5).iterations, 2);
  EXPECT_EQ(peel_until_fraction(grid_square(3), 0.5).remaining.point_count(), 1);
  EXPECT_EQ(peel_until_fraction(grid_square(10), 0.999).iterations, 1);
  EXPECT_THROW(peel_until_fraction(grid_square(3), 1.0), Error);
}

TEST(PeelUntilFraction, AgreesWithThroughFractions) {
  const auto set = rasterize(region_r3(), 120);
  const std::vector<double> fractions{0.9, 0.8, 0.6};
  const auto all = peel_through_fractions(set, fractions);
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    const auto one = peel_until_fraction(set, fractions[i]);
    EXPECT_EQ(one.iterations, all[i].iterations);
    EXPECT_EQ(one.remaining, all[i].remaining);
  }
}

TEST(LayerCount, Examples) {
  EXPECT_EQ(layer_count(grid_square(1)), 1);
  EXPECT_EQ(layer_count(grid_square(2)), 1);
  EXPECT_EQ(layer_count(grid_square(3)), 3);
}

TEST(HullChain, Examples) {
  EXPECT_EQ(vertex_set(hull_chain(grid_square(5))), (std::set<GridPoint>{{0, 0}, {4, 0}, {4, 4}, {0, 4}}));
  EXPECT_EQ(vertex_set(hull_chain(grid_rectangle(7, 1))), (std::set<GridPoint>{{0, 0}, {6, 0}}));
  const auto disk = rasterize(region_r5(), 57);
  const auto pts = disk.points();
  EXPECT_EQ(hull_chain(disk), canonical(convex_hull(pts)));
}

TEST(Peeling, MatchesBruteForceLayers) {
  EXPECT_EQ(library_layers(rasterize(region_r5(), 10)), brute_force_layers(rasterize(region_r5(), 10).points()));
  EXPECT_EQ(library_layers(rasterize(region_r3(), 16)), brute_force_layers(rasterize(region_r3(), 16).points()));
  EXPECT_EQ(library_layers(grid_rectangle(9, 5)), brute_force_layers(grid_rectangle(9, 5).points()));
}

TEST(Peeling, RecordInvariants) {
  auto set = rasterize(region_r4(), 80);
  std::int64_t remaining = set.point_count();
  peel_all(set, [&](const LayerRecord& r) {
    EXPECT_EQ(r.vertex_count, static_cast<std::int64_t>(r.vertices.size()));
    EXPECT_GT(r.vertex_count, 0);
    EXPECT_EQ(r.remaining_points, remaining - r.vertex_count);
    remaining = r.remaining_points;
  });
  EXPECT_EQ(remaining, 0);
}

TEST(Peeling, VerticesAreRowExtremes) {
  auto set = rasterize(region_r1(), 60);
  while (!set.empty()) {
    const auto before = set;
    const auto record = peel_in_place(set, 0);
    for (const auto& v : record.vertices.vertices) {
      const auto* row = before.row_at(v.y);
      ASSERT_NE(row, nullptr);
      EXPECT_TRUE(v.x == row->x_min || v.x == row->x_max);
    }
  }
}

TEST(Peeling, CommutesWithUnimodularMaps) {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> small(-3, 3);
  const auto base = rasterize(region_r5(), 40);
  int checked = 0;
  while (checked < 5) {
    const std::int64_t a = small(rng), b = small(rng), c = small(rng), d = small(rng);
    if (std::abs(a * d - b * c) != 1) continue;
    const UnimodularMap m(a, b, c, d);
    const auto mapped = transform(base, m);
    const auto lhs = library_layers(mapped);
    auto rhs = library_layers(base);
    for (auto& layer : rhs) {
      std::set<GridPoint> image;
      for (const auto& p : layer) image.insert(m.apply(p));
      layer = std::move(image);
    }
    EXPECT_EQ(lhs, rhs);
    ++checked;
  }
}

TEST(Peeling, SquareScalingBand) {
  std::vector<double> ratios;
  for (const std::int64_t m : {64, 128, 256}) {
    ratios.push_back(static_cast<double>(layer_count(grid_square(m))) / std::pow(m, 4.0 / 3.0));
  }
  for (const double r : ratios) EXPECT_NEAR(r / ratios.back(), 1.0, 0.15);
}

TEST(Peeling, RectangleScalingBand) {
  std::vector<double> ratios;
  for (const auto& [w, h] : {std::pair<std::int64_t, std::int64_t>{64, 256}, {128, 512}, {256, 1024}}) {
    ratios.push_back(static_cast<double>(layer_count(grid_rectangle(w, h))) /
                     std::pow(static_cast<double>(w) * static_cast<double>(h), 2.0 / 3.0));
  }
  for (const double r : ratios) EXPECT_NEAR(r / ratios.back(), 1.0, 0.2);
}

TEST(Peeling, SquareCornerBehavesLikeQuadrant) {
  // While the four corner regions stay apart, each corner of a large square
  // peels exactly like N^2.
  const std::int64_t n = 150;
  const std::int64_t w = 2 * n + 2;
  auto set = grid_square(w);
  const auto quadrant = quadrant_run(n);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto record = peel_in_place(set, i + 1);
    ASSERT_EQ(record.vertex_count, 4 * quadrant.layer_sizes[static_cast<std::size_t>(i)]) << "layer " << i + 1;
  }
  for (std::int64_t x = 0; x <= quadrant.x_end(); ++x) {
    std::int64_t removed = 0;
    while (!set.contains({x, removed})) ++removed;
    EXPECT_EQ(removed, quadrant.column(x)) << "column " << x;
  }
}

TEST(Transform, ImageOfSet) {
  const auto set = grid_rectangle(3, 2);
  const auto image = transform(set, UnimodularMap(1, 1, 0, 1));
  EXPECT_EQ(image.point_count(), 6);
  EXPECT_TRUE(image.contains({2, 1}));
  EXPECT_TRUE(image.contains({3, 1}));
  EXPECT_FALSE(image.contains({0, 1}));
}
