#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "onionflow/quadrant_peeling.hpp"
#include "oracles.hpp"

using namespace onionflow;

namespace {

const std::vector<std::int64_t> kPrefix{1, 2, 2, 3, 4, 4, 3, 4, 6, 6, 5, 4, 6, 6, 8, 7,
                                        6, 6, 6, 8, 9, 10, 10, 8, 8, 7, 8, 10, 10, 12, 13, 12};

/// Layer size by brute force: strict hull vertices of the staircase points
/// plus three far points standing in for the unbounded directions.
std::int64_t brute_layer(const std::vector<std::int64_t>& a) {
  const auto far = 4 * static_cast<std::int64_t>(a.size()) + a.front() + 4;
  std::vector<GridPoint> pts{{0, far}, {far, 0}, {far, far}};
  for (std::size_t x = 0; x < a.size(); ++x) pts.push_back({static_cast<std::int64_t>(x), a[x]});
  return static_cast<std::int64_t>(oracle::brute_force_hull(pts).size()) - 3;
}

}  // namespace

TEST(QuadrantPeel, FirstSteps) {
  QuadrantProfile p;
  p = quadrant_peel_step(p);
  EXPECT_EQ(p.layer_sizes, (std::vector<std::int64_t>{1}));
  EXPECT_EQ(p.a[0], 1);
  p = quadrant_peel_step(p);
  EXPECT_EQ(p.layer_sizes.back(), 2);
  EXPECT_EQ(staircase_hull(p).vertices, (std::vector<GridPoint>{{0, 2}, {2, 0}}));
  // (1, 1) is collinear, so only the two ends are vertices of layer 3.
  p = quadrant_peel_step(p);
  EXPECT_EQ(p.layer_sizes.back(), 2);
  EXPECT_EQ(p.a, (std::vector<std::int64_t>{3, 1, 1, 0}));
}

TEST(QuadrantPeel, StaircaseHullDropsCollinear) {
  QuadrantProfile p;
  p.a = {2, 1, 0};
  EXPECT_EQ(staircase_hull(p).vertices, (std::vector<GridPoint>{{0, 2}, {2, 0}}));
}

TEST(QuadrantRun, SequencePrefix) {
  const auto p = quadrant_run(32);
  EXPECT_EQ(p.layer_sizes, kPrefix);
  EXPECT_EQ(quadrant_run(4).s, 8);
}

TEST(QuadrantRun, MatchesDirectionalOracle) {
  QuadrantProfile p;
  for (int i = 0; i < 60; ++i) {
    const auto expected = brute_layer(p.a);
    advance(p);
    EXPECT_EQ(p.layer_sizes.back(), expected) << "iteration " << i + 1;
  }
}

TEST(QuadrantRun, ProfileInvariants) {
  QuadrantProfile p;
  std::vector<std::int64_t> previous = p.a;
  for (std::int64_t n = 1; n <= 500; ++n) {
    advance(p);
    ASSERT_EQ(p.n, n);
    EXPECT_EQ(p.a[0], n);
    EXPECT_TRUE(std::is_sorted(p.a.rbegin(), p.a.rend()));
    EXPECT_EQ(p.a.back(), 0);
    if (static_cast<std::int64_t>(p.a.size()) > n) {
      EXPECT_EQ(p.a[static_cast<std::size_t>(n - 1)], 1);
      EXPECT_EQ(p.column(n), 0);
    }
    for (std::size_t x = 0; x < p.a.size(); ++x) {
      const std::int64_t before = x < previous.size() ? previous[x] : 0;
      EXPECT_TRUE(p.a[x] == before || p.a[x] == before + 1);
    }
    previous = p.a;
    // Diagonal symmetry: the profile is its own conjugate.
    auto conj = conjugate_profile(p.a);
    auto a = p.a;
    while (!a.empty() && a.back() == 0) a.pop_back();
    while (!conj.empty() && conj.back() == 0) conj.pop_back();
    EXPECT_EQ(conj, a) << "n = " << n;
  }
  std::int64_t total = 0;
  for (const auto v : p.layer_sizes) total += v;
  EXPECT_EQ(total, p.s);
}

TEST(QuadrantRun, ResourceGuard) {
  EXPECT_THROW(quadrant_run(0), Error);
  try {
    quadrant_run(kMaxQuadrantIterations + 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kResourceLimit);
  }
}

TEST(KN, Examples) {
  EXPECT_DOUBLE_EQ(k_n(quadrant_run(1)), 0.5);
  // K_n from the chain equals the crossing read off the profile: the last
  // column x with a[x] > x bounds K_n.
  const auto p = quadrant_run(1000);
  const double k = k_n(p);
  std::int64_t x = 0;
  while (p.column(x + 1) > x + 1) ++x;
  EXPECT_GT(k, static_cast<double>(x));
  EXPECT_LE(k, static_cast<double>(x + 1));
}

TEST(KN, ArmsAgree) {
  const auto p = quadrant_run(777);
  const auto chain = staircase_hull(p);
  GridChain mirrored;
  for (auto it = chain.vertices.rbegin(); it != chain.vertices.rend(); ++it) mirrored.vertices.push_back({it->y, it->x});
  EXPECT_EQ(mirrored, chain);
  EXPECT_DOUBLE_EQ(diagonal_intersection(mirrored), k_n(p));
}

TEST(KN, GrowthBand) {
  QuadrantProfile p;
  std::vector<double> ratios;
  for (const std::int64_t n : {1000, 2000, 4000, 8000}) {
    while (p.n < n) advance(p);
    ratios.push_back(k_n(p) / std::pow(static_cast<double>(n), 0.75));
  }
  for (const double r : ratios) EXPECT_NEAR(r / ratios.back(), 1.0, 0.1);
}

TEST(HyperbolaFit, SyntheticProfileSaturates) {
  // a[x] = round(K^2 / x), cut off where K^2/x = 5 so that rounding stays
  // well inside a 20% band.
  const double k = 100.0;
  QuadrantProfile p;
  p.a.clear();
  const std::int64_t end = static_cast<std::int64_t>(k * k / 5.0);
  for (std::int64_t x = 0; x < end; ++x) {
    p.a.push_back(x == 0 ? static_cast<std::int64_t>(k * k) : std::llround(k * k / static_cast<double>(x)));
  }
  p.a.push_back(0);
  const auto fit = hyperbola_fit_extent(p, 0.2);
  EXPECT_NEAR(k_n(p), k, 1.0);
  EXPECT_TRUE(fit.saturated);
  EXPECT_EQ(fit.x_alpha, end);
}

TEST(HyperbolaFit, AlphaMonotoneAndRatioAboveOne) {
  const auto p = quadrant_run(10000);
  std::int64_t previous = 0;
  for (const double alpha : {0.003, 0.01, 0.03, 0.1, 0.3}) {
    const auto fit = hyperbola_fit_extent(p, alpha);
    EXPECT_GE(fit.x_alpha, previous) << alpha;
    EXPECT_GT(fit.ratio, 1.0);
    previous = fit.x_alpha;
  }
  EXPECT_THROW(hyperbola_fit_extent(p, 0.0), Error);
  EXPECT_THROW(hyperbola_fit_extent(p, 1.0), Error);
}

TEST(HyperbolaFit, ColumnBound) {
  // a_x(n) <= c0 n^{3/2} / x with c0 fitted at n = 10^4.
  QuadrantProfile p;
  const auto bound = [](const QuadrantProfile& q) {
    double worst = 0.0;
    for (std::size_t x = 1; x < q.a.size(); ++x) {
      worst = std::max(worst, static_cast<double>(x) * static_cast<double>(q.a[x]) / std::pow(q.n, 1.5));
    }
    return worst;
  };
  std::vector<std::pair<std::int64_t, double>> values;
  for (const std::int64_t n : {1000, 3000, 10000}) {
    while (p.n < n) advance(p);
    values.emplace_back(n, bound(p));
  }
  const double c0 = values.back().second;
  for (const auto& [n, v] : values) EXPECT_LE(v, 1.25 * c0) << n;
}

TEST(EstimateCQuadrant, Examples) {
  EXPECT_DOUBLE_EQ(estimate_c_quadrant(2.0, 3), 1.0);
  EXPECT_NEAR(estimate_c_quadrant(2.0 * std::pow(1000.0 / 4.8, 0.75), 1000), 1.6, 1e-12);
  EXPECT_THROW(estimate_c_quadrant(0.0, 5), Error);
}

TEST(HyperbolaReference, Examples) {
  EXPECT_NEAR(hyperbola_y(3.0, 2.0), 2.0, 1e-14);
  const double t = 0.7;
  const double d = 2.0 * std::pow(t / 3.0, 0.75);
  EXPECT_NEAR(hyperbola_y(t, d), d, 1e-14);
  const auto chain = hyperbola_reference(1e-6, 0.1, 10.0);
  for (const auto& v : chain.vertices) EXPECT_LT(v.y, 1e-7);
  EXPECT_DOUBLE_EQ(chain.vertices.front().x, 0.1);
  EXPECT_DOUBLE_EQ(chain.vertices.back().x, 10.0);
  EXPECT_THROW(hyperbola_reference(0.0, 0.1, 1.0), Error);
}

TEST(LayerSizes, LogAndRootBounds) {
  // Constants fitted on n in [5000, 10000] keep holding up to 2 * 10^4.
  const auto p = quadrant_run(20000);
  double upper = 0.0, lower = 1e300;
  for (std::size_t i = 4999; i < 10000; ++i) {
    const double n = static_cast<double>(i + 1);
    upper = std::max(upper, static_cast<double>(p.layer_sizes[i]) / (std::sqrt(n) * std::log(n)));
    lower = std::min(lower, static_cast<double>(p.layer_sizes[i]) / std::log(n));
  }
  for (std::size_t i = 10000; i < 20000; ++i) {
    const double n = static_cast<double>(i + 1);
    EXPECT_LE(p.layer_sizes[i], 1.5 * upper * std::sqrt(n) * std::log(n)) << i + 1;
    EXPECT_GE(p.layer_sizes[i], 0.67 * lower * std::log(n)) << i + 1;
  }
}
