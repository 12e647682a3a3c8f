#pragma once

// Peeling-versus-flow experiments: run grid peeling of n*R and the affine
// flow of the boundary of R side by side, stop both at the same fractions
// (point count for peeling, area for the flow) and compare the two curves.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <ostream>
#include <span>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "onionflow/acsf.hpp"
#include "onionflow/error.hpp"
#include "onionflow/geometry.hpp"
#include "onionflow/grid_peeling.hpp"
#include "onionflow/io.hpp"
#include "onionflow/quadrant_peeling.hpp"
#include "onionflow/region.hpp"

namespace onionflow {

/// c = m / (t n^{4/3}), the constant in m = c t n^{4/3}.
inline double estimate_c(std::int64_t m, double t, std::int64_t n) {
  if (!(t > 0.0)) throw Error(ErrorCode::kInvalidArgument, "flow time must be positive");
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  return static_cast<double>(m) / (t * std::pow(static_cast<double>(n), 4.0 / 3.0));
}

struct ComparisonRecord {
  std::string region;
  std::int64_t n = 0;
  double fraction = 0.0;
  std::int64_t m_layers = 0;
  double t_flow = 0.0;
  double hausdorff = 0.0;
  double initial_hausdorff = 0.0;
  double c_est = 0.0;
};

/// Flow resolution used for the reference curves; finer than the
/// interactive defaults.
struct ReferenceParams {
  /// 4096 samples would need c_step well below 0.02 to stay stable; 2048 at
  /// 0.01 is both stable and within about 1% of the converged times.
  std::size_t samples = 2048;
  StepParams step{0.01, 0.5};
  /// Sample count of the exact boundary used for the initial distance.
  std::size_t boundary_samples = 16384;
};

/// Flow snapshots of one region at a list of area fractions.
struct FlowReference {
  std::string region;
  std::vector<double> fractions;
  std::vector<double> times;
  std::vector<FloatChain> curves;
  FloatChain boundary;
};

namespace detail {

inline void check_fractions(std::span<const double> fractions) {
  if (fractions.empty()) throw Error(ErrorCode::kInvalidArgument, "no fractions given");
  double previous = 1.0;
  for (const double f : fractions) {
    if (!(f > 0.0 && f < 1.0) || f > previous) {
      throw Error(ErrorCode::kInvalidArgument, "fractions must be decreasing within (0, 1)");
    }
    previous = f;
  }
}

inline FloatChain circle_chain(FloatPoint center, double radius, std::size_t m) {
  FloatChain chain;
  chain.vertices.reserve(m);
  for (std::size_t k = 0; k < m; ++k) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(m);
    chain.vertices.push_back({center.x + radius * std::cos(a), center.y + radius * std::sin(a)});
  }
  return chain;
}

}  // namespace detail

/// Disks use the closed-form shrinking circle; everything else is simulated.
inline FlowReference flow_reference(const Region& region, std::span<const double> fractions,
                                    const ReferenceParams& params = {}) {
  detail::check_fractions(fractions);
  FlowReference ref;
  ref.region = region.name();
  ref.fractions.assign(fractions.begin(), fractions.end());
  ref.boundary = sample_region_boundary(region, params.boundary_samples).as_chain();
  if (const auto* disk = std::get_if<DiskShape>(&region.shape())) {
    for (const double f : fractions) {
      const double t = circle_time_to_area_fraction(disk->radius, f);
      ref.times.push_back(t);
      ref.curves.push_back(detail::circle_chain(disk->center, circle_radius(disk->radius, t), params.samples));
    }
    return ref;
  }
  const auto runs = run_through_area_fractions(sample_region_boundary(region, params.samples), fractions, params.step);
  for (const auto& run : runs) {
    ref.times.push_back(run.t);
    ref.curves.push_back(run.curve.as_chain());
  }
  return ref;
}

/// Peels n*R through the reference's fractions and compares each remaining
/// hull (scaled back by 1/n) with the flow curve at the same fraction.
inline std::vector<ComparisonRecord> compare_experiment(const Region& region, std::int64_t n,
                                                        const FlowReference& reference) {
  if (n < 1) throw Error(ErrorCode::kInvalidArgument, "n must be >= 1");
  const auto set = rasterize(region, n);
  const double scale = 1.0 / static_cast<double>(n);
  const double initial = hausdorff_distance(to_float(hull_chain(set), scale), reference.boundary);
  const auto peeled = peel_through_fractions(set, reference.fractions);
  std::vector<ComparisonRecord> out;
  for (std::size_t i = 0; i < peeled.size(); ++i) {
    const auto& remaining = peeled[i].remaining;
    if (remaining.empty()) throw Error(ErrorCode::kDegenerateInput, "peeling emptied the set");
    const auto chain = to_float(hull_chain(remaining), scale);
    ComparisonRecord r;
    r.region = region.name();
    r.n = n;
    r.fraction = reference.fractions[i];
    r.m_layers = peeled[i].iterations;
    r.t_flow = reference.times[i];
    r.hausdorff = hausdorff_distance(chain, reference.curves[i]);
    r.initial_hausdorff = initial;
    r.c_est = estimate_c(r.m_layers, r.t_flow, n);
    out.push_back(std::move(r));
  }
  return out;
}

inline std::vector<ComparisonRecord> compare_experiment(const Region& region, std::int64_t n,
                                                        std::span<const double> fractions,
                                                        const ReferenceParams& params = {}) {
  return compare_experiment(region, n, flow_reference(region, fractions, params));
}

/// Worker count for the sweeps: ONIONFLOW_THREADS if set, otherwise the
/// hardware concurrency.
inline unsigned harness_threads() {
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ONIONFLOW_THREADS")) {
    const long v = std::strtol(env, nullptr, 10);
    if (v >= 1) threads = static_cast<unsigned>(v);
  }
  return threads;
}

namespace detail {

/// Runs jobs[0..count) on up to `threads` workers; the first exception is
/// rethrown after all workers stop.
template <class Job>
void run_jobs(std::size_t count, unsigned threads, Job job) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  const auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = count;
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace detail

/// Every (region, n) cell of a sweep. Flow references are computed once per
/// region; records come back sorted by (region, n, decreasing fraction)
/// regardless of scheduling.
inline std::vector<ComparisonRecord> compare_sweep(std::span<const Region> regions, std::span<const std::int64_t> ns,
                                                   std::span<const double> fractions,
                                                   const ReferenceParams& params = {},
                                                   unsigned threads = harness_threads()) {
  std::vector<FlowReference> refs(regions.size());
  detail::run_jobs(regions.size(), threads, [&](std::size_t i) { refs[i] = flow_reference(regions[i], fractions, params); });
  std::vector<std::vector<ComparisonRecord>> cells(regions.size() * ns.size());
  detail::run_jobs(cells.size(), threads, [&](std::size_t k) {
    const std::size_t i = k / ns.size();
    cells[k] = compare_experiment(regions[i], ns[k % ns.size()], refs[i]);
  });
  std::vector<ComparisonRecord> out;
  for (auto& cell : cells) out.insert(out.end(), cell.begin(), cell.end());
  std::stable_sort(out.begin(), out.end(), [](const ComparisonRecord& a, const ComparisonRecord& b) {
    return std::tie(a.region, a.n, b.fraction) < std::tie(b.region, b.n, a.fraction);
  });
  return out;
}

inline void write_comparison_csv(std::ostream& out, std::span<const ComparisonRecord> records) {
  CsvWriter csv(out, {"region", "n", "fraction", "m_layers", "t_flow", "hausdorff", "initial_hausdorff", "c_est"});
  for (const auto& r : records) {
    csv.row(r.region, r.n, r.fraction, r.m_layers, r.t_flow, r.hausdorff, r.initial_hausdorff, r.c_est);
  }
}

struct QuadrantRow {
  std::int64_t n = 0;
  double alpha = 0.0;
  double k = 0.0;
  std::int64_t x_alpha = 0;
  double ratio = 0.0;
  bool saturated = false;
  double c_est = 0.0;
};

/// One incremental quadrant run, sampled at each requested n (any order,
/// duplicates ignored); rows sorted by (n, alpha).
inline std::vector<QuadrantRow> quadrant_experiment(std::span<const std::int64_t> n_values,
                                                    std::span<const double> alphas) {
  std::vector<std::int64_t> ns(n_values.begin(), n_values.end());
  std::sort(ns.begin(), ns.end());
  ns.erase(std::unique(ns.begin(), ns.end()), ns.end());
  std::vector<double> as(alphas.begin(), alphas.end());
  std::sort(as.begin(), as.end());
  as.erase(std::unique(as.begin(), as.end()), as.end());
  if (ns.empty()) return {};
  if (ns.front() < 1) throw Error(ErrorCode::kInvalidArgument, "iteration counts must be >= 1");
  if (ns.back() > kMaxQuadrantIterations) {
    throw Error(ErrorCode::kResourceLimit, "quadrant runs are capped at 10^6 iterations");
  }
  QuadrantProfile profile;
  std::vector<QuadrantRow> rows;
  for (const auto n : ns) {
    while (profile.n < n) advance(profile);
    const double k = k_n(profile);
    const double c = estimate_c_quadrant(k, n);
    for (const double alpha : as) {
      const auto fit = hyperbola_fit_extent(profile, alpha);
      rows.push_back({n, alpha, k, fit.x_alpha, fit.ratio, fit.saturated, c});
    }
  }
  return rows;
}

inline void write_quadrant_csv(std::ostream& out, std::span<const QuadrantRow> rows) {
  CsvWriter csv(out, {"n", "alpha", "K_n", "x_alpha", "ratio", "saturated", "c_est"});
  for (const auto& r : rows) csv.row(r.n, r.alpha, r.k, r.x_alpha, r.ratio, r.saturated, r.c_est);
}

}  // namespace onionflow
