// onionflow: grid peeling and affine curve-shortening flow experiments.

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "onionflow/acsf.hpp"
#include "onionflow/error.hpp"
#include "onionflow/grid_peeling.hpp"
#include "onionflow/harness.hpp"
#include "onionflow/io.hpp"
#include "onionflow/quadrant_peeling.hpp"
#include "onionflow/region.hpp"
#include "onionflow/region_config.hpp"

namespace fs = std::filesystem;
using namespace onionflow;

namespace {

struct RegionSelection {
  std::vector<std::string> names;
  std::string file;
  int samples = 16384;
};

void add_region_options(CLI::App* cmd, RegionSelection& sel) {
  cmd->add_option("--region", sel.names, "built-in region (r1..r5, curve, square, triangle, half-disk, disk); "
                                         "with --regions-file, selects sections by name");
  cmd->add_option("--regions-file", sel.file, "region definitions file")->check(CLI::ExistingFile);
  cmd->add_option("--samples", sel.samples, "parameter samples for curve regions")->capture_default_str();
}

std::vector<Region> resolve_regions(const RegionSelection& sel) {
  if (sel.file.empty()) {
    if (sel.names.empty()) throw Error(ErrorCode::kInvalidArgument, "give --region or --regions-file");
    std::vector<Region> out;
    for (const auto& name : sel.names) out.push_back(builtin_region(name, sel.samples));
    return out;
  }
  std::ifstream in(sel.file);
  if (!in) throw Error(ErrorCode::kInvalidArgument, "cannot read " + sel.file);
  auto all = parse_regions(in);
  if (sel.names.empty()) return all;
  std::vector<Region> out;
  for (const auto& name : sel.names) {
    const auto it = std::find_if(all.begin(), all.end(), [&](const Region& r) { return r.name() == name; });
    if (it == all.end()) throw Error(ErrorCode::kInvalidArgument, "no region [" + name + "] in " + sel.file);
    out.push_back(*it);
  }
  return out;
}

std::vector<double> parse_fractions(const std::string& text) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(detail::parse_number(detail::trim_copy(item), "--fractions"));
  return out;
}

std::vector<FloatPoint> chain_points(const GridChain& chain, double scale = 1.0) {
  return to_float(chain, scale).vertices;
}

void write_svg(const fs::path& path, const SvgPlot& plot) {
  auto out = open_output(path);
  plot.write(out);
}

// ---------------------------------------------------------------------------

struct PeelSquareOptions {
  std::int64_t m = 16;
  std::string out = "out";
};

int run_peel_square(const PeelSquareOptions& o) {
  auto layers_out = open_output(fs::path(o.out) / "layers.csv");
  auto vertices_out = open_output(fs::path(o.out) / "layer_vertices.csv");
  CsvWriter layers(layers_out, {"layer", "vertex_count", "remaining_points"});
  CsvWriter vertices(vertices_out, {"layer", "x", "y"});
  SvgPlot plot;
  const auto count = peel_all(grid_square(o.m), [&](const LayerRecord& r) {
    layers.row(r.index, r.vertex_count, r.remaining_points);
    for (const auto& v : r.vertices.vertices) vertices.row(r.index, v.x, v.y);
    plot.add(chain_points(r.vertices), "black", true, 0.5);
  });
  write_svg(fs::path(o.out) / "layers.svg", plot);
  const double m = static_cast<double>(o.m);
  std::cout << "layers: " << count << '\n'
            << "layers / m^(4/3): " << format_double(static_cast<double>(count) / std::pow(m, 4.0 / 3.0)) << '\n';
  return 0;
}

struct PeelShapeOptions {
  RegionSelection regions;
  std::int64_t n = 200;
  std::int64_t every = 1;
  std::string out = "out";
};

int run_peel_shape(const PeelShapeOptions& o) {
  for (const auto& region : resolve_regions(o.regions)) {
    const auto set = rasterize(region, o.n);
    if (set.empty()) throw Error(ErrorCode::kEmptyInput, "region " + region.name() + " contains no lattice points");
    auto csv_out = open_output(fs::path(o.out) / (region.name() + "_layers.csv"));
    CsvWriter csv(csv_out, {"layer", "vertex_count", "remaining_points"});
    SvgPlot plot;
    const double scale = 1.0 / static_cast<double>(o.n);
    plot.add(sample_region_boundary(region, 4096).points(), "red", true, 1.0);
    const auto initial = set.point_count();
    const auto count = peel_all(set, [&](const LayerRecord& r) {
      csv.row(r.index, r.vertex_count, r.remaining_points);
      if ((r.index - 1) % o.every == 0) plot.add(chain_points(r.vertices, scale), "black", true, 0.5);
    });
    write_svg(fs::path(o.out) / (region.name() + "_layers.svg"), plot);
    std::cout << region.name() << ": points " << initial << ", layers " << count << '\n';
  }
  return 0;
}

struct PeelQuadrantOptions {
  std::int64_t n = 32;
  std::vector<double> alphas;
  std::string out = "out";
};

int run_peel_quadrant(const PeelQuadrantOptions& o) {
  if (o.n < 1 || o.n > kMaxQuadrantIterations) {
    throw Error(ErrorCode::kResourceLimit, "--n must lie in [1, 10^6]");
  }
  auto csv_out = open_output(fs::path(o.out) / "quadrant.csv");
  std::vector<std::string> header{"n", "layer_size", "s", "K_n"};
  for (const double a : o.alphas) header.push_back("x_alpha_" + format_double(a));
  CsvWriter csv(csv_out, header);
  QuadrantProfile profile;
  while (profile.n < o.n) {
    advance(profile);
    std::vector<std::string> row{std::to_string(profile.n), std::to_string(profile.layer_sizes.back()),
                                 std::to_string(profile.s), format_double(k_n(profile))};
    for (const double a : o.alphas) row.push_back(std::to_string(hyperbola_fit_extent(profile, a).x_alpha));
    csv.row_cells(row);
  }
  auto profile_out = open_output(fs::path(o.out) / "profile.txt");
  for (std::size_t x = 0; x < profile.a.size(); ++x) profile_out << x << ' ' << profile.a[x] << '\n';
  const double k = k_n(profile);
  std::cout << "s(n): " << profile.s << '\n'
            << "K_n: " << format_double(k) << '\n'
            << "c_est: " << format_double(estimate_c_quadrant(k, o.n)) << '\n';
  return 0;
}

struct AcsfOptions {
  RegionSelection regions;
  std::optional<double> r0;
  std::size_t m = 1024;
  StepParams step;
  double stop = 0.75;
  int snapshots = 10;
  std::string out = "out";
};

int run_acsf(AcsfOptions o) {
  std::optional<Region> region;
  if (o.r0) {
    if (!(*o.r0 > 0.0)) throw Error(ErrorCode::kInvalidArgument, "--r0 must be positive");
    if (!o.regions.names.empty() && o.regions.names.front() != "disk" && o.regions.names.front() != "r5") {
      throw Error(ErrorCode::kInvalidArgument, "--r0 only applies to the disk");
    }
    region = Region::disk("disk", {0.0, 0.0}, 2.0 * *o.r0);
  } else {
    const auto all = resolve_regions(o.regions);
    if (all.size() != 1) throw Error(ErrorCode::kInvalidArgument, "acsf runs exactly one region");
    region = all.front();
  }
  if (o.snapshots < 1) throw Error(ErrorCode::kInvalidArgument, "--snapshots must be >= 1");
  std::vector<double> fractions;
  for (int k = 1; k <= o.snapshots; ++k) fractions.push_back(1.0 - (1.0 - o.stop) * k / o.snapshots);
  const auto start = sample_region_boundary(*region, o.m);
  const auto runs = run_through_area_fractions(start, fractions, o.step);

  auto csv_out = open_output(fs::path(o.out) / "acsf.csv");
  CsvWriter csv(csv_out, {"t", "x", "y"});
  SvgPlot plot;
  for (const auto& p : start.points()) csv.row(0.0, p.x, p.y);
  plot.add(start.points(), "red", true);
  for (const auto& run : runs) {
    for (const auto& p : run.curve.points()) csv.row(run.t, p.x, p.y);
    plot.add(run.curve.points(), "black", true, 0.5);
  }
  write_svg(fs::path(o.out) / "acsf.svg", plot);

  const auto& last = runs.back();
  std::cout << "t: " << format_double(last.t) << '\n' << "steps: " << last.steps << '\n';
  if (const auto* disk = std::get_if<DiskShape>(&region->shape())) {
    const double exact = circle_time_to_area_fraction(disk->radius, o.stop);
    const double rel = std::abs(last.t - exact) / exact;
    std::cout << "closed form t: " << format_double(exact) << '\n'
              << "relative error: " << format_double(rel) << '\n'
              << "within 1%: " << (rel < 0.01 ? "yes" : "no") << '\n';
  }
  return 0;
}

struct CompareOptions {
  RegionSelection regions;
  std::vector<std::int64_t> ns;
  std::string fractions = "0.95,0.9,0.85,0.8,0.75";
  ReferenceParams reference;
  std::string out = "out";
};

int run_compare(const CompareOptions& o) {
  const auto regions = resolve_regions(o.regions);
  const auto fractions = parse_fractions(o.fractions);
  if (o.ns.empty()) throw Error(ErrorCode::kInvalidArgument, "give at least one --n");
  std::vector<FlowReference> refs;
  for (const auto& r : regions) refs.push_back(flow_reference(r, fractions, o.reference));
  std::vector<ComparisonRecord> records;
  for (std::size_t i = 0; i < regions.size(); ++i) {
    SvgPlot plot;
    plot.begin_group("flow");
    plot.add(refs[i].boundary.vertices, "red", true);
    for (const auto& c : refs[i].curves) plot.add(c.vertices, "red", true, 0.7);
    for (const auto n : o.ns) {
      const auto recs = compare_experiment(regions[i], n, refs[i]);
      records.insert(records.end(), recs.begin(), recs.end());
      plot.begin_group("peeling-n" + std::to_string(n));
      const auto peeled = peel_through_fractions(rasterize(regions[i], n), fractions);
      for (const auto& p : peeled) plot.add(chain_points(hull_chain(p.remaining), 1.0 / n), "black", true, 0.5);
    }
    write_svg(fs::path(o.out) / (regions[i].name() + "_compare.svg"), plot);
  }
  std::stable_sort(records.begin(), records.end(), [](const ComparisonRecord& a, const ComparisonRecord& b) {
    return std::tie(a.region, a.n, b.fraction) < std::tie(b.region, b.n, a.fraction);
  });
  auto csv_out = open_output(fs::path(o.out) / "comparison.csv");
  write_comparison_csv(csv_out, records);
  write_comparison_csv(std::cout, records);
  return 0;
}

struct QuadrantReportOptions {
  std::vector<std::int64_t> ns;
  std::vector<double> alphas;
  std::string out;
};

int run_quadrant_report(QuadrantReportOptions o) {
  if (o.ns.empty()) o.ns = {1000, 3000, 10000};
  if (o.alphas.empty()) o.alphas = {0.1, 0.03, 0.01, 0.003};
  const auto rows = quadrant_experiment(o.ns, o.alphas);
  write_quadrant_csv(std::cout, rows);
  if (!o.out.empty()) {
    auto out = open_output(fs::path(o.out) / "quadrant_report.csv");
    write_quadrant_csv(out, rows);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grid peeling and affine curve-shortening flow experiments"};
  app.require_subcommand(1);

  PeelSquareOptions square;
  auto* cmd_square = app.add_subcommand("peel-square", "peel the m x m grid to exhaustion");
  cmd_square->add_option("--m", square.m, "grid side (points per row)")->capture_default_str()->check(CLI::Range(1, 1 << 20));
  cmd_square->add_option("--out", square.out, "output directory")->capture_default_str();

  PeelShapeOptions shape;
  auto* cmd_shape = app.add_subcommand("peel-shape", "peel the lattice points of n*R");
  add_region_options(cmd_shape, shape.regions);
  cmd_shape->add_option("--n", shape.n, "grid density")->capture_default_str()->check(CLI::PositiveNumber);
  cmd_shape->add_option("--every", shape.every, "draw every k-th layer in the SVG")->capture_default_str()->check(CLI::PositiveNumber);
  cmd_shape->add_option("--out", shape.out, "output directory")->capture_default_str();

  PeelQuadrantOptions quadrant;
  auto* cmd_quadrant = app.add_subcommand("peel-quadrant", "peel the quarter-infinite grid");
  cmd_quadrant->add_option("--n", quadrant.n, "iterations")->capture_default_str();
  cmd_quadrant->add_option("--alpha", quadrant.alphas, "hyperbola tolerance (repeatable)")->check(CLI::Range(0.0, 1.0));
  cmd_quadrant->add_option("--out", quadrant.out, "output directory")->capture_default_str();

  AcsfOptions acsf;
  auto* cmd_acsf = app.add_subcommand("acsf", "simulate the affine curve-shortening flow");
  add_region_options(cmd_acsf, acsf.regions);
  cmd_acsf->add_option("--r0", acsf.r0, "start from a circle of this radius");
  cmd_acsf->add_option("--m", acsf.m, "front samples")->capture_default_str();
  cmd_acsf->add_option("--c-step", acsf.step.c_step, "time step coefficient")->capture_default_str();
  cmd_acsf->add_option("--lambda", acsf.step.lambda, "tangential redistribution coefficient")->capture_default_str();
  cmd_acsf->add_option("--stop-area-fraction", acsf.stop, "stop when this fraction of the area remains")
      ->capture_default_str()->check(CLI::Range(0.0, 1.0));
  cmd_acsf->add_option("--snapshots", acsf.snapshots, "snapshots written to the outputs")->capture_default_str();
  cmd_acsf->add_option("--out", acsf.out, "output directory")->capture_default_str();

  CompareOptions compare;
  auto* cmd_compare = app.add_subcommand("compare", "compare peeling with the flow at matching fractions");
  add_region_options(cmd_compare, compare.regions);
  cmd_compare->add_option("--n", compare.ns, "grid density (repeatable)")->required()->check(CLI::PositiveNumber);
  cmd_compare->add_option("--fractions", compare.fractions, "decreasing stop fractions")->capture_default_str();
  cmd_compare->add_option("--m", compare.reference.samples, "flow samples")->capture_default_str();
  cmd_compare->add_option("--c-step", compare.reference.step.c_step, "flow time step coefficient")->capture_default_str();
  cmd_compare->add_option("--lambda", compare.reference.step.lambda, "tangential coefficient")->capture_default_str();
  cmd_compare->add_option("--out", compare.out, "output directory")->capture_default_str();

  QuadrantReportOptions report;
  auto* cmd_report = app.add_subcommand("quadrant-report", "hyperbola fit and c estimates of the quadrant");
  cmd_report->add_option("--n", report.ns, "iteration counts (repeatable)");
  cmd_report->add_option("--alpha", report.alphas, "tolerances (repeatable)")->check(CLI::Range(0.0, 1.0));
  cmd_report->add_option("--out", report.out, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  std::cout << "# configuration\n" << app.config_to_str(true, false) << "# end configuration\n";
  try {
    if (*cmd_square) return run_peel_square(square);
    if (*cmd_shape) return run_peel_shape(shape);
    if (*cmd_quadrant) return run_peel_quadrant(quadrant);
    if (*cmd_acsf) return run_acsf(acsf);
    if (*cmd_compare) return run_compare(compare);
    if (*cmd_report) return run_quadrant_report(report);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
