#pragma once

// Locale-independent number formatting plus small CSV and SVG writers.
// CSV numbers use the shortest round-trip representation; SVG coordinates
// use fixed six-decimal formatting. Lines end in '\n' everywhere.

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "onionflow/error.hpp"
#include "onionflow/geometry.hpp"

namespace onionflow {

inline std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value);
  return {buf, res.ptr};
}

inline std::string format_fixed(double value, int precision = 6) {
  char buf[128];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed, precision);
  std::string out(buf, res.ptr);
  if (out == "-0.000000") out = "0.000000";
  return out;
}

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::vector<std::string> header) : out_(out), columns_(header.size()) {
    write_cells(header);
  }

  template <class... Cells>
  void row(const Cells&... cells) {
    static_assert(sizeof...(Cells) > 0);
    std::vector<std::string> text{cell(cells)...};
    write_cells(text);
  }

  void row_cells(const std::vector<std::string>& cells) { write_cells(cells); }

 private:
  static std::string cell(const std::string& s) { return s; }
  static std::string cell(const char* s) { return s; }
  static std::string cell(double v) { return format_double(v); }
  static std::string cell(bool v) { return v ? "1" : "0"; }
  template <class Int>
    requires std::is_integral_v<Int>
  static std::string cell(Int v) {
    return std::to_string(v);
  }

  void write_cells(const std::vector<std::string>& cells) {
    if (cells.size() != columns_) throw Error(ErrorCode::kInvalidArgument, "CSV row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
  }

  std::ostream& out_;
  std::size_t columns_;
};

/// Collects polylines in world coordinates and writes them into an SVG whose
/// viewport fits their bounding box (y axis pointing up).
class SvgPlot {
 public:
  explicit SvgPlot(double pixel_size = 800.0) : pixel_size_(pixel_size) {}

  void add(std::span<const FloatPoint> points, std::string stroke, bool closed, double width = 1.0) {
    if (points.empty()) return;
    for (const auto& p : points) {
      lo_.x = std::min(lo_.x, p.x);
      lo_.y = std::min(lo_.y, p.y);
      hi_.x = std::max(hi_.x, p.x);
      hi_.y = std::max(hi_.y, p.y);
    }
    lines_.push_back({{points.begin(), points.end()}, std::move(stroke), closed, width});
  }

  void begin_group(std::string label) { lines_.push_back({{}, std::move(label), false, -1.0}); }

  void write(std::ostream& out) const {
    const double span = std::max({hi_.x - lo_.x, hi_.y - lo_.y, 1e-12});
    const double scale = pixel_size_ / span;
    const double margin = 10.0;
    const double w = (hi_.x - lo_.x) * scale + 2 * margin;
    const double h = (hi_.y - lo_.y) * scale + 2 * margin;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << format_fixed(w) << "\" height=\""
        << format_fixed(h) << "\" viewBox=\"0 0 " << format_fixed(w) << ' ' << format_fixed(h) << "\">\n";
    bool open_group = false;
    for (const auto& line : lines_) {
      if (line.width < 0.0) {
        if (open_group) out << "</g>\n";
        out << "<g id=\"" << line.stroke << "\">\n";
        open_group = true;
        continue;
      }
      out << (line.closed ? "<polygon" : "<polyline") << " fill=\"none\" stroke=\"" << line.stroke
          << "\" stroke-width=\"" << format_fixed(line.width) << "\" points=\"";
      for (std::size_t i = 0; i < line.points.size(); ++i) {
        const auto& p = line.points[i];
        if (i) out << ' ';
        out << format_fixed((p.x - lo_.x) * scale + margin) << ','
            << format_fixed((hi_.y - p.y) * scale + margin);
      }
      out << "\"/>\n";
    }
    if (open_group) out << "</g>\n";
    out << "</svg>\n";
  }

 private:
  struct Line {
    std::vector<FloatPoint> points;
    std::string stroke;
    bool closed;
    double width;
  };

  double pixel_size_;
  FloatPoint lo_{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  FloatPoint hi_{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  std::vector<Line> lines_;
};

inline std::ofstream open_output(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  return out;
}

}  // namespace onionflow
