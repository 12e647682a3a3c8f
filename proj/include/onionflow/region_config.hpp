#pragma once

// Plain-text region definitions, one section per region:
//
//   # comment
//   [tilted]
//   kind = triangle
//   vertices = 0 0; 1 0.75; 0.4 1
//
//   [blob]
//   kind = parametric-curve
//   curve = r1
//   samples = 20000
//
// Keys by kind:
//   square            origin = x y (default 0 0), side = s (default 1)
//   triangle, polygon vertices = x y; x y; ...
//   disk, half-disk   center = x y, diameter = d (the half-disk's flat side
//                     passes through its center)
//   parametric-curve  curve = r1 | circle, samples = k (>= 10000)
//   builtin           id = r1 .. r5

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "onionflow/error.hpp"
#include "onionflow/region.hpp"

namespace onionflow {

namespace detail {

inline std::string trim_copy(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

inline double parse_number(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double v = 0.0;
  if (!(in >> v) || !(in >> std::ws).eof()) throw Error(ErrorCode::kParse, "bad number for " + what + ": '" + text + "'");
  return v;
}

inline FloatPoint parse_point(const std::string& text, const std::string& what) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  FloatPoint p;
  if (!(in >> p.x >> p.y) || !(in >> std::ws).eof()) {
    throw Error(ErrorCode::kParse, "bad point for " + what + ": '" + text + "'");
  }
  return p;
}

inline std::vector<FloatPoint> parse_points(const std::string& text, const std::string& what) {
  std::vector<FloatPoint> out;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ';')) {
    item = trim_copy(item);
    if (!item.empty()) out.push_back(parse_point(item, what));
  }
  return out;
}

inline Region build_region(const std::string& name, const std::map<std::string, std::string>& keys) {
  const auto get = [&](const std::string& key) -> const std::string* {
    const auto it = keys.find(key);
    return it == keys.end() ? nullptr : &it->second;
  };
  const auto need = [&](const std::string& key) -> const std::string& {
    if (const auto* v = get(key)) return *v;
    throw Error(ErrorCode::kParse, "region [" + name + "] is missing '" + key + "'");
  };
  const std::string kind = need("kind");
  const auto allow = [&](std::initializer_list<const char*> allowed) {
    for (const auto& [key, _] : keys) {
      bool ok = key == "kind";
      for (const char* a : allowed) ok = ok || key == a;
      if (!ok) throw Error(ErrorCode::kParse, "region [" + name + "]: unknown key '" + key + "' for " + kind);
    }
  };
  if (kind == "square") {
    allow({"origin", "side"});
    const FloatPoint origin = get("origin") ? parse_point(*get("origin"), "origin") : FloatPoint{};
    const double side = get("side") ? parse_number(*get("side"), "side") : 1.0;
    return Region::square(name, origin, side);
  }
  if (kind == "triangle" || kind == "polygon") {
    allow({"vertices"});
    const auto v = parse_points(need("vertices"), "vertices");
    if (kind == "triangle" && v.size() != 3) throw Error(ErrorCode::kParse, "triangle needs 3 vertices");
    return Region::polygon(name, v, kind == "triangle" ? RegionKind::kTriangle : RegionKind::kPolygon);
  }
  if (kind == "disk" || kind == "half-disk") {
    allow({"center", "diameter"});
    const FloatPoint c = parse_point(need("center"), "center");
    const double d = parse_number(need("diameter"), "diameter");
    return kind == "disk" ? Region::disk(name, c, d) : Region::half_disk(name, c, d);
  }
  if (kind == "parametric-curve") {
    allow({"curve", "samples"});
    const int samples = get("samples") ? static_cast<int>(parse_number(*get("samples"), "samples")) : 16384;
    const std::string& curve = need("curve");
    return Region::curve(name, curve, builtin_curve(curve), samples);
  }
  if (kind == "builtin") {
    allow({"id"});
    Region r = builtin_region(need("id"));
    return Region(name, r.kind(), r.shape());
  }
  throw Error(ErrorCode::kParse, "region [" + name + "]: unknown kind '" + kind + "'");
}

}  // namespace detail

inline std::vector<Region> parse_regions(std::istream& in) {
  std::vector<Region> regions;
  std::string section;
  std::map<std::string, std::string> keys;
  int line_no = 0;
  const auto flush = [&] {
    if (!section.empty()) regions.push_back(detail::build_region(section, keys));
    keys.clear();
  };
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = detail::trim_copy(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": bad section header");
      }
      flush();
      section = detail::trim_copy(line.substr(1, line.size() - 2));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos || section.empty()) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": expected key = value inside a section");
    }
    const std::string key = detail::trim_copy(line.substr(0, eq));
    if (!keys.emplace(key, detail::trim_copy(line.substr(eq + 1))).second) {
      throw Error(ErrorCode::kParse, "line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }
  flush();
  return regions;
}

}  // namespace onionflow
