#pragma once

// JSON documents for images, maps, homotopies and point lists.
//
//   image:     {"dim": n, "t": t, "points": [[x1,...,xn], ...]}
//   map:       {"domain": <image>, "codomain": <image>, "pairs": [[[x...],[y...]], ...]}
//   homotopy:  {"map_f": <map>, "map_g": <map>, "m": m,
//               "stages": [<pairs of stage 0>, ..., <pairs of stage m>]}
//   points:    [[x1,...,xn], ...]
//
// k is always derived from (dim, t). Output lists points in lexicographic
// order so documents are byte-stable.

#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "digitop/errors.hpp"
#include "digitop/homotopy.hpp"
#include "digitop/lattice.hpp"
#include "digitop/maps.hpp"

namespace digitop::io {

using nlohmann::json;

namespace detail {

inline const json& field(const json& j, const char* name, const char* what) {
  if (!j.is_object()) throw FormatError(std::string(what) + " must be a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw FormatError(std::string(what) + " is missing \"" + name + "\"");
  return *it;
}

inline int small_int(const json& j, const char* what) {
  if (!j.is_number_integer()) throw FormatError(std::string(what) + " must be an integer");
  const auto v = j.get<std::int64_t>();
  if (v < 0 || v > 1'000'000) throw FormatError(std::string(what) + " out of range");
  return static_cast<int>(v);
}

}  // namespace detail

inline Point point_from_json(const json& j, std::size_t dim) {
  if (!j.is_array() || j.empty()) throw FormatError("a point must be a nonempty array");
  if (j.size() != dim) {
    throw FormatError("point " + j.dump() + " does not have dimension " + std::to_string(dim));
  }
  std::vector<Coord> c;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw FormatError("coordinates must be integers: " + j.dump());
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(kMaxAbsCoordinate)) {
      throw FormatError("coordinate out of range in " + j.dump());
    }
    const auto x = v.get<std::int64_t>();
    if (x < -kMaxAbsCoordinate || x > kMaxAbsCoordinate) {
      throw FormatError("coordinate out of range in " + j.dump());
    }
    c.push_back(x);
  }
  return Point(std::move(c));
}

inline json to_json(const Point& p) { return json(p.coords()); }

inline json to_json(std::span<const Point> pts) {
  json out = json::array();
  for (const Point& p : pts) out.push_back(to_json(p));
  return out;
}

// Parses "c1,...,cn" as given on the command line.
inline Point parse_point(const std::string& text) {
  if (!text.empty() && text.back() == ',') throw FormatError("trailing comma in point \"" + text + "\"");
  std::vector<Coord> c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw FormatError("bad coordinate \"" + item + "\" in point \"" + text + "\"");
    }
    while (used < item.size() && item[used] == ' ') ++used;
    if (used != item.size()) throw FormatError("bad coordinate \"" + item + "\"");
    if (v < -kMaxAbsCoordinate || v > kMaxAbsCoordinate) throw FormatError("coordinate out of range");
    c.push_back(v);
  }
  if (c.empty()) throw FormatError("empty point \"" + text + "\"");
  return Point(std::move(c));
}

inline DigitalImage image_from_json(const json& j) {
  const int n = detail::small_int(detail::field(j, "dim", "image"), "dim");
  const int t = detail::small_int(detail::field(j, "t", "image"), "t");
  if (n < 1 || n > kMaxDimension || t < 1 || t > n) {
    throw FormatError("image needs 1 <= t <= dim <= " + std::to_string(kMaxDimension));
  }
  const auto& pts = detail::field(j, "points", "image");
  if (!pts.is_array()) throw FormatError("image \"points\" must be an array");
  std::vector<Point> points;
  for (const auto& p : pts) points.push_back(point_from_json(p, static_cast<std::size_t>(n)));
  try {
    return DigitalImage(AdjacencySpec(n, t), std::move(points));
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

inline json to_json(const DigitalImage& img) {
  return json{{"dim", img.spec().n()}, {"t", img.spec().t()}, {"points", to_json(img.points())}};
}

inline std::vector<Point> points_from_json(const json& j, std::size_t dim) {
  if (!j.is_array()) throw FormatError("a point list must be an array");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(point_from_json(p, dim));
  return out;
}

namespace detail {

inline Assignment assignment_from_pairs(const json& pairs, const DigitalImage& x,
                                        const DigitalImage& y) {
  if (!pairs.is_array()) throw FormatError("\"pairs\" must be an array");
  std::vector<std::pair<Point, Point>> pp;
  for (const auto& pr : pairs) {
    if (!pr.is_array() || pr.size() != 2) throw FormatError("each pair must be [[x...],[y...]]");
    pp.emplace_back(point_from_json(pr[0], static_cast<std::size_t>(x.spec().n())),
                    point_from_json(pr[1], static_cast<std::size_t>(y.spec().n())));
  }
  try {
    return DigitalMap::from_pairs(x, y, pp).assignment();
  } catch (const DomainError& e) {
    throw FormatError(e.what());
  }
}

inline json pairs_to_json(const Assignment& a, const DigitalImage& x, const DigitalImage& y) {
  json out = json::array();
  for (std::size_t i = 0; i < a.size(); ++i) {
    out.push_back(json::array({to_json(x.point(i)), to_json(y.point(a[i]))}));
  }
  return out;
}

}  // namespace detail

inline DigitalMap map_from_json(const json& j) {
  auto x = image_from_json(detail::field(j, "domain", "map"));
  auto y = image_from_json(detail::field(j, "codomain", "map"));
  auto a = detail::assignment_from_pairs(detail::field(j, "pairs", "map"), x, y);
  return DigitalMap(std::move(x), std::move(y), std::move(a));
}

inline json to_json(const DigitalMap& f) {
  return json{{"domain", to_json(f.domain())},
              {"codomain", to_json(f.codomain())},
              {"pairs", detail::pairs_to_json(f.assignment(), f.domain(), f.codomain())}};
}

inline Homotopy homotopy_from_json(const json& j) {
  auto f = map_from_json(detail::field(j, "map_f", "homotopy"));
  auto g = map_from_json(detail::field(j, "map_g", "homotopy"));
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain())) {
    throw FormatError("map_f and map_g must share domain and codomain");
  }
  const int m = detail::small_int(detail::field(j, "m", "homotopy"), "m");
  const auto& stages = detail::field(j, "stages", "homotopy");
  if (!stages.is_array() || stages.size() != static_cast<std::size_t>(m) + 1) {
    throw FormatError("\"stages\" must list m + 1 stages");
  }
  std::vector<Assignment> s;
  for (const auto& st : stages) s.push_back(detail::assignment_from_pairs(st, f.domain(), f.codomain()));
  return Homotopy(std::move(f), std::move(g), std::move(s));
}

inline json to_json(const Homotopy& h) {
  json stages = json::array();
  for (const auto& s : h.stages()) stages.push_back(detail::pairs_to_json(s, h.domain(), h.codomain()));
  return json{{"map_f", to_json(h.source())},
              {"map_g", to_json(h.target())},
              {"m", h.steps()},
              {"stages", std::move(stages)}};
}

inline json to_json(const RetractCertificate& c) {
  return json{{"retraction", to_json(c.retraction)},
              {"homotopy", to_json(c.homotopy)},
              {"retained", to_json(c.retained)}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot read " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace digitop::io
