#pragma once

// Shared fixtures and brute-force oracles for the test suites. Oracles here
// use only adjacent() on raw points, never the image's adjacency graph.

#include <algorithm>
#include <cstddef>
#include <random>
#include <vector>

#include "digitop/homotopy.hpp"
#include "digitop/lattice.hpp"
#include "digitop/maps.hpp"

namespace digitop::testing {

inline DigitalImage make_image(int n, int t, std::vector<Point> pts) {
  return DigitalImage(AdjacencySpec(n, t), std::move(pts));
}

inline DigitalImage line(Coord a, Coord b) { return integer_interval(a, b); }

// {(1,0),(0,1),(-1,0),(0,-1)} under 8-adjacency.
inline DigitalImage diamond() { return make_image(2, 2, {{1, 0}, {0, 1}, {-1, 0}, {0, -1}}); }

inline DigitalImage unit_square(int t) { return make_image(2, t, {{0, 0}, {1, 0}, {1, 1}, {0, 1}}); }

inline DigitalImage filled_square(Coord side, int t) {
  std::vector<Point> pts;
  for (Coord i = 0; i < side; ++i)
    for (Coord j = 0; j < side; ++j) pts.push_back(Point{i, j});
  return make_image(2, t, std::move(pts));
}

// The 6-point 8-curve {(0,0),(1,1),(2,1),(3,0),(2,-1),(1,-1)}.
inline DigitalImage hexagon8() {
  return make_image(2, 2, {{0, 0}, {1, 1}, {2, 1}, {3, 0}, {2, -1}, {1, -1}});
}

// All-pairs intrinsic distances by Floyd-Warshall over adjacent().
inline std::vector<std::vector<std::size_t>> floyd_distances(const DigitalImage& img) {
  const std::size_t n = img.size();
  const std::size_t inf = kUnreachable / 2;
  std::vector<std::vector<std::size_t>> d(n, std::vector<std::size_t>(n, inf));
  for (std::size_t i = 0; i < n; ++i) {
    d[i][i] = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (adjacent(img.point(i), img.point(j), img.spec())) d[i][j] = 1;
    }
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
  for (auto& row : d)
    for (auto& v : row)
      if (v >= inf) v = kUnreachable;
  return d;
}

// Cyclic-order check straight from the definition.
inline bool is_closed_curve_order(const std::vector<Point>& order, const AdjacencySpec& spec) {
  const std::size_t l = order.size();
  if (l < 4) return false;
  for (std::size_t i = 0; i < l; ++i) {
    for (std::size_t j = i + 1; j < l; ++j) {
      if (order[i] == order[j]) return false;
      const std::size_t gap = j - i;
      const bool consecutive = gap == 1 || gap == l - 1;
      if (adjacent(order[i], order[j], spec) != consecutive) return false;
    }
  }
  return true;
}

// Continuity from the adjacency definition on raw points.
inline bool continuous_oracle(const DigitalMap& f) {
  const auto& x = f.domain();
  const auto& y = f.codomain();
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < x.size(); ++j) {
      if (!adjacent(x.point(i), x.point(j), x.spec())) continue;
      const Point& a = y.point(f(i));
      const Point& b = y.point(f(j));
      if (a != b && !adjacent(a, b, y.spec())) return false;
    }
  return true;
}

// Random image of up to `max_points` distinct points inside [0, box)^2.
inline DigitalImage random_image(std::mt19937& rng, std::size_t min_points, std::size_t max_points,
                                 Coord box, int t) {
  std::uniform_int_distribution<std::size_t> count(min_points, max_points);
  std::uniform_int_distribution<Coord> coord(0, box - 1);
  const std::size_t want = std::min<std::size_t>(count(rng), static_cast<std::size_t>(box * box));
  std::vector<Point> pts;
  while (pts.size() < want) {
    Point p{coord(rng), coord(rng)};
    if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(p);
  }
  return make_image(2, t, std::move(pts));
}

// Random connected image grown from a seed by adding adjacent lattice points.
inline DigitalImage random_connected_image(std::mt19937& rng, std::size_t points, int t) {
  const AdjacencySpec spec(2, t);
  std::vector<Point> pts{Point{0, 0}};
  while (pts.size() < points) {
    const Point& base = pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)];
    auto nb = lattice_neighbors(base, spec);
    const Point& q = nb[std::uniform_int_distribution<std::size_t>(0, nb.size() - 1)(rng)];
    if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
  }
  return DigitalImage(spec, std::move(pts));
}

inline DigitalMap random_map(std::mt19937& rng, const DigitalImage& x, const DigitalImage& y) {
  std::uniform_int_distribution<std::size_t> pick(0, y.size() - 1);
  Assignment a(x.size());
  for (auto& v : a) v = pick(rng);
  return DigitalMap(x, y, std::move(a));
}

// A random pick among the first 4096 continuous maps in enumeration order.
inline std::optional<DigitalMap> random_continuous_map(std::mt19937& rng, const DigitalImage& x,
                                                       const DigitalImage& y) {
  std::vector<Assignment> all;
  for_each_continuous_map(x, y, [&](const Assignment& a) {
    all.push_back(a);
    return all.size() < 4096;
  });
  if (all.empty()) return std::nullopt;
  return DigitalMap(x, y, all[std::uniform_int_distribution<std::size_t>(0, all.size() - 1)(rng)]);
}

}  // namespace digitop::testing
