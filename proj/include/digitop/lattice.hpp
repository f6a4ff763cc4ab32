#pragma once

// Lattice points, the k(t,n) adjacency family of Z^n, finite digital images
// and their intrinsic path geometry: distances, neighborhoods, components and
// simple closed curves.

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <initializer_list>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "digitop/errors.hpp"

namespace digitop {

using Coord = std::int64_t;

// Coordinates are kept well inside 32 bits so offsets never overflow.
inline constexpr Coord kMaxAbsCoordinate = (Coord{1} << 31) - 2;

// Largest dimension for which 3^n - 1 (the k(n,n) value) fits in 64 bits.
inline constexpr int kMaxDimension = 39;

inline constexpr std::size_t kUnreachable = std::numeric_limits<std::size_t>::max();

class Point {
 public:
  explicit Point(std::vector<Coord> coords) : coords_(std::move(coords)) {
    if (coords_.empty()) throw DomainError("a point needs at least one coordinate");
  }
  Point(std::initializer_list<Coord> coords) : Point(std::vector<Coord>(coords)) {}

  static Point origin(std::size_t dim) { return Point(std::vector<Coord>(dim, 0)); }

  std::size_t dim() const noexcept { return coords_.size(); }
  Coord operator[](std::size_t i) const { return coords_[i]; }
  const std::vector<Coord>& coords() const noexcept { return coords_; }

  // Lexicographic. Only meaningful between points of equal dimension.
  friend auto operator<=>(const Point&, const Point&) = default;
  friend bool operator==(const Point&, const Point&) = default;

 private:
  std::vector<Coord> coords_;
};

inline std::string to_string(const Point& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.dim(); ++i) {
    if (i) s += ',';
    s += std::to_string(p[i]);
  }
  return s + ")";
}

struct PointHash {
  std::size_t operator()(const Point& p) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (Coord c : p.coords()) {
      h ^= static_cast<std::size_t>(c) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

/// Number of lattice neighbors of a point of Z^n when up to t coordinates may
/// change by one: the sum over i = 1..t of 2^i * C(n, i).
inline std::uint64_t k_value(int t, int n) {
  if (n < 1 || n > kMaxDimension) {
    throw DomainError("dimension n=" + std::to_string(n) + " out of range [1," +
                      std::to_string(kMaxDimension) + "]");
  }
  if (t < 1 || t > n) {
    throw DomainError("t=" + std::to_string(t) + " out of range [1," + std::to_string(n) + "]");
  }
  std::uint64_t binom = 1;  // C(n, i), updated incrementally
  std::uint64_t pow2 = 1;
  std::uint64_t k = 0;
  for (int i = 1; i <= t; ++i) {
    binom = binom * static_cast<std::uint64_t>(n - i + 1) / static_cast<std::uint64_t>(i);
    pow2 *= 2;
    k += pow2 * binom;
  }
  return k;
}

// The pair (t, n) selecting one k(t,n)-adjacency of Z^n.
class AdjacencySpec {
 public:
  AdjacencySpec(int n, int t) : n_(n), t_(t), k_(k_value(t, n)) {}

  int n() const noexcept { return n_; }
  int t() const noexcept { return t_; }
  std::uint64_t k() const noexcept { return k_; }

  friend bool operator==(const AdjacencySpec& a, const AdjacencySpec& b) noexcept {
    return a.n_ == b.n_ && a.t_ == b.t_;
  }

 private:
  int n_;
  int t_;
  std::uint64_t k_;
};

namespace detail {

inline void require_dim(const Point& p, const AdjacencySpec& spec) {
  if (p.dim() != static_cast<std::size_t>(spec.n())) {
    throw DomainError("point " + to_string(p) + " has dimension " + std::to_string(p.dim()) +
                      ", expected " + std::to_string(spec.n()));
  }
}

// Minimum number of k(t,n) steps between two lattice points: every step moves
// each coordinate by at most one and at most t coordinates at once.
inline std::uint64_t lattice_step_distance(const Point& p, const Point& q, int t) {
  std::uint64_t linf = 0;
  std::uint64_t l1 = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const auto d = static_cast<std::uint64_t>(p[i] > q[i] ? p[i] - q[i] : q[i] - p[i]);
    linf = std::max(linf, d);
    l1 += d;
  }
  const auto tt = static_cast<std::uint64_t>(t);
  return std::max(linf, (l1 + tt - 1) / tt);
}

}  // namespace detail

/// True iff p != q, every coordinate differs by at most one, and at most t
/// coordinates differ at all.
inline bool adjacent(const Point& p, const Point& q, const AdjacencySpec& spec) {
  detail::require_dim(p, spec);
  detail::require_dim(q, spec);
  int changed = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) {
    const Coord d = p[i] - q[i];
    if (d < -1 || d > 1) return false;
    if (d != 0) ++changed;
  }
  return changed >= 1 && changed <= spec.t();
}

// Offsets of all k(t,n) neighbors of the origin, in lexicographic order.
// Generated constructively, so cost is proportional to k rather than 3^n.
inline std::vector<std::vector<Coord>> adjacency_offsets(const AdjacencySpec& spec) {
  std::vector<std::vector<Coord>> out;
  out.reserve(static_cast<std::size_t>(std::min<std::uint64_t>(spec.k(), 1u << 20)));
  std::vector<Coord> cur(static_cast<std::size_t>(spec.n()), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int budget) {
    if (pos == cur.size()) {
      if (budget < spec.t()) out.push_back(cur);
      return;
    }
    for (Coord c : {Coord{-1}, Coord{0}, Coord{1}}) {
      if (c != 0 && budget == 0) continue;
      cur[pos] = c;
      rec(pos + 1, c != 0 ? budget - 1 : budget);
    }
    cur[pos] = 0;
  };
  rec(0, spec.t());
  return out;
}

/// Every q in Z^n adjacent to p, found by scanning the full 3^n box around p
/// and filtering with adjacent(). Exponential in n; intended as a check on
/// k_value, not for hot paths.
inline std::vector<Point> lattice_neighbors(const Point& p, const AdjacencySpec& spec) {
  detail::require_dim(p, spec);
  const std::size_t n = p.dim();
  std::vector<Coord> offset(n, -1);
  std::vector<Point> out;
  while (true) {
    std::vector<Coord> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = p[i] + offset[i];
    Point q(std::move(c));
    if (adjacent(p, q, spec)) out.push_back(std::move(q));
    std::size_t i = n;
    while (i > 0 && offset[i - 1] == 1) offset[--i] = -1;
    if (i == 0) break;
    ++offset[i - 1];
  }
  return out;
}

/// A finite point set of Z^n with one k(t,n)-adjacency. Points are stored in
/// lexicographic order and addressed by their rank; the adjacency graph is
/// built once on construction. Copies share the same immutable storage.
class DigitalImage {
 public:
  DigitalImage(AdjacencySpec spec, std::vector<Point> points) {
    auto data = std::make_shared<Data>(Data{spec, std::move(points), {}, {}});
    for (const Point& p : data->points) {
      detail::require_dim(p, spec);
      for (Coord c : p.coords()) {
        if (c < -kMaxAbsCoordinate || c > kMaxAbsCoordinate) {
          throw DomainError("coordinate out of range in " + to_string(p));
        }
      }
    }
    std::sort(data->points.begin(), data->points.end());
    for (std::size_t i = 1; i < data->points.size(); ++i) {
      if (data->points[i] == data->points[i - 1]) {
        throw DomainError("duplicate point " + to_string(data->points[i]));
      }
    }
    const std::size_t count = data->points.size();
    data->index.reserve(count);
    for (std::size_t i = 0; i < count; ++i) data->index.emplace(data->points[i], i);
    data->adjacency.resize(count);
    if (count <= spec.k()) {
      for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = i + 1; j < count; ++j) {
          if (adjacent(data->points[i], data->points[j], spec)) {
            data->adjacency[i].push_back(j);
            data->adjacency[j].push_back(i);
          }
        }
      }
    } else {
      const auto offsets = adjacency_offsets(spec);
      for (std::size_t i = 0; i < count; ++i) {
        const Point& p = data->points[i];
        for (const auto& off : offsets) {
          std::vector<Coord> c(p.coords());
          for (std::size_t d = 0; d < c.size(); ++d) c[d] += off[d];
          if (auto it = data->index.find(Point(std::move(c))); it != data->index.end()) {
            data->adjacency[i].push_back(it->second);
          }
        }
      }
    }
    for (auto& row : data->adjacency) std::sort(row.begin(), row.end());
    data_ = std::move(data);
  }

  const AdjacencySpec& spec() const noexcept { return data_->spec; }
  std::size_t size() const noexcept { return data_->points.size(); }
  bool empty() const noexcept { return data_->points.empty(); }
  std::span<const Point> points() const noexcept { return data_->points; }
  const Point& point(std::size_t i) const { return data_->points.at(i); }

  std::optional<std::size_t> index_of(const Point& p) const {
    if (auto it = data_->index.find(p); it != data_->index.end()) return it->second;
    return std::nullopt;
  }
  bool contains(const Point& p) const { return data_->index.contains(p); }

  std::size_t require_index(const Point& p) const {
    if (auto i = index_of(p)) return *i;
    throw DomainError("point " + to_string(p) + " is not in the image");
  }

  std::span<const std::size_t> neighbors(std::size_t i) const { return data_->adjacency.at(i); }
  std::size_t degree(std::size_t i) const { return data_->adjacency.at(i).size(); }

  bool are_adjacent(std::size_t i, std::size_t j) const {
    const auto& row = data_->adjacency.at(i);
    return std::binary_search(row.begin(), row.end(), j);
  }

  DigitalImage subimage(std::span<const std::size_t> indices) const {
    std::vector<Point> pts;
    pts.reserve(indices.size());
    for (std::size_t i : indices) pts.push_back(point(i));
    return DigitalImage(spec(), std::move(pts));
  }

  DigitalImage without(const Point& p) const {
    std::vector<Point> pts;
    pts.reserve(size());
    for (const Point& q : points()) {
      if (q != p) pts.push_back(q);
    }
    return DigitalImage(spec(), std::move(pts));
  }

  friend bool operator==(const DigitalImage& a, const DigitalImage& b) {
    return a.data_ == b.data_ || (a.spec() == b.spec() && a.data_->points == b.data_->points);
  }

 private:
  struct Data {
    AdjacencySpec spec;
    std::vector<Point> points;
    std::unordered_map<Point, std::size_t, PointHash> index;
    std::vector<std::vector<std::size_t>> adjacency;
  };
  std::shared_ptr<const Data> data_;
};

// Breadth-first distances from one point inside the image. Entries beyond
// `limit` (and unreachable ones) are kUnreachable.
inline std::vector<std::size_t> distances_from(const DigitalImage& img, std::size_t source,
                                               std::size_t limit = kUnreachable) {
  std::vector<std::size_t> dist(img.size(), kUnreachable);
  dist.at(source) = 0;
  std::deque<std::size_t> queue{source};
  while (!queue.empty()) {
    const std::size_t u = queue.front();
    queue.pop_front();
    if (dist[u] == limit) continue;
    for (std::size_t v : img.neighbors(u)) {
      if (dist[v] == kUnreachable) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

// Length of a shortest simple path inside the image. A shortest walk in a
// simple graph never revisits a vertex and never skips over an edge, so graph
// distance and shortest simple path length coincide.
inline std::optional<std::size_t> path_length(const DigitalImage& img, const Point& x,
                                              const Point& y) {
  const std::size_t i = img.require_index(x);
  const std::size_t j = img.require_index(y);
  const std::size_t d = distances_from(img, i)[j];
  if (d == kUnreachable) return std::nullopt;
  return d;
}

// A sequence of image points in which exactly the consecutive entries are
// adjacent.
class SimplePath {
 public:
  SimplePath(const DigitalImage& img, std::vector<Point> seq) : seq_(std::move(seq)) {
    if (seq_.empty()) throw DomainError("a simple path needs at least one point");
    std::vector<std::size_t> idx;
    for (const Point& p : seq_) idx.push_back(img.require_index(p));
    for (std::size_t a = 0; a < idx.size(); ++a) {
      for (std::size_t b = a + 1; b < idx.size(); ++b) {
        if (idx[a] == idx[b]) throw DomainError("simple path repeats " + to_string(seq_[a]));
        if (img.are_adjacent(idx[a], idx[b]) != (b == a + 1)) {
          throw DomainError("not a simple path at " + to_string(seq_[a]) + ", " +
                            to_string(seq_[b]));
        }
      }
    }
  }

  std::span<const Point> seq() const noexcept { return seq_; }
  std::size_t length() const noexcept { return seq_.size() - 1; }

 private:
  std::vector<Point> seq_;
};

inline std::optional<SimplePath> shortest_path(const DigitalImage& img, const Point& x,
                                               const Point& y) {
  const std::size_t target = img.require_index(x);
  std::size_t cur = img.require_index(y);
  const auto dist = distances_from(img, target);
  if (dist[cur] == kUnreachable) return std::nullopt;
  // Walk back from y toward x, always taking the smallest-index predecessor.
  std::vector<Point> seq{img.point(cur)};
  while (cur != target) {
    for (std::size_t v : img.neighbors(cur)) {
      if (dist[v] + 1 == dist[cur]) {
        cur = v;
        break;
      }
    }
    seq.push_back(img.point(cur));
  }
  std::reverse(seq.begin(), seq.end());
  return SimplePath(img, std::move(seq));
}

// Sorted indices of N(x0, eps): points whose intrinsic distance to x0 is at
// most eps, x0 included.
inline std::vector<std::size_t> neighborhood_indices(const DigitalImage& img, std::size_t x0,
                                                     std::size_t eps) {
  if (eps < 1) throw DomainError("neighborhood radius must be at least 1");
  const auto dist = distances_from(img, x0, eps);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] != kUnreachable) out.push_back(i);
  }
  return out;
}

inline std::vector<Point> neighborhood(const DigitalImage& img, const Point& x0, std::size_t eps) {
  std::vector<Point> out;
  for (std::size_t i : neighborhood_indices(img, img.require_index(x0), eps)) {
    out.push_back(img.point(i));
  }
  return out;
}

// Component label per point; labels are numbered in order of each
// component's smallest point.
inline std::vector<std::size_t> component_labels(const DigitalImage& img) {
  std::vector<std::size_t> label(img.size(), kUnreachable);
  std::size_t next = 0;
  for (std::size_t s = 0; s < img.size(); ++s) {
    if (label[s] != kUnreachable) continue;
    label[s] = next;
    std::deque<std::size_t> queue{s};
    while (!queue.empty()) {
      const std::size_t u = queue.front();
      queue.pop_front();
      for (std::size_t v : img.neighbors(u)) {
        if (label[v] == kUnreachable) {
          label[v] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

inline std::vector<std::vector<Point>> connected_components(const DigitalImage& img) {
  std::vector<std::vector<Point>> out;
  const auto label = component_labels(img);
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (label[i] >= out.size()) out.resize(label[i] + 1);
    out[label[i]].push_back(img.point(i));
  }
  return out;
}

// The empty image and singletons count as connected.
inline bool is_connected(const DigitalImage& img) {
  const auto label = component_labels(img);
  return std::all_of(label.begin(), label.end(), [](std::size_t l) { return l == 0; });
}

/// A simple closed curve: a cyclic ordering of an image with l >= 4 points
/// in which two points are adjacent exactly when they are cyclically
/// consecutive. The order starts at the lexicographically smallest point and
/// continues toward its smaller neighbor.
class CyclicCurve {
 public:
  const DigitalImage& image() const noexcept { return image_; }
  std::size_t length() const noexcept { return order_.size(); }

  // Image index of the i-th curve point; i is taken modulo l.
  std::size_t index_at(Coord i) const {
    const auto l = static_cast<Coord>(order_.size());
    return order_[static_cast<std::size_t>(((i % l) + l) % l)];
  }
  const Point& at(Coord i) const { return image_.point(index_at(i)); }

  std::vector<Point> points() const {
    std::vector<Point> out;
    for (std::size_t i : order_) out.push_back(image_.point(i));
    return out;
  }

  friend std::optional<CyclicCurve> recognize_sc(const DigitalImage& img);

 private:
  CyclicCurve(DigitalImage image, std::vector<std::size_t> order)
      : image_(std::move(image)), order_(std::move(order)) {}

  DigitalImage image_;
  std::vector<std::size_t> order_;
};

inline std::optional<CyclicCurve> recognize_sc(const DigitalImage& img) {
  const std::size_t l = img.size();
  if (l < 4) return std::nullopt;
  for (std::size_t i = 0; i < l; ++i) {
    if (img.degree(i) != 2) return std::nullopt;
  }
  // 2-regular: a disjoint union of cycles. Walk from the smallest point and
  // require the walk to cover everything.
  std::vector<std::size_t> order{0};
  std::size_t prev = 0;
  std::size_t cur = img.neighbors(0)[0];  // adjacency rows are sorted
  while (cur != 0) {
    order.push_back(cur);
    const auto nb = img.neighbors(cur);
    const std::size_t next = nb[0] == prev ? nb[1] : nb[0];
    prev = cur;
    cur = next;
  }
  if (order.size() != l) return std::nullopt;
  return CyclicCurve(img, std::move(order));
}

/// Bounded backtracking search for a simple closed curve with l points in
/// Z^n under k(t,n)-adjacency. The walk starts at the origin, stays inside
/// [-l, l]^n and places each point so that it touches only its predecessor
/// (and, for the last point, the start). Sound but incomplete: nullopt means
/// nothing was found within `node_budget` placements or the box, not that no
/// such curve exists.
inline std::optional<DigitalImage> generate_sc(int n, int t, int l,
                                               std::size_t node_budget = 1'000'000) {
  if (n < 2) throw DomainError("simple closed curves need n >= 2");
  const AdjacencySpec spec(n, t);
  if (l < 4) throw DomainError("simple closed curves need l >= 4");
  const auto offsets = adjacency_offsets(spec);
  const auto len = static_cast<std::size_t>(l);
  std::vector<Point> path{Point::origin(static_cast<std::size_t>(n))};
  std::size_t nodes = 0;
  bool exhausted = false;

  std::function<bool()> extend = [&]() -> bool {
    const std::size_t i = path.size();
    if (i == len) return true;
    const Point last = path.back();
    for (const auto& off : offsets) {
      std::vector<Coord> c(last.coords());
      bool in_box = true;
      for (std::size_t d = 0; d < c.size(); ++d) {
        c[d] += off[d];
        if (c[d] < -l || c[d] > l) in_box = false;
      }
      if (!in_box) continue;
      Point q(std::move(c));
      // Closing the curve from index i takes l - i more steps.
      if (detail::lattice_step_distance(q, path[0], t) > len - i) continue;
      bool ok = true;
      for (std::size_t j = 0; j + 1 < i && ok; ++j) {
        const bool must_touch = (j == 0 && i == len - 1);
        if (q == path[j] || adjacent(q, path[j], spec) != must_touch) ok = false;
      }
      if (!ok) continue;
      if (++nodes > node_budget) {
        exhausted = true;
        return false;
      }
      path.push_back(std::move(q));
      if (extend()) return true;
      if (exhausted) return false;
      path.pop_back();
    }
    return false;
  };

  if (!extend()) return std::nullopt;
  DigitalImage img(spec, path);
  if (!recognize_sc(img)) return std::nullopt;
  return img;
}

}  // namespace digitop
