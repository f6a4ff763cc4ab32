#pragma once

// Maps between digital images and the continuity / isomorphism hierarchy:
// continuity, isomorphism, local isomorphism and its radius-2 strengthening.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "digitop/errors.hpp"
#include "digitop/lattice.hpp"

namespace digitop {

using Assignment = std::vector<std::size_t>;

// A total function between two digital images, stored as codomain indices
// per domain index.
class DigitalMap {
 public:
  DigitalMap(DigitalImage domain, DigitalImage codomain, Assignment assignment)
      : domain_(std::move(domain)), codomain_(std::move(codomain)), assign_(std::move(assignment)) {
    if (assign_.size() != domain_.size()) {
      throw DomainError("map assigns " + std::to_string(assign_.size()) + " points, domain has " +
                        std::to_string(domain_.size()));
    }
    for (std::size_t y : assign_) {
      if (y >= codomain_.size()) throw DomainError("map target outside the codomain");
    }
  }

  static DigitalMap from_pairs(DigitalImage domain, DigitalImage codomain,
                               std::span<const std::pair<Point, Point>> pairs) {
    Assignment a(domain.size(), kUnreachable);
    for (const auto& [x, y] : pairs) {
      const std::size_t i = domain.require_index(x);
      if (a[i] != kUnreachable) throw DomainError("point " + to_string(x) + " assigned twice");
      const auto j = codomain.index_of(y);
      if (!j) throw DomainError("target " + to_string(y) + " is not in the codomain");
      a[i] = *j;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == kUnreachable) throw DomainError("no image for " + to_string(domain.point(i)));
    }
    return DigitalMap(std::move(domain), std::move(codomain), std::move(a));
  }

  static DigitalMap identity(const DigitalImage& img) {
    Assignment a(img.size());
    for (std::size_t i = 0; i < a.size(); ++i) a[i] = i;
    return DigitalMap(img, img, std::move(a));
  }

  static DigitalMap constant(const DigitalImage& domain, const DigitalImage& codomain,
                             const Point& value) {
    return DigitalMap(domain, codomain, Assignment(domain.size(), codomain.require_index(value)));
  }

  const DigitalImage& domain() const noexcept { return domain_; }
  const DigitalImage& codomain() const noexcept { return codomain_; }
  const Assignment& assignment() const noexcept { return assign_; }

  std::size_t operator()(std::size_t x) const { return assign_.at(x); }
  const Point& image_of(const Point& x) const {
    return codomain_.point(assign_[domain_.require_index(x)]);
  }

  std::vector<std::pair<Point, Point>> pairs() const {
    std::vector<std::pair<Point, Point>> out;
    for (std::size_t i = 0; i < assign_.size(); ++i) {
      out.emplace_back(domain_.point(i), codomain_.point(assign_[i]));
    }
    return out;
  }

  friend bool operator==(const DigitalMap& a, const DigitalMap& b) {
    return a.assign_ == b.assign_ && a.domain_ == b.domain_ && a.codomain_ == b.codomain_;
  }

 private:
  DigitalImage domain_;
  DigitalImage codomain_;
  Assignment assign_;
};

// g after f.
inline DigitalMap compose(const DigitalMap& g, const DigitalMap& f) {
  if (!(f.codomain() == g.domain())) throw DomainError("compose: codomain/domain mismatch");
  Assignment a(f.domain().size());
  for (std::size_t i = 0; i < a.size(); ++i) a[i] = g(f(i));
  return DigitalMap(f.domain(), g.codomain(), std::move(a));
}

inline bool is_bijective(const DigitalMap& f) {
  if (f.domain().size() != f.codomain().size()) return false;
  std::vector<bool> hit(f.codomain().size(), false);
  for (std::size_t y : f.assignment()) {
    if (hit[y]) return false;
    hit[y] = true;
  }
  return true;
}

inline std::optional<DigitalMap> inverse(const DigitalMap& f) {
  if (!is_bijective(f)) return std::nullopt;
  Assignment a(f.codomain().size());
  for (std::size_t i = 0; i < f.assignment().size(); ++i) a[f(i)] = i;
  return DigitalMap(f.codomain(), f.domain(), std::move(a));
}

// Adjacent domain pairs (i < j) whose images are neither equal nor adjacent.
inline std::vector<std::pair<std::size_t, std::size_t>> continuity_violations(const DigitalMap& f) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& x = f.domain();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j : x.neighbors(i)) {
      if (j <= i) continue;
      if (f(i) != f(j) && !f.codomain().are_adjacent(f(i), f(j))) out.emplace_back(i, j);
    }
  }
  return out;
}

/// (k1,k2)-continuity in its adjacency form: adjacent points go to equal or
/// adjacent points. Equivalent to f(N(x,1)) being inside N(f(x),1) for all x.
inline bool is_continuous(const DigitalMap& f) {
  const auto& x = f.domain();
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j : x.neighbors(i)) {
      if (f(i) != f(j) && !f.codomain().are_adjacent(f(i), f(j))) return false;
    }
  }
  return true;
}

inline constexpr std::size_t kRosenfeldMaxDomain = 20;

namespace detail {

// Connectivity of the subset `members` of img under induced adjacency.
inline bool subset_connected(const DigitalImage& img, const std::vector<std::size_t>& members) {
  if (members.size() <= 1) return true;
  std::vector<char> in(img.size(), 0);
  for (std::size_t m : members) in[m] = 1;
  std::vector<char> seen(img.size(), 0);
  std::vector<std::size_t> stack{members[0]};
  seen[members[0]] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : img.neighbors(u)) {
      if (in[v] && !seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == members.size();
}

}  // namespace detail

/// Continuity in the connected-subset form: the image of every connected
/// subset of the domain is connected. Enumerates all 2^|X| subsets, so the
/// domain is capped at kRosenfeldMaxDomain points.
inline bool is_continuous_rosenfeld(const DigitalMap& f) {
  const std::size_t n = f.domain().size();
  if (n > kRosenfeldMaxDomain) {
    throw CapacityError("connected-subset continuity check limited to " +
                        std::to_string(kRosenfeldMaxDomain) + " domain points");
  }
  std::vector<std::size_t> subset;
  std::vector<std::size_t> image;
  for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
    subset.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) subset.push_back(i);
    }
    if (!detail::subset_connected(f.domain(), subset)) continue;
    image.clear();
    for (std::size_t i : subset) image.push_back(f(i));
    std::sort(image.begin(), image.end());
    image.erase(std::unique(image.begin(), image.end()), image.end());
    if (!detail::subset_connected(f.codomain(), image)) return false;
  }
  return true;
}

inline bool is_isomorphism(const DigitalMap& h) {
  const auto inv = inverse(h);
  return inv && is_continuous(h) && is_continuous(*inv);
}

inline constexpr std::size_t kIsomorphismMaxSize = 12;

/// Backtracking search for a (k1,k2)-isomorphism X -> Y. Domain points are
/// placed in order of decreasing degree; a candidate target must match the
/// degree and have the same adjacency to every already-placed point.
inline std::optional<DigitalMap> find_isomorphism(const DigitalImage& x, const DigitalImage& y,
                                                  std::size_t max_size = kIsomorphismMaxSize) {
  if (x.size() != y.size()) return std::nullopt;
  if (x.size() > max_size) {
    throw CapacityError("isomorphism search limited to " + std::to_string(max_size) + " points");
  }
  if (x == y) return DigitalMap::identity(x);
  const std::size_t n = x.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x.degree(a) > x.degree(b); });

  Assignment assign(n, kUnreachable);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> place = [&](std::size_t pos) -> bool {
    if (pos == n) return true;
    const std::size_t xi = order[pos];
    for (std::size_t yi = 0; yi < n; ++yi) {
      if (used[yi] || y.degree(yi) != x.degree(xi)) continue;
      bool consistent = true;
      for (std::size_t q = 0; q < pos && consistent; ++q) {
        const std::size_t xp = order[q];
        consistent = x.are_adjacent(xi, xp) == y.are_adjacent(yi, assign[xp]);
      }
      if (!consistent) continue;
      assign[xi] = yi;
      used[yi] = true;
      if (place(pos + 1)) return true;
      used[yi] = false;
    }
    assign[xi] = kUnreachable;
    return false;
  };
  if (!place(0)) return std::nullopt;
  DigitalMap h(x, y, std::move(assign));
  if (!is_isomorphism(h)) return std::nullopt;
  return h;
}

/// Whether h maps N(x, eps) isomorphically onto N(h(x), eps), with both
/// neighborhoods carrying the adjacency induced from their images.
inline bool restricts_to_isomorphism(const DigitalMap& h, std::size_t x, std::size_t eps) {
  const auto nx = neighborhood_indices(h.domain(), x, eps);
  const auto ny = neighborhood_indices(h.codomain(), h(x), eps);
  if (nx.size() != ny.size()) return false;
  std::vector<std::size_t> img;
  img.reserve(nx.size());
  for (std::size_t a : nx) img.push_back(h(a));
  std::vector<std::size_t> sorted = img;
  std::sort(sorted.begin(), sorted.end());
  if (sorted != ny) return false;  // not a bijection onto N(h(x), eps)
  for (std::size_t a = 0; a < nx.size(); ++a) {
    for (std::size_t b = a + 1; b < nx.size(); ++b) {
      if (h.domain().are_adjacent(nx[a], nx[b]) != h.codomain().are_adjacent(img[a], img[b])) {
        return false;
      }
    }
  }
  return true;
}

// Domain indices at which the radius-eps restriction fails.
inline std::vector<std::size_t> local_isomorphism_failures(const DigitalMap& h, std::size_t eps) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < h.domain().size(); ++x) {
    if (!restricts_to_isomorphism(h, x, eps)) out.push_back(x);
  }
  return out;
}

inline bool is_local_isomorphism(const DigitalMap& h) {
  for (std::size_t x = 0; x < h.domain().size(); ++x) {
    if (!restricts_to_isomorphism(h, x, 1)) return false;
  }
  return true;
}

inline bool is_radius2_local_isomorphism(const DigitalMap& h) {
  for (std::size_t x = 0; x < h.domain().size(); ++x) {
    if (!restricts_to_isomorphism(h, x, 2)) return false;
  }
  return true;
}

// The interval [a, b] of Z with 2-adjacency.
inline DigitalImage integer_interval(Coord a, Coord b) {
  if (a > b) throw DomainError("empty interval");
  std::vector<Point> pts;
  for (Coord c = a; c <= b; ++c) pts.push_back(Point{c});
  return DigitalImage(AdjacencySpec(1, 1), std::move(pts));
}

/// A finite window [a, b] of (Z, 2) wrapped around a simple closed curve:
/// t goes to the curve point with position (t + phase) mod l. Points of
/// [a+2, b-2] are interior: their radius-1 and radius-2 neighborhoods in the
/// window agree with those in all of Z.
class WindowedLineMap {
 public:
  WindowedLineMap(Coord a, Coord b, CyclicCurve target, Coord phase = 0)
      : a_(a), b_(b), phase_(phase), target_(std::move(target)), map_(build(a, b, target_, phase)) {}

  Coord window_min() const noexcept { return a_; }
  Coord window_max() const noexcept { return b_; }
  Coord phase() const noexcept { return phase_; }
  const CyclicCurve& target() const noexcept { return target_; }
  const DigitalMap& map() const noexcept { return map_; }

  std::vector<Coord> interior_points() const {
    std::vector<Coord> out;
    for (Coord t = a_ + 2; t <= b_ - 2; ++t) out.push_back(t);
    return out;
  }

  bool radius_condition_at(Coord t, std::size_t eps) const {
    if (t < a_ || t > b_) throw DomainError("point outside the window");
    return restricts_to_isomorphism(map_, static_cast<std::size_t>(t - a_), eps);
  }

 private:
  static DigitalMap build(Coord a, Coord b, const CyclicCurve& target, Coord phase) {
    auto window = integer_interval(a, b);
    Assignment assign;
    for (Coord t = a; t <= b; ++t) assign.push_back(target.index_at(t + phase));
    return DigitalMap(std::move(window), target.image(), std::move(assign));
  }

  Coord a_;
  Coord b_;
  Coord phase_;
  CyclicCurve target_;
  DigitalMap map_;
};

struct InteriorVerdict {
  Coord t;
  bool radius1;
  bool radius2;
};

struct Example1Report {
  std::size_t l;
  Coord window_min;
  Coord window_max;
  std::vector<Point> curve;  // cyclic order of the target curve
  std::vector<InteriorVerdict> interior;
  bool radius1_all;
  bool radius2_all;
};

/// Wraps [0, window_len] around a generated 8-curve with l points in Z^2 and
/// checks both local conditions at every interior point.
inline Example1Report windowed_example1_report(std::size_t l, std::size_t window_len) {
  if (l < 4) throw DomainError("curve length must be at least 4");
  if (window_len < 2 * l + 5) throw DomainError("window must have length at least 2l + 5");
  const auto img = generate_sc(2, 2, static_cast<int>(l));
  if (!img) throw CapacityError("no 8-curve with " + std::to_string(l) + " points found in Z^2");
  auto curve = recognize_sc(*img);
  WindowedLineMap p(0, static_cast<Coord>(window_len), *curve);
  Example1Report report{l, 0, static_cast<Coord>(window_len), curve->points(), {}, true, true};
  for (Coord t : p.interior_points()) {
    InteriorVerdict v{t, p.radius_condition_at(t, 1), p.radius_condition_at(t, 2)};
    report.radius1_all = report.radius1_all && v.radius1;
    report.radius2_all = report.radius2_all && v.radius2;
    report.interior.push_back(v);
  }
  return report;
}

}  // namespace digitop
