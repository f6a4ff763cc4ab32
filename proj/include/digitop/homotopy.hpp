#pragma once

// Digital homotopies as explicit stage tables, their three verifiers
// (stagewise continuity; plus continuous point tracks; plus a fixed subset),
// and bounded searches built on them: homotopies, pointed contractions,
// strong deformation retracts, homotopic thinning and homotopy equivalences.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "digitop/errors.hpp"
#include "digitop/lattice.hpp"
#include "digitop/maps.hpp"

namespace digitop {

enum class HomotopyVariant { khalimsky, boxer, rel };

inline std::string to_string(HomotopyVariant v) {
  switch (v) {
    case HomotopyVariant::khalimsky: return "khalimsky";
    case HomotopyVariant::boxer: return "boxer";
    case HomotopyVariant::rel: return "rel";
  }
  return "?";
}

// Budgets for the bounded searches. Exhausting one raises CapacityError.
struct SearchBudget {
  std::size_t map_nodes = 250'000;    // distinct maps visited by a homotopy search
  std::size_t retractions = 50'000;   // candidate retractions per retract search
};

/// H : X x [0, m] -> Y as m + 1 dense stage assignments. The constructor
/// checks shapes only; whether stage 0 is f and stage m is g is left to the
/// verifiers so that a bad homotopy can be rejected rather than unbuildable.
class Homotopy {
 public:
  Homotopy(DigitalMap source, DigitalMap target, std::vector<Assignment> stages)
      : source_(std::move(source)), target_(std::move(target)), stages_(std::move(stages)) {
    if (!(source_.domain() == target_.domain()) || !(source_.codomain() == target_.codomain())) {
      throw DomainError("homotopy endpoints must share domain and codomain");
    }
    if (stages_.empty()) throw DomainError("a homotopy needs at least one stage");
    for (const auto& s : stages_) static_cast<void>(DigitalMap(source_.domain(), source_.codomain(), s));
  }

  // The stage list f, ..., g of a path of maps.
  static Homotopy from_path(std::vector<Assignment> stages, const DigitalImage& x,
                            const DigitalImage& y) {
    DigitalMap f(x, y, stages.front());
    DigitalMap g(x, y, stages.back());
    return Homotopy(std::move(f), std::move(g), std::move(stages));
  }

  const DigitalMap& source() const noexcept { return source_; }
  const DigitalMap& target() const noexcept { return target_; }
  const DigitalImage& domain() const noexcept { return source_.domain(); }
  const DigitalImage& codomain() const noexcept { return source_.codomain(); }
  std::size_t steps() const noexcept { return stages_.size() - 1; }
  const std::vector<Assignment>& stages() const noexcept { return stages_; }
  DigitalMap stage(std::size_t t) const { return DigitalMap(domain(), codomain(), stages_.at(t)); }

  Homotopy reversed() const {
    std::vector<Assignment> s(stages_.rbegin(), stages_.rend());
    return Homotopy(target_, source_, std::move(s));
  }

 private:
  DigitalMap source_;
  DigitalMap target_;
  std::vector<Assignment> stages_;
};

// H followed by K; K must start where H ends.
inline Homotopy concatenate(const Homotopy& h, const Homotopy& k) {
  if (!(h.target() == k.source())) throw DomainError("concatenate: endpoints do not match");
  std::vector<Assignment> s = h.stages();
  s.insert(s.end(), k.stages().begin() + 1, k.stages().end());
  return Homotopy(h.source(), k.target(), std::move(s));
}

// Individual homotopy conditions, evaluated independently.
struct HomotopyChecks {
  bool endpoints = false;          // stage 0 = f, stage m = g
  bool stages_continuous = false;  // every H_t is continuous
  bool tracks_continuous = false;  // every H_x is (2,k2)-continuous
  bool rel_fixed = false;          // every stage equals f = g on the rel set
};

namespace detail {

inline std::vector<std::size_t> rel_indices(const DigitalImage& x, std::span<const Point> rel) {
  std::vector<std::size_t> out;
  for (const Point& p : rel) {
    const auto i = x.index_of(p);
    if (!i) throw DomainError("rel point " + to_string(p) + " is not in the domain");
    out.push_back(*i);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace detail

inline HomotopyChecks check_homotopy(const Homotopy& h, std::span<const Point> rel = {}) {
  const auto fixed = detail::rel_indices(h.domain(), rel);
  HomotopyChecks c;
  const auto& stages = h.stages();
  c.endpoints = stages.front() == h.source().assignment() && stages.back() == h.target().assignment();
  c.stages_continuous = std::all_of(stages.begin(), stages.end(), [&](const Assignment& s) {
    return is_continuous(DigitalMap(h.domain(), h.codomain(), s));
  });
  c.tracks_continuous = true;
  for (std::size_t t = 0; t + 1 < stages.size() && c.tracks_continuous; ++t) {
    for (std::size_t x = 0; x < h.domain().size(); ++x) {
      const std::size_t a = stages[t][x];
      const std::size_t b = stages[t + 1][x];
      if (a != b && !h.codomain().are_adjacent(a, b)) {
        c.tracks_continuous = false;
        break;
      }
    }
  }
  c.rel_fixed = true;
  for (std::size_t x : fixed) {
    const std::size_t fx = h.source()(x);
    if (h.target()(x) != fx) c.rel_fixed = false;
    for (const auto& s : stages) {
      if (s[x] != fx) c.rel_fixed = false;
    }
  }
  return c;
}

// The printed stage-only definition: endpoints plus continuity of every
// stage. It places no condition between consecutive stages.
inline bool verify_khalimsky(const Homotopy& h) {
  const auto c = check_homotopy(h);
  return c.endpoints && c.stages_continuous;
}

inline bool verify_boxer(const Homotopy& h) {
  const auto c = check_homotopy(h);
  return c.endpoints && c.stages_continuous && c.tracks_continuous;
}

inline bool verify_rel(const Homotopy& h, std::span<const Point> rel) {
  const auto c = check_homotopy(h, rel);
  return c.endpoints && c.stages_continuous && c.tracks_continuous && c.rel_fixed;
}

inline bool verify(const Homotopy& h, HomotopyVariant variant, std::span<const Point> rel = {}) {
  switch (variant) {
    case HomotopyVariant::khalimsky: return verify_khalimsky(h);
    case HomotopyVariant::boxer: return verify_boxer(h);
    case HomotopyVariant::rel: return verify_rel(h, rel);
  }
  return false;
}

/// Calls `visit` for every continuous map X -> Y in lexicographic order of
/// assignments. Points listed in `fixed` keep the value given in `preset`;
/// `candidates(x, scratch)` narrows the choices for the other points. Enumeration stops as soon
/// as `visit` returns false.
inline void for_each_continuous_map(
    const DigitalImage& x, const DigitalImage& y, const std::function<bool(const Assignment&)>& visit,
    const Assignment& preset = {}, const std::vector<bool>& fixed = {},
    const std::function<std::span<const std::size_t>(std::size_t, std::vector<std::size_t>&)>&
        candidates = {}) {
  const std::size_t n = x.size();
  Assignment cur(n, kUnreachable);
  std::vector<std::size_t> all(y.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  bool stop = false;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (stop) return;
    if (i == n) {
      if (!visit(cur)) stop = true;
      return;
    }
    std::vector<std::size_t> scratch;
    std::span<const std::size_t> choices;
    if (!fixed.empty() && fixed[i]) {
      scratch.push_back(preset[i]);
      choices = scratch;
    } else if (candidates) {
      choices = candidates(i, scratch);
    } else {
      choices = all;
    }
    for (std::size_t c : choices) {
      bool ok = true;
      for (std::size_t j : x.neighbors(i)) {
        // Earlier points are assigned; fixed later points are known too.
        const bool known = j < i || (!fixed.empty() && fixed[j]);
        if (!known) continue;
        const std::size_t v = j < i ? cur[j] : preset[j];
        if (v != c && !y.are_adjacent(v, c)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      cur[i] = c;
      rec(i + 1);
      if (stop) return;
    }
    cur[i] = kUnreachable;
  };
  rec(0);
}

namespace detail {

struct AssignmentHash {
  std::size_t operator()(const Assignment& a) const noexcept {
    std::size_t h = 0x84222325cbf29ce4ULL;
    for (std::size_t v : a) h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
  }
};

// Shortest Boxer path of continuous maps from f to g with the `fixed`
// points held in place, at most m_max steps. Each step moves every point to
// itself or an adjacent point; a point that is still further from its goal
// than the remaining steps allow is pruned.
inline std::optional<std::vector<Assignment>> boxer_path(const DigitalMap& f, const DigitalMap& g,
                                                         std::size_t m_max,
                                                         const std::vector<bool>& fixed,
                                                         const SearchBudget& budget) {
  const auto& x = f.domain();
  const auto& y = f.codomain();
  if (f.assignment() == g.assignment()) return std::vector<Assignment>{f.assignment()};
  if (m_max == 0) return std::nullopt;

  std::vector<std::vector<std::size_t>> to_goal(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) to_goal[i] = distances_from(y, g(i));
  auto reachable = [&](const Assignment& a, std::size_t remaining) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (to_goal[i][a[i]] > remaining) return false;
    }
    return true;
  };
  if (!reachable(f.assignment(), m_max)) return std::nullopt;

  std::vector<Assignment> nodes{f.assignment()};
  std::vector<std::size_t> parent{kUnreachable};
  std::vector<std::size_t> depth{0};
  std::unordered_map<Assignment, std::size_t, AssignmentHash> seen{{f.assignment(), 0}};
  std::deque<std::size_t> queue{0};
  std::optional<std::size_t> found;

  while (!queue.empty() && !found) {
    const std::size_t id = queue.front();
    queue.pop_front();
    if (depth[id] == m_max) continue;
    const Assignment base = nodes[id];
    const std::size_t next_depth = depth[id] + 1;
    auto step_choices = [&](std::size_t i, std::vector<std::size_t>& scratch) {
      scratch.clear();
      scratch.push_back(base[i]);
      for (std::size_t v : y.neighbors(base[i])) scratch.push_back(v);
      std::sort(scratch.begin(), scratch.end());
      return std::span<const std::size_t>(scratch);
    };
    for_each_continuous_map(
        x, y,
        [&](const Assignment& next) {
          if (seen.contains(next) || !reachable(next, m_max - next_depth)) return true;
          if (seen.size() >= budget.map_nodes) {
            throw CapacityError("homotopy search exceeded " + std::to_string(budget.map_nodes) +
                                " maps");
          }
          const std::size_t nid = nodes.size();
          seen.emplace(next, nid);
          nodes.push_back(next);
          parent.push_back(id);
          depth.push_back(next_depth);
          if (next == g.assignment()) {
            found = nid;
            return false;
          }
          queue.push_back(nid);
          return true;
        },
        base, fixed, step_choices);
  }
  if (!found) return std::nullopt;
  std::vector<Assignment> path;
  for (std::size_t id = *found; id != kUnreachable; id = parent[id]) path.push_back(nodes[id]);
  std::reverse(path.begin(), path.end());
  return path;
}

inline void require_same_ends(const DigitalMap& f, const DigitalMap& g) {
  if (!(f.domain() == g.domain()) || !(f.codomain() == g.codomain())) {
    throw DomainError("maps must share domain and codomain");
  }
}

}  // namespace detail

/// Bounded search for a homotopy f ~ g with at most m_max steps.
///
/// Boxer and rel searches run breadth-first over the graph of continuous
/// maps X -> Y, joining two maps when every point moves by at most one step,
/// so the returned homotopy has the fewest steps possible. The khalimsky
/// variant needs no search: two stages f, g already satisfy it. nullopt
/// means no homotopy within m_max steps; running out of budget throws
/// CapacityError instead.
inline std::optional<Homotopy> search_homotopy(const DigitalMap& f, const DigitalMap& g,
                                               std::size_t m_max, HomotopyVariant variant,
                                               std::span<const Point> rel = {},
                                               const SearchBudget& budget = {}) {
  detail::require_same_ends(f, g);
  if (!is_continuous(f) || !is_continuous(g)) {
    throw DomainError("homotopy search needs continuous endpoint maps");
  }
  const auto& x = f.domain();
  const auto fixed_idx = variant == HomotopyVariant::rel ? detail::rel_indices(x, rel)
                                                         : std::vector<std::size_t>{};
  std::vector<bool> fixed(x.size(), false);
  for (std::size_t i : fixed_idx) {
    if (f(i) != g(i)) return std::nullopt;
    fixed[i] = true;
  }

  std::optional<Homotopy> h;
  if (f == g) {
    h = Homotopy(f, g, {f.assignment()});
  } else if (variant == HomotopyVariant::khalimsky) {
    if (m_max >= 1) h = Homotopy(f, g, {f.assignment(), g.assignment()});
  } else if (auto path = detail::boxer_path(f, g, m_max, fixed, budget)) {
    h = Homotopy(f, g, std::move(*path));
  }
  if (h && !verify(*h, variant, rel)) {
    throw std::logic_error("search_homotopy produced an invalid homotopy");
  }
  return h;
}

// A homotopy rel {x0} from the identity of X to the constant map at x0.
inline std::optional<Homotopy> is_pointed_contractible(const DigitalImage& x, const Point& x0,
                                                       std::size_t m_max,
                                                       const SearchBudget& budget = {}) {
  x.require_index(x0);
  const Point rel[] = {x0};
  return search_homotopy(DigitalMap::identity(x), DigitalMap::constant(x, x, x0), m_max,
                         HomotopyVariant::rel, rel, budget);
}

// r : X -> X continuous, with image inside A and fixing A pointwise.
inline bool is_retraction(const DigitalMap& r, std::span<const Point> retained) {
  const auto& x = r.domain();
  const auto a = detail::rel_indices(x, retained);
  if (!(r.codomain() == x)) return false;
  std::vector<bool> in_a(x.size(), false);
  for (std::size_t i : a) in_a[i] = true;
  for (std::size_t i : a) {
    if (r(i) != i) return false;
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!in_a[r(i)]) return false;
  }
  return is_continuous(r);
}

// A retraction r of X onto A with a homotopy rel A from i o r to 1_X.
struct RetractCertificate {
  DigitalMap retraction;
  Homotopy homotopy;
  std::vector<Point> retained;
};

inline bool verify_certificate(const RetractCertificate& cert) {
  const auto& x = cert.retraction.domain();
  return is_retraction(cert.retraction, cert.retained) &&
         cert.homotopy.source() == cert.retraction &&
         cert.homotopy.target() == DigitalMap::identity(x) &&
         verify_rel(cert.homotopy, cert.retained);
}

/// Tries the retractions of X onto A in lexicographic order and returns the
/// first one admitting a homotopy rel A from i o r to the identity with at
/// most m_max steps. Throws CapacityError when no certificate was found and
/// some part of the search ran out of budget.
inline std::optional<RetractCertificate> find_strong_deformation_retract(
    const DigitalImage& x, std::span<const Point> retained, std::size_t m_max,
    const SearchBudget& budget = {}) {
  const auto a = detail::rel_indices(x, retained);
  if (a.empty()) throw DomainError("the retained set must be nonempty");
  std::vector<Point> kept;
  for (std::size_t i : a) kept.push_back(x.point(i));

  Assignment preset(x.size(), kUnreachable);
  std::vector<bool> fixed(x.size(), false);
  for (std::size_t i : a) {
    preset[i] = i;
    fixed[i] = true;
  }
  // A point's track runs from r(x) back to x, so r(x) lies within m_max.
  std::vector<std::vector<std::size_t>> choices(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (fixed[i]) continue;
    const auto dist = distances_from(x, i, m_max);
    for (std::size_t j : a) {
      if (dist[j] <= m_max) choices[i].push_back(j);
    }
  }

  const auto id = DigitalMap::identity(x);
  std::size_t tried = 0;
  bool inconclusive = false;
  std::optional<RetractCertificate> cert;
  for_each_continuous_map(
      x, x,
      [&](const Assignment& r_assign) {
        if (++tried > budget.retractions) {
          throw CapacityError("retraction enumeration exceeded " +
                              std::to_string(budget.retractions) + " candidates");
        }
        DigitalMap r(x, x, r_assign);
        try {
          if (auto h = search_homotopy(r, id, m_max, HomotopyVariant::rel, kept, budget)) {
            cert = RetractCertificate{std::move(r), std::move(*h), kept};
            return false;
          }
        } catch (const CapacityError&) {
          inconclusive = true;
        }
        return true;
      },
      preset, fixed,
      [&](std::size_t i, std::vector<std::size_t>&) { return std::span<const std::size_t>(choices[i]); });

  if (cert) {
    if (!verify_certificate(*cert)) {
      throw std::logic_error("strong deformation retract search produced an invalid certificate");
    }
    return cert;
  }
  if (inconclusive) throw CapacityError("strong deformation retract search inconclusive");
  return std::nullopt;
}

struct ThinningStep {
  Point deleted;
  RetractCertificate certificate;
};

struct ThinningLog {
  DigitalImage initial;
  std::vector<ThinningStep> steps;
  DigitalImage result;
};

/// Homotopic thinning: scan the current image in lexicographic order and
/// delete each point p for which X \ {p} is a certified strong deformation
/// retract; repeat until a full pass deletes nothing. The result depends on
/// the scan order.
inline ThinningLog thin(const DigitalImage& x, std::size_t m_max, const SearchBudget& budget = {}) {
  ThinningLog log{x, {}, x};
  bool changed = true;
  while (changed) {
    changed = false;
    const std::vector<Point> snapshot(log.result.points().begin(), log.result.points().end());
    for (const Point& p : snapshot) {
      if (log.result.size() <= 1) break;
      const DigitalImage rest = log.result.without(p);
      const std::vector<Point> kept(rest.points().begin(), rest.points().end());
      std::optional<RetractCertificate> cert;
      try {
        cert = find_strong_deformation_retract(log.result, kept, m_max, budget);
      } catch (const CapacityError&) {
        continue;
      }
      if (!cert) continue;
      log.steps.push_back(ThinningStep{p, std::move(*cert)});
      log.result = rest;
      changed = true;
    }
  }
  return log;
}

// Re-checks every deletion of a thinning log from scratch.
inline bool replay(const ThinningLog& log) {
  DigitalImage cur = log.initial;
  for (const auto& step : log.steps) {
    const auto& cert = step.certificate;
    if (!cur.contains(step.deleted) || !(cert.retraction.domain() == cur)) return false;
    const DigitalImage rest = cur.without(step.deleted);
    if (!std::equal(rest.points().begin(), rest.points().end(), cert.retained.begin(),
                    cert.retained.end())) {
      return false;
    }
    if (!verify_certificate(cert)) return false;
    cur = rest;
  }
  return cur == log.result;
}

// f : X -> Y and g : Y -> X with homotopies g o f ~ 1_X and f o g ~ 1_Y.
struct HomotopyEquivalence {
  DigitalMap f;
  DigitalMap g;
  Homotopy gf_to_identity;
  Homotopy fg_to_identity;
};

/// Bounded search for a homotopy equivalence between X and Y. Equal images
/// and isomorphic images are answered directly; otherwise pairs (f, g) of
/// continuous maps are tried in lexicographic order and both composites are
/// searched for Boxer homotopies to the identity with at most m_max steps.
inline std::optional<HomotopyEquivalence> are_homotopy_equivalent(const DigitalImage& x,
                                                                  const DigitalImage& y,
                                                                  std::size_t m_max,
                                                                  const SearchBudget& budget = {}) {
  const auto id_x = DigitalMap::identity(x);
  const auto id_y = DigitalMap::identity(y);
  auto trivial = [&](const DigitalMap& f, const DigitalMap& g) {
    return HomotopyEquivalence{f, g, Homotopy(id_x, id_x, {id_x.assignment()}),
                               Homotopy(id_y, id_y, {id_y.assignment()})};
  };
  if (x == y) return trivial(id_x, id_x);
  if (x.size() == y.size() && x.size() <= kIsomorphismMaxSize) {
    if (auto iso = find_isomorphism(x, y)) return trivial(*iso, *inverse(*iso));
  }

  enum class Cached { found, absent, inconclusive };
  std::unordered_map<Assignment, std::pair<Cached, std::optional<Homotopy>>, detail::AssignmentHash>
      cache_x, cache_y;
  auto lookup = [&](auto& cache, const DigitalMap& composite, const DigitalMap& id) {
    auto it = cache.find(composite.assignment());
    if (it == cache.end()) {
      std::pair<Cached, std::optional<Homotopy>> entry{Cached::absent, std::nullopt};
      try {
        entry.second = search_homotopy(composite, id, m_max, HomotopyVariant::boxer, {}, budget);
        if (entry.second) entry.first = Cached::found;
      } catch (const CapacityError&) {
        entry.first = Cached::inconclusive;
      }
      it = cache.emplace(composite.assignment(), std::move(entry)).first;
    }
    return &it->second;
  };

  std::size_t pairs = 0;
  bool inconclusive = false;
  std::optional<HomotopyEquivalence> out;
  for_each_continuous_map(x, y, [&](const Assignment& fa) {
    const DigitalMap f(x, y, fa);
    for_each_continuous_map(y, x, [&](const Assignment& ga) {
      if (++pairs > budget.map_nodes) {
        throw CapacityError("homotopy equivalence search exceeded " +
                            std::to_string(budget.map_nodes) + " map pairs");
      }
      const DigitalMap g(y, x, ga);
      const auto* gf = lookup(cache_x, compose(g, f), id_x);
      if (gf->first == Cached::inconclusive) inconclusive = true;
      if (gf->first != Cached::found) return true;
      const auto* fg = lookup(cache_y, compose(f, g), id_y);
      if (fg->first == Cached::inconclusive) inconclusive = true;
      if (fg->first != Cached::found) return true;
      out = HomotopyEquivalence{f, g, *gf->second, *fg->second};
      return false;
    });
    return !out;
  });
  if (out) return out;
  if (inconclusive) throw CapacityError("homotopy equivalence search inconclusive");
  return std::nullopt;
}

}  // namespace digitop
