#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hmetric/algebra.hpp"
#include "hmetric/errors.hpp"
#include "hmetric/limits.hpp"
#include "hmetric/point_set.hpp"
#include "hmetric/wordlang.hpp"

namespace hmetric {

/// Finite set of named points with a dense distance matrix over a value
/// algebra. Construction checks shapes only; `validate_space` checks the
/// metric axioms.
template <ValueAlgebra A>
class MetricSpace {
 public:
  using algebra_type = A;
  using value_type = typename A::value_type;

  MetricSpace(std::shared_ptr<const A> alg, std::vector<std::string> points, std::vector<value_type> dist)
      : alg_(std::move(alg)), points_(std::move(points)), dist_(std::move(dist)) {
    if (!alg_) throw std::invalid_argument("metric space needs an algebra");
    if (dist_.size() != points_.size() * points_.size())
      throw std::invalid_argument("distance matrix does not match the point count");
  }

  const A& algebra() const { return *alg_; }
  const std::shared_ptr<const A>& algebra_ptr() const { return alg_; }
  std::size_t size() const { return points_.size(); }
  const std::vector<std::string>& points() const { return points_; }
  const std::string& point(std::size_t x) const { return points_[x]; }
  const value_type& d(std::size_t x, std::size_t y) const { return dist_[x * size() + y]; }
  const std::vector<value_type>& matrix() const { return dist_; }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < points_.size(); ++i)
      if (points_[i] == name) return i;
    return std::nullopt;
  }
  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw std::invalid_argument("unknown point '" + std::string(name) + "'");
  }

  MetricSpace restrict_to(const std::vector<std::size_t>& subset) const {
    std::vector<std::string> pts;
    std::vector<value_type> m;
    for (auto x : subset) pts.push_back(points_[x]);
    for (auto x : subset)
      for (auto y : subset) m.push_back(d(x, y));
    return MetricSpace(alg_, std::move(pts), std::move(m));
  }

 private:
  std::shared_ptr<const A> alg_;
  std::vector<std::string> points_;
  std::vector<value_type> dist_;
};

using FiniteSpace = MetricSpace<FiniteAlgebra>;
using WordSpace = MetricSpace<WordAlgebra>;

/// Map between two spaces given by point indices.
struct PointMap {
  std::vector<std::size_t> image;
  std::size_t operator()(std::size_t x) const { return image[x]; }
};

struct SpaceViolation {
  std::string axiom;  // "d1", "d2" or "d3"
  std::vector<std::size_t> points;
};

struct SpaceReport {
  bool valid = true;
  std::vector<SpaceViolation> violations;
};

template <ValueAlgebra A>
SpaceReport validate_space(const MetricSpace<A>& sp) {
  const auto& alg = sp.algebra();
  SpaceReport rep;
  auto fail = [&](const char* axiom, std::vector<std::size_t> pts) {
    rep.valid = false;
    rep.violations.push_back({axiom, std::move(pts)});
  };
  const auto zero = alg.zero();
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y) {
      if ((sp.d(x, y) == zero) != (x == y)) fail("d1", {x, y});
      if (!(sp.d(y, x) == alg.inv(sp.d(x, y)))) fail("d3", {x, y});
    }
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t z = 0; z < sp.size(); ++z)
      for (std::size_t y = 0; y < sp.size(); ++y)
        if (!alg.leq(sp.d(x, y), alg.oplus(sp.d(x, z), sp.d(z, y)))) fail("d2", {x, z, y});
  return rep;
}

template <ValueAlgebra A>
void require_valid(const MetricSpace<A>& sp) {
  auto rep = validate_space(sp);
  if (rep.valid) return;
  const auto& v = rep.violations.front();
  std::vector<std::string> w{v.axiom};
  for (auto p : v.points) w.push_back(sp.point(p));
  throw Refusal("not a metric space", w);
}

/// B(x, r) = {y : d(x,y) <= r}.
template <ValueAlgebra A>
PointSet ball(const MetricSpace<A>& sp, std::size_t x, const typename A::value_type& r) {
  PointSet s(sp.size());
  for (std::size_t y = 0; y < sp.size(); ++y)
    if (sp.algebra().leq(sp.d(x, y), r)) s.set(y);
  return s;
}

template <ValueAlgebra A>
std::vector<std::size_t> ball_members(const MetricSpace<A>& sp, std::size_t x, const typename A::value_type& r) {
  return ball(sp, x, r).members();
}

/// Intersection of B(x, h(x)) over all x; h may leave entries at top.
template <ValueAlgebra A>
PointSet ball_intersection(const MetricSpace<A>& sp, const std::vector<typename A::value_type>& h) {
  PointSet s(sp.size(), true);
  for (std::size_t x = 0; x < sp.size() && !s.empty(); ++x)
    if (!(h[x] == sp.algebra().top())) s &= ball(sp, x, h[x]);
  return s;
}

/// Cartesian product with the join of coordinate distances.
template <ValueAlgebra A>
MetricSpace<A> sup_product(const std::shared_ptr<const A>& alg, const std::vector<MetricSpace<A>>& factors) {
  std::size_t total = 1;
  for (const auto& f : factors) {
    if (f.size() == 0) {
      total = 0;
      break;
    }
    if (total > limits().max_product_points / f.size())
      throw CapExceeded("product exceeds the point bound");
    total *= f.size();
  }
  std::vector<std::vector<std::size_t>> coords(total, std::vector<std::size_t>(factors.size()));
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t r = i;
    for (std::size_t k = factors.size(); k-- > 0;) {
      coords[i][k] = r % factors[k].size();
      r /= factors[k].size();
    }
  }
  std::vector<std::string> names;
  for (const auto& c : coords) {
    std::string s = "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + factors[k].point(c[k]);
    names.push_back(s + ")");
  }
  std::vector<typename A::value_type> m;
  m.reserve(total * total);
  for (std::size_t i = 0; i < total; ++i)
    for (std::size_t j = 0; j < total; ++j) {
      auto v = alg->zero();
      for (std::size_t k = 0; k < factors.size(); ++k) v = alg->join(v, factors[k].d(coords[i][k], coords[j][k]));
      m.push_back(v);
    }
  return MetricSpace<A>(alg, std::move(names), std::move(m));
}

enum class MapKind { isometry, nonexpansive, neither };

inline const char* to_string(MapKind k) {
  switch (k) {
    case MapKind::isometry: return "isometry";
    case MapKind::nonexpansive: return "nonexpansive";
    default: return "neither";
  }
}

template <ValueAlgebra A>
MapKind map_check(const MetricSpace<A>& src, const MetricSpace<A>& dst, const PointMap& f) {
  bool iso = true;
  for (std::size_t x = 0; x < src.size(); ++x)
    for (std::size_t y = 0; y < src.size(); ++y) {
      const auto& a = dst.d(f(x), f(y));
      const auto& b = src.d(x, y);
      if (!dst.algebra().leq(a, b)) return MapKind::neither;
      if (!(a == b)) iso = false;
    }
  return iso ? MapKind::isometry : MapKind::nonexpansive;
}

/// Image of x under the canonical embedding: z |-> d(z, x).
template <ValueAlgebra A>
std::vector<typename A::value_type> embedding_vector(const MetricSpace<A>& sp, std::size_t x) {
  std::vector<typename A::value_type> v;
  for (std::size_t z = 0; z < sp.size(); ++z) v.push_back(sp.d(z, x));
  return v;
}

template <ValueAlgebra A>
std::string render_vector(const A& alg, const std::vector<typename A::value_type>& v) {
  std::string s = "[";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + alg.render(v[i]);
  return s + "]";
}

/// Sup distance between two value vectors.
template <ValueAlgebra A>
typename A::value_type sup_distance(const A& alg, const std::vector<typename A::value_type>& f,
                                    const std::vector<typename A::value_type>& g) {
  auto v = alg.zero();
  for (std::size_t i = 0; i < f.size(); ++i) v = alg.join(v, alg.distance(f[i], g[i]));
  return v;
}

template <ValueAlgebra A>
struct Embedding {
  MetricSpace<A> image;
  PointMap map;
  std::vector<std::vector<typename A::value_type>> coords;
};

/// Embeds sp into a power of (H, d_H) and checks the sup-distance identity
/// pointwise. A mismatch is an InternalError.
template <ValueAlgebra A>
Embedding<A> canonical_embed(const MetricSpace<A>& sp) {
  require_valid(sp);
  const auto& alg = sp.algebra();
  std::vector<std::vector<typename A::value_type>> coords;
  std::vector<std::string> names;
  for (std::size_t x = 0; x < sp.size(); ++x) {
    coords.push_back(embedding_vector(sp, x));
    names.push_back(render_vector(alg, coords.back()));
  }
  std::vector<typename A::value_type> m;
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y) {
      auto v = sup_distance(alg, coords[x], coords[y]);
      if (!(v == sp.d(x, y)))
        throw InternalError("embedding identity fails at (" + sp.point(x) + ", " + sp.point(y) + ")");
      m.push_back(std::move(v));
    }
  PointMap f;
  for (std::size_t x = 0; x < sp.size(); ++x) f.image.push_back(x);
  return {MetricSpace<A>(sp.algebra_ptr(), std::move(names), std::move(m)), f, std::move(coords)};
}

/// For each u outside `a`, the intersection of all balls centred in `a`
/// that contain u must meet `a`. Returns the first u where it does not.
/// The balls around x containing u are those of radius >= d(x,u), so the
/// family reduces to one ball per centre.
template <ValueAlgebra A>
std::optional<std::size_t> one_local_retract_witness(const MetricSpace<A>& sp, const PointSet& a) {
  for (std::size_t u = 0; u < sp.size(); ++u) {
    if (a.test(u)) continue;
    PointSet s(sp.size(), true);
    for (auto x : a.members()) s &= ball(sp, x, sp.d(x, u));
    if (!s.intersects(a)) return u;
  }
  return std::nullopt;
}

template <ValueAlgebra A>
bool is_one_local_retract(const MetricSpace<A>& sp, const PointSet& a) {
  return !one_local_retract_witness(sp, a).has_value();
}

/// Search for an isometric bijection; points are matched by backtracking.
template <ValueAlgebra A>
std::optional<PointMap> find_isometry(const MetricSpace<A>& a, const MetricSpace<A>& b) {
  if (a.size() != b.size()) return std::nullopt;
  const std::size_t n = a.size();
  PointMap f;
  f.image.assign(n, 0);
  std::vector<bool> used(n, false);
  auto rec = [&](auto&& self, std::size_t x) -> bool {
    if (x == n) return true;
    for (std::size_t y = 0; y < n; ++y) {
      if (used[y]) continue;
      bool ok = true;
      for (std::size_t p = 0; p < x && ok; ++p)
        ok = a.d(p, x) == b.d(f.image[p], y) && a.d(x, p) == b.d(y, f.image[p]);
      if (!ok) continue;
      used[y] = true;
      f.image[x] = y;
      if (self(self, x + 1)) return true;
      used[y] = false;
    }
    return false;
  };
  if (rec(rec, 0)) return f;
  return std::nullopt;
}

// ---- finite-algebra procedures -------------------------------------------

/// All balls B(x, r), indexed by x * |H| + r.
std::vector<PointSet> ball_table(const FiniteSpace& sp);

using Radii = std::vector<Elem>;

bool is_hole(const FiniteSpace& sp, const Radii& h);
/// h_f(x) = meet of h(y) over f(y) = x, top off the range.
Radii image_hole(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& f, const Radii& h);
/// Enumerates every h: src -> H; returns a hole whose image is not a hole.
/// Only defined for nonexpansive f; other maps are refused.
std::optional<Radii> hole_preservation_witness(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& f);
bool is_hole_preserving(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& f);

/// (H, d_H) as a metric space.
FiniteSpace value_space(const std::shared_ptr<const FiniteAlgebra>& alg);

}  // namespace hmetric
