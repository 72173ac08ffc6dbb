#include "hmetric/fixpoint.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "hmetric/errors.hpp"
#include "hmetric/forms.hpp"
#include "hmetric/limits.hpp"

namespace hmetric {

namespace {

std::vector<std::string> names_of(const std::vector<std::string>& names, const std::vector<std::size_t>& idx) {
  std::vector<std::string> out;
  for (auto i : idx) out.push_back(names[i]);
  return out;
}

PointSet image(const PointSet& a, const PointMap& f) {
  PointSet out(a.universe());
  for (auto x : a.members()) out.set(f(x));
  return out;
}

bool hull_order(const PointSet& a, const PointSet& b) {
  if (a.count() != b.count()) return a.count() < b.count();
  return a.members() < b.members();
}

void require_monotone(const Poset& p, const PointMap& f) {
  if (f.image.size() != p.size()) throw Refusal("map does not match the poset size");
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (f(x) >= p.size()) throw Refusal("map leaves the poset");
    for (std::size_t y = 0; y < p.size(); ++y)
      if (p.leq(x, y) && !p.leq(f(x), f(y)))
        throw Refusal("map is not order-preserving", {p.elements[x], p.elements[y]});
  }
}

void require_lattice(const Poset& p) {
  if (!p.is_lattice()) throw Refusal("poset is not a lattice");
}

std::optional<std::size_t> commute_witness(const PointMap& f, const PointMap& g) {
  for (std::size_t x = 0; x < f.image.size(); ++x)
    if (f(g(x)) != g(f(x))) return x;
  return std::nullopt;
}

}  // namespace

namespace {

template <ValueAlgebra A>
typename A::value_type fold_join(const A& alg, const std::vector<typename A::value_type>& xs) {
  auto acc = alg.zero();
  for (const auto& x : xs) acc = alg.join(acc, x);
  return acc;
}

template <ValueAlgebra A>
typename A::value_type fold_meet(const A& alg, const std::vector<typename A::value_type>& xs) {
  auto acc = alg.top();
  for (const auto& x : xs) acc = alg.meet(acc, x);
  return acc;
}

template <ValueAlgebra A>
void require_nonexpansive(const MetricSpace<A>& sp, const PointMap& f) {
  if (f.image.size() != sp.size()) throw Refusal("map does not match the space size");
  for (auto y : f.image)
    if (y >= sp.size()) throw Refusal("map leaves the space");
  if (map_check(sp, sp, f) == MapKind::neither) throw Refusal("map is not nonexpansive");
}

}  // namespace

template <ValueAlgebra A>
Geometry<A> geometry(const MetricSpace<A>& sp, const PointSet& a) {
  using V = typename A::value_type;
  if (a.empty()) throw Refusal("geometry needs a nonempty set");
  const auto& alg = sp.algebra();
  const auto pts = a.members();
  std::vector<V> pair_d, reach;
  for (auto x : pts) {
    std::vector<V> row;
    for (auto y : pts) row.push_back(sp.d(x, y));
    pair_d.insert(pair_d.end(), row.begin(), row.end());
    reach.push_back(fold_join(alg, row));
  }
  Geometry<A> g{fold_join(alg, pair_d), fold_meet(alg, reach), PointSet(sp.size()), PointSet(sp.size(), true)};
  for (std::size_t x = 0; x < sp.size(); ++x) {
    std::vector<V> to_a;
    for (auto y : pts) to_a.push_back(sp.d(x, y));
    const V r = fold_join(alg, to_a);
    if (alg.leq(r, g.radius)) g.centers.set(x);
    g.cover &= ball(sp, x, r);
  }
  ensure(a.subset_of(g.cover), "cover misses a point of the set");
  return g;
}

template <ValueAlgebra A>
bool is_equally_centered(const MetricSpace<A>& sp, const PointSet& a) {
  auto g = geometry(sp, a);
  return g.radius == g.diameter;
}

template <ValueAlgebra A>
std::vector<PointSet> all_balls(const MetricSpace<A>& sp) {
  const auto& alg = sp.algebra();
  std::set<PointSet> out;
  for (std::size_t x = 0; x < sp.size(); ++x) {
    std::vector<std::pair<PointSet, typename A::value_type>> queue{{ball(sp, x, alg.zero()), alg.zero()}};
    std::set<PointSet> seen{queue[0].first};
    for (std::size_t i = 0; i < queue.size(); ++i)
      for (std::size_t y = 0; y < sp.size(); ++y) {
        if (queue[i].first.test(y)) continue;
        auto r = alg.join(queue[i].second, sp.d(x, y));
        auto b = ball(sp, x, r);
        if (!seen.insert(b).second) continue;
        if (seen.size() > limits().max_enum) throw CapExceeded("balls exceed the enumeration bound");
        queue.emplace_back(std::move(b), std::move(r));
      }
    out.insert(seen.begin(), seen.end());
    out.insert(ball(sp, x, alg.top()));
  }
  return {out.begin(), out.end()};
}

template <ValueAlgebra A>
std::vector<PointSet> ball_hulls(const MetricSpace<A>& sp) {
  const auto balls = all_balls(sp);
  std::set<PointSet> seen(balls.begin(), balls.end());
  std::vector<PointSet> queue(balls.begin(), balls.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& b : balls) {
      auto s = queue[i] & b;
      if (s.empty() || !seen.insert(s).second) continue;
      if (seen.size() > limits().max_enum) throw CapExceeded("intersections of balls exceed the enumeration bound");
      queue.push_back(std::move(s));
    }
  std::sort(queue.begin(), queue.end(), hull_order);
  return queue;
}

namespace {

template <ValueAlgebra A>
typename A::value_type space_diameter(const MetricSpace<A>& sp) {
  return fold_join(sp.algebra(), sp.matrix());
}

std::optional<Elem> unbounded_witness(const FiniteSpace& sp) {
  const auto& alg = sp.algebra();
  const Elem diam = space_diameter(sp);
  for (auto v : inaccessible_set(alg))
    if (v != alg.zero() && alg.leq(v, diam)) return v;
  return std::nullopt;
}

}  // namespace

bool is_bounded_space(const FiniteSpace& sp) { return !unbounded_witness(sp).has_value(); }

template <ValueAlgebra A>
StructureReport<A> structure_report(const MetricSpace<A>& sp) {
  StructureReport<A> rep;
  rep.diameter = space_diameter(sp);
  if constexpr (std::is_same_v<A, FiniteAlgebra>) {
    rep.inaccessible_witness = unbounded_witness(sp);
    rep.bounded = !rep.inaccessible_witness.has_value();
  }
  const auto hulls = ball_hulls(sp);
  rep.hulls = hulls.size();
  // Finite families: a family whose finite subfamilies meet is itself
  // finite, so the literal check is the closure being free of the empty set.
  rep.fip = std::none_of(hulls.begin(), hulls.end(), [](const PointSet& s) { return s.empty(); });
  for (const auto& a : hulls) {
    if (a.count() < 2) continue;
    if (is_equally_centered(sp, a)) {
      rep.normal = false;
      rep.normal_witness = a;
      break;
    }
  }
  return rep;
}

template <ValueAlgebra A>
PointSet minimal_invariant(const MetricSpace<A>& sp, const PointMap& f, std::optional<PointSet> start) {
  require_nonexpansive(sp, f);
  const auto hulls = ball_hulls(sp);
  const PointSet from = start.value_or(PointSet(sp.size(), true));
  if (std::find(hulls.begin(), hulls.end(), from) == hulls.end())
    throw Refusal("start set is not an intersection of balls", names_of(sp.points(), from.members()));
  if (!image(from, f).subset_of(from))
    throw Refusal("map does not preserve the start set", names_of(sp.points(), from.members()));
  for (const auto& a : hulls) {
    if (!a.subset_of(from) || !image(a, f).subset_of(a)) continue;
    ensure(geometry(sp, image(a, f)).cover == a, "minimal invariant hull is not the cover of its image");
    ensure(is_equally_centered(sp, a), "minimal invariant hull is not equally centered");
    return a;
  }
  throw InternalError("no invariant intersection of balls inside an invariant one");
}

std::vector<std::size_t> fixed_points(const PointMap& f, std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < n; ++x)
    if (f(x) == x) out.push_back(x);
  return out;
}

namespace {

/// Refuses spaces without a normal structure; returns whether the space
/// is a finite bounded hyperconvex one.
template <ValueAlgebra A>
bool require_fixed_point_hypotheses(const MetricSpace<A>& sp) {
  if (sp.size() == 0) throw Refusal("space is empty");
  const auto rep = structure_report(sp);
  bool bounded_hyperconvex = false;
  if constexpr (std::is_same_v<A, FiniteAlgebra>) {
    bounded_hyperconvex = *rep.bounded && is_hyperconvex(sp);
    if (bounded_hyperconvex) ensure(rep.normal, "bounded hyperconvex space without a normal structure");
  }
  if (!rep.normal) {
    std::string why = "space has no normal structure (equally centered hull listed)";
    if (rep.inaccessible_witness)
      why += "; not bounded: " + sp.algebra().render(*rep.inaccessible_witness) + " is inaccessible below the diameter";
    else if (rep.bounded)
      why += "; bounded but not hyperconvex";
    throw Refusal(why, names_of(sp.points(), rep.normal_witness->members()));
  }
  return bounded_hyperconvex;
}

}  // namespace

template <ValueAlgebra A>
FixedPointResult fixed_point(const MetricSpace<A>& sp, const PointMap& f) {
  require_nonexpansive(sp, f);
  const bool bounded_hyperconvex = require_fixed_point_hypotheses(sp);
  const PointSet a = minimal_invariant(sp, f);
  ensure(a.count() == 1, "minimal invariant hull of a normal space is not a singleton");
  FixedPointResult out{a.first(), PointSet(sp.size())};
  ensure(f(out.point) == out.point, "minimal invariant point is not fixed");
  for (auto x : fixed_points(f, sp.size())) out.fixed.set(x);
  ensure(is_one_local_retract(sp, out.fixed), "fixed points do not form a one-local retract");
  if constexpr (std::is_same_v<A, FiniteAlgebra>) {
    if (bounded_hyperconvex)
      ensure(is_hyperconvex(sp.restrict_to(out.fixed.members())),
             "fixed points of a bounded hyperconvex space are not hyperconvex");
  }
  return out;
}

template <ValueAlgebra A>
FixedPointResult common_fixed_point(const MetricSpace<A>& sp, const std::vector<PointMap>& maps) {
  for (const auto& f : maps) require_nonexpansive(sp, f);
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = i + 1; j < maps.size(); ++j)
      if (auto x = commute_witness(maps[i], maps[j]))
        throw Refusal("maps " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute",
                      {sp.point(*x)});
  require_fixed_point_hypotheses(sp);
  PointSet current(sp.size(), true);
  for (const auto& f : maps) {
    const auto members = current.members();
    const auto sub = sp.restrict_to(members);
    ensure(is_one_local_retract(sp, current), "common fixed points are not a one-local retract");
    ensure(structure_report(sub).normal, "one-local retract without a normal structure");
    PointMap local;
    for (auto x : members) {
      auto it = std::find(members.begin(), members.end(), f(x));
      ensure(it != members.end(), "commuting map leaves the common fixed points");
      local.image.push_back(static_cast<std::size_t>(it - members.begin()));
    }
    const auto res = fixed_point(sub, local);
    PointSet next(sp.size());
    for (auto x : res.fixed.members()) next.set(members[x]);
    current = next;
  }
  ensure(!current.empty(), "commuting family without a common fixed point");
  ensure(is_one_local_retract(sp, current), "common fixed points are not a one-local retract");
  return {current.first(), current};
}

#define HMETRIC_INSTANTIATE(A)                                                                  \
  template Geometry<A> geometry(const MetricSpace<A>&, const PointSet&);                        \
  template bool is_equally_centered(const MetricSpace<A>&, const PointSet&);                    \
  template std::vector<PointSet> all_balls(const MetricSpace<A>&);                              \
  template std::vector<PointSet> ball_hulls(const MetricSpace<A>&);                             \
  template StructureReport<A> structure_report(const MetricSpace<A>&);                          \
  template PointSet minimal_invariant(const MetricSpace<A>&, const PointMap&, std::optional<PointSet>); \
  template FixedPointResult fixed_point(const MetricSpace<A>&, const PointMap&);                \
  template FixedPointResult common_fixed_point(const MetricSpace<A>&, const std::vector<PointMap>&);

HMETRIC_INSTANTIATE(FiniteAlgebra)
HMETRIC_INSTANTIATE(WordAlgebra)

#undef HMETRIC_INSTANTIATE

// ---- order-theoretic solvers ----------------------------------------------------

TarskiResult tarski(const Poset& p, const PointMap& f) {
  require_lattice(p);
  require_monotone(p, f);
  TarskiResult out;
  out.least = *p.bottom();
  while (f(out.least) != out.least) {
    out.least = f(out.least);
    ++out.steps;
  }
  out.fixed = fixed_points(f, p.size());
  for (auto x : out.fixed) ensure(p.leq(out.least, x), "iteration did not reach the least fixed point");
  return out;
}

std::size_t tarski_common(const Poset& p, const std::vector<PointMap>& maps) {
  require_lattice(p);
  for (const auto& f : maps) require_monotone(p, f);
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = i + 1; j < maps.size(); ++j)
      if (auto x = commute_witness(maps[i], maps[j]))
        throw Refusal("maps " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute",
                      {p.elements[*x]});
  // Below every image of x stays true along the iteration, so it climbs.
  std::size_t x = *p.bottom();
  for (bool moved = true; moved;) {
    moved = false;
    for (const auto& f : maps)
      if (f(x) != x) {
        x = f(x);
        moved = true;
      }
  }
  for (std::size_t y = 0; y < p.size(); ++y) {
    bool common = true;
    for (const auto& f : maps) common = common && f(y) == y;
    if (common) ensure(p.leq(x, y), "iteration missed the least common fixed point");
  }
  return x;
}

std::size_t abian_brown(const Poset& p, const PointMap& f, std::size_t start) {
  require_monotone(p, f);
  if (start >= p.size()) throw Refusal("start point is outside the poset");
  if (!p.leq(start, f(start))) throw Refusal("start point is not below its image", {p.elements[start]});
  std::size_t x = start;
  while (f(x) != x) x = f(x);
  return x;
}

std::vector<Gap> find_gaps(const Poset& p, std::size_t bound) {
  const std::size_t n = p.size();
  const std::size_t k = bound == 0 ? n : std::min(bound, n);
  std::vector<std::vector<std::size_t>> subsets{{}};
  for (std::size_t size = 1; size <= k; ++size) {
    std::vector<bool> pick(n, false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(size), true);
    std::vector<std::vector<std::size_t>> level;
    do {
      std::vector<std::size_t> s;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) s.push_back(i);
      level.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(level.begin(), level.end());
    subsets.insert(subsets.end(), level.begin(), level.end());
    if (subsets.size() * subsets.size() > limits().max_enum)
      throw CapExceeded("gap scan exceeds the enumeration bound", {std::to_string(subsets.size())});
  }
  std::vector<Gap> out;
  for (const auto& lo : subsets)
    for (const auto& hi : subsets) {
      bool below = true;
      for (auto a : lo)
        for (auto b : hi) below = below && p.leq(a, b);
      if (!below) continue;
      bool between = false;
      for (std::size_t z = 0; z < n && !between; ++z) {
        bool ok = true;
        for (auto a : lo) ok = ok && p.leq(a, z);
        for (auto b : hi) ok = ok && p.leq(z, b);
        between = ok;
      }
      if (!between) out.push_back({lo, hi});
    }
  std::stable_sort(out.begin(), out.end(), [](const Gap& a, const Gap& b) {
    return a.lower.size() + a.upper.size() < b.lower.size() + b.upper.size();
  });
  return out;
}

// ---- Helly property ---------------------------------------------------------

std::optional<std::array<std::size_t, 3>> helly_triple_witness(const std::vector<PointSet>& family,
                                                                 std::size_t universe,
                                                                 const std::vector<std::size_t>& anchors) {
  for (auto a : anchors)
    for (std::size_t b = 0; b < universe; ++b)
      for (std::size_t c = b + 1; c < universe; ++c) {
        if (b == a || c == a) continue;
        PointSet meet(universe, true);
        for (const auto& s : family)
          if (int(s.test(a)) + int(s.test(b)) + int(s.test(c)) >= 2) meet &= s;
        if (meet.empty()) return std::array{a, b, c};
      }
  return std::nullopt;
}

FiniteSpace cyclic_space(int n) {
  auto alg = std::make_shared<const FiniteAlgebra>(make_builtin("divisors", {n}));
  std::vector<std::string> names;
  for (int x = 0; x < n; ++x) names.push_back(std::to_string(x));
  std::vector<Elem> d;
  d.reserve(static_cast<std::size_t>(n) * static_cast<std::size_t>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      auto e = alg->find(std::to_string(std::gcd(x - y, n)));
      ensure(e.has_value(), "gcd is not a divisor label");
      d.push_back(*e);
    }
  return FiniteSpace(alg, std::move(names), std::move(d));
}

std::optional<std::array<std::size_t, 3>> crt_helly_witness(int n) {
  const auto sp = cyclic_space(n);
  const std::size_t size = sp.size();
  for (std::size_t x = 0; x < size; ++x)
    for (std::size_t y = 0; y < size; ++y)
      ensure(sp.d(x, y) == sp.d(0, (y + size - x) % size), "cyclic distance is not translation invariant");
  std::set<PointSet> balls;
  for (std::size_t x = 0; x < size; ++x)
    for (auto r : sp.algebra().elements()) balls.insert(ball(sp, x, r));
  return helly_triple_witness({balls.begin(), balls.end()}, size, {0});
}

}  // namespace hmetric
