#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "hmetric/discrete.hpp"
#include "hmetric/metric.hpp"

namespace hmetric {

template <ValueAlgebra A>
struct Geometry {
  using V = typename A::value_type;
  V diameter;        // join of d(x,y) over A
  V radius;          // meet of the v with A inside some B(x,v), x in A
  PointSet centers;  // points x of E with A inside B(x, radius)
  PointSet cover;    // intersection of all balls containing A
};

/// Refuses an empty A.
template <ValueAlgebra A>
Geometry<A> geometry(const MetricSpace<A>& sp, const PointSet& a);
template <ValueAlgebra A>
bool is_equally_centered(const MetricSpace<A>& sp, const PointSet& a);

/// Every ball of the space. A ball around x is the smallest one holding
/// its members, so the radii range over joins of distances d(x, y).
template <ValueAlgebra A>
std::vector<PointSet> all_balls(const MetricSpace<A>& sp);

/// Nonempty intersections of balls (E itself included), ordered by size
/// and then by membership. Throws CapExceeded past `limits().max_enum`.
template <ValueAlgebra A>
std::vector<PointSet> ball_hulls(const MetricSpace<A>& sp);

/// 0 is the only inaccessible value below the diameter of the space.
bool is_bounded_space(const FiniteSpace& sp);

template <ValueAlgebra A>
struct StructureReport {
  typename A::value_type diameter;
  /// Decided for finite algebras only.
  std::optional<bool> bounded;
  bool fip = true;
  bool normal = true;
  std::size_t hulls = 0;
  /// Inaccessible nonzero value below the diameter, if any.
  std::optional<typename A::value_type> inaccessible_witness;
  /// An equally centered intersection of balls with more than one point.
  std::optional<PointSet> normal_witness;
};

template <ValueAlgebra A>
StructureReport<A> structure_report(const MetricSpace<A>& sp);

/// A minimal nonempty intersection of balls inside `start` (default E)
/// mapped into itself by f. Among minimal ones the smallest in the
/// `ball_hulls` order is returned. Checks Cov(f(A)) = A and that A is
/// equally centered.
template <ValueAlgebra A>
PointSet minimal_invariant(const MetricSpace<A>& sp, const PointMap& f,
                           std::optional<PointSet> start = std::nullopt);

struct FixedPointResult {
  std::size_t point = 0;
  PointSet fixed;  // every fixed point of the map (or family)
};

/// Needs a nonexpansive f on a space with a normal structure (bounded
/// hyperconvex spaces have one); refuses otherwise with the equally
/// centered hull as witness. The point comes from the minimal invariant
/// hull. Also checks that Fix(f) is a one-local retract, and hyperconvex
/// when a finite space is bounded and hyperconvex.
template <ValueAlgebra A>
FixedPointResult fixed_point(const MetricSpace<A>& sp, const PointMap& f);

/// Common fixed point of pairwise commuting nonexpansive maps, found by
/// restricting to the fixed points of one map after another. The smallest
/// common fixed point is returned, so the result does not depend on the
/// order of the maps.
template <ValueAlgebra A>
FixedPointResult common_fixed_point(const MetricSpace<A>& sp, const std::vector<PointMap>& maps);

std::vector<std::size_t> fixed_points(const PointMap& f, std::size_t n);

// ---- order-theoretic solvers ----------------------------------------------

struct TarskiResult {
  std::size_t least = 0;
  std::size_t steps = 0;
  std::vector<std::size_t> fixed;  // all fixed points, by scan
};

/// Iterates f from the bottom of a finite lattice. Refuses posets that are
/// not lattices and maps that are not monotone.
TarskiResult tarski(const Poset& p, const PointMap& f);
/// Least common fixed point of commuting monotone maps on a finite lattice.
std::size_t tarski_common(const Poset& p, const std::vector<PointMap>& maps);
/// Iterates f from a point below its image.
std::size_t abian_brown(const Poset& p, const PointMap& f, std::size_t start);

struct Gap {
  std::vector<std::size_t> lower, upper;
};

/// Pairs (A, B), every element of A below every element of B, with no
/// element between them. Sizes are limited to `bound`; 0 scans all
/// subsets. Results are ordered by size and then lexicographically.
std::vector<Gap> find_gaps(const Poset& p, std::size_t bound = 3);

// ---- Helly property of set families ------------------------------------------

/// Triple criterion: a family of sets has the Helly property for
/// pairwise intersecting subfamilies iff for every three points the
/// members holding two of them meet. `anchors` restricts the first point
/// of the triple (use all points unless a symmetry justifies fewer).
/// Returns a failing triple.
std::optional<std::array<std::size_t, 3>> helly_triple_witness(const std::vector<PointSet>& family,
                                                                 std::size_t universe,
                                                                 const std::vector<std::size_t>& anchors);

/// Z_n with d(x,y) = gcd(x - y, n) over divisors(n); balls are
/// congruence classes.
FiniteSpace cyclic_space(int n);

/// Pairwise intersecting balls of cyclic_space(n) have a common point.
/// Translations are isometries, so one anchor point suffices.
std::optional<std::array<std::size_t, 3>> crt_helly_witness(int n);

}  // namespace hmetric
