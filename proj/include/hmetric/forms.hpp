#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hmetric/dfa.hpp"
#include "hmetric/metric.hpp"

namespace hmetric {

/// Strength of a radius assignment f: E -> H.
///   weak:    d(x,y) <= f(x) (+) inv f(y)
///   strong:  weak and f(x) <= d(x,y) (+) f(y)   (a metric form)
///   minimal: strong and no weak form lies strictly below
enum class FormKind { none, weak, strong, minimal };

const char* to_string(FormKind k);

bool is_weak_form(const FiniteSpace& sp, const Radii& f);
bool is_metric_form(const FiniteSpace& sp, const Radii& f);
/// True iff no single coordinate can drop to a lower cover while the
/// result stays weak. Weak forms are an up-set, so this decides
/// minimality among all weak forms.
bool is_minimal_form(const FiniteSpace& sp, const Radii& f);
FormKind classify_form(const FiniteSpace& sp, const Radii& f);

/// f_M(x) = meet over y of d(x,y) (+) f(y): the largest metric form below a
/// weak form f. Refuses forms that are not weak.
Radii form_floor(const FiniteSpace& sp, const Radii& f);

/// All metric forms, in lexicographic order of the value vectors.
std::vector<Radii> metric_forms(const FiniteSpace& sp);
std::vector<Radii> minimal_forms(const FiniteSpace& sp);

/// Space whose points are the given value vectors, named by their
/// rendering, with the sup distance.
FiniteSpace form_space(const std::shared_ptr<const FiniteAlgebra>& alg, const std::vector<Radii>& forms);

/// A space built from forms over E together with the image of each point
/// of E (its distance vector z |-> d(z,x)).
struct FormExtension {
  FiniteSpace space;
  std::vector<Radii> forms;
  PointMap delta;
};

/// N(E): the minimal metric forms. Checks that the embedding is isometric,
/// that N(E) is hyperconvex and that every nonexpansive self-map of N(E)
/// fixing the image of E is the identity.
FormExtension injective_envelope(const FiniteSpace& sp);

/// Metric forms whose balls meet, with the sup distance. Checks that the
/// embedding of E is hole-preserving when the hole enumeration fits the
/// configured bound.
FormExtension replete_space(const FiniteSpace& sp);

// ---- hyperconvexity ------------------------------------------------------

struct HyperconvexityReport {
  bool hyperconvex = true;
  /// "convexity", "2-helly" or "empty" when the test fails.
  std::string failed;
  /// A weak form whose balls do not meet.
  Radii witness;
  /// Points involved: (x, y) for convexity, the triple for 2-Helly.
  std::vector<std::size_t> points;
};

/// For x, y and p, q with d(x,y) <= p (+) q some z has d(x,z) <= p and
/// d(z,y) <= q.
HyperconvexityReport convexity_test(const FiniteSpace& sp);
/// Pairwise meeting balls have a common point. Decided by the triple
/// criterion for the Helly property of a finite set family: for every
/// three points, the balls containing at least two of them must meet.
HyperconvexityReport helly2_test(const FiniteSpace& sp);
bool is_convex(const FiniteSpace& sp);
bool helly2(const FiniteSpace& sp);
HyperconvexityReport hyperconvexity(const FiniteSpace& sp);
bool is_hyperconvex(const FiniteSpace& sp);

// ---- maps between small spaces -------------------------------------------

inline constexpr std::size_t unmapped = static_cast<std::size_t>(-1);

/// Completes `partial` (entries `unmapped` are free) to a nonexpansive map
/// src -> dst by backtracking; nullopt when none exists. Throws
/// CapExceeded after `limits().max_enum` search nodes.
std::optional<PointMap> extend_nonexpansive(const FiniteSpace& src, const FiniteSpace& dst, PointMap partial);

/// Nonexpansive r: sp -> sp with r(a) = a on `a` and range inside `a`.
std::optional<PointMap> find_retraction(const FiniteSpace& sp, const PointSet& a);

/// Calls `visit` on each nonexpansive map src -> dst that agrees with
/// `partial` where it is set; stops early when `visit` returns false.
void for_each_nonexpansive(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& partial,
                           const std::function<bool(const PointMap&)>& visit);

// ---- two-point envelopes -------------------------------------------------

/// S_v = { residual_left(v, b) : b in H } with d_H; contains 0 and v.
FiniteSpace two_point_envelope(const std::shared_ptr<const FiniteAlgebra>& alg, Elem v);

/// S_F for a final segment F: the right word quotients F/g and their
/// intersections, computed as accepting-state sets of the automaton of F.
WordSpace two_point_envelope(const std::shared_ptr<const WordAlgebra>& alg, const Antichain& f);

/// Glues `a` and `b` by identifying point `pa` of `a` with point `pb` of
/// `b`; across the seam d(x,y) = d_a(x,pa) (+) d_b(pb,y). Names of `b`
/// that clash with `a` get a trailing apostrophe.
template <ValueAlgebra A>
MetricSpace<A> glue(const MetricSpace<A>& a, std::size_t pa, const MetricSpace<A>& b, std::size_t pb) {
  const auto& alg = a.algebra();
  std::vector<std::string> names = a.points();
  std::vector<std::size_t> origin;
  for (std::size_t y = 0; y < b.size(); ++y) {
    if (y == pb) continue;
    std::string n = b.point(y);
    while (std::find(names.begin(), names.end(), n) != names.end()) n += "'";
    names.push_back(n);
    origin.push_back(y);
  }
  const std::size_t n = names.size();
  auto from_b = [&](std::size_t i) { return i >= a.size(); };
  auto b_of = [&](std::size_t i) { return i == pa ? pb : origin[i - a.size()]; };
  std::vector<typename A::value_type> m;
  m.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const bool bi = from_b(i) || i == pa, bj = from_b(j) || j == pa;
      if (!from_b(i) && !from_b(j)) {
        m.push_back(a.d(i, j));
      } else if (bi && bj) {
        m.push_back(b.d(b_of(i), b_of(j)));
      } else if (!from_b(i)) {
        m.push_back(alg.oplus(a.d(i, pa), b.d(pb, b_of(j))));
      } else {
        m.push_back(alg.oplus(b.d(b_of(i), pb), a.d(pa, j)));
      }
    }
  return MetricSpace<A>(a.algebra_ptr(), std::move(names), std::move(m));
}

}  // namespace hmetric
