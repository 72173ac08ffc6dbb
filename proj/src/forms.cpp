#include "hmetric/forms.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace hmetric {

const char* to_string(FormKind k) {
  switch (k) {
    case FormKind::weak: return "weak";
    case FormKind::strong: return "strong";
    case FormKind::minimal: return "minimal";
    default: return "none";
  }
}

bool is_weak_form(const FiniteSpace& sp, const Radii& f) {
  const auto& alg = sp.algebra();
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y)
      if (!alg.leq(sp.d(x, y), alg.oplus(f[x], alg.inv(f[y])))) return false;
  return true;
}

bool is_metric_form(const FiniteSpace& sp, const Radii& f) {
  if (!is_weak_form(sp, f)) return false;
  const auto& alg = sp.algebra();
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y)
      if (!alg.leq(f[x], alg.oplus(sp.d(x, y), f[y]))) return false;
  return true;
}

bool is_minimal_form(const FiniteSpace& sp, const Radii& f) {
  if (!is_weak_form(sp, f)) return false;
  Radii g = f;
  for (std::size_t x = 0; x < sp.size(); ++x) {
    for (auto c : sp.algebra().lower_covers(f[x])) {
      g[x] = c;
      if (is_weak_form(sp, g)) return false;
    }
    g[x] = f[x];
  }
  return true;
}

FormKind classify_form(const FiniteSpace& sp, const Radii& f) {
  if (f.size() != sp.size()) throw std::invalid_argument("form length does not match the point count");
  if (!is_weak_form(sp, f)) return FormKind::none;
  const bool strong = is_metric_form(sp, f);
  const auto& alg = sp.algebra();
  bool second = true;
  for (std::size_t x = 0; x < sp.size() && second; ++x)
    for (std::size_t y = 0; y < sp.size() && second; ++y)
      second = alg.leq(alg.distance(sp.d(x, y), f[x]), f[y]);
  ensure(second == strong, "metric form criteria disagree");
  if (!strong) return FormKind::weak;
  return is_minimal_form(sp, f) ? FormKind::minimal : FormKind::strong;
}

Radii form_floor(const FiniteSpace& sp, const Radii& f) {
  if (!is_weak_form(sp, f)) throw Refusal("not a weak metric form", {render_vector(sp.algebra(), f)});
  const auto& alg = sp.algebra();
  Radii g(sp.size());
  for (std::size_t x = 0; x < sp.size(); ++x) {
    auto v = alg.top();
    for (std::size_t y = 0; y < sp.size(); ++y) v = alg.meet(v, alg.oplus(sp.d(x, y), f[y]));
    g[x] = v;
  }
  for (std::size_t x = 0; x < sp.size(); ++x) ensure(alg.leq(g[x], f[x]), "floor exceeds the form");
  ensure(is_metric_form(sp, g), "floor is not a metric form");
  ensure(ball_intersection(sp, g) == ball_intersection(sp, f), "floor changes the ball intersection");
  return g;
}

std::vector<Radii> metric_forms(const FiniteSpace& sp) {
  const auto& alg = sp.algebra();
  const std::size_t n = sp.size();
  const auto values = alg.elements();
  std::vector<Radii> out;
  Radii f(n);
  std::size_t nodes = 0;
  auto fits = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (!alg.leq(sp.d(k, j), alg.oplus(f[k], alg.inv(f[j])))) return false;
      if (!alg.leq(sp.d(j, k), alg.oplus(f[j], alg.inv(f[k])))) return false;
      if (!alg.leq(f[k], alg.oplus(sp.d(k, j), f[j]))) return false;
      if (!alg.leq(f[j], alg.oplus(sp.d(j, k), f[k]))) return false;
    }
    return true;
  };
  auto rec = [&](auto&& self, std::size_t k) -> void {
    if (k == n) {
      out.push_back(f);
      return;
    }
    for (auto v : values) {
      if (++nodes > limits().max_enum) throw CapExceeded("metric form enumeration exceeds the search bound");
      f[k] = v;
      if (fits(k)) self(self, k + 1);
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<Radii> minimal_forms(const FiniteSpace& sp) {
  std::vector<Radii> out;
  for (auto& f : metric_forms(sp))
    if (is_minimal_form(sp, f)) out.push_back(std::move(f));
  return out;
}

FiniteSpace form_space(const std::shared_ptr<const FiniteAlgebra>& alg, const std::vector<Radii>& forms) {
  std::vector<std::string> names;
  std::vector<Elem> m;
  m.reserve(forms.size() * forms.size());
  for (const auto& f : forms) names.push_back(render_vector(*alg, f));
  for (const auto& f : forms)
    for (const auto& g : forms) m.push_back(sup_distance(*alg, f, g));
  return FiniteSpace(alg, std::move(names), std::move(m));
}

namespace {

PointMap locate_points(const FiniteSpace& sp, const std::vector<Radii>& forms) {
  PointMap delta;
  for (std::size_t x = 0; x < sp.size(); ++x) {
    auto v = embedding_vector(sp, x);
    auto it = std::find(forms.begin(), forms.end(), v);
    ensure(it != forms.end(), "distance vector of " + sp.point(x) + " is missing from the form space");
    delta.image.push_back(static_cast<std::size_t>(it - forms.begin()));
  }
  return delta;
}

}  // namespace

FormExtension injective_envelope(const FiniteSpace& sp) {
  require_valid(sp);
  auto forms = minimal_forms(sp);
  auto space = form_space(sp.algebra_ptr(), forms);
  auto delta = locate_points(sp, forms);
  ensure(map_check(sp, space, delta) == MapKind::isometry, "envelope embedding is not an isometry");
  ensure(is_hyperconvex(space), "envelope is not hyperconvex");
  PointMap fixed;
  fixed.image.assign(space.size(), unmapped);
  for (auto p : delta.image) fixed.image[p] = p;
  for_each_nonexpansive(space, space, fixed, [&](const PointMap& g) {
    for (std::size_t p = 0; p < space.size(); ++p)
      ensure(g(p) == p, "a self-map of the envelope fixing the embedded space moves " + space.point(p));
    return true;
  });
  return {std::move(space), std::move(forms), std::move(delta)};
}

FormExtension replete_space(const FiniteSpace& sp) {
  require_valid(sp);
  std::vector<Radii> forms;
  for (auto& f : metric_forms(sp))
    if (!ball_intersection(sp, f).empty()) forms.push_back(std::move(f));
  auto space = form_space(sp.algebra_ptr(), forms);
  auto delta = locate_points(sp, forms);
  // Each form is recovered from its distances to the embedded points.
  for (std::size_t i = 0; i < forms.size(); ++i)
    for (std::size_t y = 0; y < sp.size(); ++y)
      ensure(space.d(delta(y), i) == forms[i][y], "form is not its own distance profile");
  double assignments = 1;
  for (std::size_t i = 0; i < sp.size(); ++i) assignments *= static_cast<double>(sp.algebra().size());
  if (assignments <= static_cast<double>(limits().max_enum))
    ensure(is_hole_preserving(sp, space, delta), "embedding into the replete space loses a hole");
  return {std::move(space), std::move(forms), std::move(delta)};
}

// ---- hyperconvexity ------------------------------------------------------

HyperconvexityReport convexity_test(const FiniteSpace& sp) {
  const auto& alg = sp.algebra();
  const std::size_t k = alg.size();
  const auto balls = ball_table(sp);
  const auto values = alg.elements();
  HyperconvexityReport rep;
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y) {
      if (x == y) continue;
      for (auto p : values)
        for (auto q : values) {
          if (!alg.leq(sp.d(x, y), alg.oplus(p, q))) continue;
          // d(z,y) <= q iff d(y,z) <= inv q
          if (balls[x * k + p.id].intersects(balls[y * k + alg.inv(q).id])) continue;
          rep.hyperconvex = false;
          rep.failed = "convexity";
          rep.witness.assign(sp.size(), alg.top());
          rep.witness[x] = p;
          rep.witness[y] = alg.inv(q);
          rep.points = {x, y};
          return rep;
        }
    }
  return rep;
}

HyperconvexityReport helly2_test(const FiniteSpace& sp) {
  const auto& alg = sp.algebra();
  const std::size_t n = sp.size(), k = alg.size();
  const auto balls = ball_table(sp);
  HyperconvexityReport rep;
  Radii f(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b)
      for (std::size_t c = b + 1; c < n; ++c) {
        PointSet s(n, true);
        for (std::size_t x = 0; x < n; ++x) {
          const auto da = sp.d(x, a), db = sp.d(x, b), dc = sp.d(x, c);
          f[x] = alg.meet(alg.meet(alg.join(da, db), alg.join(da, dc)), alg.join(db, dc));
          s &= balls[x * k + f[x].id];
        }
        if (!s.empty()) continue;
        rep.hyperconvex = false;
        rep.failed = "2-helly";
        rep.witness = f;
        rep.points = {a, b, c};
        return rep;
      }
  return rep;
}

bool is_convex(const FiniteSpace& sp) { return convexity_test(sp).hyperconvex; }
bool helly2(const FiniteSpace& sp) { return helly2_test(sp).hyperconvex; }

HyperconvexityReport hyperconvexity(const FiniteSpace& sp) {
  // The empty family of balls has no common point in an empty space.
  if (sp.size() == 0) return {false, "empty", {}, {}};
  auto rep = convexity_test(sp);
  if (!rep.hyperconvex) return rep;
  return helly2_test(sp);
}

bool is_hyperconvex(const FiniteSpace& sp) { return hyperconvexity(sp).hyperconvex; }

// ---- maps between small spaces -------------------------------------------

namespace {

bool compatible(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& f, std::size_t x, std::size_t p) {
  const auto& alg = dst.algebra();
  return alg.leq(dst.d(f(x), f(p)), src.d(x, p)) && alg.leq(dst.d(f(p), f(x)), src.d(p, x));
}

// Backtracking over the unset points; `visit` returns false to stop.
void search_maps(const FiniteSpace& src, const FiniteSpace& dst, PointMap f,
                 const std::function<bool(const PointMap&)>& visit) {
  if (f.image.size() != src.size()) throw std::invalid_argument("partial map has the wrong length");
  std::vector<std::size_t> fixed, open;
  for (std::size_t x = 0; x < src.size(); ++x) (f.image[x] == unmapped ? open : fixed).push_back(x);
  for (auto x : fixed) {
    if (f.image[x] >= dst.size()) throw std::invalid_argument("partial map points outside the target");
    for (auto p : fixed)
      if (!compatible(src, dst, f, x, p)) return;
  }
  std::size_t nodes = 0;
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == open.size()) return visit(f);
    const std::size_t x = open[i];
    for (std::size_t y = 0; y < dst.size(); ++y) {
      if (++nodes > limits().max_enum) throw CapExceeded("map search exceeds the search bound");
      f.image[x] = y;
      bool ok = compatible(src, dst, f, x, x);
      for (auto p : fixed) ok = ok && compatible(src, dst, f, x, p);
      for (std::size_t j = 0; j < i && ok; ++j) ok = compatible(src, dst, f, x, open[j]);
      if (ok && !self(self, i + 1)) return false;
    }
    f.image[x] = unmapped;
    return true;
  };
  rec(rec, 0);
}

}  // namespace

std::optional<PointMap> extend_nonexpansive(const FiniteSpace& src, const FiniteSpace& dst, PointMap partial) {
  std::optional<PointMap> found;
  search_maps(src, dst, std::move(partial), [&](const PointMap& f) {
    found = f;
    return false;
  });
  return found;
}

std::optional<PointMap> find_retraction(const FiniteSpace& sp, const PointSet& a) {
  const auto members = a.members();
  auto target = sp.restrict_to(members);
  PointMap partial;
  partial.image.assign(sp.size(), unmapped);
  for (std::size_t i = 0; i < members.size(); ++i) partial.image[members[i]] = i;
  auto r = extend_nonexpansive(sp, target, partial);
  if (!r) return std::nullopt;
  for (auto& y : r->image) y = members[y];
  return r;
}

void for_each_nonexpansive(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& partial,
                           const std::function<bool(const PointMap&)>& visit) {
  search_maps(src, dst, partial, visit);
}

// ---- two-point envelopes -------------------------------------------------

FiniteSpace two_point_envelope(const std::shared_ptr<const FiniteAlgebra>& alg, Elem v) {
  std::set<Elem> pts;
  for (auto b : alg->elements()) pts.insert(alg->residual_left(v, b));
  ensure(pts.count(alg->zero()) && pts.count(v), "two-point envelope misses an endpoint");
  std::vector<std::string> names;
  std::vector<Elem> m;
  for (auto p : pts) names.push_back(alg->label(p));
  for (auto p : pts)
    for (auto q : pts) m.push_back(alg->distance(p, q));
  FiniteSpace sp(alg, std::move(names), std::move(m));
  ensure(sp.d(sp.index_of(alg->label(alg->zero())), sp.index_of(alg->label(v))) == v,
         "endpoint distance of the two-point envelope is wrong");
  return sp;
}

WordSpace two_point_envelope(const std::shared_ptr<const WordAlgebra>& alg, const Antichain& f) {
  const auto& alph = alg->alphabet();
  const auto closure = quotient_closure(alph, f);
  const std::set<Antichain> pts(closure.begin(), closure.end());
  ensure(pts.count(Antichain::everything()) && pts.count(f), "two-point envelope misses an endpoint");
  std::vector<std::string> names;
  std::vector<Antichain> dist;
  for (const auto& p : pts) {
    auto s = render_antichain(alph, p);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    names.push_back(s);
  }
  for (const auto& p : pts)
    for (const auto& q : pts) dist.push_back(alg->distance(p, q));
  WordSpace sp(alg, std::move(names), std::move(dist));
  const auto zero_at = static_cast<std::size_t>(std::distance(pts.begin(), pts.find(Antichain::everything())));
  const auto f_at = static_cast<std::size_t>(std::distance(pts.begin(), pts.find(f)));
  ensure(sp.d(zero_at, f_at) == f, "endpoint distance of the two-point envelope is wrong");
  return sp;
}

}  // namespace hmetric
