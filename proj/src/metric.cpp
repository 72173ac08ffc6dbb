#include "hmetric/metric.hpp"

namespace hmetric {

std::vector<PointSet> ball_table(const FiniteSpace& sp) {
  const auto& alg = sp.algebra();
  const std::size_t h = alg.size();
  std::vector<PointSet> t;
  t.reserve(sp.size() * h);
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (auto r : alg.elements()) t.push_back(ball(sp, x, r));
  return t;
}

bool is_hole(const FiniteSpace& sp, const Radii& h) { return ball_intersection(sp, h).empty(); }

Radii image_hole(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& f, const Radii& h) {
  const auto& alg = dst.algebra();
  Radii out(dst.size(), alg.top());
  for (std::size_t y = 0; y < src.size(); ++y) out[f(y)] = alg.meet(out[f(y)], h[y]);
  return out;
}

std::optional<Radii> hole_preservation_witness(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& f) {
  if (map_check(src, dst, f) == MapKind::neither) throw Refusal("map is not nonexpansive");
  const auto& alg = src.algebra();
  const std::size_t k = alg.size();
  double total = 1;
  for (std::size_t i = 0; i < src.size(); ++i) total *= static_cast<double>(k);
  if (total > static_cast<double>(limits().max_enum))
    throw CapExceeded("hole enumeration exceeds the assignment bound");

  const auto src_balls = ball_table(src);
  const auto dst_balls = ball_table(dst);
  std::vector<std::size_t> digits(src.size(), 0);
  Radii h(src.size(), alg.zero());
  while (true) {
    PointSet s(src.size(), true);
    for (std::size_t x = 0; x < src.size() && !s.empty(); ++x) s &= src_balls[x * k + h[x].id];
    if (s.empty()) {
      auto hf = image_hole(src, dst, f, h);
      PointSet t(dst.size(), true);
      for (std::size_t x = 0; x < dst.size() && !t.empty(); ++x) t &= dst_balls[x * k + hf[x].id];
      if (!t.empty()) return h;
    }
    std::size_t i = 0;
    while (i < digits.size() && ++digits[i] == k) digits[i++] = 0;
    if (i == digits.size()) break;
    for (std::size_t j = 0; j <= i; ++j) h[j] = Elem{static_cast<std::uint16_t>(digits[j])};
  }
  return std::nullopt;
}

bool is_hole_preserving(const FiniteSpace& src, const FiniteSpace& dst, const PointMap& f) {
  return !hole_preservation_witness(src, dst, f).has_value();
}

FiniteSpace value_space(const std::shared_ptr<const FiniteAlgebra>& alg) {
  std::vector<std::string> names;
  std::vector<Elem> m;
  for (auto p : alg->elements()) names.push_back(alg->label(p));
  for (auto p : alg->elements())
    for (auto q : alg->elements()) m.push_back(alg->distance(p, q));
  return FiniteSpace(alg, std::move(names), std::move(m));
}

}  // namespace hmetric
