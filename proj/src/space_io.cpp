#include "hmetric/space_io.hpp"

#include <filesystem>
#include <fstream>
#include <map>

#include "text_util.hpp"

namespace hmetric {

namespace {

std::shared_ptr<const FiniteAlgebra> resolve_algebra(const std::string& spec, const std::string& base_dir,
                                                     const std::string& source, int line) {
  try {
    return std::make_shared<const FiniteAlgebra>(make_builtin_from_spec(spec));
  } catch (const std::invalid_argument& builtin_error) {
    auto path = std::filesystem::path(base_dir) / spec;
    if (std::filesystem::exists(path)) return std::make_shared<const FiniteAlgebra>(load_algebra_file(path.string()));
    throw ParseError(source, line, builtin_error.what());
  }
}

template <class A, class Parse>
MetricSpace<A> assemble(std::shared_ptr<const A> alg, const std::vector<detail::TextLine>& lines, std::size_t first,
                        const std::string& source, Parse parse_value) {
  using V = typename A::value_type;
  std::vector<std::string> points;
  std::map<std::string, std::size_t> index;
  int points_line = 0;
  std::map<std::pair<std::size_t, std::size_t>, V> given;
  for (std::size_t i = first; i < lines.size(); ++i) {
    const auto& line = lines[i];
    const auto& t = line.tokens;
    if (t[0] == "points") {
      if (!points.empty()) throw ParseError(source, line.number, "duplicate 'points' line");
      for (std::size_t k = 1; k < t.size(); ++k) {
        if (!index.emplace(t[k], points.size()).second)
          throw ParseError(source, line.number, "duplicate point '" + t[k] + "'");
        points.push_back(t[k]);
      }
      if (points.size() > limits().max_points)
        throw ParseError(source, line.number, "point count exceeds the bound of " + std::to_string(limits().max_points));
      points_line = line.number;
    } else if (t[0] == "d") {
      if (points.empty()) throw ParseError(source, line.number, "'d' row before 'points'");
      if (t.size() < 4) throw ParseError(source, line.number, "'d' expects two points and a value");
      auto pi = index.find(t[1]);
      auto qi = index.find(t[2]);
      if (pi == index.end()) throw ParseError(source, line.number, "unknown point '" + t[1] + "'");
      if (qi == index.end()) throw ParseError(source, line.number, "unknown point '" + t[2] + "'");
      V v;
      try {
        v = parse_value(detail::rest_after(line, 3));
      } catch (const std::invalid_argument& e) {
        throw ParseError(source, line.number, e.what());
      }
      if (pi->second == qi->second) {
        if (!(v == alg->zero())) throw ParseError(source, line.number, "diagonal distance must be zero");
        continue;
      }
      auto [it, fresh] = given.emplace(std::pair(pi->second, qi->second), v);
      if (!fresh && !(it->second == v))
        throw ParseError(source, line.number, "conflicting distance for (" + t[1] + ", " + t[2] + ")");
    } else {
      throw ParseError(source, line.number, "unknown keyword '" + t[0] + "'");
    }
  }
  if (points_line == 0) throw ParseError(source, lines.empty() ? 1 : lines.back().number, "missing 'points' line");
  const std::size_t n = points.size();
  std::vector<V> m(n * n, alg->zero());
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      if (x == y) continue;
      if (auto it = given.find({x, y}); it != given.end()) {
        m[x * n + y] = it->second;
      } else if (auto jt = given.find({y, x}); jt != given.end()) {
        m[x * n + y] = alg->inv(jt->second);
      } else {
        throw ParseError(source, points_line, "no distance given between " + points[x] + " and " + points[y]);
      }
    }
  return MetricSpace<A>(std::move(alg), std::move(points), std::move(m));
}

}  // namespace

AnySpace parse_space(std::istream& in, const std::string& source, const std::string& base_dir) {
  auto lines = detail::read_lines(in);
  if (lines.empty()) throw ParseError(source, 1, "empty space file");
  const auto& head = lines[0];
  if (head.tokens.size() != 3 || head.tokens[0] != "space" || head.tokens[1] != "over")
    throw ParseError(source, head.number, "expected 'space over ALGEBRA'");
  const std::string& alg_spec = head.tokens[2];
  if (alg_spec == "words") {
    std::size_t first = 1;
    Alphabet alph = Alphabet::signed_pair();
    if (lines.size() > 1 && lines[1].tokens[0] == "alphabet") {
      try {
        alph = Alphabet::parse(detail::rest_after(lines[1], 0));
      } catch (const std::invalid_argument& e) {
        throw ParseError(source, lines[1].number, e.what());
      }
      first = 2;
    }
    auto alg = std::make_shared<const WordAlgebra>(alph);
    return assemble<WordAlgebra>(alg, lines, first, source,
                                 [&](const std::string& text) { return alg->parse(text); });
  }
  auto alg = resolve_algebra(alg_spec, base_dir, source, head.number);
  return assemble<FiniteAlgebra>(alg, lines, 1, source, [&](const std::string& text) {
    auto e = alg->find(text);
    if (!e) throw std::invalid_argument("unknown value '" + text + "' in " + alg->name());
    return *e;
  });
}

AnySpace load_space_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  auto dir = std::filesystem::path(path).parent_path().string();
  return parse_space(in, path, dir.empty() ? "." : dir);
}

PointMap parse_map(std::istream& in, const std::string& source, const std::vector<std::string>& src,
                   const std::vector<std::string>& dst) {
  auto lines = detail::read_lines(in);
  if (lines.empty() || lines[0].tokens[0] != "map" || lines[0].tokens.size() > 2)
    throw ParseError(source, lines.empty() ? 1 : lines[0].number, "expected 'map NAME'");
  auto lookup = [](const std::vector<std::string>& pts, const std::string& p) -> std::optional<std::size_t> {
    for (std::size_t i = 0; i < pts.size(); ++i)
      if (pts[i] == p) return i;
    return std::nullopt;
  };
  constexpr std::size_t unset = static_cast<std::size_t>(-1);
  PointMap f;
  f.image.assign(src.size(), unset);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i].tokens;
    if (t[0] != "m" || t.size() != 3) throw ParseError(source, lines[i].number, "expected 'm p q'");
    auto p = lookup(src, t[1]);
    auto q = lookup(dst, t[2]);
    if (!p) throw ParseError(source, lines[i].number, "unknown source point '" + t[1] + "'");
    if (!q) throw ParseError(source, lines[i].number, "unknown target point '" + t[2] + "'");
    if (f.image[*p] != unset && f.image[*p] != *q)
      throw ParseError(source, lines[i].number, "point '" + t[1] + "' mapped twice");
    f.image[*p] = *q;
  }
  for (std::size_t p = 0; p < src.size(); ++p)
    if (f.image[p] == unset) throw ParseError(source, lines.back().number, "no image for point '" + src[p] + "'");
  return f;
}

PointMap load_map_file(const std::string& path, const std::vector<std::string>& src,
                       const std::vector<std::string>& dst) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_map(in, path, src, dst);
}

}  // namespace hmetric
