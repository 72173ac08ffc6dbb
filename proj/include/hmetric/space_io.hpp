#pragma once

#include <iosfwd>
#include <sstream>
#include <string>
#include <variant>

#include "hmetric/metric.hpp"

namespace hmetric {

using AnySpace = std::variant<FiniteSpace, WordSpace>;

/// `space over ALG`, optional `alphabet ...` (word spaces), `points ...`,
/// then `d p q v` rows. ALG is a builtin spec, `words`, or a path to an
/// algebra file relative to `base_dir`.
AnySpace parse_space(std::istream& in, const std::string& source, const std::string& base_dir = ".");
AnySpace load_space_file(const std::string& path);

/// `map NAME` then `m p q` rows; every point of `src` needs an image.
PointMap parse_map(std::istream& in, const std::string& source, const std::vector<std::string>& src,
                   const std::vector<std::string>& dst);
PointMap load_map_file(const std::string& path, const std::vector<std::string>& src,
                       const std::vector<std::string>& dst);

template <ValueAlgebra A>
std::string write_space(const MetricSpace<A>& sp) {
  std::ostringstream out;
  out << "space over " << sp.algebra().name() << '\n';
  if constexpr (std::is_same_v<A, WordAlgebra>) out << sp.algebra().alphabet().declaration() << '\n';
  out << "points";
  for (const auto& p : sp.points()) out << ' ' << p;
  out << '\n';
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y)
      if (x != y) out << "d " << sp.point(x) << ' ' << sp.point(y) << ' ' << sp.algebra().render(sp.d(x, y)) << '\n';
  return out.str();
}

}  // namespace hmetric
