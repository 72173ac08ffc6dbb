#pragma once

// Small spaces and map enumerations shared by several test binaries.

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hmetric/algebra.hpp"
#include "hmetric/discrete.hpp"
#include "hmetric/metric.hpp"

namespace fixture {

using hmetric::Elem;
using hmetric::FiniteAlgebra;
using hmetric::FiniteSpace;
using hmetric::PointMap;

inline const std::shared_ptr<const FiniteAlgebra>& poset4() {
  static const auto alg = std::make_shared<const FiniteAlgebra>(hmetric::make_builtin("poset4"));
  return alg;
}

inline std::shared_ptr<const FiniteAlgebra> builtin(const char* spec) {
  return std::make_shared<const FiniteAlgebra>(hmetric::make_builtin_from_spec(spec));
}

inline Elem el(const FiniteAlgebra& a, const char* label) { return *a.find(label); }

/// Poset coding over poset4 from a strict order lt[x][y].
inline FiniteSpace poset_space(const std::vector<std::vector<bool>>& lt, std::vector<std::string> names = {}) {
  const auto& p4 = poset4();
  const std::size_t n = lt.size();
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<Elem> m;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      m.push_back(x == y ? p4->zero() : lt[x][y] ? el(*p4, "+") : lt[y][x] ? el(*p4, "-") : p4->top());
  return FiniteSpace(p4, std::move(names), std::move(m));
}

inline FiniteSpace chain(std::size_t n) {
  std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) lt[x][y] = true;
  return poset_space(lt);
}

/// 0 < a, b (the V-poset).
inline FiniteSpace vee() { return poset_space({{false, true, true}, {false, false, false}, {false, false, false}}); }

/// 0 < a, b < 1.
inline FiniteSpace diamond() {
  return poset_space({{false, true, true, true}, {false, false, false, true}, {false, false, false, true},
                      {false, false, false, false}});
}

/// Every strict order on n labelled points.
inline std::vector<std::vector<std::vector<bool>>> all_orders(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
  std::vector<std::vector<std::vector<bool>>> out;
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < pairs.size(); ++k) total *= 3;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::vector<std::vector<bool>> lt(n, std::vector<bool>(n, false));
    auto c = code;
    for (auto [x, y] : pairs) {
      if (c % 3 == 1) lt[x][y] = true;
      if (c % 3 == 2) lt[y][x] = true;
      c /= 3;
    }
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        for (std::size_t z = 0; z < n && ok; ++z)
          if (lt[x][y] && lt[y][z] && !lt[x][z]) ok = false;
    if (ok) out.push_back(lt);
  }
  return out;
}

inline std::vector<FiniteSpace> all_posets(std::size_t n) {
  std::vector<FiniteSpace> out;
  for (const auto& lt : all_orders(n)) out.push_back(poset_space(lt));
  return out;
}

inline std::vector<PointMap> all_maps(std::size_t n, std::size_t m) {
  std::vector<PointMap> out;
  PointMap f;
  f.image.assign(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.push_back(f);
      return;
    }
    for (std::size_t y = 0; y < m; ++y) {
      f.image[i] = y;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Every assignment E -> H, in lexicographic order.
inline std::vector<hmetric::Radii> all_radii(const FiniteAlgebra& alg, std::size_t n) {
  std::vector<hmetric::Radii> out;
  hmetric::Radii h(n);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.push_back(h);
      return;
    }
    for (auto v : alg.elements()) {
      h[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Subsets of {0..k-1} ordered by inclusion; element i is the bitmask i.
inline hmetric::Poset boolean_lattice(std::size_t k) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> lt;
  const std::size_t n = std::size_t{1} << k;
  for (std::size_t x = 0; x < n; ++x) {
    std::string name = "{";
    for (std::size_t b = 0; b < k; ++b)
      if (x >> b & 1U) name += std::to_string(b);
    names.push_back(name + "}");
    for (std::size_t y = 0; y < n; ++y)
      if (x != y && (x & y) == x) lt.emplace_back(x, y);
  }
  return hmetric::Poset(names, lt);
}

/// Chain 0 < 1 < ... < n-1.
inline hmetric::Poset chain_poset(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::size_t, std::size_t>> lt;
  for (std::size_t x = 0; x < n; ++x) {
    names.push_back(std::to_string(x));
    if (x + 1 < n) lt.emplace_back(x, x + 1);
  }
  return hmetric::Poset(names, lt);
}

/// Order-preserving self-maps, built coordinate by coordinate.
inline std::vector<PointMap> monotone_maps(const hmetric::Poset& p) {
  const std::size_t n = p.size();
  std::vector<PointMap> out;
  PointMap f;
  f.image.assign(n, 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) {
      out.push_back(f);
      return;
    }
    for (std::size_t y = 0; y < n; ++y) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (p.leq(j, i) && !p.leq(f.image[j], y)) ok = false;
        if (p.leq(i, j) && !p.leq(y, f.image[j])) ok = false;
      }
      if (!ok) continue;
      f.image[i] = y;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

/// Every valid space on n points over `alg` (d(y,x) = inv d(x,y)).
inline std::vector<FiniteSpace> all_spaces(const std::shared_ptr<const FiniteAlgebra>& alg, std::size_t n) {
  std::vector<FiniteSpace> out;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, static_cast<char>('a' + i)));
  std::vector<Elem> m(n * n, alg->zero());
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y) pairs.emplace_back(x, y);
  std::function<void(std::size_t)> rec = [&](std::size_t k) {
    if (k == pairs.size()) {
      FiniteSpace sp(alg, names, m);
      if (hmetric::validate_space(sp).valid) out.push_back(std::move(sp));
      return;
    }
    auto [x, y] = pairs[k];
    for (auto v : alg->elements()) {
      if (v == alg->zero()) continue;
      m[x * n + y] = v;
      m[y * n + x] = alg->inv(v);
      rec(k + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace fixture
