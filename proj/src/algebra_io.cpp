#include <fstream>
#include <map>
#include <sstream>

#include "hmetric/algebra.hpp"
#include "hmetric/errors.hpp"
#include "text_util.hpp"

namespace hmetric {

FiniteAlgebra parse_algebra(std::istream& in, const std::string& source) {
  auto lines = detail::read_lines(in);
  std::string name;
  std::vector<std::string> labels;
  std::map<std::string, std::size_t> index;
  int elements_line = 0;

  auto elem = [&](const detail::TextLine& line, const std::string& tok) {
    auto it = index.find(tok);
    if (it == index.end()) throw ParseError(source, line.number, "unknown element '" + tok + "'");
    return it->second;
  };

  std::vector<std::pair<std::size_t, std::size_t>> covers;
  std::map<std::pair<std::size_t, std::size_t>, std::pair<std::size_t, int>> ops;
  std::map<std::size_t, std::pair<std::size_t, int>> invs;

  for (const auto& line : lines) {
    const auto& t = line.tokens;
    const std::string& kw = t[0];
    auto arity = [&](std::size_t n) {
      if (t.size() != n + 1)
        throw ParseError(source, line.number, "'" + kw + "' expects " + std::to_string(n) + " operands");
    };
    if (kw == "algebra") {
      arity(1);
      name = t[1];
    } else if (kw == "elements") {
      if (!labels.empty()) throw ParseError(source, line.number, "duplicate 'elements' line");
      if (t.size() < 2) throw ParseError(source, line.number, "'elements' needs at least one element");
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!index.emplace(t[i], labels.size()).second)
          throw ParseError(source, line.number, "duplicate element '" + t[i] + "'");
        labels.push_back(t[i]);
      }
      elements_line = line.number;
    } else if (labels.empty()) {
      throw ParseError(source, line.number, "'" + kw + "' before 'elements'");
    } else if (kw == "cover") {
      arity(2);
      covers.emplace_back(elem(line, t[1]), elem(line, t[2]));
    } else if (kw == "op") {
      arity(3);
      auto key = std::pair(elem(line, t[1]), elem(line, t[2]));
      auto val = elem(line, t[3]);
      auto [it, fresh] = ops.emplace(key, std::pair(val, line.number));
      if (!fresh && it->second.first != val)
        throw ParseError(source, line.number, "conflicting 'op' row for (" + t[1] + ", " + t[2] + ")");
    } else if (kw == "inv") {
      arity(2);
      auto a = elem(line, t[1]);
      auto val = elem(line, t[2]);
      auto [it, fresh] = invs.emplace(a, std::pair(val, line.number));
      if (!fresh && it->second.first != val)
        throw ParseError(source, line.number, "conflicting 'inv' row for " + t[1]);
    } else {
      throw ParseError(source, line.number, "unknown keyword '" + kw + "'");
    }
  }
  int last_line = lines.empty() ? 1 : lines.back().number;
  if (name.empty()) throw ParseError(source, lines.empty() ? 1 : lines.front().number, "missing 'algebra NAME' line");
  if (labels.empty()) throw ParseError(source, last_line, "missing 'elements' line");

  const std::size_t n = labels.size();
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) leq[i * n + i] = 1;
  for (auto [a, b] : covers) leq[a * n + b] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (leq[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (leq[k * n + j]) leq[i * n + j] = 1;

  std::vector<std::uint16_t> oplus(n * n), inv(n);
  for (std::size_t a = 0; a < n; ++a) {
    auto it = invs.find(a);
    if (it == invs.end()) throw ParseError(source, elements_line, "missing 'inv' row for " + labels[a]);
    inv[a] = static_cast<std::uint16_t>(it->second.first);
    for (std::size_t b = 0; b < n; ++b) {
      auto jt = ops.find({a, b});
      if (jt == ops.end())
        throw ParseError(source, elements_line, "missing 'op' row for (" + labels[a] + ", " + labels[b] + ")");
      oplus[a * n + b] = static_cast<std::uint16_t>(jt->second.first);
    }
  }
  return FiniteAlgebra(name, std::move(labels), std::move(leq), std::move(oplus), std::move(inv));
}

FiniteAlgebra load_algebra_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return parse_algebra(in, path);
}

std::string write_algebra(const FiniteAlgebra& alg) {
  std::ostringstream out;
  out << "algebra " << alg.name() << "\nelements";
  for (auto e : alg.elements()) out << ' ' << alg.label(e);
  out << '\n';
  for (auto a : alg.elements())
    for (auto b : alg.elements()) {
      if (!alg.less(a, b)) continue;
      bool cover = true;
      for (auto c : alg.elements())
        if (alg.less(a, c) && alg.less(c, b)) cover = false;
      if (cover) out << "cover " << alg.label(a) << ' ' << alg.label(b) << '\n';
    }
  for (auto a : alg.elements())
    for (auto b : alg.elements())
      out << "op " << alg.label(a) << ' ' << alg.label(b) << ' ' << alg.label(alg.oplus(a, b)) << '\n';
  for (auto a : alg.elements()) out << "inv " << alg.label(a) << ' ' << alg.label(alg.inv(a)) << '\n';
  return out.str();
}

}  // namespace hmetric
