#include "hmetric/discrete.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <map>
#include <sstream>

#include "hmetric/dfa.hpp"
#include "text_util.hpp"

namespace hmetric {

namespace {

std::size_t lookup(const std::vector<std::string>& names, const std::string& name, const char* what) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw std::invalid_argument(std::string("unknown ") + what + " '" + name + "'");
  return static_cast<std::size_t>(it - names.begin());
}

void require_unique(const std::vector<std::string>& names) {
  auto sorted = names;
  std::sort(sorted.begin(), sorted.end());
  auto dup = std::adjacent_find(sorted.begin(), sorted.end());
  if (dup != sorted.end()) throw std::invalid_argument("duplicate name '" + *dup + "'");
}

std::shared_ptr<const FiniteAlgebra> builtin(const char* name, std::vector<int> params = {}) {
  return std::make_shared<const FiniteAlgebra>(make_builtin(name, params));
}

Elem label(const FiniteAlgebra& alg, const std::string& text) {
  auto e = alg.find(text);
  ensure(e.has_value(), "missing label " + text + " in " + alg.name());
  return *e;
}

void require_algebra(const FiniteSpace& sp, const char* name) {
  if (sp.algebra().name() != name)
    throw Refusal(std::string("space is not over ") + name, {sp.algebra().name()});
  require_valid(sp);
}

}  // namespace

// ---- structures ------------------------------------------------------------

Digraph::Digraph(std::vector<std::string> names) : vertices(std::move(names)) {
  require_unique(vertices);
  arcs.assign(vertices.size() * vertices.size(), 0);
}

void Digraph::add_loops() {
  for (std::size_t x = 0; x < size(); ++x) add_arc(x, x);
}

bool Digraph::is_reflexive() const {
  for (std::size_t x = 0; x < size(); ++x)
    if (!has_arc(x, x)) return false;
  return true;
}

bool Digraph::is_symmetric() const {
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y)
      if (has_arc(x, y) != has_arc(y, x)) return false;
  return true;
}

std::size_t Digraph::index_of(const std::string& name) const { return lookup(vertices, name, "vertex"); }

Poset::Poset(std::vector<std::string> names, const std::vector<std::pair<std::size_t, std::size_t>>& lt)
    : elements(std::move(names)) {
  require_unique(elements);
  const std::size_t n = elements.size();
  order.assign(n * n, 0);
  for (std::size_t x = 0; x < n; ++x) order[x * n + x] = 1;
  for (auto [x, y] : lt) order[x * n + y] = 1;
  for (std::size_t z = 0; z < n; ++z)
    for (std::size_t x = 0; x < n; ++x)
      if (order[x * n + z])
        for (std::size_t y = 0; y < n; ++y)
          if (order[z * n + y]) order[x * n + y] = 1;
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = x + 1; y < n; ++y)
      if (order[x * n + y] && order[y * n + x])
        throw std::invalid_argument("order has a cycle through " + elements[x] + " and " + elements[y]);
}

std::size_t Poset::index_of(const std::string& name) const { return lookup(elements, name, "element"); }

std::optional<std::size_t> Poset::join(std::size_t x, std::size_t y) const {
  std::optional<std::size_t> best;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq(x, z) && leq(y, z) && (!best || leq(z, *best))) best = z;
  if (!best) return std::nullopt;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq(x, z) && leq(y, z) && !leq(*best, z)) return std::nullopt;
  return best;
}

std::optional<std::size_t> Poset::meet(std::size_t x, std::size_t y) const {
  std::optional<std::size_t> best;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq(z, x) && leq(z, y) && (!best || leq(*best, z))) best = z;
  if (!best) return std::nullopt;
  for (std::size_t z = 0; z < size(); ++z)
    if (leq(z, x) && leq(z, y) && !leq(z, *best)) return std::nullopt;
  return best;
}

std::optional<std::size_t> Poset::bottom() const {
  for (std::size_t z = 0; z < size(); ++z) {
    bool least = true;
    for (std::size_t y = 0; y < size() && least; ++y) least = leq(z, y);
    if (least) return z;
  }
  return std::nullopt;
}

std::optional<std::size_t> Poset::top() const {
  for (std::size_t z = 0; z < size(); ++z) {
    bool greatest = true;
    for (std::size_t y = 0; y < size() && greatest; ++y) greatest = leq(y, z);
    if (greatest) return z;
  }
  return std::nullopt;
}

bool Poset::is_lattice() const {
  if (size() == 0) return false;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = x + 1; y < size(); ++y)
      if (!join(x, y) || !meet(x, y)) return false;
  return true;
}

std::vector<std::pair<std::size_t, std::size_t>> Poset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t x = 0; x < size(); ++x)
    for (std::size_t y = 0; y < size(); ++y) {
      if (!less(x, y)) continue;
      bool cover = true;
      for (std::size_t z = 0; z < size() && cover; ++z) cover = !(less(x, z) && less(z, y));
      if (cover) out.emplace_back(x, y);
    }
  return out;
}

std::size_t TransitionSystem::index_of(const std::string& name) const { return lookup(states, name, "state"); }

void TransitionSystem::close_reflexive() {
  for (std::size_t x = 0; x < size(); ++x)
    for (Letter a = 0; a < alphabet.size(); ++a) transitions.push_back({x, a, x});
  normalize();
}

void TransitionSystem::close_involutive() {
  const auto n = transitions.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = transitions[i];
    transitions.push_back({t.to, alphabet.inv(t.letter), t.from});
  }
  normalize();
}

void TransitionSystem::close_monotone() {
  const auto n = transitions.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto t = transitions[i];
    for (Letter b = 0; b < alphabet.size(); ++b)
      if (alphabet.letter_leq(t.letter, b)) transitions.push_back({t.from, b, t.to});
  }
  normalize();
}

void TransitionSystem::normalize() {
  std::sort(transitions.begin(), transitions.end());
  transitions.erase(std::unique(transitions.begin(), transitions.end()), transitions.end());
}

std::optional<std::pair<std::string, std::string>> ts_violation(const TransitionSystem& m) {
  auto sorted = m.transitions;
  std::sort(sorted.begin(), sorted.end());
  auto has = [&](const Transition& t) { return std::binary_search(sorted.begin(), sorted.end(), t); };
  auto show = [&](const Transition& t) {
    return m.states[t.from] + " " + std::string(1, m.alphabet.symbol(t.letter)) + " " + m.states[t.to];
  };
  for (std::size_t x = 0; x < m.size(); ++x)
    for (Letter a = 0; a < m.alphabet.size(); ++a)
      if (!has({x, a, x})) return std::pair{std::string("reflexive"), show({x, a, x})};
  for (const auto& t : sorted) {
    if (!has({t.to, m.alphabet.inv(t.letter), t.from})) return std::pair{std::string("involutive"), show(t)};
    for (Letter b = 0; b < m.alphabet.size(); ++b)
      if (m.alphabet.letter_leq(t.letter, b) && !has({t.from, b, t.to}))
        return std::pair{std::string("letter-monotone"), show(t)};
  }
  return std::nullopt;
}

// ---- text formats ------------------------------------------------------------

namespace {

template <class F>
auto with_line(const std::string& source, int line, F body) {
  try {
    return body();
  } catch (const std::invalid_argument& e) {
    throw ParseError(source, line, e.what());
  }
}

std::vector<std::string> collect_names(const std::vector<detail::TextLine>& lines, const std::string& source,
                                       const char* keyword) {
  std::vector<std::string> names;
  for (const auto& l : lines)
    if (l.tokens[0] == keyword)
      names.insert(names.end(), l.tokens.begin() + 1, l.tokens.end());
  if (names.size() > limits().max_points)
    throw ParseError(source, lines.empty() ? 1 : lines.front().number,
                     "vertex count exceeds the bound of " + std::to_string(limits().max_points));
  return names;
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path, 0, "cannot open file");
  return in;
}

}  // namespace

Digraph parse_digraph(std::istream& in, const std::string& source) {
  auto lines = detail::read_lines(in);
  if (lines.empty() || (lines[0].tokens[0] != "digraph" && lines[0].tokens[0] != "graph"))
    throw ParseError(source, lines.empty() ? 1 : lines[0].number, "expected 'digraph' or 'graph'");
  const bool symmetric = lines[0].tokens[0] == "graph";
  auto names = collect_names(lines, source, "v");
  Digraph g = with_line(source, lines[0].number, [&] { return Digraph(names); });
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i].tokens;
    with_line(source, lines[i].number, [&] {
      if (t[0] == "v") return;
      if (t[0] == "reflexive" && t.size() == 1) return g.add_loops();
      if (t[0] != "e" || t.size() != 3) throw std::invalid_argument("expected 'v', 'e a b' or 'reflexive'");
      auto a = g.index_of(t[1]), b = g.index_of(t[2]);
      g.add_arc(a, b);
      if (symmetric) g.add_arc(b, a);
    });
  }
  return g;
}

Poset parse_poset(std::istream& in, const std::string& source) {
  auto lines = detail::read_lines(in);
  if (lines.empty() || lines[0].tokens != std::vector<std::string>{"poset"})
    throw ParseError(source, lines.empty() ? 1 : lines[0].number, "expected 'poset'");
  auto names = collect_names(lines, source, "v");
  std::vector<std::pair<std::size_t, std::size_t>> lt;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i].tokens;
    with_line(source, lines[i].number, [&] {
      if (t[0] == "v") return;
      if (t[0] != "lt" || t.size() != 3) throw std::invalid_argument("expected 'v' or 'lt a b'");
      auto a = lookup(names, t[1], "element"), b = lookup(names, t[2], "element");
      if (a == b) throw std::invalid_argument("'lt' needs two distinct elements");
      lt.emplace_back(a, b);
    });
  }
  return with_line(source, lines.back().number, [&] { return Poset(names, lt); });
}

TransitionSystem parse_ts(std::istream& in, const std::string& source) {
  auto lines = detail::read_lines(in);
  if (lines.empty() || lines[0].tokens[0] != "ts")
    throw ParseError(source, lines.empty() ? 1 : lines[0].number, "expected 'ts [alphabet ...]'");
  TransitionSystem m;
  if (lines[0].tokens.size() > 1)
    m.alphabet = with_line(source, lines[0].number, [&] { return Alphabet::parse(detail::rest_after(lines[0], 1)); });
  bool reflexive = false, involutive = false;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto& t = lines[i].tokens;
    with_line(source, lines[i].number, [&] {
      auto state = [&](const std::string& s) {
        auto it = std::find(m.states.begin(), m.states.end(), s);
        if (it != m.states.end()) return static_cast<std::size_t>(it - m.states.begin());
        m.states.push_back(s);
        return m.states.size() - 1;
      };
      if (t[0] == "states") {
        for (std::size_t k = 1; k < t.size(); ++k) state(t[k]);
      } else if (t[0] == "reflexive" && t.size() == 1) {
        reflexive = true;
      } else if (t[0] == "involutive" && t.size() == 1) {
        involutive = true;
      } else if (t[0] == "t" && t.size() == 4) {
        if (t[2].size() != 1) throw std::invalid_argument("letters are single characters");
        auto a = m.alphabet.find(t[2][0]);
        if (!a) throw std::invalid_argument("letter '" + t[2] + "' is not in the alphabet");
        auto p = state(t[1]);
        auto q = state(t[3]);
        m.transitions.push_back({p, *a, q});
      } else {
        throw std::invalid_argument("expected 'states', 't p a q', 'reflexive' or 'involutive'");
      }
    });
  }
  if (m.states.size() > limits().max_points)
    throw ParseError(source, lines.back().number, "state count exceeds the point bound");
  if (involutive) m.close_involutive();
  if (reflexive) m.close_reflexive();
  m.normalize();
  return m;
}

Digraph load_digraph_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_digraph(in, path);
}

Poset load_poset_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_poset(in, path);
}

TransitionSystem load_ts_file(const std::string& path) {
  auto in = open_or_throw(path);
  return parse_ts(in, path);
}

std::string to_dot(const Digraph& g, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n";
  for (const auto& v : g.vertices) out << "  \"" << v << "\";\n";
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      if (x != y && g.has_arc(x, y)) out << "  \"" << g.vertices[x] << "\" -> \"" << g.vertices[y] << "\";\n";
  out << "}\n";
  return out.str();
}

std::string to_dot(const Poset& p, const std::string& name) {
  std::ostringstream out;
  out << "digraph " << name << " {\n  rankdir=BT;\n";
  for (const auto& v : p.elements) out << "  \"" << v << "\";\n";
  for (auto [x, y] : p.covers()) out << "  \"" << p.elements[x] << "\" -> \"" << p.elements[y] << "\";\n";
  out << "}\n";
  return out.str();
}

// ---- encodings -----------------------------------------------------------------

FiniteSpace encode_graph(const Digraph& g) {
  if (!g.is_reflexive()) throw Refusal("graph is not reflexive");
  if (!g.is_symmetric()) throw Refusal("graph is not symmetric");
  auto alg = builtin("graph3");
  const auto half = label(*alg, "1/2");
  std::vector<Elem> m;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      m.push_back(x == y ? alg->zero() : g.has_arc(x, y) ? half : alg->top());
  return FiniteSpace(alg, g.vertices, std::move(m));
}

FiniteSpace encode_digraph(const Digraph& g) {
  if (!g.is_reflexive()) throw Refusal("digraph is not reflexive");
  auto alg = builtin("digraph5");
  const auto half = label(*alg, "1/2"), plus = label(*alg, "+"), minus = label(*alg, "-");
  std::vector<Elem> m;
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y) {
      const bool fw = g.has_arc(x, y), bw = g.has_arc(y, x);
      m.push_back(x == y ? alg->zero() : fw && bw ? half : fw ? plus : bw ? minus : alg->top());
    }
  return FiniteSpace(alg, g.vertices, std::move(m));
}

FiniteSpace encode_poset(const Poset& p) {
  auto alg = builtin("poset4");
  const auto plus = label(*alg, "+"), minus = label(*alg, "-");
  std::vector<Elem> m;
  for (std::size_t x = 0; x < p.size(); ++x)
    for (std::size_t y = 0; y < p.size(); ++y)
      m.push_back(x == y ? alg->zero() : p.leq(x, y) ? plus : p.leq(y, x) ? minus : alg->top());
  return FiniteSpace(alg, p.elements, std::move(m));
}

Digraph decode_graph(const FiniteSpace& sp) {
  require_algebra(sp, "graph3");
  Digraph g(sp.points());
  const auto half = label(sp.algebra(), "1/2");
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y)
      if (x == y || sp.d(x, y) == half) g.add_arc(x, y);
  return g;
}

Digraph decode_digraph(const FiniteSpace& sp) {
  require_algebra(sp, "digraph5");
  Digraph g(sp.points());
  const auto& alg = sp.algebra();
  const auto half = label(alg, "1/2"), plus = label(alg, "+");
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y) {
      const auto v = sp.d(x, y);
      if (x == y || v == half || v == plus) g.add_arc(x, y);
    }
  return g;
}

Poset decode_poset(const FiniteSpace& sp) {
  require_algebra(sp, "poset4");
  const auto plus = label(sp.algebra(), "+");
  std::vector<std::pair<std::size_t, std::size_t>> lt;
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y)
      if (sp.d(x, y) == plus) lt.emplace_back(x, y);
  Poset p(sp.points(), lt);
  for (std::size_t x = 0; x < sp.size(); ++x)
    for (std::size_t y = 0; y < sp.size(); ++y)
      ensure(p.less(x, y) == (sp.d(x, y) == plus), "poset coding is not transitive");
  return p;
}

// ---- distances ---------------------------------------------------------------

FiniteSpace graphic_distance(const Digraph& g, int k) {
  if (!g.is_reflexive()) throw Refusal("graph is not reflexive");
  if (!g.is_symmetric()) throw Refusal("graph is not symmetric");
  auto alg = builtin("nat", {k});
  const std::size_t n = g.size();
  std::vector<Elem> m(n * n, alg->top());
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<int> dist(n, -1);
    std::deque<std::size_t> queue{s};
    dist[s] = 0;
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (std::size_t y = 0; y < n; ++y)
        if (g.has_arc(x, y) && dist[y] < 0) {
          dist[y] = dist[x] + 1;
          queue.push_back(y);
        }
    }
    for (std::size_t y = 0; y < n; ++y)
      if (dist[y] >= 0 && dist[y] <= k) m[s * n + y] = label(*alg, std::to_string(dist[y]));
  }
  return FiniteSpace(alg, g.vertices, std::move(m));
}

FiniteSpace fence_space(const Poset& p, int k) {
  auto alg = builtin("fence", {k});
  const std::size_t n = p.size();
  std::vector<Elem> m(n * n, alg->top());
  constexpr int none = -1;
  // Shortest fence from s whose first step goes up (dir 0) or down (dir 1).
  auto shortest = [&](std::size_t s, int first) {
    std::vector<int> best(n, none);
    std::vector<std::array<int, 2>> seen(n, {none, none});
    std::deque<std::pair<std::size_t, int>> queue{{s, first}};
    seen[s][static_cast<std::size_t>(first)] = 0;
    best[s] = 0;
    while (!queue.empty()) {
      auto [x, dir] = queue.front();
      queue.pop_front();
      const int len = seen[x][static_cast<std::size_t>(dir)];
      for (std::size_t y = 0; y < n; ++y) {
        const bool step = dir == 0 ? p.leq(x, y) : p.leq(y, x);
        auto& slot = seen[y][static_cast<std::size_t>(1 - dir)];
        if (!step || slot != none) continue;
        slot = len + 1;
        if (best[y] == none) best[y] = len + 1;
        queue.emplace_back(y, 1 - dir);
      }
    }
    return best;
  };
  for (std::size_t s = 0; s < n; ++s) {
    auto up = shortest(s, 0), down = shortest(s, 1);
    for (std::size_t y = 0; y < n; ++y) {
      if (y == s) {
        m[s * n + y] = alg->zero();
        continue;
      }
      if (up[y] == none || down[y] == none) continue;
      if (std::min(up[y], down[y]) > k) continue;
      m[s * n + y] = label(*alg, "(" + std::to_string(up[y]) + "," + std::to_string(down[y]) + ")");
    }
  }
  return FiniteSpace(alg, p.elements, std::move(m));
}

WordSpace ts_space(const TransitionSystem& m) {
  if (auto bad = ts_violation(m)) throw Refusal("transition system is not " + bad->first, {bad->second});
  const std::size_t n = m.size();
  if (n > 12) throw CapExceeded("determinization is limited to 12 states", {std::to_string(n)});
  const std::size_t letters = m.alphabet.size();
  std::vector<std::uint32_t> succ(n * letters, 0);
  for (const auto& t : m.transitions) succ[t.from * letters + t.letter] |= 1U << t.to;

  auto alg = std::make_shared<const WordAlgebra>(m.alphabet);
  std::vector<Antichain> dist(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    std::map<std::uint32_t, State> id;
    std::vector<std::uint32_t> sets{1U << x};
    id[1U << x] = 0;
    Dfa d;
    d.letters = letters;
    for (std::size_t i = 0; i < sets.size(); ++i)
      for (Letter a = 0; a < letters; ++a) {
        std::uint32_t next = 0;
        for (std::size_t q = 0; q < n; ++q)
          if (sets[i] >> q & 1U) next |= succ[q * letters + a];
        auto [it, fresh] = id.emplace(next, static_cast<State>(sets.size()));
        if (fresh) sets.push_back(next);
        d.next.push_back(it->second);
      }
    for (std::size_t y = 0; y < n; ++y) {
      d.accepting.assign(sets.size(), false);
      for (std::size_t i = 0; i < sets.size(); ++i) d.accepting[i] = (sets[i] >> y & 1U) != 0;
      dist[x * n + y] = minimal_basis(m.alphabet, minimize(d));
    }
  }
  return WordSpace(alg, m.states, std::move(dist));
}

TransitionSystem digraph_system(const Digraph& g) {
  TransitionSystem m;
  m.states = g.vertices;
  const Letter plus = *m.alphabet.find('+'), minus = *m.alphabet.find('-');
  for (std::size_t x = 0; x < g.size(); ++x)
    for (std::size_t y = 0; y < g.size(); ++y)
      if (g.has_arc(x, y)) {
        m.transitions.push_back({x, plus, y});
        m.transitions.push_back({y, minus, x});
      }
  m.normalize();
  return m;
}

WordSpace zigzag_space(const Digraph& g) {
  if (!g.is_reflexive()) throw Refusal("digraph is not reflexive");
  return ts_space(digraph_system(g));
}

ConnexityReport check_connexity(const WordSpace& sp) {
  require_valid(sp);
  const auto& alph = sp.algebra().alphabet();
  if (!alph.is_signed_pair()) throw Refusal("connexity is defined over the alphabet {+,-}");
  ConnexityReport rep;
  const std::size_t n = sp.size();
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      for (const auto& w : sp.d(x, y).basis())
        for (std::size_t i = 0; i <= w.size(); ++i) {
          Word u(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
          Word v(w.begin() + static_cast<std::ptrdiff_t>(i), w.end());
          bool found = false;
          for (std::size_t z = 0; z < n && !found; ++z)
            found = sp.d(x, z).contains(alph, u) && sp.d(z, y).contains(alph, v);
          if (found) continue;
          rep.holds = false;
          rep.x = x;
          rep.y = y;
          rep.word = w;
          rep.split = i;
          return rep;
        }
  Digraph g(sp.points());
  const Word plus{*alph.find('+')};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      if (sp.d(x, y).contains(alph, plus)) g.add_arc(x, y);
  ensure(zigzag_space(g).matrix() == sp.matrix(), "connexity holds but the reconstructed digraph differs");
  rep.graph = std::move(g);
  return rep;
}

}  // namespace hmetric
