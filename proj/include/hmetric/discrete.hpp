#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hmetric/metric.hpp"
#include "hmetric/wordlang.hpp"

namespace hmetric {

/// Directed graph on named vertices with a dense arc matrix.
struct Digraph {
  std::vector<std::string> vertices;
  std::vector<std::uint8_t> arcs;  // arcs[x * n + y]

  Digraph() = default;
  explicit Digraph(std::vector<std::string> names);

  std::size_t size() const { return vertices.size(); }
  bool has_arc(std::size_t x, std::size_t y) const { return arcs[x * size() + y] != 0; }
  void add_arc(std::size_t x, std::size_t y) { arcs[x * size() + y] = 1; }
  void add_loops();
  bool is_reflexive() const;
  bool is_symmetric() const;
  std::size_t index_of(const std::string& name) const;

  friend bool operator==(const Digraph&, const Digraph&) = default;
};

/// Finite poset stored as its reflexive order matrix.
struct Poset {
  std::vector<std::string> elements;
  std::vector<std::uint8_t> order;  // order[x * n + y]: x <= y

  Poset() = default;
  /// `lt` lists strict relations (covers suffice); the reflexive transitive
  /// closure is taken. Throws std::invalid_argument on a cycle.
  Poset(std::vector<std::string> names, const std::vector<std::pair<std::size_t, std::size_t>>& lt);

  std::size_t size() const { return elements.size(); }
  bool leq(std::size_t x, std::size_t y) const { return order[x * size() + y] != 0; }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }
  std::size_t index_of(const std::string& name) const;
  std::optional<std::size_t> join(std::size_t x, std::size_t y) const;
  std::optional<std::size_t> meet(std::size_t x, std::size_t y) const;
  std::optional<std::size_t> bottom() const;
  std::optional<std::size_t> top() const;
  /// Nonempty with all binary joins and meets (finite, hence complete).
  bool is_lattice() const;
  /// Pairs (x, y) with x covered by y.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;

  friend bool operator==(const Poset&, const Poset&) = default;
};

struct Transition {
  std::size_t from;
  Letter letter;
  std::size_t to;
  friend auto operator<=>(const Transition&, const Transition&) = default;
};

/// Labelled transition system over an alphabet with involution.
struct TransitionSystem {
  Alphabet alphabet = Alphabet::signed_pair();
  std::vector<std::string> states;
  std::vector<Transition> transitions;

  std::size_t size() const { return states.size(); }
  std::size_t index_of(const std::string& name) const;
  /// Adds (x, a, x) for every state and letter.
  void close_reflexive();
  /// Adds (y, inv a, x) for every (x, a, y).
  void close_involutive();
  /// Adds (x, b, y) for every (x, a, y) and b >= a.
  void close_monotone();
  /// Sorts and removes duplicate transitions.
  void normalize();
};

/// Condition name ("reflexive", "involutive", "letter-monotone") and the
/// transition that breaks it, or nullopt when all three hold.
std::optional<std::pair<std::string, std::string>> ts_violation(const TransitionSystem& m);

// ---- text formats ---------------------------------------------------------

/// `digraph` (or `graph` for symmetric edges), `v a b c`, `e a b`,
/// optional `reflexive`.
Digraph parse_digraph(std::istream& in, const std::string& source);
/// `poset`, `v a b c`, `lt a b`.
Poset parse_poset(std::istream& in, const std::string& source);
/// `ts [alphabet declaration]`, optional `states ...`, `t p a q`, optional
/// `reflexive` / `involutive` closing directives.
TransitionSystem parse_ts(std::istream& in, const std::string& source);
Digraph load_digraph_file(const std::string& path);
Poset load_poset_file(const std::string& path);
TransitionSystem load_ts_file(const std::string& path);

std::string to_dot(const Digraph& g, const std::string& name = "G");
/// Hasse diagram.
std::string to_dot(const Poset& p, const std::string& name = "P");

// ---- encodings over the finite builtins ----------------------------------

/// Reflexive symmetric graph over graph3: 1/2 on edges, 1 elsewhere.
FiniteSpace encode_graph(const Digraph& g);
/// Reflexive digraph over digraph5: 1/2 both ways, + forward only,
/// - backward only, 1 for no arc.
FiniteSpace encode_digraph(const Digraph& g);
/// Poset over poset4: + if x < y, - if y < x, 1 if incomparable.
FiniteSpace encode_poset(const Poset& p);
/// Inverses of the encodings; refuse matrices outside their range.
Digraph decode_graph(const FiniteSpace& sp);
Digraph decode_digraph(const FiniteSpace& sp);
Poset decode_poset(const FiniteSpace& sp);

// ---- distances ------------------------------------------------------------

/// Shortest path lengths over nat(k); longer or missing paths give inf.
FiniteSpace graphic_distance(const Digraph& g, int k);

/// Fence distance (shortest up-fence, shortest down-fence) over fence(k).
FiniteSpace fence_space(const Poset& p, int k);

/// Language of the automaton (M, {x}, {y}) for every pair of states.
WordSpace ts_space(const TransitionSystem& m);

/// + along arcs and - against them.
TransitionSystem digraph_system(const Digraph& g);
/// Zigzag distance of a reflexive digraph.
WordSpace zigzag_space(const Digraph& g);

struct ConnexityReport {
  bool holds = true;
  /// Failing entry: x, y, the basis word and the split position.
  std::size_t x = 0, y = 0, split = 0;
  Word word;
  /// When the condition holds: the digraph with (x,y) an arc iff + in d(x,y).
  std::optional<Digraph> graph;
};

/// uv in d(x,y) implies u in d(x,z) and v in d(z,y) for some z. Only basis
/// words need checking. When it holds, the zigzag distance of the
/// reconstructed digraph must reproduce the matrix.
ConnexityReport check_connexity(const WordSpace& sp);

}  // namespace hmetric
