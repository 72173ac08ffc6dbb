#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hmetric/dfa.hpp"
#include "hmetric/metric.hpp"

namespace hmetric {

// Final segments other than the empty set form a free monoid under
// concatenation. Everything here rejects the empty set.

struct SeparatorReport {
  Dfa dfa;                      // minimal automaton of the input
  std::vector<State> separators;  // ordered along every initial-to-accepting path
};

/// States other than the endpoints that lie on every path from the initial
/// state to the accepting state of the minimal automaton.
SeparatorReport separators(const Alphabet& alph, const Antichain& a);

enum class Irreducibility { irreducible, reducible, unit };
const char* to_string(Irreducibility k);

Irreducibility irreducibility(const Alphabet& alph, const Antichain& a);
bool is_irreducible(const Alphabet& alph, const Antichain& a);

struct Factorization {
  Antichain input;
  std::vector<Antichain> factors;
};

/// Cuts the minimal automaton at its separators. The product of the
/// factors is checked against the input and each factor is checked to be
/// irreducible; a mismatch raises InternalError.
Factorization factorize(const Alphabet& alph, const Antichain& a);

/// Every pair (B, C) with B.C = A, trivial pairs included. Left factors
/// are drawn from the quotient closure of A and C is the largest right
/// residual. Basis words longer than `max_len` are refused.
std::vector<std::pair<Antichain, Antichain>> divisor_oracle(const Alphabet& alph, const Antichain& a,
                                                            std::size_t max_len = 6);

struct BlockPath {
  WordSpace envelope;
  /// Blocks with at least one edge, in path order from the point for
  /// every word to the point for A.
  std::vector<std::vector<std::size_t>> blocks;
  std::vector<std::size_t> cut_vertices;
};

/// Blocks of the graph on the two-point envelope of A whose edges join
/// points at distance containing a single letter. Checks that they form
/// a path with as many blocks as A has factors. Refuses envelopes with
/// more than `limits().max_product_points` points.
BlockPath envelope_block_path(const Alphabet& alph, const Antichain& a);

}  // namespace hmetric
