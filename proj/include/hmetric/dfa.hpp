#pragma once

#include <cstdint>
#include <vector>

#include "hmetric/wordlang.hpp"

namespace hmetric {

using State = std::uint32_t;

/// Complete deterministic automaton; `next[s * letters + a]`.
struct Dfa {
  std::size_t letters = 0;
  std::vector<State> next;
  std::vector<bool> accepting;
  State initial = 0;

  std::size_t states() const { return accepting.size(); }
  State step(State s, Letter a) const { return next[s * letters + a]; }
  State run(State s, const Word& w) const {
    for (auto a : w) s = step(s, a);
    return s;
  }
  bool accepts(const Word& w) const { return accepting[run(initial, w)]; }

  friend bool operator==(const Dfa&, const Dfa&) = default;
};

/// Drops unreachable states, merges equivalent ones by partition
/// refinement and renumbers states in breadth-first order from the
/// initial state (letters in index order).
Dfa minimize(const Dfa& d);

/// Minimal automaton of the final segment generated by `a`.
Dfa to_dfa(const Alphabet& alph, const Antichain& a);

/// `incl[p * n + q]` holds iff the language from p is contained in the
/// language from q.
std::vector<bool> state_inclusion(const Dfa& d);

/// Basis of the language of `d`. Throws Refusal when the language is not
/// upward-closed and CapExceeded past the word-length bound.
Antichain minimal_basis(const Alphabet& alph, const Dfa& d);

/// Right quotients F/g = { w : wg in F } of the final segment F together
/// with all their intersections (the empty intersection gives every
/// word). Sorted by the antichain order. Throws CapExceeded when the
/// number of accepting-state sets exceeds `limits().max_dfa_states`.
std::vector<Antichain> quotient_closure(const Alphabet& alph, const Antichain& f);

}  // namespace hmetric
