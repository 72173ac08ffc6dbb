#include "hmetric/factor.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <memory>

#include "hmetric/errors.hpp"
#include "hmetric/forms.hpp"
#include "hmetric/limits.hpp"

namespace hmetric {

namespace {

void reject_empty(const Antichain& a) {
  if (a.is_empty_set()) throw Refusal("the empty set is not in the free monoid of nonempty final segments");
}

State accepting_state(const Dfa& d) {
  std::vector<State> acc;
  for (State s = 0; s < d.states(); ++s)
    if (d.accepting[s]) acc.push_back(s);
  ensure(acc.size() == 1, "minimal automaton of a nonempty final segment has one accepting state");
  for (Letter a = 0; a < d.letters; ++a) ensure(d.step(acc[0], a) == acc[0], "accepting state is not absorbing");
  return acc[0];
}

/// Breadth-first distances from `from`, never entering `avoid`.
std::vector<int> distances(const Dfa& d, State from, State avoid) {
  std::vector<int> dist(d.states(), -1);
  if (from == avoid) return dist;
  std::deque<State> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    for (Letter a = 0; a < d.letters; ++a) {
      State t = d.step(s, a);
      if (t == avoid || dist[t] >= 0) continue;
      dist[t] = dist[s] + 1;
      queue.push_back(t);
    }
  }
  return dist;
}

}  // namespace

const char* to_string(Irreducibility k) {
  switch (k) {
    case Irreducibility::irreducible: return "irreducible";
    case Irreducibility::reducible: return "reducible";
    case Irreducibility::unit: return "unit";
  }
  return "?";
}

SeparatorReport separators(const Alphabet& alph, const Antichain& a) {
  reject_empty(a);
  SeparatorReport rep{to_dfa(alph, a), {}};
  const Dfa& d = rep.dfa;
  ensure(minimize(d) == d, "separator analysis needs the minimal automaton");
  const State acc = accepting_state(d);
  const State none = static_cast<State>(d.states());
  const auto from_start = distances(d, d.initial, none);
  // Every state reaches the accepting state (append a basis word), so
  // trimming only has to drop unreachable states, and minimal automata
  // have none.
  for (State s = 0; s < d.states(); ++s) {
    ensure(from_start[s] >= 0, "minimal automaton has an unreachable state");
    ensure(distances(d, s, none)[acc] >= 0, "minimal automaton has a dead state");
  }
  for (State z = 0; z < d.states(); ++z) {
    if (z == d.initial || z == acc) continue;
    if (distances(d, d.initial, z)[acc] < 0) rep.separators.push_back(z);
  }
  std::sort(rep.separators.begin(), rep.separators.end(),
            [&](State x, State y) { return from_start[x] < from_start[y]; });
  for (std::size_t i = 0; i + 1 < rep.separators.size(); ++i)
    ensure(distances(d, rep.separators[i], none)[rep.separators[i + 1]] >= 0,
           "separators are not linearly ordered");
  return rep;
}

Irreducibility irreducibility(const Alphabet& alph, const Antichain& a) {
  reject_empty(a);
  if (a.is_everything()) return Irreducibility::unit;
  return separators(alph, a).separators.empty() ? Irreducibility::irreducible : Irreducibility::reducible;
}

bool is_irreducible(const Alphabet& alph, const Antichain& a) {
  return irreducibility(alph, a) == Irreducibility::irreducible;
}

Factorization factorize(const Alphabet& alph, const Antichain& a) {
  reject_empty(a);
  Factorization out{a, {}};
  if (a.is_everything()) return out;
  const auto rep = separators(alph, a);
  const Dfa& d = rep.dfa;
  std::vector<State> cuts{d.initial};
  cuts.insert(cuts.end(), rep.separators.begin(), rep.separators.end());
  cuts.push_back(accepting_state(d));
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Dfa seg = d;
    seg.initial = cuts[i];
    const State end = cuts[i + 1];
    for (Letter l = 0; l < seg.letters; ++l) seg.next[end * seg.letters + l] = end;
    seg.accepting.assign(seg.states(), false);
    seg.accepting[end] = true;
    try {
      out.factors.push_back(minimal_basis(alph, minimize(seg)));
    } catch (const Refusal&) {
      throw InternalError("segment between separators is not upward-closed");
    }
  }
  Antichain product = Antichain::everything();
  for (const auto& f : out.factors) {
    ensure(is_irreducible(alph, f), "factor " + render_antichain(alph, f) + " is not irreducible");
    product = up_concat(alph, product, f);
  }
  ensure(product == a, "factors do not reassemble " + render_antichain(alph, a));
  return out;
}

std::vector<std::pair<Antichain, Antichain>> divisor_oracle(const Alphabet& alph, const Antichain& a,
                                                            std::size_t max_len) {
  reject_empty(a);
  for (const auto& w : a.basis())
    if (w.size() > max_len)
      throw CapExceeded("basis word longer than the divisor bound", {render_word(alph, w)});
  std::vector<std::pair<Antichain, Antichain>> out;
  for (const auto& b : quotient_closure(alph, a)) {
    if (b.is_empty_set()) continue;
    auto c = residual(alph, a, b, Side::right);
    if (c.is_empty_set()) continue;
    if (up_concat(alph, b, c) == a) out.emplace_back(b, std::move(c));
  }
  return out;
}

BlockPath envelope_block_path(const Alphabet& alph, const Antichain& a) {
  reject_empty(a);
  auto alg = std::make_shared<const WordAlgebra>(alph);
  BlockPath out{two_point_envelope(alg, a), {}, {}};
  const auto& sp = out.envelope;
  const std::size_t n = sp.size();
  if (n > limits().max_product_points)
    throw CapExceeded("skipped: envelope too large", {std::to_string(n)});

  std::vector<std::vector<std::size_t>> adj(n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      for (Letter l = 0; l < alph.size(); ++l)
        if (sp.d(p, q).contains(alph, Word{l})) {
          adj[p].push_back(q);
          break;
        }
    }

  // Biconnected components by the lowpoint method with an edge stack.
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  std::vector<std::vector<std::size_t>> blocks;
  int clock = 0;
  std::function<void(std::size_t, std::size_t)> visit = [&](std::size_t u, std::size_t parent) {
    disc[u] = low[u] = clock++;
    for (auto v : adj[u]) {
      if (disc[v] < 0) {
        stack.emplace_back(u, v);
        visit(v, u);
        low[u] = std::min(low[u], low[v]);
        if (low[v] >= disc[u]) {
          std::vector<std::size_t> block;
          while (true) {
            auto [x, y] = stack.back();
            stack.pop_back();
            block.push_back(x);
            block.push_back(y);
            if (x == u && y == v) break;
          }
          std::sort(block.begin(), block.end());
          block.erase(std::unique(block.begin(), block.end()), block.end());
          blocks.push_back(std::move(block));
        }
      } else if (v != parent && disc[v] < disc[u]) {
        stack.emplace_back(u, v);
        low[u] = std::min(low[u], disc[v]);
      }
    }
  };
  const std::size_t start = sp.index_of("{^}");
  const std::size_t finish = sp.index_of([&] {
    auto s = render_antichain(alph, a);
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    return s;
  }());
  visit(start, n);
  for (std::size_t p = 0; p < n; ++p) ensure(disc[p] >= 0, "envelope graph is disconnected");

  // Walk the block-cut tree from `start`; it must be a path ending at `finish`.
  std::vector<std::size_t> membership(n, 0);
  for (const auto& b : blocks)
    for (auto p : b) ++membership[p];
  for (std::size_t p = 0; p < n; ++p) {
    ensure(membership[p] <= 2, "a point lies in more than two blocks");
    if (membership[p] == 2) out.cut_vertices.push_back(p);
  }
  std::vector<bool> used(blocks.size(), false);
  std::size_t at = start;
  while (out.blocks.size() < blocks.size()) {
    std::size_t next = blocks.size();
    for (std::size_t i = 0; i < blocks.size(); ++i)
      if (!used[i] && std::binary_search(blocks[i].begin(), blocks[i].end(), at)) {
        ensure(next == blocks.size(), "blocks do not form a path");
        next = i;
      }
    ensure(next < blocks.size(), "blocks do not form a path");
    used[next] = true;
    out.blocks.push_back(blocks[next]);
    std::size_t exit = n;
    for (auto p : blocks[next])
      if (p != at && membership[p] == 2) {
        ensure(exit == n, "a block has more than two cut vertices");
        exit = p;
      }
    if (exit == n) break;
    at = exit;
  }
  ensure(out.blocks.size() == blocks.size(), "blocks do not form a path");
  ensure(blocks.empty() ? start == finish
                        : std::binary_search(out.blocks.back().begin(), out.blocks.back().end(), finish),
         "block path does not end at the point of A");
  ensure(out.blocks.size() == factorize(alph, a).factors.size(), "block count differs from the factor count");
  return out;
}

}  // namespace hmetric
