#include "hmetric/dfa.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "hmetric/errors.hpp"
#include "hmetric/limits.hpp"

namespace hmetric {

namespace {

Dfa renumber_bfs(const Dfa& d) {
  const std::size_t k = d.letters;
  std::vector<State> order, id(d.states(), UINT32_MAX);
  order.push_back(d.initial);
  id[d.initial] = 0;
  for (std::size_t head = 0; head < order.size(); ++head)
    for (Letter a = 0; a < k; ++a) {
      State t = d.step(order[head], a);
      if (id[t] == UINT32_MAX) {
        id[t] = static_cast<State>(order.size());
        order.push_back(t);
      }
    }
  Dfa out;
  out.letters = k;
  out.initial = 0;
  out.accepting.resize(order.size());
  out.next.resize(order.size() * k);
  for (std::size_t s = 0; s < order.size(); ++s) {
    out.accepting[s] = d.accepting[order[s]];
    for (Letter a = 0; a < k; ++a) out.next[s * k + a] = id[d.step(order[s], a)];
  }
  return out;
}

}  // namespace

Dfa minimize(const Dfa& input) {
  Dfa d = renumber_bfs(input);
  const std::size_t n = d.states(), k = d.letters;
  std::vector<State> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = d.accepting[s] ? 1 : 0;
  std::size_t classes = 0;
  while (true) {
    std::map<std::vector<State>, State> sig_id;
    std::vector<State> next_cls(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<State> sig{cls[s]};
      for (Letter a = 0; a < k; ++a) sig.push_back(cls[d.step(static_cast<State>(s), a)]);
      auto [it, fresh] = sig_id.emplace(std::move(sig), static_cast<State>(sig_id.size()));
      next_cls[s] = it->second;
    }
    cls = std::move(next_cls);
    if (sig_id.size() == classes) break;
    classes = sig_id.size();
  }
  Dfa q;
  q.letters = k;
  q.initial = cls[d.initial];
  q.accepting.assign(classes, false);
  q.next.assign(classes * k, 0);
  for (std::size_t s = 0; s < n; ++s) {
    q.accepting[cls[s]] = d.accepting[s];
    for (Letter a = 0; a < k; ++a) q.next[cls[s] * k + a] = cls[d.step(static_cast<State>(s), a)];
  }
  return renumber_bfs(q);
}

Dfa to_dfa(const Alphabet& alph, const Antichain& a) {
  const auto& basis = a.basis();
  const std::size_t k = alph.size();
  using Progress = std::vector<std::uint8_t>;
  std::map<Progress, State> id;
  std::vector<Progress> states;
  auto intern = [&](Progress p) {
    auto [it, fresh] = id.emplace(p, static_cast<State>(states.size()));
    if (fresh) {
      if (states.size() >= limits().max_dfa_states)
        throw CapExceeded("automaton construction exceeds the state bound");
      states.push_back(std::move(p));
    }
    return it->second;
  };
  intern(Progress(basis.size(), 0));
  Dfa d;
  d.letters = k;
  for (std::size_t head = 0; head < states.size(); ++head) {
    for (Letter c = 0; c < k; ++c) {
      Progress p = states[head];
      for (std::size_t i = 0; i < basis.size(); ++i)
        if (p[i] < basis[i].size() && alph.letter_leq(basis[i][p[i]], c)) ++p[i];
      State t = intern(std::move(p));
      d.next.push_back(t);
    }
  }
  for (const auto& p : states) {
    bool acc = false;
    for (std::size_t i = 0; i < basis.size(); ++i) acc = acc || p[i] == basis[i].size();
    d.accepting.push_back(acc);
  }
  return minimize(d);
}

std::vector<bool> state_inclusion(const Dfa& d) {
  const std::size_t n = d.states();
  std::vector<bool> incl(n * n);
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q) incl[p * n + q] = !(d.accepting[p] && !d.accepting[q]);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        if (!incl[p * n + q]) continue;
        for (Letter a = 0; a < d.letters; ++a)
          if (!incl[d.step(static_cast<State>(p), a) * n + d.step(static_cast<State>(q), a)]) {
            incl[p * n + q] = false;
            changed = true;
            break;
          }
      }
  }
  return incl;
}

Antichain minimal_basis(const Alphabet& alph, const Dfa& input) {
  if (input.letters != alph.size()) throw InternalError("automaton and alphabet disagree on letter count");
  const Dfa d = minimize(input);
  const std::size_t n = d.states(), k = d.letters;

  // Access words, for witnesses.
  std::vector<Word> access(n);
  std::vector<bool> seen(n, false);
  std::vector<State> order{d.initial};
  seen[d.initial] = true;
  for (std::size_t h = 0; h < order.size(); ++h)
    for (Letter a = 0; a < k; ++a) {
      State t = d.step(order[h], a);
      if (!seen[t]) {
        seen[t] = true;
        access[t] = access[order[h]];
        access[t].push_back(a);
        order.push_back(t);
      }
    }

  auto incl = state_inclusion(d);
  for (State p = 0; p < n; ++p)
    for (Letter a = 0; a < k; ++a) {
      if (!incl[p * n + d.step(p, a)])
        throw Refusal("language is not upward-closed",
                      {"prefix " + render_word(alph, access[p]), std::string("inserted letter ") + alph.symbol(a)});
      for (Letter b = 0; b < k; ++b)
        if (a != b && alph.letter_leq(a, b) && !incl[d.step(p, a) * n + d.step(p, b)])
          throw Refusal("language is not closed under raising letters",
                        {"prefix " + render_word(alph, access[p]),
                         std::string("letters ") + alph.symbol(a) + " <= " + alph.symbol(b)});
    }

  // A minimal word never repeats a state along its run: cutting the loop
  // would give a proper subword that is still accepted.
  std::vector<Word> found;
  std::vector<bool> on_path(n, false);
  Word w;
  std::size_t visited = 0;
  auto dfs = [&](auto&& self, State s) -> void {
    if (++visited > limits().max_enum) throw CapExceeded("basis extraction exceeds the enumeration bound");
    if (d.accepting[s]) {
      if (w.size() > limits().max_word_len) throw CapExceeded("basis word longer than the word-length bound");
      found.push_back(w);
      return;
    }
    on_path[s] = true;
    for (Letter a = 0; a < k; ++a) {
      State t = d.step(s, a);
      if (on_path[t]) continue;
      w.push_back(a);
      self(self, t);
      w.pop_back();
    }
    on_path[s] = false;
  };
  dfs(dfs, d.initial);
  return Antichain::from_words(alph, std::move(found));
}

std::vector<Antichain> quotient_closure(const Alphabet& alph, const Antichain& f) {
  const Dfa m = to_dfa(alph, f);
  const std::size_t n = m.states();
  const std::size_t cap = limits().max_dfa_states;

  // Accepting sets of the quotients F/g, closed under preimages by letters.
  std::set<std::vector<bool>> quotients{m.accepting};
  std::vector<std::vector<bool>> queue{m.accepting};
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (Letter a = 0; a < m.letters; ++a) {
      std::vector<bool> pre(n);
      for (State s = 0; s < n; ++s) pre[s] = queue[i][m.step(s, a)];
      if (quotients.insert(pre).second) queue.push_back(std::move(pre));
    }
  std::set<std::vector<bool>> closed(quotients.begin(), quotients.end());
  closed.insert(std::vector<bool>(n, true));
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::vector<bool>> current(closed.begin(), closed.end());
    for (std::size_t i = 0; i < current.size(); ++i)
      for (std::size_t j = i + 1; j < current.size(); ++j) {
        std::vector<bool> s(n);
        for (std::size_t k = 0; k < n; ++k) s[k] = current[i][k] && current[j][k];
        if (closed.insert(s).second) {
          grew = true;
          if (closed.size() > cap) throw CapExceeded("quotient closure exceeds the automaton bound");
        }
      }
  }
  std::set<Antichain> out;
  for (const auto& acc : closed) {
    Dfa q = m;
    q.accepting = acc;
    out.insert(minimal_basis(alph, q));
  }
  return {out.begin(), out.end()};
}

}  // namespace hmetric
