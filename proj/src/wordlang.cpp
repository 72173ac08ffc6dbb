#include "hmetric/wordlang.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "hmetric/dfa.hpp"
#include "hmetric/errors.hpp"
#include "hmetric/limits.hpp"

namespace hmetric {

Limits& limits() {
  static Limits instance;
  return instance;
}

Alphabet::Alphabet(std::vector<char> letters, std::vector<Letter> involution,
                   std::vector<std::pair<Letter, Letter>> order)
    : letters_(std::move(letters)), inv_(std::move(involution)) {
  const std::size_t n = letters_.size();
  if (n == 0 || n > 64) throw std::invalid_argument("alphabet must have between 1 and 64 letters");
  if (inv_.size() != n) throw std::invalid_argument("involution size does not match the alphabet");
  for (std::size_t i = 0; i < n; ++i) {
    if (inv_[i] >= n || inv_[inv_[i]] != i)
      throw std::invalid_argument("letter map is not an involution");
    for (std::size_t j = i + 1; j < n; ++j)
      if (letters_[i] == letters_[j]) throw std::invalid_argument("duplicate letter");
    if (letters_[i] == '^' || letters_[i] == ',' || letters_[i] == '{' || letters_[i] == '}' ||
        letters_[i] == ' ')
      throw std::invalid_argument("reserved character used as a letter");
  }
  order_.assign(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) order_[i * n + i] = 1;
  for (auto [a, b] : order) {
    if (a >= n || b >= n) throw std::invalid_argument("letter order mentions an unknown letter");
    order_[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (order_[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (order_[k * n + j]) order_[i * n + j] = 1;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j && order_[i * n + j]) {
        discrete_ = false;
        if (order_[j * n + i]) throw std::invalid_argument("letter order is not antisymmetric");
        if (!order_[inv_[i] * n + inv_[j]])
          throw std::invalid_argument("letter involution does not preserve the letter order");
      }
    }
}

Alphabet Alphabet::signed_pair() { return Alphabet({'+', '-'}, {1, 0}); }

Alphabet Alphabet::parse(std::string_view decl) {
  std::vector<std::vector<std::string>> clauses(1);
  {
    std::string cur;
    auto flush = [&] {
      if (!cur.empty()) clauses.back().push_back(cur);
      cur.clear();
    };
    for (char c : decl) {
      if (c == ';') {
        flush();
        clauses.emplace_back();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        flush();
      } else {
        cur += c;
      }
    }
    flush();
  }
  std::vector<char> letters;
  auto letter_of = [&](const std::string& tok) -> Letter {
    if (tok.size() != 1) throw std::invalid_argument("letters are single characters: '" + tok + "'");
    auto it = std::find(letters.begin(), letters.end(), tok[0]);
    if (it == letters.end()) throw std::invalid_argument("unknown letter '" + tok + "'");
    return static_cast<Letter>(it - letters.begin());
  };
  std::vector<std::pair<Letter, Letter>> swaps, order;
  for (const auto& c : clauses) {
    if (c.empty()) continue;
    if (c[0] == "alphabet") {
      for (std::size_t i = 1; i < c.size(); ++i) {
        if (c[i].size() != 1) throw std::invalid_argument("letters are single characters: '" + c[i] + "'");
        letters.push_back(c[i][0]);
      }
    } else if (c[0] == "inv" || c[0] == "le") {
      if (c.size() % 2 == 0) throw std::invalid_argument("'" + c[0] + "' takes letter pairs");
      for (std::size_t i = 1; i + 1 < c.size(); i += 2)
        (c[0] == "inv" ? swaps : order).emplace_back(letter_of(c[i]), letter_of(c[i + 1]));
    } else {
      throw std::invalid_argument("unknown alphabet clause '" + c[0] + "'");
    }
  }
  if (letters.empty()) throw std::invalid_argument("alphabet declaration lists no letters");
  std::vector<Letter> inv(letters.size());
  for (std::size_t i = 0; i < inv.size(); ++i) inv[i] = static_cast<Letter>(i);
  for (auto [a, b] : swaps) {
    inv[a] = b;
    inv[b] = a;
  }
  return Alphabet(std::move(letters), std::move(inv), std::move(order));
}

std::optional<Letter> Alphabet::find(char c) const {
  for (std::size_t i = 0; i < letters_.size(); ++i)
    if (letters_[i] == c) return static_cast<Letter>(i);
  return std::nullopt;
}

std::vector<Letter> Alphabet::minimal_upper_bounds(Letter a, Letter b) const {
  std::vector<Letter> ub, out;
  for (std::size_t c = 0; c < size(); ++c)
    if (letter_leq(a, static_cast<Letter>(c)) && letter_leq(b, static_cast<Letter>(c)))
      ub.push_back(static_cast<Letter>(c));
  for (auto c : ub)
    if (std::none_of(ub.begin(), ub.end(), [&](Letter d) { return d != c && letter_leq(d, c); }))
      out.push_back(c);
  return out;
}

bool Alphabet::is_signed_pair() const {
  auto p = find('+');
  auto m = find('-');
  return size() == 2 && p && m && inv(*p) == *m && discrete();
}

std::string Alphabet::declaration() const {
  std::string s = "alphabet";
  for (char c : letters_) (s += ' ') += c;
  std::string inv_part, le_part;
  for (std::size_t i = 0; i < size(); ++i) {
    if (inv_[i] > i) ((inv_part += ' ') += letters_[i]) += std::string(" ") + letters_[inv_[i]];
    for (std::size_t j = 0; j < size(); ++j)
      if (i != j && order_[i * size() + j])
        ((le_part += ' ') += letters_[i]) += std::string(" ") + letters_[j];
  }
  if (!inv_part.empty()) s += " ; inv" + inv_part;
  if (!le_part.empty()) s += " ; le" + le_part;
  return s;
}

bool word_less(const Word& u, const Word& v) {
  if (u.size() != v.size()) return u.size() < v.size();
  return u < v;
}

bool subword_leq(const Alphabet& alph, const Word& u, const Word& v) {
  if (u.size() > v.size()) return false;
  std::size_t i = 0;
  for (std::size_t j = 0; j < v.size() && i < u.size(); ++j)
    if (alph.letter_leq(u[i], v[j])) ++i;
  return i == u.size();
}

std::string render_word(const Alphabet& alph, const Word& w) {
  if (w.empty()) return "^";
  std::string s;
  for (auto a : w) s += alph.symbol(a);
  return s;
}

Word parse_word(const Alphabet& alph, std::string_view text) {
  if (text == "^") return {};
  Word w;
  for (char c : text) {
    auto a = alph.find(c);
    if (!a) throw std::invalid_argument(std::string("unknown letter '") + c + "'");
    w.push_back(*a);
  }
  return w;
}

std::vector<Word> antichain_normalize(const Alphabet& alph, std::vector<Word> words) {
  std::sort(words.begin(), words.end(), word_less);
  words.erase(std::unique(words.begin(), words.end()), words.end());
  std::vector<Word> out;
  for (const auto& w : words) {
    bool minimal = true;
    for (const auto& u : words)
      if (u.size() <= w.size() && u != w && subword_leq(alph, u, w)) {
        minimal = false;
        break;
      }
    if (minimal) out.push_back(w);
  }
  return out;
}

Antichain Antichain::from_words(const Alphabet& alph, std::vector<Word> words) {
  return Antichain(antichain_normalize(alph, std::move(words)));
}

bool Antichain::contains(const Alphabet& alph, const Word& w) const {
  return std::any_of(basis_.begin(), basis_.end(), [&](const Word& b) { return subword_leq(alph, b, w); });
}

std::size_t Antichain::max_length() const {
  std::size_t m = 0;
  for (const auto& w : basis_) m = std::max(m, w.size());
  return m;
}

bool operator<(const Antichain& a, const Antichain& b) {
  return std::lexicographical_compare(a.basis_.begin(), a.basis_.end(), b.basis_.begin(), b.basis_.end(),
                                      word_less);
}

Antichain parse_antichain(const Alphabet& alph, std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  text = trim(text);
  if (text.size() < 2 || text.front() != '{' || text.back() != '}')
    throw std::invalid_argument("antichain literal must be enclosed in braces: '" + std::string(text) + "'");
  std::string_view body = trim(text.substr(1, text.size() - 2));
  std::vector<Word> words;
  if (!body.empty()) {
    std::size_t start = 0;
    while (true) {
      auto comma = body.find(',', start);
      auto item = trim(body.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      if (item.empty()) throw std::invalid_argument("empty item in antichain literal");
      words.push_back(parse_word(alph, item));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
  }
  return Antichain::from_words(alph, std::move(words));
}

std::string render_antichain(const Alphabet& alph, const Antichain& a) {
  if (a.is_empty_set()) return "{}";
  std::string s = "{ ";
  for (std::size_t i = 0; i < a.basis().size(); ++i) {
    if (i) s += ", ";
    s += render_word(alph, a.basis()[i]);
  }
  return s + " }";
}

Antichain up_concat(const Alphabet& alph, const Antichain& a, const Antichain& b) {
  std::vector<Word> out;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      out.push_back(std::move(w));
    }
  return Antichain::from_words(alph, std::move(out));
}

Antichain up_meet(const Alphabet& alph, const Antichain& a, const Antichain& b) {
  std::vector<Word> out = a.basis();
  out.insert(out.end(), b.basis().begin(), b.basis().end());
  return Antichain::from_words(alph, std::move(out));
}

std::vector<Word> minimal_common_superwords(const Alphabet& alph, const Word& u, const Word& v) {
  const std::size_t n = u.size(), m = v.size();
  // memo[i][j]: minimal merges of the suffixes u[i..] and v[j..]
  std::vector<std::vector<std::vector<Word>>> memo(n + 1, std::vector<std::vector<Word>>(m + 1));
  for (std::size_t i = n + 1; i-- > 0;)
    for (std::size_t j = m + 1; j-- > 0;) {
      std::vector<Word> cand;
      if (i == n) {
        cand.emplace_back(v.begin() + static_cast<std::ptrdiff_t>(j), v.end());
      } else if (j == m) {
        cand.emplace_back(u.begin() + static_cast<std::ptrdiff_t>(i), u.end());
      } else {
        auto prepend = [&](Letter a, const std::vector<Word>& tails) {
          for (const auto& t : tails) {
            Word w{a};
            w.insert(w.end(), t.begin(), t.end());
            cand.push_back(std::move(w));
          }
        };
        prepend(u[i], memo[i + 1][j]);
        prepend(v[j], memo[i][j + 1]);
        for (auto c : alph.minimal_upper_bounds(u[i], v[j])) prepend(c, memo[i + 1][j + 1]);
      }
      memo[i][j] = antichain_normalize(alph, std::move(cand));
    }
  return memo[0][0];
}

Antichain up_join(const Alphabet& alph, const Antichain& a, const Antichain& b) {
  std::vector<Word> out;
  for (const auto& u : a.basis())
    for (const auto& v : b.basis()) {
      auto m = minimal_common_superwords(alph, u, v);
      out.insert(out.end(), m.begin(), m.end());
    }
  return Antichain::from_words(alph, std::move(out));
}

Antichain involve(const Alphabet& alph, const Antichain& a) {
  std::vector<Word> out;
  for (const auto& w : a.basis()) {
    Word r(w.rbegin(), w.rend());
    for (auto& c : r) c = alph.inv(c);
    out.push_back(std::move(r));
  }
  return Antichain::from_words(alph, std::move(out));
}

Antichain residual(const Alphabet& alph, const Antichain& v, const Antichain& g, Side side) {
  if (side == Side::right) return involve(alph, residual(alph, involve(alph, v), involve(alph, g), Side::left));
  Dfa d = to_dfa(alph, v);
  std::vector<bool> acc(d.states(), true);
  for (State q = 0; q < d.states(); ++q)
    for (const auto& w : g.basis())
      if (!d.accepting[d.run(q, w)]) {
        acc[q] = false;
        break;
      }
  d.accepting = std::move(acc);
  return minimal_basis(alph, d);
}

Antichain word_distance(const Alphabet& alph, const Antichain& p, const Antichain& q) {
  return up_join(alph, residual(alph, involve(alph, p), involve(alph, q), Side::left),
                 residual(alph, q, p, Side::right));
}

bool cancellation_holds(const Alphabet& alph, const Antichain& z) {
  if (!alph.is_signed_pair()) throw Refusal("cancellation is defined over the alphabet {+,-} only");
  const Letter plus = *alph.find('+');
  const Letter minus = *alph.find('-');
  Dfa d = to_dfa(alph, z);
  const std::uint64_t n = d.states();
  auto key = [n](State a, State b, State c) { return (std::uint64_t{a} * n + b) * n + c; };
  std::unordered_set<std::uint64_t> seen;
  std::vector<std::array<State, 3>> queue;
  for (State p = 0; p < n; ++p) {
    std::array<State, 3> t{d.step(p, plus), d.step(p, minus), p};
    if (seen.insert(key(t[0], t[1], t[2])).second) queue.push_back(t);
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [a, b, c] = queue[head];
    if (d.accepting[a] && d.accepting[b] && !d.accepting[c]) return false;
    for (Letter x = 0; x < alph.size(); ++x) {
      std::array<State, 3> t{d.step(a, x), d.step(b, x), d.step(c, x)};
      if (seen.insert(key(t[0], t[1], t[2])).second) queue.push_back(t);
    }
  }
  return true;
}

bool WordAlgebra::leq(const Antichain& a, const Antichain& b) const {
  return std::all_of(b.basis().begin(), b.basis().end(), [&](const Word& w) { return a.contains(alph_, w); });
}

}  // namespace hmetric
