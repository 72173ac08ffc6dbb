#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace hmetric {

using Letter = std::uint8_t;
using Word = std::vector<Letter>;

/// Finite alphabet with an optional partial order on letters and an
/// order-preserving involution. Letters are single printable characters.
class Alphabet {
 public:
  /// `involution[i]` is the image of letter i. `order` lists pairs a <= b;
  /// it is closed reflexively and transitively.
  Alphabet(std::vector<char> letters, std::vector<Letter> involution,
           std::vector<std::pair<Letter, Letter>> order = {});

  /// {+, -} with + and - exchanged, discrete order.
  static Alphabet signed_pair();
  /// Parses "alphabet + - ; inv + - ; le a b".
  static Alphabet parse(std::string_view decl);

  std::size_t size() const { return letters_.size(); }
  char symbol(Letter a) const { return letters_[a]; }
  std::optional<Letter> find(char c) const;
  Letter inv(Letter a) const { return inv_[a]; }
  bool letter_leq(Letter a, Letter b) const { return order_[a * size() + b] != 0; }
  bool discrete() const { return discrete_; }
  /// Minimal letters above both a and b.
  std::vector<Letter> minimal_upper_bounds(Letter a, Letter b) const;
  bool is_signed_pair() const;
  std::string declaration() const;

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<char> letters_;
  std::vector<Letter> inv_;
  std::vector<std::uint8_t> order_;
  bool discrete_ = true;
};

/// Length first, then lexicographic by letter index.
bool word_less(const Word& u, const Word& v);
/// Subword (Higman) order w.r.t. the alphabet's letter order.
bool subword_leq(const Alphabet& alph, const Word& u, const Word& v);

std::string render_word(const Alphabet& alph, const Word& w);
Word parse_word(const Alphabet& alph, std::string_view text);

/// Upward-closed set of words, stored as its canonically sorted basis of
/// minimal words. The empty basis denotes the empty set; the basis {empty
/// word} denotes every word.
class Antichain {
 public:
  Antichain() = default;
  /// Reduces `words` to its minimal elements.
  static Antichain from_words(const Alphabet& alph, std::vector<Word> words);
  static Antichain everything() { return Antichain(std::vector<Word>{Word{}}); }
  static Antichain nothing() { return Antichain(); }

  const std::vector<Word>& basis() const { return basis_; }
  bool is_empty_set() const { return basis_.empty(); }
  bool is_everything() const { return basis_.size() == 1 && basis_[0].empty(); }
  bool contains(const Alphabet& alph, const Word& w) const;
  std::size_t max_length() const;

  friend bool operator==(const Antichain&, const Antichain&) = default;
  friend bool operator<(const Antichain& a, const Antichain& b);

 private:
  explicit Antichain(std::vector<Word> basis) : basis_(std::move(basis)) {}
  std::vector<Word> basis_;
};

std::vector<Word> antichain_normalize(const Alphabet& alph, std::vector<Word> words);

/// `{ +-+ , ++ }`; `{}` is the empty set and `{ ^ }` every word.
Antichain parse_antichain(const Alphabet& alph, std::string_view text);
std::string render_antichain(const Alphabet& alph, const Antichain& a);

/// Concatenation of final segments.
Antichain up_concat(const Alphabet& alph, const Antichain& a, const Antichain& b);
/// Union of the sets; the algebra meet.
Antichain up_meet(const Alphabet& alph, const Antichain& a, const Antichain& b);
/// Intersection of the sets; the algebra join.
Antichain up_join(const Alphabet& alph, const Antichain& a, const Antichain& b);
/// Mirror each word and apply the letter involution.
Antichain involve(const Alphabet& alph, const Antichain& a);
/// Minimal common superwords of u and v.
std::vector<Word> minimal_common_superwords(const Alphabet& alph, const Word& u, const Word& v);

enum class Side { left, right };
/// left: largest R with R.G inside V.  right: largest R with G.R inside V.
Antichain residual(const Alphabet& alph, const Antichain& v, const Antichain& g, Side side);
/// ceil(inv P - inv Q) joined with ceil(-P + Q).
Antichain word_distance(const Alphabet& alph, const Antichain& p, const Antichain& q);
/// Over {+,-}: no u, v with u+v and u-v in Z but uv outside Z.
bool cancellation_holds(const Alphabet& alph, const Antichain& z);

/// Final segments of the free monoid as a value algebra. The carrier is
/// infinite; procedures that enumerate the carrier refuse it.
class WordAlgebra {
 public:
  using value_type = Antichain;
  explicit WordAlgebra(Alphabet alph) : alph_(std::move(alph)) {}

  const Alphabet& alphabet() const { return alph_; }
  std::string name() const { return "words"; }
  bool infinite_carrier() const { return true; }

  Antichain zero() const { return Antichain::everything(); }
  Antichain top() const { return Antichain::nothing(); }
  bool leq(const Antichain& a, const Antichain& b) const;
  Antichain oplus(const Antichain& a, const Antichain& b) const { return up_concat(alph_, a, b); }
  Antichain inv(const Antichain& a) const { return involve(alph_, a); }
  Antichain join(const Antichain& a, const Antichain& b) const { return up_join(alph_, a, b); }
  Antichain meet(const Antichain& a, const Antichain& b) const { return up_meet(alph_, a, b); }
  Antichain residual_left(const Antichain& v, const Antichain& g) const {
    return residual(alph_, v, g, Side::left);
  }
  Antichain residual_right(const Antichain& v, const Antichain& g) const {
    return residual(alph_, v, g, Side::right);
  }
  Antichain distance(const Antichain& p, const Antichain& q) const { return word_distance(alph_, p, q); }
  std::string render(const Antichain& a) const { return render_antichain(alph_, a); }
  Antichain parse(std::string_view text) const { return parse_antichain(alph_, text); }

 private:
  Alphabet alph_;
};

}  // namespace hmetric
