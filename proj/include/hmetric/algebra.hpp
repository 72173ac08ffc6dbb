#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hmetric {

/// Operations every value algebra exposes to the generic metric code.
template <class A>
concept ValueAlgebra = requires(const A& a, const typename A::value_type& p) {
  { a.zero() } -> std::convertible_to<typename A::value_type>;
  { a.top() } -> std::convertible_to<typename A::value_type>;
  { a.leq(p, p) } -> std::convertible_to<bool>;
  { a.oplus(p, p) } -> std::convertible_to<typename A::value_type>;
  { a.inv(p) } -> std::convertible_to<typename A::value_type>;
  { a.join(p, p) } -> std::convertible_to<typename A::value_type>;
  { a.meet(p, p) } -> std::convertible_to<typename A::value_type>;
  { a.distance(p, p) } -> std::convertible_to<typename A::value_type>;
  { a.render(p) } -> std::convertible_to<std::string>;
};

/// Index of an element inside a FiniteAlgebra.
struct Elem {
  std::uint16_t id = 0;
  friend constexpr auto operator<=>(Elem, Elem) = default;
};

struct LawViolation {
  std::string law;
  std::vector<Elem> witness;
};

struct LawReport {
  bool passed = true;
  std::vector<LawViolation> violations;
  bool violates(std::string_view law) const;
};

/// Finite ordered monoid with involution, stored as dense tables. The
/// constructor accepts arbitrary tables; `validate_laws` decides whether
/// they form an involutive Heyting algebra. Lattice and residual queries
/// throw InternalError when the tables do not support them.
class FiniteAlgebra {
 public:
  using value_type = Elem;
  static constexpr std::uint16_t npos = 0xFFFF;

  /// `leq[i*n+j]` is i <= j (must already be reflexive-transitive),
  /// `oplus[i*n+j]` is i (+) j, `inv[i]` the involution. Element 0 is the
  /// zero, element n-1 the top.
  FiniteAlgebra(std::string name, std::vector<std::string> labels, std::vector<std::uint8_t> leq,
                std::vector<std::uint16_t> oplus, std::vector<std::uint16_t> inv);

  const std::string& name() const { return name_; }
  std::size_t size() const { return labels_.size(); }
  bool infinite_carrier() const { return false; }
  std::vector<Elem> elements() const;
  /// Linear extension of the order, ties broken by index.
  const std::vector<Elem>& topological() const { return topo_; }

  const std::string& label(Elem e) const { return labels_[e.id]; }
  std::string render(Elem e) const { return labels_[e.id]; }
  std::optional<Elem> find(std::string_view label) const;

  Elem zero() const { return Elem{0}; }
  Elem top() const { return Elem{static_cast<std::uint16_t>(size() - 1)}; }
  bool leq(Elem a, Elem b) const { return leq_[a.id * size() + b.id] != 0; }
  bool less(Elem a, Elem b) const { return a != b && leq(a, b); }
  Elem oplus(Elem a, Elem b) const { return Elem{oplus_[a.id * size() + b.id]}; }
  Elem inv(Elem a) const { return Elem{inv_[a.id]}; }

  bool is_lattice() const { return lattice_; }
  Elem join(Elem a, Elem b) const;
  Elem meet(Elem a, Elem b) const;
  Elem join_all(const std::vector<Elem>& xs) const;
  Elem meet_all(const std::vector<Elem>& xs) const;
  std::vector<Elem> lower_covers(Elem a) const;

  /// Least r with v <= r (+) g.
  Elem residual_left(Elem v, Elem g) const;
  /// Least r with v <= g (+) r.
  Elem residual_right(Elem v, Elem g) const;
  /// d_H(p,q): least r with p <= q (+) inv(r) and q <= p (+) r.
  Elem distance(Elem p, Elem q) const;

 private:
  Elem table_lookup(const std::vector<std::uint16_t>& t, Elem a, Elem b, const char* what) const;

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<std::uint8_t> leq_;
  std::vector<std::uint16_t> oplus_;
  std::vector<std::uint16_t> inv_;
  std::vector<Elem> topo_;
  bool lattice_ = false;
  std::vector<std::uint16_t> join_, meet_, res_left_, res_right_, dist_;
};

/// Exhaustive law check; never stops at the first failure. Each violated
/// law is reported once with the first witness found in index order.
LawReport validate_laws(const FiniteAlgebra& alg);

/// Builtins: graph3, digraph5, poset4, nat(k), fence(k), divisors(n).
FiniteAlgebra make_builtin(std::string_view name, const std::vector<int>& params = {});
/// Accepts "poset4", "nat(6)", "nat:6", "divisors(360)".
FiniteAlgebra make_builtin_from_spec(std::string_view spec);

/// Elements v != 0 admitting no r with v not<= r and v <= r (+) inv(r),
/// together with 0 itself.
std::vector<Elem> inaccessible_set(const FiniteAlgebra& alg);

/// Parses the `algebra/elements/cover/op/inv` text format.
FiniteAlgebra parse_algebra(std::istream& in, const std::string& source);
FiniteAlgebra load_algebra_file(const std::string& path);
std::string write_algebra(const FiniteAlgebra& alg);

}  // namespace hmetric
