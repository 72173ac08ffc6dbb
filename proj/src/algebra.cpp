#include "hmetric/algebra.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <numeric>
#include <stdexcept>

#include "hmetric/errors.hpp"

namespace hmetric {

bool LawReport::violates(std::string_view law) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const LawViolation& v) { return v.law == law; });
}

FiniteAlgebra::FiniteAlgebra(std::string name, std::vector<std::string> labels,
                             std::vector<std::uint8_t> leq, std::vector<std::uint16_t> oplus,
                             std::vector<std::uint16_t> inv)
    : name_(std::move(name)),
      labels_(std::move(labels)),
      leq_(std::move(leq)),
      oplus_(std::move(oplus)),
      inv_(std::move(inv)) {
  const std::size_t n = labels_.size();
  if (n == 0 || n >= npos) throw std::invalid_argument("algebra carrier size out of range");
  if (leq_.size() != n * n || oplus_.size() != n * n || inv_.size() != n)
    throw std::invalid_argument("algebra table sizes do not match the carrier");
  for (auto v : oplus_)
    if (v >= n) throw std::invalid_argument("oplus table entry outside the carrier");
  for (auto v : inv_)
    if (v >= n) throw std::invalid_argument("inv table entry outside the carrier");

  // Kahn's algorithm, smallest index first; elements caught in a cycle are
  // appended in index order so the sequence always covers the carrier.
  std::vector<int> indeg(n, 0);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (a != b && leq_[a * n + b]) ++indeg[b];
  std::vector<bool> done(n, false);
  for (std::size_t round = 0; round < n; ++round) {
    std::size_t pick = n;
    for (std::size_t a = 0; a < n && pick == n; ++a)
      if (!done[a] && indeg[a] == 0) pick = a;
    if (pick == n) break;
    done[pick] = true;
    topo_.push_back(Elem{static_cast<std::uint16_t>(pick)});
    for (std::size_t b = 0; b < n; ++b)
      if (b != pick && leq_[pick * n + b]) --indeg[b];
  }
  for (std::size_t a = 0; a < n; ++a)
    if (!done[a]) topo_.push_back(Elem{static_cast<std::uint16_t>(a)});

  auto least_of = [&](const std::vector<std::uint16_t>& cands) -> std::uint16_t {
    for (auto c : cands) {
      bool below_all = true;
      for (auto d : cands)
        if (!leq_[c * n + d]) {
          below_all = false;
          break;
        }
      if (below_all) return c;
    }
    return npos;
  };
  auto greatest_of = [&](const std::vector<std::uint16_t>& cands) -> std::uint16_t {
    for (auto c : cands) {
      bool above_all = true;
      for (auto d : cands)
        if (!leq_[d * n + c]) {
          above_all = false;
          break;
        }
      if (above_all) return c;
    }
    return npos;
  };

  join_.assign(n * n, npos);
  meet_.assign(n * n, npos);
  lattice_ = true;
  std::vector<std::uint16_t> cands;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      cands.clear();
      for (std::size_t c = 0; c < n; ++c)
        if (leq_[a * n + c] && leq_[b * n + c]) cands.push_back(static_cast<std::uint16_t>(c));
      join_[a * n + b] = least_of(cands);
      cands.clear();
      for (std::size_t c = 0; c < n; ++c)
        if (leq_[c * n + a] && leq_[c * n + b]) cands.push_back(static_cast<std::uint16_t>(c));
      meet_[a * n + b] = greatest_of(cands);
      if (join_[a * n + b] == npos || meet_[a * n + b] == npos) lattice_ = false;
    }

  res_left_.assign(n * n, npos);
  res_right_.assign(n * n, npos);
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t g = 0; g < n; ++g) {
      cands.clear();
      for (std::size_t r = 0; r < n; ++r)
        if (leq_[v * n + oplus_[r * n + g]]) cands.push_back(static_cast<std::uint16_t>(r));
      res_left_[v * n + g] = least_of(cands);
      cands.clear();
      for (std::size_t r = 0; r < n; ++r)
        if (leq_[v * n + oplus_[g * n + r]]) cands.push_back(static_cast<std::uint16_t>(r));
      res_right_[v * n + g] = least_of(cands);
    }

  dist_.assign(n * n, npos);
  if (lattice_) {
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = 0; q < n; ++q) {
        auto a = res_left_[inv_[p] * n + inv_[q]];
        auto b = res_right_[q * n + p];
        if (a != npos && b != npos) dist_[p * n + q] = join_[a * n + b];
      }
  }
}

std::vector<Elem> FiniteAlgebra::elements() const {
  std::vector<Elem> out(size());
  for (std::size_t i = 0; i < size(); ++i) out[i] = Elem{static_cast<std::uint16_t>(i)};
  return out;
}

std::optional<Elem> FiniteAlgebra::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return Elem{static_cast<std::uint16_t>(i)};
  return std::nullopt;
}

Elem FiniteAlgebra::table_lookup(const std::vector<std::uint16_t>& t, Elem a, Elem b,
                                 const char* what) const {
  auto v = t[a.id * size() + b.id];
  if (v == npos)
    throw InternalError(std::string(what) + " undefined for (" + label(a) + ", " + label(b) +
                        ") in " + name_);
  return Elem{v};
}

Elem FiniteAlgebra::join(Elem a, Elem b) const { return table_lookup(join_, a, b, "join"); }
Elem FiniteAlgebra::meet(Elem a, Elem b) const { return table_lookup(meet_, a, b, "meet"); }
Elem FiniteAlgebra::residual_left(Elem v, Elem g) const {
  return table_lookup(res_left_, v, g, "left residual");
}
Elem FiniteAlgebra::residual_right(Elem v, Elem g) const {
  return table_lookup(res_right_, v, g, "right residual");
}
Elem FiniteAlgebra::distance(Elem p, Elem q) const { return table_lookup(dist_, p, q, "distance"); }

Elem FiniteAlgebra::join_all(const std::vector<Elem>& xs) const {
  Elem acc = zero();
  for (auto x : xs) acc = join(acc, x);
  return acc;
}

Elem FiniteAlgebra::meet_all(const std::vector<Elem>& xs) const {
  Elem acc = top();
  for (auto x : xs) acc = meet(acc, x);
  return acc;
}

std::vector<Elem> FiniteAlgebra::lower_covers(Elem a) const {
  std::vector<Elem> out;
  for (auto b : elements()) {
    if (!less(b, a)) continue;
    bool cover = true;
    for (auto c : elements())
      if (less(b, c) && less(c, a)) {
        cover = false;
        break;
      }
    if (cover) out.push_back(b);
  }
  return out;
}

namespace {

class LawChecker {
 public:
  explicit LawChecker(const FiniteAlgebra& alg) : a_(alg), all_(alg.elements()) {}

  void fail(const std::string& law, std::vector<Elem> witness) {
    report_.passed = false;
    if (!report_.violates(law)) report_.violations.push_back({law, std::move(witness)});
  }

  LawReport run() {
    order_laws();
    monoid_laws();
    involution_laws();
    if (a_.is_lattice()) distributivity_laws();
    return report_;
  }

 private:
  void order_laws() {
    for (auto x : all_)
      if (!a_.leq(x, x)) fail("reflexive", {x});
    for (auto x : all_)
      for (auto y : all_) {
        if (x != y && a_.leq(x, y) && a_.leq(y, x)) fail("antisymmetric", {x, y});
        for (auto z : all_)
          if (a_.leq(x, y) && a_.leq(y, z) && !a_.leq(x, z)) fail("transitive", {x, y, z});
      }
    for (auto x : all_) {
      if (!a_.leq(a_.zero(), x)) fail("zero-least", {x});
      if (!a_.leq(x, a_.top())) fail("top-greatest", {x});
    }
    if (!a_.is_lattice()) {
      for (auto x : all_)
        for (auto y : all_) {
          try {
            a_.join(x, y);
            a_.meet(x, y);
          } catch (const InternalError&) {
            fail("lattice", {x, y});
          }
        }
    }
  }

  void monoid_laws() {
    for (auto x : all_) {
      if (a_.oplus(a_.zero(), x) != x || a_.oplus(x, a_.zero()) != x) fail("neutral", {x});
      for (auto y : all_)
        for (auto z : all_)
          if (a_.oplus(a_.oplus(x, y), z) != a_.oplus(x, a_.oplus(y, z)))
            fail("associativity", {x, y, z});
    }
    for (auto x : all_)
      for (auto y : all_) {
        if (!a_.leq(x, y)) continue;
        for (auto z : all_)
          if (!a_.leq(a_.oplus(x, z), a_.oplus(y, z)) || !a_.leq(a_.oplus(z, x), a_.oplus(z, y)))
            fail("monotone", {x, y, z});
      }
  }

  void involution_laws() {
    for (auto x : all_) {
      if (a_.inv(a_.inv(x)) != x) fail("involution", {x});
      for (auto y : all_) {
        if (a_.leq(x, y) && !a_.leq(a_.inv(x), a_.inv(y))) fail("inv-monotone", {x, y});
        if (a_.inv(a_.oplus(x, y)) != a_.oplus(a_.inv(y), a_.inv(x)))
          fail("inv-reverses-oplus", {x, y});
      }
    }
  }

  // For finite families the binary identities together with the empty family
  // (top absorbing on both sides) imply distributivity over every subset;
  // small carriers are additionally checked subset by subset.
  void distributivity_laws() {
    for (auto q : all_) {
      if (a_.oplus(a_.top(), q) != a_.top()) fail("distributive-right", {q});
      if (a_.oplus(q, a_.top()) != a_.top()) fail("distributive-left", {q});
      for (auto x : all_)
        for (auto y : all_) {
          auto m = a_.meet(x, y);
          if (a_.oplus(m, q) != a_.meet(a_.oplus(x, q), a_.oplus(y, q)))
            fail("distributive-right", {x, y, q});
          if (a_.oplus(q, m) != a_.meet(a_.oplus(q, x), a_.oplus(q, y)))
            fail("distributive-left", {q, x, y});
        }
    }
    const std::size_t n = all_.size();
    if (n > 12) return;
    for (std::uint32_t mask = 0; mask < (1U << n); ++mask) {
      std::vector<Elem> family;
      for (std::size_t i = 0; i < n; ++i)
        if (mask >> i & 1U) family.push_back(all_[i]);
      auto m = a_.meet_all(family);
      for (auto q : all_) {
        std::vector<Elem> right, left;
        for (auto p : family) {
          right.push_back(a_.oplus(p, q));
          left.push_back(a_.oplus(q, p));
        }
        if (a_.oplus(m, q) != a_.meet_all(right)) {
          auto w = family;
          w.push_back(q);
          fail("distributive-right", w);
        }
        if (a_.oplus(q, m) != a_.meet_all(left)) {
          auto w = family;
          w.insert(w.begin(), q);
          fail("distributive-left", w);
        }
      }
    }
  }

  const FiniteAlgebra& a_;
  std::vector<Elem> all_;
  LawReport report_;
};

struct TableBuilder {
  std::vector<std::string> labels;
  std::function<bool(std::size_t, std::size_t)> leq;
  std::function<std::size_t(std::size_t, std::size_t)> oplus;
  std::function<std::size_t(std::size_t)> inv;

  FiniteAlgebra build(std::string name) const {
    const std::size_t n = labels.size();
    std::vector<std::uint8_t> l(n * n);
    std::vector<std::uint16_t> o(n * n), v(n);
    for (std::size_t a = 0; a < n; ++a) {
      v[a] = static_cast<std::uint16_t>(inv(a));
      for (std::size_t b = 0; b < n; ++b) {
        l[a * n + b] = leq(a, b) ? 1 : 0;
        o[a * n + b] = static_cast<std::uint16_t>(oplus(a, b));
      }
    }
    return FiniteAlgebra(std::move(name), labels, std::move(l), std::move(o), std::move(v));
  }
};

FiniteAlgebra make_graph3() {
  TableBuilder t;
  t.labels = {"0", "1/2", "1"};
  t.leq = [](std::size_t a, std::size_t b) { return a <= b; };
  t.oplus = [](std::size_t a, std::size_t b) { return std::min<std::size_t>(a + b, 2); };
  t.inv = [](std::size_t a) { return a; };
  return t.build("graph3");
}

FiniteAlgebra make_digraph5() {
  // 0 < 1/2 < {+, -} < 1
  TableBuilder t;
  t.labels = {"0", "1/2", "+", "-", "1"};
  const int rank[] = {0, 1, 2, 2, 3};
  t.leq = [rank](std::size_t a, std::size_t b) { return a == b || rank[a] < rank[b]; };
  t.oplus = [](std::size_t a, std::size_t b) -> std::size_t {
    if (a == 0) return b;
    if (b == 0) return a;
    return 4;
  };
  t.inv = [](std::size_t a) -> std::size_t { return a == 2 ? 3 : a == 3 ? 2 : a; };
  return t.build("digraph5");
}

FiniteAlgebra make_poset4() {
  TableBuilder t;
  t.labels = {"0", "+", "-", "1"};
  auto leq = [](std::size_t a, std::size_t b) { return a == b || a == 0 || b == 3; };
  t.leq = leq;
  t.oplus = [leq](std::size_t a, std::size_t b) -> std::size_t {
    if (leq(a, b)) return b;
    if (leq(b, a)) return a;
    return 3;
  };
  t.inv = [](std::size_t a) -> std::size_t { return a == 1 ? 2 : a == 2 ? 1 : a; };
  return t.build("poset4");
}

FiniteAlgebra make_nat(int k) {
  TableBuilder t;
  for (int i = 0; i <= k; ++i) t.labels.push_back(std::to_string(i));
  t.labels.push_back("inf");
  const std::size_t inf = static_cast<std::size_t>(k) + 1;
  t.leq = [](std::size_t a, std::size_t b) { return a <= b; };
  t.oplus = [inf](std::size_t a, std::size_t b) { return std::min(a + b, inf); };
  t.inv = [](std::size_t a) { return a; };
  return t.build("nat(" + std::to_string(k) + ")");
}

struct FencePair {
  int up = 0;
  int down = 0;
  auto operator<=>(const FencePair&) const = default;
};

// Shortest alternating fence through a midpoint: a first leg ending with the
// same comparison the second leg starts with merges into a single step.
FencePair fence_sum(FencePair p, FencePair q) {
  if (p == FencePair{}) return q;
  if (q == FencePair{}) return p;
  auto odd = [](int x) { return x % 2 != 0 ? 1 : 0; };
  int up = std::min(p.up + q.up - odd(p.up), p.up + q.down - (1 - odd(p.up)));
  int down = std::min(p.down + q.down - odd(p.down), p.down + q.up - (1 - odd(p.down)));
  return {up, down};
}

// Reversing a fence flips every comparison: an up-fence of even length stays
// an up-fence, one of odd length becomes a down-fence, and symmetrically.
FencePair fence_reverse(FencePair p) {
  if (p == FencePair{}) return p;
  auto even_at_least = [](int x) { return x % 2 == 0 ? x : x + 1; };
  auto odd_at_least = [](int x) { return x % 2 != 0 ? x : x + 1; };
  return {std::min(even_at_least(p.up), odd_at_least(p.down)),
          std::min(odd_at_least(p.up), even_at_least(p.down))};
}

FiniteAlgebra make_fence(int k) {
  std::vector<FencePair> pairs;
  for (int n = 1; n <= k + 1; ++n)
    for (int m = 1; m <= k + 1; ++m)
      if (std::abs(n - m) <= 1 && !(n == 1 && m == 1) && std::min(n, m) <= k) pairs.push_back({n, m});
  std::sort(pairs.begin(), pairs.end(), [](FencePair a, FencePair b) {
    return std::pair(a.up + a.down, a.up) < std::pair(b.up + b.down, b.up);
  });
  pairs.insert(pairs.begin(), FencePair{});
  const std::size_t inf = pairs.size();
  std::map<FencePair, std::size_t> index;
  TableBuilder t;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    index[pairs[i]] = i;
    t.labels.push_back("(" + std::to_string(pairs[i].up) + "," + std::to_string(pairs[i].down) + ")");
  }
  t.labels.push_back("inf");
  auto lookup = [index, inf](FencePair p) {
    auto it = index.find(p);
    return it == index.end() ? inf : it->second;
  };
  t.leq = [pairs, inf](std::size_t a, std::size_t b) {
    if (b == inf) return true;
    if (a == inf) return false;
    return pairs[a].up <= pairs[b].up && pairs[a].down <= pairs[b].down;
  };
  t.oplus = [pairs, inf, lookup](std::size_t a, std::size_t b) {
    if (a == inf || b == inf) return inf;
    return lookup(fence_sum(pairs[a], pairs[b]));
  };
  t.inv = [pairs, inf, lookup](std::size_t a) {
    return a == inf ? inf : lookup(fence_reverse(pairs[a]));
  };
  return t.build("fence(" + std::to_string(k) + ")");
}

FiniteAlgebra make_divisors(int n) {
  std::vector<int> divs;
  for (int d = n; d >= 1; --d)
    if (n % d == 0) divs.push_back(d);
  TableBuilder t;
  for (int d : divs) t.labels.push_back(std::to_string(d));
  t.leq = [divs](std::size_t a, std::size_t b) { return divs[a] % divs[b] == 0; };
  t.oplus = [divs](std::size_t a, std::size_t b) {
    int g = std::gcd(divs[a], divs[b]);
    return static_cast<std::size_t>(std::find(divs.begin(), divs.end(), g) - divs.begin());
  };
  t.inv = [](std::size_t a) { return a; };
  return t.build("divisors(" + std::to_string(n) + ")");
}

}  // namespace

LawReport validate_laws(const FiniteAlgebra& alg) { return LawChecker(alg).run(); }

FiniteAlgebra make_builtin(std::string_view name, const std::vector<int>& params) {
  auto need_param = [&](int minimum) {
    if (params.size() != 1)
      throw std::invalid_argument(std::string(name) + " takes exactly one integer parameter");
    if (params[0] < minimum)
      throw std::invalid_argument(std::string(name) + " parameter must be at least " +
                                  std::to_string(minimum));
    return params[0];
  };
  auto no_param = [&] {
    if (!params.empty()) throw std::invalid_argument(std::string(name) + " takes no parameters");
  };
  if (name == "graph3") return no_param(), make_graph3();
  if (name == "digraph5") return no_param(), make_digraph5();
  if (name == "poset4") return no_param(), make_poset4();
  if (name == "nat") return make_nat(need_param(2));
  if (name == "fence") return make_fence(need_param(2));
  if (name == "divisors") return make_divisors(need_param(2));
  throw std::invalid_argument("unknown builtin algebra '" + std::string(name) + "'");
}

FiniteAlgebra make_builtin_from_spec(std::string_view spec) {
  auto cut = spec.find_first_of("(:");
  if (cut == std::string_view::npos) return make_builtin(spec);
  std::string_view name = spec.substr(0, cut);
  std::string_view rest = spec.substr(cut + 1);
  if (spec[cut] == '(') {
    if (rest.empty() || rest.back() != ')')
      throw std::invalid_argument("malformed algebra spec '" + std::string(spec) + "'");
    rest.remove_suffix(1);
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
  if (ec != std::errc{} || ptr != rest.data() + rest.size())
    throw std::invalid_argument("malformed algebra parameter in '" + std::string(spec) + "'");
  return make_builtin(name, {value});
}

std::vector<Elem> inaccessible_set(const FiniteAlgebra& alg) {
  std::vector<Elem> out;
  for (auto v : alg.elements()) {
    bool accessible = false;
    for (auto r : alg.elements())
      if (!alg.leq(v, r) && alg.leq(v, alg.oplus(r, alg.inv(r)))) {
        accessible = true;
        break;
      }
    if (!accessible) out.push_back(v);
  }
  return out;
}

}  // namespace hmetric
