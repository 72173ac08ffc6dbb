#include <algorithm>
#include <map>
#include <memory>
#include <sstream>

#include "doctest.h"
#include "hmetric/algebra.hpp"
#include "hmetric/errors.hpp"
#include "oracles.hpp"

using namespace hmetric;

namespace {

Elem el(const FiniteAlgebra& a, const char* label) {
  auto e = a.find(label);
  REQUIRE_MESSAGE(e.has_value(), label);
  return *e;
}

std::vector<FiniteAlgebra> builtins() {
  return {make_builtin("graph3"),          make_builtin("digraph5"),    make_builtin("poset4"),
          make_builtin("nat", {6}),        make_builtin("fence", {6}),  make_builtin("divisors", {360}),
          make_builtin("nat", {2}),        make_builtin("fence", {2}),  make_builtin("divisors", {12})};
}

// Fence values as final segments of alternating words: the value of a word
// is the pair of shortest alternating words starting with + and with - that
// contain it once equal neighbours are merged.
std::pair<int, int> fence_value_of_word(const std::string& w) {
  std::string m;
  for (char c : w)
    if (m.empty() || m.back() != c) m += c;
  if (m.empty()) return {0, 0};
  int len = static_cast<int>(m.size());
  return {m[0] == '+' ? len : len + 1, m[0] == '-' ? len : len + 1};
}

std::string alternating(int n, char start) {
  std::string s;
  for (int i = 0; i < n; ++i) s += (i % 2 == 0) ? start : (start == '+' ? '-' : '+');
  return s;
}

std::vector<std::string> fence_generators(std::pair<int, int> v) {
  if (v == std::pair(0, 0)) return {""};
  return {alternating(v.first, '+'), alternating(v.second, '-')};
}

std::pair<int, int> parse_pair(const std::string& label) {
  int n = 0, m = 0;
  std::sscanf(label.c_str(), "(%d,%d)", &n, &m);
  return {n, m};
}

}  // namespace

TEST_CASE("builtins pass the law suite") {
  for (const auto& a : builtins()) {
    auto rep = validate_laws(a);
    CHECK_MESSAGE(rep.passed, a.name());
    CHECK(rep.violations.empty());
  }
}

TEST_CASE("corrupted poset4 reports associativity with a witness") {
  auto base = make_builtin("poset4");
  const std::size_t n = base.size();
  std::vector<std::uint8_t> leq(n * n);
  std::vector<std::uint16_t> op(n * n), inv(n);
  for (auto a : base.elements()) {
    inv[a.id] = base.inv(a).id;
    for (auto b : base.elements()) {
      leq[a.id * n + b.id] = base.leq(a, b);
      op[a.id * n + b.id] = base.oplus(a, b).id;
    }
  }
  op[1 * n + 2] = 0;  // + (+) - := 0
  FiniteAlgebra bad("bad", {"0", "+", "-", "1"}, leq, op, inv);
  auto rep = validate_laws(bad);
  CHECK_FALSE(rep.passed);
  REQUIRE(rep.violates("associativity"));
  auto it = std::find_if(rep.violations.begin(), rep.violations.end(),
                         [](const LawViolation& v) { return v.law == "associativity"; });
  REQUIRE(it->witness.size() == 3);
  auto [x, y, z] = std::tuple(it->witness[0], it->witness[1], it->witness[2]);
  CHECK(bad.oplus(bad.oplus(x, y), z) != bad.oplus(x, bad.oplus(y, z)));
  CHECK(rep.violates("monotone"));
}

TEST_CASE("make_builtin instances and errors") {
  auto d5 = make_builtin("digraph5");
  CHECK(d5.size() == 5);
  CHECK(d5.inv(el(d5, "+")) == el(d5, "-"));
  CHECK(d5.inv(el(d5, "1/2")) == el(d5, "1/2"));

  auto n3 = make_builtin("nat", {3});
  CHECK(n3.size() == 5);
  CHECK(n3.oplus(el(n3, "2"), el(n3, "2")) == el(n3, "inf"));
  CHECK(n3.oplus(el(n3, "1"), el(n3, "2")) == el(n3, "3"));

  auto f4 = make_builtin("fence", {4});
  CHECK(f4.find("(1,2)"));
  CHECK(f4.find("(2,1)"));
  CHECK(f4.find("(2,2)"));
  CHECK_FALSE(f4.find("(1,1)"));
  CHECK(f4.zero() == el(f4, "(0,0)"));
  CHECK(f4.top() == el(f4, "inf"));

  auto dv = make_builtin("divisors", {12});
  CHECK(dv.zero() == el(dv, "12"));
  CHECK(dv.top() == el(dv, "1"));
  CHECK(dv.oplus(el(dv, "4"), el(dv, "6")) == el(dv, "2"));
  CHECK(dv.leq(el(dv, "12"), el(dv, "3")));
  CHECK_FALSE(dv.leq(el(dv, "4"), el(dv, "6")));

  CHECK_THROWS_AS(make_builtin("cube"), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("nat", {1}), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("fence", {1}), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("divisors", {1}), std::invalid_argument);
  CHECK_THROWS_AS(make_builtin("nat"), std::invalid_argument);
  CHECK(make_builtin_from_spec("nat(6)").size() == 8);
  CHECK(make_builtin_from_spec("fence:3").name() == "fence(3)");
  CHECK_THROWS_AS(make_builtin_from_spec("nat(x)"), std::invalid_argument);
}

TEST_CASE("fence sum and involution agree with alternating-word concatenation") {
  auto f = make_builtin("fence", {7});
  const auto inf = f.top();
  for (auto p : f.elements()) {
    if (p == inf) continue;
    for (auto q : f.elements()) {
      if (q == inf) continue;
      std::pair<int, int> best{1 << 20, 1 << 20};
      for (const auto& u : fence_generators(parse_pair(f.label(p))))
        for (const auto& v : fence_generators(parse_pair(f.label(q)))) {
          auto val = fence_value_of_word(u + v);
          best.first = std::min(best.first, val.first);
          best.second = std::min(best.second, val.second);
        }
      auto got = f.oplus(p, q);
      if (std::min(best.first, best.second) > 7) {
        CHECK(got == inf);
      } else {
        CHECK(got != inf);
        CHECK(parse_pair(f.label(got)) == best);
      }
    }
    // Mirror image: reverse the generator words and swap the letters.
    std::pair<int, int> best{1 << 20, 1 << 20};
    for (auto u : fence_generators(parse_pair(f.label(p)))) {
      std::reverse(u.begin(), u.end());
      for (auto& c : u) c = c == '+' ? '-' : '+';
      auto val = fence_value_of_word(u);
      best.first = std::min(best.first, val.first);
      best.second = std::min(best.second, val.second);
    }
    CHECK(parse_pair(f.label(f.inv(p))) == best);
  }
}

TEST_CASE("residuals") {
  auto n9 = make_builtin("nat", {9});
  CHECK(n9.residual_left(el(n9, "5"), el(n9, "3")) == el(n9, "2"));
  auto p4 = make_builtin("poset4");
  CHECK(p4.residual_left(el(p4, "+"), el(p4, "+")) == el(p4, "0"));
  for (const auto& a : builtins())
    for (auto v : a.elements()) {
      CHECK(a.residual_left(v, a.zero()) == v);
      for (auto g : a.elements()) {
        auto r = a.residual_left(v, g);
        CHECK(a.leq(v, a.oplus(r, g)));
        CHECK(r == oracle::residual_left(a, v, g));
        auto s = a.residual_right(v, g);
        CHECK(a.leq(v, a.oplus(g, s)));
        for (auto t : a.elements())
          if (a.leq(v, a.oplus(g, t))) CHECK(a.leq(s, t));
      }
    }
}

TEST_CASE("value distance") {
  auto g3 = make_builtin("graph3");
  CHECK(g3.distance(el(g3, "0"), el(g3, "1/2")) == el(g3, "1/2"));
  auto p4 = make_builtin("poset4");
  CHECK(p4.distance(el(p4, "0"), el(p4, "+")) == el(p4, "+"));
  for (const auto& a : builtins())
    for (auto p : a.elements())
      for (auto q : a.elements()) {
        auto d = a.distance(p, q);
        CHECK(d == oracle::distance(a, p, q));
        CHECK(d == a.inv(a.distance(q, p)));
        CHECK((d == a.zero()) == (p == q));
        if (a.size() <= 12)
          for (auto s : a.elements()) CHECK(a.leq(d, a.oplus(a.distance(p, s), a.distance(s, q))));
      }
}

TEST_CASE("inaccessible elements") {
  auto names = [](const FiniteAlgebra& a) {
    std::vector<std::string> out;
    for (auto e : inaccessible_set(a)) out.push_back(a.label(e));
    return out;
  };
  CHECK(names(make_builtin("nat", {5})) == std::vector<std::string>{"0", "1"});
  CHECK(names(make_builtin("graph3")) == std::vector<std::string>{"0", "1/2"});
  CHECK(names(make_builtin("poset4")) == std::vector<std::string>{"0"});
  for (const auto& a : builtins()) {
    auto in = inaccessible_set(a);
    CHECK(std::find(in.begin(), in.end(), a.zero()) != in.end());
    for (auto v : in) CHECK(a.inv(v) == v);
  }
}

TEST_CASE("distributivity over every subset of small carriers") {
  for (const auto& a : builtins()) {
    if (a.size() > 10) continue;
    const auto all = a.elements();
    for (std::uint32_t mask = 0; mask < (1U << all.size()); ++mask) {
      std::vector<Elem> s;
      for (std::size_t i = 0; i < all.size(); ++i)
        if (mask >> i & 1U) s.push_back(all[i]);
      for (auto q : all) {
        std::vector<Elem> shifted;
        for (auto p : s) shifted.push_back(a.oplus(p, q));
        CHECK(a.oplus(a.meet_all(s), q) == a.meet_all(shifted));
      }
    }
  }
}

TEST_CASE("algebra file round trip and errors") {
  for (const auto& a : builtins()) {
    std::istringstream in(write_algebra(a));
    auto b = parse_algebra(in, "roundtrip");
    REQUIRE(b.size() == a.size());
    for (auto x : a.elements()) {
      CHECK(b.label(x) == a.label(x));
      CHECK(b.inv(x) == a.inv(x));
      for (auto y : a.elements()) {
        CHECK(b.leq(x, y) == a.leq(x, y));
        CHECK(b.oplus(x, y) == a.oplus(x, y));
      }
    }
  }
  std::istringstream missing_op("algebra two\nelements 0 1\ncover 0 1\nop 0 0 0\nop 0 1 1\nop 1 0 1\ninv 0 0\ninv 1 1\n");
  CHECK_THROWS_AS(parse_algebra(missing_op, "m"), ParseError);
  std::istringstream unknown("algebra two\nelements 0 1\ncover 0 x\n");
  try {
    parse_algebra(unknown, "u.alg");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(e.source() == "u.alg");
  }
  std::istringstream ok(
      "# two-element chain\nalgebra two\nelements 0 1\ncover 0 1\n"
      "op 0 0 0\nop 0 1 1\nop 1 0 1\nop 1 1 1\ninv 0 0\ninv 1 1\n");
  auto two = parse_algebra(ok, "ok");
  CHECK(validate_laws(two).passed);
}
