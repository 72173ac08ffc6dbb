#include <random>
#include <sstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "hmetric/discrete.hpp"
#include "hmetric/errors.hpp"
#include "oracles.hpp"

using namespace hmetric;

namespace {

using oracle::named;
using oracle::random_digraph;
using oracle::walk_ends;
using oracle::zigzag_of;

Antichain A(const std::string& text) { return parse_antichain(Alphabet::signed_pair(), text); }

std::string show(const WordSpace& sp, const char* x, const char* y) {
  return sp.algebra().render(sp.d(sp.index_of(x), sp.index_of(y)));
}

}  // namespace

TEST_CASE("poset structure") {
  Poset p({"0", "a", "b", "1"}, {{0, 1}, {0, 2}, {1, 3}, {2, 3}});
  CHECK(p.leq(0, 3));
  CHECK(p.is_lattice());
  CHECK(*p.join(1, 2) == 3);
  CHECK(*p.meet(1, 2) == 0);
  CHECK(p.covers().size() == 4);
  Poset v({"0", "a", "b"}, {{0, 1}, {0, 2}});
  CHECK_FALSE(v.is_lattice());
  CHECK_FALSE(v.join(1, 2).has_value());
  CHECK(*v.bottom() == 0);
  CHECK_FALSE(v.top().has_value());
  CHECK_THROWS_AS(Poset({"a", "b"}, {{0, 1}, {1, 0}}), std::invalid_argument);
}

TEST_CASE("text formats") {
  std::istringstream g("# path\ngraph\nv a b c\ne a b\ne b c\nreflexive\n");
  auto path = parse_digraph(g, "path");
  CHECK(path.is_symmetric());
  CHECK(path.is_reflexive());
  CHECK(path.has_arc(2, 1));
  CHECK_FALSE(path.has_arc(0, 2));

  std::istringstream bad("digraph\nv a\ne a z\n");
  CHECK_THROWS_AS(parse_digraph(bad, "bad"), ParseError);

  std::istringstream p("poset\nv x y z\nlt x y\nlt y z\n");
  auto chain = parse_poset(p, "chain");
  CHECK(chain.less(0, 2));
  std::istringstream cyc("poset\nv x y\nlt x y\nlt y x\n");
  CHECK_THROWS_AS(parse_poset(cyc, "cyc"), ParseError);

  std::istringstream t("ts\nstates p q\nt p + q\ninvolutive\nreflexive\n");
  auto m = parse_ts(t, "ts");
  CHECK_FALSE(ts_violation(m).has_value());
  CHECK(show(ts_space(m), "p", "q") == "{ + }");

  CHECK(to_dot(chain).find("\"x\" -> \"y\"") != std::string::npos);
  CHECK(to_dot(chain).find("\"x\" -> \"z\"") == std::string::npos);
}

TEST_CASE("encodings round trip") {
  std::mt19937 rng(5);
  for (int i = 0; i < 40; ++i) {
    auto g = random_digraph(rng, 5);
    auto sp = encode_digraph(g);
    CHECK(validate_space(sp).valid);
    CHECK(decode_digraph(sp) == g);
    Digraph s = g;
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y)
        if (g.has_arc(x, y)) s.add_arc(y, x);
    auto gs = encode_graph(s);
    CHECK(validate_space(gs).valid);
    CHECK(decode_graph(gs) == s);
  }
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& sp : fixture::all_posets(n)) {
      auto p = decode_poset(sp);
      CHECK(encode_poset(p).matrix() == sp.matrix());
    }
  auto triangle = named(3);
  triangle.add_loops();
  for (std::size_t x = 0; x < 3; ++x)
    for (std::size_t y = 0; y < 3; ++y) triangle.add_arc(x, y);
  auto t = encode_graph(triangle);
  CHECK(t.algebra().render(t.d(0, 2)) == "1/2");
  auto arc = named(2);
  arc.add_loops();
  arc.add_arc(0, 1);
  auto a = encode_digraph(arc);
  CHECK(a.algebra().render(a.d(0, 1)) == "+");
  CHECK(a.algebra().render(a.d(1, 0)) == "-");
  CHECK_THROWS_AS(encode_graph(arc), Refusal);
}

TEST_CASE("graphic distance") {
  auto p3 = named(3);
  p3.add_loops();
  for (auto [x, y] : {std::pair{0, 1}, {1, 0}, {1, 2}, {2, 1}}) p3.add_arc(x, y);
  auto sp = graphic_distance(p3, 4);
  CHECK(validate_space(sp).valid);
  CHECK(sp.algebra().render(sp.d(0, 2)) == "2");
  auto p4 = named(4);
  p4.add_loops();
  for (std::size_t i = 0; i + 1 < 4; ++i) {
    p4.add_arc(i, i + 1);
    p4.add_arc(i + 1, i);
  }
  auto short_range = graphic_distance(p4, 2);
  CHECK(short_range.algebra().render(short_range.d(0, 2)) == "2");
  CHECK(short_range.algebra().render(short_range.d(0, 3)) == "inf");
  auto apart = named(2);
  apart.add_loops();
  CHECK(graphic_distance(apart, 6).algebra().render(graphic_distance(apart, 6).d(0, 1)) == "inf");
}

TEST_CASE("fence distance") {
  auto two = decode_poset(fixture::chain(2));
  auto sp = fence_space(two, 6);
  CHECK(sp.algebra().render(sp.d(0, 1)) == "(1,2)");
  CHECK(sp.algebra().render(sp.d(1, 0)) == "(2,1)");
  auto v = decode_poset(fixture::vee());
  auto fv = fence_space(v, 6);
  CHECK(fv.algebra().render(fv.d(1, 2)) == "(3,2)");
  CHECK(validate_space(fv).valid);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& ps : fixture::all_posets(n)) {
      auto p = decode_poset(ps);
      auto f = fence_space(p, 4);
      CHECK(validate_space(f).valid);
      // Monotone self-maps carry fences to fences.
      for (const auto& m : fixture::all_maps(n, n)) {
        bool monotone = true;
        for (std::size_t x = 0; x < n; ++x)
          for (std::size_t y = 0; y < n; ++y)
            if (p.leq(x, y) && !p.leq(m(x), m(y))) monotone = false;
        if (monotone) CHECK(map_check(f, f, m) != MapKind::neither);
      }
    }
  auto apart = Poset({"a", "b"}, {});
  CHECK(fence_space(apart, 3).algebra().render(fence_space(apart, 3).d(0, 1)) == "inf");
}

TEST_CASE("zigzag fixtures") {
  auto loop = named(1);
  loop.add_loops();
  CHECK(show(zigzag_space(loop), "v0", "v0") == "{ ^ }");
  auto arc = zigzag_of("+");
  auto za = zigzag_space(arc);
  CHECK(show(za, "v0", "v1") == "{ + }");
  CHECK(show(za, "v1", "v0") == "{ - }");
  CHECK(show(zigzag_space(zigzag_of("++")), "v0", "v2") == "{ ++ }");
  CHECK(show(zigzag_space(zigzag_of("+-")), "v0", "v2") == "{ +- }");
  auto apart = named(2);
  apart.add_loops();
  CHECK(show(zigzag_space(apart), "v0", "v1") == "{}");
  auto plain = named(2);
  CHECK_THROWS_AS(zigzag_space(plain), Refusal);
}

TEST_CASE("zigzag distance matches walk enumeration") {
  std::mt19937 rng(11);
  const auto alph = Alphabet::signed_pair();
  const auto words = oracle::words_up_to(alph, 6);
  for (int trial = 0; trial < 50; ++trial) {
    auto g = random_digraph(rng, 5);
    auto sp = zigzag_space(g);
    CHECK(validate_space(sp).valid);
    for (std::size_t x = 0; x < g.size(); ++x)
      for (const auto& w : words) {
        auto ends = walk_ends(g, alph, x, w);
        for (std::size_t y = 0; y < g.size(); ++y) CHECK(sp.d(x, y).contains(alph, w) == ends[y]);
      }
  }
}

TEST_CASE("transition systems") {
  TransitionSystem m;
  m.states = {"p", "q"};
  m.transitions = {{0, 0, 1}};
  auto bad = ts_violation(m);
  REQUIRE(bad.has_value());
  CHECK(bad->first == "reflexive");
  m.close_reflexive();
  CHECK(ts_violation(m)->first == "involutive");
  CHECK_THROWS_AS(ts_space(m), Refusal);
  m.close_involutive();
  CHECK_FALSE(ts_violation(m).has_value());

  // Ordered alphabet: a < b, so an a-step implies a b-step.
  std::istringstream t("ts alphabet a b ; le a b\nstates p q\nt p a q\nt q a p\nreflexive\n");
  auto ordered = parse_ts(t, "ordered");
  CHECK(ts_violation(ordered)->first == "letter-monotone");
  ordered.close_monotone();
  CHECK_FALSE(ts_violation(ordered).has_value());
  auto sp = ts_space(ordered);
  CHECK(validate_space(sp).valid);
  CHECK(sp.algebra().render(sp.d(0, 1)) == "{ a }");

  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    auto g = random_digraph(rng, 5);
    CHECK(ts_space(digraph_system(g)).matrix() == zigzag_space(g).matrix());
  }
  TransitionSystem big;
  for (int i = 0; i < 13; ++i) big.states.push_back("s" + std::to_string(i));
  big.close_reflexive();
  CHECK_THROWS_AS(ts_space(big), CapExceeded);
}

TEST_CASE("homomorphisms are the nonexpansive maps") {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 25; ++trial) {
    auto g = random_digraph(rng, 3), h = random_digraph(rng, 3);
    auto zg = zigzag_space(g), zh = zigzag_space(h);
    auto eg = encode_digraph(g), eh = encode_digraph(h);
    for (const auto& f : fixture::all_maps(g.size(), h.size())) {
      bool hom = true;
      for (std::size_t x = 0; x < g.size(); ++x)
        for (std::size_t y = 0; y < g.size(); ++y)
          if (g.has_arc(x, y) && !h.has_arc(f(x), f(y))) hom = false;
      CHECK((map_check(zg, zh, f) != MapKind::neither) == hom);
      CHECK((map_check(eg, eh, f) != MapKind::neither) == hom);
    }
  }
  for (std::size_t n = 1; n <= 3; ++n)
    for (const auto& ps : fixture::all_posets(n))
      for (const auto& qs : fixture::all_posets(n)) {
        auto p = decode_poset(ps), q = decode_poset(qs);
        for (const auto& f : fixture::all_maps(n, n)) {
          bool monotone = true;
          for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
              if (p.leq(x, y) && !q.leq(f(x), f(y))) monotone = false;
          CHECK((map_check(ps, qs, f) != MapKind::neither) == monotone);
        }
      }
}

TEST_CASE("connexity") {
  std::mt19937 rng(23);
  for (int i = 0; i < 30; ++i) {
    auto g = random_digraph(rng, 4);
    auto rep = check_connexity(zigzag_space(g));
    CHECK(rep.holds);
    REQUIRE(rep.graph.has_value());
    CHECK(*rep.graph == g);
  }
  auto alg = std::make_shared<const WordAlgebra>(Alphabet::signed_pair());
  WordSpace gap(alg, {"x", "y"}, {A("{ ^ }"), A("{ ++ }"), A("{ -- }"), A("{ ^ }")});
  auto rep = check_connexity(gap);
  CHECK_FALSE(rep.holds);
  CHECK(render_word(alg->alphabet(), rep.word) == "++");
  CHECK(rep.split == 1);
}

TEST_CASE("cancellation on zigzag distances") {
  const auto alph = Alphabet::signed_pair();
  CHECK(cancellation_holds(alph, A("{ ^ }")));
  CHECK_FALSE(cancellation_holds(alph, A("{ +, - }")));
  for (std::size_t len = 0; len <= 5; ++len)
    for (std::size_t bits = 0; bits < (1U << len); ++bits) {
      std::string u;
      for (std::size_t i = 0; i < len; ++i) u += (bits >> i & 1U) ? '+' : '-';
      auto sp = zigzag_space(zigzag_of(u));
      for (const auto& z : sp.matrix()) CHECK(cancellation_holds(alph, z));
    }
  auto cycle = named(3);
  cycle.add_loops();
  cycle.add_arc(0, 1);
  cycle.add_arc(1, 2);
  cycle.add_arc(2, 0);
  auto sp = zigzag_space(cycle);
  CHECK(show(sp, "v0", "v1") == "{ +, -- }");
  bool failing = false;
  for (const auto& z : sp.matrix()) failing = failing || !cancellation_holds(alph, z);
  CHECK(failing);
  auto both = named(2);
  both.add_loops();
  both.add_arc(0, 1);
  both.add_arc(1, 0);
  CHECK(show(zigzag_space(both), "v0", "v1") == "{ +, - }");
}
