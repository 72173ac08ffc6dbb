#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "hmetric/errors.hpp"
#include "hmetric/fixpoint.hpp"
#include "hmetric/forms.hpp"

using namespace hmetric;

namespace {

FiniteSpace two_clique() {
  auto g = fixture::builtin("graph3");
  return FiniteSpace(g, {"x", "y"}, {g->zero(), fixture::el(*g, "1/2"), fixture::el(*g, "1/2"), g->zero()});
}

PointSet full(std::size_t n) { return PointSet(n, true); }

PointMap identity(std::size_t n) {
  PointMap f;
  for (std::size_t i = 0; i < n; ++i) f.image.push_back(i);
  return f;
}

PointMap compose(const PointMap& f, const PointMap& g) {
  PointMap h;
  for (std::size_t x = 0; x < g.image.size(); ++x) h.image.push_back(f(g(x)));
  return h;
}

/// Fence a < b > c < d.
Poset fence4() { return Poset({"a", "b", "c", "d"}, {{0, 1}, {2, 1}, {2, 3}}); }

}  // namespace

TEST_CASE("geometry") {
  auto c2 = fixture::chain(2);
  const auto& alg = c2.algebra();
  auto g1 = geometry(c2, PointSet::singleton(2, 0));
  CHECK(g1.diameter == alg.zero());
  CHECK(g1.radius == alg.zero());
  CHECK(g1.cover == PointSet::singleton(2, 0));
  auto g2 = geometry(c2, full(2));
  CHECK(alg.render(g2.diameter) == "1");
  // Each point sees the other at + or -, whose meet is 0: not attained.
  CHECK(alg.render(g2.radius) == "0");
  CHECK(g2.centers.empty());
  CHECK(g2.cover == full(2));
  CHECK_THROWS_AS(geometry(c2, PointSet(2)), Refusal);

  std::mt19937 rng(2);
  for (const auto& sp : fixture::all_posets(3))
    for (std::size_t bits = 1; bits < 8; ++bits) {
      PointSet a(3);
      for (std::size_t i = 0; i < 3; ++i)
        if (bits >> i & 1U) a.set(i);
      auto g = geometry(sp, a);
      CHECK(a.subset_of(g.cover));
      CHECK(sp.algebra().leq(g.radius, g.diameter));
      auto hulls = ball_hulls(sp);
      CHECK((std::find(hulls.begin(), hulls.end(), g.cover) != hulls.end()));
    }
}

TEST_CASE("boundedness and normal structure") {
  auto clique = two_clique();
  CHECK_FALSE(is_bounded_space(clique));
  auto rep = structure_report(clique);
  CHECK_FALSE(rep.normal);
  CHECK(rep.fip);
  REQUIRE(rep.normal_witness.has_value());
  CHECK(*rep.normal_witness == full(2));
  CHECK(clique.algebra().render(*rep.inaccessible_witness) == "1/2");

  auto one = fixture::chain(1);
  CHECK(is_bounded_space(one));
  CHECK(structure_report(one).normal);

  CHECK(is_bounded_space(fixture::diamond()));
  CHECK(structure_report(fixture::diamond()).normal);

  auto fence = fence_space(fence4(), 4);
  CHECK(structure_report(fence).normal);

  // Bounded and hyperconvex forces a normal structure; a non-singleton
  // hull whose diameter is inaccessible is equally centered.
  for (const char* name : {"poset4", "graph3"}) {
    auto alg = fixture::builtin(name);
    const auto inacc = inaccessible_set(*alg);
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& sp : fixture::all_spaces(alg, n)) {
        if (is_bounded_space(sp) && is_hyperconvex(sp)) CHECK(structure_report(sp).normal);
        for (const auto& a : ball_hulls(sp)) {
          auto g = geometry(sp, a);
          if (std::count(inacc.begin(), inacc.end(), g.diameter)) CHECK(g.radius == g.diameter);
          if (is_hyperconvex(sp) && g.radius == g.diameter) CHECK(std::count(inacc.begin(), inacc.end(), g.diameter));
        }
      }
  }
}

TEST_CASE("minimal invariant hulls") {
  auto d = fixture::diamond();
  auto a = minimal_invariant(d, identity(4));
  CHECK(a.count() == 1);
  PointMap constant{{2, 2, 2, 2}};
  CHECK(minimal_invariant(d, constant) == PointSet::singleton(4, 2));
  auto clique = two_clique();
  PointMap swap{{1, 0}};
  auto hull = minimal_invariant(clique, swap);
  CHECK(hull == full(2));
  CHECK(is_equally_centered(clique, hull));
  CHECK_THROWS_AS(fixed_point(clique, swap), Refusal);
  PointMap bad{{1, 0, 0, 0}};
  CHECK_THROWS_AS(minimal_invariant(d, bad), Refusal);
}

TEST_CASE("fixed points of monotone maps") {
  auto dp = decode_poset(fixture::diamond());
  auto d = fixture::diamond();
  for (const auto& f : fixture::monotone_maps(dp)) {
    auto res = fixed_point(d, f);
    CHECK(f(res.point) == res.point);
    CHECK(res.fixed.test(tarski(dp, f).least));
  }
  auto fence = fence4();
  auto fs = fence_space(fence, 4);
  for (const auto& f : fixture::monotone_maps(fence)) {
    REQUIRE(map_check(fs, fs, f) != MapKind::neither);
    auto res = fixed_point(fs, f);
    CHECK(f(res.point) == res.point);
  }
}

TEST_CASE("bounded hyperconvex spaces have fixed points") {
  for (const char* name : {"poset4", "graph3"}) {
    auto alg = fixture::builtin(name);
    std::size_t checked = 0;
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& sp : fixture::all_spaces(alg, n)) {
        if (!is_bounded_space(sp) || !is_hyperconvex(sp)) continue;
        ++checked;
        for (const auto& f : fixture::all_maps(n, n)) {
          if (map_check(sp, sp, f) == MapKind::neither) continue;
          auto res = fixed_point(sp, f);
          CHECK(is_hyperconvex(sp.restrict_to(res.fixed.members())));
        }
      }
    CHECK(checked > 0);
  }
}

TEST_CASE("commuting families") {
  auto sq = fixture::boolean_lattice(2);
  auto sp = encode_poset(sq);
  const auto maps = fixture::monotone_maps(sq);
  std::size_t pairs = 0;
  for (const auto& f : maps)
    for (const auto& g : maps) {
      if (compose(f, g).image != compose(g, f).image) continue;
      ++pairs;
      auto res = common_fixed_point(sp, {f, g});
      CHECK(f(res.point) == res.point);
      CHECK(g(res.point) == res.point);
      CHECK(common_fixed_point(sp, {g, f}).point == res.point);
      CHECK(tarski_common(sq, {f, g}) == tarski_common(sq, {g, f}));
    }
  CHECK(pairs > maps.size());
  CHECK(common_fixed_point(sp, {identity(4)}).fixed == full(4));
  CHECK(common_fixed_point(sp, {}).point == 0);

  PointMap up{{1, 1, 3, 3}}, right{{2, 3, 2, 3}};
  CHECK(compose(up, right).image == compose(right, up).image);
  PointMap a{{1, 1, 3, 3}}, b{{0, 0, 0, 3}};
  CHECK_THROWS_AS(common_fixed_point(sp, {a, b}), Refusal);

  // Oriented zigzag a -> b <- c -> d with the zigzag distance.
  Digraph z({"a", "b", "c", "d"});
  z.add_loops();
  z.add_arc(0, 1);
  z.add_arc(2, 1);
  z.add_arc(2, 3);
  auto zs = zigzag_space(z);
  CHECK(structure_report(zs).normal);
  CHECK_FALSE(structure_report(encode_digraph(z)).normal);
  std::vector<PointMap> homs;
  for (const auto& f : fixture::all_maps(4, 4))
    if (map_check(zs, zs, f) != MapKind::neither) homs.push_back(f);
  std::size_t commuting = 0;
  for (const auto& f : homs)
    for (const auto& g : homs) {
      if (compose(f, g).image != compose(g, f).image) continue;
      ++commuting;
      auto res = common_fixed_point(zs, {f, g});
      CHECK(f(res.point) == res.point);
      CHECK(g(res.point) == res.point);
    }
  CHECK(commuting > homs.size());
}

TEST_CASE("balls from joins of distances") {
  std::mt19937 rng(8);
  for (const char* name : {"poset4", "graph3", "digraph5", "nat(3)"}) {
    auto alg = fixture::builtin(name);
    for (std::size_t n = 1; n <= 3; ++n)
      for (const auto& sp : fixture::all_spaces(alg, n)) {
        std::set<PointSet> scan;
        for (std::size_t x = 0; x < n; ++x)
          for (auto r : alg->elements()) scan.insert(ball(sp, x, r));
        auto balls = all_balls(sp);
        CHECK(std::set<PointSet>(balls.begin(), balls.end()) == scan);
      }
  }
}

TEST_CASE("order solvers") {
  auto sq = fixture::boolean_lattice(2);
  auto id = tarski(sq, identity(4));
  CHECK(id.least == 0);
  CHECK(id.fixed.size() == 4);
  PointMap join_a{{1, 1, 3, 3}};  // x | {0}
  auto r = tarski(sq, join_a);
  CHECK(r.least == 1);
  CHECK(r.steps == 1);
  for (std::size_t k = 1; k <= 3; ++k) {
    auto b = fixture::boolean_lattice(k);
    for (const auto& f : fixture::monotone_maps(b)) {
      auto t = tarski(b, f);
      CHECK(abian_brown(b, f, 0) == t.least);
      CHECK(t.least == t.fixed.front());
    }
  }
  CHECK(fixture::monotone_maps(fixture::boolean_lattice(3)).size() == 8000);
  PointMap flip{{3, 2, 1, 0}};
  CHECK_THROWS_AS(tarski(sq, flip), Refusal);
  CHECK_THROWS_AS(tarski(decode_poset(fixture::vee()), identity(3)), Refusal);
  PointMap down{{0, 0, 0, 0}};
  CHECK_THROWS_AS(abian_brown(sq, down, 3), Refusal);
  auto v = decode_poset(fixture::vee());
  CHECK(abian_brown(v, PointMap{{1, 1, 1}}, 0) == 1);
}

TEST_CASE("gaps") {
  CHECK(find_gaps(fixture::boolean_lattice(2)).empty());
  Poset bowtie({"a", "b", "c", "d"}, {{0, 2}, {0, 3}, {1, 2}, {1, 3}});
  auto gaps = find_gaps(bowtie);
  CHECK((std::find_if(gaps.begin(), gaps.end(), [](const Gap& g) {
           return g.lower == std::vector<std::size_t>{0, 1} && g.upper == std::vector<std::size_t>{2, 3};
         }) != gaps.end()));
  Poset pair({"x", "y"}, {});
  auto pg = find_gaps(pair);
  REQUIRE_FALSE(pg.empty());
  CHECK(pg.front().lower.size() + pg.front().upper.size() == 2);
  for (const auto& g : pg) CHECK(g.lower.size() + g.upper.size() > 0);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& sp : fixture::all_posets(n)) {
      auto p = decode_poset(sp);
      CHECK(find_gaps(p, 0).empty() == p.is_lattice());
    }
}

TEST_CASE("helly triples") {
  std::vector<PointSet> triangle;
  for (auto [x, y] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    PointSet s(3);
    s.set(static_cast<std::size_t>(x));
    s.set(static_cast<std::size_t>(y));
    triangle.push_back(s);
  }
  CHECK(helly_triple_witness(triangle, 3, {0, 1, 2}).has_value());

  for (int n : {12, 30, 36}) {
    CHECK_FALSE(crt_helly_witness(n).has_value());
    // Direct check on random families of up to five balls.
    auto sp = cyclic_space(n);
    std::vector<PointSet> balls;
    for (std::size_t x = 0; x < sp.size(); ++x)
      for (auto r : sp.algebra().elements()) balls.push_back(ball(sp, x, r));
    std::mt19937 rng(static_cast<unsigned>(n));
    std::uniform_int_distribution<std::size_t> pick(0, balls.size() - 1), size(2, 5);
    for (int trial = 0; trial < 2000; ++trial) {
      std::vector<PointSet> fam;
      for (std::size_t k = size(rng); k > 0; --k) fam.push_back(balls[pick(rng)]);
      bool pairwise = true;
      PointSet all(sp.size(), true);
      for (std::size_t i = 0; i < fam.size(); ++i) {
        all &= fam[i];
        for (std::size_t j = i + 1; j < fam.size(); ++j) pairwise = pairwise && fam[i].intersects(fam[j]);
      }
      if (pairwise) CHECK_FALSE(all.empty());
    }
  }
}
