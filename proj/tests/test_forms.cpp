#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "hmetric/errors.hpp"
#include "hmetric/forms.hpp"
#include "oracles.hpp"

using namespace hmetric;
using fixture::chain;
using fixture::el;

namespace {

const auto& P4 = fixture::poset4();

FiniteSpace two_point(const std::shared_ptr<const FiniteAlgebra>& alg, Elem v) {
  return FiniteSpace(alg, {"x", "y"}, {alg->zero(), v, alg->inv(v), alg->zero()});
}

// Hyperconvexity straight from the definition via weak forms.
bool hyperconvex_by_forms(const FiniteSpace& sp) {
  for (const auto& f : fixture::all_radii(sp.algebra(), sp.size()))
    if (is_weak_form(sp, f) && ball_intersection(sp, f).empty()) return false;
  return true;
}

bool leq_pointwise(const FiniteAlgebra& alg, const Radii& f, const Radii& g) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!alg.leq(f[i], g[i])) return false;
  return true;
}

std::vector<FiniteSpace> small_spaces(std::mt19937& rng) {
  std::vector<FiniteSpace> out;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& s : fixture::all_posets(n)) out.push_back(s);
  for (const char* spec : {"graph3", "digraph5", "nat(3)", "fence(2)"}) {
    auto alg = fixture::builtin(spec);
    for (int t = 0; t < 8; ++t) out.push_back(oracle::random_space(alg, 3, rng));
  }
  return out;
}

}  // namespace

TEST_CASE("form classification") {
  auto c = chain(2);
  for (std::size_t u = 0; u < 2; ++u) CHECK(classify_form(c, embedding_vector(c, u)) == FormKind::minimal);
  Radii top(2, P4->top()), zero(2, P4->zero());
  CHECK(is_weak_form(c, top));
  CHECK(classify_form(c, top) == FormKind::strong);
  CHECK(classify_form(c, zero) == FormKind::none);
  CHECK(classify_form(c, {P4->top(), el(*P4, "+")}) == FormKind::weak);
  CHECK_THROWS_AS(classify_form(c, {P4->zero()}), std::invalid_argument);
  CHECK(std::string(to_string(FormKind::minimal)) == "minimal");
}

TEST_CASE("floor of a weak form") {
  auto c = chain(2);
  auto plus = el(*P4, "+");
  CHECK(form_floor(c, {P4->top(), plus}) == Radii{plus, plus});
  CHECK_THROWS_AS(form_floor(c, {P4->zero(), P4->zero()}), Refusal);

  std::mt19937 rng(31);
  for (const auto& sp : small_spaces(rng)) {
    const auto& alg = sp.algebra();
    auto radii = fixture::all_radii(alg, sp.size());
    std::vector<Radii> weak, strong;
    for (const auto& f : radii) {
      if (!is_weak_form(sp, f)) continue;
      weak.push_back(f);
      if (is_metric_form(sp, f)) strong.push_back(f);
    }
    CHECK(strong == metric_forms(sp));
    for (const auto& f : weak) {
      auto g = form_floor(sp, f);
      // Largest metric form below f.
      for (const auto& h : strong)
        if (leq_pointwise(alg, h, f)) CHECK(leq_pointwise(alg, h, g));
      if (is_metric_form(sp, f)) CHECK(g == f);
    }
    for (std::size_t i = 0; i < weak.size(); i += 3)
      for (std::size_t j = 0; j < weak.size(); j += 5)
        CHECK(alg.leq(sup_distance(alg, form_floor(sp, weak[i]), form_floor(sp, weak[j])),
                      sup_distance(alg, weak[i], weak[j])));
    for (const auto& f : strong)
      for (std::size_t y = 0; y < sp.size(); ++y) CHECK(sup_distance(alg, embedding_vector(sp, y), f) == f[y]);
    // Minimal forms are exactly the pointwise-minimal weak forms.
    std::vector<Radii> minimal;
    for (const auto& f : weak) {
      bool below = false;
      for (const auto& g : weak) below = below || (g != f && leq_pointwise(alg, g, f));
      if (!below) minimal.push_back(f);
    }
    CHECK(minimal == minimal_forms(sp));
  }
}

TEST_CASE("minimal forms") {
  FiniteSpace one(P4, {"x"}, {P4->zero()});
  CHECK(minimal_forms(one) == std::vector<Radii>{{P4->zero()}});
  auto c = chain(2);
  auto mins = minimal_forms(c);
  REQUIRE(mins.size() == 2);
  CHECK(std::find(mins.begin(), mins.end(), embedding_vector(c, 0)) != mins.end());
  CHECK(std::find(mins.begin(), mins.end(), embedding_vector(c, 1)) != mins.end());
  auto saved = limits().max_enum;
  limits().max_enum = 5;
  CHECK_THROWS_AS(minimal_forms(chain(3)), CapExceeded);
  limits().max_enum = saved;
}

TEST_CASE("hyperconvexity") {
  CHECK(is_hyperconvex(chain(2)));
  CHECK(is_hyperconvex(fixture::diamond()));
  CHECK(hyperconvexity(FiniteSpace(fixture::poset4(), {}, {})).failed == "empty");
  auto v = hyperconvexity(fixture::vee());
  CHECK_FALSE(v.hyperconvex);
  CHECK(is_weak_form(fixture::vee(), v.witness));
  CHECK(ball_intersection(fixture::vee(), v.witness).empty());

  for (const char* spec : {"graph3", "digraph5", "poset4", "nat(6)", "fence(6)", "divisors(360)"})
    CHECK_MESSAGE(is_hyperconvex(value_space(fixture::builtin(spec))), spec);

  std::mt19937 rng(32);
  for (std::size_t n = 1; n <= 4; ++n)
    for (const auto& sp : fixture::all_posets(n)) {
      auto rep = hyperconvexity(sp);
      CHECK(rep.hyperconvex == hyperconvex_by_forms(sp));
      if (!rep.hyperconvex) {
        CHECK(is_weak_form(sp, rep.witness));
        CHECK(ball_intersection(sp, rep.witness).empty());
      }
    }
  std::size_t yes = 0, no = 0;
  for (const char* spec : {"graph3", "digraph5", "nat(3)", "fence(2)"}) {
    auto alg = fixture::builtin(spec);
    for (int t = 0; t < 40; ++t) {
      auto sp = oracle::random_space(alg, 4, rng);
      auto rep = hyperconvexity(sp);
      CHECK(rep.hyperconvex == hyperconvex_by_forms(sp));
      (rep.hyperconvex ? yes : no)++;
      if (!rep.hyperconvex) {
        CHECK(is_weak_form(sp, rep.witness));
        CHECK(ball_intersection(sp, rep.witness).empty());
      }
    }
  }
  CHECK(yes > 0);
  CHECK(no > 0);
}

TEST_CASE("hyperconvex spaces are retracts of a power of H") {
  auto vs = value_space(P4);
  std::vector<FiniteSpace> cases;
  for (std::size_t n = 1; n <= 3; ++n)
    for (auto& s : fixture::all_posets(n)) cases.push_back(s);
  for (const auto& sp : cases) {
    std::vector<FiniteSpace> factors(sp.size(), vs);
    auto power = sup_product(P4, factors);
    PointSet image(power.size());
    PointMap into;
    for (std::size_t x = 0; x < sp.size(); ++x) {
      std::size_t idx = 0;
      for (auto v : embedding_vector(sp, x)) idx = idx * P4->size() + v.id;
      image.set(idx);
      into.image.push_back(idx);
    }
    CHECK(map_check(sp, power, into) == MapKind::isometry);
    CHECK(find_retraction(power, image).has_value() == is_hyperconvex(sp));
  }
}

TEST_CASE("injective envelopes") {
  auto n3 = fixture::builtin("nat(3)");
  auto env = injective_envelope(two_point(n3, el(*n3, "2")));
  FiniteSpace interval(n3, {"0", "1", "2"},
                       {el(*n3, "0"), el(*n3, "1"), el(*n3, "2"), el(*n3, "1"), el(*n3, "0"), el(*n3, "1"),
                        el(*n3, "2"), el(*n3, "1"), el(*n3, "0")});
  CHECK(find_isometry(env.space, interval).has_value());

  auto venv = injective_envelope(fixture::vee());
  CHECK(find_isometry(venv.space, fixture::diamond()).has_value());
  CHECK(find_isometry(injective_envelope(chain(2)).space, chain(2)).has_value());
  CHECK(find_isometry(injective_envelope(fixture::diamond()).space, fixture::diamond()).has_value());

  std::mt19937 rng(34);
  for (const auto& sp : small_spaces(rng)) {
    auto e = injective_envelope(sp);
    CHECK(is_hyperconvex(e.space));
    if (e.space.size() > 6) continue;
    PointSet base(e.space.size());
    for (auto p : e.delta.image) base.set(p);
    const auto rest = e.space.size();
    for (std::uint32_t mask = 0; mask < (1U << rest); ++mask) {
      PointSet s(rest);
      for (std::size_t i = 0; i < rest; ++i)
        if (mask >> i & 1U) s.set(i);
      if (!base.subset_of(s) || s.count() == rest) continue;
      CHECK_FALSE(is_hyperconvex(e.space.restrict_to(s.members())));
    }
  }
}

TEST_CASE("replete space") {
  FiniteSpace one(P4, {"x"}, {P4->zero()});
  CHECK(replete_space(one).space.size() == P4->size());
  std::mt19937 rng(35);
  for (const auto& sp : small_spaces(rng)) {
    auto r = replete_space(sp);
    for (std::size_t x = 0; x < sp.size(); ++x) CHECK(r.forms[r.delta(x)] == embedding_vector(sp, x));
    if (is_hyperconvex(sp)) {
      PointSet img(r.space.size());
      for (auto p : r.delta.image) img.set(p);
      CHECK(find_retraction(r.space, img).has_value());
    }
  }
}

TEST_CASE("two-point envelopes over finite algebras") {
  CHECK(two_point_envelope(P4, P4->zero()).size() == 1);
  auto s = two_point_envelope(P4, el(*P4, "+"));
  CHECK(s.points() == std::vector<std::string>{"0", "+"});
  for (const char* spec : {"graph3", "digraph5", "poset4", "nat(4)", "fence(3)", "divisors(12)"}) {
    auto alg = fixture::builtin(spec);
    for (auto v : alg->elements()) {
      if (v == alg->zero()) continue;
      auto sv = two_point_envelope(alg, v);
      auto env = injective_envelope(two_point(alg, v));
      CHECK_MESSAGE(find_isometry(sv, env.space).has_value(), spec << " " << alg->label(v));
    }
  }
}

TEST_CASE("two-point envelopes over words") {
  auto words = std::make_shared<const WordAlgebra>(Alphabet::signed_pair());
  auto s = two_point_envelope(words, words->parse("{ + }"));
  CHECK(s.size() == 2);
  CHECK(s.points() == std::vector<std::string>{"{^}", "{+}"});
  CHECK(two_point_envelope(words, Antichain::everything()).size() == 1);
  CHECK(two_point_envelope(words, Antichain::nothing()).size() == 2);
  auto pm = two_point_envelope(words, words->parse("{ +- }"));
  CHECK(pm.size() == 3);
  CHECK(validate_space(pm).valid);

  const auto& alph = words->alphabet();
  std::vector<Antichain> samples;
  for (const auto& w : oracle::words_up_to(alph, 3)) samples.push_back(Antichain::from_words(alph, {w}));
  samples.push_back(words->parse("{ +, - }"));
  samples.push_back(words->parse("{ ++, -- }"));
  samples.push_back(words->parse("{ +-, -+ }"));
  for (const auto& f1 : samples)
    for (const auto& f2 : samples) {
      auto s1 = two_point_envelope(words, f1), s2 = two_point_envelope(words, f2);
      auto name = [&](const Antichain& a) {
        auto n = render_antichain(alph, a);
        n.erase(std::remove(n.begin(), n.end(), ' '), n.end());
        return n;
      };
      auto glued = glue(s1, s1.index_of(name(f1)), s2, s2.index_of("{^}"));
      auto whole = two_point_envelope(words, up_concat(alph, f1, f2));
      CHECK_MESSAGE(find_isometry(glued, whole).has_value(),
                    render_antichain(alph, f1) << " . " << render_antichain(alph, f2));
    }
}
