#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <optional>
#include <vector>

#include "doctest.h"
#include "twarrow/fincat.hpp"
#include "twarrow/fixtures.hpp"

using namespace twarrow;
using fincat::FinCategory;
using fincat::FinFunctor;
using fincat::MorId;
using fincat::ObjId;

namespace {

// Every functor C -> D, by exhaustive object assignment plus exhaustive
// morphism images filtered through functoriality. Tiny inputs only.
std::vector<FinFunctor> all_functors(const FinCategory& c, const FinCategory& d) {
  std::vector<FinFunctor> out;
  const std::uint32_t co = c.object_count();
  std::vector<ObjId> omap(co, 0);
  auto next_obj = [&]() {
    for (std::uint32_t i = 0; i < co; ++i) {
      if (++omap[i] < d.object_count()) return true;
      omap[i] = 0;
    }
    return false;
  };
  do {
    std::vector<MorId> mmap(c.morphism_count());
    std::vector<std::vector<MorId>> choices(c.morphism_count());
    bool feasible = true;
    for (MorId m = 0; m < c.morphism_count() && feasible; ++m) {
      auto h = d.hom(omap[c.src(m)], omap[c.tgt(m)]);
      choices[m].assign(h.begin(), h.end());
      feasible = !choices[m].empty();
    }
    if (!feasible) continue;
    std::vector<std::size_t> pick(c.morphism_count(), 0);
    while (true) {
      for (MorId m = 0; m < c.morphism_count(); ++m) mmap[m] = choices[m][pick[m]];
      bool ok = true;
      for (ObjId x = 0; x < co && ok; ++x) ok = mmap[c.identity(x)] == d.identity(omap[x]);
      for (MorId g = 0; g < c.morphism_count() && ok; ++g)
        for (MorId f = 0; f < c.morphism_count() && ok; ++f)
          if (c.is_composable(g, f)) ok = mmap[c.compose(g, f)] == d.compose(mmap[g], mmap[f]);
      if (ok) out.push_back(FinFunctor{omap, mmap});
      std::size_t i = 0;
      for (; i < pick.size(); ++i) {
        if (++pick[i] < choices[i].size()) break;
        pick[i] = 0;
      }
      if (i == pick.size()) break;
    }
  } while (next_obj());
  return out;
}

bool naturally_isomorphic(const FinCategory& c, const FinCategory& d, const FinFunctor& f,
                          const FinFunctor& g) {
  std::vector<std::vector<MorId>> comps(c.object_count());
  for (ObjId x = 0; x < c.object_count(); ++x) {
    for (MorId m : d.hom(f.object_map[x], g.object_map[x]))
      if (d.is_invertible(m)) comps[x].push_back(m);
    if (comps[x].empty()) return false;
  }
  std::vector<std::size_t> pick(c.object_count(), 0);
  while (true) {
    bool ok = true;
    for (MorId m = 0; m < c.morphism_count() && ok; ++m) {
      MorId lhs = d.compose(comps[c.tgt(m)][pick[c.tgt(m)]], f.mor_map[m]);
      MorId rhs = d.compose(g.mor_map[m], comps[c.src(m)][pick[c.src(m)]]);
      ok = lhs == rhs;
    }
    if (ok) return true;
    std::size_t i = 0;
    for (; i < pick.size(); ++i) {
      if (++pick[i] < comps[i].size()) break;
      pick[i] = 0;
    }
    if (i == pick.size()) return false;
  }
}

// Oracle: F is an equivalence iff some G inverts it up to natural isomorphism.
bool oracle_equivalence(const FinCategory& c, const FinCategory& d, const FinFunctor& f) {
  for (const auto& g : all_functors(d, c)) {
    if (naturally_isomorphic(c, c, compose_functors(g, f), identity_functor(c)) &&
        naturally_isomorphic(d, d, compose_functors(f, g), identity_functor(d)))
      return true;
  }
  return false;
}

}  // namespace

TEST_CASE("zoo fixtures validate") {
  for (const auto& name : fixtures::zoo_names()) {
    auto c = fixtures::zoo_category(name);
    INFO("fixture ", name);
    CHECK(!c.validate().has_value());
  }
  CHECK(fixtures::chain_category(1).morphism_count() == 3);
  CHECK(fixtures::square_category().morphism_count() == 9);
  CHECK(fixtures::walking_iso().morphism_count() == 4);
  CHECK(fixtures::span_category().morphism_count() == 5);
}

TEST_CASE("hom sets are sorted ranges") {
  auto span = fixtures::span_category();
  auto h = span.hom(0, 1);
  REQUIRE(h.size() == 1);
  CHECK(span.src(h[0]) == 0);
  CHECK(span.tgt(h[0]) == 1);
  CHECK(span.hom(1, 2).empty());
  auto pp = fixtures::parallel_pair();
  auto h2 = pp.hom(0, 1);
  REQUIRE(h2.size() == 2);
  CHECK(h2[0] < h2[1]);
}

TEST_CASE("inverses") {
  auto j = fixtures::walking_iso();
  for (MorId m = 0; m < j.morphism_count(); ++m) CHECK(j.is_invertible(m));
  auto m2 = fixtures::idempotent_monoid();
  CHECK(m2.is_invertible(0));
  CHECK(!m2.is_invertible(1));
  auto z2 = fixtures::involution_group();
  CHECK(z2.try_inverse(1) == std::optional<MorId>(1));
  CHECK(!fincat::FinGroupoid::from_category(fixtures::involution_group()).validate_groupoid());
  CHECK_THROWS_AS(fincat::FinGroupoid::from_category(fixtures::chain_category(1)), ValidationError);
}

TEST_CASE("validation catches a broken composition table") {
  // one object, morphisms {id, a, b}; table chosen to violate associativity:
  // (a.a).a = b.a = a but a.(a.a) = a.b = id
  auto bad = FinCategory::from_triples(1, {0, 0, 0}, {0, 0, 0}, {0},
                                       {{1, 1, 2}, {1, 2, 0}, {2, 1, 1}, {2, 2, 2}});
  auto err = bad.validate();
  REQUIRE(err.has_value());
  CHECK(err->find("assoc") != std::string::npos);
}

TEST_CASE("composable chains enumerate nerves") {
  auto arrow = fixtures::chain_category(1);
  for (int k = 0; k <= 5; ++k)
    CHECK(fincat::composable_chains(arrow, k).size() == static_cast<std::size_t>(k + 2));
  auto j = fixtures::walking_iso();
  for (int k = 0; k <= 5; ++k)
    CHECK(fincat::composable_chains(j, k).size() == static_cast<std::size_t>(1) << (k + 1));
  // lexicographic order by morphism ids
  auto chains = fincat::composable_chains(arrow, 2);
  for (std::size_t i = 0; i + 1 < chains.size(); ++i) CHECK(chains[i] < chains[i + 1]);
  // length 0: one empty chain per object
  CHECK(fincat::composable_chains(fixtures::span_category(), 0).size() == 3);
}

TEST_CASE("equivalence check against the inverse-functor oracle") {
  std::vector<FinCategory> cats = {fixtures::terminal_category(), fixtures::walking_iso(),
                                   fixtures::discrete_category(2), fixtures::chain_category(1)};
  for (const auto& c : cats)
    for (const auto& d : cats)
      for (const auto& f : all_functors(c, d)) {
        REQUIRE(!validate_functor(c, d, f).has_value());
        CHECK(fincat::is_equivalence(c, d, f).ok() == oracle_equivalence(c, d, f));
      }
}

TEST_CASE("equivalence failure modes carry flags") {
  // discrete2 -> terminal: surjective on objects, faithful, but not full
  auto d2 = fixtures::discrete_category(2);
  auto pt = fixtures::terminal_category();
  auto fs = all_functors(d2, pt);
  REQUIRE(fs.size() == 1);
  auto rep = fincat::is_equivalence(d2, pt, fs[0]);
  CHECK(rep.essentially_surjective);
  CHECK(rep.faithful);
  CHECK(!rep.full);
  CHECK(!rep.witness.empty());
  // terminal -> walking iso: an equivalence that is not surjective on objects
  auto into_j = FinFunctor{{0}, {fixtures::walking_iso().identity(0)}};
  CHECK(fincat::is_equivalence(pt, fixtures::walking_iso(), into_j).ok());
}

TEST_CASE("opposite and product") {
  for (const auto& name : fixtures::zoo_names()) {
    auto c = fixtures::zoo_category(name);
    auto op = fincat::opposite(c);
    CHECK(!op.validate().has_value());
    CHECK(op.object_count() == c.object_count());
    CHECK(op.morphism_count() == c.morphism_count());
    for (MorId m = 0; m < c.morphism_count(); ++m) {
      CHECK(op.src(m) == c.tgt(m));
      CHECK(op.tgt(m) == c.src(m));
    }
    CHECK(fincat::opposite(op) == c);
    CHECK(fincat::product(fixtures::terminal_category(), c) == c);
  }
  auto jj = fincat::product(fixtures::walking_iso(), fixtures::walking_iso());
  CHECK(jj.object_count() == 4);
  CHECK(jj.morphism_count() == 16);
  CHECK(!jj.validate().has_value());
}

TEST_CASE("twisted arrow category of the walking arrow") {
  auto arrow = fixtures::chain_category(1);
  auto tw = fincat::tw_cat(arrow);
  CHECK(tw.category.object_count() == 3);
  CHECK(tw.category.morphism_count() == 5);
  CHECK(!tw.category.validate().has_value());
  CHECK(tw.category.is_thin());
  // hand isomorphism onto the cospan fixture: objects id_0, arrow, id_1 of the
  // source land on 0, 2, 1
  auto cospan = fixtures::cospan_category();
  FinFunctor iso{{0, 2, 1}, {0, 1, 4, 3, 2}};
  CHECK(!validate_functor(tw.category, cospan, iso).has_value());
  CHECK(fincat::is_equivalence(tw.category, cospan, iso).ok());
  // projection to opposite x original is a functor
  CHECK(!validate_functor(tw.category, tw.projection_target, tw.projection).has_value());
}

TEST_CASE("twisted arrow category of the walking isomorphism") {
  auto tw = fincat::tw_cat(fixtures::walking_iso());
  CHECK(tw.category.object_count() == 4);
  CHECK(tw.category.morphism_count() == 16);
  CHECK(!tw.category.validate().has_value());
  CHECK(!validate_functor(tw.category, tw.projection_target, tw.projection).has_value());
}

TEST_CASE("twisted arrow projections cover all fixtures") {
  for (const auto& name : fixtures::zoo_names()) {
    auto c = fixtures::zoo_category(name);
    auto tw = fincat::tw_cat(c);
    INFO("fixture ", name);
    CHECK(tw.category.object_count() == c.morphism_count());
    CHECK(!tw.category.validate().has_value());
    CHECK(!validate_functor(tw.category, tw.projection_target, tw.projection).has_value());
    for (ObjId g = 0; g < tw.category.object_count(); ++g) {
      // projection sends the object g to (src g, tgt g)
      CHECK(tw.projection.object_map[g] ==
            c.src(static_cast<MorId>(g)) * c.object_count() + c.tgt(static_cast<MorId>(g)));
    }
  }
}

TEST_CASE("under category of the walking arrow") {
  auto arrow = fixtures::chain_category(1);
  auto under = fincat::under_category(arrow, 0);
  CHECK(under.category.object_count() == 2);
  CHECK(under.category.morphism_count() == 3);
  CHECK(!under.category.validate().has_value());
  REQUIRE(under.object_to_mor.size() == 2);
  CHECK(arrow.src(under.object_to_mor[0]) == 0);
  CHECK(arrow.src(under.object_to_mor[1]) == 0);
  // under the walking iso at 0: objects are both arrows out of 0, all
  // connected, equivalent to the terminal category
  auto ju = fincat::under_category(fixtures::walking_iso(), 0);
  CHECK(ju.category.object_count() == 2);
  CHECK(ju.category.morphism_count() == 4);
}

TEST_CASE("congruence quotients") {
  // collapsing the parallel pair yields the walking arrow
  auto pp = fixtures::parallel_pair();
  auto q = fincat::quotient_by_congruence(pp, {{2, 3}});
  CHECK(q.category.object_count() == 2);
  CHECK(q.category.morphism_count() == 3);
  CHECK(!validate_functor(pp, q.category, q.projection).has_value());

  // 0 => 1 -> 2 with u.f != u.g: identifying f with g alone is not a
  // congruence; adding the composite pair makes it one
  //   morphisms: 0,1,2 identities; 3 = f, 4 = g, 5 = u, 6 = u.f, 7 = u.g
  auto c = FinCategory::from_triples(
      3, {0, 1, 2, 0, 0, 1, 0, 0}, {0, 1, 2, 1, 1, 2, 2, 2}, {0, 1, 2},
      {{5, 3, 6}, {5, 4, 7}});
  CHECK(!c.validate().has_value());
  CHECK_THROWS_AS(fincat::quotient_by_congruence(c, {{3, 4}}), ValidationError);
  auto q2 = fincat::quotient_by_congruence(c, {{3, 4}, {6, 7}});
  CHECK(q2.category.object_count() == 3);
  CHECK(q2.category.morphism_count() == 6);
  CHECK(!q2.category.validate().has_value());
}

TEST_CASE("components, full subcategories, and skeletons") {
  using fincat::component_ids;
  using fincat::full_subcategory;
  using fincat::skeleton;

  // span 0 <- ... the span (0 -> 1, 0 -> 2) is connected as a graph
  CHECK(component_ids(fixtures::zoo_category("span")) == std::vector<fincat::ObjId>{0, 0, 0});
  CHECK(component_ids(fixtures::zoo_category("discrete2")) == std::vector<fincat::ObjId>{0, 1});

  // full subcategory of the square on the two diagonal corners: two objects,
  // their identities, and the long diagonal
  auto sq = fixtures::zoo_category("square");
  auto sub = full_subcategory(sq, {0, 3});
  CHECK(sub.category.object_count() == 2);
  CHECK(sub.category.morphism_count() == 3);
  CHECK(!sub.category.validate().has_value());
  CHECK(!validate_functor(sub.category, sq, sub.inclusion).has_value());
  CHECK(fincat::is_equivalence(sub.category, sub.category,
                               fincat::identity_functor(sub.category))
            .ok());
  CHECK_THROWS_AS(full_subcategory(sq, {3, 0}), ValidationError);
  CHECK_THROWS_AS(full_subcategory(sq, {0, 9}), DimensionError);

  // the walking isomorphism collapses to a point; its skeleton inclusion is
  // an equivalence
  auto j = fixtures::walking_iso();
  auto sk = skeleton(j);
  CHECK(sk.category.object_count() == 1);
  CHECK(sk.category.morphism_count() == 1);
  CHECK(fincat::is_equivalence(sk.category, j, sk.inclusion).ok());

  // gaunt categories are their own skeletons
  auto ch = fixtures::zoo_category("chain2");
  CHECK(skeleton(ch).category == ch);
}

TEST_CASE("category isomorphism search") {
  using fincat::search_cat_iso;

  // twisted arrows of the walking arrow form a cospan
  auto tw = fincat::tw_cat(fixtures::chain_category(1));
  auto found = search_cat_iso(tw.category, fixtures::zoo_category("cospan"));
  REQUIRE(found.has_value());
  CHECK(!validate_functor(tw.category, fixtures::zoo_category("cospan"), *found).has_value());

  // span and cospan have matching counts but are not isomorphic
  CHECK(!search_cat_iso(fixtures::zoo_category("span"), fixtures::zoo_category("cospan"))
             .has_value());

  // every zoo fixture is isomorphic to itself
  for (const auto& name : fixtures::zoo_names())
    CHECK(search_cat_iso(fixtures::zoo_category(name), fixtures::zoo_category(name)).has_value());

  // the two one-object two-morphism monoids are not isomorphic
  CHECK(!search_cat_iso(fixtures::idempotent_monoid(), fixtures::involution_group()).has_value());
}

TEST_CASE("equivalence via skeleton comparison") {
  using fincat::equivalent_categories;
  CHECK(equivalent_categories(fixtures::walking_iso(), fixtures::zoo_category("terminal")));
  CHECK(equivalent_categories(
      fincat::product(fixtures::walking_iso(), fixtures::walking_iso()),
      fixtures::zoo_category("terminal")));
  CHECK(!equivalent_categories(fixtures::zoo_category("chain2"), fixtures::zoo_category("chain3")));
  CHECK(!equivalent_categories(fixtures::idempotent_monoid(), fixtures::zoo_category("terminal")));
  CHECK(!equivalent_categories(fixtures::zoo_category("span"), fixtures::zoo_category("cospan")));
  CHECK(equivalent_categories(fixtures::zoo_category("square"), fixtures::zoo_category("square")));
}
