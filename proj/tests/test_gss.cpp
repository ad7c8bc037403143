#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>
#include <vector>

#include "doctest.h"
#include "twarrow/fixtures.hpp"
#include "twarrow/gss.hpp"
#include "twarrow/sset.hpp"

using namespace twarrow;
using fincat::FinFunctor;
using fincat::MorId;
using fincat::ObjId;
using gss::GroupoidSimplicialSpace;

namespace {

GroupoidSimplicialSpace nerve_space(const std::string& name, int trunc) {
  return gss::discrete_embedding(sset::nerve(fixtures::zoo_category(name), trunc).sset);
}

}  // namespace

TEST_CASE("discrete embeddings") {
  auto nv = sset::nerve(fixtures::zoo_category("arrow"), 3);
  auto w = gss::discrete_embedding(nv.sset);
  CHECK(w.trunc() == 3);
  w.validate();
  for (int n = 0; n <= 3; ++n) {
    CHECK(w.level(n).object_count() == nv.sset.count(n));
    CHECK(w.level(n).morphism_count() == nv.sset.count(n));
    CHECK(w.level(n).is_thin());
  }
  // act agrees with the simplicial set action on cells
  for (int m = 0; m <= 3; ++m)
    for (int n = 0; n <= 3; ++n)
      for (const auto& op : delta::all_maps(m, n)) {
        auto f = w.act(op);
        for (std::uint32_t cell = 0; cell < nv.sset.count(n); ++cell)
          CHECK(f.object_map[cell] == nv.sset.act(op, cell));
      }
  CHECK(w == gss::discrete_embedding(nv.sset));
}

TEST_CASE("classifying diagram of the walking isomorphism") {
  auto w = gss::classifying_diagram(fixtures::walking_iso(), 3);
  w.validate();
  // level 0 is the underlying groupoid, level n is indiscrete on the
  // 2^{n+1} chains (there is a unique iso between any two vertices)
  for (int n = 0; n <= 3; ++n) {
    const std::uint32_t cnt = 1u << (n + 1);
    CHECK(w.level(n).object_count() == cnt);
    CHECK(w.level(n).morphism_count() == cnt * cnt);
    CHECK(w.level(n).is_thin());
  }
  CHECK(fincat::component_ids(w.level(1)) ==
        std::vector<ObjId>(w.level(1).object_count(), 0));
}

TEST_CASE("classifying diagrams of gaunt categories are discrete") {
  for (const auto& name : {"terminal", "arrow", "chain3", "square", "span", "cospan",
                           "discrete2", "parallel", "idem"}) {
    auto c = fixtures::zoo_category(name);
    auto w = gss::classifying_diagram(c, 3);
    w.validate();
    auto nv = sset::nerve(c, 3);
    for (int n = 0; n <= 3; ++n) {
      CHECK(w.level(n).object_count() == nv.sset.count(n));
      CHECK(w.level(n).morphism_count() == nv.sset.count(n));
    }
    CHECK(w == gss::discrete_embedding(nv.sset));
  }
}

TEST_CASE("classifying diagram of the involution group") {
  // non-thin path: each natural isomorphism is determined by its component
  // at the first vertex, so every hom-set has exactly two elements
  auto w = gss::classifying_diagram(fixtures::involution_group(), 3);
  w.validate();
  for (int n = 0; n <= 3; ++n) {
    const std::uint32_t cnt = 1u << n;
    CHECK(w.level(n).object_count() == cnt);
    CHECK(w.level(n).morphism_count() == cnt * cnt * 2);
    CHECK(!w.level(n).is_thin());
  }
}

TEST_CASE("op, product, and truncation") {
  auto w = gss::classifying_diagram(fixtures::walking_iso(), 3);
  auto o = gss::op_space(w);
  o.validate();
  CHECK(gss::op_space(o) == w);
  CHECK(o.face(1, 0) == w.face(1, 1));

  auto t = gss::truncate_space(w, 2);
  CHECK(t.trunc() == 2);
  t.validate();
  CHECK_THROWS_AS(gss::truncate_space(w, 4), TruncationError);
}

TEST_CASE("product spaces project correctly") {
  auto w = gss::classifying_diagram(fixtures::walking_iso(), 3);
  auto p = gss::product_space(w, w);
  p.space.validate();
  for (int n = 0; n <= 3; ++n) {
    CHECK(p.space.level(n).object_count() ==
          w.level(n).object_count() * w.level(n).object_count());
    CHECK(p.space.level(n).morphism_count() ==
          w.level(n).morphism_count() * w.level(n).morphism_count());
  }
  gss::validate_space_map(p.space, w, p.pr1);
  gss::validate_space_map(p.space, w, p.pr2);
}

TEST_CASE("twisted spaces of discrete embeddings match twisted simplicial sets") {
  for (const auto& name : {"arrow", "iso", "span"}) {
    auto nv = sset::nerve(fixtures::zoo_category(name), 5);
    auto w = gss::discrete_embedding(nv.sset);
    auto tw = gss::tw_space(w, 2);
    tw.validate();
    CHECK(tw == gss::discrete_embedding(sset::tw_sset(nv.sset, 2)));
  }
  CHECK_THROWS_AS(gss::tw_space(nerve_space("arrow", 4), 2), TruncationError);
}

TEST_CASE("twisted projection is a map of spaces") {
  auto w = gss::classifying_diagram(fixtures::walking_iso(), 5);
  auto tp = gss::twisted_projection_space(w, 2);
  tp.tw.validate();
  gss::validate_space_map(tp.tw, tp.op_base, tp.to_op_base);
  gss::validate_space_map(tp.tw, tp.base, tp.to_base);
  gss::validate_space_map(tp.tw, tp.target.space, tp.projection);
  // the paired projection followed by the product projections recovers the legs
  for (int n = 0; n <= 2; ++n) {
    CHECK(fincat::compose_functors(tp.target.pr1.level[n], tp.projection.level[n]) ==
          tp.to_op_base.level[n]);
    CHECK(fincat::compose_functors(tp.target.pr2.level[n], tp.projection.level[n]) ==
          tp.to_base.level[n]);
  }
}

TEST_CASE("pseudo-pullbacks") {
  auto j = fincat::FinGroupoid::from_category(fixtures::walking_iso());
  auto pt = fincat::FinGroupoid::from_category(fixtures::terminal_category());

  // two points over the walking isomorphism: one object, trivial automorphism
  FinFunctor at0{{0}, {j.identity(0)}};
  FinFunctor at1{{1}, {j.identity(1)}};
  auto pb = gss::pseudo_pullback(pt, pt, j, at0, at1);
  CHECK(pb.groupoid.object_count() == 1);
  CHECK(pb.groupoid.morphism_count() == 1);
  CHECK(pb.iso.size() == 1);
  CHECK(j.src(pb.iso[0]) == 0);
  CHECK(j.tgt(pb.iso[0]) == 1);

  // pulling the identity back along the identity gives the arrow groupoid;
  // the comparison from j itself is an equivalence
  auto idj = fincat::identity_functor(j);
  auto pb2 = gss::pseudo_pullback(j, j, j, idj, idj);
  CHECK(pb2.groupoid.object_count() == j.morphism_count());
  CHECK(!pb2.groupoid.validate().has_value());
  CHECK(gss::homotopy_pullback_check(j, j, j, j, idj, idj, idj, idj).pass);

  // a discrete two-object groupoid is not the homotopy pullback of points
  auto d2 = fincat::FinGroupoid::from_category(fixtures::discrete_category(2));
  FinFunctor collapse{{0, 0}, {0, 0}};
  FinFunctor idpt = fincat::identity_functor(pt);
  auto bad = gss::homotopy_pullback_check(d2, pt, pt, pt, collapse, collapse, idpt, idpt);
  CHECK(!bad.pass);
  CHECK(!bad.witness.empty());
}

TEST_CASE("groupoid equivalence delegate") {
  auto j = fincat::FinGroupoid::from_category(fixtures::walking_iso());
  auto pt = fincat::FinGroupoid::from_category(fixtures::terminal_category());
  FinFunctor collapse{{0, 0}, {0, 0, 0, 0}};
  CHECK(gss::groupoid_equivalence(j, pt, collapse).ok());
}

TEST_CASE("segal check passes on classifying diagrams and nerves") {
  for (const auto& name : fixtures::thin_zoo_names()) {
    auto w = gss::classifying_diagram(fixtures::zoo_category(name), 4);
    auto r = gss::segal_check(w, 4);
    CHECK_MESSAGE(r.pass, name, ": ", r.witness);
  }
  // the non-thin path
  auto bz2 = gss::classifying_diagram(fixtures::involution_group(), 4);
  auto r = gss::segal_check(bz2, 4);
  CHECK_MESSAGE(r.pass, r.witness);
  // discrete nerves
  for (const auto& name : {"arrow", "iso", "square", "involution"}) {
    auto w = nerve_space(name, 4);
    auto rn = gss::segal_check(w, 4);
    CHECK_MESSAGE(rn.pass, name, ": ", rn.witness);
  }
  CHECK_THROWS_AS(gss::segal_check(nerve_space("arrow", 2), 3), TruncationError);
}

TEST_CASE("segal check fails on the bare spine") {
  // two edges sharing a vertex with no composite: essential surjectivity of
  // the degree-2 comparison must fail
  auto sp = sset::spine(2, 3);
  auto w = gss::discrete_embedding(sp.subset);
  auto r = gss::segal_check(w, 2);
  CHECK(!r.pass);
  CHECK(r.witness.find("degree 2") != std::string::npos);
}

TEST_CASE("homotopy category of classifying diagrams recovers the category") {
  for (const auto& name : {"terminal", "arrow", "chain3", "square", "span", "parallel", "idem"}) {
    auto ho = gss::ho_category(gss::classifying_diagram(fixtures::zoo_category(name), 3));
    CHECK(!ho.category.validate().has_value());
    auto iso = fincat::search_cat_iso(ho.category, fixtures::zoo_category(name));
    CHECK_MESSAGE(iso.has_value(), name);
  }
  // the walking isomorphism: homotopy category of its classifying diagram
  auto hoj = gss::ho_category(gss::classifying_diagram(fixtures::walking_iso(), 3));
  CHECK(fincat::search_cat_iso(hoj.category, fixtures::walking_iso()).has_value());
  // the involution group, through the non-thin path
  auto hoz = gss::ho_category(gss::classifying_diagram(fixtures::involution_group(), 3));
  CHECK(fincat::search_cat_iso(hoz.category, fixtures::involution_group()).has_value());
  // nerves embed discretely with the same homotopy category
  auto hon = gss::ho_category(nerve_space("iso", 3));
  CHECK(fincat::search_cat_iso(hon.category, fixtures::walking_iso()).has_value());

  // representatives are stable: every representative maps back to its class
  for (MorId m = 0; m < hoj.category.morphism_count(); ++m)
    CHECK(hoj.class_of_triple(hoj.rep[m]) == m);
  CHECK_THROWS_AS(gss::ho_category(nerve_space("arrow", 2)), TruncationError);
}

TEST_CASE("homotopy comparison functor is an equivalence") {
  // gaunt base (discrete levels) and a genuinely groupoidal base
  for (const auto& name : {"arrow", "iso"}) {
    auto w = gss::classifying_diagram(fixtures::zoo_category(name), 7);
    auto cmp = gss::ho_comparison_functor(w);
    auto rep = fincat::is_equivalence(cmp.ho_tw.category, cmp.tw_ho.category, cmp.functor);
    CHECK_MESSAGE(rep.ok(), name, ": ", rep.witness);
    // independent of the comparison functor, the two categories are
    // equivalent by skeleton search
    CHECK(fincat::equivalent_categories(cmp.ho_tw.category, cmp.tw_ho.category));
  }
  // discrete nerve: Ho(Tw N(C)) is the twisted arrow category of C
  auto cmp = gss::ho_comparison_functor(nerve_space("idem", 7));
  CHECK(fincat::is_equivalence(cmp.ho_tw.category, cmp.tw_ho.category, cmp.functor).ok());
  CHECK(
      fincat::search_cat_iso(cmp.ho_tw.category,
                             fincat::tw_cat(fixtures::idempotent_monoid()).category)
          .has_value());
}

TEST_CASE("homotopy equivalence subgroupoid and completeness") {
  // classifying diagrams are complete
  for (const auto& name : {"arrow", "square", "iso"}) {
    auto r = gss::completeness_check(gss::classifying_diagram(fixtures::zoo_category(name), 3));
    CHECK_MESSAGE(r.complete, name, ": ", r.equivalence.witness);
  }
  auto rz = gss::completeness_check(gss::classifying_diagram(fixtures::involution_group(), 3));
  CHECK_MESSAGE(rz.complete, rz.equivalence.witness);

  // gaunt nerves are complete, non-gaunt nerves are not
  CHECK(gss::completeness_check(nerve_space("idem", 3)).complete);
  CHECK(gss::completeness_check(nerve_space("square", 3)).complete);
  auto rj = gss::completeness_check(nerve_space("iso", 3));
  CHECK(!rj.complete);
  CHECK(!rj.equivalence.essentially_surjective);
  CHECK(!gss::completeness_check(nerve_space("involution", 3)).complete);

  // the homotopy equivalences of the walking-iso nerve are all four edges
  auto he = gss::hoequiv_subgroupoid(nerve_space("iso", 3));
  CHECK(he.objects.size() == 4);
  // of the idempotent-monoid nerve, just the identity edge
  auto hm = gss::hoequiv_subgroupoid(nerve_space("idem", 3));
  CHECK(hm.objects == std::vector<ObjId>{0});
}

TEST_CASE("twisted homotopy equivalences are detected by the outer edges") {
  // complete base
  auto r1 = gss::tw_hoequiv_pullback_check(gss::classifying_diagram(fixtures::walking_iso(), 7));
  CHECK_MESSAGE(r1.pass, r1.witness);
  CHECK(r1.direct_count == 16);
  CHECK(r1.preimage_count == 16);
  // incomplete base: the law still holds edge for edge
  auto r2 = gss::tw_hoequiv_pullback_check(nerve_space("iso", 7));
  CHECK_MESSAGE(r2.pass, r2.witness);
  CHECK(r2.direct_count == 16);
  // gaunt base with a non-invertible idempotent
  auto r3 = gss::tw_hoequiv_pullback_check(nerve_space("idem", 7));
  CHECK_MESSAGE(r3.pass, r3.witness);
  CHECK(r3.direct_count == 2);
  CHECK(r3.preimage_count == 2);
}

TEST_CASE("twisted projections are left fibrations") {
  // thin classifying diagram
  auto w = gss::classifying_diagram(fixtures::walking_iso(), 5);
  auto tp = gss::twisted_projection_space(w, 2);
  auto r = gss::left_fibration_check(tp.tw, tp.target.space, tp.projection, 2);
  CHECK_MESSAGE(r.pass, r.witness);
  CHECK(r.shortcut_agrees);

  // discrete nerve
  auto nw = nerve_space("arrow", 5);
  auto ntp = gss::twisted_projection_space(nw, 2);
  auto nr = gss::left_fibration_check(ntp.tw, ntp.target.space, ntp.projection, 2);
  CHECK_MESSAGE(nr.pass, nr.witness);
  CHECK(nr.shortcut_agrees);

  // non-thin classifying diagram
  auto zw = gss::classifying_diagram(fixtures::involution_group(), 5);
  auto ztp = gss::twisted_projection_space(zw, 2);
  auto zr = gss::left_fibration_check(ztp.tw, ztp.target.space, ztp.projection, 2);
  CHECK_MESSAGE(zr.pass, zr.witness);
  CHECK(zr.shortcut_agrees);
}

TEST_CASE("product projections are not left fibrations") {
  auto w = nerve_space("arrow", 2);
  auto p = gss::product_space(w, w);
  auto r = gss::left_fibration_check(p.space, w, p.pr1, 1);
  CHECK(!r.pass);
  CHECK(r.witness.find("degree 1") != std::string::npos);
  CHECK(r.shortcut_agrees);
}

TEST_CASE("fibers of the twisted projection count under-chains") {
  for (const auto& name : {"arrow", "chain3", "iso"}) {
    auto c = fixtures::zoo_category(name);
    auto w = gss::discrete_embedding(sset::nerve(c, 9).sset);
    auto tp = gss::twisted_projection_space(w, 4);
    for (ObjId x = 0; x < c.object_count(); ++x) {
      auto fib = gss::fiber_at(tp.tw, tp.op_base, tp.to_op_base, x);
      fib.validate();
      auto un = fincat::under_category(c, x);
      auto unv = sset::nerve(un.category, 4);
      for (int n = 0; n <= 4; ++n)
        CHECK_MESSAGE(fib.level(n).object_count() == unv.sset.count(n), name, " x=", x,
                      " n=", n);
    }
  }
}
