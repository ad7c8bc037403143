#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <vector>

#include "doctest.h"
#include "twarrow/bisset.hpp"
#include "twarrow/fixtures.hpp"
#include "twarrow/sset.hpp"

using namespace twarrow;
using bisset::Cell;
using bisset::CellComplexPresentation;
using bisset::FinBiSimplicialSet;

namespace {

sset::FinSimplicialSet zoo_nerve(const std::string& name, int trunc) {
  return sset::nerve(fixtures::zoo_category(name), trunc).sset;
}

}  // namespace

TEST_CASE("representables have product levels and satisfy the identities") {
  const auto pt = bisset::representable(0, 0, 2, 2);
  for (int n = 0; n <= 2; ++n)
    for (int l = 0; l <= 2; ++l) CHECK(pt.count(n, l) == 1);
  CHECK(pt.validate() == std::nullopt);

  const auto r11 = bisset::representable(1, 1, 2, 2);
  CHECK(r11.count(0, 0) == 4);
  CHECK(r11.count(1, 1) == 9);
  CHECK(r11.count(2, 2) == 16);
  CHECK(r11.validate() == std::nullopt);

  const auto r21 = bisset::representable(2, 1, 3, 2);
  for (int n = 0; n <= 3; ++n)
    for (int l = 0; l <= 2; ++l)
      CHECK(r21.count(n, l) ==
            delta::count_maps(n, 2) * delta::count_maps(l, 1));
  CHECK(r21.validate() == std::nullopt);
}

TEST_CASE("representable actions are composition") {
  const auto r = bisset::representable(2, 1, 3, 2);
  for (int n = 0; n <= 3; ++n)
    for (int l = 0; l <= 2; ++l) {
      const auto cn = delta::all_maps(n, 2);
      const auto cl = delta::all_maps(l, 1);
      for (int m = 0; m <= 3; ++m)
        for (int j = 0; j <= 2; ++j)
          for (const auto& on : delta::all_maps(m, n))
            for (const auto& ol : delta::all_maps(j, l))
              for (std::size_t a = 0; a < cn.size(); ++a)
                for (std::size_t b = 0; b < cl.size(); ++b) {
                  const Cell c = static_cast<Cell>(a * cl.size() + b);
                  const Cell want = static_cast<Cell>(
                      delta::lex_rank(delta::compose(cn[a], on)) * delta::count_maps(j, 1) +
                      delta::lex_rank(delta::compose(cl[b], ol)));
                  CHECK(r.act(on, ol, c) == want);
                }
    }
}

TEST_CASE("degenerate representables recover the two embeddings") {
  CHECK(bisset::representable(2, 0, 3, 2) ==
        bisset::discrete_embedding(sset::standard_simplex(2, 3), 2));
  CHECK(bisset::representable(0, 2, 3, 2) ==
        bisset::constant_space(sset::standard_simplex(2, 2), 3));
}

TEST_CASE("embeddings of nerves") {
  for (const auto* name : {"arrow", "span", "iso"}) {
    const auto s = zoo_nerve(name, 3);
    const auto d = bisset::discrete_embedding(s, 2);
    CHECK(d.trunc_n() == 3);
    CHECK(d.trunc_l() == 2);
    for (int n = 0; n <= 3; ++n)
      for (int l = 0; l <= 2; ++l) CHECK(d.count(n, l) == s.count(n));
    CHECK(d.validate() == std::nullopt);
    for (int n = 0; n <= 2; ++n)
      for (int m = 0; m <= 2; ++m)
        for (const auto& on : delta::all_maps(m, n))
          for (Cell c = 0; c < s.count(n); ++c) {
            CHECK(d.act(on, delta::identity_map(1), c) == s.act(on, c));
            CHECK(d.act(on, delta::SimplexMap(1, {0, 0}), c) == s.act(on, c));
          }

    const auto k = bisset::constant_space(s, 2);
    for (int n = 0; n <= 2; ++n)
      for (int l = 0; l <= 3; ++l) CHECK(k.count(n, l) == s.count(l));
    CHECK(k.validate() == std::nullopt);
    for (int l = 0; l <= 2; ++l)
      for (int j = 0; j <= 2; ++j)
        for (const auto& ol : delta::all_maps(j, l))
          for (Cell c = 0; c < s.count(l); ++c)
            CHECK(k.act(delta::SimplexMap(2, {0, 0, 1}), ol, c) == s.act(ol, c));
  }
}

TEST_CASE("twisting a bisimplicial set reindexes through the join-duplication") {
  const auto s = zoo_nerve("iso", 5);
  const auto w = bisset::discrete_embedding(s, 2);
  const auto tw = bisset::tw_bisset(w, 2);
  CHECK(tw.trunc_n() == 2);
  CHECK(tw.trunc_l() == 2);
  for (int n = 0; n <= 2; ++n)
    for (int l = 0; l <= 2; ++l) CHECK(tw.count(n, l) == s.count(2 * n + 1));
  CHECK(tw.validate() == std::nullopt);
  for (int n = 0; n <= 2; ++n)
    for (int m = 0; m <= 2; ++m)
      for (const auto& on : delta::all_maps(m, n))
        for (int l = 0; l <= 2; ++l)
          for (int j = 0; j <= 2; ++j)
            for (const auto& ol : delta::all_maps(j, l))
              for (Cell c = 0; c < tw.count(n, l); ++c)
                CHECK(tw.act(on, ol, c) == s.act(delta::q_map(on), c));

  CHECK_THROWS_AS(bisset::tw_bisset(w, 3), TruncationError);
  CHECK(bisset::tw_bisset(bisset::empty_bisset(5, 2), 2) == bisset::empty_bisset(2, 2));
}

TEST_CASE("twisting commutes with the discrete embedding") {
  for (const auto* name : {"arrow", "iso", "span", "parallel", "idem", "chain2", "square",
                           "cospan", "terminal", "discrete2"}) {
    const auto s = zoo_nerve(name, 5);
    CHECK(bisset::tw_bisset(bisset::discrete_embedding(s, 2), 2) ==
          bisset::discrete_embedding(sset::tw_sset(s, 2), 2));
  }
}

TEST_CASE("evaluating the twisted representable presentation gives the representable") {
  for (int n = 0; n <= 2; ++n)
    for (int l = 0; l <= 1; ++l) {
      const int tn = std::min(2 * n + 1, 4);
      const int tl = std::max(l, 1);
      const auto p = bisset::tw_presentation(bisset::representable_presentation(n, l));
      CHECK(p.generators.size() == 1);
      CHECK((p.generators[0] == bisset::GeneratorShape{2 * n + 1, l}));
      const auto ev = bisset::evaluate(p, tn, tl);
      CHECK(ev.bisset == bisset::representable(2 * n + 1, l, tn, tl));
      for (int k = 0; k <= tn; ++k)
        for (int j = 0; j <= tl; ++j)
          for (Cell c = 0; c < ev.bisset.count(k, j); ++c)
            CHECK(ev.to_ambient[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)][c] ==
                  c);
    }
}

TEST_CASE("boundary presentations evaluate to the simplex boundaries") {
  for (int n = 1; n <= 4; ++n) {
    const int tn = n + 1;
    const auto ev = bisset::evaluate(bisset::boundary_presentation(n), tn, 1);
    CHECK(ev.bisset.validate() == std::nullopt);
    const auto b = sset::boundary(n, tn);
    for (int k = 0; k <= tn; ++k) {
      CHECK(ev.bisset.count(k, 0) == b.subset.count(k));
      CHECK(ev.bisset.count(k, 1) == b.subset.count(k));
      auto img = ev.to_ambient[static_cast<std::size_t>(k)][0];
      std::sort(img.begin(), img.end());
      auto want = b.inclusion.level[static_cast<std::size_t>(k)];
      std::sort(want.begin(), want.end());
      CHECK(img == want);
    }
  }
  const auto empty = bisset::evaluate(bisset::boundary_presentation(0), 2, 1);
  for (int k = 0; k <= 2; ++k)
    for (int j = 0; j <= 1; ++j) CHECK(empty.bisset.count(k, j) == 0);
}

TEST_CASE("spine presentations evaluate to the simplex spines") {
  for (int n = 1; n <= 4; ++n) {
    const auto ev = bisset::evaluate(bisset::spine_presentation(n), n, 1);
    CHECK(ev.bisset.validate() == std::nullopt);
    const auto sp = sset::spine(n, n);
    for (int k = 0; k <= n; ++k) {
      CHECK(ev.bisset.count(k, 0) == sp.subset.count(k));
      auto img = ev.to_ambient[static_cast<std::size_t>(k)][0];
      std::sort(img.begin(), img.end());
      auto want = sp.inclusion.level[static_cast<std::size_t>(k)];
      std::sort(want.begin(), want.end());
      CHECK(img == want);
    }
  }
}

TEST_CASE("the twisted boundary covers the expected vertices") {
  const auto p0 = bisset::twisted_boundary_presentation(0);
  CHECK(p0.generators.empty());
  CHECK((p0.ambient == bisset::GeneratorShape{1, 0}));

  const auto p1 = bisset::twisted_boundary_presentation(1);
  REQUIRE(p1.generators.size() == 2);
  CHECK((p1.generators[0] == bisset::GeneratorShape{1, 0}));
  CHECK(p1.relations.empty());
  CHECK((p1.ambient == bisset::GeneratorShape{3, 0}));
  CHECK(p1.ambient_maps[0].op_n == delta::SimplexMap(3, {0, 3}));
  CHECK(p1.ambient_maps[1].op_n == delta::SimplexMap(3, {1, 2}));

  const auto lvl = bisset::evaluate_level(p1, 0, 0);
  CHECK(lvl.class_count == 4);
  const std::set<Cell> verts(lvl.ambient_image.begin(), lvl.ambient_image.end());
  const std::set<Cell> want{0, 1, 2, 3};
  CHECK(verts == want);
}

TEST_CASE("twisted boundary classes match a direct image enumeration") {
  // independent oracle: enumerate the union of the face images inside the
  // ambient by brute force and compare with the union-find class count
  const auto p = bisset::twisted_boundary_presentation(2);
  for (int k = 0; k <= 5; ++k) {
    std::set<std::uint64_t> image;
    for (int i = 0; i <= 2; ++i) {
      const auto amb = delta::q_map(delta::face(2, i));
      for (const auto& phi : delta::all_maps(k, 3))
        image.insert(delta::lex_rank(delta::compose(amb, phi)));
    }
    const auto lvl = bisset::evaluate_level(p, k, 0);
    CHECK(lvl.class_count == image.size());
    std::set<std::uint64_t> got(lvl.ambient_image.begin(), lvl.ambient_image.end());
    CHECK(got == image);
  }
  const auto ev = bisset::evaluate(p, 5, 1);
  CHECK(ev.bisset.validate() == std::nullopt);
}

TEST_CASE("twisted boundaries embed levelwise") {
  for (int n = 0; n <= 3; ++n) {
    const auto r = bisset::levelwise_injectivity(bisset::twisted_boundary_presentation(n), 7);
    CHECK(r.injective);
    CHECK(r.witness.empty());
  }
  const auto rep = bisset::levelwise_injectivity(bisset::representable_presentation(2, 1), 3);
  CHECK(rep.injective);
}

TEST_CASE("the fold complex is not an embedding") {
  CellComplexPresentation fold;
  fold.generators = {{1, 0}, {1, 0}};
  fold.ambient = bisset::GeneratorShape{1, 0};
  fold.ambient_maps = {{delta::identity_map(1), delta::identity_map(0)},
                       {delta::identity_map(1), delta::identity_map(0)}};
  const auto r = bisset::levelwise_injectivity(fold, 2);
  CHECK_FALSE(r.injective);
  CHECK(r.witness.find("level (0,0)") != std::string::npos);
}

TEST_CASE("inconsistent gluing data is rejected") {
  // two vertices sent to different ambient vertices but identified
  CellComplexPresentation bad;
  bad.generators = {{0, 0}, {0, 0}};
  bad.ambient = bisset::GeneratorShape{1, 0};
  bad.ambient_maps = {{delta::SimplexMap(1, {0}), delta::identity_map(0)},
                      {delta::SimplexMap(1, {1}), delta::identity_map(0)}};
  bad.relations.push_back({bisset::GeneratorShape{0, 0},
                           bisset::Attachment{0, delta::identity_map(0), delta::identity_map(0)},
                           bisset::Attachment{1, delta::identity_map(0), delta::identity_map(0)}});
  CHECK_THROWS_AS(bisset::evaluate_level(bad, 0, 0), ValidationError);
}

TEST_CASE("corner complexes glue the blocks onto the twisted boundary") {
  const auto c0 = bisset::corner_presentation(0);
  REQUIRE(c0.generators.size() == 2);
  CHECK(c0.relations.empty());
  const auto lvl0 = bisset::evaluate_level(c0, 0, 0);
  CHECK(lvl0.class_count == 2);
  const std::set<Cell> verts(lvl0.ambient_image.begin(), lvl0.ambient_image.end());
  const std::set<Cell> want{0, 1};
  CHECK(verts == want);

  const auto c1 = bisset::corner_presentation(1);
  REQUIRE(c1.generators.size() == 4);  // two boundary generators, two blocks
  CHECK(c1.relations.size() == 4);
  CHECK(bisset::evaluate_level(c1, 0, 0).class_count == 4);

  const auto c2 = bisset::corner_presentation(2);
  REQUIRE(c2.generators.size() == 5);
  // the factorization search must route block faces to the predicted
  // boundary generators: face i of the left block to generator k - i, of the
  // right block to generator i
  std::vector<std::size_t> left_targets, right_targets;
  for (const auto& r : c2.relations) {
    if (r.left.gen == 3) left_targets.push_back(r.right.gen);
    if (r.left.gen == 4) right_targets.push_back(r.right.gen);
  }
  const std::vector<std::size_t> want_left{2, 1, 0}, want_right{0, 1, 2};
  CHECK(left_targets == want_left);
  CHECK(right_targets == want_right);

  const auto ev = bisset::evaluate(c2, 5, 1);
  CHECK(ev.bisset.validate() == std::nullopt);
  for (int k = 0; k <= 2; ++k) {
    const auto r = bisset::levelwise_injectivity(bisset::corner_presentation(k), 5);
    CHECK(r.injective);
  }
}

TEST_CASE("mapping out of a representable is evaluation") {
  const auto s = zoo_nerve("span", 3);
  const auto w = bisset::constant_space(s, 2);
  CHECK(bisset::mapping_sset(bisset::representable_presentation(2, 0), w, 3) == s);
}

TEST_CASE("mapping out of boundaries counts tuples with matching ends") {
  const auto pt = bisset::mapping_sset(bisset::boundary_presentation(0),
                                       bisset::discrete_embedding(zoo_nerve("arrow", 3), 2), 2);
  for (int l = 0; l <= 2; ++l) CHECK(pt.count(l) == 1);
  CHECK(pt.validate() == std::nullopt);

  for (const auto* name : {"arrow", "parallel", "iso"}) {
    const auto w = bisset::discrete_embedding(zoo_nerve(name, 3), 2);
    const auto m1 = bisset::mapping_sset(bisset::boundary_presentation(1), w, 2);
    for (int l = 0; l <= 2; ++l) CHECK(m1.count(l) == w.count(0, l) * w.count(0, l));
  }

  // boundaries of triangles: endpoints must match but nothing forces the
  // long edge to be the composite
  const auto arrow = bisset::discrete_embedding(zoo_nerve("arrow", 3), 1);
  CHECK(bisset::mapping_sset(bisset::boundary_presentation(2), arrow, 1).count(0) == 4);
  const auto parallel = bisset::discrete_embedding(zoo_nerve("parallel", 3), 1);
  CHECK(bisset::mapping_sset(bisset::boundary_presentation(2), parallel, 1).count(0) == 10);
}

TEST_CASE("mapping out of spines counts composable chains") {
  for (const auto* name : {"arrow", "parallel", "square", "idem"}) {
    const auto nerve = sset::nerve(fixtures::zoo_category(name), 4);
    const auto w = bisset::discrete_embedding(nerve.sset, 1);
    for (int n = 1; n <= 4; ++n) {
      const auto m = bisset::mapping_sset(bisset::spine_presentation(n), w, 1);
      CHECK(m.count(0) == nerve.sset.count(n));
    }
  }
}

TEST_CASE("mapping out of the twisted boundary of an edge") {
  const auto w = bisset::discrete_embedding(zoo_nerve("arrow", 3), 2);
  const auto m = bisset::mapping_sset(bisset::twisted_boundary_presentation(1), w, 2);
  // pairs of edges, no constraint: 3 * 3
  for (int l = 0; l <= 2; ++l) CHECK(m.count(l) == 9);
}

TEST_CASE("mapping spaces turn the colimit twist into the levelwise twist") {
  for (const auto* name : {"arrow", "iso", "parallel", "idem"}) {
    const auto s = zoo_nerve(name, 3);
    const auto w = bisset::discrete_embedding(s, 2);
    const auto tw = bisset::tw_bisset(w, 1);
    for (int n = 1; n <= 2; ++n)
      CHECK(bisset::mapping_sset(bisset::boundary_presentation(n), tw, 2) ==
            bisset::mapping_sset(bisset::twisted_boundary_presentation(n), w, 2));
  }
}

TEST_CASE("mapping and evaluation guard their inputs") {
  const auto w = bisset::discrete_embedding(zoo_nerve("arrow", 3), 2);
  CHECK_THROWS_AS(bisset::mapping_sset(bisset::representable_presentation(0, 1), w, 2),
                  ValidationError);
  CHECK_THROWS_AS(bisset::mapping_sset(bisset::representable_presentation(0, 0), w, 3),
                  TruncationError);
  CHECK_THROWS_AS(bisset::mapping_sset(bisset::boundary_presentation(5), w, 2),
                  TruncationError);
  CHECK_THROWS_AS(bisset::levelwise_injectivity(bisset::CellComplexPresentation{}, 2),
                  ValidationError);
  CHECK_THROWS_AS(w.act(delta::identity_map(4), delta::identity_map(0), 0), TruncationError);
  CHECK_THROWS_AS(w.count(0, 5), TruncationError);
  CHECK_THROWS_AS(w.face_n(0, 0, 0, 0), DimensionError);
}

TEST_CASE("cell presentations rebuild their simplicial set") {
  for (const auto* name : {"arrow", "span", "involution", "iso"}) {
    const auto s = zoo_nerve(name, 3);
    const auto p = bisset::cell_presentation(s);
    const auto ev = bisset::evaluate(p, 3, 0);
    const auto back = bisset::underlying_sset(ev.bisset);
    CHECK(back.validate() == std::nullopt);
    CHECK(sset::find_iso(back, s).has_value());
  }
  const auto simplex = sset::standard_simplex(2, 4);
  const auto back =
      bisset::underlying_sset(bisset::evaluate(bisset::cell_presentation(simplex), 4, 0).bisset);
  CHECK(sset::find_iso(back, simplex).has_value());
}

TEST_CASE("twisting a simplex cell presentation yields the doubled simplex") {
  // Tw carries the generating 1-simplex to a 3-simplex; the cell presentation
  // of Delta[1] therefore twists to a presentation of Delta[3].
  const auto p = bisset::cell_presentation(sset::standard_simplex(1, 1));
  const auto tw = bisset::tw_presentation(p);
  const auto slice = bisset::underlying_sset(bisset::evaluate(tw, 3, 0).bisset);
  CHECK(slice.validate() == std::nullopt);
  CHECK(sset::find_iso(slice, sset::standard_simplex(3, 3)).has_value());
}

TEST_CASE("the underlying slice of an embedding is the original set") {
  const auto s = zoo_nerve("parallel", 3);
  CHECK(bisset::underlying_sset(bisset::discrete_embedding(s, 2)) == s);
}
