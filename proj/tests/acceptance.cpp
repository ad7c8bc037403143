// Acceptance checks: one pass/fail line per criterion, nonzero exit when any
// fails. Every criterion pins its runtime budget in code — a criterion whose
// logic holds but whose run exceeds the budget still fails.
//
// usage: acceptance <twarrow-cli> <data-dir>
//
// The command-line binary and the sample directory feed the determinism
// checks of the final criterion; everything else runs in process.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "twarrow/bisset.hpp"
#include "twarrow/common.hpp"
#include "twarrow/delta.hpp"
#include "twarrow/fincat.hpp"
#include "twarrow/fixtures.hpp"
#include "twarrow/gss.hpp"
#include "twarrow/sset.hpp"

namespace {

using namespace twarrow;

struct Outcome {
  bool ok = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Criterion 1 — representable law: the twist of F(n) x D[l] is F(2n+1) x D[l],
// computed as a genuine colimit. F(n) x D[l] is presented by its injections
// glued along faces; twisting the presentation and evaluating by union-find
// must reproduce the representable exactly, levelwise.

bisset::CellComplexPresentation cells_presentation(int n, int l) {
  bisset::CellComplexPresentation p;
  p.ambient = bisset::GeneratorShape{n, l};
  std::map<std::pair<int, std::uint64_t>, std::size_t> index;
  std::vector<delta::SimplexMap> maps;
  for (int m = 0; m <= n; ++m)
    for (const auto& a : delta::all_maps(m, n)) {
      if (!a.is_injective()) continue;
      index[{m, delta::lex_rank(a)}] = p.generators.size();
      p.generators.push_back({m, l});
      p.ambient_maps.push_back({a, delta::identity_map(l)});
      maps.push_back(a);
    }
  const std::size_t gen_count = p.generators.size();
  for (std::size_t g = 0; g < gen_count; ++g) {
    const int m = p.generators[g].n;
    for (int i = 0; m >= 1 && i <= m; ++i) {
      const auto af = delta::compose(maps[g], delta::face(m, i));
      const std::size_t root = index.at({m - 1, delta::lex_rank(af)});
      p.relations.push_back(
          {bisset::GeneratorShape{m - 1, l},
           bisset::Attachment{root, delta::identity_map(m - 1), delta::identity_map(l)},
           bisset::Attachment{g, delta::face(m, i), delta::identity_map(l)}});
    }
  }
  return p;
}

bool bijective_onto_representable(const bisset::EvaluatedComplex& e, int amb_n, int amb_l,
                                  bool structural, std::string* why) {
  const auto& w = e.bisset;
  for (int k = 0; k <= w.trunc_n(); ++k)
    for (int j = 0; j <= w.trunc_l(); ++j) {
      const std::uint64_t want = delta::count_maps(k, amb_n) * delta::count_maps(j, amb_l);
      if (w.count(k, j) != want) {
        *why = "level (" + std::to_string(k) + "," + std::to_string(j) + ") has " +
               std::to_string(w.count(k, j)) + " classes, the representable has " +
               std::to_string(want);
        return false;
      }
      auto img = e.to_ambient[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
      std::sort(img.begin(), img.end());
      if (std::adjacent_find(img.begin(), img.end()) != img.end()) {
        *why = "level (" + std::to_string(k) + "," + std::to_string(j) +
               "): two classes share an ambient cell";
        return false;
      }
    }
  if (!structural) return true;
  const auto rep = bisset::representable(amb_n, amb_l, w.trunc_n(), w.trunc_l());
  const auto& amb = e.to_ambient;
  for (int k = 0; k <= w.trunc_n(); ++k)
    for (int j = 0; j <= w.trunc_l(); ++j) {
      const auto sk = static_cast<std::size_t>(k);
      const auto sj = static_cast<std::size_t>(j);
      for (bisset::Cell c = 0; c < w.count(k, j); ++c) {
        const bisset::Cell image = amb[sk][sj][c];
        for (int i = 0; k >= 1 && i <= k; ++i)
          if (amb[sk - 1][sj][w.face_n(k, j, i, c)] != rep.face_n(k, j, i, image)) {
            *why = "face mismatch at level (" + std::to_string(k) + "," + std::to_string(j) + ")";
            return false;
          }
        for (int i = 0; k < w.trunc_n() && i <= k; ++i)
          if (amb[sk + 1][sj][w.degen_n(k, j, i, c)] != rep.degen_n(k, j, i, image)) {
            *why = "degeneracy mismatch at level (" + std::to_string(k) + "," +
                   std::to_string(j) + ")";
            return false;
          }
        for (int i = 0; j >= 1 && i <= j; ++i)
          if (amb[sk][sj - 1][w.face_l(k, j, i, c)] != rep.face_l(k, j, i, image)) {
            *why = "spatial face mismatch at level (" + std::to_string(k) + "," +
                   std::to_string(j) + ")";
            return false;
          }
        for (int i = 0; j < w.trunc_l() && i <= j; ++i)
          if (amb[sk][sj + 1][w.degen_l(k, j, i, c)] != rep.degen_l(k, j, i, image)) {
            *why = "spatial degeneracy mismatch at level (" + std::to_string(k) + "," +
                   std::to_string(j) + ")";
            return false;
          }
      }
    }
  return true;
}

Outcome criterion_representable() {
  int pairs = 0;
  for (int n = 0; n <= 4; ++n)
    for (int l = 0; l <= 3; ++l) {
      // comparison depth: the full twisted degree when it fits, level 5
      // otherwise (degrees 3 and 4 twist to 7 and 9)
      const int depth = std::min(2 * n + 1, 5);
      const auto p = cells_presentation(n, l);
      std::string why;
      const auto base = bisset::evaluate(p, depth, l);
      if (!bijective_onto_representable(base, n, l, false, &why))
        return {false, "cells of (" + std::to_string(n) + "," + std::to_string(l) + "): " + why};
      const auto twisted = bisset::evaluate(bisset::tw_presentation(p), depth, l);
      if (!bijective_onto_representable(twisted, 2 * n + 1, l, true, &why))
        return {false, "twist of (" + std::to_string(n) + "," + std::to_string(l) + "): " + why};
      ++pairs;
    }
  return {true, std::to_string(pairs) + " (n,l) pairs rebuilt the representable exactly"};
}

// ---------------------------------------------------------------------------
// Criterion 2 — lifting law: twisting commutes strictly with spreading a
// simplicial set constantly along the spatial direction.

std::vector<sset::FinSimplicialSet> sset_zoo(int trunc) {
  std::vector<sset::FinSimplicialSet> out;
  for (const auto& name : fixtures::zoo_names())
    out.push_back(sset::nerve(fixtures::zoo_category(name), trunc).sset);
  out.push_back(sset::standard_simplex(3, trunc));
  out.push_back(sset::boundary(4, trunc).subset);
  out.push_back(sset::spine(4, trunc).subset);
  return out;
}

Outcome criterion_lifting() {
  const int t = 2;
  const int spatial = 2;
  const auto zoo = sset_zoo(2 * t + 1);
  for (std::size_t i = 0; i < zoo.size(); ++i) {
    const auto lhs = bisset::tw_bisset(bisset::discrete_embedding(zoo[i], spatial), t);
    const auto rhs = bisset::discrete_embedding(sset::tw_sset(zoo[i], t), spatial);
    if (!(lhs == rhs))
      return {false, "simplicial set " + std::to_string(i) + ": the two lifts disagree"};
  }
  return {true, std::to_string(zoo.size()) + " simplicial sets, strict table equality"};
}

// ---------------------------------------------------------------------------
// Criterion 3 — nerve comparison: the nerve of the twisted arrow category is
// isomorphic to the twisted edge complex of the nerve, over both projections.

fincat::FinFunctor product_pr_first(const fincat::FinCategory& c, const fincat::FinCategory& d) {
  fincat::FinFunctor f;
  f.object_map.resize(static_cast<std::size_t>(c.object_count()) * d.object_count());
  for (std::size_t i = 0; i < f.object_map.size(); ++i)
    f.object_map[i] = static_cast<fincat::ObjId>(i / d.object_count());
  f.mor_map.resize(static_cast<std::size_t>(c.morphism_count()) * d.morphism_count());
  for (std::size_t i = 0; i < f.mor_map.size(); ++i)
    f.mor_map[i] = static_cast<fincat::MorId>(i / d.morphism_count());
  return f;
}

fincat::FinFunctor product_pr_second(const fincat::FinCategory& c, const fincat::FinCategory& d) {
  fincat::FinFunctor f;
  f.object_map.resize(static_cast<std::size_t>(c.object_count()) * d.object_count());
  for (std::size_t i = 0; i < f.object_map.size(); ++i)
    f.object_map[i] = static_cast<fincat::ObjId>(i % d.object_count());
  f.mor_map.resize(static_cast<std::size_t>(c.morphism_count()) * d.morphism_count());
  for (std::size_t i = 0; i < f.mor_map.size(); ++i)
    f.mor_map[i] = static_cast<fincat::MorId>(i % d.morphism_count());
  return f;
}

Outcome criterion_nerve_comparison() {
  const int t = 2;
  int count = 0;
  for (const auto& name : fixtures::zoo_names()) {
    const auto c = fixtures::zoo_category(name);
    const auto tw = fincat::tw_cat(c);
    const auto cop = fincat::opposite(c);
    if (!(tw.projection_target == fincat::product(cop, c)))
      return {false, name + ": projection target is not the expected product"};
    const auto ntw = sset::nerve(tw.category, t);
    const auto nc = sset::nerve(c, t);
    const auto ncop = sset::nerve(cop, t);
    const auto opnc = sset::op_sset(nc.sset);

    // chain reversal: the nerve of the opposite vs the opposite of the nerve
    sset::SSetMorphism flip;
    flip.level.resize(static_cast<std::size_t>(t) + 1);
    flip.level[0].resize(ncop.sset.count(0));
    std::iota(flip.level[0].begin(), flip.level[0].end(), 0u);
    for (int k = 1; k <= t; ++k) {
      flip.level[static_cast<std::size_t>(k)].resize(ncop.sset.count(k));
      for (sset::Cell x = 0; x < ncop.sset.count(k); ++x) {
        auto chain = ncop.chains[static_cast<std::size_t>(k)][x];
        std::reverse(chain.begin(), chain.end());
        flip.level[static_cast<std::size_t>(k)][x] = nc.rank(k, chain);
      }
    }
    if (sset::validate_morphism(ncop.sset, opnc, flip) || !sset::is_iso(ncop.sset, opnc, flip))
      return {false, name + ": chain reversal is not an isomorphism of nerves"};

    const auto f1 = fincat::compose_functors(product_pr_first(cop, c), tw.projection);
    const auto f2 = fincat::compose_functors(product_pr_second(cop, c), tw.projection);
    const auto q1 = sset::compose_morphisms(flip, sset::nerve_map(ntw, ncop, f1));
    const auto q2 = sset::nerve_map(ntw, nc, f2);
    const auto lhs_proj = sset::pair_into_product(ntw.sset, opnc, nc.sset, q1, q2);

    const auto big = sset::nerve(c, 2 * t + 1);
    const auto tp = sset::tw_projections(big.sset, t);
    if (!(tp.base == nc.sset) || !(tp.op_base == opnc))
      return {false, name + ": twisted projection bases differ from the direct nerves"};
    const auto rhs_proj =
        sset::pair_into_product(tp.tw, opnc, nc.sset, tp.to_op_base, tp.to_base);

    if (!sset::find_iso_over(ntw.sset, tp.tw, lhs_proj, rhs_proj))
      return {false, name + ": no isomorphism over the projections"};
    ++count;
  }
  return {true, std::to_string(count) + " categories, isomorphism found over both projections"};
}

// ---------------------------------------------------------------------------
// Criteria 4 and 5 — the twisted boundary and corner complexes include into
// their ambient representables without collisions.

Outcome criterion_twisted_boundary() {
  for (int n = 0; n <= 4; ++n) {
    const auto r = bisset::levelwise_injectivity(bisset::twisted_boundary_presentation(n), 9);
    if (!r.injective) return {false, "degree " + std::to_string(n) + ": " + r.witness};
  }
  return {true, "degrees 0..4 injective through level 9, zero collisions"};
}

Outcome criterion_corner() {
  for (int k = 0; k <= 3; ++k) {
    const auto r = bisset::levelwise_injectivity(bisset::corner_presentation(k), 7);
    if (!r.injective) return {false, "degree " + std::to_string(k) + ": " + r.witness};
  }
  return {true, "degrees 0..3 injective through level 7, zero collisions"};
}

// ---------------------------------------------------------------------------
// The space fixtures shared by criteria 6..11: classifying diagrams and
// discrete nerves of the category zoo, deep enough to twist to degree 4.
// The involution's classifying diagram outgrows both category storage modes
// past truncation 5, so it enters at reduced depth (twists to degree 2).

struct Fixture {
  std::string name;
  bool classifying = false;
  std::string cat;
  gss::GroupoidSimplicialSpace space;
  int tw_trunc = 0;
};

std::vector<Fixture> build_fixtures() {
  std::vector<Fixture> out;
  for (const auto& name : fixtures::thin_zoo_names())
    out.push_back({name + "-cl", true, name,
                   gss::classifying_diagram(fixtures::zoo_category(name), 9), 4});
  out.push_back({"involution-cl", true, "involution",
                 gss::classifying_diagram(fixtures::zoo_category("involution"), 5), 2});
  for (const auto& name : fixtures::zoo_names())
    out.push_back({name + "-dn", false, name,
                   gss::discrete_embedding(sset::nerve(fixtures::zoo_category(name), 9).sset),
                   4});
  return out;
}

const Fixture& find_fixture(const std::vector<Fixture>& zoo, const std::string& name) {
  for (const auto& f : zoo)
    if (f.name == name) return f;
  throw Error("fixture " + name + " missing");
}

std::string completeness_witness(const gss::CompletenessReport& r) {
  return r.note.empty() ? r.equivalence.witness : r.note;
}

// ---------------------------------------------------------------------------
// Criterion 6 — twisting preserves the Segal conditions.

Outcome criterion_segal(const std::vector<Fixture>& zoo) {
  for (const auto& f : zoo) {
    const int t = std::min(4, f.tw_trunc);
    const auto r = gss::segal_check(gss::tw_space(f.space, t), t);
    if (!r.pass) return {false, f.name + ": " + r.witness};
  }
  return {true, std::to_string(zoo.size()) +
                    " fixtures (degree 4 except involution-cl at its depth limit of 2)"};
}

// ---------------------------------------------------------------------------
// Criterion 7 — the comparison functor from the homotopy category of the
// twist to the twisted arrow category of the homotopy category is an
// equivalence, and an independent skeleton search agrees.

Outcome criterion_comparison(const std::vector<Fixture>& zoo) {
  int ran = 0, skipped = 0;
  for (const auto& f : zoo) {
    if (f.tw_trunc < 3) {
      ++skipped;
      continue;
    }
    const auto cmp = gss::ho_comparison_functor(f.space);
    const auto rep = fincat::is_equivalence(cmp.ho_tw.category, cmp.tw_ho.category, cmp.functor);
    if (!rep.ok()) return {false, f.name + ": " + rep.witness};
    if (!fincat::equivalent_categories(cmp.ho_tw.category, cmp.tw_ho.category))
      return {false, f.name + ": independent skeleton search found no equivalence"};
    ++ran;
  }
  return {true, std::to_string(ran) + " fixtures equivalent both ways, " +
                    std::to_string(skipped) + " below the depth the comparison needs"};
}

// ---------------------------------------------------------------------------
// Criterion 8 — the homotopy equivalences of the twist are exactly the
// 3-simplices whose outer edges are homotopy equivalences. The library's
// verdict is re-derived per simplex from the generator composites d2.d2 and
// d0.d0.

Outcome criterion_hoequiv_pullback(const std::vector<Fixture>& zoo) {
  int ran = 0, skipped = 0;
  for (const auto& f : zoo) {
    if (f.tw_trunc < 3) {
      ++skipped;
      continue;
    }
    const auto& w = f.space;
    const auto r = gss::tw_hoequiv_pullback_check(w);
    if (!r.pass) return {false, f.name + ": " + r.witness};

    const auto tw = gss::tw_space(w, 3);
    const auto he_w = gss::hoequiv_subgroupoid(w);
    const auto he_t = gss::hoequiv_subgroupoid(tw);
    std::vector<char> base_he(w.level(1).object_count(), 0);
    for (const auto o : he_w.objects) base_he[o] = 1;
    std::vector<char> direct(w.level(3).object_count(), 0);
    for (const auto o : he_t.objects) direct[o] = 1;
    const auto& d3_2 = w.face(3, 2).object_map;
    const auto& d2_2 = w.face(2, 2).object_map;
    const auto& d3_0 = w.face(3, 0).object_map;
    const auto& d2_0 = w.face(2, 0).object_map;
    std::size_t direct_count = 0, preimage_count = 0;
    for (fincat::ObjId s = 0; s < w.level(3).object_count(); ++s) {
      const bool outer = base_he[d2_2[d3_2[s]]] && base_he[d2_0[d3_0[s]]];
      if (outer) ++preimage_count;
      if (direct[s]) ++direct_count;
      if (outer != static_cast<bool>(direct[s]))
        return {false, f.name + ": simplex " + std::to_string(s) + " breaks the biconditional"};
    }
    if (direct_count != r.direct_count || preimage_count != r.preimage_count)
      return {false, f.name + ": recomputed counts disagree with the library's"};
    ++ran;
  }
  return {true, std::to_string(ran) + " fixtures, zero counterexamples, counts agree (" +
                    std::to_string(skipped) + " below depth)"};
}

// ---------------------------------------------------------------------------
// Criterion 9 — classifying diagrams stay complete under twisting, and the
// discrete nerve of the walking isomorphism is a Segal-but-incomplete fixture
// whose twisted projection is nevertheless still a left fibration.

Outcome criterion_completeness(const std::vector<Fixture>& zoo) {
  int bases = 0, twists = 0;
  for (const auto& f : zoo) {
    if (!f.classifying) continue;
    const auto base = gss::completeness_check(f.space);
    if (!base.complete)
      return {false, f.name + " base: " + completeness_witness(base)};
    ++bases;
    if (f.tw_trunc >= 3) {
      const auto twr = gss::completeness_check(gss::tw_space(f.space, 3));
      if (!twr.complete)
        return {false, f.name + " twist: " + completeness_witness(twr)};
      ++twists;
    }
  }
  const auto& j = find_fixture(zoo, "iso-dn");
  const auto jr = gss::completeness_check(j.space);
  if (jr.complete) return {false, "iso-dn is unexpectedly complete"};
  const auto tp = gss::twisted_projection_space(j.space, 4);
  const auto lf = gss::left_fibration_check(tp.tw, tp.target.space, tp.projection, 4);
  if (!lf.pass)
    return {false, "iso-dn: left fibration fails on the incomplete fixture: " + lf.witness};
  return {true, std::to_string(bases) + " classifying bases and " + std::to_string(twists) +
                    " twists complete; iso-dn incomplete (" + completeness_witness(jr) +
                    ") with its left fibration intact"};
}

// ---------------------------------------------------------------------------
// Criterion 10 — every twisted projection is a left fibration, the degree-1
// shortcut agrees with the scan, and a deliberately wrong map is rejected.

Outcome criterion_left_fibration(const std::vector<Fixture>& zoo) {
  for (const auto& f : zoo) {
    const int t = std::min(4, f.tw_trunc);
    const auto tp = gss::twisted_projection_space(f.space, t);
    const auto r = gss::left_fibration_check(tp.tw, tp.target.space, tp.projection, t);
    if (!r.pass) return {false, f.name + ": " + r.witness};
    if (!r.shortcut_agrees)
      return {false, f.name + ": degree-1 shortcut disagrees with the scan"};
  }
  const auto w = gss::classifying_diagram(fixtures::zoo_category("span"), 4);
  const auto pp = gss::product_space(w, w);
  const auto bad = gss::left_fibration_check(pp.space, w, pp.pr1, 4);
  if (bad.pass || bad.witness.empty())
    return {false, "the square's first projection was not rejected"};
  return {true, std::to_string(zoo.size()) +
                    " fixtures pass with shortcut agreement; product projection rejected (" +
                    bad.witness + ")"};
}

// ---------------------------------------------------------------------------
// Criterion 11 — the fiber of the twisted projection over an object has the
// object's under category as its homotopy category.

Outcome criterion_fiber_slices(const std::vector<Fixture>& zoo) {
  const auto& thin = fixtures::thin_zoo_names();
  int objects = 0, cats = 0;
  for (const auto& name : fixtures::zoo_names()) {
    const auto c = fixtures::zoo_category(name);
    const bool is_thin = std::find(thin.begin(), thin.end(), name) != thin.end();
    const auto& f = find_fixture(zoo, name + (is_thin ? "-cl" : "-dn"));
    const auto tp = gss::twisted_projection_space(f.space, 3);
    for (fincat::ObjId x = 0; x < c.object_count(); ++x) {
      const auto fib = gss::fiber_at(tp.tw, tp.op_base, tp.to_op_base, x);
      const auto ho = gss::ho_category(fib);
      const auto uc = fincat::under_category(c, x);
      if (!fincat::equivalent_categories(ho.category, uc.category))
        return {false, f.name + " object " + std::to_string(x) +
                           ": slice is not the under category"};
      ++objects;
    }
    ++cats;
  }
  return {true, std::to_string(cats) + " categories, " + std::to_string(objects) +
                    " objects sliced"};
}

// ---------------------------------------------------------------------------
// Criterion 12 — foundations: operator laws of the twist, the opposite
// involution, epi-mono factorization round-trips, simplicial identities on
// constructed objects, and byte-identical reports from the command line.

std::string run_capture(const std::string& cmd) {
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw Error("failed to spawn: " + cmd);
  std::string out;
  char buf[4096];
  std::size_t got = 0;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  pclose(pipe);
  return out;
}

Outcome criterion_foundations(const std::string& cli, const std::string& data) {
  for (int n = 0; n <= 4; ++n) {
    if (!(delta::q_map(delta::identity_map(n)) == delta::identity_map(2 * n + 1)))
      return {false, "twist of the identity operator is not the identity"};
    for (int m = 0; m <= 4; ++m)
      for (const auto& a : delta::all_maps(m, n))
        for (int k = 0; k <= 4; ++k)
          for (const auto& b : delta::all_maps(k, m))
            if (!(delta::q_map(delta::compose(a, b)) ==
                  delta::compose(delta::q_map(a), delta::q_map(b))))
              return {false, "twist functoriality fails on " + a.str() + " . " + b.str()};
  }
  for (int m = 0; m <= 4; ++m)
    for (int n = 0; n <= 4; ++n)
      for (const auto& a : delta::all_maps(m, n))
        if (!(delta::op_map(delta::op_map(a)) == a))
          return {false, "the opposite is not an involution on " + a.str()};
  for (int m = 0; m <= 5; ++m)
    for (int n = 0; n <= 5; ++n)
      for (const auto& a : delta::all_maps(m, n)) {
        const auto ez = delta::ez_factorize(a);
        if (!ez.surjection.is_surjective() || !ez.injection.is_injective() ||
            !(delta::compose(ez.injection, ez.surjection) == a))
          return {false, "factorization round-trip fails on " + a.str()};
        const auto fw = delta::face_word(ez.injection);
        for (std::size_t i = 1; i < fw.size(); ++i)
          if (fw[i - 1] <= fw[i])
            return {false, "face word not strictly decreasing on " + a.str()};
        auto inj = delta::identity_map(ez.injection.dom());
        for (std::size_t i = fw.size(); i-- > 0;)
          inj = delta::compose(delta::face(n - static_cast<int>(i), fw[i]), inj);
        const auto dw = delta::degeneracy_word(ez.surjection);
        for (std::size_t i = 1; i < dw.size(); ++i)
          if (dw[i - 1] > dw[i])
            return {false, "degeneracy word not non-decreasing on " + a.str()};
        auto surj = delta::identity_map(m);
        for (std::size_t i = 0; i < dw.size(); ++i)
          surj = delta::compose(delta::degeneracy(m - 1 - static_cast<int>(i), dw[i]), surj);
        if (!(inj == ez.injection) || !(surj == ez.surjection))
          return {false, "generator words do not rebuild " + a.str()};
      }

  int validated = 0;
  for (const auto& name : fixtures::zoo_names()) {
    if (sset::nerve(fixtures::zoo_category(name), 4).sset.validate())
      return {false, name + ": nerve fails the simplicial identities"};
    ++validated;
  }
  const std::vector<sset::FinSimplicialSet> sheets = {
      sset::standard_simplex(3, 6),
      sset::boundary(4, 6).subset,
      sset::spine(5, 5).subset,
      sset::tw_sset(sset::nerve(fixtures::zoo_category("iso"), 9).sset, 4),
  };
  for (const auto& s : sheets) {
    if (s.validate()) return {false, "a constructed simplicial set fails its identities"};
    ++validated;
  }
  const std::vector<bisset::FinBiSimplicialSet> grids = {
      bisset::evaluate(bisset::twisted_boundary_presentation(2), 7, 0).bisset,
      bisset::evaluate(bisset::corner_presentation(2), 5, 0).bisset,
      bisset::representable(2, 1, 4, 3),
  };
  for (const auto& g : grids) {
    if (g.validate()) return {false, "a constructed bisimplicial set fails its identities"};
    ++validated;
  }
  const auto cl = gss::classifying_diagram(fixtures::zoo_category("span"), 5);
  cl.validate();
  ++validated;
  gss::tw_space(cl, 2).validate();
  ++validated;
  gss::discrete_embedding(sset::nerve(fixtures::zoo_category("iso"), 5).sset).validate();
  ++validated;

  const std::string check_cmd =
      "\"" + cli + "\" check segal \"" + data + "/walking-iso-classifying.gss\"";
  const auto a1 = run_capture(check_cmd);
  const auto a2 = run_capture(check_cmd);
  if (a1.empty() || a1 != a2) return {false, "check reports differ between identical runs"};
  if (a1.find("result: pass") == std::string::npos)
    return {false, "the command-line Segal check did not pass"};
  const std::string tw_cmd = "\"" + cli + "\" tw \"" + data + "/interval.sset\"";
  const auto b1 = run_capture(tw_cmd);
  const auto b2 = run_capture(tw_cmd);
  if (b1.empty() || b1 != b2) return {false, "twist outputs differ between identical runs"};

  return {true, "operator laws, factorization round-trips, " + std::to_string(validated) +
                    " validations, byte-identical reruns"};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: acceptance <twarrow-cli> <data-dir>\n");
    return 2;
  }
  const std::string cli = argv[1];
  const std::string data = argv[2];

  std::vector<Fixture> zoo;
  std::string zoo_error;
  try {
    zoo = build_fixtures();
  } catch (const std::exception& e) {
    zoo_error = e.what();
  }
  const auto with_zoo = [&](const std::function<Outcome(const std::vector<Fixture>&)>& f) {
    return [&zoo, &zoo_error, f]() -> Outcome {
      if (!zoo_error.empty()) return {false, "fixtures failed to build: " + zoo_error};
      return f(zoo);
    };
  };

  struct Entry {
    const char* label;
    long long budget_ms;
    std::function<Outcome()> run;
  };
  const std::vector<Entry> entries = {
      {"representable law", 1000, criterion_representable},
      {"lifting law", 5000, criterion_lifting},
      {"nerve comparison", 30000, criterion_nerve_comparison},
      {"twisted boundary injectivity", 60000, criterion_twisted_boundary},
      {"corner injectivity", 60000, criterion_corner},
      {"Segal preservation", 120000, with_zoo(criterion_segal)},
      {"homotopy category comparison", 120000, with_zoo(criterion_comparison)},
      {"hoequiv pullback agreement", 60000, with_zoo(criterion_hoequiv_pullback)},
      {"completeness preservation", 60000, with_zoo(criterion_completeness)},
      {"left fibration", 120000, with_zoo(criterion_left_fibration)},
      {"fiber slices", 60000, with_zoo(criterion_fiber_slices)},
      {"foundations and determinism", 30000,
       [&cli, &data] { return criterion_foundations(cli, data); }},
  };

  bool all = true;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = entries[i].run();
    } catch (const std::exception& e) {
      o = {false, e.what()};
    }
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                        std::chrono::steady_clock::now() - start)
                        .count();
    const bool pass = o.ok && ms <= entries[i].budget_ms;
    all = all && pass;
    std::printf("criterion %2zu: %s -- %s (%s; %lld ms of %lld ms budget)\n", i + 1,
                pass ? "pass" : "FAIL", entries[i].label, o.detail.c_str(),
                static_cast<long long>(ms), entries[i].budget_ms);
    std::fflush(stdout);
  }
  std::printf("result: %s\n", all ? "pass" : "FAIL");
  return all ? 0 : 1;
}
