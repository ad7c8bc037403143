#include "twarrow/suites.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <vector>

#include "twarrow/bisset.hpp"
#include "twarrow/fincat.hpp"
#include "twarrow/gss.hpp"

namespace twarrow::suites {

namespace {

void add(SuiteReport& r, std::string name, bool pass, std::string witness = "",
         std::string detail = "") {
  r.pass = r.pass && pass;
  r.checks.push_back({std::move(name), pass, pass ? "" : std::move(witness), std::move(detail)});
}

// The deepest twist the input supports: level n of the twist reads level
// 2n+1 of the input.
int tw_trunc(const gss::GroupoidSimplicialSpace& w) {
  if (w.trunc() < 1)
    throw TruncationError("the twisted space needs an input truncated at level 1 or higher");
  return (w.trunc() - 1) / 2;
}

std::string level_range(int k_max) { return "levels 0.." + std::to_string(k_max); }

SuiteReport boundary_mono(const SuiteOptions& o) {
  SuiteReport r{"boundary-mono", {}, true};
  for (int n = 0; n <= o.n_max; ++n) {
    const auto rep =
        bisset::levelwise_injectivity(bisset::twisted_boundary_presentation(n), o.k_max);
    add(r, "twisted boundary of degree " + std::to_string(n) + " embeds", rep.injective,
        rep.witness, level_range(o.k_max));
  }
  return r;
}

SuiteReport corner_mono(const SuiteOptions& o) {
  SuiteReport r{"corner-mono", {}, true};
  for (int k = 0; k <= o.n_max; ++k) {
    const auto rep = bisset::levelwise_injectivity(bisset::corner_presentation(k), o.k_max);
    add(r, "corner complex of degree " + std::to_string(k) + " embeds", rep.injective,
        rep.witness, level_range(o.k_max));
  }
  return r;
}

SuiteReport segal(const gss::GroupoidSimplicialSpace& w, const SuiteOptions& o) {
  SuiteReport r{"segal", {}, true};
  const int base_n = std::min(o.n_max, w.trunc());
  const auto base = gss::segal_check(w, base_n);
  add(r, "input space is Segal", base.pass, base.witness,
      "degrees 2.." + std::to_string(base_n));
  const int t = tw_trunc(w);
  const int twisted_n = std::min(o.n_max, t);
  const auto twisted = gss::segal_check(gss::tw_space(w, t), twisted_n);
  add(r, "twisted space is Segal", twisted.pass, twisted.witness,
      "degrees 2.." + std::to_string(twisted_n));
  return r;
}

std::string completeness_witness(const gss::CompletenessReport& rep) {
  if (!rep.note.empty()) return rep.note;
  return rep.equivalence.witness;
}

SuiteReport complete(const gss::GroupoidSimplicialSpace& w, const SuiteOptions&) {
  SuiteReport r{"complete", {}, true};
  const auto base = gss::completeness_check(w);
  add(r, "input space is complete", base.complete, completeness_witness(base));
  // an incomplete input says nothing about its twist; stop at the witness
  if (!base.complete) return r;
  const auto twisted = gss::completeness_check(gss::tw_space(w, tw_trunc(w)));
  add(r, "twisted space is complete", twisted.complete, completeness_witness(twisted));
  return r;
}

SuiteReport hoequiv_pullback(const gss::GroupoidSimplicialSpace& w, const SuiteOptions&) {
  SuiteReport r{"hoequiv-pullback", {}, true};
  const auto rep = gss::tw_hoequiv_pullback_check(w);
  add(r, "homotopy equivalences of the twist are the outer-edge preimage", rep.pass,
      rep.witness,
      "direct " + std::to_string(rep.direct_count) + ", preimage " +
          std::to_string(rep.preimage_count));
  return r;
}

SuiteReport fw_equiv(const gss::GroupoidSimplicialSpace& w, const SuiteOptions&) {
  SuiteReport r{"fw-equiv", {}, true};
  const auto cmp = gss::ho_comparison_functor(w);
  const auto rep =
      fincat::is_equivalence(cmp.ho_tw.category, cmp.tw_ho.category, cmp.functor);
  const std::string sizes =
      "objects " + std::to_string(cmp.ho_tw.category.object_count()) + " -> " +
      std::to_string(cmp.tw_ho.category.object_count());
  add(r, "comparison functor is essentially surjective", rep.essentially_surjective,
      rep.witness, sizes);
  add(r, "comparison functor is full", rep.full, rep.witness);
  add(r, "comparison functor is faithful", rep.faithful, rep.witness);
  add(r, "independent equivalence search succeeds",
      fincat::equivalent_categories(cmp.ho_tw.category, cmp.tw_ho.category));
  return r;
}

SuiteReport left_fib(const gss::GroupoidSimplicialSpace& w, const SuiteOptions& o) {
  SuiteReport r{"left-fib", {}, true};
  const int t = tw_trunc(w);
  const auto tp = gss::twisted_projection_space(w, t);
  const int n = std::min(o.n_max, t);
  const auto rep = gss::left_fibration_check(tp.tw, tp.target.space, tp.projection, n);
  add(r, "projection to (op, target) pair is a left fibration", rep.pass, rep.witness,
      "degrees 1.." + std::to_string(n));
  add(r, "lazy and materialized degree-1 verdicts agree", rep.shortcut_agrees);
  return r;
}

SuiteReport fiber_slice(const formats::SpaceRecipe& recipe,
                        const gss::GroupoidSimplicialSpace& w, const SuiteOptions&) {
  SuiteReport r{"fiber-slice", {}, true};
  const auto tp = gss::twisted_projection_space(w, tw_trunc(w));
  const auto& cat = recipe.category.category;
  for (fincat::ObjId x = 0; x < cat.object_count(); ++x) {
    const auto fib = gss::fiber_at(tp.tw, tp.op_base, tp.to_op_base, x);
    const auto ho = gss::ho_category(fib);
    const auto under = fincat::under_category(cat, x);
    const bool ok = fincat::equivalent_categories(ho.category, under.category);
    add(r, "fiber over '" + recipe.category.objects[x] + "' presents the under category", ok,
        "homotopy category of the fiber is not equivalent to the under category",
        "fiber morphisms " + std::to_string(ho.category.morphism_count()) + ", under " +
            std::to_string(under.category.morphism_count()));
  }
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "boundary-mono", "corner-mono", "segal",    "complete",
      "hoequiv-pullback", "fw-equiv",  "left-fib", "fiber-slice"};
  return names;
}

bool suite_needs_space(const std::string& suite) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end())
    throw Error("unknown suite '" + suite + "'");
  return suite != "boundary-mono" && suite != "corner-mono";
}

SuiteReport run_suite(const std::string& suite, const formats::SpaceRecipe* recipe,
                      const SuiteOptions& opts) {
  if (!suite_needs_space(suite)) {
    if (suite == "boundary-mono") return boundary_mono(opts);
    return corner_mono(opts);
  }
  if (recipe == nullptr) throw Error("suite '" + suite + "' needs an input space");
  const auto w = formats::build_space(*recipe);
  if (suite == "segal") return segal(w, opts);
  if (suite == "complete") return complete(w, opts);
  if (suite == "hoequiv-pullback") return hoequiv_pullback(w, opts);
  if (suite == "fw-equiv") return fw_equiv(w, opts);
  if (suite == "left-fib") return left_fib(w, opts);
  return fiber_slice(*recipe, w, opts);
}

}  // namespace twarrow::suites
