#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "twarrow/common.hpp"

// Finite categories and groupoids with total, decidable structure: object and
// morphism sets are index ranges, composition is either a dense table or (for
// thin categories, where every hom-set has at most one element) a hom lookup.
namespace twarrow::fincat {

using ObjId = std::uint32_t;
using MorId = std::uint32_t;

inline constexpr MorId kNotComposable = 0xffffffffu;
inline constexpr ObjId kNoObject = 0xffffffffu;

// Dense tables above this morphism count would be gigabytes; thin storage
// covers every large fixture this library builds.
inline constexpr std::size_t kDenseMorLimit = 4096;

class FinCategory {
 public:
  enum class Storage { kDense, kThin };

  FinCategory() = default;

  // Dense storage. `composite(g, f)` is consulted once per composable pair
  // (tgt(f) == src(g)) to fill the table.
  static FinCategory dense(std::uint32_t object_count, std::vector<ObjId> mor_src,
                           std::vector<ObjId> mor_tgt, std::vector<MorId> identities,
                           const std::function<MorId(MorId, MorId)>& composite);

  // Dense storage from explicit triples (g, f, g.f). Identity composites are
  // filled automatically; every other composable pair must be covered.
  static FinCategory from_triples(std::uint32_t object_count, std::vector<ObjId> mor_src,
                                  std::vector<ObjId> mor_tgt, std::vector<MorId> identities,
                                  const std::vector<std::array<MorId, 3>>& triples);

  // Thin storage: every hom-set must have at most one element. Identities are
  // the unique endomorphisms; composites are hom lookups.
  static FinCategory thin(std::uint32_t object_count, std::vector<ObjId> mor_src,
                          std::vector<ObjId> mor_tgt);

  // Picks dense when the morphism count allows it, thin otherwise; throws
  // ValidationError if neither representation fits.
  static FinCategory automatic(std::uint32_t object_count, std::vector<ObjId> mor_src,
                               std::vector<ObjId> mor_tgt, std::vector<MorId> identities,
                               const std::function<MorId(MorId, MorId)>& composite);

  std::uint32_t object_count() const { return object_count_; }
  std::uint32_t morphism_count() const { return static_cast<std::uint32_t>(mor_src_.size()); }
  Storage storage() const { return storage_; }

  ObjId src(MorId m) const { return mor_src_[m]; }
  ObjId tgt(MorId m) const { return mor_tgt_[m]; }
  MorId identity(ObjId x) const { return identities_[x]; }

  bool is_composable(MorId g, MorId f) const { return mor_tgt_[f] == mor_src_[g]; }

  // g . f (apply f first). Throws DimensionError when not composable.
  MorId compose(MorId g, MorId f) const;

  // Morphism ids with the given endpoints, in increasing id order.
  std::span<const MorId> hom(ObjId x, ObjId y) const;

  bool is_thin() const;
  std::optional<MorId> try_inverse(MorId m) const;  // two-sided inverse
  bool is_invertible(MorId m) const { return try_inverse(m).has_value(); }

  // First axiom violation found, or nullopt when the data is a category.
  std::optional<std::string> validate() const;

  bool operator==(const FinCategory& other) const;

 protected:
  void build_hom_index();

  std::uint32_t object_count_ = 0;
  std::vector<ObjId> mor_src_;
  std::vector<ObjId> mor_tgt_;
  std::vector<MorId> identities_;
  Storage storage_ = Storage::kDense;
  std::vector<MorId> comp_table_;  // dense only, morphism_count^2 entries

  // hom index: morphism ids sorted by (src, tgt, id); offsets per object pair
  std::vector<MorId> hom_order_;
  std::vector<std::uint32_t> hom_offsets_;
};

class FinGroupoid : public FinCategory {
 public:
  FinGroupoid() = default;

  // Validates that every morphism is invertible and stores the inverses.
  static FinGroupoid from_category(FinCategory cat);

  MorId inverse(MorId m) const { return inverse_[m]; }

  std::optional<std::string> validate_groupoid() const;

 private:
  std::vector<MorId> inverse_;
};

// A functor as plain data; source and target categories travel separately.
struct FinFunctor {
  std::vector<ObjId> object_map;
  std::vector<MorId> mor_map;

  bool operator==(const FinFunctor& other) const = default;
};

FinFunctor identity_functor(const FinCategory& c);

// F . G (apply G first).
FinFunctor compose_functors(const FinFunctor& f, const FinFunctor& g);

// Structural checks are O(morphisms); with `check_composition` the functor is
// also tested on every composable pair of the source, which can be expensive
// for big thin sources.
std::optional<std::string> validate_functor(const FinCategory& source, const FinCategory& target,
                                            const FinFunctor& f, bool check_composition = true);

struct EquivalenceReport {
  bool essentially_surjective = false;
  bool full = false;
  bool faithful = false;
  std::string witness;  // empty when ok()

  bool ok() const { return essentially_surjective && full && faithful; }
};

// Exhaustive equivalence check: essential surjectivity by iso search, fullness
// and faithfulness by hom-set comparison over all object pairs.
EquivalenceReport is_equivalence(const FinCategory& source, const FinCategory& target,
                                 const FinFunctor& f);

FinCategory opposite(const FinCategory& c);

// Product category; object (a, b) has id a * d.object_count() + b, morphism
// (f, g) has id f * d.morphism_count() + g.
FinCategory product(const FinCategory& c, const FinCategory& d);

// The twisted arrow category: objects are morphisms of c, a morphism
// g -> g' is a pair (k, h) with g' = h . g . k.
struct TwCat {
  FinCategory category;
  // tw morphism id -> the witnessing pair (k, h) of c-morphisms
  std::vector<std::pair<MorId, MorId>> mor_pair;
  // projection tw(c) -> opposite(c) x c, landing in `projection_target`
  FinCategory projection_target;
  FinFunctor projection;
};
TwCat tw_cat(const FinCategory& c);

// The category of objects under x: objects are morphisms out of x, a morphism
// f -> g is an h with h . f = g.
struct UnderCategory {
  FinCategory category;
  std::vector<MorId> object_to_mor;  // under-object -> c-morphism with src x
  std::vector<MorId> mor_to_h;       // under-morphism -> the witnessing h
};
UnderCategory under_category(const FinCategory& c, ObjId x);

// Connected-component ids of the underlying graph, dense and ordered by the
// smallest object in each component. For a groupoid these are the
// isomorphism classes.
std::vector<ObjId> component_ids(const FinCategory& c);

// The full subcategory on the given objects (strictly increasing ambient
// ids). Sub-morphisms keep their ambient order.
struct FullSubcategory {
  FinCategory category;
  std::vector<ObjId> objects;  // sub-object -> ambient object
  std::vector<MorId> mor_ids;  // sub-morphism -> ambient morphism
  FinFunctor inclusion;
};
FullSubcategory full_subcategory(const FinCategory& c, std::vector<ObjId> objects);

// The full subcategory on the smallest object of every isomorphism class
// (objects are isomorphic when some morphism between them is invertible).
FullSubcategory skeleton(const FinCategory& c);

// Backtracking search for an isomorphism of categories; nullopt means proven
// impossible, Error means the node budget ran out first.
std::optional<FinFunctor> search_cat_iso(const FinCategory& a, const FinCategory& b,
                                         std::uint64_t node_budget = 1u << 22);

// Equivalence existence, decided by comparing skeletons up to isomorphism.
// Independent of any particular comparison functor.
bool equivalent_categories(const FinCategory& a, const FinCategory& b);

// Quotient by a congruence. `pairs` lists parallel morphisms to identify; the
// reflexive-symmetric-transitive closure is taken automatically, but failure
// of compatibility with composition is rejected with a witness triple.
struct QuotientResult {
  FinCategory category;
  FinFunctor projection;
};
QuotientResult quotient_by_congruence(const FinCategory& c,
                                      const std::vector<std::pair<MorId, MorId>>& pairs);

// Composable chains (f_1, ..., f_k) with tgt(f_i) = src(f_{i+1}), ordered
// lexicographically by morphism ids; length 0 gives one empty chain per
// object, ordered by object. The workhorse behind nerves and classifying
// diagrams.
std::vector<std::vector<MorId>> composable_chains(const FinCategory& c, int length);

}  // namespace twarrow::fincat
