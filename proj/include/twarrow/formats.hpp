#pragma once

#include <string>
#include <vector>

#include "twarrow/common.hpp"
#include "twarrow/fincat.hpp"
#include "twarrow/gss.hpp"
#include "twarrow/sset.hpp"

// Text formats for categories, truncated simplicial sets, and
// groupoid-valued-space recipes. Identifiers in the files are strings; they
// map to dense indices in declaration order, and the serializers always emit
// the canonical order (dense index order), so parse(serialize(x)) == x.
//
// Category schema (.cat):
//   category
//   object <name>
//   identity <name> : <object>            -- optional; missing identities are
//                                            appended at the end, one per
//                                            object, named id(<object>)
//   morphism <name> : <src> -> <tgt>
//   compose <g> . <f> = <h>               -- required for every composable
//                                            pair of non-identity morphisms
// Morphism ids are assigned in line order across `identity` and `morphism`
// lines. An object's identity can always be referenced as id(<object>).
//
// Simplicial-set schema (.sset):
//   sset trunc <T>
//   cells <n> : <name> <name> ...         -- at most one line per level
//   face <n> <i> <cell> = <cell>          -- d_i, exactly once per entry
//   degen <n> <i> <cell> = <cell>         -- s_i, exactly once per entry
//
// Space-recipe schema (.gss):
//   gss <classifying-diagram|discrete-nerve> trunc <T>
//   <category schema body>
//
// `#` starts a comment anywhere in a line; blank lines are ignored.
namespace twarrow::formats {

// A category with printable names for its objects and morphisms (identities
// included). Names are unique within their kind.
struct NamedCategory {
  fincat::FinCategory category;
  std::vector<std::string> objects;    // [ObjId]
  std::vector<std::string> morphisms;  // [MorId]

  bool operator==(const NamedCategory&) const = default;
};

// A truncated simplicial set with printable names for its cells; names are
// unique within each level.
struct NamedSSet {
  sset::FinSimplicialSet sset;
  std::vector<std::vector<std::string>> names;  // [level][cell]

  bool operator==(const NamedSSet&) const = default;
};

// A recipe for building a groupoid-valued space from a category.
struct SpaceRecipe {
  enum class Kind { classifying_diagram, discrete_nerve };

  Kind kind = Kind::classifying_diagram;
  int trunc = 0;
  NamedCategory category;

  bool operator==(const SpaceRecipe&) const = default;
};

// Generated names, zero-padded so that name order equals index order:
// objects x0..., non-identity morphisms f0..., identities id(<object>),
// cells c0... per level.
NamedCategory name_category(const fincat::FinCategory& c);
NamedSSet name_sset(const sset::FinSimplicialSet& s);

// Generated morphism names over caller-supplied object names (one per
// object, whitespace-free and distinct).
NamedCategory name_category_with(const fincat::FinCategory& c,
                                 std::vector<std::string> object_names);

// Document kind, sniffed from the first significant token.
enum class DocKind { category, sset, space };
DocKind sniff_kind(const std::string& text);

std::string serialize_category(const NamedCategory& c);
NamedCategory parse_category(const std::string& text);

std::string serialize_sset(const NamedSSet& s);
NamedSSet parse_sset(const std::string& text);

std::string serialize_space(const SpaceRecipe& r);
SpaceRecipe parse_space(const std::string& text);

// Runs the recipe: the classifying diagram of the category, or the discrete
// embedding of its nerve, truncated at the recipe's level.
gss::GroupoidSimplicialSpace build_space(const SpaceRecipe& r);

}  // namespace twarrow::formats
