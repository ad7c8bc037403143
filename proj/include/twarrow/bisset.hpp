#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twarrow/delta.hpp"
#include "twarrow/sset.hpp"

// Truncated bisimplicial sets (one categorical direction n, one spatial
// direction l) with explicit action tables, finite cell-complex presentations
// with union-find evaluation, the twisted boundary and corner complexes, and
// mapping simplicial sets out of presentations.
namespace twarrow::bisset {

using Cell = std::uint32_t;

class FinBiSimplicialSet {
 public:
  FinBiSimplicialSet() = default;

  // counts[n][l]; faces_n[n][l][i] maps (n,l)-cells to (n-1,l), degens_n[n][l][i]
  // to (n+1,l); faces_l[n][l][i] to (n,l-1), degens_l[n][l][i] to (n,l+1).
  // Border rows (faces at 0, degens at the truncation) must be empty. The
  // constructor checks shapes and ranges; validate() checks the identities.
  FinBiSimplicialSet(int trunc_n, int trunc_l, std::vector<std::vector<std::uint32_t>> counts,
                     std::vector<std::vector<std::vector<std::vector<Cell>>>> faces_n,
                     std::vector<std::vector<std::vector<std::vector<Cell>>>> degens_n,
                     std::vector<std::vector<std::vector<std::vector<Cell>>>> faces_l,
                     std::vector<std::vector<std::vector<std::vector<Cell>>>> degens_l);

  int trunc_n() const { return trunc_n_; }
  int trunc_l() const { return trunc_l_; }
  std::uint32_t count(int n, int l) const;

  Cell face_n(int n, int l, int i, Cell c) const;
  Cell degen_n(int n, int l, int i, Cell c) const;
  Cell face_l(int n, int l, int i, Cell c) const;
  Cell degen_l(int n, int l, int i, Cell c) const;

  // Contravariant action of the operator pair (op_n: [m] -> [n],
  // op_l: [j] -> [l]) on an (n,l)-cell, landing at (m,j).
  Cell act(const delta::SimplexMap& op_n, const delta::SimplexMap& op_l, Cell c) const;

  // Simplicial identities in both directions plus commutation of the two
  // directions' generators; nullopt when everything holds.
  std::optional<std::string> validate() const;

  bool operator==(const FinBiSimplicialSet& other) const = default;

 private:
  int trunc_n_ = -1, trunc_l_ = -1;
  std::vector<std::vector<std::uint32_t>> counts_;
  std::vector<std::vector<std::vector<std::vector<Cell>>>> faces_n_, degens_n_, faces_l_,
      degens_l_;
};

// The bisimplicial set represented by ([n], [l]): (k,j)-cells are pairs of
// monotone maps ([k] -> [n], [j] -> [l]), with cell id
// lex_rank(first) * |Hom([j],[l])| + lex_rank(second).
FinBiSimplicialSet representable(int n, int l, int trunc_n, int trunc_l);

FinBiSimplicialSet empty_bisset(int trunc_n, int trunc_l);

// A simplicial set spread constantly along the spatial direction: level (n,l)
// is S_n with the categorical actions of S and trivial spatial actions. Each
// categorical level is the discrete space on S_n.
FinBiSimplicialSet discrete_embedding(const sset::FinSimplicialSet& s, int trunc_l);

// A simplicial set spread constantly along the categorical direction: level
// (n,l) is S_l.
FinBiSimplicialSet constant_space(const sset::FinSimplicialSet& s, int trunc_n);

// Twisted bisimplicial set: level (n,l) is (2n+1,l) of w, categorical
// operators act through their join-duplications, spatial actions untouched.
// Requires w.trunc_n() >= 2*trunc + 1.
FinBiSimplicialSet tw_bisset(const FinBiSimplicialSet& w, int trunc);

// ---------------------------------------------------------------------------
// Cell-complex presentations: finite colimits of representables, evaluated
// levelwise by union-find.

struct GeneratorShape {
  int n = 0, l = 0;

  bool operator==(const GeneratorShape& other) const = default;
};

// One leg of a relation: the representable of the relation's shape maps into
// generator `gen` along the operator pair (op_n, op_l).
struct Attachment {
  std::size_t gen = 0;
  delta::SimplexMap op_n, op_l;

  bool operator==(const Attachment& other) const = default;
};

// Identifies the two images of the shape representable.
struct Relation {
  GeneratorShape shape;
  Attachment left, right;

  bool operator==(const Relation& other) const = default;
};

// Map of a generator into the ambient representable.
struct AmbientMap {
  delta::SimplexMap op_n, op_l;

  bool operator==(const AmbientMap& other) const = default;
};

struct CellComplexPresentation {
  std::vector<GeneratorShape> generators;
  std::vector<Relation> relations;
  // When set: the shape of an ambient representable plus one map per
  // generator; relations must commute with these (checked on evaluation).
  std::optional<GeneratorShape> ambient;
  std::vector<AmbientMap> ambient_maps;

  bool operator==(const CellComplexPresentation& other) const = default;
};

// The presentation with one generator ([n],[l]) and itself as ambient.
CellComplexPresentation representable_presentation(int n, int l);

// The chain of n edge generators glued end to end, ambient in F(n).
CellComplexPresentation spine_presentation(int n);

// The boundary of F(n): one copy of F(n-1) per face of [n], glued along
// copies of F(n-2) by the face identities, ambient in F(n). F(-1) is the
// empty object, so boundary_presentation(0) has no generators and
// boundary_presentation(1) has no relations.
CellComplexPresentation boundary_presentation(int n);

// Applies the twist to a presentation: generator and ambient categorical
// degrees n become 2n+1 and every categorical operator becomes its
// join-duplication; spatial data is untouched. This is the colimit-level
// twist, which sends representables to representables — the levelwise
// reindexing tw_bisset is its right adjoint, and the two agree through
// mapping_sset (see the adjunction tests).
CellComplexPresentation tw_presentation(const CellComplexPresentation& p);

// The twisted boundary: tw_presentation(boundary_presentation(n)), ambient in
// F(2n+1). Each generator i covers the image of the join-duplicated face i,
// omitting the vertex pair {n-i, n+1+i}.
CellComplexPresentation twisted_boundary_presentation(int n);

// The corner complex of degree k: the twisted boundary of degree k glued to
// two copies of F(k) — the two blocks of [2k+1] — along their boundaries.
// The attaching maps are found by factoring each block-face composite through
// a twisted-boundary generator; the factorization is asserted unique. Ambient
// in F(2k+1).
CellComplexPresentation corner_presentation(int k);

// The canonical cell presentation of a truncated simplicial set: one
// spatially constant generator per nondegenerate cell, one relation per
// generator face locating the face's unique nondegenerate root. No ambient.
// Evaluating it rebuilds the simplicial set up to levelwise bijection.
CellComplexPresentation cell_presentation(const sset::FinSimplicialSet& s);

// The simplicial set sitting at spatial degree 0.
sset::FinSimplicialSet underlying_sset(const FinBiSimplicialSet& w);

// One evaluated level (k,j) of a presentation: classes of cells
// (generator, op pair into it), ordered by smallest flat index
// offset[gen] + lex_rank(op_n) * |Hom([j],[l_gen])| + lex_rank(op_l).
struct EvaluatedLevel {
  std::vector<std::size_t> offset;        // per generator, into the flat index
  std::vector<Cell> class_of;             // flat index -> class
  std::vector<std::size_t> rep;           // class -> representative flat index
  std::uint32_t class_count = 0;
  // class -> cell of the ambient representable at (k,j); filled when the
  // presentation has an ambient. Evaluation throws ValidationError if two
  // identified cells disagree in the ambient.
  std::vector<Cell> ambient_image;
};
EvaluatedLevel evaluate_level(const CellComplexPresentation& p, int k, int j);

// The whole evaluated complex as a bisimplicial set, with the induced map to
// the ambient representable when one is present (to_ambient[n][l][class]).
struct EvaluatedComplex {
  FinBiSimplicialSet bisset;
  std::vector<std::vector<std::vector<Cell>>> to_ambient;
};
EvaluatedComplex evaluate(const CellComplexPresentation& p, int trunc_n, int trunc_l);

// Whether the evaluated-to-ambient map is injective on every level (k,j)
// with k <= k_max (and j <= k_max when any spatial degree is positive;
// spatially constant presentations only need j = 0).
struct InjectivityReport {
  bool injective = false;
  std::string witness;
};
InjectivityReport levelwise_injectivity(const CellComplexPresentation& p, int k_max);

// The mapping simplicial set Map(A, W): level l is the set of generator
// tuples (x_g in W at (n_g, l)) satisfying the relation constraints, in
// lexicographic order; spatial actions of W act componentwise. Requires
// every generator and relation shape of A to be spatially constant (l = 0).
sset::FinSimplicialSet mapping_sset(const CellComplexPresentation& a,
                                    const FinBiSimplicialSet& w, int trunc);

}  // namespace twarrow::bisset
