#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "twarrow/delta.hpp"
#include "twarrow/fincat.hpp"

// Truncated simplicial sets with explicit face/degeneracy tables, the
// constructions the rest of the library runs on (standard simplices,
// boundaries, nerves, products, quotients, the twisted edge complex), and an
// isomorphism search used to compare results of independent constructions.
namespace twarrow::sset {

using Cell = std::uint32_t;

class FinSimplicialSet {
 public:
  FinSimplicialSet() = default;

  // faces[n][i] maps level-n cells to level n-1 (1 <= n <= trunc, 0 <= i <= n);
  // degens[n][i] maps level-n cells to level n+1 (0 <= n < trunc, 0 <= i <= n).
  // faces[0] and degens[trunc] must be empty. The simplicial identities are
  // checked on every cell; ValidationError carries the first violation.
  FinSimplicialSet(int trunc, std::vector<std::uint32_t> counts,
                   std::vector<std::vector<std::vector<Cell>>> faces,
                   std::vector<std::vector<std::vector<Cell>>> degens);

  int trunc() const { return trunc_; }
  std::uint32_t count(int n) const;

  Cell face(int n, int i, Cell c) const;    // d_i: level n -> n-1
  Cell degen(int n, int i, Cell c) const;   // s_i: level n -> n+1

  // The contravariant action of op: [m] -> [n] on a level-n cell, landing at
  // level m. Generator words come from the unique epi-mono factorization.
  Cell act(const delta::SimplexMap& op, Cell c) const;

  bool is_degenerate(int n, Cell c) const;
  std::vector<Cell> nondegenerate(int n) const;

  // Re-runs the constructor checks; nullopt when everything holds.
  std::optional<std::string> validate() const;

  bool operator==(const FinSimplicialSet& other) const = default;

 private:
  int trunc_ = -1;
  std::vector<std::uint32_t> counts_;
  std::vector<std::vector<std::vector<Cell>>> faces_;
  std::vector<std::vector<std::vector<Cell>>> degens_;
};

// A levelwise cell map defined for levels 0..trunc of its source.
struct SSetMorphism {
  std::vector<std::vector<Cell>> level;

  bool operator==(const SSetMorphism& other) const = default;
};

// Checks sizes, ranges and commutation with every face and degeneracy.
std::optional<std::string> validate_morphism(const FinSimplicialSet& source,
                                             const FinSimplicialSet& target,
                                             const SSetMorphism& f);

bool is_iso(const FinSimplicialSet& source, const FinSimplicialSet& target,
            const SSetMorphism& f);

SSetMorphism identity_morphism(const FinSimplicialSet& s);
SSetMorphism compose_morphisms(const SSetMorphism& f, const SSetMorphism& g);  // f . g

// The standard n-simplex: level-k cells are monotone maps [k] -> [n] in
// lexicographic order, so cell ids are delta::lex_rank values.
FinSimplicialSet standard_simplex(int n, int trunc);

struct SubSSet {
  FinSimplicialSet subset;
  SSetMorphism inclusion;  // into standard_simplex(n, trunc)
};

// The boundary of the standard n-simplex: the non-surjective maps [k] -> [n].
SubSSet boundary(int n, int trunc);

// The spine of the standard n-simplex: maps whose image lies in some {i, i+1}.
SubSSet spine(int n, int trunc);

struct CoproductSSet {
  FinSimplicialSet sset;
  std::vector<SSetMorphism> inclusions;
};
CoproductSSet coproduct(const std::vector<const FinSimplicialSet*>& parts);

struct ProductSSet {
  FinSimplicialSet sset;
  SSetMorphism pr1, pr2;  // cell (a, b) has id a * second.count(n) + b
};
ProductSSet product(const FinSimplicialSet& a, const FinSimplicialSet& b);

// The map (f, g): X -> A x B induced by f: X -> A and g: X -> B.
SSetMorphism pair_into_product(const FinSimplicialSet& x, const FinSimplicialSet& a,
                               const FinSimplicialSet& b, const SSetMorphism& f,
                               const SSetMorphism& g);

struct QuotientSSet {
  FinSimplicialSet sset;
  SSetMorphism projection;
};

// Coequalizer of f, g: X -> Y, computed levelwise; class ids are ordered by
// their smallest member, so the result is deterministic.
QuotientSSet coequalizer(const FinSimplicialSet& x, const FinSimplicialSet& y,
                         const SSetMorphism& f, const SSetMorphism& g);

struct PushoutSSet {
  FinSimplicialSet sset;
  SSetMorphism from_first;   // B -> pushout
  SSetMorphism from_second;  // C -> pushout
};

// Pushout of B <- A -> C along f: A -> B, g: A -> C.
PushoutSSet pushout(const FinSimplicialSet& a, const FinSimplicialSet& b,
                    const FinSimplicialSet& c, const SSetMorphism& f, const SSetMorphism& g);

FinSimplicialSet truncate(const FinSimplicialSet& s, int trunc);

// Same cells, face and degeneracy indices reversed: d_i becomes d_{n-i}.
FinSimplicialSet op_sset(const FinSimplicialSet& s);

// The nerve of a finite category: level-n cells are composable n-chains in
// the order composable_chains produces, level-0 cells are the objects.
struct Nerve {
  FinSimplicialSet sset;
  // chains[n][cell] is the chain behind the cell; chains[0] holds one empty
  // chain per object.
  std::vector<std::vector<std::vector<fincat::MorId>>> chains;

  Cell rank(int n, const std::vector<fincat::MorId>& chain) const;
};
Nerve nerve(const fincat::FinCategory& c, int trunc);

// The simplicial map N(F) between nerves induced by a functor.
SSetMorphism nerve_map(const Nerve& source, const Nerve& target, const fincat::FinFunctor& f);

// The twisted edge complex: level n is level 2n+1 of s, operators act through
// the join-duplication of the indexing map. Requires s.trunc() >= 2*trunc+1.
FinSimplicialSet tw_sset(const FinSimplicialSet& s, int trunc);

// tw_sset together with its two projections (first leg reverses orientation).
struct TwProjections {
  FinSimplicialSet tw;
  FinSimplicialSet op_base;  // op_sset(truncate(s, trunc))
  FinSimplicialSet base;     // truncate(s, trunc)
  SSetMorphism to_op_base;
  SSetMorphism to_base;
};
TwProjections tw_projections(const FinSimplicialSet& s, int trunc);

// Backtracking search for a simplicial isomorphism. Returns nullopt when the
// sets are provably non-isomorphic; throws Error when the node budget runs
// out before the search is decided.
std::optional<SSetMorphism> find_iso(const FinSimplicialSet& a, const FinSimplicialSet& b,
                                     std::uint64_t node_budget = 1u << 22);

// Same search restricted to isomorphisms over a common base: requires
// pb . result = pa for pa: a -> base, pb: b -> base.
std::optional<SSetMorphism> find_iso_over(const FinSimplicialSet& a, const FinSimplicialSet& b,
                                          const SSetMorphism& pa, const SSetMorphism& pb,
                                          std::uint64_t node_budget = 1u << 22);

}  // namespace twarrow::sset
