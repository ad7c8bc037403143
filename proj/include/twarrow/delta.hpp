#pragma once

#include <string>
#include <vector>

#include "twarrow/common.hpp"

// Arithmetic of the simplex category: monotone maps between finite ordinals
// [n] = {0 < 1 < ... < n}, their generators and factorizations, and the
// join-with-opposite endofunctor Q([n]) = [n]^op * [n] = [2n+1] that drives
// every twisted construction downstream.
namespace twarrow::delta {

// A monotone map [m] -> [n], stored as its value sequence. Equality is value
// equality, so every identity between operators is decidable by comparing
// normal forms.
class SimplexMap {
 public:
  SimplexMap(int cod, std::vector<int> values);

  int dom() const { return static_cast<int>(values_.size()) - 1; }
  int cod() const { return cod_; }
  int operator()(int i) const;
  const std::vector<int>& values() const { return values_; }

  bool is_identity() const;
  bool is_injective() const;
  bool is_surjective() const;

  bool operator==(const SimplexMap& other) const = default;
  bool operator<(const SimplexMap& other) const;

  std::string str() const;  // "[m]->[n]: (v0,...,vm)"

 private:
  int cod_;
  std::vector<int> values_;
};

SimplexMap identity_map(int n);

// Composite f . g (apply g first). Requires g.cod() == f.dom().
SimplexMap compose(const SimplexMap& f, const SimplexMap& g);

// Coface d^i : [n-1] -> [n], the injection skipping i. Requires n >= 1.
SimplexMap face(int n, int i);

// Codegeneracy s^i : [n+1] -> [n], the surjection repeating i.
SimplexMap degeneracy(int n, int i);

// Unique epi-mono factorization f = injection . surjection.
struct EzFactorization {
  SimplexMap surjection;  // [dom] ->> [rank]
  SimplexMap injection;   // [rank] >-> [cod]
};
EzFactorization ez_factorize(const SimplexMap& f);

// Word of coface indices (strictly decreasing), w[0] outermost:
//   injection == compose(face(cod, w[0]), compose(face(cod-1, w[1]), ...)).
std::vector<int> face_word(const SimplexMap& injection);

// Word of codegeneracy indices (non-decreasing, read off the plateaus of the
// value sequence), w.back() outermost:
//   surjection == compose(degeneracy(rank, w[k-1]), ... compose(..., w[0])).
std::vector<int> degeneracy_word(const SimplexMap& surjection);

// The twist on objects: Q([n]) = [n]^op * [n] = [2n+1].
int q_object(int n);

// The twist on operators. For a : [m] -> [n],
//   Q(a)(i)       = n - a(m - i)      for 0 <= i <= m   (opposite block)
//   Q(a)(m+1+j)   = n + 1 + a(j)      for 0 <= j <= m   (direct block)
SimplexMap q_map(const SimplexMap& a);

// The opposite involution: op(a)(i) = a.cod - a(a.dom - i).
SimplexMap op_map(const SimplexMap& a);

// Block inclusions [n] -> [2n+1] picking out the two join factors:
// left is i |-> i (the opposite block), right is j |-> n+1+j.
SimplexMap block_inclusion_left(int n);
SimplexMap block_inclusion_right(int n);

// All monotone maps [dom] -> [cod] in lexicographic order of value
// sequences. Empty when cod < 0 (the empty ordinal receives no maps).
// Requires dom >= 0.
std::vector<SimplexMap> all_maps(int dom, int cod);

// |Hom([dom], [cod])| without enumerating.
std::uint64_t count_maps(int dom, int cod);

// Position of f in all_maps(f.dom(), f.cod()), computed combinatorially.
std::uint64_t lex_rank(const SimplexMap& f);

}  // namespace twarrow::delta
