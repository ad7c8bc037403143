#pragma once

#include <string>
#include <vector>

#include "twarrow/fincat.hpp"

// The fixture zoo: the small categories every test suite and check runs over.
// Each builder documents its object/morphism numbering, since ids are load
// bearing for frozen expected values.
namespace twarrow::fixtures {

// One object, its identity.
fincat::FinCategory terminal_category();

// The poset 0 < 1 < ... < n; morphisms are the pairs (i, j) with i <= j,
// ordered lexicographically. chain_category(1) is the walking arrow.
fincat::FinCategory chain_category(int n);

// The poset [1] x [1] (a commuting square).
fincat::FinCategory square_category();

// b <- a -> c: objects a=0, b=1, c=2.
fincat::FinCategory span_category();

// b -> d <- c: objects b=0, c=1, d=2.
fincat::FinCategory cospan_category();

// n objects, identities only.
fincat::FinCategory discrete_category(int n);

// Two objects 0, 1 and a pair of mutually inverse arrows between them.
fincat::FinCategory walking_iso();

// Two parallel arrows 0 -> 1.
fincat::FinCategory parallel_pair();

// One object, morphisms {id, e} with e.e = e.
fincat::FinCategory idempotent_monoid();

// One object, morphisms {id, t} with t.t = id.
fincat::FinCategory involution_group();

// Names under which the zoo is exposed (CLI fixture lookup and test loops):
// terminal, arrow, chain2, chain3, square, span, cospan, discrete2,
// parallel, idem, iso, involution.
const std::vector<std::string>& zoo_names();
fincat::FinCategory zoo_category(const std::string& name);

// The sub-list of zoo names whose classifying diagrams stay thin (everything
// except `involution`, whose levels outgrow both storage modes at deep
// truncations).
const std::vector<std::string>& thin_zoo_names();

}  // namespace twarrow::fixtures
