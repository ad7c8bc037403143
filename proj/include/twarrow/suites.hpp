#pragma once

#include <string>
#include <vector>

#include "twarrow/formats.hpp"

// Named check suites: each one sweeps a family of structural claims at a
// configurable scale and reports per-check verdicts with witnesses. Two
// suites are input-free embedding sweeps; the rest run over a space built
// from a recipe file.
namespace twarrow::suites {

// One verdict inside a suite run.
struct SuiteCheck {
  std::string name;
  bool pass = false;
  std::string witness;  // first counterexample, empty on pass
  std::string detail;   // counts or bounds worth echoing, may be empty
};

// A full suite run; `pass` is the conjunction of the checks.
struct SuiteReport {
  std::string suite;
  std::vector<SuiteCheck> checks;
  bool pass = true;
};

// Sweep bounds. n_max bounds the simplicial degree under test, k_max the
// levels swept by the embedding suites.
struct SuiteOptions {
  int n_max = 4;
  int k_max = 9;
};

// The available suites, in canonical order.
const std::vector<std::string>& suite_names();

// Whether the suite consumes an input space recipe. Throws Error on an
// unknown name.
bool suite_needs_space(const std::string& suite);

// Runs one suite. `recipe` may be null for the input-free suites; a space
// suite with a null recipe throws Error, as does an unknown name. Truncation
// requirements of the underlying constructions surface as TruncationError.
SuiteReport run_suite(const std::string& suite, const formats::SpaceRecipe* recipe,
                      const SuiteOptions& opts = {});

}  // namespace twarrow::suites
