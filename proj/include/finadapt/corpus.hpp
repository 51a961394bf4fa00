#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "finadapt/model.hpp"

namespace finadapt {

// How a recorded value is certified by the test suites.
enum class KnownValueCheck {
  Solver,             // the named solver reproduces the value
  ScenarioOracle,     // scenario lower bound + reference solution pin it
  ReferenceSolution,  // a stored solution passes the verification oracle
  Analytic,           // recorded for documentation; no machine check
};

struct KnownValue {
  std::string method;  // "adapt1", "enum2", "comp", ...
  int k = 1;
  std::optional<double> value;  // nullopt = Infeasible
  KnownValueCheck check = KnownValueCheck::Solver;
  std::string provenance;
};

struct CorpusEntry {
  Instance instance;
  std::vector<KnownValue> known_values;
  std::vector<Solution> reference_solutions;
};

// Built-in instances: "P", "Q", "R", "interval", "square", "triangle", "detb".
// Throws UnknownInstance for anything else.
CorpusEntry get_instance(const std::string& name);

std::vector<std::string> corpus_names();

// Deterministic random instance with deterministic A and B, a bounded-range
// affine b, and a random uncertainty polytope with at most 5 vertices.
Instance generate_random(unsigned seed, int dim, int rows);

}  // namespace finadapt
