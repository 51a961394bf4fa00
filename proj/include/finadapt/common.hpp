#pragma once

#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>

namespace finadapt {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Shared tolerance bundle. One instance is threaded through every module so
// that a single override (e.g. the FINADAPT_TOL environment variable) affects
// the whole pipeline consistently.
struct Tolerances {
  double feasibility = 1e-7;
  double optimality = 1e-7;
  double duality = 1e-7;
  double integrality = 1e-6;

  static Tolerances defaults() { return Tolerances{}; }

  // Reads FINADAPT_TOL; when set, the value replaces every field.
  static Tolerances from_env() {
    Tolerances t;
    if (const char* s = std::getenv("FINADAPT_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end != s && v > 0) {
        t.feasibility = t.optimality = t.duality = t.integrality = v;
      }
    }
    return t;
  }
};

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct MalformedProgram : Error {
  using Error::Error;
};
struct IterationLimit : Error {
  using Error::Error;
};
struct NodeLimit : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct TooLarge : Error {
  using Error::Error;
};
struct DegenerateInput : Error {
  using Error::Error;
};
struct OutOfRange : Error {
  using Error::Error;
};
struct RequiresDeterministicAB : Error {
  using Error::Error;
};
struct NotOneDimensional : Error {
  using Error::Error;
};
struct NotTwoDimensional : Error {
  using Error::Error;
};
struct ScenarioOutsideOmega : Error {
  using Error::Error;
};
struct CombinatorialBudgetExceeded : Error {
  using Error::Error;
};
struct UnknownInstance : Error {
  using Error::Error;
};
struct ParseError : Error {
  using Error::Error;
};
struct BigMTooSmall : Error {
  using Error::Error;
};

}  // namespace finadapt
