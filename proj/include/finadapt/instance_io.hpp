#pragma once

#include <string>
#include <vector>

#include "finadapt/model.hpp"
#include "finadapt/verify.hpp"

namespace finadapt {

// JSON wire format. Keys: name, omega_vertices, c, d, A, B, b, x_bounds,
// y_bounds, x_integer, y_integer. Affine maps carry "const" and "coeffs"
// (one term per uncertainty coordinate); bounds entries are [lo, hi] with
// null meaning unbounded. Parse failures throw ParseError with a field
// diagnostic.
Instance parse_instance_json(const std::string& text);
Instance load_instance_file(const std::string& path);
std::string instance_to_json(const Instance& inst);

struct SolutionFileData {
  Solution solution;
  int k = 1;
  std::string method;
  double objective = 0.0;
};

std::string solution_to_json(const Instance& inst, const Solution& sol,
                             const CoverCertificate* certificate);
SolutionFileData parse_solution_json(const std::string& text);
SolutionFileData load_solution_file(const std::string& path);

// Scenario file: a JSON array of points (arrays of numbers).
std::vector<Eigen::VectorXd> parse_scenarios_json(const std::string& text);
std::vector<Eigen::VectorXd> load_scenarios_file(const std::string& path);

std::string read_text_file(const std::string& path);   // throws ParseError
void write_text_file(const std::string& path, const std::string& content);

}  // namespace finadapt
