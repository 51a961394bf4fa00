#include "finadapt/instance_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "finadapt/solvers.hpp"

namespace finadapt {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw ParseError("instance file: field '" + field + "': " + what);
}

Eigen::VectorXd parse_vector(const json& j, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of numbers");
  Eigen::VectorXd v(static_cast<int>(j.size()));
  int i = 0;
  for (const auto& e : j) {
    if (!e.is_number()) fail(field, "expected a number");
    v[i++] = e.get<double>();
  }
  return v;
}

Eigen::MatrixXd parse_matrix(const json& j, int expected_cols, const std::string& field) {
  if (!j.is_array()) fail(field, "expected an array of rows");
  const int rows = static_cast<int>(j.size());
  Eigen::MatrixXd m(rows, expected_cols);
  for (int r = 0; r < rows; ++r) {
    const auto& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != expected_cols)
      fail(field, "row " + std::to_string(r) + " must have " + std::to_string(expected_cols) +
                      " entries");
    for (int c = 0; c < expected_cols; ++c) {
      if (!row[c].is_number()) fail(field, "expected a number");
      m(r, c) = row[c].get<double>();
    }
  }
  return m;
}

AffineMap parse_affine_matrix(const json& j, int rows, int cols, int n_omega,
                              const std::string& field) {
  AffineMap map = AffineMap::constant_map(Eigen::MatrixXd::Zero(rows, cols), n_omega);
  if (j.is_null()) return map;
  if (!j.is_object()) fail(field, "expected an object with 'const' and 'coeffs'");
  if (j.contains("const")) {
    map.constant = parse_matrix(j.at("const"), cols, field + ".const");
    if (map.constant.rows() != rows)
      fail(field + ".const", "expected " + std::to_string(rows) + " rows");
  }
  if (j.contains("coeffs")) {
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n_omega)
      fail(field + ".coeffs", "expected one term per uncertainty coordinate");
    for (int t = 0; t < n_omega; ++t) {
      map.coefficients[t] =
          parse_matrix(coeffs[t], cols, field + ".coeffs[" + std::to_string(t) + "]");
      if (map.coefficients[t].rows() != rows)
        fail(field + ".coeffs", "term " + std::to_string(t) + " row count mismatch");
    }
  }
  return map;
}

AffineMap parse_affine_vector(const json& j, int rows, int n_omega, const std::string& field) {
  AffineMap map = AffineMap::constant_map(Eigen::MatrixXd::Zero(rows, 1), n_omega);
  if (j.is_null()) return map;
  if (!j.is_object()) fail(field, "expected an object with 'const' and 'coeffs'");
  if (j.contains("const")) {
    const Eigen::VectorXd v = parse_vector(j.at("const"), field + ".const");
    if (v.size() != rows) fail(field + ".const", "expected " + std::to_string(rows) + " entries");
    map.constant = v;
  }
  if (j.contains("coeffs")) {
    const auto& coeffs = j.at("coeffs");
    if (!coeffs.is_array() || static_cast<int>(coeffs.size()) != n_omega)
      fail(field + ".coeffs", "expected one term per uncertainty coordinate");
    for (int t = 0; t < n_omega; ++t) {
      const Eigen::VectorXd v =
          parse_vector(coeffs[t], field + ".coeffs[" + std::to_string(t) + "]");
      if (v.size() != rows) fail(field + ".coeffs", "term " + std::to_string(t) + " mismatch");
      map.coefficients[t] = v;
    }
  }
  return map;
}

Bounds parse_bounds(const json& j, int count, const std::string& field) {
  Bounds bounds;
  if (j.is_null()) return bounds;
  if (!j.is_array() || static_cast<int>(j.size()) != count)
    fail(field, "expected " + std::to_string(count) + " [lo, hi] pairs");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) fail(field, "expected [lo, hi] pairs");
    const double lo = e[0].is_null() ? -kInf : e[0].get<double>();
    const double hi = e[1].is_null() ? kInf : e[1].get<double>();
    bounds.push_back({lo, hi});
  }
  return bounds;
}

std::vector<int> parse_indices(const json& j, const std::string& field) {
  std::vector<int> out;
  if (j.is_null()) return out;
  if (!j.is_array()) fail(field, "expected an array of indices");
  for (const auto& e : j) {
    if (!e.is_number_integer()) fail(field, "expected integer indices");
    out.push_back(e.get<int>());
  }
  return out;
}

json vector_to_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (int c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(row);
  }
  return out;
}

json affine_matrix_to_json(const AffineMap& map) {
  json out;
  out["const"] = matrix_to_json(map.constant);
  json coeffs = json::array();
  for (const auto& term : map.coefficients) coeffs.push_back(matrix_to_json(term));
  out["coeffs"] = coeffs;
  return out;
}

json affine_vector_to_json(const AffineMap& map) {
  json out;
  out["const"] = vector_to_json(map.constant.col(0));
  json coeffs = json::array();
  for (const auto& term : map.coefficients) coeffs.push_back(vector_to_json(term.col(0)));
  out["coeffs"] = coeffs;
  return out;
}

json bounds_to_json(const Bounds& bounds) {
  json out = json::array();
  for (const auto& [lo, hi] : bounds) {
    json pair = json::array();
    if (std::isfinite(lo))
      pair.push_back(lo);
    else
      pair.push_back(nullptr);
    if (std::isfinite(hi))
      pair.push_back(hi);
    else
      pair.push_back(nullptr);
    out.push_back(pair);
  }
  return out;
}

json parse_text(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError(std::string(what) + ": invalid JSON");
  return j;
}

}  // namespace

Instance parse_instance_json(const std::string& text) {
  const json j = parse_text(text, "instance file");
  if (!j.is_object()) throw ParseError("instance file: top level must be an object");
  if (!j.contains("omega_vertices")) fail("omega_vertices", "missing");

  std::vector<Eigen::VectorXd> omega_points;
  for (const auto& e : j.at("omega_vertices"))
    omega_points.push_back(parse_vector(e, "omega_vertices"));
  if (omega_points.empty()) fail("omega_vertices", "need at least one vertex");
  const int n_omega = static_cast<int>(omega_points[0].size());

  Instance inst;
  inst.name = j.value("name", std::string("unnamed"));
  inst.c = j.contains("c") ? parse_vector(j.at("c"), "c") : Eigen::VectorXd(0);
  inst.d = j.contains("d") ? parse_vector(j.at("d"), "d") : Eigen::VectorXd(0);
  inst.omega = build_polytope(omega_points);

  if (!j.contains("b")) fail("b", "missing");
  const auto& jb = j.at("b");
  int rows = 0;
  if (jb.is_object() && jb.contains("const")) rows = static_cast<int>(jb.at("const").size());
  inst.b = parse_affine_vector(jb, rows, n_omega, "b");
  inst.A = parse_affine_matrix(j.contains("A") ? j.at("A") : json(nullptr), rows,
                               static_cast<int>(inst.c.size()), n_omega, "A");
  inst.B = parse_affine_matrix(j.contains("B") ? j.at("B") : json(nullptr), rows,
                               static_cast<int>(inst.d.size()), n_omega, "B");
  inst.x_bounds = parse_bounds(j.contains("x_bounds") ? j.at("x_bounds") : json(nullptr),
                               inst.dim_x(), "x_bounds");
  inst.y_bounds = parse_bounds(j.contains("y_bounds") ? j.at("y_bounds") : json(nullptr),
                               inst.dim_y(), "y_bounds");
  inst.x_integer =
      parse_indices(j.contains("x_integer") ? j.at("x_integer") : json(nullptr), "x_integer");
  inst.y_integer =
      parse_indices(j.contains("y_integer") ? j.at("y_integer") : json(nullptr), "y_integer");
  try {
    inst.validate();
  } catch (const DimensionMismatch& e) {
    throw ParseError(std::string("instance file: ") + e.what());
  }
  return inst;
}

std::string instance_to_json(const Instance& inst) {
  json j;
  j["name"] = inst.name;
  json verts = json::array();
  for (const auto& v : inst.omega.vertices()) verts.push_back(vector_to_json(v));
  j["omega_vertices"] = verts;
  j["c"] = vector_to_json(inst.c);
  j["d"] = vector_to_json(inst.d);
  j["A"] = affine_matrix_to_json(inst.A);
  j["B"] = affine_matrix_to_json(inst.B);
  j["b"] = affine_vector_to_json(inst.b);
  if (!inst.x_bounds.empty()) j["x_bounds"] = bounds_to_json(inst.x_bounds);
  if (!inst.y_bounds.empty()) j["y_bounds"] = bounds_to_json(inst.y_bounds);
  if (!inst.x_integer.empty()) j["x_integer"] = inst.x_integer;
  if (!inst.y_integer.empty()) j["y_integer"] = inst.y_integer;
  return j.dump(2) + "\n";
}

std::string solution_to_json(const Instance& inst, const Solution& sol,
                             const CoverCertificate* certificate) {
  json j;
  j["x"] = vector_to_json(sol.x);
  json ys = json::array();
  for (const auto& y : sol.ys) ys.push_back(vector_to_json(y));
  j["ys"] = ys;
  j["objective"] = sol.objective;
  j["method"] = to_string(sol.method);
  j["k"] = sol.k();
  if (certificate) {
    json cert;
    cert["verdict"] =
        certificate->verdict == CoverVerdict::Covered ? "Covered" : "NotCovered";
    if (certificate->witness) cert["witness"] = vector_to_json(*certificate->witness);
    cert["max_uncovered_slack"] = std::isfinite(certificate->max_uncovered_slack)
                                      ? certificate->max_uncovered_slack
                                      : 0.0;
    j["certificate"] = cert;
  }
  const std::vector<PiecePolyhedron> pieces = sol.pieces ? *sol.pieces : recover_cover(inst, sol);
  json jpieces = json::array();
  for (const auto& piece : pieces) {
    json jpiece = json::array();
    for (const auto& row : piece) {
      json jrow;
      jrow["normal"] = vector_to_json(row.normal);
      jrow["offset"] = row.offset;
      jpiece.push_back(jrow);
    }
    jpieces.push_back(jpiece);
  }
  j["pieces"] = jpieces;
  return j.dump(2) + "\n";
}

SolutionFileData parse_solution_json(const std::string& text) {
  const json j = parse_text(text, "solution file");
  if (!j.is_object()) throw ParseError("solution file: top level must be an object");
  SolutionFileData data;
  if (!j.contains("x") || !j.contains("ys")) throw ParseError("solution file: need x and ys");
  data.solution.x = parse_vector(j.at("x"), "x");
  for (const auto& y : j.at("ys")) data.solution.ys.push_back(parse_vector(y, "ys"));
  data.objective = j.value("objective", 0.0);
  data.solution.objective = data.objective;
  data.method = j.value("method", std::string("external"));
  data.k = j.value("k", static_cast<int>(data.solution.ys.size()));
  data.solution.method = SolveMethod::External;
  return data;
}

std::vector<Eigen::VectorXd> parse_scenarios_json(const std::string& text) {
  const json j = parse_text(text, "scenario file");
  if (!j.is_array()) throw ParseError("scenario file: expected an array of points");
  std::vector<Eigen::VectorXd> out;
  for (const auto& e : j) out.push_back(parse_vector(e, "scenarios"));
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

Instance load_instance_file(const std::string& path) {
  return parse_instance_json(read_text_file(path));
}

SolutionFileData load_solution_file(const std::string& path) {
  return parse_solution_json(read_text_file(path));
}

std::vector<Eigen::VectorXd> load_scenarios_file(const std::string& path) {
  return parse_scenarios_json(read_text_file(path));
}

}  // namespace finadapt
