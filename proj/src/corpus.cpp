#include "finadapt/corpus.hpp"

#include <cmath>
#include <random>

namespace finadapt {

namespace {

Eigen::VectorXd vec(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<int>(values.size()));
  int i = 0;
  for (double x : values) v[i++] = x;
  return v;
}

Polytope segment01() { return build_polytope({vec({0.0}), vec({1.0})}); }

// Row-wise builder for the affine maps of an instance.
struct InstanceBuilder {
  Instance inst;

  InstanceBuilder(std::string name, Eigen::VectorXd c, Eigen::VectorXd d, Polytope omega) {
    inst.name = std::move(name);
    inst.c = std::move(c);
    inst.d = std::move(d);
    inst.omega = std::move(omega);
    const int nw = inst.uncertainty_dim();
    inst.A = AffineMap::constant_map(Eigen::MatrixXd::Zero(0, inst.dim_x()), nw);
    inst.B = AffineMap::constant_map(Eigen::MatrixXd::Zero(0, inst.dim_y()), nw);
    inst.b = AffineMap::constant_map(Eigen::MatrixXd::Zero(0, 1), nw);
  }

  // One row  a(w) x + g(w) y <= h(w); each term splits into constant + per-omega parts.
  void add_row(const Eigen::VectorXd& a_const, const std::vector<Eigen::VectorXd>& a_coeffs,
               const Eigen::VectorXd& g_const, const std::vector<Eigen::VectorXd>& g_coeffs,
               double h_const, const Eigen::VectorXd& h_coeffs) {
    auto append = [](AffineMap& map, const Eigen::VectorXd& cst,
                     const std::vector<Eigen::VectorXd>& coeffs) {
      const int m = static_cast<int>(map.constant.rows());
      map.constant.conservativeResize(m + 1, Eigen::NoChange);
      map.constant.row(m) = cst.transpose();
      for (std::size_t j = 0; j < map.coefficients.size(); ++j) {
        map.coefficients[j].conservativeResize(m + 1, Eigen::NoChange);
        if (coeffs.empty())
          map.coefficients[j].row(m).setZero();
        else
          map.coefficients[j].row(m) = coeffs[j].transpose();
      }
    };
    append(inst.A, a_const, a_coeffs);
    append(inst.B, g_const, g_coeffs);
    Eigen::VectorXd h(1);
    h[0] = h_const;
    std::vector<Eigen::VectorXd> h_parts;
    for (int j = 0; j < h_coeffs.size(); ++j) h_parts.push_back(vec({h_coeffs[j]}));
    append(inst.b, h, h_parts);
  }

  Instance take() {
    inst.validate();
    return std::move(inst);
  }
};

CorpusEntry make_P() {
  // min x1
  //   x2 - x3 <= x1
  //   x3 <= w x4 <= x2
  //   (w + 2) y + (3 - w) x4 = 10        (split into a <=/>= pair)
  //   x >= 0, y >= 0, w in [0,1]
  InstanceBuilder builder("P", vec({1, 0, 0, 0}), vec({0}), segment01());
  const Eigen::VectorXd zx = Eigen::VectorXd::Zero(4);
  const Eigen::VectorXd zy = Eigen::VectorXd::Zero(1);
  builder.add_row(vec({-1, 1, -1, 0}), {zx}, zy, {zy}, 0.0, vec({0}));
  builder.add_row(vec({0, 0, 1, 0}), {vec({0, 0, 0, -1})}, zy, {zy}, 0.0, vec({0}));
  builder.add_row(vec({0, -1, 0, 0}), {vec({0, 0, 0, 1})}, zy, {zy}, 0.0, vec({0}));
  builder.add_row(vec({0, 0, 0, 3}), {vec({0, 0, 0, -1})}, vec({2}), {vec({1})}, 10.0, vec({0}));
  builder.add_row(vec({0, 0, 0, -3}), {vec({0, 0, 0, 1})}, vec({-2}), {vec({-1})}, -10.0,
                  vec({0}));
  Instance inst = builder.take();
  inst.x_bounds = {{0, kInf}, {0, kInf}, {0, kInf}, {0, kInf}};
  inst.y_bounds = {{0, kInf}};

  CorpusEntry entry;
  entry.instance = std::move(inst);
  entry.known_values = {
      {"comp", 1, 0.0, KnownValueCheck::Analytic,
       "optimal policy x = 0, y(w) = 10 / (w + 2); grid-certified in tests"},
      {"adapt", 1, 2.0, KnownValueCheck::ScenarioOracle,
       "reference solution is feasible at value 2; scenario bound {0, 0.5, 1} forces 2"},
      {"adapt", 2, 2.0, KnownValueCheck::ScenarioOracle, "same certificate as k = 1"},
      {"adapt", 3, 2.0, KnownValueCheck::ScenarioOracle,
       "scenario set {0, 1/3, 2/3, 1} forces 2 for three pieces"},
  };
  Solution ref;
  ref.x = vec({2, 2, 0, 2});
  ref.ys = {vec({2})};
  ref.objective = 2.0;
  ref.method = SolveMethod::External;
  entry.reference_solutions.push_back(std::move(ref));
  return entry;
}

CorpusEntry make_Q() {
  // min x1
  //   w - x1 <= y <= w + x1
  //   x1 (w - 0.1) <= x2 <= x1 (w + 0.1)
  //   x1, x2, y in [0,1], w in [0,1]
  InstanceBuilder builder("Q", vec({1, 0}), vec({0}), segment01());
  const Eigen::VectorXd zx = Eigen::VectorXd::Zero(2);
  const Eigen::VectorXd zy = Eigen::VectorXd::Zero(1);
  builder.add_row(vec({-1, 0}), {zx}, vec({-1}), {zy}, 0.0, vec({-1}));
  builder.add_row(vec({-1, 0}), {zx}, vec({1}), {zy}, 0.0, vec({1}));
  builder.add_row(vec({-0.1, -1}), {vec({1, 0})}, zy, {zy}, 0.0, vec({0}));
  builder.add_row(vec({-0.1, 1}), {vec({-1, 0})}, zy, {zy}, 0.0, vec({0}));
  Instance inst = builder.take();
  inst.x_bounds = {{0, 1}, {0, 1}};
  inst.y_bounds = {{0, 1}};

  CorpusEntry entry;
  entry.instance = std::move(inst);
  entry.known_values = {
      {"comp", 1, 0.0, KnownValueCheck::Analytic,
       "optimal policy x = 0, y(w) = w; grid-certified in tests"},
      {"adapt", 1, std::nullopt, KnownValueCheck::ScenarioOracle, "scenario set {0, 1}"},
      {"adapt", 2, std::nullopt, KnownValueCheck::ScenarioOracle, "scenario set {0, 1/2, 1}"},
      {"adapt", 3, std::nullopt, KnownValueCheck::ScenarioOracle,
       "scenario set {0, 1/3, 2/3, 1}: four required values for three pieces"},
  };
  return entry;
}

CorpusEntry make_R() {
  // Feasibility problem with binary second stage on the diamond:
  //   (w2 - w1) y <= 1 - w1
  //   (w1 - w2) y <= 1 + w1
  //   y in {0, 1}, k = 2
  Polytope diamond =
      build_polytope({vec({-2, 0}), vec({0, -2}), vec({2, 0}), vec({0, 2})});
  InstanceBuilder builder("R", Eigen::VectorXd(0), vec({0}), std::move(diamond));
  const Eigen::VectorXd zx(0);
  builder.add_row(zx, {zx, zx}, vec({0}), {vec({-1}), vec({1})}, 1.0, vec({-1, 0}));
  builder.add_row(zx, {zx, zx}, vec({0}), {vec({1}), vec({-1})}, 1.0, vec({1, 0}));
  Instance inst = builder.take();
  inst.y_bounds = {{0, 1}};
  inst.y_integer = {0};

  CorpusEntry entry;
  entry.instance = std::move(inst);
  entry.known_values = {
      {"adapt", 2, 0.0, KnownValueCheck::ReferenceSolution,
       "(y1, y2) = (0, 1) with the two hexagonal pieces"},
      {"adapt", 1, std::nullopt, KnownValueCheck::ScenarioOracle,
       "scenario set {(-2,0), (2,0), (0,2)} with binary y"},
  };
  Solution ref;
  ref.x = Eigen::VectorXd(0);
  ref.ys = {vec({0}), vec({1})};
  ref.objective = 0.0;
  ref.method = SolveMethod::External;
  entry.reference_solutions.push_back(std::move(ref));
  return entry;
}

CorpusEntry make_interval() {
  // w in [0,1]; scalar y with  w <= y <= w + 0.5; objective max y.
  InstanceBuilder builder("interval", Eigen::VectorXd(0), vec({1}), segment01());
  const Eigen::VectorXd zx(0);
  builder.add_row(zx, {zx}, vec({-1}), {vec({0})}, 0.0, vec({-1}));
  builder.add_row(zx, {zx}, vec({1}), {vec({0})}, 0.5, vec({1}));
  Instance inst = builder.take();

  CorpusEntry entry;
  entry.instance = std::move(inst);
  entry.known_values = {
      {"adapt", 1, std::nullopt, KnownValueCheck::Solver, "needs y >= 1 and y <= 0.5"},
      {"adapt", 2, 1.0, KnownValueCheck::Solver, "breakpoint 0.5, y = (0.5, 1)"},
      {"adapt", 3, 1.0, KnownValueCheck::Solver, "third piece is redundant"},
      {"comp", 1, 1.0, KnownValueCheck::Solver, "y(w) = w"},
  };
  return entry;
}

CorpusEntry make_square() {
  Polytope square = build_polytope({vec({0, 0}), vec({1, 0}), vec({1, 1}), vec({0, 1})});
  InstanceBuilder builder("square", Eigen::VectorXd(0), vec({1}), std::move(square));
  const Eigen::VectorXd zx(0);
  builder.add_row(zx, {zx, zx}, vec({-1}), {vec({0}), vec({0})}, 0.0, vec({-1, -1}));
  builder.add_row(zx, {zx, zx}, vec({1}), {vec({0}), vec({0})}, 1.5, vec({1, 1}));
  Instance inst = builder.take();

  CorpusEntry entry;
  entry.instance = std::move(inst);
  entry.known_values = {
      {"adapt", 1, std::nullopt, KnownValueCheck::Solver, "y >= 2 at (1,1), y <= 1.5 at (0,0)"},
      {"adapt", 2, 2.0, KnownValueCheck::Solver, "split along the diagonal sum"},
      {"comp", 1, 2.0, KnownValueCheck::Solver, "y(w) = w1 + w2"},
  };
  return entry;
}

CorpusEntry make_triangle() {
  // g(w) = w1 + 2 w2 ranges over [0, 2]; each piece carries a g-range of at
  // most 0.8, so two pieces cannot cover it and three can, at value 1.6.
  Polytope triangle = build_polytope({vec({0, 0}), vec({1, 0}), vec({0, 1})});
  InstanceBuilder builder("triangle", Eigen::VectorXd(0), vec({1}), std::move(triangle));
  const Eigen::VectorXd zx(0);
  builder.add_row(zx, {zx, zx}, vec({-1}), {vec({0}), vec({0})}, 0.4, vec({-1, -2}));
  builder.add_row(zx, {zx, zx}, vec({1}), {vec({0}), vec({0})}, 0.4, vec({1, 2}));
  Instance inst = builder.take();

  CorpusEntry entry;
  entry.instance = std::move(inst);
  entry.known_values = {
      {"adapt", 1, std::nullopt, KnownValueCheck::Solver, "range 0.8 cannot cover [0,2]"},
      {"adapt", 2, std::nullopt, KnownValueCheck::Solver, "two ranges of 0.8 cannot cover [0,2]"},
      {"adapt", 3, 1.6, KnownValueCheck::Solver, "three sub-ranges of g; top piece forces 1.6"},
      {"comp", 1, 1.6, KnownValueCheck::Solver, "y(w) = g(w) - 0.4"},
  };
  return entry;
}

CorpusEntry make_detb() {
  // Deterministic right-hand side: min x with x >= 3, y >= 1, d = 0.
  InstanceBuilder builder("detb", vec({1}), vec({0}), segment01());
  const Eigen::VectorXd zx = Eigen::VectorXd::Zero(1);
  const Eigen::VectorXd zy = Eigen::VectorXd::Zero(1);
  builder.add_row(vec({-1}), {zx}, zy, {zy}, -3.0, vec({0}));
  builder.add_row(zx, {zx}, vec({-1}), {zy}, -1.0, vec({0}));
  Instance inst = builder.take();

  CorpusEntry entry;
  entry.instance = std::move(inst);
  entry.known_values = {
      {"adapt", 1, 3.0, KnownValueCheck::Solver, "no uncertainty in the data"},
      {"adapt", 2, 3.0, KnownValueCheck::Solver, "pieces are irrelevant"},
      {"adapt", 3, 3.0, KnownValueCheck::Solver, "pieces are irrelevant"},
      {"comp", 1, 3.0, KnownValueCheck::Solver, "no uncertainty in the data"},
  };
  return entry;
}

double uniform(std::mt19937& gen, double lo, double hi) {
  const double u = static_cast<double>(gen()) / 4294967296.0;
  return lo + u * (hi - lo);
}

}  // namespace

CorpusEntry get_instance(const std::string& name) {
  if (name == "P") return make_P();
  if (name == "Q") return make_Q();
  if (name == "R") return make_R();
  if (name == "interval") return make_interval();
  if (name == "square") return make_square();
  if (name == "triangle") return make_triangle();
  if (name == "detb") return make_detb();
  throw UnknownInstance("unknown corpus instance: " + name);
}

std::vector<std::string> corpus_names() {
  return {"P", "Q", "R", "interval", "square", "triangle", "detb"};
}

Instance generate_random(unsigned seed, int dim, int rows) {
  if (dim < 1 || dim > 2) throw OutOfRange("generate_random: dim must be 1 or 2");
  if (rows < 1 || rows > 8) throw OutOfRange("generate_random: rows must be in [1,8]");
  std::mt19937 gen(seed);

  Polytope omega;
  if (dim == 1) {
    const double lo = uniform(gen, 0.0, 0.4);
    const double hi = uniform(gen, 0.6, 1.0);
    omega = build_polytope({vec({lo}), vec({hi})});
  } else {
    // Sample until the hull is a genuine polygon.
    for (;;) {
      const int count = 3 + static_cast<int>(gen() % 3);  // 3..5 candidate points
      std::vector<Eigen::VectorXd> pts;
      for (int i = 0; i < count; ++i)
        pts.push_back(vec({uniform(gen, 0.0, 1.0), uniform(gen, 0.0, 1.0)}));
      Polytope p = build_polytope(pts);
      if (p.affine_dimension() == 2) {
        omega = std::move(p);
        break;
      }
    }
  }

  const int dim_x = static_cast<int>(gen() % 2);      // 0 or 1
  const int dim_y = 1 + static_cast<int>(gen() % 2);  // 1 or 2

  Eigen::VectorXd c(dim_x);
  for (int j = 0; j < dim_x; ++j) c[j] = uniform(gen, -1.0, 1.0);
  Eigen::VectorXd d(dim_y);
  for (int j = 0; j < dim_y; ++j) d[j] = uniform(gen, 0.0, 1.0);

  InstanceBuilder builder("random-" + std::to_string(seed), c, d, std::move(omega));
  const Eigen::VectorXd zx = Eigen::VectorXd::Zero(dim_x);
  for (int r = 0; r < rows; ++r) {
    Eigen::VectorXd a(dim_x);
    for (int j = 0; j < dim_x; ++j) a[j] = uniform(gen, -1.0, 1.0);
    Eigen::VectorXd g(dim_y);
    for (int j = 0; j < dim_y; ++j) g[j] = uniform(gen, -1.0, 1.0);
    Eigen::VectorXd h_coeffs(dim == 1 ? 1 : 2);
    for (int j = 0; j < h_coeffs.size(); ++j) h_coeffs[j] = uniform(gen, -1.0, 1.0);
    const double h_const = uniform(gen, 0.2, 2.5);
    std::vector<Eigen::VectorXd> a_coeffs(dim == 1 ? 1 : 2, zx);
    std::vector<Eigen::VectorXd> g_coeffs(dim == 1 ? 1 : 2, Eigen::VectorXd::Zero(dim_y));
    builder.add_row(a, a_coeffs, g, g_coeffs, h_const, h_coeffs);
  }
  Instance inst = builder.take();
  inst.x_bounds.assign(dim_x, {-5.0, 5.0});
  inst.y_bounds.assign(dim_y, {-5.0, 5.0});
  return inst;
}

}  // namespace finadapt
