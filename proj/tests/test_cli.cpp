#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "finadapt/corpus.hpp"
#include "finadapt/instance_io.hpp"
#include "finadapt/verify.hpp"

using namespace finadapt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("finadapt_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

int run(const std::string& args) {
  const std::string cmd = std::string(FINADAPT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WEXITSTATUS(rc);
}

std::string capture(const std::string& args, const std::string& out_file) {
  const std::string cmd = std::string(FINADAPT_CLI_PATH) + " " + args + " > " + out_file + " 2>&1";
  std::system(cmd.c_str());
  return read_text_file(out_file);
}

}  // namespace

TEST_CASE("cli exit codes across the corpus scenarios") {
  TempDir dir;
  for (const std::string& name : corpus_names()) {
    REQUIRE(run("export --name " + name + " --out " + dir.file(name + ".json")) == 0);
  }

  // Solvable: square at k = 2.
  CHECK(run("solve --k 2 --method enum --instance " + dir.file("square.json") + " --out " +
            dir.file("square_sol.json")) == 0);
  // Uncertain B with the enumeration solver: method/instance mismatch.
  CHECK(run("solve --k 2 --method enum --instance " + dir.file("R.json")) == 5);
  // Infeasible: interval at k = 1.
  CHECK(run("solve --k 1 --instance " + dir.file("interval.json")) == 2);
  // milp supports k = 2 only.
  CHECK(run("solve --k 3 --method milp --instance " + dir.file("square.json")) == 4);
  // 1d on a 2-D polytope.
  CHECK(run("solve --k 2 --method 1d --instance " + dir.file("square.json")) == 5);
  // Missing file.
  CHECK(run("solve --k 2 --instance " + dir.file("missing.json")) == 4);

  // verify: the solved square solution round-trips.
  CHECK(run("verify --instance " + dir.file("square.json") + " --solution " +
            dir.file("square_sol.json")) == 0);

  // A deliberately bad solution file is rejected with a witness.
  write_text_file(dir.file("bad_sol.json"),
                  R"({"x": [0, 0, 0, 0], "ys": [[5]], "objective": 0.0})");
  CHECK(run("verify --instance " + dir.file("P.json") + " --solution " + dir.file("bad_sol.json")) ==
        2);

  // Truncated JSON: parse error.
  write_text_file(dir.file("trunc.json"), "{\"x\": [1, 2");
  CHECK(run("verify --instance " + dir.file("P.json") + " --solution " + dir.file("trunc.json")) ==
        4);
}

TEST_CASE("cli lowerbound scenarios") {
  TempDir dir;
  REQUIRE(run("export --name P --out " + dir.file("P.json")) == 0);
  REQUIRE(run("export --name Q --out " + dir.file("Q.json")) == 0);

  write_text_file(dir.file("q_scen.json"), "[[0], [0.3333333333333333], [0.6666666666666666], [1]]");
  CHECK(run("lowerbound --instance " + dir.file("Q.json") + " --k 3 --scenarios " +
            dir.file("q_scen.json")) == 2);

  write_text_file(dir.file("p_scen.json"), "[[0], [0.5], [1]]");
  const std::string out =
      capture("lowerbound --instance " + dir.file("P.json") + " --k 2 --scenarios " +
                  dir.file("p_scen.json"),
              dir.file("p_lb.txt"));
  CHECK(out.find("bound 2") != std::string::npos);

  write_text_file(dir.file("single.json"), "[[0]]");
  const std::string zero =
      capture("lowerbound --instance " + dir.file("P.json") + " --k 1 --scenarios " +
                  dir.file("single.json"),
              dir.file("p_lb0.txt"));
  CHECK(zero.find("bound 0") != std::string::npos);

  // Grid mode needs at least two subdivision points.
  CHECK(run("lowerbound --instance " + dir.file("P.json") + " --k 2 --grid 1") == 4);
  CHECK(run("lowerbound --instance " + dir.file("P.json") + " --k 1 --grid 4") == 0);
}

TEST_CASE("cli render") {
  TempDir dir;
  REQUIRE(run("export --name R --out " + dir.file("R.json")) == 0);
  const CorpusEntry entry = get_instance("R");
  const CoverCertificate cert =
      verify_cover(entry.instance, entry.reference_solutions[0], 1e-6);
  write_text_file(dir.file("R_sol.json"),
                  solution_to_json(entry.instance, entry.reference_solutions[0], &cert));
  CHECK(run("render --instance " + dir.file("R.json") + " --solution " + dir.file("R_sol.json") +
            " --out " + dir.file("R.svg")) == 0);
  const std::string svg = read_text_file(dir.file("R.svg"));
  CHECK(svg.find("<svg") == 0);

  // Deterministic bytes: render twice, compare.
  CHECK(run("render --instance " + dir.file("R.json") + " --solution " + dir.file("R_sol.json") +
            " --out " + dir.file("R2.svg")) == 0);
  CHECK(read_text_file(dir.file("R2.svg")) == svg);

  // One-dimensional instance cannot be rendered.
  REQUIRE(run("export --name interval --out " + dir.file("interval.json")) == 0);
  write_text_file(dir.file("i_sol.json"), R"({"x": [], "ys": [[0.5], [1.0]], "objective": 1.0})");
  CHECK(run("render --instance " + dir.file("interval.json") + " --solution " +
            dir.file("i_sol.json") + " --out " + dir.file("i.svg")) == 5);
}

TEST_CASE("cli unbounded, big-M override, and tolerance env") {
  TempDir dir;
  // min -x with x only bounded below: unbounded first stage.
  write_text_file(dir.file("unbounded.json"), R"({
    "name": "unbounded",
    "omega_vertices": [[0], [1]],
    "c": [-1], "d": [0],
    "A": {"const": [[-1]]},
    "B": {"const": [[0]]},
    "b": {"const": [0]}
  })");
  CHECK(run("solve --k 1 --instance " + dir.file("unbounded.json")) == 3);

  REQUIRE(run("export --name square --out " + dir.file("square.json")) == 0);
  CHECK(run("solve --k 2 --method milp --big-m 50 --instance " + dir.file("square.json")) == 0);

  // The tolerance bundle override must not break a normal solve.
  const std::string cmd = std::string("FINADAPT_TOL=1e-8 ") + FINADAPT_CLI_PATH +
                          " solve --k 2 --instance " + dir.file("square.json") +
                          " > /dev/null 2>&1";
  CHECK(WEXITSTATUS(std::system(cmd.c_str())) == 0);
}

TEST_CASE("cli solve writes a verifiable solution file") {
  TempDir dir;
  REQUIRE(run("export --name triangle --out " + dir.file("triangle.json")) == 0);
  CHECK(run("solve --k 3 --method enum --instance " + dir.file("triangle.json") + " --out " +
            dir.file("tri_sol.json")) == 0);
  const SolutionFileData data = load_solution_file(dir.file("tri_sol.json"));
  CHECK(data.k == 3);
  CHECK(data.objective == doctest::Approx(1.6).epsilon(1e-6));
  const Instance tri = load_instance_file(dir.file("triangle.json"));
  CHECK(check_solution(tri, data.solution, data.objective, 1e-6));

  // The milp route agrees through the CLI as well.
  REQUIRE(run("export --name square --out " + dir.file("square.json")) == 0);
  CHECK(run("solve --k 2 --method milp --instance " + dir.file("square.json") + " --out " +
            dir.file("sq_milp.json")) == 0);
  const SolutionFileData milp = load_solution_file(dir.file("sq_milp.json"));
  CHECK(milp.objective == doctest::Approx(2.0).epsilon(1e-6));

  // comp method reports the vertex-policy bound.
  CHECK(run("solve --method comp --instance " + dir.file("square.json")) == 0);
}
