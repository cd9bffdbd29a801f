#include "qecmet/cli.hpp"

#include "qecmet/model_io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

using namespace qecmet;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run(const std::vector<std::string>& args) {
  std::vector<const char*> argv;
  argv.push_back("qecmet");
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  int code = run_cli(static_cast<int>(argv.size()), argv.data());
  std::cout.rdbuf(old);
  return CliResult{code, captured.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("qecmet_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("exit-code contract for check and argument errors") {
  TempDir dir;
  const std::string perp = dir.file("perp.json");
  const std::string para = dir.file("para.json");
  write_model_file(perp, qubit_model({0, 0, 1}, {1, 0, 0}, 1.0));
  write_model_file(para, qubit_model({0, 0, 1}, {0, 0, 1}, 1.0));

  CliResult holds = run({"check", perp});
  CHECK(holds.exit_code == 0);
  CHECK(holds.out.find("\"holds\": true") != std::string::npos);

  CliResult fails = run({"check", para});
  CHECK(fails.exit_code == 2);
  CHECK(fails.out.find("\"holds\": false") != std::string::npos);

  CHECK(run({"check", dir.file("missing.json")}).exit_code == 1);
  CHECK(run({"check", perp, "--no-such-flag"}).exit_code == 1);
  CHECK(run({"frobnicate"}).exit_code == 1);
  CHECK(run({}).exit_code == 1);
}

TEST_CASE("synth emits a loadable canonical code or refuses") {
  TempDir dir;
  const std::string perp = dir.file("perp.json");
  const std::string para = dir.file("para.json");
  const std::string code_path = dir.file("code.json");
  write_model_file(perp, qubit_model({0, 0, 1}, {1, 0, 0}, 1.0));
  write_model_file(para, qubit_model({0, 0, 1}, {0, 0, 1}, 1.0));

  CliResult ok = run({"synth", perp, "-o", code_path});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("\"passes\": true") != std::string::npos);
  CodeFileData data = parse_code_file(code_path);
  CHECK(data.provenance == "canonical");
  CHECK(data.code.d_probe == 2);

  CHECK(run({"synth", para, "-o", code_path}).exit_code == 2);
}

TEST_CASE("optimize reports the qubit optimum and keeps the ancilla") {
  TempDir dir;
  const std::string perp = dir.file("perp.json");
  const std::string code_path = dir.file("opt.json");
  write_model_file(perp, qubit_model({0, 0, 1}, {1, 0, 0}, 1.0));

  CliResult res = run({"optimize", perp, "-o", code_path});
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"s_star\": 0.5") != std::string::npos);
  CodeFileData data = parse_code_file(code_path);
  CHECK(data.provenance == "optimized");
  // a bare qubit pair cannot satisfy the conditions, so the ancilla stays
  CHECK(data.code.d_ancilla == 2);
  CHECK(*data.s_star == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("simulate prints a deterministic trajectory CSV") {
  TempDir dir;
  const std::string perp = dir.file("perp.json");
  const std::string code_path = dir.file("code.json");
  write_model_file(perp, qubit_model({0, 0, 1}, {1, 0, 0}, 1.0));
  REQUIRE(run({"synth", perp, "-o", code_path}).exit_code == 0);

  std::vector<std::string> args = {"simulate", perp,     "--code",   code_path,
                                   "--t-max",  "2.0",    "--dt",     "1e-3",
                                   "--samples", "12"};
  CliResult first = run(args);
  CHECK(first.exit_code == 0);
  CHECK(first.out.rfind("t,qfi,fidelity,offcode_weight\n", 0) == 0);
  CliResult second = run(args);
  CHECK(first.out == second.out);

  CliResult bare = run({"simulate", perp, "--code", code_path, "--t-max", "2.0",
                        "--dt", "1e-3", "--samples", "8", "--no-qec"});
  CHECK(bare.exit_code == 0);
}

TEST_CASE("sql-bound emits the line or refuses when quadratic growth exists") {
  TempDir dir;
  const std::string para = dir.file("para.json");
  const std::string perp = dir.file("perp.json");
  write_model_file(para, qubit_model({0, 0, 1}, {0, 0, 1}, 1.0));
  write_model_file(perp, qubit_model({0, 0, 1}, {1, 0, 0}, 1.0));

  CliResult ok = run({"sql-bound", para, "--t-max", "5.0", "--points", "10"});
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.rfind("t,bound\n", 0) == 0);

  CHECK(run({"sql-bound", perp, "--t-max", "5.0"}).exit_code == 2);
}

TEST_CASE("robustness writes per-strength files and a summary") {
  TempDir dir;
  setenv("QECMET_OUT", dir.path.string().c_str(), 1);
  const std::string perp = dir.file("perp.json");
  const std::string code_path = dir.file("code.json");
  LindbladModel base = qubit_model({0, 0, 1}, {1, 0, 0}, 1.0);
  LindbladModel with_j(base.generator, base.lindblad_ops, {pauli_y()}, base.omega);
  write_model_file(perp, with_j);
  REQUIRE(run({"synth", perp, "-o", code_path}).exit_code == 0);

  CliResult res = run({"robustness", perp, "--code", code_path, "--eps-grid", "0.05",
                       "--t-max", "40"});
  unsetenv("QECMET_OUT");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"epsilon\"") != std::string::npos);
  CHECK(fs::exists(dir.path / "robustness_eps_0.05.csv"));
}

TEST_CASE("demo runs the qubit pipeline end to end") {
  TempDir dir;
  setenv("QECMET_OUT", dir.path.string().c_str(), 1);
  CliResult res = run({"demo", "qubit"});
  unsetenv("QECMET_OUT");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"s_star\": 0.5") != std::string::npos);
  CHECK(fs::exists(dir.path / "qubit_model.json"));
  CHECK(fs::exists(dir.path / "qubit_code.json"));
}
