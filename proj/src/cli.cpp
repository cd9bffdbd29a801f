#include "qecmet/cli.hpp"

#include "qecmet/code_optimization.hpp"
#include "qecmet/code_synthesis.hpp"
#include "qecmet/dynamics.hpp"
#include "qecmet/lindblad_span.hpp"
#include "qecmet/model_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace qecmet {

namespace {

using ojson = nlohmann::ordered_json;

std::string out_dir() {
  const char* env = std::getenv("QECMET_OUT");
  return env && *env ? std::string(env) : std::string(".");
}

std::string csv_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void emit(const ojson& j) { std::cout << j.dump(2) << "\n"; }

int cmd_check(const std::string& model_path, double tolerance) {
  ModelFileData mf = parse_model_file(model_path);
  HnlsVerdict v = hnls_check(mf.model, tolerance);
  SpanBasis basis = orthonormal_basis(hermitian_generators(mf.model));
  ojson j;
  j["holds"] = v.holds;
  j["marginal"] = v.marginal;
  j["perp_hs_norm"] = v.perp_hs_norm;
  j["tol"] = v.tol_used;
  j["span_dim"] = basis.basis.size();
  emit(j);
  return v.holds ? 0 : 2;
}

int cmd_synth(const std::string& model_path, const std::string& out_path) {
  ModelFileData mf = parse_model_file(model_path);
  HnlsVerdict v = hnls_check(mf.model);
  if (!v.holds) {
    std::cerr << "synth: HNLS fails (perpendicular norm " << v.perp_hs_norm
              << " <= tol " << v.tol_used << "); no code gives quadratic growth\n";
    return 2;
  }
  CodePair code = canonical_code(v.g_perp);
  QecReport rep = check_conditions(code, mf.model);
  EffectiveGenerator eff = effective_generator(code, mf.model.generator);
  write_code_file(out_path, CodeFileData{code, std::nullopt, eff.eigengap, "canonical"});

  ojson j;
  j["provenance"] = "canonical";
  j["d_P"] = code.d_probe;
  j["d_A"] = code.d_ancilla;
  j["eigengap"] = eff.eigengap;
  j["residual_1"] = rep.residual_1;
  j["residual_2"] = rep.residual_2;
  j["gap_3"] = rep.gap_3;
  j["passes"] = rep.passes_all();
  ojson lambdas = ojson::array();
  for (const auto& l : rep.jump_expectations)
    lambdas.push_back(ojson::array({l.real(), l.imag()}));
  j["lambda"] = std::move(lambdas);
  j["code_file"] = out_path;
  emit(j);
  return 0;
}

int cmd_optimize(const std::string& model_path, const std::string& out_path,
                 double gtol, double obj_tol) {
  ModelFileData mf = parse_model_file(model_path);
  HnlsVerdict v = hnls_check(mf.model);
  if (!v.holds) {
    std::cerr << "optimize: HNLS fails; optimal quadratic-growth coefficient is zero\n";
    return 2;
  }
  SpanBasis basis = orthonormal_basis(hermitian_generators(mf.model));
  DualOptions opts;
  if (gtol > 0) opts.gtol = gtol;
  if (obj_tol > 0) opts.obj_tol = obj_tol;
  DualSolution dual = dual_minimize(v.g_perp, basis, opts);
  PrimalSolution primal = primal_recover(dual, basis);
  DualityReport duality = verify_duality(dual, primal, basis);

  std::optional<CodePair> reduced = optimal_code_reduced(primal, mf.model);
  CodePair code = reduced ? *reduced : compress_code(optimal_code(primal));
  EffectiveGenerator eff = effective_generator(code, mf.model.generator);
  write_code_file(out_path,
                  CodeFileData{code, dual.optimal_norm, eff.eigengap, "optimized"});

  ojson j;
  j["s_star"] = dual.optimal_norm;
  j["converged"] = dual.converged;
  j["iterations"] = dual.iterations;
  j["gradient_norm"] = dual.gradient_norm;
  ojson nu = ojson::array();
  for (Eigen::Index k = 0; k < dual.coeffs.size(); ++k) nu.push_back(dual.coeffs(k));
  j["nu"] = std::move(nu);
  j["objective"] = primal.objective;
  j["constraint_residual"] = primal.constraint_residual;
  j["duality_gap"] = duality.gap;
  j["eigengap"] = eff.eigengap;
  j["qfi_coefficient"] = 4.0 * dual.optimal_norm * dual.optimal_norm;
  j["ancilla_free"] = static_cast<bool>(reduced);
  j["d_P"] = code.d_probe;
  j["d_A"] = code.d_ancilla;
  j["code_file"] = out_path;
  emit(j);
  return 0;
}

void print_trajectory_csv(const Trajectory& traj) {
  std::cout << "t,qfi,fidelity,offcode_weight\n";
  for (Eigen::Index i = 0; i < traj.times.size(); ++i)
    std::cout << csv_num(traj.times(i)) << "," << csv_num(traj.qfi(i)) << ","
              << csv_num(traj.fidelity_to_ideal(i)) << ","
              << csv_num(traj.offcode_weight(i)) << "\n";
}

int cmd_simulate(const std::string& model_path, const std::string& code_path,
                 double t_max, double dt, bool no_qec, int samples, bool first_order) {
  ModelFileData mf = parse_model_file(model_path);
  CodeFileData cf = parse_code_file(code_path);
  // the ancilla isometry leaves every reported quantity unchanged, so simulate
  // on the compressed support
  CodePair code = compress_code(cf.code);

  SimulationConfig cfg;
  cfg.t_max = t_max;
  cfg.dt = dt;
  cfg.qec_enabled = !no_qec;
  cfg.n_samples = samples;
  cfg.integrator = first_order ? Integrator::FirstOrderChannel
                               : Integrator::ExactLiouvillian;

  RecoveryChannel recovery =
      no_qec ? RecoveryChannel{QuantumChannel({ComplexMatrix::Identity(
                                   code.c0.dim(), code.c0.dim())}),
                               0, 0}
             : build_recovery(code, mf.model);
  Trajectory traj = qec_evolve(mf.model, code, recovery, cfg);
  if (traj.qfi_richardson_maxdev > 0.05)
    std::cerr << "simulate: warning: information estimate drifts "
              << traj.qfi_richardson_maxdev * 100.0
              << "% under step halving; omega_step may be too large\n";
  print_trajectory_csv(traj);
  return 0;
}

int cmd_sql_bound(const std::string& model_path, double t_max, double dt, int points) {
  ModelFileData mf = parse_model_file(model_path);
  RealVector t_grid(points);
  for (int i = 0; i < points; ++i) t_grid(i) = t_max * double(i + 1) / double(points);
  SqlBoundReport rep = sql_bound(mf.model, dt, t_grid);
  if (!rep.solvable) {
    std::cerr << "sql-bound: generator not inside the Lindblad span (residual "
              << rep.residual_beta2 << "); linear bound does not apply\n";
    return 2;
  }
  std::cout << "t,bound\n";
  for (Eigen::Index i = 0; i < t_grid.size(); ++i)
    std::cout << csv_num(t_grid(i)) << "," << csv_num(rep.bound_curve(i)) << "\n";
  return 0;
}

int cmd_robustness(const std::string& model_path, const std::string& code_path,
                   const std::vector<double>& eps_grid, double t_max, double dt) {
  ModelFileData mf = parse_model_file(model_path);
  CodeFileData cf = parse_code_file(code_path);
  CodePair code = compress_code(cf.code);
  RecoveryChannel recovery = build_recovery(code, mf.model);

  SimulationConfig cfg;
  cfg.t_max = t_max;  // <= 0 selects the automatic 6/epsilon horizon
  cfg.dt = dt;
  auto reports = robustness_experiment(mf.model, code, recovery, cfg, eps_grid);

  ojson summary;
  ojson eps_j = ojson::array(), cross_j = ojson::array(), ok_j = ojson::array(),
        files_j = ojson::array();
  for (const auto& rep : reports) {
    std::ostringstream name;
    name << out_dir() << "/robustness_eps_" << rep.epsilon << ".csv";
    std::ofstream out(name.str());
    if (!out) throw std::runtime_error("cannot write " + name.str());
    out << "t,qfi,distance\n";
    for (Eigen::Index i = 0; i < rep.times.size(); ++i)
      out << csv_num(rep.times(i)) << "," << csv_num(rep.qfi(i)) << ","
          << csv_num(rep.distance_to_ideal(i)) << "\n";
    eps_j.push_back(rep.epsilon);
    cross_j.push_back(rep.crossover_time);
    ok_j.push_back(rep.distance_bound_ok);
    files_j.push_back(name.str());
  }
  summary["epsilon"] = std::move(eps_j);
  summary["crossover_time"] = std::move(cross_j);
  summary["distance_bound_ok"] = std::move(ok_j);
  summary["files"] = std::move(files_j);

  // slope of log(crossover) against log(epsilon)
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (const auto& rep : reports) {
    if (!(rep.crossover_time > 0.0) || rep.epsilon <= 0.0) continue;
    const double x = std::log(rep.epsilon), y = std::log(rep.crossover_time);
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    ++n;
  }
  if (n >= 2)
    summary["loglog_slope"] = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  emit(summary);
  return 0;
}

int cmd_demo(const std::string& which, int nbar) {
  const std::string dir = out_dir();
  LindbladModel model = which == "kerr"
                            ? kerr_model(nbar, 0.1)
                            : qubit_model(Eigen::Vector3d(0, 0, 1),
                                          Eigen::Vector3cd(1, 0, 0), 0.1);
  Metadata meta{{"preset", which}};
  const std::string model_file = dir + "/" + which + "_model.json";
  const std::string code_file = dir + "/" + which + "_code.json";
  write_model_file(model_file, model, meta);

  HnlsVerdict v = hnls_check(model);
  ojson j;
  j["model"] = which;
  if (which == "kerr") j["nbar"] = nbar;
  j["model_file"] = model_file;
  j["hnls"] = v.holds;
  if (!v.holds) { emit(j); return 2; }

  SpanBasis basis = orthonormal_basis(hermitian_generators(model));
  DualSolution dual = dual_minimize(v.g_perp, basis);
  PrimalSolution primal = primal_recover(dual, basis);
  std::optional<CodePair> reduced = optimal_code_reduced(primal, model);
  CodePair code = reduced ? *reduced : compress_code(optimal_code(primal));
  EffectiveGenerator eff = effective_generator(code, model.generator);
  write_code_file(code_file,
                  CodeFileData{code, dual.optimal_norm, eff.eigengap, "optimized"});

  RecoveryChannel recovery = build_recovery(code, model);
  SimulationConfig cfg;
  cfg.t_max = 2.0;
  cfg.dt = 1e-3;
  Trajectory traj = qec_evolve(model, code, recovery, cfg);
  const Eigen::Index last = traj.times.size() - 1;

  j["s_star"] = dual.optimal_norm;
  j["qfi_coefficient"] = 4.0 * dual.optimal_norm * dual.optimal_norm;
  j["eigengap"] = eff.eigengap;
  j["ancilla_free"] = static_cast<bool>(reduced);
  j["code_file"] = code_file;
  j["sim_qfi_over_t2"] = traj.qfi(last) / (traj.times(last) * traj.times(last));
  j["sim_fidelity"] = traj.fidelity_to_ideal(last);
  emit(j);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"Heisenberg-limit achievability, code synthesis and simulation "
               "for Markovian probe models"};
  app.require_subcommand(1);

  std::string model_path, code_path, out_path;
  double tolerance = -1.0, t_max = 10.0, dt = 1e-3, gtol = -1.0, obj_tol = -1.0;
  int samples = 60, nbar = 4, points = 50;
  bool no_qec = false, first_order = false;
  std::vector<double> eps_grid;
  std::string demo_which;

  auto* check = app.add_subcommand("check", "decide HNLS for a model file");
  check->add_option("model", model_path)->required();
  check->add_option("--tol", tolerance, "absolute threshold on the perpendicular norm");

  auto* synth = app.add_subcommand("synth", "construct the canonical code");
  synth->add_option("model", model_path)->required();
  synth->add_option("-o,--output", out_path, "code file to write")->required();

  auto* optimize = app.add_subcommand("optimize", "solve for the optimal code");
  optimize->add_option("model", model_path)->required();
  optimize->add_option("-o,--output", out_path, "code file to write")->required();
  optimize->add_option("--gtol", gtol, "gradient-norm exit threshold");
  optimize->add_option("--obj-tol", obj_tol, "objective accuracy target");

  auto* simulate = app.add_subcommand("simulate", "error-corrected trajectory CSV");
  simulate->add_option("model", model_path)->required();
  simulate->add_option("--code", code_path)->required();
  simulate->add_option("--t-max", t_max);
  simulate->add_option("--dt", dt);
  simulate->add_option("--samples", samples);
  simulate->add_flag("--no-qec", no_qec, "evolve the same input without recovery");
  simulate->add_flag("--first-order", first_order, "use the first-order Kraus channel");

  auto* sqlb = app.add_subcommand("sql-bound", "linear information bound CSV");
  sqlb->add_option("model", model_path)->required();
  sqlb->add_option("--t-max", t_max);
  sqlb->add_option("--dt", dt);
  sqlb->add_option("--points", points);

  auto* robust = app.add_subcommand("robustness", "perturbation sweep and crossover");
  robust->add_option("model", model_path)->required();
  robust->add_option("--code", code_path)->required();
  robust->add_option("--eps-grid", eps_grid, "noise strengths")
      ->required()
      ->delimiter(',');
  robust->add_option("--t-max", t_max, "horizon; <= 0 selects 6/epsilon")
      ->default_val(0.0);
  robust->add_option("--dt", dt, "step cap; refined to epsilon/20 when needed");

  auto* demo = app.add_subcommand("demo", "run the full pipeline on a preset");
  demo->add_option("preset", demo_which, "qubit or kerr")
      ->required()
      ->check(CLI::IsMember({"qubit", "kerr"}));
  demo->add_option("--nbar", nbar, "occupation cutoff for the kerr preset");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (check->parsed()) return cmd_check(model_path, tolerance);
    if (synth->parsed()) return cmd_synth(model_path, out_path);
    if (optimize->parsed()) return cmd_optimize(model_path, out_path, gtol, obj_tol);
    if (simulate->parsed())
      return cmd_simulate(model_path, code_path, t_max, dt, no_qec, samples, first_order);
    if (sqlb->parsed()) return cmd_sql_bound(model_path, t_max, dt, points);
    if (robust->parsed()) return cmd_robustness(model_path, code_path, eps_grid, t_max, dt);
    if (demo->parsed()) return cmd_demo(demo_which, nbar);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace qecmet
