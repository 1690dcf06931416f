#include "daqgo/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "daqgo/bench.hpp"
#include "daqgo/dynamics.hpp"
#include "daqgo/gate_export.hpp"
#include "daqgo/rng.hpp"
#include "daqgo/shots.hpp"
#include "daqgo/solver.hpp"

namespace daqgo {

namespace {

void write_text(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("write failed: " + path);
}

IsingInstance load_instance(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open instance file: " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return IsingInstance::from_json(nlohmann::json::parse(buf.str()));
}

std::vector<Algorithm> parse_algorithms(const std::vector<std::string>& names) {
  std::vector<Algorithm> algos;
  algos.reserve(names.size());
  for (const auto& name : names) algos.push_back(algorithm_from_string(name));
  return algos;
}

// Flags shared by the sweep subcommands; defaults are per-subcommand.
struct BenchFlags {
  std::vector<std::string> algos;
  std::vector<int> n_list;
  std::vector<double> tau_list;
  double t_sim = -1.0;
  double epsilon = 1.2;
  double c_opt = 1.5;
  double b = 1.0;
  double h_diff = 0.0;
  int instances = 20;
  std::uint64_t seed = 1;
  int steps = 0;
  bool timing = false;
  bool calibrate = false;
  std::string cal_cache;
  std::string out;
  std::string format = "csv";
};

void add_bench_flags(CLI::App* cmd, BenchFlags& f) {
  cmd->add_option("--algo", f.algos, "comma-separated algorithm list")->delimiter(',')->allow_extra_args(false);
  cmd->add_option("--n", f.n_list, "comma-separated system sizes")->delimiter(',')->allow_extra_args(false);
  cmd->add_option("--tau", f.tau_list, "comma-separated annealing times")->delimiter(',')->allow_extra_args(false);
  cmd->add_option("--t", f.t_sim, "Hamiltonian simulation time (variant default if unset)");
  cmd->add_option("--eps", f.epsilon, "interferometer phase offset");
  cmd->add_option("--copt", f.c_opt, "committed y-field magnitude");
  cmd->add_option("--b", f.b, "transverse field scale");
  cmd->add_option("--h-diff", f.h_diff, "sensitivity probe magnitude (0: copt)");
  cmd->add_option("--instances", f.instances, "instances per configuration");
  cmd->add_option("--seed", f.seed, "base seed for the instance set");
  cmd->add_option("--steps", f.steps, "integrator steps (0: default rule)");
  cmd->add_flag("--timing", f.timing, "emit measured wall time in the CSV");
  cmd->add_flag("--calibrate", f.calibrate, "take b and copt from the ferromagnet scan");
  cmd->add_option("--cal-cache", f.cal_cache, "calibration cache file");
  cmd->add_option("--out", f.out, "output file (stdout if unset)");
  cmd->add_option("--format", f.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
}

ExperimentConfig to_config(const BenchFlags& f) {
  ExperimentConfig cfg;
  if (!f.algos.empty()) cfg.algorithms = parse_algorithms(f.algos);
  if (!f.n_list.empty()) cfg.n_list = f.n_list;
  if (!f.tau_list.empty()) cfg.tau_list = f.tau_list;
  cfg.t_sim = f.t_sim;
  cfg.epsilon = f.epsilon;
  cfg.c_opt_abs = f.c_opt;
  cfg.b = f.b;
  cfg.h_diff = f.h_diff;
  cfg.instance_count = f.instances;
  cfg.rng_seed = f.seed;
  cfg.step_count = f.steps;
  cfg.timing = f.timing;
  cfg.auto_calibrate = f.calibrate;
  cfg.calibration_path = f.cal_cache;
  return cfg;
}

void emit_sweep(const std::vector<ResultRow>& rows, const BenchFlags& f) {
  const std::string main_out =
      f.format == "json" ? rows_to_detail_json(rows) : rows_to_csv(rows, f.timing);
  if (f.out.empty()) {
    std::cout << main_out;
    return;
  }
  write_text(f.out, main_out);
  if (f.format == "csv") write_text(f.out + ".detail.json", rows_to_detail_json(rows));
}

int run_sweep(const BenchFlags& f, bool size_sweep) {
  const ExperimentConfig cfg = to_config(f);
  const std::vector<ResultRow> rows = size_sweep ? run_size_sweep(cfg) : run_tau_sweep(cfg);
  emit_sweep(rows, f);
  return 0;
}

int run_shots(const BenchFlags& f) {
  const ExperimentConfig cfg = to_config(f);
  const std::vector<ShotReportRow> rows = run_shot_report(cfg);
  if (f.format == "json") {
    nlohmann::json doc = nlohmann::json::array();
    for (const auto& r : rows)
      doc.push_back({{"algorithm", r.algorithm},
                     {"n", r.n},
                     {"sel_shots", r.sel_shots},
                     {"sign_shots", r.sign_shots},
                     {"total", r.total},
                     {"degenerate", r.degenerate}});
    const std::string out = doc.dump(2) + "\n";
    if (f.out.empty())
      std::cout << out;
    else
      write_text(f.out, out);
    return 0;
  }
  const std::string out = shot_rows_to_csv(rows);
  if (f.out.empty())
    std::cout << out;
  else
    write_text(f.out, out);
  return 0;
}

int run_solve(const BenchFlags& f, const std::string& instance_path) {
  if (f.algos.size() != 1)
    throw std::runtime_error("solve needs exactly one --algo");
  const Algorithm algo = algorithm_from_string(f.algos.front());
  const int n = f.n_list.empty() ? 2 : f.n_list.front();
  const double tau = f.tau_list.empty() ? 1.0 : f.tau_list.front();
  const IsingInstance inst = instance_path.empty()
                                 ? random_instance(n, f.seed)
                                 : load_instance(instance_path);

  ExperimentConfig cfg = to_config(f);
  const SolveConfig sc = make_solve_config(algo, cfg, tau, f.b, f.c_opt);
  const SolveTrace trace = solve(inst, sc);
  const GroundStateSet ground = brute_force_ground(inst, 1e-9);

  std::string line = "solution:";
  for (const int s : trace.solution.spins) line += s > 0 ? " +1" : " -1";
  std::cout << line << '\n';
  std::cout << "ground_match: " << (ground.contains(trace.solution) ? 1 : 0) << '\n';
  std::cout << "evaluations: " << trace.evaluation_count << '\n';
  int round = 1;
  for (const auto& rec : trace.iterations) {
    char buf[160];
    std::snprintf(buf, sizeof(buf),
                  "round %d: fixed %d sign %+d stat %.10g degenerate %d", round++,
                  rec.fixed_index, rec.chosen_sign,
                  rec.sensitivities.at(rec.fixed_index), rec.degenerate ? 1 : 0);
    std::cout << buf << '\n';
  }
  return 0;
}

int run_calibrate(const BenchFlags& f) {
  const int n = f.n_list.empty() ? 2 : f.n_list.front();
  const double tau = f.tau_list.empty() ? 1.0 : f.tau_list.front();
  const std::vector<double> b_grid = {0.5, 1.0, 1.5, 2.0};
  const std::vector<double> c_grid = {0.5, 1.0, 1.5, 2.0, 2.5};
  CalibrationResult cal;
  if (!f.cal_cache.empty()) {
    CalibrationCache cache(f.cal_cache);
    cal = cache.get_or_compute(n, tau, b_grid, c_grid, f.steps);
    cache.save();
  } else {
    cal = calibrate_ferromagnet(n, tau, b_grid, c_grid, f.steps);
  }
  char buf[160];
  std::snprintf(buf, sizeof(buf), "b_opt=%g\nc_opt=%g\nobjective=%.10g\n", cal.b_opt,
                cal.c_opt, cal.objective);
  std::cout << buf;
  return 0;
}

int run_wald(double p, double d, double z_star, long trials, std::uint64_t seed) {
  const long n = sample_size_wald(p, d, z_star);
  const double rate = wald_monte_carlo(p, d, z_star, trials, seed);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "N=%ld\nsuccess_rate=%.4f\n", n, rate);
  std::cout << buf;
  return 0;
}

int run_export(const BenchFlags& f, const std::string& instance_path, int var_index) {
  const Algorithm algo = f.algos.empty() ? Algorithm::Daqgo1
                                         : algorithm_from_string(f.algos.front());
  if (algo != Algorithm::Daqgo1)
    throw std::runtime_error("only the interferometry circuit has a gate export");
  const int n = f.n_list.empty() ? 2 : f.n_list.front();
  const double tau = f.tau_list.empty() ? 0.6 : f.tau_list.front();
  const double t_sim = f.t_sim >= 0.0 ? f.t_sim : 0.5;
  const IsingInstance inst = instance_path.empty()
                                 ? random_instance(n, f.seed)
                                 : load_instance(instance_path);
  if (var_index < 0 || var_index >= inst.n())
    throw std::runtime_error("probe index out of range");

  AnnealParams ref;
  ref.tau = tau;
  ref.b = f.b;
  ref.c.assign(inst.n(), 0.0);
  ref.step_count = f.steps;
  AnnealParams test = ref;
  test.c[var_index] = f.h_diff != 0.0 ? f.h_diff : f.c_opt;

  const StateVector psi_t = anneal_from_plus(inst, test);
  const StateVector psi_r = anneal_from_plus(inst, ref);
  MeasureSpec spec;
  spec.kind = MeasureKind::Daqgo1;
  spec.t_sim = t_sim;
  spec.epsilon = f.epsilon;
  const GateList gates = export_daqgo1_circuit(inst, test, ref, spec, psi_t, psi_r);

  const std::string out = f.format == "qasm"
                              ? gate_list_to_qasm(gates, 2 * inst.n() + 1)
                              : gate_list_to_text(gates);
  if (f.out.empty())
    std::cout << out;
  else
    write_text(f.out, out);
  return 0;
}

}  // namespace

int cli_dispatch(std::vector<std::string> args) {
  CLI::App app{"state-vector benchmarks for greedy annealing-based optimization"};
  app.require_subcommand(0, 1);

  BenchFlags solve_f, tau_f, size_f, shots_f, cal_f, exp_f;
  std::string solve_instance, export_instance;
  int export_index = 0;
  double wald_p = 0.5, wald_d = 0.05, wald_z = 2.58;
  long wald_trials = 10000;
  std::uint64_t wald_seed = 1;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance with one algorithm");
  solve_f.algos = {"qgo"};
  add_bench_flags(solve_cmd, solve_f);
  solve_cmd->add_option("instance", solve_instance, "instance JSON file");

  CLI::App* tau_cmd =
      app.add_subcommand("bench-tau", "success probability versus annealing time");
  add_bench_flags(tau_cmd, tau_f);

  CLI::App* size_cmd =
      app.add_subcommand("bench-size", "success probability versus system size");
  add_bench_flags(size_cmd, size_f);
  size_f.n_list = {2, 3, 4, 5, 6};
  size_f.tau_list = {0.1, 20.0};

  CLI::App* shots_cmd = app.add_subcommand("shots-report", "shot number estimation");
  add_bench_flags(shots_cmd, shots_f);
  shots_f.algos = {"qgo", "daqgo1", "daqgo2", "daqgo3", "daqgo4"};
  shots_f.tau_list = {0.1};

  CLI::App* cal_cmd = app.add_subcommand("calibrate", "ferromagnetic parameter scan");
  add_bench_flags(cal_cmd, cal_f);

  CLI::App* wald_cmd = app.add_subcommand("wald-mc", "sample size power check");
  wald_cmd->add_option("--p", wald_p, "base proportion");
  wald_cmd->add_option("--d", wald_d, "detectable difference");
  wald_cmd->add_option("--z", wald_z, "critical value");
  wald_cmd->add_option("--trials", wald_trials, "Monte Carlo trials");
  wald_cmd->add_option("--seed", wald_seed, "rng seed");

  CLI::App* exp_cmd = app.add_subcommand("export-circuit", "emit the probe gate list");
  exp_f.format = "text";
  exp_cmd->add_option("--algo", exp_f.algos, "algorithm (daqgo1)")->delimiter(',')->allow_extra_args(false);
  exp_cmd->add_option("--n", exp_f.n_list, "system size")->delimiter(',')->allow_extra_args(false);
  exp_cmd->add_option("--tau", exp_f.tau_list, "annealing time")->delimiter(',')->allow_extra_args(false);
  exp_cmd->add_option("--t", exp_f.t_sim, "Hamiltonian simulation time");
  exp_cmd->add_option("--eps", exp_f.epsilon, "interferometer phase offset");
  exp_cmd->add_option("--copt", exp_f.c_opt, "probe amplitude fallback");
  exp_cmd->add_option("--b", exp_f.b, "transverse field scale");
  exp_cmd->add_option("--h-diff", exp_f.h_diff, "probe magnitude (0: copt)");
  exp_cmd->add_option("--seed", exp_f.seed, "instance seed");
  exp_cmd->add_option("--steps", exp_f.steps, "integrator steps");
  exp_cmd->add_option("--out", exp_f.out, "output file (stdout if unset)");
  exp_cmd->add_option("--format", exp_f.format, "text or qasm")
      ->check(CLI::IsMember({"text", "qasm"}));
  exp_cmd->add_option("--i", export_index, "probed variable index");
  exp_cmd->add_option("instance", export_instance, "instance JSON file");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n' << app.help();
    return 2;
  }

  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_f, solve_instance);
    if (tau_cmd->parsed()) return run_sweep(tau_f, false);
    if (size_cmd->parsed()) return run_sweep(size_f, true);
    if (shots_cmd->parsed()) return run_shots(shots_f);
    if (cal_cmd->parsed()) return run_calibrate(cal_f);
    if (wald_cmd->parsed()) return run_wald(wald_p, wald_d, wald_z, wald_trials, wald_seed);
    if (exp_cmd->parsed()) return run_export(exp_f, export_instance, export_index);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  std::cerr << app.help();
  return 2;
}

}  // namespace daqgo
