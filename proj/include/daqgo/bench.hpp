#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daqgo/ising.hpp"
#include "daqgo/measures.hpp"
#include "daqgo/shots.hpp"
#include "daqgo/solver.hpp"

namespace daqgo {

struct ExperimentConfig {
  std::vector<Algorithm> algorithms = {Algorithm::Qa,     Algorithm::Qgo,
                                       Algorithm::Daqgo1, Algorithm::Daqgo2,
                                       Algorithm::Daqgo3, Algorithm::Daqgo4};
  std::vector<int> n_list = {4};
  std::vector<double> tau_list = {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0};
  double t_sim = -1.0;  // negative selects the per-algorithm default
  double epsilon = 1.2;
  double c_opt_abs = 1.5;
  double b = 1.0;
  double h_diff = 0.0;  // 0 selects c_opt_abs
  int instance_count = 20;
  std::uint64_t rng_seed = 1;
  int step_count = 0;
  bool timing = false;           // emit measured wall time instead of 0.000
  bool auto_calibrate = false;   // pull (b, c_opt) from the ferromagnet scan
  std::string calibration_path;  // optional cache file for auto_calibrate
};

struct InstanceOutcome {
  std::uint64_t seed = 0;
  double success = 0.0;  // annealing: ground-manifold probability; solvers: 0/1
  bool degenerate = false;
};

struct ResultRow {
  std::string algorithm;
  int n = 0;
  double tau = 0.0;
  double success = 0.0;
  int instances = 0;
  double seconds = 0.0;
  std::vector<InstanceOutcome> per_instance;
};

struct ShotReportRow {
  std::string algorithm;
  int n = 0;
  long sel_shots = 0;   // lower median over non-degenerate instances
  long sign_shots = 0;  // lower median over non-degenerate instances
  long total = 0;       // lower median over non-degenerate instances
  int degenerate = 0;   // excluded sentinel plans
};

void validate_config(const ExperimentConfig& cfg);

// The shared instance set: instance k is seeded with derive_seed(rng_seed, k)
// so every algorithm and every tau sees the same problems.
std::vector<IsingInstance> build_instances(int n, int count, std::uint64_t rng_seed);

// Hamiltonian simulation time used when the config does not pin one.
double default_t_sim(Algorithm algorithm);

SolveConfig make_solve_config(Algorithm algorithm, const ExperimentConfig& cfg,
                              double tau, double b, double c_opt_abs);

// Success grid over algorithms x n_list x tau_list.  Annealing rows average
// the ground-manifold probability; solver rows count exact solutions.
std::vector<ResultRow> run_tau_sweep(const ExperimentConfig& cfg);

// Same computation with the emphasis on n_list; the schema is identical.
std::vector<ResultRow> run_size_sweep(const ExperimentConfig& cfg);

// Shot plans per algorithm x n at tau_list.front(); degenerate plans are
// excluded from the medians and surface in the diagnostics column.
std::vector<ShotReportRow> run_shot_report(const ExperimentConfig& cfg);

// Header algorithm,n,tau,success,instances,seconds.  Unless with_timing the
// seconds column prints 0.000 so repeated runs are byte identical.
std::string rows_to_csv(const std::vector<ResultRow>& rows, bool with_timing);
std::string shot_rows_to_csv(const std::vector<ShotReportRow>& rows);

// Companion record with every per-instance outcome, so each CSV success
// value can be recomputed from persisted data.
std::string rows_to_detail_json(const std::vector<ResultRow>& rows);

}  // namespace daqgo
