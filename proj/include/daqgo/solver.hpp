#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "daqgo/ising.hpp"
#include "daqgo/measures.hpp"

namespace daqgo {

struct SolveConfig {
  MeasureSpec measure;
  double tau = 1.0;
  double b_opt = 1.0;
  double c_opt_abs = 1.0;  // committed y-field magnitude, > 0
  double h_diff = 0.0;     // probe magnitude; 0 selects the default c_opt_abs
  int step_count = 0;      // 0 selects the propagator default
};

struct IterationRecord {
  int fixed_index = -1;
  std::map<int, double> sensitivities;    // signed measure value per probed index
  std::map<int, double> selection_stats;  // statistic ranked for selection
  int chosen_sign = 0;
  bool degenerate = false;  // sign statistic was exactly zero; +1 fallback used
};

struct SolveTrace {
  std::vector<IterationRecord> iterations;
  std::vector<double> final_c;
  SpinConfig solution;
  long evaluation_count = 0;  // test-state measure evaluations (references shared
                              // per round are not counted)
};

// Finite-difference sensitivity of the configured measure for variable i:
// test parameters perturb c_i by +h_diff against reference c_current.
// c_current[i] must still be unfixed (zero).
double sensitivity(const IsingInstance& inst, const SolveConfig& config,
                   const std::vector<double>& c_current, int i);
MeasureOutcome sensitivity_outcome(const IsingInstance& inst, const SolveConfig& config,
                                   const std::vector<double>& c_current, int i);

// Greedy sequential fixing: each round evaluates all unfixed sensitivities,
// fixes the most sensitive variable to -c_opt_abs * sgn(statistic), and
// repeats until every c_i is set; the solution is sgn(c).  Interferometric
// selection ranks the smallest zero-phase ancilla probability instead of
// |value| where that is the measure's selection statistic.
SolveTrace solve(const IsingInstance& inst, const SolveConfig& config);

// Variant with an injected measure (used by oracle tests): fn(c_test, c_ref)
// returns the goodness difference; generic argmax |value| selection.
using MeasureFn = std::function<MeasureOutcome(
    const std::vector<double>& c_test, const std::vector<double>& c_ref)>;
SolveTrace solve_with_measure(const IsingInstance& inst, const SolveConfig& config,
                              const MeasureFn& fn);

// Plain annealing success: evolve with c = 0 and sum the probability over
// the exact ground manifold.
double qa_success_probability(const IsingInstance& inst, double tau, double b,
                              int step_count = 0);

struct CalibrationResult {
  double b_opt = 0.0;
  double c_opt = 0.0;
  double objective = 0.0;  // ground-manifold probability at the optimum
};

// Grid scan on the uniform ferromagnet (J_ij = 1/(n-1), h = 0) with every
// c_i = c; returns the (b, c) maximizing the probability of the all-up plus
// all-down manifold.  Ties resolve to the smallest b, then smallest c.
CalibrationResult calibrate_ferromagnet(int n, double tau,
                                        const std::vector<double>& b_grid,
                                        const std::vector<double>& c_grid,
                                        int step_count = 0);

// JSON-backed (n, tau) -> calibration store so sweeps do not recalibrate.
class CalibrationCache {
 public:
  CalibrationCache() = default;
  explicit CalibrationCache(std::string path);  // loads if the file exists

  CalibrationResult get_or_compute(int n, double tau, const std::vector<double>& b_grid,
                                   const std::vector<double>& c_grid, int step_count = 0);
  void save() const;  // no-op when constructed without a path

 private:
  std::string path_;
  std::map<std::pair<int, double>, CalibrationResult> entries_;
};

struct GridSearchResult {
  double tau = 0.0;
  double t_sim = 0.0;
  double epsilon = 0.0;
  double c_opt_abs = 0.0;
  double b_opt = 0.0;
  double objective = 0.0;  // mean success over the instance set
};

// Greedy coordinate descent over (tau, t, eps, c) in that order, one full
// pass each, objective = mean exact-solve success over the instances.  b
// follows the ferromagnetic calibration at each candidate tau.
GridSearchResult grid_search_params(const std::vector<IsingInstance>& instances,
                                    Algorithm algorithm,
                                    const std::vector<double>& tau_grid,
                                    const std::vector<double>& t_grid,
                                    const std::vector<double>& eps_grid,
                                    const std::vector<double>& c_grid,
                                    CalibrationCache& cache, int step_count = 0);

}  // namespace daqgo
