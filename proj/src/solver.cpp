#include "daqgo/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace daqgo {

namespace {

double resolved_h(const SolveConfig& config) {
  if (config.h_diff < 0.0) throw std::invalid_argument("SolveConfig: h_diff must be nonnegative");
  return config.h_diff == 0.0 ? config.c_opt_abs : config.h_diff;
}

void check_config(const IsingInstance& inst, const SolveConfig& config) {
  if (config.c_opt_abs <= 0.0)
    throw std::invalid_argument("SolveConfig: c_opt_abs must be positive");
  (void)inst;
}

AnnealParams params_for(const SolveConfig& config, std::vector<double> c) {
  AnnealParams params;
  params.tau = config.tau;
  params.b = config.b_opt;
  params.c = std::move(c);
  params.step_count = config.step_count;
  return params;
}

// Commit direction for a signed statistic: descend against its sign; an
// exact zero cannot distinguish the directions, so fall back to +1 and flag.
int commit_sign(double g, bool* degenerate) {
  if (g > 0.0) return -1;
  if (g < 0.0) return 1;
  if (degenerate) *degenerate = true;
  return 1;
}

// Shared greedy loop.  probe(i, record) returns the signed statistic for
// variable i and appends diagnostics; select_key(i) is minimized.
SolveTrace greedy_loop(const IsingInstance& inst, const SolveConfig& config,
                       const std::function<void(const std::vector<double>&, int,
                                                IterationRecord&)>& probe) {
  const int n = inst.n();
  if (n < 2) throw std::invalid_argument("solve: n must be at least 2");

  SolveTrace trace;
  std::vector<double> c(n, 0.0);
  std::vector<bool> fixed(n, false);

  for (int round = 0; round < n; ++round) {
    IterationRecord record;
    for (int i = 0; i < n; ++i) {
      if (fixed[i]) continue;
      probe(c, i, record);
      ++trace.evaluation_count;
    }
    // Selection statistic: smaller ranks earlier, ties to the lowest index.
    int best = -1;
    double best_key = std::numeric_limits<double>::infinity();
    for (const auto& [i, key] : record.selection_stats) {
      if (key < best_key) {
        best_key = key;
        best = i;
      }
    }
    const double g = record.sensitivities.at(best);
    record.fixed_index = best;
    record.chosen_sign = commit_sign(g, &record.degenerate);
    c[best] = record.chosen_sign * config.c_opt_abs;
    fixed[best] = true;
    trace.iterations.push_back(std::move(record));
  }

  trace.final_c = c;
  trace.solution.spins.resize(n);
  for (int i = 0; i < n; ++i) trace.solution.spins[i] = c[i] > 0.0 ? 1 : -1;
  return trace;
}

}  // namespace

MeasureOutcome sensitivity_outcome(const IsingInstance& inst, const SolveConfig& config,
                                   const std::vector<double>& c_current, int i) {
  check_config(inst, config);
  const int n = inst.n();
  if (c_current.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("sensitivity: c_current length must equal n");
  if (i < 0 || i >= n) throw std::out_of_range("sensitivity: index out of range");
  if (c_current[i] != 0.0) throw std::invalid_argument("sensitivity: variable already fixed");

  std::vector<double> c_test = c_current;
  c_test[i] += resolved_h(config);
  return evaluate_measure(inst, params_for(config, std::move(c_test)),
                          params_for(config, c_current), config.measure);
}

double sensitivity(const IsingInstance& inst, const SolveConfig& config,
                   const std::vector<double>& c_current, int i) {
  return sensitivity_outcome(inst, config, c_current, i).value;
}

SolveTrace solve(const IsingInstance& inst, const SolveConfig& config) {
  check_config(inst, config);
  const double h = resolved_h(config);
  const MeasureKind kind = config.measure.kind;

  // The reference preparation depends only on the current c, so each round
  // computes it once and every probe reuses it.
  std::vector<double> ref_c_cached;
  StateVector ref_state;
  MeasureOutcome ref_energy;
  bool have_ref = false;

  const auto probe = [&](const std::vector<double>& c, int i, IterationRecord& record) {
    if (!have_ref || ref_c_cached != c) {
      ref_c_cached = c;
      if (kind == MeasureKind::EnergyQgo) {
        ref_energy = measure_energy_qgo(inst, params_for(config, c));
      } else {
        ref_state = anneal_from_plus(inst, params_for(config, c));
      }
      have_ref = true;
    }
    std::vector<double> c_test = c;
    c_test[i] += h;

    MeasureOutcome outcome;
    double select_key = 0.0;
    switch (kind) {
      case MeasureKind::EnergyQgo: {
        const MeasureOutcome test = measure_energy_qgo(inst, params_for(config, std::move(c_test)));
        outcome.value = test.value - ref_energy.value;
        select_key = -std::abs(outcome.value);
        break;
      }
      case MeasureKind::Daqgo1: {
        const StateVector test = anneal_from_plus(inst, params_for(config, std::move(c_test)));
        outcome = daqgo1_from_states(inst, test, ref_state, config.measure.t_sim,
                                     config.measure.epsilon);
        select_key = outcome.raw.at("p0_at_0");
        break;
      }
      case MeasureKind::Daqgo2:
      case MeasureKind::Daqgo3: {
        const StateVector test = anneal_from_plus(inst, params_for(config, std::move(c_test)));
        outcome = daqgo23_from_states(inst, test, ref_state, config.measure.t_sim, kind);
        select_key = -std::abs(outcome.value);
        break;
      }
      case MeasureKind::Daqgo4: {
        const StateVector test = anneal_from_plus(inst, params_for(config, std::move(c_test)));
        outcome = daqgo4_from_states(test, ref_state);
        select_key = -std::abs(outcome.value);
        break;
      }
    }
    record.sensitivities[i] = outcome.value;
    record.selection_stats[i] = select_key;
  };

  return greedy_loop(inst, config, probe);
}

SolveTrace solve_with_measure(const IsingInstance& inst, const SolveConfig& config,
                              const MeasureFn& fn) {
  check_config(inst, config);
  const double h = resolved_h(config);
  const auto probe = [&](const std::vector<double>& c, int i, IterationRecord& record) {
    std::vector<double> c_test = c;
    c_test[i] += h;
    const MeasureOutcome outcome = fn(c_test, c);
    record.sensitivities[i] = outcome.value;
    record.selection_stats[i] = -std::abs(outcome.value);
  };
  return greedy_loop(inst, config, probe);
}

double qa_success_probability(const IsingInstance& inst, double tau, double b,
                              int step_count) {
  AnnealParams params;
  params.tau = tau;
  params.b = b;
  params.c.assign(inst.n(), 0.0);
  params.step_count = step_count;
  const StateVector psi = anneal_from_plus(inst, params);
  const GroundStateSet ground = brute_force_ground(inst);
  double p = 0.0;
  for (const auto& config : ground.configs) p += std::norm(psi.amps[config_to_index(config)]);
  return p;
}

CalibrationResult calibrate_ferromagnet(int n, double tau, const std::vector<double>& b_grid,
                                        const std::vector<double>& c_grid, int step_count) {
  if (n < 2) throw std::invalid_argument("calibrate_ferromagnet: n must be at least 2");
  if (b_grid.empty() || c_grid.empty())
    throw std::invalid_argument("calibrate_ferromagnet: grids must be nonempty");

  const IsingInstance ferro = IsingInstance::uniform(n, 1.0 / (n - 1), 0.0);
  std::vector<double> bs = b_grid, cs = c_grid;
  std::sort(bs.begin(), bs.end());
  std::sort(cs.begin(), cs.end());

  CalibrationResult best;
  best.objective = -1.0;
  const std::size_t down = (std::size_t{1} << n) - 1;
  for (const double b : bs) {
    for (const double c : cs) {
      AnnealParams params;
      params.tau = tau;
      params.b = b;
      params.c.assign(n, c);
      params.step_count = step_count;
      const StateVector psi = anneal_from_plus(ferro, params);
      const double objective = std::norm(psi.amps[0]) + std::norm(psi.amps[down]);
      if (objective > best.objective) best = {b, c, objective};
    }
  }
  return best;
}

CalibrationCache::CalibrationCache(std::string path) : path_(std::move(path)) {
  std::ifstream in(path_);
  if (!in) return;
  nlohmann::json j;
  in >> j;
  for (const auto& entry : j) {
    const std::pair<int, double> key = {entry.at("n").get<int>(), entry.at("tau").get<double>()};
    entries_[key] = {entry.at("b_opt").get<double>(), entry.at("c_opt").get<double>(),
                     entry.at("objective").get<double>()};
  }
}

CalibrationResult CalibrationCache::get_or_compute(int n, double tau,
                                                   const std::vector<double>& b_grid,
                                                   const std::vector<double>& c_grid,
                                                   int step_count) {
  const std::pair<int, double> key = {n, tau};
  const auto it = entries_.find(key);
  if (it != entries_.end()) return it->second;
  const CalibrationResult result = calibrate_ferromagnet(n, tau, b_grid, c_grid, step_count);
  entries_[key] = result;
  return result;
}

void CalibrationCache::save() const {
  if (path_.empty()) return;
  nlohmann::json j = nlohmann::json::array();
  for (const auto& [key, result] : entries_) {
    j.push_back({{"n", key.first},
                 {"tau", key.second},
                 {"b_opt", result.b_opt},
                 {"c_opt", result.c_opt},
                 {"objective", result.objective}});
  }
  std::ofstream out(path_);
  if (!out) throw std::runtime_error("CalibrationCache: cannot write " + path_);
  out << j.dump(2) << '\n';
}

GridSearchResult grid_search_params(const std::vector<IsingInstance>& instances,
                                    Algorithm algorithm,
                                    const std::vector<double>& tau_grid,
                                    const std::vector<double>& t_grid,
                                    const std::vector<double>& eps_grid,
                                    const std::vector<double>& c_grid,
                                    CalibrationCache& cache, int step_count) {
  if (instances.empty()) throw std::invalid_argument("grid_search_params: no instances");
  if (tau_grid.empty() || t_grid.empty() || eps_grid.empty() || c_grid.empty())
    throw std::invalid_argument("grid_search_params: grids must be nonempty");
  const MeasureKind kind = measure_kind_for(algorithm);

  GridSearchResult current{tau_grid.front(), t_grid.front(), eps_grid.front(),
                           c_grid.front(), 0.0, 0.0};

  const std::vector<double> cal_b = {0.5, 1.0, 1.5, 2.0};
  const std::vector<double> cal_c = {0.5, 1.0, 1.5, 2.0, 2.5};
  const int n = instances.front().n();

  const auto objective_at = [&](const GridSearchResult& point) {
    SolveConfig config;
    config.measure = {kind, point.t_sim, point.epsilon};
    config.tau = point.tau;
    config.b_opt = cache.get_or_compute(n, point.tau, cal_b, cal_c, step_count).b_opt;
    config.c_opt_abs = point.c_opt_abs;
    config.step_count = step_count;
    double successes = 0.0;
    for (const auto& inst : instances) {
      const SolveTrace trace = solve(inst, config);
      if (brute_force_ground(inst).contains(trace.solution)) successes += 1.0;
    }
    return successes / instances.size();
  };

  current.b_opt = cache.get_or_compute(n, current.tau, cal_b, cal_c, step_count).b_opt;
  current.objective = objective_at(current);

  const auto sweep = [&](const std::vector<double>& grid, double GridSearchResult::*field) {
    for (const double value : grid) {
      GridSearchResult candidate = current;
      candidate.*field = value;
      const double objective = objective_at(candidate);
      if (objective > current.objective) {
        current = candidate;
        current.objective = objective;
        current.b_opt = cache.get_or_compute(n, current.tau, cal_b, cal_c, step_count).b_opt;
      }
    }
  };

  sweep(tau_grid, &GridSearchResult::tau);
  sweep(t_grid, &GridSearchResult::t_sim);
  sweep(eps_grid, &GridSearchResult::epsilon);
  sweep(c_grid, &GridSearchResult::c_opt_abs);
  return current;
}

}  // namespace daqgo
