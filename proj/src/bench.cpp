#include "daqgo/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "daqgo/rng.hpp"

namespace daqgo {

namespace {

const std::vector<double> kCalBGrid = {0.5, 1.0, 1.5, 2.0};
const std::vector<double> kCalCGrid = {0.5, 1.0, 1.5, 2.0, 2.5};

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// Index-deterministic worker pool: output order never depends on thread
// scheduling.
template <typename Fn>
void parallel_for(int count, Fn&& fn) {
  const unsigned hw = std::thread::hardware_concurrency();
  const unsigned workers = std::min<unsigned>(std::max(1u, hw), static_cast<unsigned>(count));
  if (workers <= 1) {
    for (int k = 0; k < count; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (int k = next.fetch_add(1); k < count; k = next.fetch_add(1)) fn(k);
    });
  }
  for (auto& t : pool) t.join();
}

long lower_median(std::vector<long> v) {
  std::sort(v.begin(), v.end());
  return v[(v.size() - 1) / 2];
}

struct ParamChoice {
  double b = 0.0;
  double c_opt_abs = 0.0;
};

ParamChoice choose_params(const ExperimentConfig& cfg, CalibrationCache& cache, int n,
                          double tau) {
  if (!cfg.auto_calibrate) return {cfg.b, cfg.c_opt_abs};
  const CalibrationResult cal =
      cache.get_or_compute(n, tau, kCalBGrid, kCalCGrid, cfg.step_count);
  return {cal.b_opt, std::abs(cal.c_opt)};
}

std::vector<ResultRow> run_grid(const ExperimentConfig& cfg) {
  validate_config(cfg);
  CalibrationCache cache = cfg.calibration_path.empty()
                               ? CalibrationCache()
                               : CalibrationCache(cfg.calibration_path);
  std::vector<ResultRow> rows;
  for (const int n : cfg.n_list) {
    const std::vector<IsingInstance> instances =
        build_instances(n, cfg.instance_count, cfg.rng_seed);
    std::vector<GroundStateSet> grounds;
    grounds.reserve(instances.size());
    for (const auto& inst : instances) grounds.push_back(brute_force_ground(inst, 1e-9));

    for (const Algorithm algo : cfg.algorithms) {
      for (const double tau : cfg.tau_list) {
        const ParamChoice pc = choose_params(cfg, cache, n, tau);
        const auto start = std::chrono::steady_clock::now();
        std::vector<InstanceOutcome> outcomes(instances.size());
        parallel_for(static_cast<int>(instances.size()), [&](int k) {
          InstanceOutcome& out = outcomes[k];
          out.seed = derive_seed(cfg.rng_seed, static_cast<std::uint64_t>(k));
          if (algo == Algorithm::Qa) {
            out.success =
                qa_success_probability(instances[k], tau, pc.b, cfg.step_count);
          } else {
            const SolveConfig sc = make_solve_config(algo, cfg, tau, pc.b, pc.c_opt_abs);
            const SolveTrace trace = solve(instances[k], sc);
            out.success = grounds[k].contains(trace.solution) ? 1.0 : 0.0;
            for (const auto& rec : trace.iterations)
              if (rec.degenerate) out.degenerate = true;
          }
        });
        ResultRow row;
        row.algorithm = to_string(algo);
        row.n = n;
        row.tau = tau;
        row.instances = static_cast<int>(instances.size());
        double sum = 0.0;
        for (const auto& o : outcomes) sum += o.success;
        row.success = sum / static_cast<double>(outcomes.size());
        row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                          .count();
        row.per_instance = std::move(outcomes);
        rows.push_back(std::move(row));
      }
    }
  }
  cache.save();
  return rows;
}

}  // namespace

void validate_config(const ExperimentConfig& cfg) {
  if (cfg.algorithms.empty()) throw std::invalid_argument("config: no algorithms");
  if (cfg.n_list.empty()) throw std::invalid_argument("config: empty n grid");
  if (cfg.tau_list.empty()) throw std::invalid_argument("config: empty tau grid");
  for (const int n : cfg.n_list)
    if (n < 2) throw std::invalid_argument("config: n must be at least 2");
  for (const double tau : cfg.tau_list)
    if (!(tau > 0.0)) throw std::invalid_argument("config: tau must be positive");
  if (cfg.instance_count < 1) throw std::invalid_argument("config: instance_count < 1");
  if (!(cfg.c_opt_abs > 0.0) && !cfg.auto_calibrate)
    throw std::invalid_argument("config: c_opt_abs must be positive");
  if (!(cfg.b > 0.0) && !cfg.auto_calibrate)
    throw std::invalid_argument("config: b must be positive");
}

std::vector<IsingInstance> build_instances(int n, int count, std::uint64_t rng_seed) {
  std::vector<IsingInstance> instances;
  instances.reserve(count);
  for (int k = 0; k < count; ++k)
    instances.push_back(random_instance(n, derive_seed(rng_seed, static_cast<std::uint64_t>(k))));
  return instances;
}

double default_t_sim(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::Daqgo1: return 0.5;
    case Algorithm::Daqgo2:
    case Algorithm::Daqgo3: return 0.05;
    default: return 0.0;
  }
}

SolveConfig make_solve_config(Algorithm algorithm, const ExperimentConfig& cfg,
                              double tau, double b, double c_opt_abs) {
  SolveConfig sc;
  sc.measure.kind = measure_kind_for(algorithm);
  sc.measure.t_sim = cfg.t_sim >= 0.0 ? cfg.t_sim : default_t_sim(algorithm);
  sc.measure.epsilon = cfg.epsilon;
  sc.tau = tau;
  sc.b_opt = b;
  sc.c_opt_abs = c_opt_abs;
  sc.h_diff = cfg.h_diff;
  sc.step_count = cfg.step_count;
  return sc;
}

std::vector<ResultRow> run_tau_sweep(const ExperimentConfig& cfg) { return run_grid(cfg); }

std::vector<ResultRow> run_size_sweep(const ExperimentConfig& cfg) { return run_grid(cfg); }

std::vector<ShotReportRow> run_shot_report(const ExperimentConfig& cfg) {
  validate_config(cfg);
  for (const Algorithm algo : cfg.algorithms)
    if (algo == Algorithm::Qa)
      throw std::invalid_argument("shot report: plain annealing has no shot schedule");
  CalibrationCache cache = cfg.calibration_path.empty()
                               ? CalibrationCache()
                               : CalibrationCache(cfg.calibration_path);
  const double tau = cfg.tau_list.front();

  std::vector<ShotReportRow> rows;
  for (const int n : cfg.n_list) {
    const std::vector<IsingInstance> instances =
        build_instances(n, cfg.instance_count, cfg.rng_seed);
    const ParamChoice pc = choose_params(cfg, cache, n, tau);
    for (const Algorithm algo : cfg.algorithms) {
      const SolveConfig sc = make_solve_config(algo, cfg, tau, pc.b, pc.c_opt_abs);
      std::vector<ShotPlan> plans(instances.size());
      parallel_for(static_cast<int>(instances.size()), [&](int k) {
        plans[k] = estimate_shots_for_instance(instances[k], sc, algo);
      });
      ShotReportRow row;
      row.algorithm = to_string(algo);
      row.n = n;
      std::vector<long> sel, sign, total;
      for (const auto& plan : plans) {
        if (plan.degenerate) {
          ++row.degenerate;
          continue;
        }
        sel.push_back(plan.per_eval_selection);
        sign.push_back(plan.per_eval_sign);
        total.push_back(plan.total);
      }
      if (!sel.empty()) {
        row.sel_shots = lower_median(sel);
        row.sign_shots = lower_median(sign);
        row.total = lower_median(total);
      }
      rows.push_back(std::move(row));
    }
  }
  cache.save();
  return rows;
}

std::string rows_to_csv(const std::vector<ResultRow>& rows, bool with_timing) {
  std::string out = "algorithm,n,tau,success,instances,seconds\n";
  for (const auto& r : rows) {
    out += r.algorithm;
    out += ',' + std::to_string(r.n);
    out += ',' + fmt("%g", r.tau);
    out += ',' + fmt("%.10g", r.success);
    out += ',' + std::to_string(r.instances);
    out += ',' + (with_timing ? fmt("%.3f", r.seconds) : std::string("0.000"));
    out += '\n';
  }
  return out;
}

std::string shot_rows_to_csv(const std::vector<ShotReportRow>& rows) {
  std::string out = "algorithm,n,sel_shots,sign_shots,total,degenerate\n";
  for (const auto& r : rows) {
    out += r.algorithm;
    out += ',' + std::to_string(r.n);
    out += ',' + std::to_string(r.sel_shots);
    out += ',' + std::to_string(r.sign_shots);
    out += ',' + std::to_string(r.total);
    out += ',' + std::to_string(r.degenerate);
    out += '\n';
  }
  return out;
}

std::string rows_to_detail_json(const std::vector<ResultRow>& rows) {
  nlohmann::json doc = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json per = nlohmann::json::array();
    for (const auto& o : r.per_instance)
      per.push_back({{"seed", o.seed}, {"success", o.success}, {"degenerate", o.degenerate}});
    doc.push_back({{"algorithm", r.algorithm},
                   {"n", r.n},
                   {"tau", r.tau},
                   {"success", r.success},
                   {"instances", r.instances},
                   {"seconds", r.seconds},
                   {"per_instance", per}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace daqgo
