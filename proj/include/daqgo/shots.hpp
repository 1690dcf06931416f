#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "daqgo/ising.hpp"
#include "daqgo/measures.hpp"
#include "daqgo/solver.hpp"

namespace daqgo {

struct ShotPlan {
  double z_star = 2.58;
  double d_selection = 0.0;        // detectable difference, selection test
  double d_sign = 0.0;             // detectable difference, sign test
  long per_eval_selection = 0;     // shots per sensitivity evaluation
  long per_eval_sign = 0;          // shots per sign evaluation
  long total = 0;                  // algorithm multiplier applied
  bool degenerate = false;         // a d collapsed to zero; counts are sentinels
  std::string note;
};

// ceil(z*^2 (s1 + s2) / d^2) for normally distributed measurements with
// variances s1, s2; never below 1.
long sample_size_normal(double sigma1_sq, double sigma2_sq, double d, double z_star);

// ceil(z*^2 p(1-p) sqrt(2) / d^2): Wald sample size for distinguishing two
// proportions d apart near p, with the two-sample inflation factor.
long sample_size_wald(double p, double d, double z_star);

// Monte Carlo power check: draws paired binomial data sets at p -/+ d/2 with
// N = sample_size_wald(p, d, z_star) each, runs the two-proportion z test,
// and returns the fraction of trials whose test statistic orders the groups
// correctly (z > 0 for the truly larger group; ties count as failures).
double wald_monte_carlo(double p, double d, double z_star, long trials,
                        std::uint64_t rng_seed);

// Multinomial frequency estimate of a probability vector.
std::vector<double> sample_frequencies(const std::vector<double>& probs, long shots,
                                       std::uint64_t rng_seed);

// Finite-shot version of an exact outcome: every readout probability in raw
// is replaced by an empirical frequency and the value statistic is
// recomputed from those frequencies.
MeasureOutcome sampled_measure(const MeasureOutcome& exact, MeasureKind kind, long shots,
                               std::uint64_t rng_seed);

// Finite-shot energy estimate: draws basis states from |amps|^2 and averages
// classical energies; raw carries the empirical moments.
MeasureOutcome sampled_energy_measure(const IsingInstance& inst, const StateVector& psi,
                                      long shots, std::uint64_t rng_seed);

// Per-experiment totals: shots_selection and shots_sign are per-evaluation
// counts; the multiplier depends on how each algorithm schedules its
// measurements across the greedy iterations.
long total_shots(Algorithm algorithm, int n, long shots_selection, long shots_sign);

// First-iteration shot planning: selection d is the gap between the best and
// second-best absolute sensitivities, sign d the best statistic's distance
// from its null value; each is pushed through the distribution-appropriate
// sample-size formula.
ShotPlan estimate_shots_for_instance(const IsingInstance& inst, const SolveConfig& config,
                                     Algorithm algorithm, double z_star = 2.58);

}  // namespace daqgo
