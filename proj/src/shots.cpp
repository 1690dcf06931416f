#include "daqgo/shots.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "daqgo/rng.hpp"

namespace daqgo {

namespace {

constexpr double kDegenerateFloor = 1e-12;

long ceil_at_least_one(double x) {
  const double c = std::ceil(x);
  if (c < 1.0) return 1;
  if (c > 9.0e18) throw std::overflow_error("sample size overflows");
  return static_cast<long>(c);
}

long binomial_draw(Rng& rng, long n, double p) {
  long successes = 0;
  for (long i = 0; i < n; ++i)
    if (rng.uniform() < p) ++successes;
  return successes;
}

// Ranks the first-iteration statistics: returns indices of the best and
// second-best variable under the given selection key (smaller key wins).
std::pair<int, int> best_two(const std::vector<double>& keys) {
  int b = 0;
  for (std::size_t i = 1; i < keys.size(); ++i)
    if (keys[i] < keys[b]) b = static_cast<int>(i);
  int s = (b == 0) ? 1 : 0;
  for (std::size_t i = 0; i < keys.size(); ++i) {
    if (static_cast<int>(i) == b) continue;
    if (keys[i] < keys[s]) s = static_cast<int>(i);
  }
  return {b, s};
}

}  // namespace

long sample_size_normal(double sigma1_sq, double sigma2_sq, double d, double z_star) {
  if (d <= 0.0) throw std::invalid_argument("sample_size_normal: d must be positive");
  if (sigma1_sq < 0.0 || sigma2_sq < 0.0)
    throw std::invalid_argument("sample_size_normal: variances must be nonnegative");
  if (z_star <= 0.0) throw std::invalid_argument("sample_size_normal: z_star must be positive");
  return ceil_at_least_one(z_star * z_star * (sigma1_sq + sigma2_sq) / (d * d));
}

long sample_size_wald(double p, double d, double z_star) {
  if (p <= 0.0 || p >= 1.0)
    throw std::invalid_argument("sample_size_wald: p must lie strictly inside (0, 1)");
  if (d <= 0.0) throw std::invalid_argument("sample_size_wald: d must be positive");
  if (z_star <= 0.0) throw std::invalid_argument("sample_size_wald: z_star must be positive");
  return ceil_at_least_one(z_star * z_star * p * (1.0 - p) / (d * d) * std::sqrt(2.0));
}

double wald_monte_carlo(double p, double d, double z_star, long trials,
                        std::uint64_t rng_seed) {
  if (trials < 1000) throw std::invalid_argument("wald_monte_carlo: need at least 1000 trials");
  const double p_lo = p - d / 2.0;
  const double p_hi = p + d / 2.0;
  if (p_lo <= 0.0 || p_hi >= 1.0)
    throw std::invalid_argument("wald_monte_carlo: p +/- d/2 must lie inside (0, 1)");
  const long n = sample_size_wald(p, d, z_star);

  Rng rng(rng_seed);
  long correct = 0;
  for (long trial = 0; trial < trials; ++trial) {
    const long x_lo = binomial_draw(rng, n, p_lo);
    const long x_hi = binomial_draw(rng, n, p_hi);
    const double f_lo = static_cast<double>(x_lo) / n;
    const double f_hi = static_cast<double>(x_hi) / n;
    const double pooled = static_cast<double>(x_lo + x_hi) / (2.0 * n);
    const double se = std::sqrt(pooled * (1.0 - pooled) * 2.0 / n);
    // The group generated at p + d/2 must come out on top; a zero statistic
    // cannot order the groups and counts as a failure.
    if (se > 0.0 && (f_hi - f_lo) / se > 0.0) ++correct;
  }
  return static_cast<double>(correct) / trials;
}

std::vector<double> sample_frequencies(const std::vector<double>& probs, long shots,
                                       std::uint64_t rng_seed) {
  if (shots < 1) throw std::invalid_argument("sample_frequencies: shots must be at least 1");
  if (probs.empty()) throw std::invalid_argument("sample_frequencies: empty distribution");
  double sum = 0.0;
  for (const double p : probs) {
    if (p < -1e-12) throw std::invalid_argument("sample_frequencies: negative probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9)
    throw std::invalid_argument("sample_frequencies: probabilities must sum to 1");

  Rng rng(rng_seed);
  std::vector<long> counts(probs.size(), 0);
  for (long shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * sum;
    double acc = 0.0;
    std::size_t pick = probs.size() - 1;
    for (std::size_t k = 0; k < probs.size(); ++k) {
      acc += probs[k];
      if (u < acc) {
        pick = k;
        break;
      }
    }
    ++counts[pick];
  }
  std::vector<double> freqs(probs.size());
  for (std::size_t k = 0; k < probs.size(); ++k)
    freqs[k] = static_cast<double>(counts[k]) / shots;
  return freqs;
}

MeasureOutcome sampled_measure(const MeasureOutcome& exact, MeasureKind kind, long shots,
                               std::uint64_t rng_seed) {
  if (shots < 1) throw std::invalid_argument("sampled_measure: shots must be at least 1");
  MeasureOutcome out = exact;
  switch (kind) {
    case MeasureKind::EnergyQgo:
      throw std::invalid_argument("sampled_measure: energy sampling needs the state; "
                                  "use sampled_energy_measure");
    case MeasureKind::Daqgo1: {
      const double p0 = exact.raw.at("p0_at_0");
      const double pe = exact.raw.at("p0_at_eps");
      const double f0 =
          sample_frequencies({p0, 1.0 - p0}, shots, derive_seed(rng_seed, 0))[0];
      const double fe =
          sample_frequencies({pe, 1.0 - pe}, shots, derive_seed(rng_seed, 1))[0];
      out.raw["p0_at_0"] = f0;
      out.raw["p0_at_eps"] = fe;
      out.value = fe - f0;
      return out;
    }
    case MeasureKind::Daqgo2:
    case MeasureKind::Daqgo3: {
      const std::vector<double> joint = {exact.raw.at("p00"), exact.raw.at("p10"),
                                         exact.raw.at("p01"), exact.raw.at("p11")};
      const std::vector<double> f = sample_frequencies(joint, shots, rng_seed);
      const double b0 = f[0] + f[1];
      const double b1 = f[2] + f[3];
      const double q0 = b0 > 0.0 ? (f[0] - f[1]) / b0 : 0.0;
      const double q1 = b1 > 0.0 ? (f[2] - f[3]) / b1 : 0.0;
      out.raw["p00"] = f[0];
      out.raw["p10"] = f[1];
      out.raw["p01"] = f[2];
      out.raw["p11"] = f[3];
      out.raw["p_branch0"] = b0;
      out.raw["p0_given_branch0"] = b0 > 0.0 ? f[0] / b0 : 0.0;
      out.raw["p1_given_branch0"] = b0 > 0.0 ? f[1] / b0 : 0.0;
      out.raw["p0_given_branch1"] = b1 > 0.0 ? f[2] / b1 : 0.0;
      out.raw["p1_given_branch1"] = b1 > 0.0 ? f[3] / b1 : 0.0;
      out.raw["q0"] = q0;
      out.raw["q1"] = q1;
      out.value = (kind == MeasureKind::Daqgo2) ? (q0 + q1) / exact.raw.at("t_sim") : q0;
      return out;
    }
    case MeasureKind::Daqgo4: {
      const double p0 = exact.raw.at("p0");
      const double f0 = sample_frequencies({p0, 1.0 - p0}, shots, rng_seed)[0];
      out.raw["p0"] = f0;
      out.raw["p1"] = 1.0 - f0;
      out.value = 2.0 * f0 - 1.0;
      return out;
    }
  }
  throw std::invalid_argument("sampled_measure: bad kind");
}

MeasureOutcome sampled_energy_measure(const IsingInstance& inst, const StateVector& psi,
                                      long shots, std::uint64_t rng_seed) {
  if (shots < 1) throw std::invalid_argument("sampled_energy_measure: shots must be at least 1");
  if (psi.n_qubits != inst.n())
    throw std::invalid_argument("sampled_energy_measure: register size must equal n");
  const std::vector<double> energies = energy_table(inst);
  Rng rng(rng_seed);

  // Inverse-CDF draw per shot over the basis distribution.
  std::vector<double> cdf(psi.dim());
  double acc = 0.0;
  for (std::size_t u = 0; u < psi.dim(); ++u) {
    acc += std::norm(psi.amps[u]);
    cdf[u] = acc;
  }
  double e1 = 0.0, e2 = 0.0;
  for (long shot = 0; shot < shots; ++shot) {
    const double u = rng.uniform() * acc;
    const std::size_t idx =
        std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin();
    const double e = energies[std::min(idx, psi.dim() - 1)];
    e1 += e;
    e2 += e * e;
  }
  e1 /= shots;
  e2 /= shots;
  MeasureOutcome out;
  out.value = e1;
  out.raw["energy"] = e1;
  out.raw["energy_second_moment"] = e2;
  out.raw["variance"] = e2 - e1 * e1;
  return out;
}

long total_shots(Algorithm algorithm, int n, long shots_selection, long shots_sign) {
  if (n < 2) throw std::invalid_argument("total_shots: n must be at least 2");
  if (shots_selection < 0 || shots_sign < 0)
    throw std::invalid_argument("total_shots: negative shot counts");
  const long nl = n;
  switch (algorithm) {
    case Algorithm::Qgo:
      return std::max(shots_selection, shots_sign) * (nl * (nl + 3) / 2);
    case Algorithm::Daqgo1:
      return (nl * (nl + 1) / 2) * shots_selection + 2 * nl * shots_sign;
    case Algorithm::Daqgo2:
    case Algorithm::Daqgo3:
    case Algorithm::Daqgo4:
      return std::max(shots_selection, shots_sign) * (nl * (nl + 1) / 2);
    case Algorithm::Qa: break;
  }
  throw std::invalid_argument("total_shots: algorithm has no shot schedule");
}

ShotPlan estimate_shots_for_instance(const IsingInstance& inst, const SolveConfig& config,
                                     Algorithm algorithm, double z_star) {
  const MeasureKind kind = measure_kind_for(algorithm);
  if (config.measure.kind != kind)
    throw std::invalid_argument("estimate_shots_for_instance: config measure kind mismatch");
  const int n = inst.n();

  // First-iteration probes against the shared c = 0 reference.
  const std::vector<double> zeros(n, 0.0);
  std::vector<MeasureOutcome> outcomes;
  outcomes.reserve(n);
  for (int i = 0; i < n; ++i) outcomes.push_back(sensitivity_outcome(inst, config, zeros, i));

  ShotPlan plan;
  plan.z_star = z_star;

  const auto mark_degenerate = [&](const std::string& why) {
    plan.degenerate = true;
    plan.per_eval_selection = 0;
    plan.per_eval_sign = 0;
    plan.total = 0;
    plan.note = why;
    return plan;
  };

  if (kind == MeasureKind::EnergyQgo) {
    std::vector<double> keys(n);
    for (int i = 0; i < n; ++i) keys[i] = -std::abs(outcomes[i].value);
    const auto [b, s] = best_two(keys);
    const double gb = std::abs(outcomes[b].value);
    const double gs = std::abs(outcomes[s].value);
    plan.d_selection = gb - gs;
    plan.d_sign = gb;
    const double var_ref = outcomes[b].raw.at("ref_variance");
    const double var_b = outcomes[b].raw.at("test_variance");
    const double var_s = outcomes[s].raw.at("test_variance");
    if (plan.d_selection <= kDegenerateFloor * std::max(1.0, gb))
      return mark_degenerate("selection gap is zero: best variables indistinguishable");
    if (plan.d_sign <= kDegenerateFloor)
      return mark_degenerate("sign statistic is zero");
    plan.per_eval_selection =
        sample_size_normal(var_b + var_ref, var_s + var_ref, plan.d_selection, z_star);
    plan.per_eval_sign = sample_size_normal(var_b, var_ref, plan.d_sign, z_star);
  } else if (kind == MeasureKind::Daqgo1) {
    std::vector<double> keys(n);
    for (int i = 0; i < n; ++i) keys[i] = outcomes[i].raw.at("p0_at_0");
    const auto [b, s] = best_two(keys);
    const double pb = keys[b];
    const double ps = keys[s];
    plan.d_selection = ps - pb;
    const double p0 = outcomes[b].raw.at("p0_at_0");
    const double pe = outcomes[b].raw.at("p0_at_eps");
    plan.d_sign = std::abs(pe - p0);
    if (plan.d_selection <= kDegenerateFloor)
      return mark_degenerate("selection gap is zero: best variables indistinguishable");
    if (plan.d_sign <= kDegenerateFloor)
      return mark_degenerate("sign statistic is zero at this phase setting");
    plan.per_eval_selection = sample_size_wald((pb + ps) / 2.0, plan.d_selection, z_star);
    plan.per_eval_sign = sample_size_wald((p0 + pe) / 2.0, plan.d_sign, z_star);
  } else {
    // Ancilla-probability statistics: the readout probability sits at
    // (1 + s)/2 for single-branch statistic s, so statistic gaps halve on
    // the probability scale.
    std::vector<double> keys(n);
    for (int i = 0; i < n; ++i) keys[i] = -std::abs(outcomes[i].value);
    const auto [b, s] = best_two(keys);
    const auto branch_stat = [&](int i) {
      return kind == MeasureKind::Daqgo4 ? outcomes[i].value : outcomes[i].raw.at("q0");
    };
    const double sb = std::abs(branch_stat(b));
    const double ss = std::abs(branch_stat(s));
    plan.d_selection = std::abs(sb - ss) / 2.0;
    plan.d_sign = sb / 2.0;
    if (plan.d_selection <= kDegenerateFloor)
      return mark_degenerate("selection gap is zero: best variables indistinguishable");
    if (plan.d_sign <= kDegenerateFloor)
      return mark_degenerate("sign statistic is zero");
    const double p_sel = (2.0 + sb + ss) / 4.0;
    const double p_sign = 0.5 + sb / 4.0;
    plan.per_eval_selection = sample_size_wald(std::min(p_sel, 1.0 - 1e-9),
                                               plan.d_selection, z_star);
    plan.per_eval_sign = sample_size_wald(std::min(p_sign, 1.0 - 1e-9),
                                          plan.d_sign, z_star);
  }

  plan.total = total_shots(algorithm, n, plan.per_eval_selection, plan.per_eval_sign);
  return plan;
}

}  // namespace daqgo
