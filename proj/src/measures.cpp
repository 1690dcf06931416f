#include "daqgo/measures.hpp"

#include <cmath>
#include <stdexcept>

#include "daqgo/gates.hpp"

namespace daqgo {

namespace {

using cd = std::complex<double>;

void check_same_tau(const AnnealParams& a, const AnnealParams& b) {
  if (a.tau != b.tau)
    throw std::invalid_argument("measure: test and reference blocks must share tau");
}

void check_register(const StateVector& psi, const IsingInstance& inst, const char* who) {
  if (psi.n_qubits != inst.n())
    throw std::invalid_argument(std::string(who) + ": register size must equal n");
}

}  // namespace

std::string to_string(MeasureKind kind) {
  switch (kind) {
    case MeasureKind::EnergyQgo: return "energy_qgo";
    case MeasureKind::Daqgo1: return "daqgo1";
    case MeasureKind::Daqgo2: return "daqgo2";
    case MeasureKind::Daqgo3: return "daqgo3";
    case MeasureKind::Daqgo4: return "daqgo4";
  }
  throw std::invalid_argument("to_string: bad MeasureKind");
}

std::string to_string(Algorithm algo) {
  switch (algo) {
    case Algorithm::Qa: return "qa";
    case Algorithm::Qgo: return "qgo";
    case Algorithm::Daqgo1: return "daqgo1";
    case Algorithm::Daqgo2: return "daqgo2";
    case Algorithm::Daqgo3: return "daqgo3";
    case Algorithm::Daqgo4: return "daqgo4";
  }
  throw std::invalid_argument("to_string: bad Algorithm");
}

Algorithm algorithm_from_string(const std::string& name) {
  if (name == "qa") return Algorithm::Qa;
  if (name == "qgo") return Algorithm::Qgo;
  if (name == "daqgo1") return Algorithm::Daqgo1;
  if (name == "daqgo2") return Algorithm::Daqgo2;
  if (name == "daqgo3") return Algorithm::Daqgo3;
  if (name == "daqgo4") return Algorithm::Daqgo4;
  throw std::invalid_argument("unknown algorithm: " + name);
}

MeasureKind measure_kind_for(Algorithm algo) {
  switch (algo) {
    case Algorithm::Qgo: return MeasureKind::EnergyQgo;
    case Algorithm::Daqgo1: return MeasureKind::Daqgo1;
    case Algorithm::Daqgo2: return MeasureKind::Daqgo2;
    case Algorithm::Daqgo3: return MeasureKind::Daqgo3;
    case Algorithm::Daqgo4: return MeasureKind::Daqgo4;
    case Algorithm::Qa: break;
  }
  throw std::invalid_argument("measure_kind_for: algorithm has no greedy measure");
}

MeasureOutcome energy_outcome_from_state(const IsingInstance& inst, const StateVector& psi) {
  check_register(psi, inst, "energy_outcome_from_state");
  const std::vector<double> energies = energy_table(inst);
  double e1 = 0.0, e2 = 0.0;
  for (std::size_t u = 0; u < psi.dim(); ++u) {
    const double p = std::norm(psi.amps[u]);
    e1 += p * energies[u];
    e2 += p * energies[u] * energies[u];
  }
  MeasureOutcome out;
  out.value = e1;
  out.raw["energy"] = e1;
  out.raw["energy_second_moment"] = e2;
  out.raw["variance"] = e2 - e1 * e1;
  return out;
}

MeasureOutcome measure_energy_qgo(const IsingInstance& inst, const AnnealParams& params) {
  return energy_outcome_from_state(inst, anneal_from_plus(inst, params));
}

MeasureOutcome daqgo1_from_states(const IsingInstance& inst, const StateVector& psi_t,
                                  const StateVector& psi_r, double t_sim, double epsilon) {
  check_register(psi_t, inst, "daqgo1_from_states");
  check_register(psi_r, inst, "daqgo1_from_states");
  if (t_sim < 0.0 || epsilon < 0.0)
    throw std::invalid_argument("daqgo1_from_states: t_sim and epsilon must be nonnegative");
  const int n = inst.n();
  const int anc = 2 * n;

  // Test register on the low bits, reference above it, ancilla on top in
  // (|0> + |1>)/sqrt(2); then the phase evolution on each register under
  // the closed ancilla control.
  StateVector anc_plus = StateVector::zero_state(1);
  apply_h(anc_plus, 0);
  StateVector full = tensor(tensor(psi_t, psi_r), anc_plus);
  full = diagonal_phase_evolve(inst, t_sim, full, +1, 0, {{anc, Polarity::Closed}});
  full = diagonal_phase_evolve(inst, t_sim, full, -1, n, {{anc, Polarity::Closed}});

  const auto p0_with_phase = [&](double eps) {
    StateVector branch = full;
    apply_rz(branch, anc, eps * t_sim);
    apply_h(branch, anc);
    return prob_qubit_zero(branch, anc);
  };
  const double p0_at_0 = p0_with_phase(0.0);
  const double p0_at_eps = p0_with_phase(epsilon);

  MeasureOutcome out;
  out.value = p0_at_eps - p0_at_0;
  out.raw["p0_at_0"] = p0_at_0;
  out.raw["p0_at_eps"] = p0_at_eps;
  out.raw["t_sim"] = t_sim;
  out.raw["epsilon"] = epsilon;
  return out;
}

MeasureOutcome measure_daqgo1(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec) {
  if (spec.kind != MeasureKind::Daqgo1) throw std::invalid_argument("measure_daqgo1: wrong kind");
  check_same_tau(params_test, params_ref);
  return daqgo1_from_states(inst, anneal_from_plus(inst, params_test),
                            anneal_from_plus(inst, params_ref), spec.t_sim, spec.epsilon);
}

MeasureOutcome daqgo23_from_states(const IsingInstance& inst, const StateVector& psi_t,
                                   const StateVector& psi_r, double t_sim,
                                   MeasureKind kind) {
  check_register(psi_t, inst, "daqgo23_from_states");
  check_register(psi_r, inst, "daqgo23_from_states");
  if (kind != MeasureKind::Daqgo2 && kind != MeasureKind::Daqgo3)
    throw std::invalid_argument("daqgo23_from_states: wrong kind");
  if (t_sim < 0.0) throw std::invalid_argument("daqgo23_from_states: t_sim must be nonnegative");
  if (kind == MeasureKind::Daqgo2 && t_sim == 0.0)
    throw std::invalid_argument("daqgo23_from_states: t_sim must be positive for this measure");
  const int n = inst.n();
  const int anc1 = n;      // Rx(pi/2) ancilla, readout qubit
  const int anc2 = n + 1;  // H ancilla, branch selector

  // Controlled preparation blocks on product inputs factorize: the block
  // with ancilla bits (a1, a2) holds x[a1]*y[a2] times the register state
  // selected by a2 (0 -> test, 1 -> reference).
  const cd x[2] = {cd(1.0 / std::sqrt(2.0), 0.0), cd(0.0, -1.0 / std::sqrt(2.0))};
  const double y = 1.0 / std::sqrt(2.0);
  StateVector full(n + 2);
  const std::size_t block = std::size_t{1} << n;
  for (int a2 = 0; a2 < 2; ++a2) {
    const StateVector& reg = (a2 == 0) ? psi_t : psi_r;
    for (int a1 = 0; a1 < 2; ++a1) {
      const cd coeff = x[a1] * y;
      cd* dst = full.amps.data() +
                ((std::size_t{1} * a2) << (n + 1)) + ((std::size_t{1} * a1) << n);
      for (std::size_t u = 0; u < block; ++u) dst[u] = coeff * reg.amps[u];
    }
  }

  apply_cz(full, anc1, anc2);
  full = diagonal_phase_evolve(inst, t_sim, full, -1, 0, {{anc1, Polarity::Closed}});
  apply_h(full, anc1);
  apply_h(full, anc2);

  double joint[2][2] = {{0.0, 0.0}, {0.0, 0.0}};  // [a1][a2]
  for (std::size_t v = 0; v < full.dim(); ++v) {
    const int a1 = (v >> anc1) & 1;
    const int a2 = (v >> anc2) & 1;
    joint[a1][a2] += std::norm(full.amps[v]);
  }
  const double p_branch0 = joint[0][0] + joint[1][0];
  const double p_branch1 = joint[0][1] + joint[1][1];
  const double q0 = (joint[0][0] - joint[1][0]) / p_branch0;
  const double q1 = (joint[0][1] - joint[1][1]) / p_branch1;

  MeasureOutcome out;
  out.value = (kind == MeasureKind::Daqgo2) ? (q0 + q1) / t_sim : q0;
  out.raw["p00"] = joint[0][0];
  out.raw["p10"] = joint[1][0];
  out.raw["p01"] = joint[0][1];
  out.raw["p11"] = joint[1][1];
  out.raw["p_branch0"] = p_branch0;
  out.raw["p0_given_branch0"] = joint[0][0] / p_branch0;
  out.raw["p1_given_branch0"] = joint[1][0] / p_branch0;
  out.raw["p0_given_branch1"] = joint[0][1] / p_branch1;
  out.raw["p1_given_branch1"] = joint[1][1] / p_branch1;
  out.raw["q0"] = q0;
  out.raw["q1"] = q1;
  out.raw["t_sim"] = t_sim;
  return out;
}

MeasureOutcome measure_daqgo2(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec) {
  if (spec.kind != MeasureKind::Daqgo2) throw std::invalid_argument("measure_daqgo2: wrong kind");
  check_same_tau(params_test, params_ref);
  return daqgo23_from_states(inst, anneal_from_plus(inst, params_test),
                             anneal_from_plus(inst, params_ref), spec.t_sim, spec.kind);
}

MeasureOutcome measure_daqgo3(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec) {
  if (spec.kind != MeasureKind::Daqgo3) throw std::invalid_argument("measure_daqgo3: wrong kind");
  check_same_tau(params_test, params_ref);
  return daqgo23_from_states(inst, anneal_from_plus(inst, params_test),
                             anneal_from_plus(inst, params_ref), spec.t_sim, spec.kind);
}

MeasureOutcome daqgo4_from_states(const StateVector& psi_t, const StateVector& psi_r) {
  if (psi_t.n_qubits != psi_r.n_qubits)
    throw std::invalid_argument("daqgo4_from_states: register sizes differ");
  const int n = psi_t.n_qubits;

  // Open-controlled reference prep fills the ancilla-0 block, closed-
  // controlled test prep the ancilla-1 block (with the -i from Rx(pi/2)).
  StateVector full(n + 1);
  const cd coeff0 = cd(1.0 / std::sqrt(2.0), 0.0);
  const cd coeff1 = cd(0.0, -1.0 / std::sqrt(2.0));
  const std::size_t block = std::size_t{1} << n;
  for (std::size_t u = 0; u < block; ++u) {
    full.amps[u] = coeff0 * psi_r.amps[u];
    full.amps[block + u] = coeff1 * psi_t.amps[u];
  }
  apply_h(full, n);
  const double p0 = prob_qubit_zero(full, n);

  MeasureOutcome out;
  out.value = 2.0 * p0 - 1.0;
  out.raw["p0"] = p0;
  out.raw["p1"] = 1.0 - p0;
  return out;
}

MeasureOutcome measure_daqgo4(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec) {
  if (spec.kind != MeasureKind::Daqgo4) throw std::invalid_argument("measure_daqgo4: wrong kind");
  check_same_tau(params_test, params_ref);
  return daqgo4_from_states(anneal_from_plus(inst, params_test),
                            anneal_from_plus(inst, params_ref));
}

MeasureOutcome evaluate_measure(const IsingInstance& inst, const AnnealParams& params_test,
                                const AnnealParams& params_ref, const MeasureSpec& spec) {
  switch (spec.kind) {
    case MeasureKind::EnergyQgo: {
      check_same_tau(params_test, params_ref);
      const MeasureOutcome test = measure_energy_qgo(inst, params_test);
      const MeasureOutcome ref = measure_energy_qgo(inst, params_ref);
      MeasureOutcome out;
      out.value = test.value - ref.value;
      for (const auto& [key, v] : test.raw) out.raw["test_" + key] = v;
      for (const auto& [key, v] : ref.raw) out.raw["ref_" + key] = v;
      return out;
    }
    case MeasureKind::Daqgo1: return measure_daqgo1(inst, params_test, params_ref, spec);
    case MeasureKind::Daqgo2: return measure_daqgo2(inst, params_test, params_ref, spec);
    case MeasureKind::Daqgo3: return measure_daqgo3(inst, params_test, params_ref, spec);
    case MeasureKind::Daqgo4: return measure_daqgo4(inst, params_test, params_ref, spec);
  }
  throw std::invalid_argument("evaluate_measure: bad kind");
}

double predict_circuit_fidelity(double f1, int n1, double f2, int n2) {
  if (f1 < 0.0 || f1 > 1.0 || f2 < 0.0 || f2 > 1.0)
    throw std::invalid_argument("predict_circuit_fidelity: fidelities must lie in [0, 1]");
  if (n1 < 0 || n2 < 0)
    throw std::invalid_argument("predict_circuit_fidelity: gate counts must be nonnegative");
  return std::pow(f1, n1) * std::pow(f2, n2);
}

}  // namespace daqgo
