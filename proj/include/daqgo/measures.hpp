#pragma once

#include <map>
#include <optional>
#include <string>

#include "daqgo/dynamics.hpp"
#include "daqgo/ising.hpp"
#include "daqgo/state.hpp"

namespace daqgo {

enum class MeasureKind { EnergyQgo, Daqgo1, Daqgo2, Daqgo3, Daqgo4 };

enum class Algorithm { Qa, Qgo, Daqgo1, Daqgo2, Daqgo3, Daqgo4 };

std::string to_string(MeasureKind kind);
std::string to_string(Algorithm algo);
Algorithm algorithm_from_string(const std::string& name);

// The measure kind driving a greedy solve; Qa has no measure.
MeasureKind measure_kind_for(Algorithm algo);

struct MeasureSpec {
  MeasureKind kind = MeasureKind::EnergyQgo;
  double t_sim = 0.0;    // Hamiltonian-simulation duration; unused for
                         // EnergyQgo and Daqgo4
  double epsilon = 0.0;  // ancilla phase rate, Daqgo1 only
};

struct MeasureOutcome {
  double value = 0.0;                  // signed goodness statistic
  std::map<std::string, double> raw;   // labeled probabilities / moments
};

// value = <psi(tau)|H^z|psi(tau)> after a full anneal; raw carries the first
// and second diagonal moments so shot planning can reach the variance.
MeasureOutcome measure_energy_qgo(const IsingInstance& inst, const AnnealParams& params);

// Ancilla interferometry over separately prepared test and reference
// registers: H on the ancilla, both registers annealed unconditionally,
// phase evolution exp(-i H^z t) on test and its adjoint on reference under
// the closed ancilla control, Rz(eps*t), H, ancilla readout.  Runs the
// shared pre-Rz state at eps = 0 and eps = spec.epsilon;
// value = P0(eps) - P0(0); raw exposes both P0's (selection uses P0(0)).
MeasureOutcome measure_daqgo1(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec);

// Two-ancilla branch circuit: Rx(pi/2) on the first ancilla, H on the
// second, four doubly-controlled anneal blocks (second-ancilla bit selects
// test/reference preparation), CZ, phase-adjoint evolution under the first
// ancilla's closed control, H on both ancillas.  Q^(j) is the conditional
// probability difference of the first ancilla within second-ancilla branch
// j.  value = (Q0 + Q1)/t_sim.
MeasureOutcome measure_daqgo2(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec);

// Same circuit, single branch: value = Q0 at t = spec.t_sim (t = 0 legal,
// reducing to the overlap statistic below).
MeasureOutcome measure_daqgo3(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec);

// One-ancilla overlap circuit: Rx(pi/2), open-controlled reference
// preparation, closed-controlled test preparation, H, readout.
// value = P0 - P1, the imaginary part of the reference-test overlap.
MeasureOutcome measure_daqgo4(const IsingInstance& inst, const AnnealParams& params_test,
                              const AnnealParams& params_ref, const MeasureSpec& spec);

// Dispatch on spec.kind; for EnergyQgo the value is the test-minus-reference
// energy difference and raw carries both states' moments.
MeasureOutcome evaluate_measure(const IsingInstance& inst, const AnnealParams& params_test,
                                const AnnealParams& params_ref, const MeasureSpec& spec);

// f1^n1 * f2^n2: product fidelity of a circuit with n1 gates at fidelity f1
// and n2 gates at f2.
double predict_circuit_fidelity(double f1, int n1, double f2, int n2);

// Internal assembly paths taking pre-evolved register states.  The greedy
// solver reuses a per-round reference state through these; tests pin them
// against the generic controlled-evolution construction.
MeasureOutcome daqgo1_from_states(const IsingInstance& inst, const StateVector& psi_t,
                                  const StateVector& psi_r, double t_sim, double epsilon);
MeasureOutcome daqgo23_from_states(const IsingInstance& inst, const StateVector& psi_t,
                                   const StateVector& psi_r, double t_sim,
                                   MeasureKind kind);
MeasureOutcome daqgo4_from_states(const StateVector& psi_t, const StateVector& psi_r);
MeasureOutcome energy_outcome_from_state(const IsingInstance& inst, const StateVector& psi);

}  // namespace daqgo
