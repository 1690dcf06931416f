#pragma once

#include <optional>
#include <string>
#include <vector>

#include "daqgo/ising.hpp"
#include "daqgo/measures.hpp"
#include "daqgo/state.hpp"

namespace daqgo {

// One gate per line in text form: NAME q[,q2][,angle].  Vocabulary:
// H q          Hadamard
// RY q,theta   exp(-i theta Y/2)
// RZ q,theta   diag(1, e^{i theta})
// CNOT c,t
// CPHASE a,b,theta   diag(1,1,1,e^{i theta})
struct GateOp {
  std::string name;
  std::vector<int> qubits;
  std::optional<double> angle;

  bool operator==(const GateOp&) const = default;
};

using GateList = std::vector<GateOp>;

// Prepares `target` from |0...0> on the listed wire labels (labels[i] holds
// target's qubit i) by recursive multiplexed-rotation decomposition: a tree
// of multiplexed RY for magnitudes, then multiplexed RZ for phases, each
// demultiplexed into single rotations and CNOTs.  The prepared state equals
// the target up to global phase.  All-zero rotation groups are pruned, so
// preparing |0...0> emits nothing.
GateList state_prep_gates(const StateVector& target, const std::vector<int>& labels);

// Compiles the closed-controlled diagonal exp(-i sign H^z t) on the system
// wires into RZ on the control (constant term), CPHASE per field term, and a
// CPHASE/CNOT pattern per coupling; one interaction per coupling keeps the
// advertised quadratic depth scaling.
GateList controlled_diagonal_gates(const IsingInstance& inst, double t, int sign,
                                   int control_label,
                                   const std::vector<int>& system_labels);

// Full interferometry circuit over precomputed annealing outputs, wire
// layout: label 0 = ancilla, 1..n = test register, n+1..2n = reference.
GateList export_daqgo1_circuit(const IsingInstance& inst, const AnnealParams& params_test,
                               const AnnealParams& params_ref, const MeasureSpec& spec,
                               const StateVector& psi_t, const StateVector& psi_r);

std::string gate_list_to_text(const GateList& gates);
GateList parse_gate_list(const std::string& text);
std::string gate_list_to_qasm(const GateList& gates, int n_qubits);

// Applies the list to |0...0> on an n_qubits register (labels = qubit
// indices, qubit 0 least significant).
StateVector simulate_gate_list(const GateList& gates, int n_qubits);

int count_single_qubit_gates(const GateList& gates);
int count_two_qubit_gates(const GateList& gates);

}  // namespace daqgo
