#include "daqgo/gate_export.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "daqgo/gates.hpp"

namespace daqgo {

namespace {

constexpr double kAngleFloor = 1e-14;  // rotations below this are identity

bool all_negligible(const std::vector<double>& angles) {
  for (const double a : angles)
    if (std::abs(a) > kAngleFloor) return false;
  return true;
}

void emit_rotation(GateList& out, const char* name, int label, double angle) {
  if (std::abs(angle) > kAngleFloor) out.push_back({name, {label}, angle});
}

// Uniformly controlled rotation: angles[p] applies when the control wires
// spell p (ctls[j] = bit j of p).  Demultiplexes over the top control:
// R(u) CX R(v) CX with u = (lo+hi)/2, v = (lo-hi)/2 pairwise.  RZ leaves
// behave as true z-rotations up to an unconditional global phase.
void emit_multiplexed(GateList& out, const char* name, int target,
                      const std::vector<int>& ctls, const std::vector<double>& angles) {
  if (all_negligible(angles)) return;
  if (ctls.empty()) {
    emit_rotation(out, name, target, angles[0]);
    return;
  }
  const std::size_t half = angles.size() / 2;
  std::vector<double> u(half), v(half);
  for (std::size_t p = 0; p < half; ++p) {
    u[p] = (angles[p] + angles[half + p]) / 2.0;
    v[p] = (angles[p] - angles[half + p]) / 2.0;
  }
  const std::vector<int> lower(ctls.begin(), ctls.end() - 1);
  emit_multiplexed(out, name, target, lower, u);
  out.push_back({"CNOT", {ctls.back(), target}, std::nullopt});
  emit_multiplexed(out, name, target, lower, v);
  out.push_back({"CNOT", {ctls.back(), target}, std::nullopt});
}

// Removes directly adjacent self-canceling CNOT pairs (arises when a
// multiplexed half is pruned to nothing between the two CNOTs).
void cancel_cnot_pairs(GateList& gates) {
  GateList out;
  for (auto& gate : gates) {
    if (!out.empty() && gate.name == "CNOT" && out.back() == gate)
      out.pop_back();
    else
      out.push_back(std::move(gate));
  }
  gates = std::move(out);
}

void check_labels(const std::vector<int>& labels) {
  for (const int l : labels)
    if (l < 0) throw std::out_of_range("gate export: negative wire label");
}

}  // namespace

GateList state_prep_gates(const StateVector& target, const std::vector<int>& labels) {
  const int k = target.n_qubits;
  if (labels.size() != static_cast<std::size_t>(k))
    throw std::invalid_argument("state_prep_gates: one label per target qubit");
  check_labels(labels);
  if (std::abs(target.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("state_prep_gates: target not normalized");

  GateList out;

  // Magnitude tree: level l rotates qubit k-1-l, controlled by the qubits
  // above it; W[p] at depth l is the probability weight of the subtree
  // whose top l bits spell p.
  std::vector<double> weights(target.dim());
  for (std::size_t u = 0; u < target.dim(); ++u) weights[u] = std::norm(target.amps[u]);
  std::vector<std::vector<double>> tree(k + 1);
  tree[k] = std::move(weights);
  for (int l = k - 1; l >= 0; --l) {
    tree[l].resize(std::size_t{1} << l);
    for (std::size_t p = 0; p < tree[l].size(); ++p)
      tree[l][p] = tree[l + 1][2 * p] + tree[l + 1][2 * p + 1];
  }
  for (int l = 0; l < k; ++l) {
    const int tq = k - 1 - l;
    std::vector<double> angles(std::size_t{1} << l);
    for (std::size_t p = 0; p < angles.size(); ++p)
      angles[p] =
          2.0 * std::atan2(std::sqrt(tree[l + 1][2 * p + 1]), std::sqrt(tree[l + 1][2 * p]));
    std::vector<int> ctls(l);
    for (int j = 0; j < l; ++j) ctls[j] = labels[k - l + j];
    emit_multiplexed(out, "RY", labels[tq], ctls, angles);
  }

  // Phase peel: the top qubit takes a multiplexed z-rotation by the phase
  // difference of its branches; the mean phase recurses downward and the
  // final scalar is a dropped global phase.
  std::vector<double> phases(target.dim());
  for (std::size_t u = 0; u < target.dim(); ++u)
    phases[u] = (std::abs(target.amps[u]) > 0.0) ? std::arg(target.amps[u]) : 0.0;
  for (int kk = k; kk >= 1; --kk) {
    const std::size_t half = std::size_t{1} << (kk - 1);
    std::vector<double> delta(half), mean(half);
    for (std::size_t p = 0; p < half; ++p) {
      delta[p] = phases[half + p] - phases[p];
      mean[p] = (phases[half + p] + phases[p]) / 2.0;
    }
    std::vector<int> ctls(kk - 1);
    for (int j = 0; j < kk - 1; ++j) ctls[j] = labels[j];
    emit_multiplexed(out, "RZ", labels[kk - 1], ctls, delta);
    phases = std::move(mean);
  }

  cancel_cnot_pairs(out);
  return out;
}

GateList controlled_diagonal_gates(const IsingInstance& inst, double t, int sign,
                                   int control_label,
                                   const std::vector<int>& system_labels) {
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("controlled_diagonal_gates: sign must be +1 or -1");
  const int n = inst.n();
  if (system_labels.size() != static_cast<std::size_t>(n))
    throw std::invalid_argument("controlled_diagonal_gates: one label per system qubit");
  check_labels(system_labels);
  if (control_label < 0) throw std::out_of_range("controlled_diagonal_gates: bad control");

  // theta(u) = -sign * E(u) * t is quadratic in the bits of u, so it is
  // exactly theta0 + sum_i a_i b_i + sum_{i<j} a_ij b_i b_j; coefficients
  // are read off from the energy table at unit patterns.
  const std::vector<double> energies = energy_table(inst);
  const auto theta = [&](std::size_t u) { return -sign * energies[u] * t; };

  GateList out;
  const double theta0 = theta(0);
  emit_rotation(out, "RZ", control_label, theta0);
  for (int i = 0; i < n; ++i) {
    const double a_i = theta(std::size_t{1} << i) - theta0;
    if (std::abs(a_i) > kAngleFloor)
      out.push_back({"CPHASE", {control_label, system_labels[i]}, a_i});
  }
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const std::size_t ui = std::size_t{1} << i;
      const std::size_t uj = std::size_t{1} << j;
      const double a_ij = theta(ui | uj) - theta(ui) - theta(uj) + theta0;
      if (std::abs(a_ij) <= kAngleFloor) continue;
      // Doubly controlled phase on (control, i, j) from two-qubit gates:
      // half on each target, then the parity trick for the cross term.
      const int li = system_labels[i];
      const int lj = system_labels[j];
      out.push_back({"CPHASE", {control_label, li}, a_ij / 2.0});
      out.push_back({"CPHASE", {control_label, lj}, a_ij / 2.0});
      out.push_back({"CNOT", {li, lj}, std::nullopt});
      out.push_back({"CPHASE", {control_label, lj}, -a_ij / 2.0});
      out.push_back({"CNOT", {li, lj}, std::nullopt});
    }
  }
  return out;
}

GateList export_daqgo1_circuit(const IsingInstance& inst, const AnnealParams& params_test,
                               const AnnealParams& params_ref, const MeasureSpec& spec,
                               const StateVector& psi_t, const StateVector& psi_r) {
  const int n = inst.n();
  if (2 * n + 1 > 20) throw std::length_error("export_daqgo1_circuit: register too large");
  if (psi_t.n_qubits != n || psi_r.n_qubits != n)
    throw std::invalid_argument("export_daqgo1_circuit: register size must equal n");
  if (params_test.tau != params_ref.tau)
    throw std::invalid_argument("export_daqgo1_circuit: blocks must share tau");
  if (spec.kind != MeasureKind::Daqgo1)
    throw std::invalid_argument("export_daqgo1_circuit: wrong measure kind");

  std::vector<int> test_labels(n), ref_labels(n);
  for (int i = 0; i < n; ++i) {
    test_labels[i] = 1 + i;
    ref_labels[i] = 1 + n + i;
  }

  GateList out;
  out.push_back({"H", {0}, std::nullopt});
  GateList prep_t = state_prep_gates(psi_t, test_labels);
  GateList prep_r = state_prep_gates(psi_r, ref_labels);
  out.insert(out.end(), prep_t.begin(), prep_t.end());
  out.insert(out.end(), prep_r.begin(), prep_r.end());
  GateList u3 = controlled_diagonal_gates(inst, spec.t_sim, +1, 0, test_labels);
  GateList u3_dag = controlled_diagonal_gates(inst, spec.t_sim, -1, 0, ref_labels);
  out.insert(out.end(), u3.begin(), u3.end());
  out.insert(out.end(), u3_dag.begin(), u3_dag.end());
  emit_rotation(out, "RZ", 0, spec.epsilon * spec.t_sim);
  out.push_back({"H", {0}, std::nullopt});
  return out;
}

std::string gate_list_to_text(const GateList& gates) {
  std::string out;
  char buf[64];
  for (const auto& gate : gates) {
    out += gate.name;
    out += ' ';
    for (std::size_t i = 0; i < gate.qubits.size(); ++i) {
      if (i) out += ',';
      std::snprintf(buf, sizeof buf, "%d", gate.qubits[i]);
      out += buf;
    }
    if (gate.angle) {
      out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", *gate.angle);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

namespace {

struct GateShape {
  int qubit_count;
  bool has_angle;
};

GateShape shape_of(const std::string& name) {
  if (name == "H") return {1, false};
  if (name == "RY" || name == "RZ") return {1, true};
  if (name == "CNOT") return {2, false};
  if (name == "CPHASE") return {2, true};
  throw std::invalid_argument("gate list: unknown gate " + name);
}

}  // namespace

GateList parse_gate_list(const std::string& text) {
  GateList out;
  std::istringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) {
    if (line.empty() || line[0] == '#') continue;
    const std::size_t space = line.find(' ');
    if (space == std::string::npos)
      throw std::invalid_argument("gate list: malformed line: " + line);
    GateOp gate;
    gate.name = line.substr(0, space);
    const GateShape shape = shape_of(gate.name);
    std::istringstream fields(line.substr(space + 1));
    std::string field;
    std::vector<std::string> parts;
    while (std::getline(fields, field, ',')) parts.push_back(field);
    if (parts.size() != static_cast<std::size_t>(shape.qubit_count) + (shape.has_angle ? 1 : 0))
      throw std::invalid_argument("gate list: wrong field count: " + line);
    for (int i = 0; i < shape.qubit_count; ++i) gate.qubits.push_back(std::stoi(parts[i]));
    if (shape.has_angle) gate.angle = std::stod(parts.back());
    out.push_back(std::move(gate));
  }
  return out;
}

std::string gate_list_to_qasm(const GateList& gates, int n_qubits) {
  for (const auto& gate : gates)
    for (int q : gate.qubits)
      if (q < 0 || q >= n_qubits)
        throw std::out_of_range("gate list: wire outside declared register");
  std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\n";
  char buf[128];
  std::snprintf(buf, sizeof buf, "qreg q[%d];\ncreg c[1];\n", n_qubits);
  out += buf;
  for (const auto& gate : gates) {
    if (gate.name == "H")
      std::snprintf(buf, sizeof buf, "h q[%d];\n", gate.qubits[0]);
    else if (gate.name == "RY")
      std::snprintf(buf, sizeof buf, "ry(%.17g) q[%d];\n", *gate.angle, gate.qubits[0]);
    else if (gate.name == "RZ")
      std::snprintf(buf, sizeof buf, "u1(%.17g) q[%d];\n", *gate.angle, gate.qubits[0]);
    else if (gate.name == "CNOT")
      std::snprintf(buf, sizeof buf, "cx q[%d],q[%d];\n", gate.qubits[0], gate.qubits[1]);
    else if (gate.name == "CPHASE")
      std::snprintf(buf, sizeof buf, "cu1(%.17g) q[%d],q[%d];\n", *gate.angle,
                    gate.qubits[0], gate.qubits[1]);
    else
      throw std::invalid_argument("gate list: unknown gate " + gate.name);
    out += buf;
  }
  return out;
}

StateVector simulate_gate_list(const GateList& gates, int n_qubits) {
  StateVector psi = StateVector::zero_state(n_qubits);
  for (const auto& gate : gates) {
    if (gate.name == "H")
      apply_h(psi, gate.qubits[0]);
    else if (gate.name == "RY")
      apply_ry(psi, gate.qubits[0], *gate.angle);
    else if (gate.name == "RZ")
      apply_rz(psi, gate.qubits[0], *gate.angle);
    else if (gate.name == "CNOT")
      apply_cnot(psi, gate.qubits[0], gate.qubits[1]);
    else if (gate.name == "CPHASE")
      apply_cphase(psi, gate.qubits[0], gate.qubits[1], *gate.angle);
    else
      throw std::invalid_argument("gate list: unknown gate " + gate.name);
  }
  return psi;
}

int count_single_qubit_gates(const GateList& gates) {
  int count = 0;
  for (const auto& gate : gates)
    if (gate.qubits.size() == 1) ++count;
  return count;
}

int count_two_qubit_gates(const GateList& gates) {
  int count = 0;
  for (const auto& gate : gates)
    if (gate.qubits.size() == 2) ++count;
  return count;
}

}  // namespace daqgo
