#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <vector>

namespace daqgo {

// Dense state vector over n_qubits qubits, amps.size() == 2^n_qubits.
// Basis index u stores qubit i in bit i (qubit 0 = least significant bit).
struct StateVector {
  int n_qubits = 0;
  std::vector<std::complex<double>> amps;

  explicit StateVector(int n);
  StateVector() = default;

  std::size_t dim() const { return amps.size(); }
  double norm() const;

  static StateVector zero_state(int n);   // |0...0>
  static StateVector basis_state(int n, std::uint64_t index);
};

// Uniform superposition |+>^n, the annealing start state.
StateVector initial_plus_state(int n);

// <a|b>; conjugation on the left argument.
std::complex<double> inner_product(const StateVector& a, const StateVector& b);

// |<a|b>|^2.
double fidelity(const StateVector& a, const StateVector& b);

// `low` occupies the low bits, `high` the high bits of the product register.
StateVector tensor(const StateVector& low, const StateVector& high);

// Probability that qubit q reads 0.
double prob_qubit_zero(const StateVector& psi, int q);

// One line per basis state: index, real, imag (fixed 17 significant digits).
void dump_state(const StateVector& psi, std::ostream& os);

}  // namespace daqgo
