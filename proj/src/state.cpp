#include "daqgo/state.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>

namespace daqgo {

StateVector::StateVector(int n) : n_qubits(n) {
  if (n < 0 || n > 28) throw std::length_error("StateVector: n_qubits out of range");
  amps.assign(std::size_t{1} << n, {0.0, 0.0});
}

double StateVector::norm() const {
  double s = 0.0;
  for (const auto& a : amps) s += std::norm(a);
  return std::sqrt(s);
}

StateVector StateVector::zero_state(int n) {
  StateVector psi(n);
  psi.amps[0] = 1.0;
  return psi;
}

StateVector StateVector::basis_state(int n, std::uint64_t index) {
  StateVector psi(n);
  if (index >= psi.dim()) throw std::out_of_range("basis_state: index out of range");
  psi.amps[index] = 1.0;
  return psi;
}

StateVector initial_plus_state(int n) {
  StateVector psi(n);
  const double amp = 1.0 / std::sqrt(static_cast<double>(psi.dim()));
  for (auto& a : psi.amps) a = amp;
  return psi;
}

std::complex<double> inner_product(const StateVector& a, const StateVector& b) {
  if (a.n_qubits != b.n_qubits)
    throw std::invalid_argument("inner_product: qubit counts differ");
  std::complex<double> s = 0.0;
  for (std::size_t u = 0; u < a.amps.size(); ++u) s += std::conj(a.amps[u]) * b.amps[u];
  return s;
}

double fidelity(const StateVector& a, const StateVector& b) {
  return std::norm(inner_product(a, b));
}

StateVector tensor(const StateVector& low, const StateVector& high) {
  StateVector out(low.n_qubits + high.n_qubits);
  const std::size_t low_dim = low.dim();
  for (std::size_t h = 0; h < high.dim(); ++h)
    for (std::size_t l = 0; l < low_dim; ++l)
      out.amps[(h << low.n_qubits) | l] = high.amps[h] * low.amps[l];
  return out;
}

double prob_qubit_zero(const StateVector& psi, int q) {
  if (q < 0 || q >= psi.n_qubits) throw std::out_of_range("prob_qubit_zero: bad qubit");
  double p = 0.0;
  const std::uint64_t mask = std::uint64_t{1} << q;
  for (std::size_t u = 0; u < psi.amps.size(); ++u)
    if (!(u & mask)) p += std::norm(psi.amps[u]);
  return p;
}

void dump_state(const StateVector& psi, std::ostream& os) {
  char line[96];
  for (std::size_t u = 0; u < psi.amps.size(); ++u) {
    std::snprintf(line, sizeof line, "%zu %.17g %.17g\n", u, psi.amps[u].real(),
                  psi.amps[u].imag());
    os << line;
  }
}

}  // namespace daqgo
