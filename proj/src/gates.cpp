#include "daqgo/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace daqgo {

namespace {

using cd = std::complex<double>;

void check_qubit(const StateVector& psi, int q, const char* who) {
  if (q < 0 || q >= psi.n_qubits) throw std::out_of_range(std::string(who) + ": bad qubit");
}

// Visits every basis pair (u, u | 1<<q) once.
template <typename F>
void for_each_pair(StateVector& psi, int q, F&& f) {
  const std::size_t stride = std::size_t{1} << q;
  const std::size_t dim = psi.dim();
  for (std::size_t base = 0; base < dim; base += 2 * stride)
    for (std::size_t low = 0; low < stride; ++low) {
      const std::size_t u0 = base | low;
      f(psi.amps[u0], psi.amps[u0 | stride]);
    }
}

}  // namespace

void apply_h(StateVector& psi, int q) {
  check_qubit(psi, q, "apply_h");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for_each_pair(psi, q, [inv_sqrt2](cd& a0, cd& a1) {
    const cd t0 = inv_sqrt2 * (a0 + a1);
    const cd t1 = inv_sqrt2 * (a0 - a1);
    a0 = t0;
    a1 = t1;
  });
}

void apply_rx_half_pi(StateVector& psi, int q) {
  check_qubit(psi, q, "apply_rx_half_pi");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const cd mi(0.0, -1.0);
  for_each_pair(psi, q, [inv_sqrt2, mi](cd& a0, cd& a1) {
    const cd t0 = inv_sqrt2 * (a0 + mi * a1);
    const cd t1 = inv_sqrt2 * (mi * a0 + a1);
    a0 = t0;
    a1 = t1;
  });
}

void apply_ry(StateVector& psi, int q, double theta) {
  check_qubit(psi, q, "apply_ry");
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  for_each_pair(psi, q, [c, s](cd& a0, cd& a1) {
    const cd t0 = c * a0 - s * a1;
    const cd t1 = s * a0 + c * a1;
    a0 = t0;
    a1 = t1;
  });
}

void apply_rz(StateVector& psi, int q, double theta) {
  check_qubit(psi, q, "apply_rz");
  const cd phase = std::polar(1.0, theta);
  for_each_pair(psi, q, [phase](cd&, cd& a1) { a1 *= phase; });
}

void apply_x(StateVector& psi, int q) {
  check_qubit(psi, q, "apply_x");
  for_each_pair(psi, q, [](cd& a0, cd& a1) { std::swap(a0, a1); });
}

void apply_cnot(StateVector& psi, int control, int target) {
  check_qubit(psi, control, "apply_cnot");
  check_qubit(psi, target, "apply_cnot");
  if (control == target) throw std::invalid_argument("apply_cnot: control == target");
  const std::uint64_t cmask = std::uint64_t{1} << control;
  const std::uint64_t tmask = std::uint64_t{1} << target;
  for (std::size_t u = 0; u < psi.dim(); ++u)
    if ((u & cmask) && !(u & tmask)) std::swap(psi.amps[u], psi.amps[u | tmask]);
}

void apply_cz(StateVector& psi, int q1, int q2) {
  check_qubit(psi, q1, "apply_cz");
  check_qubit(psi, q2, "apply_cz");
  if (q1 == q2) throw std::invalid_argument("apply_cz: qubits must differ");
  const std::uint64_t mask = (std::uint64_t{1} << q1) | (std::uint64_t{1} << q2);
  for (std::size_t u = 0; u < psi.dim(); ++u)
    if ((u & mask) == mask) psi.amps[u] = -psi.amps[u];
}

void apply_cphase(StateVector& psi, int q1, int q2, double theta) {
  check_qubit(psi, q1, "apply_cphase");
  check_qubit(psi, q2, "apply_cphase");
  if (q1 == q2) throw std::invalid_argument("apply_cphase: qubits must differ");
  const cd phase = std::polar(1.0, theta);
  const std::uint64_t mask = (std::uint64_t{1} << q1) | (std::uint64_t{1} << q2);
  for (std::size_t u = 0; u < psi.dim(); ++u)
    if ((u & mask) == mask) psi.amps[u] *= phase;
}

}  // namespace daqgo
