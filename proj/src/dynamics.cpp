#include "daqgo/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace daqgo {

namespace {

using cd = std::complex<double>;

void check_params(const IsingInstance& inst, const AnnealParams& params) {
  if (params.tau <= 0.0) throw std::invalid_argument("AnnealParams: tau must be positive");
  if (params.b <= 0.0) throw std::invalid_argument("AnnealParams: b must be positive");
  if (params.c.size() != static_cast<std::size_t>(inst.n()))
    throw std::invalid_argument("AnnealParams: c length must equal n");
  if (params.step_count != 0 && params.step_count < 100)
    throw std::invalid_argument("AnnealParams: step_count below accuracy floor of 100");
}

bool control_matches(std::size_t u, const std::vector<ControlSpec>& controls) {
  for (const auto& ctl : controls) {
    const bool bit = (u >> ctl.qubit) & 1;
    if (bit != (ctl.polarity == Polarity::Closed)) return false;
  }
  return true;
}

}  // namespace

int default_step_count(double tau) {
  const double steps = std::ceil(1000.0 * tau);
  return steps < 1000.0 ? 1000 : static_cast<int>(steps);
}

double schedule_a(double t, double tau) { return t / tau; }

double schedule_b(double t, double tau, double b) { return b * (1.0 - t / tau); }

double schedule_c(double t, double tau, double c_i) {
  const double s = std::sin(std::numbers::pi * t / tau);
  return c_i * s * s;
}

StateVector hamiltonian_apply(const IsingInstance& inst, const AnnealParams& params,
                              double t, const StateVector& psi) {
  check_params(inst, params);
  if (psi.n_qubits != inst.n())
    throw std::invalid_argument("hamiltonian_apply: psi dimension mismatch");
  if (t < 0.0 || t > params.tau)
    throw std::invalid_argument("hamiltonian_apply: t outside [0, tau]");

  const int n = inst.n();
  const std::vector<double> energies = energy_table(inst);
  const double at = schedule_a(t, params.tau);
  const double bt = schedule_b(t, params.tau, params.b);
  std::vector<double> ct(n);
  for (int i = 0; i < n; ++i) ct[i] = schedule_c(t, params.tau, params.c[i]);

  StateVector out(n);
  for (std::size_t u = 0; u < psi.dim(); ++u) {
    cd acc = at * energies[u] * psi.amps[u];
    for (int i = 0; i < n; ++i) {
      const double spin = ((u >> i) & 1) ? -1.0 : 1.0;
      // Flip term: -B(t) from H^x plus i*C_i(t)*s_i from H_i^y = -sigma_i^y.
      acc += cd(-bt, ct[i] * spin) * psi.amps[u ^ (std::size_t{1} << i)];
    }
    out.amps[u] = acc;
  }
  return out;
}

Propagator::Propagator(const IsingInstance& inst, AnnealParams params)
    : n_(inst.n()),
      steps_(params.step_count == 0 ? default_step_count(params.tau) : params.step_count),
      tau_(params.tau),
      b_(params.b),
      c_(std::move(params.c)),
      energies_(energy_table(inst)) {
  AnnealParams check = {tau_, b_, c_, steps_};
  check_params(inst, check);
}

void Propagator::derivative(double t, const cd* in, cd* out) const {
  const std::size_t dim = std::size_t{1} << n_;
  const double at = schedule_a(t, tau_);
  const double bt = schedule_b(t, tau_, b_);
  double ct[64];
  for (int i = 0; i < n_; ++i) ct[i] = schedule_c(t, tau_, c_[i]);

  // out = -i H in: the diagonal picks up -i*A*E, a flip on qubit i picks up
  // -i * (-B + i C_i s_i) = C_i s_i + i B.
  for (std::size_t u = 0; u < dim; ++u) {
    cd acc = cd(0.0, -at * energies_[u]) * in[u];
    for (int i = 0; i < n_; ++i) {
      const double spin = ((u >> i) & 1) ? -1.0 : 1.0;
      acc += cd(ct[i] * spin, bt) * in[u ^ (std::size_t{1} << i)];
    }
    out[u] = acc;
  }
}

void Propagator::evolve_block(cd* amps) const {
  const std::size_t dim = std::size_t{1} << n_;
  const double dt = tau_ / steps_;
  std::vector<cd> k1(dim), k2(dim), k3(dim), k4(dim), work(dim);

  for (int step = 0; step < steps_; ++step) {
    const double t = dt * step;
    derivative(t, amps, k1.data());
    for (std::size_t u = 0; u < dim; ++u) work[u] = amps[u] + 0.5 * dt * k1[u];
    derivative(t + 0.5 * dt, work.data(), k2.data());
    for (std::size_t u = 0; u < dim; ++u) work[u] = amps[u] + 0.5 * dt * k2[u];
    derivative(t + 0.5 * dt, work.data(), k3.data());
    for (std::size_t u = 0; u < dim; ++u) work[u] = amps[u] + dt * k3[u];
    derivative(t + dt, work.data(), k4.data());
    const double w = dt / 6.0;
    for (std::size_t u = 0; u < dim; ++u)
      amps[u] += w * (k1[u] + 2.0 * k2[u] + 2.0 * k3[u] + k4[u]);
  }
}

StateVector Propagator::evolve(const StateVector& psi0) const {
  if (psi0.n_qubits != n_) throw std::invalid_argument("evolve: psi dimension mismatch");
  const double norm_in = psi0.norm();
  if (std::abs(norm_in - 1.0) > 1e-6)
    throw std::invalid_argument("evolve: input state not normalized");
  StateVector psi = psi0;
  evolve_block(psi.amps.data());
  if (std::abs(psi.norm() - norm_in) > 1e-8)
    throw std::runtime_error("evolve: norm drift exceeds 1e-8; increase step_count");
  return psi;
}

StateVector evolve(const IsingInstance& inst, const AnnealParams& params,
                   const StateVector& psi0) {
  return Propagator(inst, params).evolve(psi0);
}

StateVector anneal_from_plus(const IsingInstance& inst, const AnnealParams& params) {
  return evolve(inst, params, initial_plus_state(inst.n()));
}

StateVector controlled_evolve(const IsingInstance& inst, const AnnealParams& params,
                              const StateVector& psi,
                              const std::vector<ControlSpec>& controls) {
  const int n = inst.n();
  if (psi.n_qubits < n) throw std::invalid_argument("controlled_evolve: psi too small");
  for (const auto& ctl : controls)
    if (ctl.qubit < n || ctl.qubit >= psi.n_qubits)
      throw std::out_of_range("controlled_evolve: control must be an ancilla qubit");

  Propagator prop(inst, params);
  StateVector out = psi;
  const std::size_t block = std::size_t{1} << n;
  const std::size_t block_count = psi.dim() >> n;
  const double norm_in = psi.norm();
  for (std::size_t p = 0; p < block_count; ++p)
    if (control_matches(p << n, controls)) prop.evolve_block(out.amps.data() + p * block);
  if (std::abs(out.norm() - norm_in) > 1e-8)
    throw std::runtime_error("controlled_evolve: norm drift exceeds 1e-8");
  return out;
}

StateVector diagonal_phase_evolve(const IsingInstance& inst, double t,
                                  const StateVector& psi, int sign, int system_offset,
                                  const std::vector<ControlSpec>& controls) {
  if (t < 0.0) throw std::invalid_argument("diagonal_phase_evolve: t must be nonnegative");
  if (sign != 1 && sign != -1)
    throw std::invalid_argument("diagonal_phase_evolve: sign must be +1 or -1");
  const int n = inst.n();
  if (system_offset < 0 || system_offset + n > psi.n_qubits)
    throw std::out_of_range("diagonal_phase_evolve: system register out of range");
  for (const auto& ctl : controls) {
    if (ctl.qubit < 0 || ctl.qubit >= psi.n_qubits)
      throw std::out_of_range("diagonal_phase_evolve: control out of range");
    if (ctl.qubit >= system_offset && ctl.qubit < system_offset + n)
      throw std::invalid_argument("diagonal_phase_evolve: control inside system register");
  }

  const std::vector<double> energies = energy_table(inst);
  const std::size_t mask = (std::size_t{1} << n) - 1;
  StateVector out = psi;
  for (std::size_t v = 0; v < out.dim(); ++v) {
    if (!control_matches(v, controls)) continue;
    const std::size_t u = (v >> system_offset) & mask;
    out.amps[v] *= std::polar(1.0, -sign * energies[u] * t);
  }
  return out;
}

}  // namespace daqgo
