#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "daqgo/ising.hpp"
#include "daqgo/state.hpp"

namespace daqgo {

// Annealing schedule: H(t) = A(t) H^z + B(t) H^x + sum_i C_i(t) H_i^y with
// A(t) = t/tau, B(t) = b(1 - t/tau), C_i(t) = c_i sin^2(pi t/tau).
// H^z is the diagonal cost operator, H^x = -sum_i sigma_i^x,
// H_i^y = -sigma_i^y.  The H^z scale factor is held at 1.
struct AnnealParams {
  double tau = 1.0;
  double b = 1.0;
  std::vector<double> c;  // per-qubit y-field amplitudes, length n
  int step_count = 0;     // 0 selects default_step_count(tau)
};

// max(1000, ceil(1000 * tau)).
int default_step_count(double tau);

double schedule_a(double t, double tau);
double schedule_b(double t, double tau, double b);
double schedule_c(double t, double tau, double c_i);

enum class Polarity { Open, Closed };

struct ControlSpec {
  int qubit;
  Polarity polarity;
};

// H(t) * psi via bit-indexed updates; no matrix is materialized.
StateVector hamiltonian_apply(const IsingInstance& inst, const AnnealParams& params,
                              double t, const StateVector& psi);

// Fixed-step RK4 integrator for i d|psi>/dt = H(t)|psi> over [0, tau].
// Norm drift is asserted (never corrected): final norm within 1e-8 of the
// input norm, else runtime_error.
class Propagator {
 public:
  Propagator(const IsingInstance& inst, AnnealParams params);

  int n() const { return n_; }
  int step_count() const { return steps_; }
  const std::vector<double>& energies() const { return energies_; }

  // d/dt amplitudes: out = -i H(t) in.  Buffers must not alias.
  void derivative(double t, const std::complex<double>* in,
                  std::complex<double>* out) const;

  // Integrates a raw 2^n block in place; no norm checks (blocks inside a
  // larger register are not normalized on their own).
  void evolve_block(std::complex<double>* amps) const;

  StateVector evolve(const StateVector& psi0) const;

 private:
  int n_;
  int steps_;
  double tau_;
  double b_;
  std::vector<double> c_;
  std::vector<double> energies_;
};

StateVector evolve(const IsingInstance& inst, const AnnealParams& params,
                   const StateVector& psi0);

// Full anneal from |+>^n: evolve(initial_plus_state(n)).
StateVector anneal_from_plus(const IsingInstance& inst, const AnnealParams& params);

// Applies U = T exp(-i int H dt) on the low n system qubits only where every
// control matches its polarity.  Controls must sit on ancilla qubits
// (index >= n).  Ancilla-diagonal: blocks are contiguous because ancillas
// occupy the high bits.
StateVector controlled_evolve(const IsingInstance& inst, const AnnealParams& params,
                              const StateVector& psi,
                              const std::vector<ControlSpec>& controls);

// Multiplies each basis amplitude by exp(-i * sign * E(u) * t) where u is
// read from the n system bits starting at system_offset, conditioned on all
// controls matching.  sign = +1 gives exp(-i H^z t), -1 its adjoint.
StateVector diagonal_phase_evolve(const IsingInstance& inst, double t,
                                  const StateVector& psi, int sign,
                                  int system_offset = 0,
                                  const std::vector<ControlSpec>& controls = {});

}  // namespace daqgo
