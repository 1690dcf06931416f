#pragma once

#include "daqgo/state.hpp"

namespace daqgo {

// In-place gate application.  Qubit indices follow the StateVector
// convention (qubit 0 = least significant bit).  All throw out_of_range on
// bad indices and invalid_argument when control == target.

void apply_h(StateVector& psi, int q);

// (1/sqrt(2)) [[1, -i], [-i, 1]], i.e. a rotation by pi/2 about x.
void apply_rx_half_pi(StateVector& psi, int q);

// exp(-i theta Y / 2) = [[cos(theta/2), -sin(theta/2)], [sin, cos]].
void apply_ry(StateVector& psi, int q, double theta);

// Phase gate diag(1, e^{i theta}).
void apply_rz(StateVector& psi, int q, double theta);

void apply_x(StateVector& psi, int q);

void apply_cnot(StateVector& psi, int control, int target);

// diag(1, 1, 1, -1) on the (q1, q2) pair; symmetric in its arguments.
void apply_cz(StateVector& psi, int q1, int q2);

// diag(1, 1, 1, e^{i theta}); symmetric in its arguments.
void apply_cphase(StateVector& psi, int q1, int q2, double theta);

}  // namespace daqgo
