#pragma once

#include <Eigen/Dense>

#include "dypp/sim/observable.hpp"

namespace dypp::sim {

inline constexpr int kDenseOracleMaxQubits = 12;

/// Dense 2^n x 2^n matrix of a Pauli sum in the simulator's qubit order.
Eigen::MatrixXcd dense_matrix(const Observable &obs);

/// Smallest eigenvalue of the observable by dense diagonalization.
double exact_ground_energy(const Observable &obs);

} // namespace dypp::sim
