#include "dypp/sim/ground_energy.hpp"

#include <bit>
#include <stdexcept>
#include <string>

namespace dypp::sim {

Eigen::MatrixXcd dense_matrix(const Observable &obs) {
  const int n = obs.num_qubits();
  if (n > kDenseOracleMaxQubits) {
    throw std::invalid_argument(
        "dense diagonalization limited to " +
        std::to_string(kDenseOracleMaxQubits) + " qubits, got " +
        std::to_string(n));
  }
  const std::size_t dim = std::size_t{1} << n;
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                              static_cast<Eigen::Index>(dim));
  static constexpr complex_t kYPhase[4] = {
      {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  for (const auto &term : obs.terms()) {
    std::size_t flip = 0;
    std::size_t phase_mask = 0;
    int num_y = 0;
    for (int q = 0; q < n; ++q) {
      const std::size_t bit = std::size_t{1} << (n - 1 - q);
      if (term.letters[q] == Pauli::X || term.letters[q] == Pauli::Y) {
        flip |= bit;
      }
      if (term.letters[q] == Pauli::Y || term.letters[q] == Pauli::Z) {
        phase_mask |= bit;
      }
      num_y += term.letters[q] == Pauli::Y ? 1 : 0;
    }
    const complex_t global = kYPhase[num_y % 4] * term.coefficient;
    for (std::size_t col = 0; col < dim; ++col) {
      const double sign = (std::popcount(col & phase_mask) % 2 == 0) ? 1.0 : -1.0;
      h(static_cast<Eigen::Index>(col ^ flip), static_cast<Eigen::Index>(col)) +=
          global * sign;
    }
  }
  return h;
}

double exact_ground_energy(const Observable &obs) {
  const Eigen::MatrixXcd h = dense_matrix(obs);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(
      h, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eigenvalue solver failed to converge");
  }
  return solver.eigenvalues()(0);
}

} // namespace dypp::sim
