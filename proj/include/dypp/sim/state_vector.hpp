#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "dypp/sim/gates.hpp"

namespace dypp::sim {

using complex_t = std::complex<double>;

inline constexpr int kMaxQubits = 14;

/**
 * Dense statevector over 2^n computational basis states.
 *
 * Qubit 0 is the most significant bit of the basis index, so for three
 * qubits the amplitude of |q0 q1 q2> = |110> lives at index 6.
 */
class StateVector {
public:
  /// |0...0> on `num_qubits` qubits.
  explicit StateVector(int num_qubits);

  /// Computational basis state; bits[q] is the value of qubit q.
  static StateVector basis(std::span<const int> bits);

  [[nodiscard]] int num_qubits() const { return num_qubits_; }
  [[nodiscard]] std::size_t size() const { return amps_.size(); }
  [[nodiscard]] std::span<const complex_t> amplitudes() const { return amps_; }
  [[nodiscard]] complex_t operator[](std::size_t index) const {
    return amps_[index];
  }

  [[nodiscard]] double norm_squared() const;
  [[nodiscard]] std::vector<double> probabilities() const;

  /// Bit mask of `qubit` inside a basis index.
  [[nodiscard]] std::size_t mask(int qubit) const {
    return std::size_t{1} << (num_qubits_ - 1 - qubit);
  }

  /**
   * Applies a gate in place. `theta` is ignored for fixed gates. Controlled
   * gates take (control, target); excitation gates act on the listed qubits
   * in order.
   */
  void apply(GateKind kind, std::span<const int> targets, double theta = 0.0);

private:
  void apply_single(int qubit, const complex_t m[4]);
  void apply_controlled(int control, int target, const complex_t m[4]);
  void check_targets(GateKind kind, std::span<const int> targets) const;

  int num_qubits_;
  std::vector<complex_t> amps_;
};

} // namespace dypp::sim
