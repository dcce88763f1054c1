#include "dypp/sim/state_vector.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dypp::sim {

namespace {

constexpr complex_t kI{0.0, 1.0};

void check_qubit_count(int num_qubits) {
  if (num_qubits < 1 || num_qubits > kMaxQubits) {
    throw std::invalid_argument("qubit count must be in [1, " +
                                std::to_string(kMaxQubits) + "], got " +
                                std::to_string(num_qubits));
  }
}

} // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubit_count(num_qubits);
  amps_.assign(std::size_t{1} << num_qubits, complex_t{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(std::span<const int> bits) {
  StateVector state(static_cast<int>(bits.size()));
  std::size_t index = 0;
  for (int q = 0; q < state.num_qubits_; ++q) {
    if (bits[q] != 0 && bits[q] != 1) {
      throw std::invalid_argument("basis bits must be 0 or 1");
    }
    if (bits[q] == 1) {
      index |= state.mask(q);
    }
  }
  state.amps_[0] = 0.0;
  state.amps_[index] = 1.0;
  return state;
}

double StateVector::norm_squared() const {
  double total = 0.0;
  for (const auto &a : amps_) {
    total += std::norm(a);
  }
  return total;
}

std::vector<double> StateVector::probabilities() const {
  std::vector<double> probs(amps_.size());
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    probs[i] = std::norm(amps_[i]);
  }
  return probs;
}

void StateVector::check_targets(GateKind kind,
                                std::span<const int> targets) const {
  if (static_cast<int>(targets.size()) != arity(kind)) {
    throw std::invalid_argument(std::string(gate_name(kind)) + " expects " +
                                std::to_string(arity(kind)) + " targets");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] < 0 || targets[i] >= num_qubits_) {
      throw std::out_of_range("target qubit " + std::to_string(targets[i]) +
                              " out of range for " +
                              std::to_string(num_qubits_) + " qubits");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (targets[i] == targets[j]) {
        throw std::invalid_argument("repeated target qubit");
      }
    }
  }
}

void StateVector::apply_single(int qubit, const complex_t m[4]) {
  const std::size_t bit = mask(qubit);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & bit) != 0) {
      continue;
    }
    const complex_t a0 = amps_[i];
    const complex_t a1 = amps_[i | bit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | bit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply_controlled(int control, int target,
                                   const complex_t m[4]) {
  const std::size_t cbit = mask(control);
  const std::size_t tbit = mask(target);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & cbit) == 0 || (i & tbit) != 0) {
      continue;
    }
    const complex_t a0 = amps_[i];
    const complex_t a1 = amps_[i | tbit];
    amps_[i] = m[0] * a0 + m[1] * a1;
    amps_[i | tbit] = m[2] * a0 + m[3] * a1;
  }
}

void StateVector::apply(GateKind kind, std::span<const int> targets,
                        double theta) {
  check_targets(kind, targets);
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const complex_t rx[4] = {c, -kI * s, -kI * s, c};
  const complex_t rz[4] = {std::exp(-kI * (theta / 2.0)), 0.0, 0.0,
                           std::exp(kI * (theta / 2.0))};

  switch (kind) {
  case GateKind::H: {
    const double r = std::numbers::sqrt2 / 2.0;
    const complex_t m[4] = {r, r, r, -r};
    apply_single(targets[0], m);
    return;
  }
  case GateKind::X: {
    const complex_t m[4] = {0.0, 1.0, 1.0, 0.0};
    apply_single(targets[0], m);
    return;
  }
  case GateKind::Y: {
    const complex_t m[4] = {0.0, -kI, kI, 0.0};
    apply_single(targets[0], m);
    return;
  }
  case GateKind::Z: {
    const complex_t m[4] = {1.0, 0.0, 0.0, -1.0};
    apply_single(targets[0], m);
    return;
  }
  case GateKind::RX:
    apply_single(targets[0], rx);
    return;
  case GateKind::RY: {
    const complex_t m[4] = {c, -s, s, c};
    apply_single(targets[0], m);
    return;
  }
  case GateKind::RZ:
    apply_single(targets[0], rz);
    return;
  case GateKind::CNOT: {
    const complex_t m[4] = {0.0, 1.0, 1.0, 0.0};
    apply_controlled(targets[0], targets[1], m);
    return;
  }
  case GateKind::CZ: {
    const complex_t m[4] = {1.0, 0.0, 0.0, -1.0};
    apply_controlled(targets[0], targets[1], m);
    return;
  }
  case GateKind::CRX:
    apply_controlled(targets[0], targets[1], rx);
    return;
  case GateKind::CRZ:
    apply_controlled(targets[0], targets[1], rz);
    return;
  case GateKind::RZZ: {
    const std::size_t b0 = mask(targets[0]);
    const std::size_t b1 = mask(targets[1]);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      const bool odd = ((i & b0) != 0) != ((i & b1) != 0);
      amps_[i] *= odd ? rz[3] : rz[0];
    }
    return;
  }
  case GateKind::SingleExcitation: {
    // Givens rotation in span{|01>, |10>} of (targets[0], targets[1]).
    const std::size_t b0 = mask(targets[0]);
    const std::size_t b1 = mask(targets[1]);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & b0) != 0 || (i & b1) == 0) {
        continue;
      }
      const std::size_t j = (i & ~b1) | b0;
      const complex_t a01 = amps_[i];
      const complex_t a10 = amps_[j];
      amps_[i] = c * a01 - s * a10;
      amps_[j] = s * a01 + c * a10;
    }
    return;
  }
  case GateKind::DoubleExcitation: {
    // Givens rotation in span{|0011>, |1100>} of the four targets.
    const std::size_t hi = mask(targets[0]) | mask(targets[1]);
    const std::size_t lo = mask(targets[2]) | mask(targets[3]);
    for (std::size_t i = 0; i < amps_.size(); ++i) {
      if ((i & hi) != 0 || (i & lo) != lo) {
        continue;
      }
      const std::size_t j = (i & ~lo) | hi;
      const complex_t a0011 = amps_[i];
      const complex_t a1100 = amps_[j];
      amps_[i] = c * a0011 - s * a1100;
      amps_[j] = s * a0011 + c * a1100;
    }
    return;
  }
  }
  throw std::invalid_argument("unknown gate kind");
}

} // namespace dypp::sim
