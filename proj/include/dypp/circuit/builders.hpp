#pragma once

#include <array>
#include <utility>
#include <vector>

#include "dypp/circuit/circuit.hpp"
#include "dypp/circuit/graph.hpp"

namespace dypp::circuit {

/**
 * QAOA MaxCut ansatz: H on every qubit, then per layer RZZ(gamma_i) on every
 * edge and RX(2 beta_i) on every qubit. Parameters are interleaved as
 * [gamma_1, beta_1, ..., gamma_p, beta_p].
 */
ParameterizedCircuit build_qaoa(const GraphSpec &graph, int depth);

/**
 * Layered hardware-efficient ansatz: per layer RX and RZ on every qubit
 * followed by a controlled-RX from every qubit to every other qubit, then one
 * trailing RX/RZ block. Parameter count is layers * (2q + q(q-1)) + 2q.
 */
ParameterizedCircuit build_hea(int num_qubits, int layers);

struct EncodingSpec {
  int features_per_qubit = 2;
  bool hadamard_prelude = true;

  void validate() const;
};

/**
 * Angle-encoding prelude. Feature f = q * features_per_qubit + k drives the
 * k-th RZ on qubit q; with the Hadamard prelude each RZ is preceded by an H.
 */
std::vector<GateOp> build_encoder(int num_qubits, const EncodingSpec &spec);

struct Excitations {
  std::vector<std::pair<int, int>> singles;
  std::vector<std::array<int, 4>> doubles;
};

/// Spin-preserving single and double excitations out of the first
/// `num_electrons` orbitals (even orbitals are spin-up, odd spin-down).
Excitations enumerate_excitations(int num_qubits, int num_electrons);

/**
 * UCCSD-style ansatz: Hartree-Fock prelude (first `num_electrons` qubits set)
 * followed by one SingleExcitation per single and one DoubleExcitation per
 * double, each with its own parameter. Singles come first.
 */
ParameterizedCircuit build_uccsd(int num_qubits, int num_electrons);

} // namespace dypp::circuit
