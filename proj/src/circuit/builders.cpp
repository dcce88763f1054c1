#include "dypp/circuit/builders.hpp"

#include <stdexcept>
#include <string>

namespace dypp::circuit {

ParameterizedCircuit build_qaoa(const GraphSpec &graph, int depth) {
  graph.validate();
  if (depth < 1) {
    throw std::invalid_argument("QAOA depth must be >= 1");
  }
  if (graph.edges.empty()) {
    throw std::invalid_argument("QAOA needs a graph with at least one edge");
  }
  const int n = graph.num_nodes;
  std::vector<GateOp> prelude;
  for (int q = 0; q < n; ++q) {
    prelude.push_back(GateOp::fixed(GateKind::H, {q}));
  }
  std::vector<GateOp> ops;
  for (int layer = 0; layer < depth; ++layer) {
    const int gamma = 2 * layer;
    const int beta = 2 * layer + 1;
    for (auto [u, v] : graph.edges) {
      ops.push_back(GateOp::param(GateKind::RZZ, {u, v}, gamma));
    }
    for (int q = 0; q < n; ++q) {
      ops.push_back(GateOp::param(GateKind::RX, {q}, beta, 2.0));
    }
  }
  return ParameterizedCircuit(n, std::move(prelude), std::move(ops), 2 * depth);
}

ParameterizedCircuit build_hea(int num_qubits, int layers) {
  if (num_qubits < 2) {
    throw std::invalid_argument("hardware-efficient ansatz needs >= 2 qubits");
  }
  if (layers < 1) {
    throw std::invalid_argument("hardware-efficient ansatz needs >= 1 layer");
  }
  std::vector<GateOp> ops;
  int next = 0;
  auto rotation_block = [&] {
    for (int q = 0; q < num_qubits; ++q) {
      ops.push_back(GateOp::param(GateKind::RX, {q}, next++));
      ops.push_back(GateOp::param(GateKind::RZ, {q}, next++));
    }
  };
  for (int layer = 0; layer < layers; ++layer) {
    rotation_block();
    for (int control = 0; control < num_qubits; ++control) {
      for (int target = 0; target < num_qubits; ++target) {
        if (target != control) {
          ops.push_back(GateOp::param(GateKind::CRX, {control, target}, next++));
        }
      }
    }
  }
  rotation_block();
  return ParameterizedCircuit(num_qubits, {}, std::move(ops), next);
}

void EncodingSpec::validate() const {
  if (features_per_qubit < 1) {
    throw std::invalid_argument("features_per_qubit must be >= 1");
  }
}

std::vector<GateOp> build_encoder(int num_qubits, const EncodingSpec &spec) {
  spec.validate();
  std::vector<GateOp> prelude;
  for (int q = 0; q < num_qubits; ++q) {
    for (int k = 0; k < spec.features_per_qubit; ++k) {
      if (spec.hadamard_prelude) {
        prelude.push_back(GateOp::fixed(GateKind::H, {q}));
      }
      prelude.push_back(
          GateOp::feature(GateKind::RZ, {q}, q * spec.features_per_qubit + k));
    }
  }
  return prelude;
}

Excitations enumerate_excitations(int num_qubits, int num_electrons) {
  if (num_electrons <= 0 || num_electrons >= num_qubits) {
    throw std::invalid_argument("electron count must be in (0, " +
                                std::to_string(num_qubits) + ")");
  }
  Excitations ex;
  for (int i = 0; i < num_electrons; ++i) {
    for (int a = num_electrons; a < num_qubits; ++a) {
      if (i % 2 == a % 2) {
        ex.singles.emplace_back(i, a);
      }
    }
  }
  // Total spin projection is conserved: the occupied pair and the virtual
  // pair hold the same number of odd (spin-down) orbitals.
  for (int i = 0; i < num_electrons; ++i) {
    for (int j = i + 1; j < num_electrons; ++j) {
      for (int a = num_electrons; a < num_qubits; ++a) {
        for (int b = a + 1; b < num_qubits; ++b) {
          if ((i % 2) + (j % 2) == (a % 2) + (b % 2)) {
            ex.doubles.push_back({i, j, a, b});
          }
        }
      }
    }
  }
  return ex;
}

ParameterizedCircuit build_uccsd(int num_qubits, int num_electrons) {
  const Excitations ex = enumerate_excitations(num_qubits, num_electrons);
  std::vector<GateOp> prelude;
  for (int q = 0; q < num_electrons; ++q) {
    prelude.push_back(GateOp::fixed(GateKind::X, {q}));
  }
  std::vector<GateOp> ops;
  int next = 0;
  for (auto [i, a] : ex.singles) {
    ops.push_back(GateOp::param(GateKind::SingleExcitation, {i, a}, next++));
  }
  for (const auto &d : ex.doubles) {
    ops.push_back(GateOp::param(GateKind::DoubleExcitation,
                                {d[0], d[1], d[2], d[3]}, next++));
  }
  return ParameterizedCircuit(num_qubits, std::move(prelude), std::move(ops),
                              next);
}

} // namespace dypp::circuit
